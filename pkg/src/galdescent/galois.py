"""Automorphism groups of simple extensions.

An automorphism is stored by the image of the field generator; composition is
polynomial substitution.  Two built-in families (Frobenius groups of finite
fields, cyclotomic fields over Q) cover the Galois extensions the library
constructs itself; arbitrary automorphism lists can be supplied and are
verified and closed explicitly.
"""

from .errors import (
    FieldMismatch,
    NotARoot,
    NotClosed,
    NotFiniteBase,
    NotInvertible,
    RankDeficient,
)
from .extension import ExtensionField, make_extension
from .fields import QQ
from .linalg import Matrix
from .unipoly import cyclotomic


class Automorphism:
    """A base-field automorphism of an extension, determined by the image of
    the generator."""

    __slots__ = ("ext", "image", "name", "_powers", "_matrix")

    def __init__(self, ext, image, name):
        self.ext = ext
        self.image = image
        self.name = name
        powers = [ext.one]
        for _ in range(ext.degree - 1):
            powers.append(powers[-1] * image)
        self._powers = powers
        self._matrix = None

    def __call__(self, a):
        if a.field != self.ext:
            raise FieldMismatch("element not in the automorphism's field")
        acc = self.ext.zero
        for coeff, power in zip(self.ext.coords(a), self._powers):
            if coeff:
                acc = acc + self.ext.from_base(coeff) * power
        return acc

    def matrix(self):
        """Base-field matrix acting on generator-power coordinates."""
        if self._matrix is None:
            cols = [self.ext.coords(p) for p in self._powers]
            self._matrix = Matrix.from_cols(self.ext.base, cols)
        return self._matrix

    def is_identity(self):
        return self.image == self.ext.generator

    def __eq__(self, other):
        return (isinstance(other, Automorphism) and other.ext == self.ext
                and other.image == self.image)

    def __hash__(self):
        return hash((id(self.ext), self.image))

    def __repr__(self):
        return f"{self.name}: t -> {self.ext.format_element(self.image)}"


def verify_automorphism(ext, image, name="sigma"):
    """Check that ``image`` is a root of the modulus and that substitution
    induces an invertible base-linear map, then package the automorphism."""
    value = ext.modulus.evaluate(image, embed=ext.from_base)
    if value:
        raise NotARoot(
            f"f({ext.format_element(image)}) = {ext.format_element(value)} != 0")
    auto = Automorphism(ext, image, name)
    if not auto.matrix().is_invertible():
        raise NotInvertible(f"substitution t -> {ext.format_element(image)} is singular")
    return auto


class GaloisGroup:
    """A finite, composition-closed list of automorphisms with its table.

    ``is_full`` marks groups of order equal to the extension degree (honest
    Galois groups); proper subgroups reuse the same machinery for fixed-field
    computations.
    """

    def __init__(self, ext, elements, table, is_full, generator_indices):
        self.ext = ext
        self.elements = elements
        self.table = table
        self.is_full = is_full
        self.generator_indices = generator_indices
        self.identity_index = next(
            i for i, s in enumerate(elements) if s.is_identity())
        self.inverse = [None] * len(elements)
        for i in range(len(elements)):
            for j in range(len(elements)):
                if table[i][j] == self.identity_index:
                    self.inverse[i] = j
        if any(v is None for v in self.inverse):
            raise NotClosed("an element has no inverse in the list")

    @property
    def order(self):
        return len(self.elements)

    def compose(self, i, j):
        """Index of elements[i] o elements[j]."""
        return self.table[i][j]

    def element_named(self, name):
        for i, s in enumerate(self.elements):
            if s.name == name:
                return i
        raise KeyError(f"no automorphism named {name}")

    @classmethod
    def close_and_verify(cls, ext, autos, require_full=True, generator_indices=None):
        """Build the composition table of a supplied automorphism list.  The
        list must already be closed (including the identity); anything else is
        an error, never silently completed."""
        images = {a.image: i for i, a in enumerate(autos)}
        if len(images) != len(autos):
            raise NotClosed("duplicate automorphisms in the list")
        if not any(a.is_identity() for a in autos):
            raise NotClosed("identity automorphism missing from the list")
        table = []
        for a in autos:
            row = []
            for b in autos:
                composite = a(b.image)
                k = images.get(composite)
                if k is None:
                    raise NotClosed(
                        f"composite {a.name} o {b.name} (t -> "
                        f"{ext.format_element(composite)}) is not in the list")
                row.append(k)
            table.append(tuple(row))
        if require_full and len(autos) != ext.degree:
            raise NotClosed(
                f"group order {len(autos)} != extension degree {ext.degree}")
        if generator_indices is None:
            generator_indices = tuple(
                i for i, a in enumerate(autos) if not a.is_identity()) or (0,)
        group = cls(ext, list(autos), [tuple(r) for r in table],
                    len(autos) == ext.degree, tuple(generator_indices))
        group._verify_axioms()
        return group

    def _verify_axioms(self):
        n = self.order
        e = self.identity_index
        for i in range(n):
            if self.table[e][i] != i or self.table[i][e] != i:
                raise NotClosed("identity law fails")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if self.table[self.table[i][j]][k] != self.table[i][self.table[j][k]]:
                        raise NotClosed("associativity fails")

    def subgroup(self, indices):
        """The subgroup generated by the listed element indices."""
        chosen = set(indices) | {self.identity_index}
        changed = True
        while changed:
            changed = False
            for i in list(chosen):
                for j in list(chosen):
                    k = self.table[i][j]
                    if k not in chosen:
                        chosen.add(k)
                        changed = True
        order = sorted(chosen)
        autos = [self.elements[i] for i in order]
        gens = tuple(order.index(i) for i in indices if i in chosen)
        return GaloisGroup.close_and_verify(
            self.ext, autos, require_full=False,
            generator_indices=gens or (0,))

    def __repr__(self):
        return f"GaloisGroup({self.ext!r}, order {self.order})"


def frobenius_group(ext):
    """The cyclic group generated by x -> x^p for a finite-field extension."""
    if not isinstance(ext, ExtensionField) or not ext.base.is_finite:
        raise NotFiniteBase("Frobenius group needs a finite base field")
    p = ext.characteristic
    n = ext.degree
    autos = []
    image = ext.generator
    for i in range(n):
        name = "id" if i == 0 else ("frob" if i == 1 else f"frob{i}")
        autos.append(verify_automorphism(ext, image, name))
        image = image ** p
    group = GaloisGroup.close_and_verify(ext, autos, require_full=True)
    group.generator_indices = (1,) if n > 1 else (0,)
    return group


def cyclotomic_field(m):
    """Q(zeta_m) presented by the m-th cyclotomic polynomial."""
    if m < 3:
        raise ValueError("need m >= 3")
    return make_extension(QQ, cyclotomic(m), irreducible=True)


def cyclotomic_group(m):
    """Q(zeta_m) together with its automorphisms x -> x^a, gcd(a, m) = 1."""
    ext = cyclotomic_field(m)
    autos = []
    from math import gcd

    for a in range(1, m):
        if gcd(a, m) != 1:
            continue
        name = "id" if a == 1 else f"s{a}"
        autos.append(verify_automorphism(ext, ext.generator ** a, name))
    group = GaloisGroup.close_and_verify(ext, autos, require_full=True)
    return ext, group


def check_fixed_field(group):
    """Base-field basis of the fixed subfield of the group, as field elements."""
    ext = group.ext
    base = ext.base
    d = ext.degree
    rows = []
    identity = Matrix.identity(base, d)
    for idx in range(group.order):
        if idx == group.identity_index:
            continue
        diff = group.elements[idx].matrix() - identity
        rows.extend(diff.rows)
    if not rows:
        rows = Matrix.zero(base, d, d).rows
    kernel = Matrix(base, rows).kernel_basis()
    return [ext.from_coords(v) for v in kernel]


class TwistedGroupAlgebraMap:
    """The k-linear map from the twisted group algebra of the extension to
    its k-endomorphism ring, with its matrix and rank."""

    __slots__ = ("group", "matrix", "rank")

    def __init__(self, group, matrix, rank):
        self.group = group
        self.matrix = matrix
        self.rank = rank


def dedekind_check(group):
    """Build the map sending sum a_sigma sigma to the endomorphism
    c -> sum a_sigma sigma(c) and assert it has full rank n^2."""
    ext = group.ext
    base = ext.base
    n = ext.degree
    if not group.is_full:
        raise RankDeficient("need the full automorphism group")
    cols = []
    basis = [ext.one]
    for _ in range(n - 1):
        basis.append(basis[-1] * ext.generator)
    for sigma in group.elements:
        sigma_matrix = sigma.matrix()
        for b in basis:
            # endomorphism c -> b * sigma(c), flattened column-major by input
            mult_rows = Matrix(base, ext.mult_matrix_rows(b))
            endo = mult_rows * sigma_matrix
            cols.append([endo.rows[r][c] for c in range(n) for r in range(n)])
    matrix = Matrix.from_cols(base, cols)
    rank = matrix.rank()
    if rank != n * n:
        raise RankDeficient(f"rank {rank} < {n * n}")
    return TwistedGroupAlgebraMap(group, matrix, rank)
