"""Descent of affine algebras: descent data as semilinear automorphism
families, model construction by invariants and elimination, descent of ideals
and morphisms, descent from conjugate data, and the induced point actions
over finite fields.

A descent datum is stored as one presented algebra over the extension plus a
family of semilinear automorphisms theta_sigma (variable images with
sigma-conjugated coefficients); the conjugate-scheme picture is recovered in
:func:`descend_from_embeddings`.
"""

from .enumeration import DEFAULT_POINT_BUDGET, affine_points
from .errors import (
    CocycleViolation,
    ConditionAViolated,
    ConditionBViolated,
    FieldMismatch,
    IdentityNotTrivial,
    InternalContradiction,
    NotEquivariant,
    NotInvertible,
    NotStable,
    NotWellDefined,
    SplittingCheckFailed,
    TransportNotRational,
)
from .extension import ExtensionField
from .groebner import (
    DEFAULT_BUDGET,
    Ideal,
    _as_budget,
    apply_semilinear,
    eliminate,
    ideal_equal,
    normal_form,
)
from .multipoly import GREVLEX, MultiPolynomial, block_order


class AffineAlgebra:
    """A presented algebra: a coefficient field, variable names, relations."""

    __slots__ = ("field", "variables", "relations")

    def __init__(self, field, variables, relations=None):
        self.field = field
        self.variables = tuple(variables)
        if relations is None:
            relations = Ideal(field, self.variables, [])
        if relations.field != field or relations.variables != self.variables:
            raise FieldMismatch("relations live in a different ring")
        self.relations = relations

    @property
    def is_empty_scheme(self):
        return bool(self.relations.generators) and self.relations.is_unit_ideal()

    def vars(self):
        return MultiPolynomial.ring_vars(self.field, self.variables)

    def extend_to(self, ext):
        """The same presentation with coefficients embedded into an extension
        of the coefficient field."""
        if not isinstance(ext, ExtensionField) or ext.base != self.field:
            raise FieldMismatch("can only extend scalars to an extension of the base")
        gens = [g.map_coeffs(ext.from_base, ext) for g in self.relations.generators]
        return AffineAlgebra(ext, self.variables, Ideal(ext, self.variables, gens))

    def __repr__(self):
        gens = ", ".join(g.format() for g in self.relations.generators)
        return f"{self.field!r}[{', '.join(self.variables)}]" + (f"/({gens})" if gens else "")


class SemilinearAlgebraMap:
    """theta_sigma: conjugate coefficients by sigma, substitute variables."""

    __slots__ = ("sigma", "images")

    def __init__(self, sigma, images):
        self.sigma = sigma
        self.images = dict(images)

    def __call__(self, poly):
        return apply_semilinear(self.sigma, self.images, poly)

    def __repr__(self):
        body = ", ".join(f"{v} -> {p.format()}" for v, p in sorted(self.images.items()))
        return f"({self.sigma.name}; {body})"


class AffineDescentDatum:
    """An algebra over the extension plus one semilinear automorphism per
    group element, aligned with the group's element list."""

    __slots__ = ("algebra", "group", "maps")

    def __init__(self, algebra, group, maps):
        if algebra.field != group.ext:
            raise FieldMismatch("datum algebra must live over the group's field")
        if len(maps) != group.order:
            raise FieldMismatch("one semilinear map per group element required")
        self.algebra = algebra
        self.group = group
        self.maps = list(maps)

    def theta(self, index, poly):
        return self.maps[index](poly)


class DatumReport:
    __slots__ = ("datum", "pairs_checked", "generators_checked")

    def __init__(self, datum, pairs_checked, generators_checked):
        self.datum = datum
        self.pairs_checked = pairs_checked
        self.generators_checked = generators_checked


def canonical_datum(algebra0, group):
    """Extend scalars and act by plain coefficient conjugation."""
    ext = group.ext
    algebra = algebra0.extend_to(ext)
    variables = MultiPolynomial.ring_vars(ext, algebra.variables)
    identity_images = dict(zip(algebra.variables, variables))
    maps = [SemilinearAlgebraMap(sigma, identity_images) for sigma in group.elements]
    return AffineDescentDatum(algebra, group, maps)


def validate_datum(datum, budget=DEFAULT_BUDGET):
    """Well-definedness, identity triviality, the automorphism-composition
    law, and invertibility, all modulo the relations."""
    budget = _as_budget(budget)
    algebra = datum.algebra
    group = datum.group
    basis = algebra.relations.groebner(GREVLEX, budget)
    variables = algebra.vars()
    named = dict(zip(algebra.variables, variables))

    ident = datum.maps[group.identity_index]
    for name, var in named.items():
        if not normal_form(ident(var) - var, basis, GREVLEX, budget).is_zero:
            raise IdentityNotTrivial(f"theta_id moves {name}")

    gens_checked = 0
    for idx, theta in enumerate(datum.maps):
        for g in algebra.relations.generators:
            if not normal_form(theta(g), basis, GREVLEX, budget).is_zero:
                raise NotWellDefined(group.elements[idx].name, g.format())
            gens_checked += 1

    pairs = 0
    for i in range(group.order):
        for j in range(group.order):
            k = group.compose(i, j)
            for name, var in named.items():
                composed = datum.maps[i](datum.maps[j].images[name])
                direct = datum.maps[k].images[name]
                if not normal_form(composed - direct, basis, GREVLEX, budget).is_zero:
                    raise CocycleViolation(
                        group.elements[i].name, group.elements[j].name,
                        f"on variable {name}")
            pairs += 1

    for idx in range(group.order):
        inv = group.inverse[idx]
        for name, var in named.items():
            round_trip = datum.maps[idx](datum.maps[inv].images[name])
            if not normal_form(round_trip - var, basis, GREVLEX, budget).is_zero:
                raise NotInvertible(
                    f"theta_{group.elements[idx].name} has no two-sided inverse")
    return DatumReport(datum, pairs, gens_checked)


class Model:
    """A presented algebra over the base field with an explicit splitting:
    each model variable is sent to an invariant polynomial over the
    extension in the original variables."""

    __slots__ = ("algebra0", "splitting", "datum")

    def __init__(self, algebra0, splitting, datum):
        self.algebra0 = algebra0
        self.splitting = dict(splitting)
        self.datum = datum

    def __repr__(self):
        return f"Model({self.algebra0!r})"


def _power_basis(ext):
    basis = [ext.one]
    for _ in range(ext.degree - 1):
        basis.append(basis[-1] * ext.generator)
    return basis


def _model_variable_names(variables, degree):
    names = []
    for i in range(1, len(variables) + 1):
        for j in range(degree):
            names.append(f"T{i}_{j}")
    return tuple(names)


def _invariant_generators(datum):
    """The trace-twist family t_{i,j} = sum_sigma sigma(b_j) theta_sigma(x_i)
    over the power basis b_j; every t is fixed by the whole action."""
    ext = datum.group.ext
    basis = _power_basis(ext)
    invariants = []
    for name in datum.algebra.variables:
        row = []
        for b in basis:
            acc = MultiPolynomial.zero(ext, datum.algebra.variables)
            for idx, sigma in enumerate(datum.group.elements):
                acc = acc + datum.maps[idx].images[name] * sigma(b)
            row.append(acc)
        invariants.append(row)
    return invariants


def _graph_elimination(algebra, model_names, targets, budget=DEFAULT_BUDGET):
    """Eliminate the original variables from relations + (T - t); returns the
    kernel ideal over the extension in the model variables."""
    ext = algebra.field
    joint = algebra.variables + model_names
    nx = len(algebra.variables)
    positions_x = list(range(nx))
    lifted = [g.rename_ring(joint, positions_x) for g in algebra.relations.generators]
    for k, name in enumerate(model_names):
        t_poly = targets[k].rename_ring(joint, positions_x)
        t_var = MultiPolynomial.variable(ext, joint, name)
        lifted.append(t_var - t_poly)
    graph = Ideal(ext, joint, lifted)
    return graph, eliminate(graph, model_names, budget)


def _contract_to_base(poly, ext):
    """Split a polynomial over the extension into its base-field components
    along the power basis; returns the list of nonzero components."""
    components = {}
    for exps, coeff in poly.terms.items():
        for j, c in enumerate(ext.coords(coeff)):
            if c:
                components.setdefault(j, {})[exps] = c
    return [MultiPolynomial(ext.base, poly.variables, terms)
            for j, terms in sorted(components.items())]


def descend_algebra(datum, budget=DEFAULT_BUDGET, validate=True):
    """The affine descent construction: invariants, elimination, coefficient
    contraction, and full verification of the resulting model."""
    budget = _as_budget(budget)
    if validate:
        validate_datum(datum, budget)
    algebra = datum.algebra
    ext = algebra.field
    group = datum.group
    relations_basis = algebra.relations.groebner(GREVLEX, budget)

    invariants = _invariant_generators(datum)
    flat_targets = [t for row in invariants for t in row]
    model_names = _model_variable_names(algebra.variables, ext.degree)

    for t in flat_targets:
        for idx in range(group.order):
            moved = datum.theta(idx, t) - t
            if not normal_form(moved, relations_basis, GREVLEX, budget).is_zero:
                raise InternalContradiction(
                    "invariant generator moved by the action; datum invalid")

    graph, kernel = _graph_elimination(algebra, model_names, flat_targets, budget)

    components = []
    for g in kernel.generators:
        components.extend(_contract_to_base(g, ext))
    model_ideal = Ideal(ext.base, model_names, components)
    canonical = model_ideal.groebner(GREVLEX, budget)
    model_ideal = Ideal(ext.base, model_names, canonical)

    algebra0 = AffineAlgebra(ext.base, model_names, model_ideal)
    splitting = dict(zip(model_names, flat_targets))
    model = Model(algebra0, splitting, datum)

    # kernel exactness: the extension of the contracted ideal recovers the
    # eliminated kernel
    extended = Ideal(ext, model_names,
                     [g.map_coeffs(ext.from_base, ext) for g in canonical])
    if not ideal_equal(extended, kernel, budget):
        raise SplittingCheckFailed("contracted ideal does not extend to the kernel")
    if not splits(model, datum, budget):
        raise SplittingCheckFailed("constructed model fails the splitting check")
    return model


def splits(model, datum, budget=DEFAULT_BUDGET):
    """Whether the model's splitting intertwines the datum with plain
    coefficient conjugation: substitution well-defined, images fixed, the
    extended map onto, and the kernel exactly the model's relations."""
    budget = _as_budget(budget)
    algebra = datum.algebra
    ext = algebra.field
    group = datum.group
    basis = algebra.relations.groebner(GREVLEX, budget)
    model_names = model.algebra0.variables
    targets = [model.splitting[name] for name in model_names]

    # substitution homomorphism is defined on the model's relations
    images = dict(zip(model_names, targets))
    for g in model.algebra0.relations.generators:
        g_ext = g.map_coeffs(ext.from_base, ext)
        value = g_ext.substitute(images)
        if not normal_form(value, basis, GREVLEX, budget).is_zero:
            return False

    # every splitting image is an invariant of the action
    for t in targets:
        for idx in range(group.order):
            if not normal_form(datum.theta(idx, t) - t, basis, GREVLEX, budget).is_zero:
                return False

    # onto: each original variable rewrites into the model variables alone
    graph, kernel = _graph_elimination(algebra, model_names, targets, budget)
    joint = algebra.variables + model_names
    nx = len(algebra.variables)
    graph_basis = graph.groebner(block_order(nx), budget)
    for i, name in enumerate(algebra.variables):
        var = MultiPolynomial.variable(ext, joint, name)
        reduced = normal_form(var, graph_basis, block_order(nx), budget)
        if any(any(e for e in exps[:nx]) for exps in reduced.terms):
            return False

    # kernel equals the extension of the model's relations
    extended = Ideal(ext, model_names,
                     [g.map_coeffs(ext.from_base, ext)
                      for g in model.algebra0.relations.generators])
    return ideal_equal(extended, kernel, budget)


def descend_ideal(algebra0, group, W, budget=DEFAULT_BUDGET):
    """Descend an extension-coefficient ideal in the coordinates of a base
    algebra; the ambient action is coefficient conjugation.  Returns the
    base-field ideal (including the ambient relations) whose extension
    recovers W."""
    budget = _as_budget(budget)
    ext = group.ext
    if algebra0.field != ext.base:
        raise FieldMismatch("ambient algebra must live over the base field")
    if W.field != ext or W.variables != algebra0.variables:
        raise FieldMismatch("ideal not over the extension in the ambient variables")
    ambient = [g.map_coeffs(ext.from_base, ext)
               for g in algebra0.relations.generators]
    full = Ideal(ext, W.variables, list(W.generators) + ambient)
    full_basis = full.groebner(GREVLEX, budget)

    for idx in group.generator_indices:
        sigma = group.elements[idx]
        for g in W.generators:
            image = g.map_coeffs(sigma)
            if not normal_form(image, full_basis, GREVLEX, budget).is_zero:
                raise NotStable(sigma.name, g.format())

    basis = _power_basis(ext)
    components = []
    for g in W.generators:
        for b in basis:
            acc = MultiPolynomial.zero(ext, W.variables)
            for sigma in group.elements:
                acc = acc + g.map_coeffs(sigma) * sigma(b)
            components.extend(_contract_to_base(acc, ext))
    result = Ideal(ext.base, W.variables,
                   components + list(algebra0.relations.generators))
    result = Ideal(ext.base, W.variables, result.groebner(GREVLEX, budget))

    extended = Ideal(ext, W.variables,
                     [g.map_coeffs(ext.from_base, ext) for g in result.generators])
    if not ideal_equal(extended, full, budget):
        raise InternalContradiction("extension of the descended ideal differs")
    return result


def descend_morphism(datum_a, model_a, datum_b, model_b, alpha_images,
                     budget=DEFAULT_BUDGET):
    """Descend an equivariant algebra map alpha from B's algebra to A's
    algebra (a scheme morphism Spec A -> Spec B).

    ``alpha_images``: variable of B -> polynomial over the extension in A's
    variables.  Returns the base-field images of the model-B variables in the
    model-A presentation; its extension provably agrees with alpha.
    """
    budget = _as_budget(budget)
    A = datum_a.algebra
    B = datum_b.algebra
    ext = A.field
    group = datum_a.group
    basis_a = A.relations.groebner(GREVLEX, budget)

    # well-defined on B's relations
    for g in B.relations.generators:
        value = g.substitute(alpha_images)
        if not normal_form(value, basis_a, GREVLEX, budget).is_zero:
            raise NotWellDefined("alpha", g.format())

    # equivariance theta^A_sigma(alpha(y)) = alpha(theta^B_sigma(y))
    for idx, sigma in enumerate(group.elements):
        for name in B.variables:
            lhs = datum_a.theta(idx, alpha_images[name])
            rhs = datum_b.maps[idx].images[name].substitute(alpha_images)
            if not normal_form(lhs - rhs, basis_a, GREVLEX, budget).is_zero:
                raise NotEquivariant(sigma.name, name)

    # transport through both splittings via the graph basis of A's model
    model_names_a = model_a.algebra0.variables
    targets_a = [model_a.splitting[name] for name in model_names_a]
    graph, _ = _graph_elimination(A, model_names_a, targets_a, budget)
    nx = len(A.variables)
    order = block_order(nx)
    graph_basis = graph.groebner(order, budget)
    joint = A.variables + model_names_a

    result = {}
    for u_name in model_b.algebra0.variables:
        t_b = model_b.splitting[u_name]
        w = t_b.substitute(alpha_images)
        lifted = w.rename_ring(joint, list(range(nx)))
        reduced = normal_form(lifted, graph_basis, order, budget)
        if any(any(e for e in exps[:nx]) for exps in reduced.terms):
            raise TransportNotRational(
                f"image of {u_name} does not rewrite into model variables")
        dropped = MultiPolynomial(
            ext, model_names_a,
            {exps[nx:]: c for exps, c in reduced.terms.items()})
        rational_terms = {}
        for exps, coeff in dropped.terms.items():
            coords = ext.coords(coeff)
            if any(coords[1:]):
                raise TransportNotRational(
                    f"image of {u_name} has an irrational coefficient")
            rational_terms[exps] = coords[0]
        result[u_name] = MultiPolynomial(ext.base, model_names_a, rational_terms)

    # re-extension agrees with alpha modulo relations
    ext_images = {u: p.map_coeffs(ext.from_base, ext) for u, p in result.items()}
    splitting_a = {name: model_a.splitting[name] for name in model_names_a}
    for u_name in model_b.algebra0.variables:
        recomposed = ext_images[u_name].substitute(splitting_a)
        direct = model_b.splitting[u_name].substitute(alpha_images)
        if not normal_form(recomposed - direct, basis_a, GREVLEX, budget).is_zero:
            raise InternalContradiction("re-extension of descended morphism differs")

    # descended map respects the model relations
    basis_a0 = model_a.algebra0.relations.groebner(GREVLEX, budget)
    for g in model_b.algebra0.relations.generators:
        value = g.substitute(result)
        if not normal_form(value, basis_a0, GREVLEX, budget).is_zero:
            raise InternalContradiction("descended morphism breaks model relations")
    return result


class Embedding:
    """A base-field embedding of one extension into another, stored as the
    image of the source generator."""

    __slots__ = ("source", "target", "image", "name", "_powers")

    def __init__(self, source, target, image, name):
        if source.base != target.base:
            raise FieldMismatch("embeddings must fix the base field")
        value = source.modulus.evaluate(image, embed=target.from_base)
        if value:
            raise FieldMismatch("claimed embedding image is not a root")
        self.source = source
        self.target = target
        self.image = image
        self.name = name
        powers = [target.one]
        for _ in range(source.degree - 1):
            powers.append(powers[-1] * image)
        self._powers = powers

    def __call__(self, a):
        acc = self.target.zero
        for coeff, power in zip(self.source.coords(a), self._powers):
            if coeff:
                acc = acc + self.target.from_base(coeff) * power
        return acc

    def __repr__(self):
        return f"{self.name}: K -> Omega, t -> {self.target.format_element(self.image)}"


def embeddings_into(K, omega, group=None):
    """All base-embeddings K -> Omega, as roots of K's modulus in Omega.

    Finite fields are scanned exhaustively; over Q the target must carry a
    known automorphism group and contain K as the same presented field (the
    embeddings are then the group orbit of the generator)."""
    roots = []
    if omega.is_finite:
        for a in omega.elements():
            if not K.modulus.evaluate(a, embed=omega.from_base):
                roots.append(a)
    else:
        if group is None or K != omega:
            raise FieldMismatch(
                "over Q, embeddings need Omega = K with its automorphism group")
        for sigma in group.elements:
            roots.append(sigma.image)
    out = []
    seen = set()
    for i, r in enumerate(sorted(roots, key=lambda a: repr(a))):
        if r in seen:
            continue
        seen.add(r)
        out.append(Embedding(K, omega, r, f"e{i}"))
    return out


def descend_from_embeddings(V, embeddings, group, family, budget=DEFAULT_BUDGET):
    """Descend along a finite separable extension given compatible
    isomorphisms between the conjugate algebras.

    ``V``: algebra over K.  ``embeddings``: the embeddings of K into the
    group's field.  ``family``: dict (tau_index, sigma_index) -> variable
    images over Omega, the algebra map from the tau-conjugate to the
    sigma-conjugate (pullback of the scheme map sigmaV -> tauV).

    Verifies the composition condition and the conjugation-compatibility
    condition, assembles the induced datum on the first conjugate, and
    delegates to :func:`descend_algebra`.
    """
    budget = _as_budget(budget)
    omega = group.ext
    d = len(embeddings)
    conjugates = []
    for emb in embeddings:
        gens = [g.map_coeffs(emb, omega) for g in V.relations.generators]
        conjugates.append(AffineAlgebra(omega, V.variables,
                                        Ideal(omega, V.variables, gens)))
    bases = [c.relations.groebner(GREVLEX, budget) for c in conjugates]
    variables = MultiPolynomial.ring_vars(omega, V.variables)
    named = dict(zip(V.variables, variables))

    def images_of(tau_idx, sigma_idx):
        key = (tau_idx, sigma_idx)
        if key not in family:
            raise FieldMismatch(f"family entry {key} missing")
        return family[key]

    # well-definedness: the (tau, sigma) map sends tau-relations into
    # sigma-relations
    for (tau_idx, sigma_idx), images in family.items():
        for g in conjugates[tau_idx].relations.generators:
            value = g.substitute(images)
            if not normal_form(value, bases[sigma_idx], GREVLEX, budget).is_zero:
                raise FieldMismatch(
                    f"family entry ({tau_idx}, {sigma_idx}) does not map "
                    "conjugate relations correctly")

    # condition (a): composition
    for rho in range(d):
        for sigma in range(d):
            for tau in range(d):
                left = images_of(tau, sigma)
                right = images_of(sigma, rho)
                direct = images_of(tau, rho)
                for name in V.variables:
                    composed = left[name].substitute(right)
                    if not normal_form(composed - direct[name],
                                       bases[rho], GREVLEX, budget).is_zero:
                        raise ConditionAViolated(rho, sigma, tau)

    # condition (b): conjugation compatibility
    def embedding_index(image):
        for i, emb in enumerate(embeddings):
            if emb.image == image:
                return i
        raise FieldMismatch("group does not permute the embeddings")

    for w_idx, omega_auto in enumerate(group.elements):
        for tau in range(d):
            for sigma in range(d):
                w_tau = embedding_index(omega_auto(embeddings[tau].image))
                w_sigma = embedding_index(omega_auto(embeddings[sigma].image))
                conjugated = {name: p.map_coeffs(omega_auto)
                              for name, p in images_of(tau, sigma).items()}
                direct = images_of(w_tau, w_sigma)
                for name in V.variables:
                    diff = conjugated[name] - direct[name]
                    if not normal_form(diff, bases[w_sigma], GREVLEX, budget).is_zero:
                        raise ConditionBViolated(sigma, tau, omega_auto.name)

    # assemble the induced datum on the first conjugate:
    # theta_omega = (pullback of the map from conjugate 0 to conjugate
    # omega.0) composed with omega-conjugation of coefficients
    maps = []
    for omega_auto in group.elements:
        target = embedding_index(omega_auto(embeddings[0].image))
        maps.append(SemilinearAlgebraMap(omega_auto, images_of(target, 0)))
    datum = AffineDescentDatum(conjugates[0], group, maps)
    return descend_algebra(datum, budget)


class PointAction:
    """The action on extension points of a finite-field datum: the point list
    and one permutation (as an index list) per group element."""

    __slots__ = ("datum", "points", "permutations")

    def __init__(self, datum, points, permutations):
        self.datum = datum
        self.points = points
        self.permutations = permutations

    def fixed_points(self):
        """Points fixed by every group element."""
        out = []
        for p_idx in range(len(self.points)):
            if all(perm[p_idx] == p_idx for perm in self.permutations):
                out.append(self.points[p_idx])
        return out


def derive_point_action(datum, budget=DEFAULT_POINT_BUDGET):
    """Enumerate the extension points and tabulate sigma * P; verified to be
    a group action."""
    algebra = datum.algebra
    ext = algebra.field
    group = datum.group
    points = affine_points(list(algebra.relations.generators), ext,
                           len(algebra.variables), budget)
    index = {p: i for i, p in enumerate(points)}
    permutations = []
    for idx in range(group.order):
        sigma = group.elements[idx]
        inv = group.inverse[idx]
        inv_images = [datum.maps[inv].images[name] for name in algebra.variables]
        perm = []
        for p in points:
            coords = tuple(sigma(poly.evaluate(p)) for poly in inv_images)
            target = index.get(coords)
            if target is None:
                raise InternalContradiction(
                    "action image escaped the point set; datum invalid")
            perm.append(target)
        permutations.append(perm)
    # group-action law on the table
    for i in range(group.order):
        for j in range(group.order):
            k = group.compose(i, j)
            for p_idx in range(len(points)):
                if permutations[i][permutations[j][p_idx]] != permutations[k][p_idx]:
                    raise InternalContradiction("point action violates the group law")
    return PointAction(datum, points, permutations)
