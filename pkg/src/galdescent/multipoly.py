"""Sparse multivariate polynomials and monomial orders.

Terms are a dict from exponent tuples to nonzero coefficients; the variable
list is an explicit ordered tuple of names shared by every polynomial of a
given ring context.  Coefficients may come from any of the library's fields.
"""

from .errors import FieldMismatch, ShapeMismatch
from .fields import FieldElement


class MonomialOrder:
    """Total order on exponent tuples, exposed as a max-key function."""

    def __init__(self, kind, split=0):
        if kind not in ("lex", "grevlex", "block"):
            raise ValueError(f"unknown order {kind}")
        self.kind = kind
        self.split = split

    def key(self, exps):
        if self.kind == "lex":
            return exps
        if self.kind == "grevlex":
            return self._grevlex_key(exps)
        head, tail = exps[: self.split], exps[self.split:]
        return (self._grevlex_key(head), self._grevlex_key(tail))

    @staticmethod
    def _grevlex_key(exps):
        return (sum(exps), tuple(-e for e in reversed(exps)))

    def __repr__(self):
        if self.kind == "block":
            return f"block({self.split})"
        return self.kind


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


def block_order(split):
    return MonomialOrder("block", split)


def _monomial_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _monomial_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _monomial_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _monomial_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


class MultiPolynomial:
    __slots__ = ("field", "variables", "terms")

    def __init__(self, field, variables, terms):
        self.field = field
        self.variables = tuple(variables)
        self.terms = {e: c for e, c in terms.items() if c}

    @classmethod
    def zero(cls, field, variables):
        return cls(field, variables, {})

    @classmethod
    def constant(cls, field, variables, value):
        if isinstance(value, int):
            value = field.from_int(value)
        return cls(field, variables, {(0,) * len(variables): value})

    @classmethod
    def variable(cls, field, variables, name):
        exps = [0] * len(variables)
        exps[list(variables).index(name)] = 1
        return cls(field, variables, {tuple(exps): field.one})

    @classmethod
    def ring_vars(cls, field, variables):
        """The variable polynomials of k[variables], in order."""
        return tuple(cls.variable(field, variables, name) for name in variables)

    @classmethod
    def from_terms(cls, field, variables, pairs):
        """pairs of (exponent tuple, coefficient); repeated exponents add."""
        terms = {}
        for exps, coeff in pairs:
            if isinstance(coeff, int):
                coeff = field.from_int(coeff)
            if exps in terms:
                terms[exps] = terms[exps] + coeff
            else:
                terms[exps] = coeff
        return cls(field, variables, terms)

    @property
    def is_zero(self):
        return not self.terms

    def _check(self, other):
        if not isinstance(other, MultiPolynomial):
            raise TypeError(f"expected polynomial, got {type(other).__name__}")
        if other.field != self.field or other.variables != self.variables:
            raise FieldMismatch("polynomials from different rings")

    def __add__(self, other):
        if isinstance(other, (int, FieldElement)):
            other = MultiPolynomial.constant(self.field, self.variables, other)
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            if e in terms:
                s = terms[e] + c
                if s:
                    terms[e] = s
                else:
                    del terms[e]
            else:
                terms[e] = c
        return MultiPolynomial(self.field, self.variables, terms)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, FieldElement)):
            other = MultiPolynomial.constant(self.field, self.variables, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return MultiPolynomial(self.field, self.variables,
                               {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            other = self.field.from_int(other)
        if isinstance(other, FieldElement):
            return MultiPolynomial(self.field, self.variables,
                                   {e: c * other for e, c in self.terms.items()})
        self._check(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _monomial_mul(e1, e2)
                prod = c1 * c2
                if e in terms:
                    s = terms[e] + prod
                    if s:
                        terms[e] = s
                    else:
                        del terms[e]
                elif prod:
                    terms[e] = prod
        return MultiPolynomial(self.field, self.variables, terms)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPolynomial.constant(self.field, self.variables, self.field.one)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        return (isinstance(other, MultiPolynomial) and other.field == self.field
                and other.variables == self.variables and other.terms == self.terms)

    def __hash__(self):
        return hash((id(self.field), self.variables, frozenset(self.terms.items())))

    def leading(self, order):
        """(exponent tuple, coefficient) of the leading term."""
        exps = max(self.terms, key=order.key)
        return exps, self.terms[exps]

    def total_degree(self):
        if self.is_zero:
            return -1
        return max(sum(e) for e in self.terms)

    def coefficient_of(self, exps):
        return self.terms.get(exps, self.field.zero)

    def map_coeffs(self, func, field=None):
        out = {}
        target = field or self.field
        for e, c in self.terms.items():
            v = func(c)
            if v:
                out[e] = v
        return MultiPolynomial(target, self.variables, out)

    def substitute(self, images):
        """Replace each variable by ``images[name]`` (a polynomial of a common
        target ring); coefficients are embedded with identity."""
        return self.transform(lambda c: c, images)

    def transform(self, coeff_map, images):
        """Apply ``coeff_map`` to every coefficient and substitute variables
        by the polynomials in ``images`` (keyed by variable name); missing
        names keep the variable (which must then exist in the target ring)."""
        sample = next(iter(images.values()), None)
        if sample is None:
            target_field, target_vars = self.field, self.variables
        else:
            target_field, target_vars = sample.field, sample.variables
        var_polys = []
        for name in self.variables:
            if name in images:
                var_polys.append(images[name])
            else:
                var_polys.append(
                    MultiPolynomial.variable(target_field, target_vars, name))
        acc = MultiPolynomial.zero(target_field, target_vars)
        for exps, coeff in self.terms.items():
            term = MultiPolynomial.constant(target_field, target_vars, coeff_map(coeff))
            for v, e in zip(var_polys, exps):
                if e:
                    term = term * v ** e
            acc = acc + term
        return acc

    def evaluate(self, point, embed=None, mul=None, add=None):
        """Evaluate at a point (sequence aligned with the variable list).

        With the hooks left default, the point consists of field elements;
        custom ``embed``/``mul``/``add`` let callers evaluate into any
        commutative ring (finite algebras, tensor products)."""
        if len(point) != len(self.variables):
            raise ShapeMismatch("point arity mismatch")
        embed = embed or (lambda c: c)
        mul = mul or (lambda a, b: a * b)
        add = add or (lambda a, b: a + b)
        total = None
        for exps, coeff in self.terms.items():
            acc = embed(coeff)
            for value, e in zip(point, exps):
                for _ in range(e):
                    acc = mul(acc, value)
            total = acc if total is None else add(total, acc)
        if total is None:
            return embed(self.field.zero)
        return total

    def rename_ring(self, variables, positions):
        """Reinterpret in a larger ring: ``positions[i]`` is where the old
        i-th variable lands in ``variables``."""
        n = len(variables)
        out = {}
        for exps, coeff in self.terms.items():
            new = [0] * n
            for old_i, e in enumerate(exps):
                new[positions[old_i]] = e
            out[tuple(new)] = coeff
        return MultiPolynomial(self.field, tuple(variables), out)

    def sort_key(self, order=GREVLEX):
        """Deterministic comparison key: (total degree, sorted term list)."""
        items = sorted(self.terms, key=order.key, reverse=True)
        return (self.total_degree(), tuple(items),
                tuple(repr(self.terms[e]) for e in items))

    def __repr__(self):
        return self.format()

    def format(self, order=GREVLEX, generator="t"):
        if self.is_zero:
            return "0"
        parts = []
        for exps in sorted(self.terms, key=order.key, reverse=True):
            coeff = self.terms[exps]
            mono = "*".join(
                f"{name}^{e}" if e > 1 else name
                for name, e in zip(self.variables, exps) if e)
            coeff_str = _format_coeff(coeff, generator)
            if not mono:
                parts.append(coeff_str)
            elif coeff_str == "1":
                parts.append(mono)
            elif coeff_str == "-1":
                parts.append(f"-{mono}")
            else:
                parts.append(f"{coeff_str}*{mono}")
        text = " + ".join(parts)
        return text.replace("+ -", "- ")


def _format_coeff(coeff, generator):
    from .extension import ExtensionField

    field = coeff.field
    if isinstance(field, ExtensionField):
        poly = field.to_unipoly(coeff)
        if poly.degree <= 0:
            return repr(poly.coeff(0))
        body = poly.format(generator)
        return f"({body})"
    return repr(coeff)
