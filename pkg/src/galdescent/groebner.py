"""Buchberger's algorithm, normal forms, ideal comparison, elimination, and
semilinear transport of polynomials.

Bases are always reduced and monic, so equal ideals under the same order get
the same basis and CLI output stays deterministic.  A step budget turns
runaway computations into a loud ``BudgetExceeded``.
"""

from .errors import BudgetExceeded, FieldMismatch
from .multipoly import (
    GREVLEX,
    MonomialOrder,
    MultiPolynomial,
    _monomial_div,
    _monomial_divides,
    _monomial_lcm,
    _monomial_mul,
    block_order,
)

DEFAULT_BUDGET = 10 ** 6


class _Budget:
    """Mutable reduction-step counter shared across nested calls."""

    __slots__ = ("remaining", "limit")

    def __init__(self, limit):
        self.remaining = limit
        self.limit = limit

    def spend(self, n=1):
        self.remaining -= n
        if self.remaining < 0:
            raise BudgetExceeded(f"exceeded {self.limit} reduction steps")


def _as_budget(budget):
    return budget if isinstance(budget, _Budget) else _Budget(budget)


class Ideal:
    """A finitely generated ideal with cached reduced Groebner bases."""

    __slots__ = ("field", "variables", "generators", "_bases")

    def __init__(self, field, variables, generators):
        self.field = field
        self.variables = tuple(variables)
        gens = []
        for g in generators:
            if g.field != field or g.variables != self.variables:
                raise FieldMismatch("generator from a different ring")
            if not g.is_zero:
                gens.append(g)
        self.generators = tuple(gens)
        self._bases = {}

    def groebner(self, order=GREVLEX, budget=DEFAULT_BUDGET):
        key = (order.kind, order.split)
        if key not in self._bases:
            self._bases[key] = buchberger(list(self.generators), order, budget)
        return self._bases[key]

    def any_groebner(self, budget=DEFAULT_BUDGET):
        """Some cached (basis, order) pair, computing a grevlex one if none
        exists; membership tests are basis-independent, so reuse is safe."""
        if self._bases:
            key = sorted(self._bases)[0]
            return self._bases[key], MonomialOrder(key[0], key[1])
        return self.groebner(GREVLEX, budget), GREVLEX

    def contains(self, poly, order=None, budget=DEFAULT_BUDGET):
        if order is not None:
            return normal_form(poly, self.groebner(order, budget), order, budget).is_zero
        basis, basis_order = self.any_groebner(budget)
        return normal_form(poly, basis, basis_order, budget).is_zero

    def is_unit_ideal(self, order=GREVLEX):
        basis = self.groebner(order)
        return len(basis) == 1 and basis[0].total_degree() == 0

    def __repr__(self):
        return f"Ideal({', '.join(g.format() for g in self.generators) or '0'})"


def normal_form(poly, basis, order=GREVLEX, budget=DEFAULT_BUDGET):
    """Fully reduced remainder of ``poly`` modulo a Groebner basis, by the
    classical division algorithm: the leading term of the working polynomial
    is either cancelled against a basis element or moved to the remainder."""
    if poly.is_zero or not basis:
        return poly
    budget = _as_budget(budget)
    field, variables = poly.field, poly.variables
    leading_data = [(g.leading(order)[0], g.leading(order)[1].inverse(), g)
                    for g in basis]
    remainder = {}
    work = dict(poly.terms)
    key = order.key
    while work:
        exps = max(work, key=key)
        coeff = work.pop(exps)
        for lt, lc_inv, g in leading_data:
            if _monomial_divides(lt, exps):
                budget.spend()
                shift = _monomial_div(exps, lt)
                factor = coeff * lc_inv
                for ge, gc in g.terms.items():
                    e = _monomial_mul(shift, ge)
                    if e == exps:
                        continue
                    prev = work.get(e)
                    val = (prev - factor * gc) if prev is not None else -(factor * gc)
                    if val:
                        work[e] = val
                    elif prev is not None:
                        del work[e]
                break
        else:
            remainder[exps] = coeff
    return MultiPolynomial(field, variables, remainder)


def _s_polynomial(f, g, order):
    lt_f, lc_f = f.leading(order)
    lt_g, lc_g = g.leading(order)
    lcm = _monomial_lcm(lt_f, lt_g)
    mf = MultiPolynomial(f.field, f.variables,
                         {_monomial_div(lcm, lt_f): lc_f.inverse()})
    mg = MultiPolynomial(g.field, g.variables,
                         {_monomial_div(lcm, lt_g): lc_g.inverse()})
    return mf * f - mg * g


def buchberger(generators, order=GREVLEX, budget=DEFAULT_BUDGET):
    """Reduced monic Groebner basis of the ideal the generators span."""
    basis = [g for g in generators if not g.is_zero]
    if not basis:
        return []
    budget = _as_budget(budget)
    pairs = [(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))]
    while pairs:
        pairs.sort(key=lambda p: order.key(
            _monomial_lcm(basis[p[0]].leading(order)[0], basis[p[1]].leading(order)[0])))
        i, j = pairs.pop(0)
        lt_i = basis[i].leading(order)[0]
        lt_j = basis[j].leading(order)[0]
        # Buchberger's first criterion: coprime leading monomials reduce to 0
        if _monomial_mul(lt_i, lt_j) == _monomial_lcm(lt_i, lt_j):
            continue
        budget.spend()
        s = _s_polynomial(basis[i], basis[j], order)
        remainder = normal_form(s, basis, order, budget)
        if not remainder.is_zero:
            basis.append(remainder)
            k = len(basis) - 1
            pairs.extend((m, k) for m in range(k))
    return _reduce_basis(basis, order, budget)


def _reduce_basis(basis, order, budget):
    # minimalize: LT(h) | LT(g) forces LT(h) <= LT(g), so an ascending sweep
    # keeping only elements whose LT no kept LT divides is complete
    ordered = sorted((g for g in basis if not g.is_zero),
                     key=lambda g: order.key(g.leading(order)[0]))
    kept = []
    for g in ordered:
        lt = g.leading(order)[0]
        if not any(_monomial_divides(h.leading(order)[0], lt) for h in kept):
            kept.append(g)
    reduced = []
    for i, g in enumerate(kept):
        others = kept[:i] + kept[i + 1:]
        r = normal_form(g, others, order, budget) if others else g
        if not r.is_zero:
            lc = r.leading(order)[1]
            reduced.append(r * lc.inverse())
    reduced.sort(key=lambda g: order.key(g.leading(order)[0]))
    return reduced


def ideal_equal(I, J, budget=DEFAULT_BUDGET):
    """Mutual membership of generators via normal forms.  Each side's cached
    basis (any order) is reused; membership does not depend on the order."""
    if I.field != J.field or I.variables != J.variables:
        raise FieldMismatch("ideals from different rings")
    basis_i, order_i = I.any_groebner(budget)
    basis_j, order_j = J.any_groebner(budget)
    for g in I.generators:
        if not normal_form(g, basis_j, order_j, budget).is_zero:
            return False
    for g in J.generators:
        if not normal_form(g, basis_i, order_i, budget).is_zero:
            return False
    return True


def eliminate(I, keep, budget=DEFAULT_BUDGET):
    """I intersected with the subring on the ``keep`` variables, which must
    be a suffix of the variable order."""
    variables = I.variables
    keep = tuple(keep)
    split = len(variables) - len(keep)
    if variables[split:] != keep:
        raise FieldMismatch(f"{keep} is not a suffix of {variables}")
    order = block_order(split)
    basis = I.groebner(order, budget)
    out = []
    for g in basis:
        if all(all(e == 0 for e in exps[:split]) for exps in g.terms):
            out.append(MultiPolynomial(
                I.field, keep,
                {exps[split:]: c for exps, c in g.terms.items()}))
    return Ideal(I.field, keep, out)


def apply_semilinear(sigma, images, poly):
    """Map coefficients through the automorphism, then substitute variables by
    their images; the computational form of transporting a polynomial along a
    semilinear algebra map."""
    return poly.transform(sigma, images)
