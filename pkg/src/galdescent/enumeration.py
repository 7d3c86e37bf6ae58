"""Brute-force point enumeration over finite fields and finite algebras.

Solution sets are tiny but appear inside doubly-exponential loops, so the
finite-field path compiles polynomials down to index arithmetic over
precomputed multiplication tables.
"""

from .errors import BudgetExceeded

DEFAULT_POINT_BUDGET = 2_000_000


class SmallFieldTables:
    """Index-coded arithmetic for a finite field: elements are 0..q-1."""

    def __init__(self, field):
        self.field = field
        self.elements = list(field.elements())
        self.index = {e: i for i, e in enumerate(self.elements)}
        q = len(self.elements)
        self.q = q
        self.mul = [[self.index[self.elements[i] * self.elements[j]]
                     for j in range(q)] for i in range(q)]
        self.add = [[self.index[self.elements[i] + self.elements[j]]
                     for j in range(q)] for i in range(q)]
        self.zero = self.index[field.zero]

    def compile_poly(self, poly, max_degree=None):
        """Precompute per-variable power tables and the term list; returns an
        evaluator taking a tuple of element indices."""
        degrees = [0] * len(poly.variables)
        for exps in poly.terms:
            for i, e in enumerate(exps):
                degrees[i] = max(degrees[i], e)
        pow_tables = []
        one = self.index[self.field.one]
        for d in degrees:
            table = [[one] * (d + 1) for _ in range(self.q)]
            for v in range(self.q):
                for e in range(1, d + 1):
                    table[v][e] = self.mul[table[v][e - 1]][v]
            pow_tables.append(table)
        compiled = [(self.index[c], exps) for exps, c in poly.terms.items()]
        mul = self.mul
        add = self.add
        zero = self.zero

        def evaluate(point):
            total = zero
            for coeff, exps in compiled:
                acc = coeff
                for i, e in enumerate(exps):
                    if e:
                        acc = mul[acc][pow_tables[i][point[i]][e]]
                total = add[total][acc]
            return total

        return evaluate


def _tuple_counter(arity, size):
    idx = [0] * arity
    while True:
        yield tuple(idx)
        k = 0
        while k < arity:
            idx[k] += 1
            if idx[k] < size:
                break
            idx[k] = 0
            k += 1
        if k == arity:
            return


def affine_points(generators, field, nvars, budget=DEFAULT_POINT_BUDGET):
    """All solutions of the generator system in field^nvars, as tuples of
    field elements."""
    if not field.is_finite:
        raise BudgetExceeded("cannot enumerate points over an infinite field")
    tables = SmallFieldTables(field)
    total = tables.q ** nvars if nvars else 1
    if total > budget:
        raise BudgetExceeded(f"{total} candidate points exceed budget {budget}")
    evaluators = [tables.compile_poly(g) for g in generators if not g.is_zero]
    zero = tables.zero
    out = []
    for point in _tuple_counter(nvars, tables.q):
        if all(ev(point) == zero for ev in evaluators):
            out.append(tuple(tables.elements[i] for i in point))
    return out


def count_affine_points(generators, field, nvars, budget=DEFAULT_POINT_BUDGET):
    if not field.is_finite:
        raise BudgetExceeded("cannot enumerate points over an infinite field")
    tables = SmallFieldTables(field)
    total = tables.q ** nvars if nvars else 1
    if total > budget:
        raise BudgetExceeded(f"{total} candidate points exceed budget {budget}")
    evaluators = [tables.compile_poly(g) for g in generators if not g.is_zero]
    zero = tables.zero
    count = 0
    for point in _tuple_counter(nvars, tables.q):
        if all(ev(point) == zero for ev in evaluators):
            count += 1
    return count


def algebra_points(generators, algebra, nvars, embed, budget=DEFAULT_POINT_BUDGET):
    """Solutions valued in a finite commutative algebra.

    ``embed`` maps polynomial coefficients into the algebra; elements of the
    algebra are whatever :meth:`algebra.elements` yields, with arithmetic via
    ``algebra.add``/``algebra.mul``.
    """
    elems = list(algebra.elements())
    total = len(elems) ** nvars if nvars else 1
    if total > budget:
        raise BudgetExceeded(f"{total} candidate points exceed budget {budget}")
    gens = [g for g in generators if not g.is_zero]
    zero = algebra.zero_vector()
    out = []
    for idx in _tuple_counter(nvars, len(elems)):
        point = tuple(elems[i] for i in idx)
        ok = True
        for g in gens:
            value = g.evaluate(point, embed=embed,
                               mul=algebra.mul, add=algebra.add)
            if value != zero:
                ok = False
                break
        if ok:
            out.append(point)
    return out
