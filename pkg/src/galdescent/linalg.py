"""Dense exact linear algebra over any of the library's fields.

Everything reduces to row echelon computations; matrices are immutable and
field-generic (the same code runs over Q, F_p and extensions).  Vectors are
plain tuples of field elements.
"""

from .errors import ShapeMismatch, SingularMatrix
from .extension import ExtensionField
from .fields import FieldElement


class Matrix:
    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field, rows):
        self.field = field
        self.rows = tuple(tuple(r) for r in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        for r in self.rows:
            if len(r) != self.ncols:
                raise ShapeMismatch("ragged rows")

    @classmethod
    def identity(cls, field, n):
        one, zero = field.one, field.zero
        return cls(field, [[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, field, nrows, ncols):
        z = field.zero
        return cls(field, [[z] * ncols for _ in range(nrows)])

    @classmethod
    def from_cols(cls, field, cols):
        if not cols:
            return cls(field, [])
        return cls(field, [[col[i] for col in cols] for i in range(len(cols[0]))])

    def col(self, j):
        return tuple(r[j] for r in self.rows)

    def __add__(self, other):
        self._same_shape(other)
        return Matrix(self.field, [[a + b for a, b in zip(r1, r2)]
                                   for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other):
        self._same_shape(other)
        return Matrix(self.field, [[a - b for a, b in zip(r1, r2)]
                                   for r1, r2 in zip(self.rows, other.rows)])

    def __neg__(self):
        return Matrix(self.field, [[-a for a in r] for r in self.rows])

    def _same_shape(self, other):
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise ShapeMismatch(f"{self.nrows}x{self.ncols} vs {other.nrows}x{other.ncols}")

    def __mul__(self, other):
        if isinstance(other, FieldElement):
            return Matrix(self.field, [[a * other for a in r] for r in self.rows])
        if self.ncols != other.nrows:
            raise ShapeMismatch(f"{self.nrows}x{self.ncols} times {other.nrows}x{other.ncols}")
        cols = [other.col(j) for j in range(other.ncols)]
        zero = self.field.zero
        out = []
        for r in self.rows:
            out_row = []
            for c in cols:
                acc = zero
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                out_row.append(acc)
            out.append(out_row)
        return Matrix(self.field, out)

    def apply(self, vec):
        if len(vec) != self.ncols:
            raise ShapeMismatch(f"vector length {len(vec)} vs {self.ncols} columns")
        zero = self.field.zero
        out = []
        for r in self.rows:
            acc = zero
            for a, b in zip(r, vec):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def transpose(self):
        return Matrix(self.field, [self.col(j) for j in range(self.ncols)])

    def hstack(self, other):
        if self.nrows != other.nrows:
            raise ShapeMismatch("row counts differ")
        return Matrix(self.field, [r1 + r2 for r1, r2 in zip(self.rows, other.rows)])

    def vstack(self, other):
        if self.ncols != other.ncols:
            raise ShapeMismatch("column counts differ")
        return Matrix(self.field, self.rows + other.rows)

    def map_entries(self, func, field=None):
        return Matrix(field or self.field, [[func(a) for a in r] for r in self.rows])

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.field == other.field
                and self.rows == other.rows)

    def __hash__(self):
        return hash((id(self.field), self.rows))

    def rref(self):
        """Reduced row echelon form: returns (matrix, pivot column tuple)."""
        rows = [list(r) for r in self.rows]
        pivots = []
        rank = 0
        for col in range(self.ncols):
            pivot_row = None
            for i in range(rank, self.nrows):
                if rows[i][col]:
                    pivot_row = i
                    break
            if pivot_row is None:
                continue
            rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
            inv = rows[rank][col].inverse()
            rows[rank] = [a * inv for a in rows[rank]]
            for i in range(self.nrows):
                if i != rank and rows[i][col]:
                    factor = rows[i][col]
                    rows[i] = [a - factor * b for a, b in zip(rows[i], rows[rank])]
            pivots.append(col)
            rank += 1
            if rank == self.nrows:
                break
        return Matrix(self.field, rows), tuple(pivots)

    def rank(self):
        return len(self.rref()[1])

    def kernel_basis(self):
        """Basis vectors of the right kernel, one per free column."""
        reduced, pivots = self.rref()
        pivot_set = set(pivots)
        free = [j for j in range(self.ncols) if j not in pivot_set]
        zero, one = self.field.zero, self.field.one
        basis = []
        for f in free:
            vec = [zero] * self.ncols
            vec[f] = one
            for i, p in enumerate(pivots):
                vec[p] = -reduced.rows[i][f]
            basis.append(tuple(vec))
        return basis

    def inverse(self):
        if self.nrows != self.ncols:
            raise ShapeMismatch("inverse of a non-square matrix")
        aug = self.hstack(Matrix.identity(self.field, self.nrows))
        reduced, pivots = aug.rref()
        if len(pivots) != self.nrows or any(p >= self.nrows for p in pivots):
            raise SingularMatrix(f"rank {len(pivots)} < {self.nrows}")
        return Matrix(self.field, [r[self.nrows:] for r in reduced.rows])

    def is_invertible(self):
        return self.nrows == self.ncols and self.rank() == self.nrows

    def __repr__(self):
        body = "; ".join("[" + ", ".join(repr(a) for a in r) + "]" for r in self.rows)
        return f"Matrix({self.nrows}x{self.ncols}: {body})"


class LinearSolution:
    """Particular solution plus kernel basis, or inconsistency marker."""

    __slots__ = ("particular", "kernel", "consistent")

    def __init__(self, particular, kernel, consistent):
        self.particular = particular
        self.kernel = kernel
        self.consistent = consistent


def solve_linear(A, b):
    """Exact solution description of A x = b for a column vector b (tuple)."""
    if len(b) != A.nrows:
        raise ShapeMismatch(f"b has length {len(b)}, A has {A.nrows} rows")
    aug = A.hstack(Matrix.from_cols(A.field, [list(b)]))
    reduced, pivots = aug.rref()
    if any(p == A.ncols for p in pivots):
        return LinearSolution(None, [], False)
    zero = A.field.zero
    particular = [zero] * A.ncols
    for i, p in enumerate(pivots):
        particular[p] = reduced.rows[i][A.ncols]
    return LinearSolution(tuple(particular), A.kernel_basis(), True)


def kron(A, B):
    """Kronecker product, blocks A[i][j] * B."""
    field = A.field
    out = []
    for i in range(A.nrows):
        for r in range(B.nrows):
            row = []
            for j in range(A.ncols):
                a = A.rows[i][j]
                row.extend(a * x for x in B.rows[r])
            out.append(row)
    return Matrix(field, out)


def expand_vector(vec, ext):
    """Flatten a vector over an extension into base-field coordinates,
    blockwise (d coordinates per entry, constant term first)."""
    out = []
    for a in vec:
        out.extend(ext.coords(a))
    return tuple(out)


def contract_vector(coords, ext, length):
    """Inverse of :func:`expand_vector`."""
    d = ext.degree
    if len(coords) != length * d:
        raise ShapeMismatch(f"{len(coords)} coordinates for {length} entries of degree {d}")
    return tuple(ext.from_coords(coords[i * d:(i + 1) * d]) for i in range(length))


def restrict_scalars_matrix(M, ext):
    """The base-field matrix of the map given by M over the extension, acting
    on blockwise-expanded coordinate vectors."""
    if not isinstance(ext, ExtensionField):
        raise ShapeMismatch("restriction of scalars needs an extension field")
    if M.field != ext:
        raise ShapeMismatch("matrix is not over the given extension")
    d = ext.degree
    base = ext.base
    zero_block = [[base.zero] * d for _ in range(d)]
    blocks = [[ext.mult_matrix_rows(M.rows[i][j]) if M.rows[i][j] else zero_block
               for j in range(M.ncols)] for i in range(M.nrows)]
    rows = []
    for i in range(M.nrows):
        for r in range(d):
            row = []
            for j in range(M.ncols):
                row.extend(blocks[i][j][r])
            rows.append(row)
    return Matrix(base, rows)


def intersect_spans(field, vectors_a, vectors_b):
    """Basis of span(vectors_a) & span(vectors_b); vectors are tuples."""
    if not vectors_a or not vectors_b:
        return []
    na, nb = len(vectors_a), len(vectors_b)
    cols = [list(v) for v in vectors_a] + [list(v) for v in vectors_b]
    stacked = Matrix.from_cols(field, cols)
    out = []
    for kv in stacked.kernel_basis():
        vec = None
        for coeff, base_vec in zip(kv[:na], vectors_a):
            term = tuple(coeff * x for x in base_vec)
            vec = term if vec is None else tuple(a + b for a, b in zip(vec, term))
        if vec is not None and any(vec):
            out.append(vec)
    if not out:
        return []
    # reduce to an independent, canonical set
    reduced, pivots = Matrix(field, out).rref()
    return [reduced.rows[i] for i in range(len(pivots))]


def span_contains(field, vectors, target):
    """Whether target lies in the span of ``vectors``."""
    if not any(target):
        return True
    if not vectors:
        return False
    A = Matrix.from_cols(field, [list(v) for v in vectors])
    return solve_linear(A, target).consistent
