"""Exact vectors, matrices and bilinear operations over the Scalar field.

Matrices use the column convention: column ``j`` holds the image of basis
vector ``j``. Vectors are plain tuples of :class:`Scalar`.
"""

from __future__ import annotations

from typing import Iterable, List, Mapping, Sequence, Tuple

from .scalar import ONE, ZERO, Scalar

Vector = Tuple[Scalar, ...]


class SingularMatrix(ArithmeticError):
    """Determinant is the zero rational function."""


class DimensionMismatch(ValueError):
    pass


def _s(x) -> Scalar:
    return x if isinstance(x, Scalar) else Scalar.of(x)


# -- vectors -----------------------------------------------------------------


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def basis_vector(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def vadd(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c: Scalar, u: Vector) -> Vector:
    if not c:
        return zero_vector(len(u))
    return tuple(c * a if a else ZERO for a in u)


def vneg(u: Vector) -> Vector:
    return tuple(-a for a in u)


def is_zero_vector(u: Vector) -> bool:
    return not any(u)


def vsum(vectors: Iterable[Vector], n: int) -> Vector:
    acc = [ZERO] * n
    for v in vectors:
        for k, a in enumerate(v):
            if a:
                acc[k] = acc[k] + a
    return tuple(acc)


# -- matrices ----------------------------------------------------------------


class MatrixS:
    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence]):
        rows = [tuple(_s(x) for x in r) for r in entries]
        if not rows or not rows[0]:
            raise DimensionMismatch("matrix must be nonempty")
        if any(len(r) != len(rows[0]) for r in rows):
            raise DimensionMismatch("ragged matrix")
        self.entries: Tuple[Vector, ...] = tuple(rows)
        self.rows = len(rows)
        self.cols = len(rows[0])

    @classmethod
    def identity(cls, n: int) -> "MatrixS":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "MatrixS":
        return cls([[ZERO] * (rows if cols is None else cols) for _ in range(rows)])

    @classmethod
    def diag(cls, values: Sequence) -> "MatrixS":
        n = len(values)
        return cls([[_s(values[i]) if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> "MatrixS":
        return cls([[col[i] for col in columns] for i in range(len(columns[0]))])

    @property
    def shape(self):
        return (self.rows, self.cols)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij) -> Scalar:
        i, j = ij
        return self.entries[i][j]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> List[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def apply(self, v: Sequence[Scalar]) -> Vector:
        if len(v) != self.cols:
            raise DimensionMismatch(f"cannot apply {self.rows}x{self.cols} matrix to vector of length {len(v)}")
        out = []
        nz = [(j, a) for j, a in enumerate(v) if a]
        for r in self.entries:
            acc = ZERO
            for j, a in nz:
                m = r[j]
                if m:
                    acc = acc + m * a
            out.append(acc)
        return tuple(out)

    def __matmul__(self, other: "MatrixS") -> "MatrixS":
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.shape} @ {other.shape}")
        cols = [self.apply(other.column(j)) for j in range(other.cols)]
        return MatrixS.from_columns(cols)

    def __add__(self, other: "MatrixS") -> "MatrixS":
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} + {other.shape}")
        return MatrixS([vadd(a, b) for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "MatrixS") -> "MatrixS":
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} - {other.shape}")
        return MatrixS([vsub(a, b) for a, b in zip(self.entries, other.entries)])

    def __neg__(self) -> "MatrixS":
        return MatrixS([vneg(r) for r in self.entries])

    def scale(self, c) -> "MatrixS":
        c = _s(c)
        return MatrixS([vscale(c, r) for r in self.entries])

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.entries)

    def is_identity(self) -> bool:
        return self.is_square() and self == MatrixS.identity(self.rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatrixS):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def transpose(self) -> "MatrixS":
        return MatrixS.from_columns(list(self.entries))

    def block_diag(self, other: "MatrixS") -> "MatrixS":
        rows = [list(r) + [ZERO] * other.cols for r in self.entries]
        rows += [[ZERO] * self.cols + list(r) for r in other.entries]
        return MatrixS(rows)

    def inverse(self) -> "MatrixS":
        return mat_inverse(self)

    def det(self) -> Scalar:
        return determinant(self)

    def map_entries(self, f) -> "MatrixS":
        return MatrixS([[f(x) for x in r] for r in self.entries])

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(x) for x in r) for r in self.entries)
        return f"MatrixS([{body}])"


def _eliminate(m: MatrixS, rhs: MatrixS | None):
    """Gauss-Jordan with first-nonzero pivoting. Returns (det, rhs') or raises."""
    n = m.rows
    a = [list(r) for r in m.entries]
    b = [list(r) for r in rhs.entries] if rhs is not None else None
    det = ONE
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            if b is not None:
                b[col], b[piv] = b[piv], b[col]
            det = -det
        p = a[col][col]
        det = det * p
        inv = p.inverse()
        a[col] = [x * inv if x else ZERO for x in a[col]]
        if b is not None:
            b[col] = [x * inv if x else ZERO for x in b[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y if y else x for x, y in zip(a[r], a[col])]
                if b is not None:
                    b[r] = [x - f * y if y else x for x, y in zip(b[r], b[col])]
    return det, b


def mat_inverse(m: MatrixS) -> MatrixS:
    """Exact inverse over Q(p1..pm); raises SingularMatrix."""
    if not m.is_square():
        raise DimensionMismatch(f"cannot invert a {m.rows}x{m.cols} matrix")
    _, b = _eliminate(m, MatrixS.identity(m.rows))
    return MatrixS(b)


def determinant(m: MatrixS) -> Scalar:
    if not m.is_square():
        raise DimensionMismatch("determinant of a non-square matrix")
    try:
        det, _ = _eliminate(m, None)
    except SingularMatrix:
        return ZERO
    return det


def rank(m: MatrixS) -> int:
    a = [list(r) for r in m.entries]
    rows, cols = m.rows, m.cols
    r = 0
    for col in range(cols):
        piv = next((i for i in range(r, rows) if a[i][col]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = a[r][col].inverse()
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == rows:
            break
    return r


def solve_columns(m: MatrixS, targets: Sequence[Vector]) -> List[Vector]:
    """Coordinates of each target in the column basis of an injective m."""
    # normal equations would change the field; use elimination on [m | targets]
    rows, cols = m.rows, m.cols
    a = [list(m.entries[i]) + [t[i] for t in targets] for i in range(rows)]
    r = 0
    for col in range(cols):
        piv = next((i for i in range(r, rows) if a[i][col]), None)
        if piv is None:
            raise SingularMatrix("matrix columns are linearly dependent")
        a[r], a[piv] = a[piv], a[r]
        inv = a[r][col].inverse()
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    for i in range(cols, rows):
        if any(a[i][cols:]):
            raise ValueError("target is not in the column span")
    return [tuple(a[i][cols + t] for i in range(cols)) for t in range(len(targets))]


def maps_commute(f: MatrixS, g: MatrixS) -> bool:
    if not (f.is_square() and g.is_square()) or f.shape != g.shape:
        raise DimensionMismatch(f"maps_commute needs equal square shapes, got {f.shape} and {g.shape}")
    return (f @ g - g @ f).is_zero()


# -- bilinear operations -----------------------------------------------------


class StructureTensor:
    """Bilinear product on a ``dim``-space: e_i * e_j = sum_k c[i][j][k] e_k."""

    __slots__ = ("dim", "c", "_nz")

    def __init__(self, dim: int, c: Sequence[Sequence[Sequence]] | None = None):
        if dim <= 0:
            raise DimensionMismatch("dimension must be positive")
        self.dim = dim
        if c is None:
            self.c = tuple(tuple(zero_vector(dim) for _ in range(dim)) for _ in range(dim))
        else:
            if len(c) != dim or any(len(row) != dim for row in c):
                raise DimensionMismatch("structure tensor index bounds")
            rows = []
            for row in c:
                r = []
                for v in row:
                    if len(v) != dim:
                        raise DimensionMismatch("structure tensor index bounds")
                    r.append(tuple(_s(x) for x in v))
                rows.append(tuple(r))
            self.c = tuple(rows)
        self._nz = None

    @classmethod
    def zero(cls, dim: int) -> "StructureTensor":
        return cls(dim)

    @classmethod
    def from_table(cls, dim: int, table: Mapping[Tuple[int, int], Sequence]) -> "StructureTensor":
        """Sparse construction; unlisted products are zero."""
        c = [[zero_vector(dim) for _ in range(dim)] for _ in range(dim)]
        for (i, j), v in table.items():
            c[i][j] = tuple(_s(x) for x in v)
        return cls(dim, c)

    @classmethod
    def from_function(cls, dim: int, f) -> "StructureTensor":
        """Tabulate f(i, j) -> Vector on basis pairs."""
        return cls(dim, [[f(i, j) for j in range(dim)] for i in range(dim)])

    def product(self, i: int, j: int) -> Vector:
        return self.c[i][j]

    def _nonzero(self):
        if self._nz is None:
            self._nz = [[bool(any(v)) for v in row] for row in self.c]
        return self._nz

    def __call__(self, u: Sequence[Scalar], v: Sequence[Scalar]) -> Vector:
        return bilinear_eval(self, u, v)

    def is_zero(self) -> bool:
        return not any(any(row) for row in self._nonzero())

    def __add__(self, other: "StructureTensor") -> "StructureTensor":
        _same_dim(self, other)
        return StructureTensor(self.dim, [[vadd(a, b) for a, b in zip(r1, r2)] for r1, r2 in zip(self.c, other.c)])

    def __sub__(self, other: "StructureTensor") -> "StructureTensor":
        _same_dim(self, other)
        return StructureTensor(self.dim, [[vsub(a, b) for a, b in zip(r1, r2)] for r1, r2 in zip(self.c, other.c)])

    def __neg__(self) -> "StructureTensor":
        return StructureTensor(self.dim, [[vneg(a) for a in r] for r in self.c])

    def scale(self, s) -> "StructureTensor":
        s = _s(s)
        return StructureTensor(self.dim, [[vscale(s, a) for a in r] for r in self.c])

    def __eq__(self, other) -> bool:
        if not isinstance(other, StructureTensor):
            return NotImplemented
        return self.dim == other.dim and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def opposite(self) -> "StructureTensor":
        """(x, y) -> y * x."""
        return StructureTensor(self.dim, [[self.c[j][i] for j in range(self.dim)] for i in range(self.dim)])

    def left_matrix(self, u: Sequence[Scalar]) -> MatrixS:
        """Matrix of y -> u * y."""
        n = self.dim
        return MatrixS.from_columns([bilinear_eval(self, u, basis_vector(n, j)) for j in range(n)])

    def right_matrix(self, u: Sequence[Scalar]) -> MatrixS:
        """Matrix of y -> y * u."""
        n = self.dim
        return MatrixS.from_columns([bilinear_eval(self, basis_vector(n, j), u) for j in range(n)])

    def __repr__(self) -> str:
        nz = {(i, j): [str(x) for x in v] for i, row in enumerate(self.c) for j, v in enumerate(row) if any(v)}
        return f"StructureTensor(dim={self.dim}, {nz})"


def _same_dim(a: StructureTensor, b: StructureTensor):
    if a.dim != b.dim:
        raise DimensionMismatch(f"tensor dimensions {a.dim} and {b.dim} differ")


def bilinear_eval(t: StructureTensor, u: Sequence[Scalar], v: Sequence[Scalar]) -> Vector:
    n = t.dim
    if len(u) != n or len(v) != n:
        raise DimensionMismatch(f"vectors of length {len(u)}, {len(v)} for a {n}-dim tensor")
    nz = t._nonzero()
    acc = [ZERO] * n
    vj = [(j, b) for j, b in enumerate(v) if b]
    for i, a in enumerate(u):
        if not a:
            continue
        row = t.c[i]
        nzr = nz[i]
        for j, b in vj:
            if not nzr[j]:
                continue
            coef = a * b
            for k, x in enumerate(row[j]):
                if x:
                    acc[k] = acc[k] + coef * x
    return tuple(acc)


def transform(t: StructureTensor, left: MatrixS | None = None, right: MatrixS | None = None,
              out: MatrixS | None = None) -> StructureTensor:
    """Tensor of (x, y) -> out(left(x) * right(y)); None means identity."""
    n = t.dim
    lcols = left.columns() if left is not None else [basis_vector(n, i) for i in range(n)]
    rcols = right.columns() if right is not None else [basis_vector(n, i) for i in range(n)]

    def f(i, j):
        v = bilinear_eval(t, lcols[i], rcols[j])
        return out.apply(v) if out is not None else v

    return StructureTensor.from_function(n, f)


def is_morphism(t: StructureTensor, f: MatrixS) -> bool:
    """f(x_i * x_j) == f(x_i) * f(x_j) on all basis pairs."""
    if f.shape != (t.dim, t.dim):
        raise DimensionMismatch(f"map of shape {f.shape} for a {t.dim}-dim tensor")
    cols = f.columns()
    for i in range(t.dim):
        for j in range(t.dim):
            if f.apply(t.c[i][j]) != bilinear_eval(t, cols[i], cols[j]):
                return False
    return True
