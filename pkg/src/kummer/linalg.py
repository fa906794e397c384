"""Exact dense linear algebra over a field.

Everything works on small matrices (the library never needs more than a few
hundred rows), so plain Gaussian elimination with field inversions is used
throughout.  Pivots are chosen as the first nonzero entry scanning
top-to-bottom within each column, columns left-to-right, which makes every
output deterministic.
"""

from __future__ import annotations

from .errors import StructureError
from .field import Field, FieldElement


class Matrix:
    """Row-major dense matrix of FieldElement entries."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field: Field, entries: list[list[FieldElement]]):
        self.field = field
        self.rows = len(entries)
        self.cols = len(entries[0]) if entries else 0
        for row in entries:
            if len(row) != self.cols:
                raise StructureError("ragged matrix rows")
        self.entries = entries

    @classmethod
    def from_ints(cls, field: Field, rows: list[list[int]]) -> Matrix:
        return cls(field, [[field(x) for x in row] for row in rows])

    @classmethod
    def identity(cls, field: Field, n: int) -> Matrix:
        one, zero = field.one(), field.zero()
        return cls(field, [[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, field: Field, rows: int, cols: int) -> Matrix:
        z = field.zero()
        return cls(field, [[z for _ in range(cols)] for _ in range(rows)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> list[FieldElement]:
        return list(self.entries[i])

    def column(self, j: int) -> list[FieldElement]:
        return [self.entries[i][j] for i in range(self.rows)]

    def copy(self) -> Matrix:
        return Matrix(self.field, [list(r) for r in self.entries])

    def transpose(self) -> Matrix:
        return Matrix(self.field, [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def __mul__(self, other: Matrix) -> Matrix:
        if self.cols != other.rows:
            raise StructureError("dimension mismatch in matrix product")
        zero = self.field.zero()
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = zero
                for k in range(self.cols):
                    a = self.entries[i][k]
                    if not a.is_zero():
                        acc = acc + a * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return Matrix(self.field, out)

    def mul_vector(self, v: list[FieldElement]) -> list[FieldElement]:
        if self.cols != len(v):
            raise StructureError("dimension mismatch in matrix-vector product")
        zero = self.field.zero()
        out = []
        for i in range(self.rows):
            acc = zero
            for k in range(self.cols):
                a = self.entries[i][k]
                if not a.is_zero() and not v[k].is_zero():
                    acc = acc + a * v[k]
            out.append(acc)
        return out

    def scale(self, c: FieldElement) -> Matrix:
        return Matrix(self.field, [[c * x for x in row] for row in self.entries])

    def __sub__(self, other: Matrix) -> Matrix:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise StructureError("dimension mismatch in matrix difference")
        return Matrix(
            self.field,
            [
                [self.entries[i][j] - other.entries[i][j] for j in range(self.cols)]
                for i in range(self.rows)
            ],
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and all(
                self.entries[i][j] == other.entries[i][j]
                for i in range(self.rows)
                for j in range(self.cols)
            )
        )

    def __repr__(self):
        body = "; ".join(" ".join(repr(x) for x in row) for row in self.entries)
        return f"Matrix[{body}]"

    def to_json(self):
        return [[x.to_json() for x in row] for row in self.entries]


def echelon_form(m: Matrix) -> Matrix:
    """Reduced row-echelon form (pivots normalised to 1, cleared above and below)."""
    return _rref(m)[0]


def _rref(m: Matrix) -> tuple[Matrix, list[int]]:
    a = [list(row) for row in m.entries]
    rows, cols = m.rows, m.cols
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot_row = None
        for i in range(r, rows):
            if not a[i][c].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            continue
        a[r], a[pivot_row] = a[pivot_row], a[r]
        inv = a[r][c].inverse()
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and not a[i][c].is_zero():
                f = a[i][c]
                a[i] = [a[i][j] - f * a[r][j] for j in range(cols)]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return Matrix(m.field, a), pivots


def rank(m: Matrix) -> int:
    return len(_rref(m)[1])


def kernel_basis(m: Matrix) -> list[list[FieldElement]]:
    """Basis of {v : m v = 0}; vectors ordered by free column, first nonzero = 1."""
    red, pivots = _rref(m)
    field = m.field
    pivot_set = set(pivots)
    free = [j for j in range(m.cols) if j not in pivot_set]
    basis = []
    zero, one = field.zero(), field.one()
    for fcol in free:
        v = [zero] * m.cols
        v[fcol] = one
        for r, pcol in enumerate(pivots):
            v[pcol] = -red.entries[r][fcol]
        basis.append(_normalize_vector(v))
    return basis


def _normalize_vector(v: list[FieldElement]) -> list[FieldElement]:
    for x in v:
        if not x.is_zero():
            inv = x.inverse()
            return [inv * y for y in v]
    return v


def matrix_inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise StructureError("only square matrices are invertible")
    n = m.rows
    field = m.field
    aug = Matrix(field, [m.row(i) + Matrix.identity(field, n).row(i) for i in range(n)])
    red, pivots = _rref(aug)
    if pivots[:n] != list(range(n)):
        raise StructureError("matrix is singular")
    return Matrix(field, [red.row(i)[n:] for i in range(n)])


def determinant(m: Matrix) -> FieldElement:
    if m.rows != m.cols:
        raise StructureError("determinant of a non-square matrix")
    a = [list(row) for row in m.entries]
    n = m.rows
    field = m.field
    det = field.one()
    for c in range(n):
        pivot_row = None
        for i in range(c, n):
            if not a[i][c].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            return field.zero()
        if pivot_row != c:
            a[c], a[pivot_row] = a[pivot_row], a[c]
            det = -det
        det = det * a[c][c]
        inv = a[c][c].inverse()
        for i in range(c + 1, n):
            if not a[i][c].is_zero():
                f = a[i][c] * inv
                a[i] = [a[i][j] - f * a[c][j] for j in range(n)]
    return det


def eigenspace(m: Matrix, lam: FieldElement) -> list[list[FieldElement]]:
    if m.rows != m.cols:
        raise StructureError("eigenspace of a non-square matrix")
    shifted = m - Matrix.identity(m.field, m.rows).scale(lam)
    return kernel_basis(shifted)


def _commute(m1: Matrix, m2: Matrix) -> bool:
    return m1 * m2 == m2 * m1


def simultaneous_diagonalizer(
    m1: Matrix,
    m2: Matrix,
    eigs1: tuple[FieldElement, FieldElement],
    eigs2: tuple[FieldElement, FieldElement],
) -> Matrix:
    """Invertible P whose columns are common eigenvectors of m1 and m2.

    Column order is (l1,u1), (l1,u2), (l2,u1), (l2,u2) for eigs1 = (l1,l2) and
    eigs2 = (u1,u2); each column is scaled so its first nonzero coordinate is 1.
    Each eigenspace intersection must be one-dimensional.
    """
    if not (m1.rows == m1.cols == 4 and m2.rows == m2.cols == 4):
        raise StructureError("simultaneous diagonalization expects 4x4 matrices")
    if not _commute(m1, m2):
        raise StructureError("matrices do not commute")
    field = m1.field
    ident = Matrix.identity(field, 4)
    columns = []
    for lam in eigs1:
        s1 = m1 - ident.scale(lam)
        for mu in eigs2:
            s2 = m2 - ident.scale(mu)
            stacked = Matrix(field, [s1.row(i) for i in range(4)] + [s2.row(i) for i in range(4)])
            ker = kernel_basis(stacked)
            if len(ker) != 1:
                raise StructureError(
                    f"eigenspace intersection for ({lam!r}, {mu!r}) has dimension {len(ker)}, expected 1"
                )
            columns.append(ker[0])
    p = Matrix(field, [[columns[j][i] for j in range(4)] for i in range(4)])
    if determinant(p).is_zero():
        raise StructureError("common eigenvectors are linearly dependent")
    return p
