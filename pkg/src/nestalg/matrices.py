"""Dense exact matrices with reduced row echelon form, kernels, and solving."""

from __future__ import annotations

from dataclasses import dataclass

from .fields import Field, Scalar

Vector = tuple  # row of Scalars; kept as plain tuples throughout


class Matrix:
    """Immutable row-major matrix over QQ or GF(p)."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field: Field, entries, cols: int | None = None):
        rows = tuple(tuple(field.coerce(x) for x in row) for row in entries)
        if rows:
            width = len(rows[0])
            if cols is not None and cols != width:
                raise ValueError("explicit column count contradicts the rows")
            cols = width
        elif cols is None:
            cols = 0
        for row in rows:
            if len(row) != cols:
                raise ValueError("ragged rows")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", rows)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> Matrix:
        z = field.zero()
        return cls(field, tuple(tuple(z for _ in range(cols)) for _ in range(rows)), cols=cols)

    @classmethod
    def identity(cls, field: Field, n: int) -> Matrix:
        z, o = field.zero(), field.one()
        return cls(field, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Matrix)
            and other.field == self.field
            and other.cols == self.cols
            and other.entries == self.entries
        )

    def __hash__(self) -> int:
        return hash((self.field, self.cols, self.entries))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in row) for row in self.entries)
        return f"Matrix({self.field!r}, {self.rows}x{self.cols}: {body})"

    def __add__(self, other: Matrix) -> Matrix:
        self._check_peer(other, same_shape=True)
        add = self.field.add
        return Matrix(
            self.field,
            tuple(
                tuple(add(a, b) for a, b in zip(ra, rb))
                for ra, rb in zip(self.entries, other.entries)
            ),
        )

    def __sub__(self, other: Matrix) -> Matrix:
        return self + (-other)

    def __neg__(self) -> Matrix:
        neg = self.field.neg
        return Matrix(self.field, tuple(tuple(neg(a) for a in row) for row in self.entries))

    def __matmul__(self, other: Matrix) -> Matrix:
        self._check_peer(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        f = self.field
        cols_t = tuple(zip(*other.entries)) if other.entries else ()
        out = []
        for row in self.entries:
            out_row = []
            for col in cols_t:
                acc = f.zero()
                for a, b in zip(row, col):
                    if a and b:
                        acc = f.add(acc, f.mul(a, b))
                out_row.append(acc)
            out.append(tuple(out_row))
        return Matrix(f, tuple(out), cols=other.cols)

    def scale(self, c) -> Matrix:
        c = self.field.coerce(c)
        mul = self.field.mul
        return Matrix(self.field, tuple(tuple(mul(c, a) for a in row) for row in self.entries))

    def apply(self, v: Vector) -> Vector:
        """Matrix-vector product; v has length self.cols."""
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        f = self.field
        out = []
        for row in self.entries:
            acc = f.zero()
            for a, b in zip(row, v):
                if a and b:
                    acc = f.add(acc, f.mul(a, b))
            out.append(acc)
        return tuple(out)

    def transpose(self) -> Matrix:
        if not self.entries:
            return Matrix.zeros(self.field, self.cols, 0)
        return Matrix(self.field, tuple(zip(*self.entries)), cols=self.rows)

    def trace(self) -> Scalar:
        if self.rows != self.cols:
            raise ValueError("trace of non-square matrix")
        acc = self.field.zero()
        for i in range(self.rows):
            acc = self.field.add(acc, self.entries[i][i])
        return acc

    def is_zero(self) -> bool:
        return all(not x for row in self.entries for x in row)

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.entries)

    def vectorize(self) -> Vector:
        """Row-major flattening, used to treat operators as plain vectors."""
        return tuple(x for row in self.entries for x in row)

    def to_nested(self) -> list:
        fmt = self.field.format_scalar
        return [[fmt(x) for x in row] for row in self.entries]

    def _check_peer(self, other: Matrix, same_shape: bool = False) -> None:
        if not isinstance(other, Matrix):
            raise TypeError("expected a Matrix")
        if other.field != self.field:
            raise ValueError(f"field mismatch: {self.field!r} vs {other.field!r}")
        if same_shape and (other.rows, other.cols) != (self.rows, self.cols):
            raise ValueError("shape mismatch")


@dataclass(frozen=True)
class RrefResult:
    matrix: Matrix
    pivots: tuple[int, ...]
    rank: int


def rref(m: Matrix) -> RrefResult:
    """Reduced row echelon form (unique: leading ones, pivot columns cleared)."""
    f = m.field
    rows = [list(row) for row in m.entries]
    nrows, ncols = m.rows, m.cols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = next((i for i in range(r, nrows) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = f.inv(rows[r][c])
        if inv != f.one():
            rows[r] = [f.mul(inv, x) for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                factor = rows[i][c]
                rows[i] = [f.sub(x, f.mul(factor, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    reduced = Matrix(f, tuple(tuple(row) for row in rows), cols=ncols)
    return RrefResult(reduced, tuple(pivots), len(pivots))


def kernel_basis(m: Matrix) -> Matrix:
    """Basis of {v : m v = 0} as rows, in canonical reduced echelon form."""
    f = m.field
    red = rref(m)
    pivots = red.pivots
    free = [c for c in range(m.cols) if c not in pivots]
    vectors = []
    for fc in free:
        v = [f.zero()] * m.cols
        v[fc] = f.one()
        for i, pc in enumerate(pivots):
            v[pc] = f.neg(red.matrix.entries[i][fc])
        vectors.append(tuple(v))
    if not vectors:
        return Matrix.zeros(f, 0, m.cols)
    canon = rref(Matrix(f, tuple(vectors)))
    return Matrix(f, canon.matrix.entries[: canon.rank], cols=m.cols)


def solve(m: Matrix, b: Vector):
    """One solution of m x = b with free variables set to zero, or None."""
    f = m.field
    if len(b) != m.rows:
        raise ValueError("rhs length mismatch")
    if m.rows == 0:
        return tuple(f.zero() for _ in range(m.cols))
    b = tuple(f.coerce(x) for x in b)
    aug = Matrix(f, tuple(row + (bv,) for row, bv in zip(m.entries, b)))
    red = rref(aug)
    if m.cols in red.pivots:
        return None
    x = [f.zero()] * m.cols
    for i, pc in enumerate(red.pivots):
        x[pc] = red.matrix.entries[i][m.cols]
    return tuple(x)


def try_invert(m: Matrix):
    """Two-sided inverse of a square matrix, or None if singular."""
    if m.rows != m.cols:
        raise ValueError("inverse of non-square matrix")
    n = m.rows
    if n == 0:
        return Matrix.zeros(m.field, 0, 0)
    ident = Matrix.identity(m.field, n)
    aug = Matrix(m.field, tuple(row + irow for row, irow in zip(m.entries, ident.entries)))
    red = rref(aug)
    if red.pivots[:n] != tuple(range(n)) or red.rank != n:
        return None
    return Matrix(m.field, tuple(row[n:] for row in red.matrix.entries))


def dot(field: Field, u: Vector, v: Vector) -> Scalar:
    if len(u) != len(v):
        raise ValueError("length mismatch")
    acc = field.zero()
    for a, b in zip(u, v):
        if a and b:
            acc = field.add(acc, field.mul(a, b))
    return acc


def coerce_vector(field: Field, values) -> Vector:
    return tuple(field.coerce(x) for x in values)


def is_zero_vector(v: Vector) -> bool:
    return all(not x for x in v)


def outer(field: Field, x: Vector, phi: Vector) -> Matrix:
    """The operator v -> phi(v) x, as the matrix with entries x[i]*phi[j]."""
    mul = field.mul
    return Matrix(field, tuple(tuple(mul(xi, pj) for pj in phi) for xi in x))
