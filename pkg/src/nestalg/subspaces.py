"""Subspaces of F^n with lattice operations and annihilators in the dual."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .fields import Field, Scalar
from .matrices import Matrix, Vector, coerce_vector, dot, is_zero_vector, kernel_basis, rref, solve


@dataclass(frozen=True)
class Subspace:
    """A subspace of F^ambient_dim, stored by its canonical RREF basis.

    The basis matrix has no zero rows, so structurally equal subspaces
    compare equal and dim == basis.rows.
    """

    field: Field
    ambient_dim: int
    basis: Matrix

    @property
    def dim(self) -> int:
        return self.basis.rows

    def __repr__(self) -> str:
        return f"Subspace(dim {self.dim} of {self.field!r}^{self.ambient_dim})"

    def contains(self, v) -> bool:
        v = coerce_vector(self.field, v)
        if len(v) != self.ambient_dim:
            raise ValueError("vector length mismatch")
        return is_zero_vector(self.reduce(v))

    def reduce(self, v: Vector) -> Vector:
        """Residual of v after eliminating against the RREF basis rows."""
        f = self.field
        v = list(v)
        for row in self.basis.entries:
            pc = next(j for j, x in enumerate(row) if x)
            c = v[pc]
            if c:
                for j in range(pc, self.ambient_dim):
                    if row[j]:
                        v[j] = f.sub(v[j], f.mul(c, row[j]))
        return tuple(v)

    def leq(self, other: Subspace) -> bool:
        self._check_peer(other)
        if self.dim > other.dim:
            return False
        return all(other.contains(row) for row in self.basis.entries)

    def meet(self, other: Subspace) -> Subspace:
        """Intersection, via the kernel of the stacked annihilator constraints."""
        self._check_peer(other)
        constraints = self.annihilator().basis.entries + other.annihilator().basis.entries
        if not constraints:
            return full(self.field, self.ambient_dim)
        sol = kernel_basis(Matrix(self.field, constraints))
        return Subspace(self.field, self.ambient_dim, sol)

    def join(self, other: Subspace) -> Subspace:
        self._check_peer(other)
        return span_of(self.basis.entries + other.basis.entries, self.field, self.ambient_dim)

    def annihilator(self) -> Subspace:
        """{phi in the dual : phi vanishes on this subspace}."""
        if self.dim == 0:
            return full(self.field, self.ambient_dim)
        return Subspace(self.field, self.ambient_dim, kernel_basis(self.basis))

    def _check_peer(self, other: Subspace) -> None:
        if other.field != self.field or other.ambient_dim != self.ambient_dim:
            raise ValueError("subspaces live in different ambient spaces")


def span_of(vectors, field: Field, ambient_dim: int) -> Subspace:
    """Span of the given vectors; the empty list spans {0}."""
    rows = [coerce_vector(field, v) for v in vectors]
    for r in rows:
        if len(r) != ambient_dim:
            raise ValueError("vector length mismatch")
    if not rows:
        return Subspace(field, ambient_dim, Matrix.zeros(field, 0, ambient_dim))
    red = rref(Matrix(field, tuple(rows)))
    basis = Matrix(field, red.matrix.entries[: red.rank], cols=ambient_dim)
    return Subspace(field, ambient_dim, basis)


def zero_subspace(field: Field, ambient_dim: int) -> Subspace:
    return Subspace(field, ambient_dim, Matrix.zeros(field, 0, ambient_dim))


def full(field: Field, ambient_dim: int) -> Subspace:
    return Subspace(field, ambient_dim, Matrix.identity(field, ambient_dim))


def complement_within(inner: Subspace, outer: Subspace) -> Subspace:
    """A complement C of inner within outer (inner + C = outer, direct).

    Deterministic: outer's RREF basis rows are scanned in order and kept
    greedily whenever they grow the span.
    """
    if not inner.leq(outer):
        raise ValueError("inner is not contained in outer")
    current = list(inner.basis.entries)
    chosen = []
    span = inner
    for row in outer.basis.entries:
        if not span.contains(row):
            current.append(row)
            chosen.append(row)
            span = span_of(current, inner.field, inner.ambient_dim)
    return span_of(chosen, inner.field, inner.ambient_dim)


@dataclass(frozen=True)
class Functional:
    """A linear functional on F^ambient_dim, stored by its coefficient row."""

    field: Field
    ambient_dim: int
    coeffs: Vector

    def __call__(self, v) -> Scalar:
        return dot(self.field, self.coeffs, coerce_vector(self.field, v))

    def is_zero(self) -> bool:
        return is_zero_vector(self.coeffs)

    def kernel(self) -> Subspace:
        if self.is_zero():
            return full(self.field, self.ambient_dim)
        sol = kernel_basis(Matrix(self.field, (self.coeffs,)))
        return Subspace(self.field, self.ambient_dim, sol)


def separating_functional(x, w: Subspace) -> Functional:
    """A functional with phi(x) = 1 vanishing on w; requires x outside w.

    Deterministic: the defining system is solved with free dual
    coordinates set to zero.
    """
    f = w.field
    x = coerce_vector(f, x)
    if w.contains(x):
        raise ValueError("x lies in w, no separating functional exists")
    system = Matrix(f, w.basis.entries + (x,))
    rhs = tuple(f.zero() for _ in range(w.dim)) + (f.one(),)
    phi = solve(system, rhs)
    assert phi is not None  # consistent because x is independent of w
    return Functional(f, w.ambient_dim, phi)


@lru_cache(maxsize=None)
def _enumerate_subspaces(p: int, ambient_dim: int) -> tuple[Subspace, ...]:
    field = Field(p)
    elements = field.elements()
    out = []
    for k in range(ambient_dim + 1):
        for pivots in itertools.combinations(range(ambient_dim), k):
            free_slots = [
                (r, c)
                for r in range(k)
                for c in range(pivots[r] + 1, ambient_dim)
                if c not in pivots
            ]
            for values in itertools.product(elements, repeat=len(free_slots)):
                rows = [[field.zero()] * ambient_dim for _ in range(k)]
                for r in range(k):
                    rows[r][pivots[r]] = field.one()
                for (r, c), val in zip(free_slots, values):
                    rows[r][c] = val
                basis = Matrix(field, tuple(tuple(r) for r in rows), cols=ambient_dim)
                out.append(Subspace(field, ambient_dim, basis))
    out.sort(key=lambda s: (s.dim, s.basis.entries))
    return tuple(out)


def enumerate_subspaces(field: Field, ambient_dim: int) -> tuple[Subspace, ...]:
    """All subspaces of GF(p)^n in canonical order (dim, then basis entries).

    Enumerates reduced echelon bases directly, so each subspace appears
    exactly once.  Bounded to p in {2, 3} and n <= 4.
    """
    if field.is_rationals:
        raise ValueError("subspace enumeration needs a finite field")
    if field.p not in (2, 3) or ambient_dim > 4:
        raise ValueError("enumeration bound exceeded: need p in {2,3} and dim <= 4")
    return _enumerate_subspaces(field.p, ambient_dim)
