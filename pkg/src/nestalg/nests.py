"""Finite chains of subspaces ordered by inclusion, with {0} and the whole space."""

from __future__ import annotations

from dataclasses import dataclass

from .fields import Field
from .matrices import Vector, coerce_vector, is_zero_vector
from .subspaces import Subspace, enumerate_subspaces, full, span_of, zero_subspace


class IncomparableError(ValueError):
    """Two candidate members are not nested either way."""

    def __init__(self, a: Subspace, b: Subspace):
        self.a = a
        self.b = b
        super().__init__(
            f"members are incomparable: span{a.basis.to_nested()} vs span{b.basis.to_nested()}"
        )


@dataclass(frozen=True)
class Nest:
    """A maximal-information chain: {0} = chain[0] < ... < chain[-1] = F^n.

    Every finite chain is complete and well ordered, so those flags are
    constants here rather than computed properties.
    """

    field: Field
    ambient_dim: int
    chain: tuple[Subspace, ...]

    is_complete = True
    is_well_ordered = True

    @property
    def atoms(self) -> tuple[int, ...]:
        """Dimension jumps between consecutive members."""
        return tuple(
            self.chain[i + 1].dim - self.chain[i].dim for i in range(len(self.chain) - 1)
        )

    def __repr__(self) -> str:
        dims = [s.dim for s in self.chain]
        return f"Nest({self.field!r}^{self.ambient_dim}, dims {dims})"

    def __contains__(self, s: Subspace) -> bool:
        return s in self.chain

    def index_of(self, s: Subspace) -> int:
        return self.chain.index(s)

    def principal(self, x) -> Subspace:
        """Smallest member containing x; x must be nonzero."""
        x = self._check_vector(x)
        for member in self.chain:
            if member.contains(x):
                return member
        raise AssertionError("unreachable: the top member contains every vector")

    def principal_pred(self, x) -> Subspace:
        """Largest member not containing x, the predecessor of principal(x)."""
        x = self._check_vector(x)
        idx = self.chain.index(self.principal(x))
        return self.chain[idx - 1]

    def join_irreducibles(self) -> list[tuple[Subspace, Vector]]:
        """Every nonzero member with a witness x whose principal member it is.

        The witness is the first basis vector of the member outside its
        predecessor.
        """
        out = []
        for i in range(1, len(self.chain)):
            member, pred = self.chain[i], self.chain[i - 1]
            witness = next(row for row in member.basis.entries if not pred.contains(row))
            out.append((member, witness))
        return out

    def dual(self) -> Nest:
        """The chain of annihilators in the coordinate dual, reversed."""
        members = [s.annihilator() for s in reversed(self.chain)]
        return Nest(self.field, self.ambient_dim, tuple(members))

    def _check_vector(self, x) -> Vector:
        x = coerce_vector(self.field, x)
        if len(x) != self.ambient_dim:
            raise ValueError("vector length mismatch")
        if is_zero_vector(x):
            raise ValueError("the zero vector has no principal member")
        return x


def new_nest(field: Field, ambient_dim: int, members) -> Nest:
    """Build a nest from arbitrary members: dedupe, sort, add {0} and F^n.

    Raises IncomparableError when two members fail to nest.
    """
    if ambient_dim < 1:
        raise ValueError("ambient dimension must be at least 1")
    seen: list[Subspace] = []
    for s in members:
        if s.field != field or s.ambient_dim != ambient_dim:
            raise ValueError("member has wrong field or ambient dimension")
        if s not in seen:
            seen.append(s)
    bottom = zero_subspace(field, ambient_dim)
    top = full(field, ambient_dim)
    for s in (bottom, top):
        if s not in seen:
            seen.append(s)
    seen.sort(key=lambda s: s.dim)
    for a, b in zip(seen, seen[1:]):
        if not a.leq(b):
            raise IncomparableError(a, b)
    return Nest(field, ambient_dim, tuple(seen))


def trivial_nest(field: Field, ambient_dim: int) -> Nest:
    return new_nest(field, ambient_dim, [])


def coordinate_nest(field: Field, parts: tuple[int, ...]) -> Nest:
    """The coordinate chain whose dimension jumps are the given composition."""
    if not parts or any(p < 1 for p in parts):
        raise ValueError("parts must be positive")
    n = sum(parts)
    members = []
    cut = 0
    ident = full(field, n).basis.entries
    for p in parts[:-1]:
        cut += p
        members.append(span_of(ident[:cut], field, n))
    return new_nest(field, n, members)


def flag_nest(field: Field, n: int) -> Nest:
    """The full coordinate flag: every jump has dimension one."""
    return coordinate_nest(field, (1,) * n)


def iter_compositions(n: int):
    """All ordered tuples of positive ints summing to n (2^(n-1) of them)."""
    if n < 1:
        raise ValueError("n must be positive")

    def rec(remaining: int):
        if remaining == 0:
            yield ()
            return
        for first in range(1, remaining + 1):
            for rest in rec(remaining - first):
                yield (first,) + rest

    yield from rec(n)


def ordinal_sum(first: Nest, second: Nest) -> Nest:
    """Stack two nests: members of the first, then first's whole space + members
    of the second, inside F^(n1+n2)."""
    if first.field != second.field:
        raise ValueError("field mismatch")
    f = first.field
    n1, n2 = first.ambient_dim, second.ambient_dim
    n = n1 + n2
    zeros1 = tuple(f.zero() for _ in range(n1))
    zeros2 = tuple(f.zero() for _ in range(n2))
    members = []
    for s in first.chain:
        members.append(span_of([row + zeros2 for row in s.basis.entries], f, n))
    top1 = [row + zeros2 for row in full(f, n1).basis.entries]
    for s in second.chain[1:]:
        members.append(span_of(top1 + [zeros1 + row for row in s.basis.entries], f, n))
    return new_nest(f, n, members)


def iter_nests(field: Field, ambient_dim: int):
    """All nests of GF(p)^n, one per chain of proper nonzero subspaces.

    Inherits the enumeration bound of enumerate_subspaces.
    """
    proper = [
        s for s in enumerate_subspaces(field, ambient_dim) if 0 < s.dim < ambient_dim
    ]

    def extend(prefix: list[Subspace], start: int):
        yield new_nest(field, ambient_dim, prefix)
        for i in range(start, len(proper)):
            s = proper[i]
            if not prefix or (prefix[-1].dim < s.dim and prefix[-1].leq(s)):
                yield from extend(prefix + [s], i + 1)

    yield from extend([], 0)
