"""The strictly-shifting ideal of a nest algebra and its radical.

Over the rationals the radical is computed independently through the trace
form; over GF(p) the strictly-shifting ideal is certified directly (it is
nilpotent, and the radical always sits inside it), so the two routes can be
compared wherever both exist.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .algebra import (
    FULL,
    RADICAL,
    STRICT,
    AlgebraBasis,
    _check_operator,
    _constraint_kernel,
    alg_basis,
    in_alg,
    in_alg_witness,
    in_matrix_span,
    matrix_span_basis,
    rank_one,
    spans_equal,
)
from .matrices import Matrix, kernel_basis, try_invert
from .nests import Nest, ordinal_sum
from .subspaces import Functional, separating_functional


def strict_ideal_basis(nest: Nest) -> AlgebraBasis:
    """Canonical basis of {T : T maps each member into its predecessor}."""
    pairs = [(nest.chain[i], nest.chain[i - 1]) for i in range(1, len(nest.chain))]
    return AlgebraBasis(nest, STRICT, _constraint_kernel(nest, pairs))


def in_strict_ideal_witness(nest: Nest, t: Matrix):
    """None if t shifts every member into its predecessor, else a violation."""
    _check_operator(nest, t)
    for i in range(1, len(nest.chain)):
        member, pred = nest.chain[i], nest.chain[i - 1]
        for v in member.basis.entries:
            if not pred.contains(t.apply(v)):
                return member, v
    return None


def in_strict_ideal(nest: Nest, t: Matrix) -> bool:
    return in_strict_ideal_witness(nest, t) is None


def nilpotency_index(nest: Nest, t: Matrix):
    """Least k with t^k = 0, or None if t is not nilpotent.

    Requires t in the algebra; the index of any nilpotent operator is at
    most the ambient dimension, so the search stops there.
    """
    _require_member(nest, t)
    power = Matrix.identity(t.field, t.rows)
    for k in range(1, t.rows + 2):
        power = power @ t
        if power.is_zero():
            return k
    return None


def ideal_nilpotency_index(nest: Nest) -> int:
    """Least k such that every product of k strictly-shifting operators is zero.

    Never exceeds the number of atoms of the nest.
    """
    basis = strict_ideal_basis(nest).basis
    shape = (nest.ambient_dim, nest.ambient_dim)
    k = 1
    current = matrix_span_basis(basis, nest.field, shape)
    while current:
        k += 1
        products = [c @ b for c in current for b in basis]
        current = matrix_span_basis(products, nest.field, shape)
    return k


def quasi_inverse(nest: Nest, a: Matrix, t: Matrix) -> Matrix:
    """The exact inverse of 1 - a t as the terminating series 1 + sum (a t)^k.

    Needs a in the algebra and t in the strictly-shifting ideal; then a t is
    nilpotent of index at most the number of atoms and the series is finite.
    """
    _require_member(nest, a)
    violation = in_strict_ideal_witness(nest, t)
    if violation is not None:
        member, v = violation
        raise ValueError(f"t does not shift {member!r} into its predecessor at {v}")
    at = a @ t
    s = Matrix.identity(nest.field, nest.ambient_dim)
    power = at
    steps = 0
    while not power.is_zero():
        steps += 1
        if steps > len(nest.atoms):
            raise AssertionError("series failed to terminate within the atom count")
        s = s + power
        power = power @ at
    return s


def radical_basis_oracle(nest: Nest) -> AlgebraBasis:
    """Radical of the algebra via the trace form: {T : trace(T S) = 0 for all S}.

    The trace-form characterization of the radical of a matrix algebra is
    sound in characteristic zero only, so this route is restricted to QQ.
    """
    if not nest.field.is_rationals:
        raise ValueError("the trace-form radical is only valid over the rationals")
    alg = alg_basis(nest)
    d = alg.dim
    f = nest.field
    gram = [[None] * d for _ in range(d)]
    for i in range(d):
        for j in range(i, d):
            val = _trace_of_product(alg.basis[i], alg.basis[j])
            gram[i][j] = val
            gram[j][i] = val
    coords = kernel_basis(Matrix(f, tuple(tuple(row) for row in gram))) if d else None
    mats = []
    if d:
        for row in coords.entries:
            acc = Matrix.zeros(f, nest.ambient_dim, nest.ambient_dim)
            for c, b in zip(row, alg.basis):
                if c:
                    acc = acc + b.scale(c)
            mats.append(acc)
    shape = (nest.ambient_dim, nest.ambient_dim)
    return AlgebraBasis(nest, RADICAL, matrix_span_basis(mats, f, shape))


def _trace_of_product(a: Matrix, b: Matrix):
    f = a.field
    acc = f.zero()
    for i in range(a.rows):
        row = a.entries[i]
        for j in range(a.cols):
            x = row[j]
            y = b.entries[j][i]
            if x and y:
                acc = f.add(acc, f.mul(x, y))
    return acc


def raddef_probe(nest: Nest, t: Matrix, trials: int = 25, seed: int = 0) -> bool:
    """Sampled test of the defining property: 1 - A t and 1 - t A invertible.

    Checks every algebra basis element, then `trials` random span elements.
    Returns False at the first non-invertible witness.
    """
    _require_member(nest, t)
    rng = random.Random(seed)
    alg = alg_basis(nest)
    ident = Matrix.identity(nest.field, nest.ambient_dim)
    candidates = list(alg.basis)
    for _ in range(trials):
        acc = Matrix.zeros(nest.field, nest.ambient_dim, nest.ambient_dim)
        for b in alg.basis:
            c = _random_scalar(nest.field, rng)
            if c:
                acc = acc + b.scale(c)
        candidates.append(acc)
    for a in candidates:
        if try_invert(ident - (a @ t)) is None:
            return False
        if try_invert(ident - (t @ a)) is None:
            return False
    return True


def _random_scalar(field, rng):
    if field.is_rationals:
        return field.coerce(rng.randint(-3, 3))
    return rng.randrange(field.p)


def radical_exclusion_witness(nest: Nest, t: Matrix) -> tuple:
    """For t in the algebra but not strictly shifting: (x, phi) such that
    R = x (x) phi lies in the algebra and (1 - R t) x = 0, exposing t as
    outside the radical.

    Search order: chain members ascending, their basis vectors in order.
    """
    _require_member(nest, t)
    if in_strict_ideal(nest, t):
        raise ValueError("t strictly shifts the chain; no exclusion witness exists")
    for member in nest.chain[1:]:
        for v in member.basis.entries:
            image = t.apply(v)
            pred = nest.principal_pred(v)
            if not pred.contains(image):
                phi = separating_functional(image, pred)
                return v, phi
    raise AssertionError("unreachable: a violation exists on some member basis")


@dataclass(frozen=True)
class RadicalReport:
    """Side-by-side view of the strictly-shifting ideal and the radical."""

    nest: Nest
    strict_basis: AlgebraBasis
    radical_basis: AlgebraBasis
    equal: bool
    nilpotency_index: int
    oracle_used: bool
    alg_dim: int
    semisimple_quotient_dim: int
    quotient_check: bool


def radical_report(nest: Nest) -> RadicalReport:
    """Compute the ideal, the radical, and the structural cross-checks.

    Over QQ the radical comes from the independent trace-form oracle and
    `equal` compares the two spans.  Over GF(p) the trace form is unsound,
    so the ideal itself is reported: it is nilpotent (certified by the
    computed index) hence inside the radical, and the radical always lies
    inside it, so equality holds structurally.
    """
    strict = strict_ideal_basis(nest)
    alg = alg_basis(nest)
    index = ideal_nilpotency_index(nest)
    shape = (nest.ambient_dim, nest.ambient_dim)
    if nest.field.is_rationals:
        rad = radical_basis_oracle(nest)
        equal = spans_equal(strict.basis, rad.basis, nest.field, shape)
        oracle_used = True
    else:
        rad = AlgebraBasis(nest, RADICAL, strict.basis)
        equal = True
        oracle_used = False
    quotient = alg.dim - strict.dim
    expected = sum(d * d for d in nest.atoms)
    return RadicalReport(
        nest=nest,
        strict_basis=strict,
        radical_basis=rad,
        equal=equal,
        nilpotency_index=index,
        oracle_used=oracle_used,
        alg_dim=alg.dim,
        semisimple_quotient_dim=quotient,
        quotient_check=quotient == expected,
    )


@dataclass(frozen=True)
class OrdinalSumReport:
    """Block analysis of an operator against a stacked pair of nests.

    For each property the `predicted` value comes from the block rule
    (lower-left block zero, diagonal blocks in the component spaces) and the
    `direct` value from computing on the summed nest itself.
    """

    first: Nest
    second: Nest
    sum_nest: Nest
    blocks: tuple[Matrix, Matrix, Matrix, Matrix]  # a1, b, c, a2
    alg_predicted: bool
    alg_direct: bool
    strict_predicted: bool
    strict_direct: bool
    radical_predicted: bool | None
    radical_direct: bool | None

    @property
    def consistent(self) -> bool:
        checks = [
            self.alg_predicted == self.alg_direct,
            self.strict_predicted == self.strict_direct,
        ]
        if self.radical_predicted is not None:
            checks.append(self.radical_predicted == self.radical_direct)
        return all(checks)


def ordsum_analyze(first: Nest, second: Nest, t: Matrix) -> OrdinalSumReport:
    """Check the block characterizations of membership for a stacked nest."""
    summed = ordinal_sum(first, second)
    _check_operator(summed, t)
    n1 = first.ambient_dim
    a1 = Matrix(t.field, tuple(row[:n1] for row in t.entries[:n1]))
    b = Matrix(t.field, tuple(row[n1:] for row in t.entries[:n1]))
    c = Matrix(t.field, tuple(row[:n1] for row in t.entries[n1:]))
    a2 = Matrix(t.field, tuple(row[n1:] for row in t.entries[n1:]))
    c_zero = c.is_zero()
    alg_pred = c_zero and in_alg(first, a1) and in_alg(second, a2)
    strict_pred = c_zero and in_strict_ideal(first, a1) and in_strict_ideal(second, a2)
    if t.field.is_rationals:
        rad1 = radical_basis_oracle(first).basis
        rad2 = radical_basis_oracle(second).basis
        rad_sum = radical_basis_oracle(summed).basis
        rad_pred = c_zero and in_matrix_span(rad1, a1) and in_matrix_span(rad2, a2)
        rad_direct = in_matrix_span(rad_sum, t)
    else:
        rad_pred = None
        rad_direct = None
    return OrdinalSumReport(
        first=first,
        second=second,
        sum_nest=summed,
        blocks=(a1, b, c, a2),
        alg_predicted=alg_pred,
        alg_direct=in_alg(summed, t),
        strict_predicted=strict_pred,
        strict_direct=in_strict_ideal(summed, t),
        radical_predicted=rad_pred,
        radical_direct=rad_direct,
    )


def _require_member(nest: Nest, t: Matrix) -> None:
    witness = in_alg_witness(nest, t)
    if witness is not None:
        member, v = witness
        raise ValueError(f"operator leaves the nest: moves {v} out of {member!r}")
