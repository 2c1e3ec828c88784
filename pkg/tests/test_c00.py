"""Symbolic catalog of infinite chains on finitely-supported sequences."""

from fractions import Fraction

import pytest

from nestalg.c00 import (
    ALL,
    CATALOG,
    EMPTY,
    SupportNest,
    SupportSet,
    TailFunctional,
    chain_union,
    dual_support_nest,
    family_meet,
    graded_quasi_inverse,
    initial,
    omega_nest,
    omega_star_nest,
    principal_support,
    support_annihilator,
    tail_from,
    truncation_nest,
    zigzag_nest,
    zigzag_report,
)
from nestalg.fields import GF2, QQ
from nestalg.matrices import Matrix, try_invert
from nestalg.nests import flag_nest

Q = Fraction


def qmat(rows):
    return Matrix(QQ, tuple(tuple(Q(x) for x in row) for row in rows))


def test_support_set_shapes():
    assert initial(0) == SupportSet(EMPTY)
    assert tail_from(0) == SupportSet(ALL)
    assert repr(initial(3)) == "{1..3}"
    assert repr(tail_from(3)) == "{4..}"
    assert initial(3).contains_index(3)
    assert not initial(3).contains_index(4)
    assert tail_from(3).contains_index(4)
    assert not tail_from(3).contains_index(3)
    with pytest.raises(ValueError):
        SupportSet("initial")
    with pytest.raises(ValueError):
        SupportSet("tail", 0)
    with pytest.raises(ValueError):
        SupportSet("all", 2)
    with pytest.raises(ValueError):
        SupportSet("stripe", 1)


def test_support_set_order():
    assert initial(2).is_subset(initial(5))
    assert not initial(5).is_subset(initial(2))
    assert tail_from(5).is_subset(tail_from(2))
    assert not initial(2).is_subset(tail_from(1))
    assert not tail_from(1).is_subset(initial(9))
    assert SupportSet(EMPTY).is_subset(initial(1))
    assert initial(1).is_subset(SupportSet(ALL))


def test_support_set_operations():
    assert initial(2).union(initial(5)) == initial(5)
    assert initial(2).union(tail_from(2)) == SupportSet(ALL)
    assert initial(2).union(tail_from(4)) is None  # {3, 4} missing
    assert tail_from(4).intersect(initial(2)) == SupportSet(EMPTY)
    assert initial(4).intersect(tail_from(2)) is None  # {3, 4} has no shape
    assert initial(4).intersect(initial(2)) == initial(2)
    assert tail_from(2).intersect(tail_from(4)) == tail_from(4)
    assert initial(3).complement() == tail_from(3)
    assert support_annihilator(support_annihilator(initial(3))) == initial(3)
    assert support_annihilator(SupportSet(ALL)) == SupportSet(EMPTY)


def test_tail_functional():
    f = TailFunctional.make({1: 0, 2: 5}, 1)
    assert f.evaluate(2) == 5
    assert f.evaluate(1) == 0
    assert f.evaluate(99) == 1
    assert not f.is_zero()
    assert TailFunctional.make({3: 0}, 0).is_zero()
    with pytest.raises(ValueError):
        TailFunctional.make({0: 1}, 0)
    with pytest.raises(ValueError):
        f.evaluate(0)


def test_tail_functional_support():
    cofinite = TailFunctional.make({1: 0, 2: 5}, 1)
    assert cofinite.supported_within(SupportSet(ALL))
    assert cofinite.supported_within(tail_from(2)) is False  # value 5 at index 2
    assert TailFunctional.make({1: 0}, 1).supported_within(tail_from(1))
    assert not cofinite.supported_within(initial(50))
    finite = TailFunctional.make({3: 1}, 0)
    assert finite.supported_within(initial(3))
    assert not finite.supported_within(initial(2))
    assert finite.supported_within(tail_from(2))


def test_catalog_names():
    assert set(CATALOG) == {"c00-omega", "c00-omega-star", "c00-zigzag"}
    assert CATALOG["c00-omega"]().order_type == "omega"


def test_members_by_order_type():
    om = omega_nest()
    assert om.member(3) == initial(3)
    star = omega_star_nest()
    assert star.member(3) == tail_from(3)
    with pytest.raises(ValueError):
        om.member(0)
    with pytest.raises(ValueError):
        zigzag_nest().member(1)


def test_chain_conditions():
    om = omega_nest()
    star = omega_star_nest()
    zz = zigzag_nest()
    assert om.is_well_ordered and not om.has_acc and om.has_dcc
    assert not star.is_well_ordered and star.has_acc and not star.has_dcc
    assert not zz.is_well_ordered and not zz.has_acc and not zz.has_dcc
    assert om.is_complete
    assert star.is_complete
    assert not zz.is_complete


def test_dual_members_are_annihilators():
    for make in (omega_nest, omega_star_nest):
        nest = make()
        dual = dual_support_nest(nest).dual
        for i in range(1, 10):
            assert dual.member(i) == support_annihilator(nest.member(i))


def test_dual_completeness_verdicts():
    om = dual_support_nest(omega_nest())
    assert om.complete
    assert om.witness is None
    assert not om.dual.ascending_initials  # tails, descending

    star = dual_support_nest(omega_star_nest())
    assert not star.complete
    assert star.witness is not None
    assert not star.witness.is_zero()

    with pytest.raises(ValueError):
        dual_support_nest(zigzag_nest())


def test_double_dual_returns_to_shape():
    for make in (omega_nest, omega_star_nest):
        nest = make()
        once = dual_support_nest(nest).dual
        twice = dual_support_nest(once).dual
        for i in range(1, 8):
            assert twice.member(i) == nest.member(i)


def test_incompleteness_witness_separates():
    # the witness sits in the annihilator of the meet of the omega-star
    # members but escapes every single annihilator
    star = omega_star_nest()
    res = dual_support_nest(star)
    w = res.witness
    meet = family_meet(star, "all")
    assert meet == SupportSet(EMPTY)
    assert w.supported_within(support_annihilator(meet))
    for i in range(1, 25):
        ann = support_annihilator(star.member(i))  # {1..i}
        assert not w.supported_within(ann)
    # every coordinate vector sees the witness
    assert all(w.evaluate(k) for k in range(1, 30))


def test_chain_union_and_family_meet():
    om = omega_nest()
    star = omega_star_nest()
    assert chain_union(om, [2, 5, 3]) == initial(5)
    assert chain_union(om, "all") == SupportSet(ALL)
    assert chain_union(star, [2, 5, 3]) == tail_from(2)
    assert chain_union(star, "all") == tail_from(1)
    assert family_meet(om, [2, 5, 3]) == initial(2)
    assert family_meet(om, "all") == initial(1)
    assert family_meet(star, [2, 5, 3]) == tail_from(5)
    assert family_meet(star, "all") == SupportSet(EMPTY)
    dual_om = dual_support_nest(om).dual
    assert chain_union(dual_om, "all") == dual_om.member(1)
    dual_star = dual_support_nest(star).dual
    assert chain_union(dual_star, "all") is None  # the incompleteness itself
    assert family_meet(dual_star, "all") == initial(1)
    with pytest.raises(ValueError):
        chain_union(om, [])
    with pytest.raises(ValueError):
        family_meet(om, [0])
    with pytest.raises(ValueError):
        chain_union(zigzag_nest(), "all")


def test_principal_support_frozen():
    om = omega_nest()
    assert principal_support(om, {3: 1}) == (initial(3), initial(2))
    assert principal_support(om, [1, 0, 2]) == (initial(3), initial(2))
    assert principal_support(om, {1: 5}) == (initial(1), SupportSet(EMPTY))
    star = omega_star_nest()
    assert principal_support(star, {3: 1}) == (tail_from(2), tail_from(3))
    assert principal_support(star, {1: 1, 5: 2}) == (SupportSet(ALL), tail_from(1))
    with pytest.raises(ValueError):
        principal_support(om, {})
    with pytest.raises(ValueError):
        principal_support(dual_support_nest(om).dual, {3: 1})


def test_zigzag_report():
    rep = zigzag_report()
    assert rep.order_type_name == "1+omega*+omega+1"
    assert not rep.well_ordered
    assert not rep.has_acc and not rep.has_dcc
    assert rep.radical_equals_strict
    names = [c.name for c in rep.components]
    assert names == ["dual-of-omega", "dual-of-omega-star"]
    assert all(c.radical_equals_strict for c in rep.components)
    assert rep.components[1].well_ordered


def test_truncation_nest_shape():
    nest = truncation_nest(QQ, 4)
    assert [s.dim for s in nest.chain] == [0, 1, 2, 3, 4]
    # first proper member is the last coordinate line
    assert nest.chain[1].contains((Q(0), Q(0), Q(0), Q(1)))
    assert not nest.chain[1].contains((Q(1), Q(0), Q(0), Q(0)))
    with pytest.raises(ValueError):
        truncation_nest(QQ, 0)


def test_truncation_algebra_is_lower_triangular():
    from nestalg.algebra import alg_basis, in_alg

    nest = truncation_nest(QQ, 3)
    assert alg_basis(nest).dim == 6
    assert in_alg(nest, qmat([[1, 0, 0], [2, 3, 0], [4, 5, 6]]))
    assert not in_alg(nest, qmat([[1, 1, 0], [0, 1, 0], [0, 0, 1]]))


def test_graded_quasi_inverse_frozen():
    t = qmat([[0, 0], [1, 0]])
    a = qmat([[1, 0], [0, 1]])
    s = graded_quasi_inverse(t, a, 2)
    assert s == qmat([[1, 0], [1, 1]])


def test_graded_quasi_inverse_matches_direct_inverse():
    import random

    from nestalg.sampling import random_scalar

    rng = random.Random(61)
    for m in range(2, 7):
        for _ in range(5):
            t_rows = [
                [random_scalar(QQ, rng) if j < i else Q(0) for j in range(m)]
                for i in range(m)
            ]
            a_rows = [
                [random_scalar(QQ, rng) if j <= i else Q(0) for j in range(m)]
                for i in range(m)
            ]
            t = Matrix(QQ, tuple(tuple(r) for r in t_rows))
            a = Matrix(QQ, tuple(tuple(r) for r in a_rows))
            s = graded_quasi_inverse(t, a, m)
            direct = try_invert(Matrix.identity(QQ, m) - a @ t)
            assert direct is not None
            assert s == direct


def test_graded_quasi_inverse_rejects_bad_input():
    ident = Matrix.identity(QQ, 2)
    strict = qmat([[0, 0], [1, 0]])
    with pytest.raises(ValueError):
        graded_quasi_inverse(ident, ident, 2)  # t not strictly graded
    with pytest.raises(ValueError):
        graded_quasi_inverse(strict, qmat([[0, 1], [0, 0]]), 2)  # a raises grade
    with pytest.raises(ValueError):
        graded_quasi_inverse(strict, ident, 3)  # wrong size
    gf_t = Matrix(GF2, ((0, 0), (1, 0)))
    with pytest.raises(ValueError):
        graded_quasi_inverse(gf_t, Matrix.identity(GF2, 2), 2)


def test_strictly_graded_powers_vanish_by_rows():
    # row i of the k-th power of a strictly graded operator is zero for i < k
    t = qmat([[0, 0, 0, 0], [1, 0, 0, 0], [2, 3, 0, 0], [4, 5, 6, 0]])
    power = Matrix.identity(QQ, 4)
    for k in range(1, 5):
        power = power @ t
        for i in range(min(k, 4)):
            assert all(x == 0 for x in power.entries[i])
    assert power.is_zero()
