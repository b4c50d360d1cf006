import random
from itertools import combinations, product
from math import lcm

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import stanley_reisner_height
from torix.divisors import class_group, gorenstein_report
from torix.errors import DimensionError, InputError, NotSmallError, SLConditionError
from torix.fan import a2_cone, quadric_cone, twisted_cubic_cone
from torix.graded import (
    DiagonalAction,
    MonomialIdealData,
    WeightedPolyRing,
    a_invariant,
    degree_ideal,
    invariant_ring_class_group,
    is_n_small,
    monomial_ideal_height,
    non_free_codimension,
    quasi_gorenstein_invariants,
    sl_n_smallness_check,
    surjective_grading_check,
    toric_model,
    veronese_report,
)


def action(factors, weights):
    return DiagonalAction.from_presentation(factors, weights)


def stabilizer_codim(factors, weights):
    """Non-free codimension by listing group elements and their fixed coordinates."""
    n = len(weights)
    L = lcm(*factors)
    best = None
    for g in product(*(range(f) for f in factors)):
        if not any(g):
            continue
        fixed = [
            i for i, w in enumerate(weights)
            if sum(wj * gj * (L // fj) for wj, gj, fj in zip(w, g, factors)) % L == 0
        ]
        c = n - len(fixed)
        best = c if best is None else min(best, c)
    return best


# ---------------------------------------------------------------- smallness


@pytest.mark.parametrize("n", range(1, 9))
def test_an_actions_small(n):
    res = is_n_small(action([n + 1], [[1], [n]]))
    assert res.small and res.codim == 2


def test_not_small_examples():
    res = is_n_small(action([2], [[1], [0]]))
    assert not res.small and res.codim == 1 and res.witness == (2,)
    res = is_n_small(action([2], [[1]]))
    assert not res.small and res.codim == 1 and res.witness == ()


def test_small_examples():
    assert sl_n_smallness_check(action([3], [[1], [2]])).small
    assert sl_n_smallness_check(action([4], [[1], [1], [2]])).small
    assert sl_n_smallness_check(action([2], [[1], [1]])).small
    with pytest.raises(SLConditionError):
        sl_n_smallness_check(action([3], [[1], [1]]))


def test_trivial_group_is_free():
    res = is_n_small(action([1], [[0], [0]]))
    assert res.small and res.codim is None


def test_levels():
    a = action([2], [[1], [1], [1]])
    assert non_free_codimension(a) == (3, ())
    assert is_n_small(a, 2).small
    assert not is_n_small(a, 3).small
    with pytest.raises(InputError):
        is_n_small(a, -1)


@settings(max_examples=120, deadline=None)
@given(
    st.lists(st.integers(1, 6), min_size=1, max_size=2),
    st.integers(1, 4),
    st.data(),
)
def test_codimension_against_stabilizers(factors, n, data):
    weights = [
        [data.draw(st.integers(0, f - 1)) for f in factors] for _ in range(n)
    ]
    codim, _ = non_free_codimension(action(factors, weights))
    assert codim == stabilizer_codim(factors, weights)


# ---------------------------------------------------------------- class groups


@pytest.mark.parametrize("n", range(1, 9))
def test_an_class_group(n):
    assert invariant_ring_class_group(action([n + 1], [[1], [n]])).invariants == (0, (n + 1,))


def test_klein_four_class_group():
    a = action([2, 2], [[1, 0], [0, 1], [1, 1]])
    assert invariant_ring_class_group(a).invariants == (0, (2, 2))


def test_trivial_group_class_group():
    assert invariant_ring_class_group(action([1], [[0], [0]])).is_trivial


def test_class_group_requires_small():
    with pytest.raises(NotSmallError):
        invariant_ring_class_group(action([2], [[1], [0]]))


@pytest.mark.parametrize(
    "factors, weights, fan, qg",
    [
        ([2], [[1], [1]], quadric_cone(), True),
        ([3], [[1], [1]], twisted_cubic_cone(), False),
        ([3], [[1], [2]], a2_cone(), True),
    ],
)
def test_quasi_gorenstein_matches_toric(factors, weights, fan, qg):
    a = action(factors, weights)
    assert quasi_gorenstein_invariants(a).quasi_gorenstein is qg
    assert gorenstein_report(fan).canonical_is_principal is qg
    model = toric_model(a)
    assert class_group(model).group.isomorphic(class_group(fan).group)
    assert gorenstein_report(model).canonical_is_principal is qg


def test_quasi_gorenstein_a_invariant():
    assert quasi_gorenstein_invariants(action([3], [[1], [2]])).a_invariant == -2
    assert quasi_gorenstein_invariants(action([3], [[1], [1]])).a_invariant is None


# ---------------------------------------------------------------- weighted rings, Veronese


def test_a_invariant():
    assert a_invariant(WeightedPolyRing.standard(4)) == -4
    assert a_invariant(WeightedPolyRing.of([[1], [2]])) == -3
    assert a_invariant(WeightedPolyRing.of([[1]])) == -1
    with pytest.raises(InputError):
        a_invariant(WeightedPolyRing.of([[1, 0]]))
    with pytest.raises(InputError):
        a_invariant(WeightedPolyRing.of([[1], [-1]]))


def test_veronese():
    rep = veronese_report(3, 3)
    assert rep.class_group.invariants == (0, (3,))
    assert rep.quasi_gorenstein and rep.a_invariant == -1
    rep = veronese_report(2, 3)
    assert rep.class_group.invariants == (0, (3,)) and not rep.quasi_gorenstein
    with pytest.raises(InputError):
        veronese_report(2, 1)
    with pytest.raises(InputError):
        veronese_report(1, 2)


# ---------------------------------------------------------------- monomial ideals


def test_height_examples():
    assert monomial_ideal_height(MonomialIdealData.of([[1], [2]]), 2) == 2
    three_subsets = MonomialIdealData.of(combinations(range(1, 5), 3))
    assert monomial_ideal_height(three_subsets, 4) == 2
    assert monomial_ideal_height(MonomialIdealData.of([]), 3) == 0
    with pytest.raises(DimensionError):
        monomial_ideal_height(MonomialIdealData.of([[5]]), 3)
    with pytest.raises(InputError):
        MonomialIdealData.of([[]])


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 7).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.lists(st.sets(st.integers(1, n), min_size=1), max_size=6),
    )
))
def test_height_against_stanley_reisner(case):
    n, supports = case
    ideal = MonomialIdealData.of(supports)
    assert monomial_ideal_height(ideal, n) == stanley_reisner_height(supports, n)


def test_height_unchanged_by_redundant_generators():
    rng = random.Random(11)
    for _ in range(50):
        n = rng.randint(2, 6)
        supports = [set(rng.sample(range(1, n + 1), rng.randint(1, n))) for _ in range(3)]
        base = monomial_ideal_height(MonomialIdealData.of(supports), n)
        # supersets of existing supports lie in the ideal already
        padded = supports + [s | {rng.randint(1, n)} for s in supports]
        assert monomial_ideal_height(MonomialIdealData.of(padded), n) == base


def test_degree_ideal():
    ideal = degree_ideal(WeightedPolyRing.standard(2), [1], 3)
    assert set(ideal.generators) == {frozenset({1}), frozenset({2})}
    assert monomial_ideal_height(ideal, 2) == 2
    # weight 0 under (1, -1): x^a y^a
    ideal = degree_ideal(WeightedPolyRing.of([[1], [-1]]), [0], 4)
    assert ideal.generators == (frozenset({1, 2}),)
    with pytest.raises(DimensionError):
        degree_ideal(WeightedPolyRing.standard(2), [1, 0], 3)


# ---------------------------------------------------------------- surjectivity


def test_surjective_standard():
    rep = surjective_grading_check(WeightedPolyRing.standard(2), [[1]], 5)
    assert rep.surjective and rep.witness is None


def test_surjective_fails_for_opposite_weights():
    # x has weight 1 and y weight -1.  Every weight -4 monomial has y-degree
    # at least 4, so y^3 (weight -3) is not in B_{-4} B_1.
    rep = surjective_grading_check(WeightedPolyRing.of([[1], [-1]]), [[1], [-1]], 4)
    assert not rep.surjective
    assert rep.witness == ((-4,), (1,))
    assert rep.missing_monomial == (0, 3)


def test_surjective_fails_for_weights_2_3():
    rep = surjective_grading_check(WeightedPolyRing.of([[2], [3]]), [[1]], 12)
    assert not rep.surjective
    assert rep.witness == ((1,), (1,))
    assert rep.missing_monomial == (1, 0)


def test_surjective_input_errors():
    ring = WeightedPolyRing.standard(2)
    with pytest.raises(InputError):
        surjective_grading_check(ring, [], 3)
    with pytest.raises(InputError):
        surjective_grading_check(ring, [[1]], 0)
    with pytest.raises(DimensionError):
        surjective_grading_check(ring, [[1, 1]], 3)
