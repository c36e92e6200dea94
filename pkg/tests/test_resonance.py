import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kzmonodromy.exact import Q
from kzmonodromy.resonance import (
    ParameterPoint,
    ShiftPlan,
    affine_k_regular,
    effectively_non_resonant,
    fg_fails,
    in_E,
    in_S,
    is_resonant,
    plan_shift,
)
from kzmonodromy.root_data import weyl_group

rationals = st.builds(Q, st.integers(-20, 20), st.integers(1, 6))


def _assert_sound(plan):
    assert plan.status == "shiftable"
    cur = (plan.source.lam, plan.source.k)
    for move in plan.moves:
        assert move.certified, move.failures()
        assert tuple(move.source[0]) == tuple(cur[0]) and move.source[1] == cur[1]
        cur = (move.target[0], move.target[1])
    assert tuple(cur[0]) == tuple(plan.target.lam) and cur[1] == plan.target.k
    assert effectively_non_resonant(plan.target)


def test_parameter_point_parsing():
    p = ParameterPoint(2, ("1/2",), "-1")
    assert p.lam == (Q(1, 2),) and p.k == -1
    assert p.describe() == "A_1 lambda=(1/2) k=-1"
    with pytest.raises(TypeError):
        ParameterPoint(2, (0.5,), 1)
    with pytest.raises(ValueError):
        ShiftPlan("maybe", p, p)


def test_predicate_examples():
    assert is_resonant(ParameterPoint(4, (Q(1, 2), 0, Q(1, 2)), 1)) == (
        True,
        ((1, 1, 1), (1, 2, 1), (1, 0, 1)),
    )
    assert is_resonant(ParameterPoint(3, (Q(1, 3), Q(1, 5)), 1)) == (False, ())
    assert in_E(ParameterPoint(3, (3, 3), 2)) and not in_E(ParameterPoint(3, (3, -1), 2))
    assert in_S(ParameterPoint(3, (2, Q(1, 2)), 1)) and not in_S(ParameterPoint(3, (1, 1), 1))
    assert not affine_k_regular(ParameterPoint(2, (Q(1, 3),), Q(1, 3)))
    assert effectively_non_resonant(ParameterPoint(3, (1, 1), 0))


@settings(max_examples=60, deadline=None)
@given(rationals, rationals, rationals)
def test_resonance_weyl_invariant(a, b, k):
    p = ParameterPoint(3, (a, b), k)
    res = is_resonant(p)[0]
    for w in weyl_group(3):
        assert is_resonant(p.with_lam(w.act_weight(p.lam)))[0] == res


def test_generic_points_non_resonant():
    rng = random.Random(5)
    for _ in range(50):
        lam = tuple(Q(rng.randint(1, 100), d) for d in (101, 103, 107))
        assert not is_resonant(ParameterPoint(4, lam, Q(1, 3)))[0]
        assert plan_shift(ParameterPoint(4, lam, Q(1, 3))).status == "non_resonant"


def test_plan_examples():
    p = ParameterPoint(3, (Q(2), Q(1, 2)), Q(4, 3))
    plan = plan_shift(p)
    assert plan.case == "1"
    assert [m.kind for m in plan.moves] == ["lambda_shift", "lambda_shift"]
    assert plan.target.lam == (0, Q(1, 2))
    _assert_sound(plan)
    plan = plan_shift(ParameterPoint(3, (3, 3), 2))
    assert plan.case == "2" and [m.kind for m in plan.moves] == ["k_shift", "k_shift"]
    assert plan.target.k == 0
    _assert_sound(plan)


@pytest.mark.parametrize("m", range(1, 5))
@pytest.mark.parametrize("sign", [1, -1])
def test_counterexample_family_not_covered(m, sign):
    k = Q(4, 3)
    for j in range(1, m + 1):
        plan = plan_shift(ParameterPoint(3, (Q(-m), sign * k + j), k))
        assert plan.status == "not_covered"
        assert plan.notes


def test_denominator7_sample_sound():
    k = Q(4, 3)
    total = good = 0
    for a in range(-14, 15):
        for b in range(-14, 15):
            p = ParameterPoint(3, (Q(a, 7), Q(b, 7)), k)
            if is_resonant(p)[0] and affine_k_regular(p) and in_S(p):
                total += 1
                plan = plan_shift(p)
                _assert_sound(plan)
                good += 1
    assert total > 50 and good == total


@pytest.mark.parametrize("k", [-2, -1, 1, 2, 3])
def test_integer_k_plans_are_sound(k):
    for a in range(-6, 7):
        for b in range(-6, 7):
            plan = plan_shift(ParameterPoint(3, (Q(a, 2), Q(b, 2)), k))
            if plan.status == "shiftable":
                _assert_sound(plan)


def test_rank1_plans():
    plan = plan_shift(ParameterPoint(2, (Q(2),), Q(1, 3)))
    _assert_sound(plan)
    assert plan_shift(ParameterPoint(2, (Q(5, 2),), Q(1, 3))).status == "non_resonant"
    _assert_sound(plan_shift(ParameterPoint(2, (1,), 0)))


def test_fg_examples():
    assert fg_fails(ParameterPoint(3, (2, 2), 1))
    assert fg_fails(ParameterPoint(2, (1,), 1))
    assert not fg_fails(ParameterPoint(3, (2, 2), Q(1, 2)))
    assert not fg_fails(ParameterPoint(3, (3, -1), 1))


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 4), st.lists(rationals, min_size=3, max_size=3), rationals)
def test_fg_false_off_integral_k(n, lam, k):
    if k.denominator == 1:
        k = k + Q(1, 2)
    assert not fg_fails(ParameterPoint(n, tuple(lam[: n - 1]), k))
