from itertools import permutations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geniuslab.exactalg import Q
from geniuslab.stirlconf import (
    PW_RING,
    WeightedConfiguration,
    chapman_check,
    compositions,
    config_count,
    config_eval,
    enum_weighted_configs,
    ordered_partitions,
    pw_eval,
    pw_poly,
    random_distinct_rationals,
    stirling1,
    symbolic_values,
)


def test_stirling_small():
    assert stirling1(3, 3) == 1
    assert stirling1(3, 2) == 3
    assert stirling1(3, 1) == 2
    assert stirling1(0, 0) == 1
    assert stirling1(5, 0) == 0
    with pytest.raises(ValueError):
        stirling1(2, 3)


@pytest.mark.parametrize("n", range(0, 9))
def test_stirling_is_rising_factorial_coefficient(n):
    # oracle: expand x(x+1)...(x+n-1) by repeated multiplication
    x = PW_RING["x"]
    prod = PW_RING.one()
    for t in range(n):
        prod = prod * (x + t)
    assert [stirling1(n, k) for k in range(n + 1)] == [prod.coeff({"x": k}) for k in range(n + 1)]


def test_pw_small():
    x = PW_RING["x"]
    assert pw_poly(0) == 1
    assert pw_poly(1) == x * (x - 1) * Q(1, 2)
    assert pw_poly(1).evaluate({"x": 3}) == 3


@pytest.mark.parametrize("w", range(0, 7))
def test_pw_matches_stirling_beyond_nodes(w):
    p = pw_poly(w)
    assert p.degree("x") == 2 * w
    for n in range(w, 3 * w + 8):
        assert p.evaluate({"x": n}) == stirling1(n, n - w)
        assert pw_eval(w, Q(n)) == stirling1(n, n - w)


def test_compositions_colex():
    assert list(compositions(2, 2)) == [(2, 0), (1, 1), (0, 2)]
    assert list(compositions(0, 3)) == [(0, 0, 0)]
    assert len(list(compositions(3, 3))) == 10


def test_enumeration_small():
    cfgs = list(enum_weighted_configs(2, 0))
    assert [c.blocks for c in cfgs] == [((1, 2),), ((1,), (2,)), ((2,), (1,))]
    assert len(list(enum_weighted_configs(3, 0))) == 13


@pytest.mark.parametrize("g,w", [(g, w) for g in range(2, 7) for w in range(g - 1)])
def test_enumeration_count_and_uniqueness(g, w):
    cfgs = list(enum_weighted_configs(g, w))
    assert len(cfgs) == config_count(g, w)
    assert len(set(cfgs)) == len(cfgs)
    for c in cfgs:
        assert sorted(x for blk in c.blocks for x in blk) == list(range(1, g + 1))
        assert c.w == w


def test_ordered_partitions_against_brute_force():
    # oracle: label each element with a block index, keep surjective labelings
    # onto 0..b-1 for each b
    g = 5
    brute = set()
    for b in range(1, g + 1):
        for lab in product(range(b), repeat=g):
            if set(lab) == set(range(b)):
                brute.add(tuple(tuple(x + 1 for x in range(g) if lab[x] == i) for i in range(b)))
    assert set(ordered_partitions(g)) == brute


def test_w_range_rejected():
    with pytest.raises(ValueError):
        next(enum_weighted_configs(3, 2))
    with pytest.raises(ValueError):
        chapman_check(1, 0)


def test_configuration_validation():
    with pytest.raises(ValueError):
        WeightedConfiguration(((1, 2), (2,)), (0, 0))
    with pytest.raises(ValueError):
        WeightedConfiguration(((1,),), (-1,))


def test_eval_hand_cases():
    one, two = Q(1), Q(2)
    single, left, right = enum_weighted_configs(2, 0)
    assert config_eval(single, [one, two]) == -1
    assert config_eval(left, [one, two]) == Q(1, 2)
    assert config_eval(right, [one, two]) == Q(1, 2)


def test_hand_sum_g2():
    rep = chapman_check(2, 0, "random", 0)
    assert rep.passed and rep.count == 3


@pytest.mark.parametrize("g,w", [(g, w) for g in range(2, 6) for w in range(g - 1)])
def test_fast_sum_equals_config_eval_sum(g, w):
    vals = random_distinct_rationals(g, 99)
    slow = sum((config_eval(c, vals) for c in enum_weighted_configs(g, w)), Q(0))
    assert slow == 0
    assert chapman_check(g, w, "random", 99).total == slow


@pytest.mark.parametrize("g,w", [(g, w) for g in range(2, 6) for w in range(g - 1)])
def test_symbolic(g, w):
    rep = chapman_check(g, w, "symbolic")
    assert rep.passed and rep.total == 0


def test_symbolic_eval_is_polynomial():
    cs = symbolic_values(3)
    cfg = WeightedConfiguration(((1, 3), (2,)), (1, 0))
    val = config_eval(cfg, cs)
    assert val.total_degree() == 2 and set(val.variables()) == {"c1", "c3"}


def test_random_values_distinct():
    vals = random_distinct_rationals(7, 5)
    assert len(set(vals)) == 7


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.permutations(range(4)))
def test_sum_invariant_under_relabeling(seed, perm):
    vals = random_distinct_rationals(4, seed)
    permuted = [vals[i] for i in perm]
    for w in range(3):
        a = sum((config_eval(c, vals) for c in enum_weighted_configs(4, w)), Q(0))
        b = sum((config_eval(c, permuted) for c in enum_weighted_configs(4, w)), Q(0))
        assert a == b == 0


def test_nonzero_without_weight_restriction():
    # w = g-1 is outside the admissible range; the sum need not vanish there,
    # which shows the zero is not an artifact of the evaluation code
    vals = [Q(1), Q(3), Q(7)]
    total = Q(0)
    for part in ordered_partitions(3):
        for wts in compositions(2, len(part)):
            total += config_eval(WeightedConfiguration(part, wts), vals)
    assert total != 0
