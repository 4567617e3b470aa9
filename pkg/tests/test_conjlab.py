import pytest

from geniuslab.conjlab import (
    FITTED_NOT_VANISHING,
    FITTED_VANISHING,
    LEADING,
    NO_FIT,
    check_conj1,
    check_conj2,
    classify_samples,
    monomial_key,
    trace_coefficient,
)
from geniuslab.exactalg import Q
from geniuslab.ftransform import solve_F


@pytest.mark.parametrize("p", range(2, 13))
def test_conj1(p):
    rep = check_conj1(p)
    assert rep.passed and rep.max_u_degree == 1


def test_conj1_injected_fault():
    sol = solve_F(3)
    u2 = sol.ctx.u(2)
    rep = check_conj1(3, sol.replace(2, sol.F[2] + u2**2))
    assert not rep.passed
    assert rep.witness == (2, "u2^2")


def test_conj1_reports_u_free_monomials():
    rep = check_conj1(3)
    assert rep.u_free == {2: 1, 3: 2}


def test_trace_hand_values():
    t = trace_coefficient(2, "d1", 2, 3)
    assert t.samples == [(2, 1), (3, Q(1, 2))]
    assert all(v == 1 for _, v in trace_coefficient(2, "u2", 2, 7).samples)
    assert trace_coefficient(3, "u2*d1", 3, 4).samples[0] == (3, 1)


def test_trace_skips_missing_variables():
    t = trace_coefficient(2, "d3", 2, 5)
    assert [p for p, _ in t.skipped] == [2, 3]
    assert [p for p, _ in t.samples] == [4, 5]


def test_trace_window_checks():
    with pytest.raises(ValueError):
        trace_coefficient(3, "d1", 2, 5)
    with pytest.raises(ValueError):
        trace_coefficient(2, "d1", 4, 4)


def test_monomial_key_forms_agree():
    assert monomial_key("u2*d1^2") == monomial_key({"d1": 2, "u2": 1})


def test_conj2_i2_d1():
    rep = check_conj2(2, (2, 9), degree_budget=3, holdout=2)
    assert rep.status == "pass"
    lead, d1 = rep.verdicts[0], rep.verdicts[1]
    assert lead.verdict == LEADING
    assert d1.verdict == FITTED_VANISHING
    assert str(d1.fit) == "(1)/(p - 1)"
    # the fit reproduces every sample, not only its interpolation nodes
    assert all(d1.fit(p) == v for p, v in d1.trace.samples)


def test_conj2_window_too_small():
    with pytest.raises(ValueError):
        check_conj2(2, (2, 8), degree_budget=4, holdout=2)


def test_synthetic_constant_is_counterexample():
    v = classify_samples([(p, 5) for p in range(2, 12)], budget=4, holdout=2)
    assert v.verdict == FITTED_NOT_VANISHING


def test_synthetic_high_degree_is_inconclusive():
    samples = [(p, Q(1, p**5 + 1)) for p in range(2, 12)]
    assert classify_samples(samples, budget=4, holdout=2).verdict == NO_FIT


def test_holdout_must_match():
    # fits 1/p on the first points, breaks at the held-out ones
    samples = [(p, Q(1, p)) for p in range(2, 8)] + [(8, 7), (9, 3)]
    v = classify_samples(samples, budget=1, holdout=2)
    assert v.verdict == NO_FIT


def test_conj2_deterministic():
    a, b = check_conj2(3).to_dict(), check_conj2(3).to_dict()
    assert a == b
