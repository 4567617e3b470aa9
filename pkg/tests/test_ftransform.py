import pytest

from geniuslab.bellkit import BellContext
from geniuslab.exactalg import Q, poly_coeff_extract
from geniuslab.ftransform import lhs_y_poly, solve_cached, solve_F, verify_transform


def test_lhs_p2():
    ctx = BellContext(2)
    lhs = lhs_y_poly(ctx)
    assert lhs[0].is_zero
    assert lhs[1] == ctx.u(2) + ctx.d(1)
    assert lhs[2] == Q(1, 2)


def test_lhs_p3():
    ctx = BellContext(3)
    lhs = lhs_y_poly(ctx)
    assert lhs[2] == ctx.u(2) + ctx.d(1) * Q(1, 2)
    assert lhs[3] == Q(1, 6)


def test_hand_solutions():
    assert solve_F(2).as_text() == {2: "u2 + d1"}
    sol = solve_F(3)
    assert sol.as_text() == {2: "u2 + 1/2*d1", 3: "u2*d1 + 1/2*d1^2 + u3 + d2"}
    assert poly_coeff_extract(sol.F[3], {"u2": 1, "d1": 1}) == 1


@pytest.mark.parametrize("p", range(2, 13))
def test_verify_round_trip(p):
    sol = solve_cached(p)
    check = verify_transform(sol)
    assert check.ok, check.witness


@pytest.mark.parametrize("p", range(2, 11))
def test_leading_coefficient_is_one(p):
    sol = solve_cached(p)
    for i in range(2, p + 1):
        assert poly_coeff_extract(sol.F[i], {f"u{i}": 1}) == 1


def test_injected_fault_caught_at_y2():
    sol = solve_F(3)
    bad = sol.replace(2, sol.F[2] + 1)
    check = verify_transform(bad)
    assert not check.ok
    path, k, *_ = check.witness
    assert (path, k) == ("rhs", 2)


def test_solution_is_deterministic():
    a, b = solve_F(6), solve_F(BellContext(6))
    assert a.as_text() == b.as_text()
