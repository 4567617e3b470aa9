from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _strategies import RING_AB, RING_X, nonzero_rationals, polys_ab, rationals, series_x
from geniuslab.exactalg import (
    ExponentError,
    InterpolationError,
    Q,
    Ring,
    SeriesError,
    TruncSeries,
    coeff_extract,
    fit_ratfn,
    fmt,
    interpolate_poly,
    poly_arith,
    poly_coeff_extract,
    series_exp,
    series_log,
    series_mul,
    series_recip,
    series_sqrt,
)

R = Ring(("u2", "d1", "d2", "r"), laurent=("r",))
u2, d1, d2, r = R.gens


# -- scalars ----------------------------------------------------------------


def test_rational_lowest_terms():
    q = Q(6, -4)
    assert (q.numerator, q.denominator) == (-3, 2)
    assert fmt(q) == "-3/2"
    assert Q("10/4") == Fraction(5, 2)


def test_floats_rejected():
    with pytest.raises(TypeError):
        Q(0.5)


# -- polynomials --------------------------------------------------------------


def test_additive_inverse():
    assert str(poly_arith(d1 + d2, -d2, "add")) == "d1"


def test_difference_of_squares():
    assert (u2 + d1) * (u2 - d1) == u2**2 - d1**2
    assert str((u2 + d1) * (u2 - d1)) == "u2^2 - d1^2"


def test_laurent_identity():
    assert r**-1 * r == 1


def test_negative_exponent_on_plain_variable():
    with pytest.raises(ExponentError):
        d1**-1
    with pytest.raises(ExponentError):
        R.monomial({"u2": -1})


def test_serialization_is_canonical():
    p = d2 + d1**2 * Q(1, 2)
    assert str(p) == "1/2*d1^2 + d2"
    assert str(d2 + Q(1, 2) * d1**2) == str(p)
    assert R.parse(str(p)) == p
    q = 3 * r**-2 - u2 * r + Q(-7, 3)
    assert R.parse(str(q)) == q


def test_poly_coeff_extract():
    S = Ring(("j", "n_inv"))
    p = S.monomial({"j": 2, "n_inv": 1}, Q(1, 2))
    assert poly_coeff_extract(p, {"j": 2, "n_inv": 1}) == Q(1, 2)
    assert poly_coeff_extract(p, {"j": 1}) == 0


@settings(max_examples=150, deadline=None)
@given(polys_ab(), polys_ab(), polys_ab())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert str(a * (b + c)) == str(a * b + a * c)


@settings(max_examples=100, deadline=None)
@given(polys_ab())
def test_parse_round_trip(a):
    assert RING_AB.parse(str(a)) == a


# -- series ---------------------------------------------------------------------


def test_series_mul_examples():
    x = TruncSeries(RING_X, [0, 1], 2)
    one = TruncSeries.one(RING_X, 2)
    assert series_mul(one + x, one - x) == TruncSeries(RING_X, [1, 0, -1], 2)
    s = TruncSeries(RING_X, [1, 1, 1], 2)
    assert series_mul(s, one) == s
    D = Ring(("d1",))
    dx = TruncSeries(D, [0, D["d1"]], 2)
    assert series_mul(dx, dx)[2] == D["d1"] ** 2


def test_min_order_truncation():
    a = TruncSeries(RING_X, [1, 1, 1, 1], 3)
    b = TruncSeries(RING_X, [1, 1], 1)
    assert (a * b).order == 1
    assert (a + b).order == 1


def test_series_variable_mismatch():
    a = TruncSeries(RING_X, [1, 1], 1, var="x")
    b = TruncSeries(RING_X, [1, 1], 1, var="t")
    with pytest.raises(SeriesError):
        series_mul(a, b)


def test_exp_examples():
    e = series_exp(TruncSeries(RING_X, [0, 1], 3))
    assert list(e.coeffs) == [1, 1, Q(1, 2), Q(1, 6)]
    D = Ring(("d1", "d2"))
    s = TruncSeries(D, [0, D["d1"], D["d2"]], 2)
    assert coeff_extract(series_exp(s), 2) == D["d2"] + D["d1"] ** 2 * Q(1, 2)
    assert coeff_extract(series_exp(s), 0) == 1
    assert series_exp(TruncSeries(RING_X, [0], 4)) == TruncSeries.one(RING_X, 4)
    with pytest.raises(SeriesError):
        series_exp(TruncSeries(RING_X, [1, 1], 2))


def test_exp_matches_power_summation():
    # independent oracle: sum_k s^k / k!
    D = Ring(("d1", "d2", "d3"))
    s = TruncSeries(D, [0, D["d1"], D["d2"], D["d3"]], 5)
    acc, term = TruncSeries.one(D, 5), TruncSeries.one(D, 5)
    for k in range(1, 6):
        term = term * s * Q(1, k)
        acc = acc + term
    assert series_exp(s) == acc


def test_log_examples():
    lg = series_log(TruncSeries(RING_X, [1, 1], 3))
    assert list(lg.coeffs) == [0, 1, Q(-1, 2), Q(1, 3)]
    D = Ring(("d1",))
    s = TruncSeries(D, [0, D["d1"]], 4)
    assert series_log(series_exp(s)) == s
    assert series_log(TruncSeries.one(RING_X, 3)) == TruncSeries(RING_X, [0], 3)
    with pytest.raises(SeriesError):
        series_log(TruncSeries(RING_X, [2, 1], 2))


def test_sqrt_examples():
    s = series_sqrt(TruncSeries(RING_X, [1, -4], 3))
    assert list(s.coeffs) == [1, -2, -2, -4]
    assert series_sqrt(TruncSeries.one(RING_X, 3)) == TruncSeries.one(RING_X, 3)
    Rr = Ring(("r",))
    t = TruncSeries(Rr, [1, -4 * (Rr["r"] - 1)], 6)
    root = series_sqrt(t)
    assert series_mul(root, root) == t
    with pytest.raises(SeriesError):
        series_sqrt(TruncSeries(RING_X, [4, 1], 2))


def test_sqrt_matches_binomial_series():
    # oracle: [x^k] sqrt(1-4x) = C(1/2, k) (-4)^k
    out = series_sqrt(TruncSeries(RING_X, [1, -4], 8))
    binom = Q(1)
    for k in range(9):
        assert out[k] == binom * (-4) ** k
        binom = binom * (Q(1, 2) - k) / (k + 1)


def test_recip_examples():
    g = series_recip(TruncSeries(RING_X, [1, -1], 3))
    assert list(g.coeffs) == [1, 1, 1, 1]
    assert series_recip(TruncSeries.one(RING_X, 2)) == TruncSeries.one(RING_X, 2)
    assert series_recip(TruncSeries(RING_X, [2], 0))[0] == Q(1, 2)
    with pytest.raises(SeriesError):
        series_recip(TruncSeries(RING_X, [0, 1], 2))


def test_recip_of_laurent_monomial_constant():
    Rr = Ring(("r",), laurent=("r",))
    s = TruncSeries(Rr, [Rr["r"], 1], 3)
    assert series_mul(s, series_recip(s)) == TruncSeries.one(Rr, 3)


def test_coeff_out_of_range():
    with pytest.raises(IndexError):
        coeff_extract(TruncSeries(RING_X, [1, 1, 1], 2), 3)


@settings(max_examples=150, deadline=None)
@given(series_x(constant=0, max_order=8))
def test_log_exp_round_trip(f):
    assert series_log(series_exp(f)) == f


@settings(max_examples=150, deadline=None)
@given(series_x(constant=1))
def test_sqrt_squares_back(s):
    root = series_sqrt(s)
    assert series_mul(root, root) == s


@settings(max_examples=150, deadline=None)
@given(series_x(), nonzero_rationals)
def test_recip_inverts(s, c0):
    s = TruncSeries(RING_X, [c0] + list(s.coeffs[1:]), s.order)
    assert series_mul(s, series_recip(s)) == TruncSeries.one(RING_X, s.order)


# -- interpolation ----------------------------------------------------------------


def test_interpolate_examples():
    x = RING_X["x"]
    assert interpolate_poly([(0, 0), (1, 1), (2, 4)], 2, x) == x**2
    assert interpolate_poly([(1, 7), (2, 7)], 0, x) == 7
    with pytest.raises(InterpolationError) as err:
        interpolate_poly([(0, 0), (1, 1), (2, 4)], 1, x)
    assert err.value.witness == (2, 4)


def test_interpolate_insufficient_points():
    with pytest.raises(InterpolationError):
        interpolate_poly([(0, 1)], 1, RING_X["x"])


def test_interpolate_polynomial_ordinates():
    S = Ring(("j", "c"))
    j, c = S.gens
    target = c * j**2 - 3 * j + c**2
    pts = [(k, target.subs({"j": k})) for k in range(5)]
    assert interpolate_poly(pts, 2, j) == target


def test_fit_examples():
    fn = fit_ratfn([(p, Q(1, p + 1)) for p in range(1, 5)], 0, 1)
    assert str(fn) == "(1)/(p + 1)"
    assert fn.vanishes_at_infinity
    const = fit_ratfn([(p, 3) for p in range(1, 4)], 0, 0)
    assert str(const) == "3" and const.deg_den == 0
    with pytest.raises(InterpolationError):
        fit_ratfn([(p, p) for p in range(1, 5)], 0, 1)


def test_fit_reduces_common_factors():
    # generous shape: result must still be in lowest terms with monic den
    pts = [(p, Q(2 * p + 1, p * p + 3)) for p in range(1, 10)]
    fn = fit_ratfn(pts, 3, 3)
    assert (fn.deg_num, fn.deg_den) == (1, 2)
    assert fn.den[-1] == 1


@settings(max_examples=100, deadline=None)
@given(
    st.lists(rationals, min_size=1, max_size=4),
    st.lists(rationals, min_size=0, max_size=3),
)
def test_fit_reproduces_every_point(num, den_tail):
    den = list(den_tail) + [Q(1)]
    xs = [Q(k) for k in range(-8, 9)]

    def ev(cs, x):
        return sum(c * x**i for i, c in enumerate(cs))

    pts = [(x, ev(num, x) / ev(den, x)) for x in xs if ev(den, x) != 0]
    degN, degD = len(num) - 1, len(den) - 1
    pts = pts[: degN + degD + 4]
    fn = fit_ratfn(pts, degN, degD)
    assert all(fn(x) == v for x, v in pts)


@settings(max_examples=100, deadline=None)
@given(st.lists(rationals, min_size=1, max_size=6))
def test_interpolate_reproduces_points(cs):
    x = RING_X["x"]
    target = sum((c * x**i for i, c in enumerate(cs)), RING_X.zero())
    pts = [(k, target.evaluate({"x": k})) for k in range(len(cs) + 2)]
    got = interpolate_poly(pts, len(cs) - 1, x)
    assert got == target
    assert all(got.evaluate({"x": a}) == b for a, b in pts)
