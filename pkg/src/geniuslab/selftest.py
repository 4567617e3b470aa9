"""Fast worked examples from every module; each returns ``(ok, detail)``."""

from __future__ import annotations

import time
from typing import Callable


def _exactalg():
    from .exactalg import Q, Ring, TruncSeries, fit_ratfn, series_exp, series_log

    R = Ring(("x",))
    s = TruncSeries(R, [0, 1, Q(1, 2)], 6)
    back = series_log(series_exp(s))
    fn = fit_ratfn([(p, Q(1, p - 1)) for p in range(2, 8)], 0, 1)
    ok = back == s and str(fn(Q(11))) == "1/10"
    return ok, {"log(exp(s))": str(back), "fit": str(fn)}


def _bellkit():
    from .bellkit import BellContext, bell_direct, bell_lhs_eq6, eliminate_top_d

    ctx = BellContext(3)
    d3 = eliminate_top_d(ctx)
    ok = str(d3) == "-1/6*d1^3 - d1*d2" and bell_lhs_eq6(ctx) == bell_direct(ctx)
    return ok, {"d3": str(d3)}


def _ftransform():
    from .ftransform import solve_F, verify_transform

    sol = solve_F(3)
    got = sol.as_text()
    ok = bool(verify_transform(sol)) and got == {
        2: "u2 + 1/2*d1",
        3: "u2*d1 + 1/2*d1^2 + u3 + d2",
    }
    return ok, got


def _conjlab():
    from .conjlab import check_conj1, check_conj2

    c1 = check_conj1(5)
    c2 = check_conj2(2)
    return c1.passed and c2.status == "pass", {"conj1": c1.passed, "conj2": c2.status}


def _pernici():
    from .pernici import PerniciParams, check_16_17, t_series

    T = t_series(3, 4)
    coeffs = [str(T[k]) for k in range(5)]
    rep = check_16_17(PerniciParams(r=3, H=2))
    return coeffs == ["1", "3", "15", "87", "543"] and rep.passed, {"T_3": coeffs, "status": rep.status}


def _graphlab():
    from .graphlab import BipartiteGraph, census, match_counts, mbar

    k33 = BipartiteGraph.from_matrix([[1, 1, 1]] * 3)
    c6 = BipartiteGraph.from_matrix([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    rep = census("exhaustive", 5, 3)
    ok = (
        match_counts(k33) == [1, 9, 18, 6]
        and match_counts(c6) == [1, 6, 9, 2]
        and (mbar(4, 1), mbar(6, 3)) == (6, 15)
        and rep.failing == 0
    )
    return ok, {"K33": match_counts(k33), "C6": match_counts(c6)}


def _stirlconf():
    from .stirlconf import chapman_check, pw_poly, stirling1

    ok = (
        (stirling1(3, 2), stirling1(3, 1)) == (3, 2)
        and str(pw_poly(1)) == "1/2*x^2 - 1/2*x"
        and chapman_check(4, 2, "symbolic").passed
    )
    return ok, {"P_1": str(pw_poly(1))}


CASES: list[tuple[str, Callable]] = [
    ("exactalg", _exactalg),
    ("bellkit", _bellkit),
    ("ftransform", _ftransform),
    ("conjlab", _conjlab),
    ("pernici", _pernici),
    ("graphlab", _graphlab),
    ("stirlconf", _stirlconf),
]


def run_selftest():
    for name, fn in CASES:
        t0 = time.perf_counter()
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failed example, reported not raised
            ok, detail = False, {"error": repr(exc)}
        yield name, ok, detail, int((time.perf_counter() - t0) * 1000)
