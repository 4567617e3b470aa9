"""Desk-scale checkers for the two conjectures on the F-transform.

Conjecture 1: every ``F_i`` is affine in the ``u`` variables.
Conjecture 2: ``F_i = u_i + sum_j r_ij(p) m_ij`` with each ``r_ij`` a rational
function of ``p`` vanishing as ``p -> infinity``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, Mapping

from .exactalg import InterpolationError, MultiPoly, Q, Rational, RationalFn, fit_ratfn, fmt
from .ftransform import FSolution, solve_cached

Monomial = tuple[tuple[str, int], ...]  # sorted (name, exponent) pairs

_VAR = re.compile(r"([ud])(\d+)$")


def monomial_key(mono) -> Monomial:
    """Normalize ``"u2*d1^2"`` / ``{"u2": 1, "d1": 2}`` to sorted pairs."""
    if isinstance(mono, str):
        exps: dict[str, int] = {}
        s = mono.strip()
        if s not in ("", "1"):
            for factor in s.split("*"):
                name, _, e = factor.partition("^")
                exps[name] = exps.get(name, 0) + (int(e) if e else 1)
        mono = exps
    elif not isinstance(mono, Mapping):
        mono = dict(mono)
    return tuple(sorted((n, int(e)) for n, e in mono.items() if e))


def monomial_text(mono: Monomial) -> str:
    if not mono:
        return "1"
    return "*".join(n if e == 1 else f"{n}^{e}" for n, e in _display_order(mono))


def _display_order(mono: Monomial):
    def key(item):
        kind, idx = _VAR.match(item[0]).groups()
        return (0 if kind == "u" else 1, int(idx))

    return sorted(mono, key=key)


def u_degree(mono: Monomial) -> int:
    return sum(e for n, e in mono if n.startswith("u"))


def monomials_of(poly: MultiPoly) -> dict[Monomial, Rational]:
    names = poly.ring.names
    return {
        tuple(sorted((n, e) for n, e in zip(names, exps) if e)): c
        for exps, c in poly.terms()
    }


def _available(mono: Monomial, p: int) -> bool:
    # reduced variables at p: u_2..u_p and d_1..d_{p-1}
    for name, _ in mono:
        kind, idx = _VAR.match(name).groups()
        idx = int(idx)
        if kind == "u" and not 2 <= idx <= p:
            return False
        if kind == "d" and not 1 <= idx <= p - 1:
            return False
    return True


# -- Conjecture 1 -------------------------------------------------------------


@dataclass
class Conj1Report:
    p: int
    passed: bool
    witness: tuple[int, str] | None = None
    u_free: dict[int, int] = field(default_factory=dict)  # i -> count of u-free monomials
    max_u_degree: int = 0

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "passed": self.passed,
            "witness": list(self.witness) if self.witness else None,
            "u_free_monomials": {str(i): n for i, n in self.u_free.items()},
            "max_u_degree": self.max_u_degree,
        }


def check_conj1(p: int, sol: FSolution | None = None) -> Conj1Report:
    """Every monomial of every ``F_i`` has total ``u``-degree at most 1."""
    if p < 2:
        raise ValueError("p must be >= 2")
    sol = sol if sol is not None else solve_cached(p)
    report = Conj1Report(p, True)
    for i in range(2, p + 1):
        monos = monomials_of(sol.F[i])
        report.u_free[i] = sum(1 for m in monos if u_degree(m) == 0)
        for m in sorted(monos, key=lambda m: (-u_degree(m), m)):
            deg = u_degree(m)
            report.max_u_degree = max(report.max_u_degree, deg)
            if deg >= 2 and report.passed:
                report.passed = False
                report.witness = (i, monomial_text(m))
    return report


# -- Conjecture 2 -------------------------------------------------------------


@dataclass
class CoeffTrace:
    i: int
    monomial: Monomial
    samples: list[tuple[int, Rational]]
    skipped: list[tuple[int, str]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "i": self.i,
            "monomial": monomial_text(self.monomial),
            "samples": [[p, fmt(c)] for p, c in self.samples],
            "skipped": [[p, why] for p, why in self.skipped],
        }


def trace_coefficient(
    i: int,
    monomial,
    pmin: int,
    pmax: int,
    solver: Callable[[int], FSolution] = solve_cached,
) -> CoeffTrace:
    """Coefficient of ``monomial`` in ``F_i(p)`` for ``p = pmin..pmax``."""
    if pmin < max(i, 2):
        raise ValueError(f"pmin must be >= max(i, 2) = {max(i, 2)}")
    if pmax < pmin + 1:
        raise ValueError("window must contain at least two values of p")
    mono = monomial_key(monomial)
    trace = CoeffTrace(i, mono, [])
    for p in range(pmin, pmax + 1):
        if not _available(mono, p):
            trace.skipped.append((p, "monomial uses a variable absent at this p"))
            continue
        poly = solver(p).F[i]
        trace.samples.append((p, poly.coeff(dict(mono))))
    return trace


FITTED_VANISHING = "fitted+vanishing"
FITTED_NOT_VANISHING = "fitted+NOT-vanishing"
NO_FIT = "no-fit-within-budget"
LEADING = "leading-term"


@dataclass
class MonomialVerdict:
    monomial: Monomial
    verdict: str
    fit: RationalFn | None = None
    shape: tuple[int, int] | None = None
    trace: CoeffTrace | None = None
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "monomial": monomial_text(self.monomial),
            "verdict": self.verdict,
            "fit": str(self.fit) if self.fit is not None else None,
            "shape": list(self.shape) if self.shape else None,
            "samples": [[p, fmt(c)] for p, c in self.trace.samples] if self.trace else [],
            "note": self.note,
        }


@dataclass
class Conj2Report:
    i: int
    window: tuple[int, int]
    budget: int
    holdout: int
    leading_ok: bool
    leading_witness: tuple[int, str] | None
    verdicts: list[MonomialVerdict]
    support_changes: list[str]

    @property
    def counterexamples(self) -> list[MonomialVerdict]:
        return [v for v in self.verdicts if v.verdict == FITTED_NOT_VANISHING]

    @property
    def inconclusive(self) -> list[MonomialVerdict]:
        return [v for v in self.verdicts if v.verdict == NO_FIT]

    @property
    def status(self) -> str:
        if not self.leading_ok or self.counterexamples:
            return "fail"
        if self.inconclusive:
            return "inconclusive"
        return "pass"

    def to_dict(self) -> dict:
        return {
            "i": self.i,
            "window": list(self.window),
            "budget": self.budget,
            "holdout": self.holdout,
            "leading_ok": self.leading_ok,
            "leading_witness": list(self.leading_witness) if self.leading_witness else None,
            "status": self.status,
            "verdicts": [v.to_dict() for v in self.verdicts],
            "support_changes": self.support_changes,
        }


def default_window(i: int) -> tuple[int, int]:
    lo = max(i, 2)
    return lo, lo + 9


def classify_trace(trace: CoeffTrace, budget: int, holdout: int) -> MonomialVerdict:
    """Search ``(degN, degD)`` with ``degN + degD <= budget`` for an exact fit."""
    pts = trace.samples
    fit_pts, held = pts[: len(pts) - holdout], pts[len(pts) - holdout :]
    for total in range(budget + 1):
        for degD in range(total + 1):
            degN = total - degD
            if len(fit_pts) < degN + degD + 2:
                continue
            try:
                fn = fit_ratfn(fit_pts, degN, degD)
            except InterpolationError:
                continue
            try:
                ok = all(fn(p) == v for p, v in held)
            except ZeroDivisionError:
                ok = False
            if not ok:
                continue
            verdict = FITTED_VANISHING if fn.vanishes_at_infinity else FITTED_NOT_VANISHING
            return MonomialVerdict(trace.monomial, verdict, fn, (degN, degD), trace)
    note = "" if len(fit_pts) >= 2 else "too few samples"
    return MonomialVerdict(trace.monomial, NO_FIT, None, None, trace, note)


def check_conj2(
    i: int,
    pwindow: tuple[int, int] | None = None,
    degree_budget: int = 4,
    holdout: int = 2,
    solver: Callable[[int], FSolution] = solve_cached,
) -> Conj2Report:
    if i < 2:
        raise ValueError("i must be >= 2")
    a, b = pwindow if pwindow is not None else default_window(i)
    if a < max(i, 2):
        raise ValueError(f"window must start at p >= {max(i, 2)}")
    size = b - a + 1
    if size < degree_budget + 2 + holdout:
        raise ValueError(
            f"window of {size} values is too small for budget {degree_budget} "
            f"and holdout {holdout} (need {degree_budget + 2 + holdout})"
        )
    lead_key = ((f"u{i}", 1),)
    leading_ok, leading_witness = True, None
    support: dict[Monomial, set[int]] = {}
    for p in range(a, b + 1):
        monos = monomials_of(solver(p).F[i])
        c = monos.pop(lead_key, Q(0))
        if c != 1 and leading_ok:
            leading_ok, leading_witness = False, (p, fmt(c))
        for m in monos:
            support.setdefault(m, set()).add(p)
    lead_trace = trace_coefficient(i, lead_key, a, b, solver)
    verdicts = [
        MonomialVerdict(
            lead_key, LEADING, trace=lead_trace,
            note="leading term u_i, excluded from the vanishing requirement",
        )
    ]
    changes = []
    for m in sorted(support, key=lambda m: (u_degree(m), _display_order(m))):
        trace = trace_coefficient(i, m, a, b, solver)
        present = support[m]
        avail = {p for p, _ in trace.samples}
        if present != avail:
            missing = sorted(avail - present)
            changes.append(f"{monomial_text(m)} absent at p={missing}")
        verdicts.append(classify_trace(trace, degree_budget, holdout))
    return Conj2Report(
        i, (a, b), degree_budget, holdout, leading_ok, leading_witness, verdicts, changes
    )


def classify_samples(samples, budget: int = 4, holdout: int = 2, i: int = 0, monomial="") -> MonomialVerdict:
    """Classify an arbitrary (e.g. synthetic) sample list."""
    trace = CoeffTrace(i, monomial_key(monomial), [(int(p), Q(v)) for p, v in samples])
    return classify_trace(trace, budget, holdout)
