"""The unique ``F_2..F_p`` with

    [x^p] exp(sum_i (y u_i + d_i) x^i) = [x^p] exp(sum_i y F_i x^i)

as polynomials in ``y``, where ``u_1 = F_1 = 1`` and ``d_p`` is eliminated.

Write ``G = sum_i F_i x^i = x H``. The ``y^k`` coefficient of the right side
is ``[x^{p-k}] H^k / k!``; with ``m = p-k+1`` it contains ``F_m`` linearly
with coefficient ``1/(k-1)!`` and otherwise only ``F_2..F_{m-1}``. Solving
``m = 2, 3, ..., p`` in turn gives each ``F_m`` by one exact subtraction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial
from typing import Mapping

from gmpy2 import mpq

from .bellkit import BellContext, bell_lhs_eq6
from .exactalg import MultiPoly, TruncSeries, series_exp


class SolverInvariantError(RuntimeError):
    """An internal consistency check failed (should never happen)."""


@dataclass(frozen=True)
class FSolution:
    p: int
    F: Mapping[int, MultiPoly]
    ctx: BellContext = field(repr=False, compare=False)

    def __post_init__(self):
        if sorted(self.F) != list(range(2, self.p + 1)):
            raise ValueError(f"F must be given for i = 2..{self.p}")

    def f(self, i: int) -> MultiPoly:
        if i == 1:
            return self.ctx.ring.one()
        return self.F[i]

    def replace(self, i: int, poly: MultiPoly) -> "FSolution":
        F = dict(self.F)
        F[i] = poly
        return FSolution(self.p, F, self.ctx)

    def as_text(self) -> dict[int, str]:
        return {i: str(self.F[i]) for i in sorted(self.F)}


def _y_coeffs(poly: MultiPoly, p: int) -> dict[int, MultiPoly]:
    parts = poly.collect("y")
    zero = poly.ring.zero()
    return {k: parts.get(k, zero) for k in range(p + 1)}


def lhs_y_poly(ctx: BellContext) -> dict[int, MultiPoly]:
    """``y^k`` coefficients (``k = 0..p``) of the left side, ``d_p`` eliminated."""
    p = ctx.p
    coeffs = [0] + [ctx.y * ctx.u(i) + ctx.d(i) for i in range(1, p)]
    coeffs.append(ctx.y * ctx.u(p) + ctx.d_top)
    top = series_exp(TruncSeries(ctx.ring, coeffs, p))[p]
    out = _y_coeffs(top, p)
    if out[0]:
        raise SolverInvariantError(f"y^0 coefficient is {out[0]}, d_p elimination is broken")
    if out[p] != mpq(1, factorial(p)):
        raise SolverInvariantError(f"y^p coefficient is {out[p]}, expected 1/{p}!")
    return out


def power_coeff(h: list[MultiPoly], k: int, n: int) -> MultiPoly:
    """``[x^n] (1 + h_1 x + h_2 x^2 + ...)^k`` via the J.C.P. Miller recurrence

    ``j P_j = sum_{i=1}^{j} ((k+1) i - j) h_i P_{j-i}``.
    """
    ring = h[0].ring
    P = [ring.one()]
    for j in range(1, n + 1):
        acc: dict = {}
        for i in range(1, min(j, len(h) - 1) + 1):
            w = (k + 1) * i - j
            if not w or not h[i] or not P[j - i]:
                continue
            _addmul(acc, h[i], P[j - i], w)
        P.append(MultiPoly(ring, {m: c / j for m, c in acc.items() if c}))
    return P[n]


def _addmul(acc: dict, a: MultiPoly, b: MultiPoly, w) -> None:
    """``acc += w * a * b`` on raw term dicts."""
    ta, tb = a.raw(), b.raw()
    if len(ta) > len(tb):
        ta, tb = tb, ta
    bitems = list(tb.items())
    get = acc.get
    for ka, ca in ta.items():
        ca = ca * w
        for kb, cb in bitems:
            k = ka + kb
            v = get(k)
            acc[k] = ca * cb if v is None else v + ca * cb


def solve_F(ctx: BellContext | int) -> FSolution:
    if isinstance(ctx, int):
        ctx = BellContext(ctx)
    p = ctx.p
    L = lhs_y_poly(ctx)
    ring = ctx.ring
    F: dict[int, MultiPoly] = {}
    # h[i] = [x^i] H = F_{i+1}; unknown entries stay zero until solved
    h = [ring.one()]
    for m in range(2, p + 1):
        k = p - m + 1
        known = power_coeff(h, k, m - 1) if m > 2 else ring.zero()
        # y^k coefficient: (known + k F_m) / k! = L_k
        Fm = (L[k].scale(factorial(k)) - known).scale(mpq(1, k))
        if "y" in Fm.variables():
            raise SolverInvariantError(f"F_{m} depends on y")
        F[m] = Fm
        h.append(Fm)
    return FSolution(p, F, ctx)


@lru_cache(maxsize=64)
def solve_cached(p: int) -> FSolution:
    """Shared immutable solutions; safe because FSolution never mutates."""
    return solve_F(BellContext(p))


def rhs_y_poly(sol: FSolution) -> dict[int, MultiPoly]:
    """``y^k`` coefficients of ``[x^p] exp(y sum_i F_i x^i)``, from scratch."""
    ctx, p = sol.ctx, sol.p
    s = TruncSeries(ctx.ring, [0] + [ctx.y * sol.f(i) for i in range(1, p + 1)], p)
    return _y_coeffs(series_exp(s)[p], p)


@dataclass(frozen=True)
class TransformCheck:
    ok: bool
    witness: tuple | None = None  # (path, k, monomial text, lhs coeff, other coeff)

    def __bool__(self):
        return self.ok


def _first_difference(a: dict, b: dict, ring, label: str):
    for k in sorted(set(a) | set(b)):
        pa, pb = a.get(k, ring.zero()), b.get(k, ring.zero())
        if pa != pb:
            diff = pa - pb
            exps, _ = diff.terms()[0]
            mono = ring.monomial(exps)
            return (label, k, str(mono), str(pa.coeff(mono)), str(pb.coeff(mono)))
    return None


def verify_transform(sol: FSolution) -> TransformCheck:
    """Recompute both sides three ways and compare exactly.

    Left side by series exponentiation and by the Bell convolution, right
    side by series exponentiation with the solved ``F``.
    """
    ctx, p = sol.ctx, sol.p
    ring = ctx.ring
    left = lhs_y_poly(ctx)
    right = rhs_y_poly(sol)
    bell = _y_coeffs(bell_lhs_eq6(ctx).scale(mpq(1, factorial(p))), p)
    for label, other in (("rhs", right), ("bell", bell)):
        w = _first_difference(left, other, ring, label)
        if w is not None:
            return TransformCheck(False, w)
    return TransformCheck(True)
