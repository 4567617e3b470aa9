"""Complete Bell polynomials and the constraint that eliminates ``d_p``.

The constraint ``[x^p] exp(sum_{i<=p} d_i x^i) = 0`` is linear in ``d_p``
with coefficient 1, so ``d_p`` is always replaced by the polynomial in
``d_1..d_{p-1}`` it forces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import comb, factorial
from typing import Sequence

from .exactalg import MultiPoly, Ring, TruncSeries, series_exp


@dataclass(frozen=True)
class BellContext:
    """Variables for a fixed ``p``: ``u_2..u_p``, ``d_1..d_p`` and ``y``.

    ``u_1`` is the constant 1.
    """

    p: int
    ring: Ring = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p < 2:
            raise ValueError(f"p must be an integer >= 2, got {self.p!r}")
        names = [f"u{k}" for k in range(2, self.p + 1)]
        names += [f"d{k}" for k in range(1, self.p + 1)]
        names.append("y")
        object.__setattr__(self, "ring", Ring(names))

    @property
    def y(self) -> MultiPoly:
        return self.ring["y"]

    def u(self, k: int) -> MultiPoly:
        if k == 1:
            return self.ring.one()
        return self.ring[f"u{k}"]

    def d(self, k: int) -> MultiPoly:
        return self.ring[f"d{k}"]

    @property
    def u_names(self) -> tuple[str, ...]:
        return tuple(f"u{k}" for k in range(2, self.p + 1))

    @property
    def d_names(self) -> tuple[str, ...]:
        return tuple(f"d{k}" for k in range(1, self.p))

    @cached_property
    def d_top(self) -> MultiPoly:
        """The value ``d_p`` is forced to take."""
        return eliminate_top_d(self)

    def reduce(self, poly: MultiPoly) -> MultiPoly:
        """Substitute the forced value of ``d_p``."""
        return poly.subs({f"d{self.p}": self.d_top})


def bell_sequence(args: Sequence, ring: Ring | None = None) -> list[MultiPoly]:
    """``[B_0, B_1, ..., B_m]`` for ``m = len(args)`` by the binomial recurrence

    ``B_{n+1} = sum_{i=0}^{n} C(n, i) B_{n-i} x_{i+1}``.
    """
    if ring is None:
        ring = next(a.ring for a in args if isinstance(a, MultiPoly))
    xs = [ring.coerce(a) for a in args]
    B = [ring.one()]
    for n in range(len(xs)):
        acc = ring.zero()
        for i in range(n + 1):
            if xs[i] and B[n - i]:
                acc = acc + (B[n - i] * xs[i]).scale(comb(n, i))
        B.append(acc)
    return B


def bell_complete(m: int, args: Sequence, ring: Ring | None = None) -> MultiPoly:
    """Complete Bell polynomial ``B_m(x_1, ..., x_m)``."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    if len(args) != m:
        raise ValueError(f"B_{m} takes {m} arguments, got {len(args)}")
    if m == 0:
        if ring is None:
            raise ValueError("B_0 needs an explicit ring")
        return ring.one()
    return bell_sequence(args, ring)[m]


def eliminate_top_d(ctx: BellContext) -> MultiPoly:
    """``d_p = -[x^p] exp(sum_{i<p} d_i x^i)``."""
    p = ctx.p
    s = TruncSeries(ctx.ring, [0] + [ctx.d(i) for i in range(1, p)], p)
    return -series_exp(s)[p]


def scaled_args(polys: Sequence[MultiPoly]) -> list[MultiPoly]:
    """``(1! a_1, 2! a_2, ...)``."""
    return [a.scale(factorial(i)) for i, a in enumerate(polys, start=1)]


def bell_lhs_eq6(ctx: BellContext, eliminate: bool = True) -> MultiPoly:
    """``B_p[1!(y u_1 + d_1), ..., p!(y u_p + d_p)]`` as a binomial convolution

    ``sum_i C(p, i) B_{p-i}[1! y u_1, ...] B_i(1! d_1, ..., i! d_i)``.
    """
    p = ctx.p
    y = ctx.y
    Bu = bell_sequence(scaled_args([y * ctx.u(k) for k in range(1, p + 1)]), ctx.ring)
    Bd = bell_sequence(scaled_args([ctx.d(k) for k in range(1, p + 1)]), ctx.ring)
    if eliminate:
        Bd = [ctx.reduce(b) for b in Bd]
    total = ctx.ring.zero()
    for i in range(p + 1):
        if Bd[i]:
            total = total + (Bu[p - i] * Bd[i]).scale(comb(p, i))
    return total


def bell_direct(ctx: BellContext, eliminate: bool = True) -> MultiPoly:
    """Same quantity as :func:`bell_lhs_eq6`, evaluated on the summed arguments."""
    args = [ctx.y * ctx.u(k) + ctx.d(k) for k in range(1, ctx.p + 1)]
    val = bell_complete(ctx.p, scaled_args(args))
    return ctx.reduce(val) if eliminate else val
