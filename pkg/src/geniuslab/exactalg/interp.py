"""Exact polynomial interpolation and Cauchy rational-function fitting."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from gmpy2 import mpq

from .poly import MultiPoly, Ring
from .rational import Q, Rational, fmt


class InterpolationError(ValueError):
    """Raised when samples do not fit the requested shape.

    ``witness`` holds the first sample point that disagrees, when there is one.
    """

    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


def interpolate_poly(points: Sequence, degbound: int, var: MultiPoly) -> MultiPoly:
    """Newton interpolation through the first ``degbound+1`` points.

    ``var`` is the ring generator the result is expressed in; ordinates may be
    scalars or polynomials of that ring not involving it. Every remaining
    point is used for validation.
    """
    ring = var.ring
    if len(points) < degbound + 1:
        raise InterpolationError(
            f"need {degbound + 1} points for degree {degbound}, got {len(points)}"
        )
    xs = [Q(x) for x, _ in points]
    if len(set(xs)) != len(xs):
        raise InterpolationError("abscissae must be distinct")
    ys = [ring.coerce(y) for _, y in points]
    m = degbound + 1
    # divided differences, in place
    dd = list(ys[:m])
    for level in range(1, m):
        for i in range(m - 1, level - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]).scale(1 / (xs[i] - xs[i - level]))
    # Horner on the Newton form
    result = dd[m - 1]
    for i in range(m - 2, -1, -1):
        result = result * (var - xs[i]) + dd[i]
    name = var.variables()[0]
    for x, y in zip(xs[m:], ys[m:]):
        got = result.subs({name: x})
        if got != y:
            raise InterpolationError(
                f"degree-{degbound} interpolant disagrees at {fmt(x)}: {got} != {y}",
                witness=(x, y),
            )
    return result


# -- dense univariate helpers (coefficient lists, lowest degree first) -------


def _trim(p: list) -> list:
    while p and not p[-1]:
        p.pop()
    return p


def _ueval(p: Sequence, x) -> Rational:
    acc = mpq(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _udivmod(a: list, b: list) -> tuple[list, list]:
    a = list(a)
    q = [mpq(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(_trim(a)) >= len(b):
        shift = len(a) - len(b)
        f = a[-1] / lead
        q[shift] = f
        for i, c in enumerate(b):
            a[i + shift] -= f * c
        a.pop()
    return _trim(q), _trim(a)


def _ugcd(a: list, b: list) -> list:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        _, r = _udivmod(a, b)
        a, b = b, r
    if not a:
        return [mpq(1)]
    return [c / a[-1] for c in a]


def nullspace(rows: list[list]) -> list[list]:
    """Basis of the right nullspace of an exact rational matrix."""
    if not rows:
        return []
    ncols = len(rows[0])
    m = [[Q(c) for c in row] for row in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [mpq(0)] * ncols
        v[fc] = mpq(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(v)
    return basis


@dataclass(frozen=True)
class RationalFn:
    """``num/den`` in one variable; coprime, ``den`` monic. Coefficients low to high."""

    num: tuple
    den: tuple
    var: str = "p"

    def __call__(self, x) -> Rational:
        x = Q(x)
        d = _ueval(self.den, x)
        if not d:
            raise ZeroDivisionError(f"denominator vanishes at {fmt(x)}")
        return _ueval(self.num, x) / d

    @property
    def deg_num(self) -> int:
        return len(self.num) - 1 if self.num else -1

    @property
    def deg_den(self) -> int:
        return len(self.den) - 1

    @property
    def vanishes_at_infinity(self) -> bool:
        return self.deg_num < self.deg_den

    def to_poly(self, ring: Ring) -> tuple[MultiPoly, MultiPoly]:
        v = ring[self.var]
        num = sum((v**i * c for i, c in enumerate(self.num)), ring.zero())
        den = sum((v**i * c for i, c in enumerate(self.den)), ring.zero())
        return num, den

    def __str__(self):
        ring = Ring([self.var])
        num, den = self.to_poly(ring)
        if den == 1:
            return str(num)
        return f"({num})/({den})"


def fit_ratfn(points: Sequence, degN: int, degD: int, var: str = "p") -> RationalFn:
    """Exact Cauchy interpolation ``N/D`` with ``deg N <= degN``, ``deg D <= degD``.

    Solves ``N(p_i) - v_i D(p_i) = 0`` for all supplied points, reduces to
    lowest terms with monic denominator and checks every point again.
    """
    need = degN + degD + 2
    if len(points) < need:
        raise InterpolationError(f"need at least {need} points, got {len(points)}")
    xs = [Q(x) for x, _ in points]
    vs = [Q(v) for _, v in points]
    if len(set(xs)) != len(xs):
        raise InterpolationError("abscissae must be distinct")
    rows = []
    for x, v in zip(xs, vs):
        powers = [x**k for k in range(max(degN, degD) + 1)]
        rows.append(powers[: degN + 1] + [-v * pw for pw in powers[: degD + 1]])
    basis = nullspace(rows)
    if not basis:
        raise InterpolationError(f"no rational function of shape ({degN}, {degD}) fits")
    sol = basis[0]
    num = _trim(list(sol[: degN + 1]))
    den = _trim(list(sol[degN + 1 :]))
    if not den:
        raise InterpolationError("fitted denominator is identically zero")
    g = _ugcd(num, den) if num else list(den)
    if num:
        num, _ = _udivmod(num, g)
    den, _ = _udivmod(den, g)
    lead = den[-1]
    num = [c / lead for c in num]
    den = [c / lead for c in den]
    for x, v in zip(xs, vs):
        if not _ueval(den, x):
            raise InterpolationError(
                f"fitted denominator vanishes at sample {fmt(x)}", witness=(x, v)
            )
        if _ueval(num, x) / _ueval(den, x) != v:
            raise InterpolationError(
                f"fit does not reproduce sample at {fmt(x)}", witness=(x, v)
            )
    return RationalFn(tuple(num), tuple(den), var)
