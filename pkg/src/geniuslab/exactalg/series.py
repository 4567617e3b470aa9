"""Truncated power series in one formal variable with polynomial coefficients."""

from __future__ import annotations

from typing import Sequence

from gmpy2 import mpq

from .poly import MultiPoly, Ring
from .rational import Q, is_scalar


class SeriesError(ValueError):
    pass


class TruncSeries:
    """``sum_{k<=order} coeffs[k] * var^k``; anything above ``order`` is discarded."""

    __slots__ = ("ring", "var", "order", "coeffs")

    def __init__(self, ring: Ring, coeffs: Sequence, order: int | None = None, var: str = "x"):
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise SeriesError("order must be nonnegative")
        cs = [ring.coerce(c) for c in list(coeffs)[: order + 1]]
        cs.extend(ring.zero() for _ in range(order + 1 - len(cs)))
        self.ring = ring
        self.var = var
        self.order = order
        self.coeffs = tuple(cs)

    @classmethod
    def _raw(cls, ring, coeffs, var):
        s = object.__new__(cls)
        s.ring, s.var, s.order, s.coeffs = ring, var, len(coeffs) - 1, tuple(coeffs)
        return s

    @classmethod
    def one(cls, ring: Ring, order: int, var: str = "x") -> "TruncSeries":
        return cls(ring, [ring.one()], order, var)

    def __getitem__(self, k: int) -> MultiPoly:
        return self.coeff(k)

    def coeff(self, k: int) -> MultiPoly:
        if not 0 <= k <= self.order:
            raise IndexError(f"[{self.var}^{k}] outside truncation order {self.order}")
        return self.coeffs[k]

    def truncate(self, order: int) -> "TruncSeries":
        if order > self.order:
            raise SeriesError("cannot raise the truncation order")
        return TruncSeries._raw(self.ring, self.coeffs[: order + 1], self.var)

    def _match(self, other: "TruncSeries"):
        if not isinstance(other, TruncSeries):
            raise TypeError(f"expected TruncSeries, got {type(other).__name__}")
        if other.var != self.var:
            raise SeriesError(f"series variable mismatch: {self.var} vs {other.var}")
        if other.ring != self.ring:
            raise SeriesError("series coefficient rings differ")
        return min(self.order, other.order)

    def __add__(self, other):
        if is_scalar(other) or isinstance(other, MultiPoly):
            cs = list(self.coeffs)
            cs[0] = cs[0] + other
            return TruncSeries._raw(self.ring, cs, self.var)
        n = self._match(other)
        return TruncSeries._raw(
            self.ring, [self.coeffs[k] + other.coeffs[k] for k in range(n + 1)], self.var
        )

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries._raw(self.ring, [-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if is_scalar(other) or isinstance(other, MultiPoly):
            return TruncSeries._raw(self.ring, [c * other for c in self.coeffs], self.var)
        n = self._match(other)
        a, b = self.coeffs, other.coeffs
        zero = self.ring.zero()
        out = []
        for k in range(n + 1):
            acc = zero
            for i in range(k + 1):
                if a[i] and b[k - i]:
                    acc = acc + a[i] * b[k - i]
            out.append(acc)
        return TruncSeries._raw(self.ring, out, self.var)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        result = TruncSeries.one(self.ring, self.order, self.var)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (
            self.var == other.var
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.var, self.coeffs))

    def __repr__(self):
        body = " + ".join(
            f"({c})*{self.var}^{k}" for k, c in enumerate(self.coeffs) if c
        )
        return f"TruncSeries({body or '0'}, order={self.order})"

    def derivative(self) -> "TruncSeries":
        """Formal derivative; the order drops by one."""
        if self.order == 0:
            return TruncSeries(self.ring, [self.ring.zero()], 0, self.var)
        return TruncSeries._raw(
            self.ring, [self.coeffs[k] * k for k in range(1, self.order + 1)], self.var
        )


def series_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    return a * b


def series_exp(s: TruncSeries) -> TruncSeries:
    """exp(s) for zero-constant ``s`` via ``n e_n = sum_k k s_k e_{n-k}``."""
    if s.coeffs[0]:
        raise SeriesError("exp needs a series with zero constant term")
    r = s.ring
    e = [r.one()]
    ks = [(k, s.coeffs[k] * k) for k in range(1, s.order + 1) if s.coeffs[k]]
    for n in range(1, s.order + 1):
        acc = r.zero()
        for k, sk in ks:
            if k > n:
                break
            if e[n - k]:
                acc = acc + sk * e[n - k]
        e.append(acc.scale(mpq(1, n)))
    return TruncSeries._raw(r, e, s.var)


def series_log(s: TruncSeries) -> TruncSeries:
    """log(s) for ``s`` with constant term 1: ``n l_n = n s_n - sum_{k<n} k l_k s_{n-k}``."""
    if s.coeffs[0] != 1:
        raise SeriesError("log needs a series with constant term 1")
    r = s.ring
    l = [r.zero()]
    for n in range(1, s.order + 1):
        acc = s.coeffs[n] * n
        for k in range(1, n):
            if l[k] and s.coeffs[n - k]:
                acc = acc - (l[k] * s.coeffs[n - k]).scale(k)
        l.append(acc.scale(mpq(1, n)))
    return TruncSeries._raw(r, l, s.var)


def series_sqrt(s: TruncSeries) -> TruncSeries:
    """Square root with constant term +1."""
    if s.coeffs[0] != 1:
        raise SeriesError("sqrt needs a series with constant term 1")
    r = s.ring
    q = [r.one()]
    half = mpq(1, 2)
    for n in range(1, s.order + 1):
        acc = s.coeffs[n]
        for k in range(1, n):
            if q[k] and q[n - k]:
                acc = acc - q[k] * q[n - k]
        q.append(acc.scale(half))
    return TruncSeries._raw(r, q, s.var)


def series_recip(s: TruncSeries) -> TruncSeries:
    """1/s; the constant term must be a nonzero rational or an invertible Laurent monomial."""
    c0 = s.coeffs[0]
    if len(c0) != 1:
        raise SeriesError("reciprocal needs a single-term constant coefficient")
    try:
        inv0 = c0 ** -1
    except Exception as exc:
        raise SeriesError(f"constant term {c0} is not invertible") from exc
    r = s.ring
    b = [inv0]
    for n in range(1, s.order + 1):
        acc = r.zero()
        for k in range(1, n + 1):
            if s.coeffs[k] and b[n - k]:
                acc = acc + s.coeffs[k] * b[n - k]
        b.append(-(acc * inv0))
    return TruncSeries._raw(r, b, s.var)


def coeff_extract(s: TruncSeries, k: int) -> MultiPoly:
    return s.coeff(k)


def from_poly(p: MultiPoly, var: str, order: int, series_var: str | None = None) -> TruncSeries:
    """View the ring variable ``var`` of ``p`` as a series variable."""
    parts = p.collect(var)
    if parts and min(parts) < 0:
        raise SeriesError(f"negative powers of {var} cannot form a power series")
    r = p.ring
    coeffs = [r.zero()] * (order + 1)
    for e, c in parts.items():
        if e <= order:
            coeffs[e] = c
    return TruncSeries(r, coeffs, order, series_var or var)


def Q_series(ring: Ring, values, var: str = "x") -> TruncSeries:
    """Series with scalar coefficients."""
    return TruncSeries(ring, [ring.const(Q(v)) for v in values], var=var)
