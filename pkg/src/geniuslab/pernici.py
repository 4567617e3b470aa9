"""Pernici's expansion of matchings in the loop-free ideal and its log identities.

Pipeline::

    T_r(x) -> u_s(r) = [x^s] T_r   (see U_FACTOR)
           -> M_j = [x^j] exp(n r x - sum_{s>=2} n u_s/s (-x)^s)
           -> j! M_j / (n^j r^j) = 1 + sum_h a_h(r, j) n^-h
           -> a_h(r, j) as a polynomial in j (exact interpolation, validated)
           -> [j^k n^-h] log(1 + sum_h a_h n^-h)

``r`` is either a Laurent variable or a fixed rational; ``n^-1`` is carried
by the ordinary variable ``n_inv``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial
from typing import Sequence

from gmpy2 import mpq

from .exactalg import (
    InterpolationError,
    MultiPoly,
    Q,
    Rational,
    Ring,
    TruncSeries,
    fmt,
    interpolate_poly,
    series_exp,
    series_log,
    series_recip,
    series_sqrt,
)

SYMBOLIC = "sym"


def pernici_ring(free_u: int = 0, n_c: int = 0) -> Ring:
    """``j, n, n_inv, r`` plus optional free ``u_2..u_{free_u}`` and ``c_1..c_{n_c}``."""
    names = ["j", "n", "n_inv", "r"]
    names += [f"u{s}" for s in range(2, free_u + 1)]
    names += [f"c{i}" for i in range(1, n_c + 1)]
    return Ring(names, laurent=["r"])


def _r_value(ring: Ring, r) -> MultiPoly:
    if r == SYMBOLIC or r is None:
        return ring["r"]
    r = Q(r)
    if r == 1:
        raise ValueError("r = 1 makes T_r singular")
    return ring.const(r)


@dataclass(frozen=True)
class PerniciParams:
    r: object = SYMBOLIC  # "sym" or a rational
    H: int = 4
    Jdeg: int | None = None  # highest j-power inspected; defaults to 2H
    jmax_sample: int | None = None  # defaults to 2H + 4
    u_factor: int | None = None  # None: U_FACTOR

    def __post_init__(self):
        if self.H < 1:
            raise ValueError("H must be >= 1")
        if self.Jdeg is None:
            object.__setattr__(self, "Jdeg", 2 * self.H)
        if self.jmax_sample is None:
            object.__setattr__(self, "jmax_sample", 2 * self.H + 4)
        if self.jmax_sample < 2 * self.H + 2:
            raise ValueError(
                f"jmax_sample must be >= 2H+2 = {2 * self.H + 2} to interpolate and validate"
            )
        if self.r != SYMBOLIC:
            r = Q(self.r)
            if r == 1:
                raise ValueError("r = 1 makes T_r singular")
            object.__setattr__(self, "r", r)

    @property
    def symbolic(self) -> bool:
        return self.r == SYMBOLIC

    def label(self) -> str:
        return "sym" if self.symbolic else fmt(self.r)


# -- T_r, u_s, M_j -------------------------------------------------------------


def t_series(r, order: int, ring: Ring | None = None) -> TruncSeries:
    """``T_r = 2(r-1) / (2(r-1) - r + r sqrt(1 - 4x(r-1)))`` to ``x^order``.

    For symbolic ``r`` the removable factor ``r-1`` is cancelled by hand:
    ``T_r = 1 / (1 + r Qr(x))`` with ``Qr = (sqrt(1 - 4(r-1)x) - 1) / (2(r-1))``,
    whose ``x^k`` coefficient is ``c_k (r-1)^(k-1) / 2`` for
    ``sqrt(1 - 4t) = 1 + sum_k c_k t^k``.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    ring = ring or pernici_ring()
    rv = _r_value(ring, r)
    if r == SYMBOLIC or r is None:
        sq = series_sqrt(TruncSeries(ring, [1, -4], order))
        rm1 = rv - 1
        qcoef = [ring.zero()] + [
            (rm1 ** (k - 1)) * sq[k].scale(mpq(1, 2)) for k in range(1, order + 1)
        ]
        den = TruncSeries(ring, qcoef, order) * rv + 1
        return series_recip(den)
    rq = Q(r)
    inner = series_sqrt(TruncSeries(ring, [1, -4 * (rq - 1)], order))
    den = inner * rq + (2 * (rq - 1) - rq)
    return series_recip(den) * (2 * (rq - 1))


# u_s = U_FACTOR * [x^s] T_r. With factor 1, u_1 = r matches the separate
# n r x term of M_j, M_2 and M_3 equal the exact 2- and 3-matching counts of
# any r-regular bipartite graph, and the k = h+1 log slice takes the stated
# value. A factor of 2 breaks all three; it is kept selectable for reports.
U_FACTOR = 1


def u_coeffs(r, smax: int, ring: Ring | None = None, factor: int | None = None) -> list[MultiPoly]:
    """``[u_1, ..., u_smax]`` with ``u_s = factor * [x^s] T_r``."""
    if smax < 1:
        raise ValueError("smax must be >= 1")
    t = t_series(r, smax, ring)
    f = U_FACTOR if factor is None else factor
    return [t[s].scale(f) for s in range(1, smax + 1)]


def m_j(j: int, rv: MultiPoly, u: Sequence[MultiPoly]) -> MultiPoly:
    """``M_j`` as a polynomial in ``n``; ``u[s]`` is ``u_s`` (``u[0]``, ``u[1]`` unused).

    Terms with ``s > j`` cannot reach ``x^j``; entries of ``u`` past its end
    are treated as absent.
    """
    if j < 1:
        raise ValueError("j must be >= 1")
    ring = rv.ring
    n = ring["n"]
    coeffs = [ring.zero(), n * rv]
    for s in range(2, j + 1):
        us = u[s] if s < len(u) else ring.zero()
        # -(n u_s / s) (-x)^s
        coeffs.append((n * us).scale(mpq(-((-1) ** s), s)))
    return series_exp(TruncSeries(ring, coeffs, j))[j]


# -- a_h(r, j) -----------------------------------------------------------------


@dataclass
class ATable:
    H: int
    entries: dict[tuple[int, int], MultiPoly]
    jpolys: dict[int, MultiPoly]
    ring: Ring = field(repr=False)

    def at(self, h: int, jshift: int = 0) -> MultiPoly:
        """``a_h(r, j - jshift)`` as a polynomial in ``j``; ``a_0 = 1``."""
        if h == 0:
            return self.ring.one()
        p = self.jpolys[h]
        if jshift:
            p = p.subs({"j": self.ring["j"] - jshift})
        return p


def _u_list(params: PerniciParams, ring: Ring, smax: int, free_u: bool) -> tuple[MultiPoly, list]:
    rv = _r_value(ring, params.r)
    if free_u:
        u = [ring.zero(), rv]
        u += [ring[f"u{s}"] for s in range(2, params.H + 2)]
        return rv, u
    return rv, [ring.zero()] + u_coeffs(params.r, smax, ring, params.u_factor)


def a_table(params: PerniciParams, ring: Ring | None = None, free_u: bool = False) -> ATable:
    """Tabulate ``a_h(r, j)`` for ``j = 1..jmax_sample`` and interpolate in ``j``.

    ``a_h`` only involves ``u_2..u_{h+1}``, so in ``free_u`` mode the free
    variables ``u_2..u_{H+1}`` cover every extracted coefficient.
    """
    H, jmax = params.H, params.jmax_sample
    if ring is None:
        ring = pernici_ring(free_u=H + 1 if free_u else 0)
    rv, u = _u_list(params, ring, jmax, free_u)
    entries: dict[tuple[int, int], MultiPoly] = {}
    for j in range(1, jmax + 1):
        parts = m_j(j, rv, u).collect("n")
        scale = factorial(j)
        inv_rj = ring["r"] ** -j if params.symbolic else ring.const(Q(1) / params.r**j)
        if parts.get(j) is None or (parts[j] * inv_rj).scale(scale) != 1:
            raise InterpolationError(f"leading n^{j} coefficient of j! M_j / (n r)^j is not 1")
        for h in range(1, H + 1):
            c = parts.get(j - h, ring.zero()) if h <= j - 1 else ring.zero()
            entries[(h, j)] = (c * inv_rj).scale(scale)
    jvar = ring["j"]
    jpolys = {}
    for h in range(1, H + 1):
        pts = [(j, entries[(h, j)]) for j in range(1, jmax + 1)]
        jpolys[h] = interpolate_poly(pts, 2 * h, jvar)
    return ATable(H, entries, jpolys, ring)


# -- log identities ------------------------------------------------------------


def _log_slices(series: TruncSeries) -> dict[tuple[int, int], MultiPoly]:
    lg = series_log(series)
    out = {}
    for h in range(lg.order + 1):
        for k, c in lg[h].collect("j").items():
            out[(k, h)] = c
    return out


def log_coeffs(at: ATable, params: PerniciParams) -> dict[tuple[int, int], MultiPoly]:
    """Nonzero ``[j^k n^-h] log(1 + sum_{s<=H} a_s(r, j) n^-s)``."""
    H = params.H
    s = TruncSeries(at.ring, [at.at(h) for h in range(H + 1)], H, var="n_inv")
    return _log_slices(s)


def expected_17(ring: Ring, r, h: int) -> MultiPoly:
    """``(1/r^h - 2) / ((h+1) h)``."""
    rv = ring["r"] ** -h if r == SYMBOLIC else ring.const(1 / Q(r) ** h)
    return (rv - 2).scale(mpq(1, (h + 1) * h))


@dataclass
class SliceResult:
    k: int
    h: int
    kind: str  # "vanish" (k >= h+2) or "value" (k = h+1)
    got: str
    expected: str | None
    ok: bool | None  # None: recorded only

    def to_dict(self) -> dict:
        return {
            "k": self.k, "h": self.h, "kind": self.kind,
            "got": self.got, "expected": self.expected, "ok": self.ok,
        }


@dataclass
class IdentityReport:
    check: str
    params: dict
    slices: list[SliceResult]
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(s.ok is not False for s in self.slices)

    @property
    def witnesses(self) -> list[dict]:
        return [s.to_dict() for s in self.slices if s.ok is False]

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def slice_table(self) -> list[dict]:
        return [s.to_dict() for s in self.slices]

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "params": self.params,
            "status": self.status,
            "slices": self.slice_table(),
            "witnesses": self.witnesses,
            **self.extra,
        }


def _judge(
    slices: dict[tuple[int, int], MultiPoly],
    params: PerniciParams,
    ring: Ring,
    assert_value: bool = True,
) -> list[SliceResult]:
    out = []
    zero = ring.zero()
    for h in range(1, params.H + 1):
        kmax = max([params.Jdeg] + [k for (k, hh) in slices if hh == h])
        got = slices.get((h + 1, h), zero)
        exp = expected_17(ring, params.r, h)
        out.append(
            SliceResult(h + 1, h, "value", str(got), str(exp), (got == exp) if assert_value else None)
        )
        for k in range(h + 2, kmax + 1):
            g = slices.get((k, h), zero)
            out.append(SliceResult(k, h, "vanish", str(g), "0", g.is_zero))
    return out


def _params_dict(params: PerniciParams) -> dict:
    out = {"r": params.label(), "H": params.H, "Jdeg": params.Jdeg, "jmax_sample": params.jmax_sample}
    if params.u_factor not in (None, U_FACTOR):
        out["u_factor"] = params.u_factor
    return out


def check_16_17(params: PerniciParams, at: ATable | None = None) -> IdentityReport:
    """``[j^k n^-h] log(...) = 0`` for ``k >= h+2`` and the ``k = h+1`` value."""
    at = at or a_table(params)
    slices = log_coeffs(at, params)
    extra = {
        "a_h_at_j1_zero": all(at.entries[(h, 1)].is_zero for h in range(1, params.H + 1)),
        "h0_slice_zero": all(c.is_zero for (k, h), c in slices.items() if h == 0),
    }
    return IdentityReport("pernici", _params_dict(params), _judge(slices, params, at.ring), extra)


def check_16_free_u(params: PerniciParams) -> IdentityReport:
    """The vanishing half with ``u_2..u_{H+1}`` left as free variables.

    The ``k = h+1`` slice is recorded but not asserted.
    """
    at = a_table(params, free_u=True)
    slices = log_coeffs(at, params)
    results = _judge(slices, params, at.ring, assert_value=False)
    return IdentityReport(
        "pernici-free-u", {**_params_dict(params), "free_u": [f"u{s}" for s in range(2, params.H + 2)]},
        results,
    )


# -- Awesome conjecture --------------------------------------------------------


@dataclass(frozen=True)
class AwesomeSpec:
    terms: tuple[tuple[str, int], ...]  # (c name, z)
    H: int

    def __post_init__(self):
        zs = [z for _, z in self.terms]
        if len(set(zs)) != len(zs):
            raise ValueError("z_i must be distinct")
        for name, z in self.terms:
            if not isinstance(z, int) or z < 1:
                raise ValueError(f"z for {name} must be a positive integer")
            if z > self.H:
                raise ValueError(f"z = {z} > H = {self.H} cannot contribute within the truncation")

    @classmethod
    def from_z(cls, zs: Sequence[int], H: int) -> "AwesomeSpec":
        return cls(tuple((f"c{i}", int(z)) for i, z in enumerate(zs, start=1)), H)


def falling(jvar: MultiPoly, z: int) -> MultiPoly:
    """``j (j-1) ... (j-z+1)``."""
    out = jvar.ring.one()
    for t in range(z):
        out = out * (jvar - t)
    return out


def awesome_series(spec: AwesomeSpec, params: PerniciParams, at: ATable) -> TruncSeries:
    ring, H = at.ring, params.H
    jv = ring["j"]
    coeffs = [at.at(s) for s in range(H + 1)]
    for name, z in spec.terms:
        c = ring[name]
        rz = ring["r"] ** -z if params.symbolic else ring.const(1 / params.r**z)
        pre = c * falling(jv, z) * rz
        for s in range(H + 1 - z):
            coeffs[s + z] = coeffs[s + z] + pre * at.at(s, jshift=z)
    return TruncSeries(ring, coeffs, H, var="n_inv")


def awesome_check(spec: AwesomeSpec, params: PerniciParams) -> IdentityReport:
    """Both identities for ``log F`` identically in the symbolic ``c_i``."""
    if spec.H != params.H:
        raise ValueError("spec.H and params.H differ")
    ring = pernici_ring(n_c=max([0] + [int(n[1:]) for n, _ in spec.terms]))
    at = a_table(params, ring=ring)
    slices = _log_slices(awesome_series(spec, params, at))
    report = IdentityReport("awesome", _params_dict(params), _judge(slices, params, ring))
    if spec.terms:
        report.params = {**report.params, "z": [z for _, z in spec.terms]}
    return report


def specialize_report_slices(report: IdentityReport) -> list[tuple]:
    """Slice table as plain tuples, for cross-report comparison."""
    return [(s.k, s.h, s.kind, s.got, s.expected, s.ok) for s in report.slices]


def a_h_closed_form(h: int, j: int, rv, u: Sequence) -> Rational | MultiPoly:
    """Independent oracle: ``a_h(r, j)`` by summing over partitions of ``j``.

    A partition with part multiplicities ``m_s`` contributes to ``n^{#parts}``;
    ``a_h`` collects the partitions with ``j - h`` parts.
    """
    from itertools import product

    total = 0
    # non-unit parts s >= 2 with sum (s-1) m_s = h
    for ms in product(*(range(h // (s - 1) + 1) for s in range(2, h + 2))):
        if sum((s - 1) * m for s, m in zip(range(2, h + 2), ms)) != h:
            continue
        size = sum(s * m for s, m in zip(range(2, h + 2), ms))
        m1 = j - size
        if m1 < 0:
            continue
        term = mpq(factorial(j), factorial(m1)) * rv ** (m1 - j)
        for s, m in zip(range(2, h + 2), ms):
            w = u[s] * mpq(-((-1) ** s), s)
            term = term * w**m / factorial(m)
        total = total + term
    return total
