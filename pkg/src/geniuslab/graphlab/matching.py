"""Matching counts and the sign of finite differences of d(i)."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from math import comb, factorial

import numpy as np
from gmpy2 import mpq

from .graphs import BipartiteGraph


class MatchingInvariantError(RuntimeError):
    pass


def mbar(v: int, i: int) -> int:
    """``i``-matchings of the complete graph on ``v`` vertices: ``v! / ((v-2i)! i! 2^i)``."""
    if v < 0 or v % 2 or not 0 <= 2 * i <= v:
        raise ValueError(f"need even v >= 0 and 0 <= 2i <= v, got v={v}, i={i}")
    return factorial(v) // (factorial(v - 2 * i) * factorial(i) * 2**i)


@lru_cache(maxsize=None)
def _popcounts(n: int) -> np.ndarray:
    return np.array([m.bit_count() for m in range(1 << n)])


def match_counts(g: BipartiteGraph) -> list[int]:
    """``[m_0, ..., m_nside]`` by DP over left vertices with a bitmask of used
    right vertices."""
    n = g.nside
    if n > 20:
        raise ValueError("bitmask DP is limited to nside <= 20")
    size = 1 << n
    dp = np.zeros(size, dtype=np.int64)
    dp[0] = 1
    masks = np.arange(size)
    for i in range(n):
        new = dp.copy()
        for c in g.neighbours(i):
            bit = 1 << c
            free = masks[(masks & bit) == 0]
            new[free | bit] += dp[free]
        dp = new
    pop = _popcounts(n)
    return [int(dp[pop == k].sum()) for k in range(n + 1)]


def match_counts_bruteforce(g: BipartiteGraph) -> list[int]:
    """Every edge subset, kept when no vertex repeats. Exponential; oracle only."""
    edges = g.edges()
    out = [0] * (g.nside + 1)
    for k in range(g.nside + 1):
        for sub in combinations(edges, k):
            ls = {e[0] for e in sub}
            rs = {e[1] for e in sub}
            if len(ls) == k and len(rs) == k:
                out[k] += 1
    return out


NEGATIVE, ZERO, POSITIVE = -1, 0, 1


def _q(m: list[int], v: int, r: int, t: int) -> mpq:
    """``exp(d(t)) = m_t (v-1)^t / (r^t mbar_t)``."""
    if m[t] == 0:
        raise MatchingInvariantError(f"m_{t} = 0: d({t}) is undefined")
    return mpq(m[t] * (v - 1) ** t, r**t * mbar(v, t))


def delta_sign(m: list[int], v: int, r: int, k: int, i: int) -> int:
    """Sign of ``Delta^k d(i)``, exactly.

    ``Delta^k d(i) = log prod_j q_{i+j}^((-1)^(k-j) C(k,j))``, so its sign is
    the sign of that product minus one.
    """
    nside = len(m) - 1
    if i < 0 or k < 0 or i + k > nside:
        raise ValueError(f"(k={k}, i={i}) outside 0 <= i, 0 <= k, i+k <= {nside}")
    num, den = mpq(1), mpq(1)
    for j in range(k + 1):
        e = comb(k, j)
        q = _q(m, v, r, i + j)
        if (k - j) % 2 == 0:
            num *= q**e
        else:
            den *= q**e
    if num > den:
        return POSITIVE
    if num < den:
        return NEGATIVE
    return ZERO


def delta_float(m: list[int], v: int, r: int, k: int, i: int, dps: int = 50):
    """High-precision float ``Delta^k d(i)`` from the logarithms (cross-check)."""
    import mpmath

    with mpmath.workdps(dps):
        def d(t):
            return mpmath.log(mpmath.mpf(m[t]) / mpmath.mpf(r) ** t) - mpmath.log(
                mpmath.mpf(mbar(v, t)) / mpmath.mpf(v - 1) ** t
            )

        return mpmath.fsum((-1) ** (k - j) * comb(k, j) * d(i + j) for j in range(k + 1))
