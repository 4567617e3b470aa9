"""Stirling numbers, their polynomial extension and weighted configurations.

A weighted configuration of ``{c_1..c_g}`` is an ordered sequence of ``b``
disjoint nonempty blocks covering the set, each block carrying a
nonnegative weight, the weights summing to ``w``. Its evaluation is
``(-1)^b / b * prod_i P_{w_i}(t_i)`` with ``t_i`` the sum of the block's
values. Summed over all configurations with ``0 <= w <= g-2`` this is zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from math import comb, factorial
from typing import Iterator, Sequence

from .exactalg import InterpolationError, MultiPoly, Q, Rational, Ring, fmt, interpolate_poly
from .graphlab.graphs import SplitMix64


@lru_cache(maxsize=None)
def _stirling_row(n: int) -> tuple[int, ...]:
    if n == 0:
        return (1,)
    prev = _stirling_row(n - 1)
    # x(x+1)...(x+n-1) = (previous product) * (x + n - 1)
    row = [0] * (n + 1)
    for k, c in enumerate(prev):
        row[k + 1] += c
        row[k] += (n - 1) * c
    return tuple(row)


def stirling1(n: int, k: int) -> int:
    """Unsigned Stirling number of the first kind ``[n, k]``."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    if n > 2000:
        raise ValueError("n too large for the cached table")
    return _stirling_row(n)[k]


PW_RING = Ring(("x",))


class PwValidationError(ArithmeticError):
    pass


@lru_cache(maxsize=None)
def pw_poly(w: int) -> MultiPoly:
    """Degree-``2w`` polynomial ``P_w`` with ``P_w(n) = [n, n-w]`` for ``n >= w``.

    Interpolated at ``n = w..3w``, checked at ``3w+1`` and ``3w+2``.
    """
    if w < 0:
        raise ValueError("w must be >= 0")
    points = [(n, stirling1(n, n - w)) for n in range(w, 3 * w + 3)]
    try:
        return interpolate_poly(points, 2 * w, PW_RING["x"])
    except InterpolationError as exc:
        raise PwValidationError(f"P_{w} is not a degree-{2 * w} polynomial: {exc}") from exc


@lru_cache(maxsize=None)
def _pw_dense(w: int) -> tuple[Rational, ...]:
    p = pw_poly(w)
    deg = p.degree("x") if p else 0
    return tuple(p.coeff({"x": e}) for e in range(deg + 1))


def pw_eval(w: int, t):
    """``P_w(t)`` for a rational or a polynomial ``t`` (Horner)."""
    coeffs = _pw_dense(w)
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * t + c
    return acc


@dataclass(frozen=True)
class WeightedConfiguration:
    """Blocks hold 1-based element labels, each block sorted ascending."""

    blocks: tuple[tuple[int, ...], ...]
    weights: tuple[int, ...]

    def __post_init__(self):
        if len(self.blocks) != len(self.weights):
            raise ValueError("one weight per block")
        if any(not blk for blk in self.blocks) or any(x < 0 for x in self.weights):
            raise ValueError("blocks must be nonempty and weights nonnegative")
        flat = [x for blk in self.blocks for x in blk]
        if len(flat) != len(set(flat)):
            raise ValueError("blocks overlap")

    @property
    def b(self) -> int:
        return len(self.blocks)

    @property
    def g(self) -> int:
        return sum(len(blk) for blk in self.blocks)

    @property
    def w(self) -> int:
        return sum(self.weights)

    def __str__(self):
        parts = ("{" + ",".join(f"c{x}" for x in blk) + f"}}^{wt}" for blk, wt in zip(self.blocks, self.weights))
        return " ".join(parts)


def _check_gw(g: int, w: int) -> None:
    if g < 2:
        raise ValueError(f"need g >= 2, got {g}")
    if not 0 <= w <= g - 2:
        raise ValueError(f"need 0 <= w <= g-2 = {g - 2}, got w={w}")


def set_partitions(g: int) -> Iterator[list[list[int]]]:
    """Unordered partitions of ``1..g``: each element joins an existing block
    or opens a new one, in that order."""

    def rec(x, blocks):
        if x > g:
            yield [list(blk) for blk in blocks]
            return
        for blk in blocks:
            blk.append(x)
            yield from rec(x + 1, blocks)
            blk.pop()
        blocks.append([x])
        yield from rec(x + 1, blocks)
        blocks.pop()

    yield from rec(1, [])


def ordered_partitions(g: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    for part in set_partitions(g):
        for perm in permutations(part):
            yield tuple(tuple(blk) for blk in perm)


def compositions(w: int, b: int) -> Iterator[tuple[int, ...]]:
    """Weak compositions of ``w`` into ``b`` parts, colexicographic order."""
    if b == 0:
        if w == 0:
            yield ()
        return
    if b == 1:
        yield (w,)
        return
    for last in range(w + 1):
        for head in compositions(w - last, b - 1):
            yield head + (last,)


def enum_weighted_configs(g: int, w: int) -> Iterator[WeightedConfiguration]:
    _check_gw(g, w)
    for blocks in ordered_partitions(g):
        for weights in compositions(w, len(blocks)):
            yield WeightedConfiguration(blocks, weights)


def stirling2(n: int, k: int) -> int:
    return sum((-1) ** (k - j) * comb(k, j) * j**n for j in range(k + 1)) // factorial(k)


def config_count(g: int, w: int) -> int:
    """Closed-form stream length: ``sum_b b! S(g,b) C(w+b-1, b-1)``."""
    return sum(factorial(b) * stirling2(g, b) * comb(w + b - 1, b - 1) for b in range(1, g + 1))


def config_eval(cfg: WeightedConfiguration, values: Sequence):
    """``(-1)^b / b * prod_i P_{w_i}(t_i)``; ``values[k-1]`` is ``c_k``."""
    if len(values) != cfg.g:
        raise ValueError(f"need {cfg.g} values, got {len(values)}")
    acc = Q((-1) ** cfg.b, cfg.b)
    for blk, wt in zip(cfg.blocks, cfg.weights):
        t = values[blk[0] - 1]
        for x in blk[1:]:
            t = t + values[x - 1]
        acc = acc * pw_eval(wt, t)
    return acc


def random_distinct_rationals(g: int, seed: int, bound: int = 1000, den_bound: int = 100) -> list[Rational]:
    rng = SplitMix64(seed)
    out: list[Rational] = []
    while len(out) < g:
        q = Q(rng.below(2 * bound + 1) - bound, rng.below(den_bound) + 1)
        if q not in out:
            out.append(q)
    return out


def symbolic_values(g: int) -> list[MultiPoly]:
    ring = Ring(tuple(f"c{k}" for k in range(1, g + 1)))
    return list(ring.gens)


@dataclass
class ChapmanReport:
    g: int
    w: int
    mode: str
    seed: int | None
    count: int
    expected_count: int
    total: object  # Rational or MultiPoly

    @property
    def passed(self) -> bool:
        return self.count == self.expected_count and self.total == 0

    def to_dict(self) -> dict:
        return {
            "g": self.g,
            "w": self.w,
            "mode": self.mode,
            "seed": self.seed,
            "configurations": self.count,
            "expected_configurations": self.expected_count,
            "sum": fmt(self.total) if not isinstance(self.total, MultiPoly) else str(self.total),
            "passed": self.passed,
        }


def chapman_check(g: int, w: int, mode: str = "random", seed: int = 0) -> ChapmanReport:
    """Sum of every configuration's evaluation; ``mode`` is ``random`` (seeded
    distinct rationals) or ``symbolic`` (free ``c_1..c_g``)."""
    _check_gw(g, w)
    if mode == "random":
        values = random_distinct_rationals(g, seed)
    elif mode == "symbolic":
        values = symbolic_values(g)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    # P_{w'}(t) per (block, weight) is shared by many configurations
    block_vals: dict[tuple[tuple[int, ...], int], object] = {}

    def pv(blk, wt):
        key = (blk, wt)
        if key not in block_vals:
            t = values[blk[0] - 1]
            for x in blk[1:]:
                t = t + values[x - 1]
            block_vals[key] = pw_eval(wt, t)
        return block_vals[key]

    total = Q(0)
    count = 0
    for blocks in ordered_partitions(g):
        b = len(blocks)
        inner = Q(0)
        for weights in compositions(w, b):
            prod = pv(blocks[0], weights[0])
            for blk, wt in zip(blocks[1:], weights[1:]):
                prod = prod * pv(blk, wt)
            inner = inner + prod
            count += 1
        total = total + inner * Q((-1) ** b, b)
    return ChapmanReport(g, w, mode, seed if mode == "random" else None, count, config_count(g, w), total)
