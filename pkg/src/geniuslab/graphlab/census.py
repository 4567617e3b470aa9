"""Positivity of the finite-difference ladder and whole-population censuses."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .graphs import BipartiteGraph, SplitMix64, enum_regular_with_counts, rand_regular
from .matching import NEGATIVE, delta_sign, match_counts

# The range as originally stated; t > nside gives m_t = 0 and an undefined log,
# so only i + k <= nside is evaluated.
STATED_RANGE = "k = 0,...,v and i = 0,...,v-k"
EVALUATED_RANGE = "k >= 0, i >= 0, i + k <= nside"
SAMPLER = "pairing model, multi-edges rejected (not exactly uniform over simple graphs); SplitMix64"


def meaningful_pairs(nside: int) -> list[tuple[int, int]]:
    return [(k, i) for k in range(nside + 1) for i in range(nside + 1 - k)]


def sign_ladder(m: list[int], v: int, r: int) -> dict[tuple[int, int], int]:
    return {(k, i): delta_sign(m, v, r, k, i) for k, i in meaningful_pairs(len(m) - 1)}


@dataclass
class PositivityResult:
    passed: bool
    violations: list[tuple[int, int]]
    m: list[int]


def positivity_of_counts(m: list[int], v: int, r: int) -> PositivityResult:
    ladder = sign_ladder(m, v, r)
    bad = [ki for ki, s in ladder.items() if s == NEGATIVE]
    return PositivityResult(not bad, bad, list(m))


def positivity(g: BipartiteGraph) -> PositivityResult:
    """Passes iff every evaluated ``Delta^k d(i)`` is non-negative."""
    return positivity_of_counts(match_counts(g), g.v, g.r)


@dataclass
class Witness:
    graph: BipartiteGraph
    connected: bool
    violations: list[tuple[int, int]]
    m: list[int]
    labeled: int | None = None

    def to_dict(self) -> dict:
        out = {
            "graph": self.graph.to_text(),
            "connected": self.connected,
            "violations": [list(ki) for ki in self.violations],
            "m": self.m,
        }
        if self.labeled is not None:
            out["labeled"] = self.labeled
        return out


@dataclass
class CensusReport:
    mode: str
    nside: int
    r: int
    total: int
    passing: int
    failing: int
    witnesses: list[Witness]
    seed: int | None = None
    labeled_total: int | None = None
    labeled_failing: int | None = None
    extra: dict = field(default_factory=dict)

    @property
    def v(self) -> int:
        return 2 * self.nside

    @property
    def failing_fraction(self) -> float:
        return self.failing / self.total if self.total else 0.0

    @property
    def status(self) -> str:
        return "fail" if self.failing else "pass"

    def to_dict(self) -> dict:
        out = {
            "mode": self.mode,
            "v": self.v,
            "nside": self.nside,
            "r": self.r,
            "total": self.total,
            "passing": self.passing,
            "failing": self.failing,
            "failing_fraction": self.failing_fraction,
            "witnesses": [w.to_dict() for w in self.witnesses],
            "stated_range": STATED_RANGE,
            "evaluated_range": EVALUATED_RANGE,
        }
        if self.mode == "exhaustive":
            out["unit"] = "isomorphism classes"
            out["labeled_total"] = self.labeled_total
            out["labeled_failing"] = self.labeled_failing
        else:
            out["unit"] = "sampled labeled graphs"
            out["sampler"] = SAMPLER
            out["seed"] = self.seed
        out.update(self.extra)
        return out


def _check_rows(args):
    nside, r, rows = args
    g = BipartiteGraph(nside, r, rows)
    res = positivity(g)
    return rows, res.passed, res.violations, res.m


def _map(func, items, threads: int):
    if threads <= 1 or len(items) < 2:
        return [func(x) for x in items]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(func, items, chunksize=max(1, len(items) // (4 * threads))))


def census(
    mode: str,
    nside: int,
    r: int,
    count: int = 0,
    seed: int = 0,
    threads: int = 1,
) -> CensusReport:
    """Run positivity over every isomorphism class (``exhaustive``) or over
    ``count`` seeded pairing-model draws (``sample``)."""
    if mode == "exhaustive":
        classes = enum_regular_with_counts(nside, r)
        results = _map(_check_rows, [(nside, r, g.rows) for g, _ in classes], threads)
        witnesses = []
        labeled_total = labeled_failing = 0
        for (g, info), (_, ok, bad, m) in zip(classes, results):
            labeled_total += info["labeled"]
            if not ok:
                labeled_failing += info["labeled"]
                witnesses.append(Witness(g, g.is_connected(), bad, m, info["labeled"]))
        failing = len(witnesses)
        return CensusReport(
            mode, nside, r, len(classes), len(classes) - failing, failing, witnesses,
            labeled_total=labeled_total, labeled_failing=labeled_failing,
        )
    if mode == "sample":
        if count < 1:
            raise ValueError("sample mode needs count >= 1")
        rng = SplitMix64(seed)
        # drawing stays sequential so the stream is independent of thread count
        graphs = [rand_regular(nside, r, rng) for _ in range(count)]
        results = _map(_check_rows, [(nside, r, g.rows) for g in graphs], threads)
        witnesses = [
            Witness(g, g.is_connected(), bad, m)
            for g, (_, ok, bad, m) in zip(graphs, results)
            if not ok
        ]
        failing = len(witnesses)
        return CensusReport(mode, nside, r, count, count - failing, failing, witnesses, seed=seed)
    raise ValueError(f"unknown census mode {mode!r}")
