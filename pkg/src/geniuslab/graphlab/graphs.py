"""Regular bipartite graphs: representation, sampling and exhaustive enumeration."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .canon import canonical_form, enumerate_classes, transpose

MASK64 = (1 << 64) - 1


class SplitMix64:
    """SplitMix64 (Steele, Lea, Flood 2014): 64-bit state, add-and-mix output.

    Chosen for reproducibility across implementations; not cryptographic.
    """

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in ``[0, bound)`` by rejection."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            x = self.next()
            if x < limit:
                return x % bound

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]


@dataclass(frozen=True)
class BipartiteGraph:
    """``nside`` left and ``nside`` right vertices; ``rows[i]`` is left vertex
    ``i``'s neighbourhood as a bitmask (column 0 = most significant bit)."""

    nside: int
    r: int
    rows: tuple[int, ...]

    def __post_init__(self):
        n = self.nside
        if len(self.rows) != n:
            raise ValueError(f"expected {n} rows, got {len(self.rows)}")
        for i, row in enumerate(self.rows):
            if row < 0 or row >> n:
                raise ValueError(f"row {i} has bits outside {n} columns")
            if row.bit_count() != self.r:
                raise ValueError(f"row {i} has degree {row.bit_count()}, expected {self.r}")
        for c, col in enumerate(transpose(self.rows, n)):
            if col.bit_count() != self.r:
                raise ValueError(f"column {c} has degree {col.bit_count()}, expected {self.r}")

    @property
    def v(self) -> int:
        return 2 * self.nside

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[int]], r: int | None = None) -> "BipartiteGraph":
        n = len(matrix)
        rows = tuple(int("".join(str(int(b)) for b in row), 2) for row in matrix)
        if r is None:
            r = sum(matrix[0]) if n else 0
        return cls(n, r, rows)

    def matrix(self) -> list[list[int]]:
        n = self.nside
        return [[(row >> (n - 1 - c)) & 1 for c in range(n)] for row in self.rows]

    def neighbours(self, i: int) -> list[int]:
        n = self.nside
        return [c for c in range(n) if self.rows[i] >> (n - 1 - c) & 1]

    def edges(self) -> list[tuple[int, int]]:
        return [(i, c) for i in range(self.nside) for c in self.neighbours(i)]

    def permuted(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> "BipartiteGraph":
        """Relabel: new row ``i`` is old row ``row_perm[i]``, likewise for columns."""
        m = self.matrix()
        new = [[m[row_perm[i]][col_perm[c]] for c in range(self.nside)] for i in range(self.nside)]
        return BipartiteGraph.from_matrix(new, self.r)

    def swapped(self) -> "BipartiteGraph":
        return BipartiteGraph(self.nside, self.r, transpose(self.rows, self.nside))

    def canonical(self) -> "BipartiteGraph":
        return BipartiteGraph(self.nside, self.r, canonical_form(self.rows, self.nside))

    def is_connected(self) -> bool:
        n = self.nside
        if n == 0:
            return True
        seen_l, seen_r = {0}, set()
        stack = [("L", 0)]
        cols = transpose(self.rows, n)
        while stack:
            side, i = stack.pop()
            if side == "L":
                for c in self.neighbours(i):
                    if c not in seen_r:
                        seen_r.add(c)
                        stack.append(("R", c))
            else:
                for k in range(n):
                    if cols[i] >> (n - 1 - k) & 1 and k not in seen_l:
                        seen_l.add(k)
                        stack.append(("L", k))
        return len(seen_l) == n and len(seen_r) == n

    def to_text(self) -> str:
        """``nside=3 r=2 rows=110,101,011``."""
        n = self.nside
        rows = ",".join(format(row, f"0{n}b") for row in self.rows)
        return f"nside={n} r={self.r} rows={rows}"

    @classmethod
    def from_text(cls, text: str) -> "BipartiteGraph":
        fields = dict(part.split("=", 1) for part in text.split())
        n, r = int(fields["nside"]), int(fields["r"])
        rows = fields["rows"].split(",") if n else []
        if any(len(s) != n or set(s) - {"0", "1"} for s in rows):
            raise ValueError(f"malformed rows in {text!r}")
        return cls(n, r, tuple(int(s, 2) for s in rows))


class RetryBudgetExceeded(RuntimeError):
    pass


def rand_regular(nside: int, r: int, seed: int | SplitMix64, max_tries: int = 100_000) -> BipartiteGraph:
    """Pairing-model sample: match ``r`` stubs per vertex across sides uniformly,
    rejecting multi-edges. Deterministic given the seed."""
    if not 1 <= r <= nside:
        raise ValueError(f"need 1 <= r <= nside, got r={r}, nside={nside}")
    rng = seed if isinstance(seed, SplitMix64) else SplitMix64(seed)
    right = [c for c in range(nside) for _ in range(r)]
    total = len(right)
    for _ in range(max_tries):
        # forward Fisher-Yates; stopping at the first repeated edge rejects the
        # same pairings as shuffling fully and then checking
        rows = [0] * nside
        ok = True
        for idx in range(total):
            j = idx + rng.below(total - idx)
            right[idx], right[j] = right[j], right[idx]
            i = idx // r
            bit = 1 << (nside - 1 - right[idx])
            if rows[i] & bit:
                ok = False
                break
            rows[i] |= bit
        if ok:
            return BipartiteGraph(nside, r, tuple(rows))
    raise RetryBudgetExceeded(f"no simple graph after {max_tries} pairings")


def enum_regular(nside: int, r: int) -> list[BipartiteGraph]:
    """One canonical representative per isomorphism class (row/column
    permutations and side swap), in decreasing canonical order."""
    classes = enumerate_classes(nside, r)
    return [BipartiteGraph(nside, r, key) for key in sorted(classes, reverse=True)]


def enum_regular_with_counts(nside: int, r: int) -> list[tuple[BipartiteGraph, dict]]:
    classes = enumerate_classes(nside, r)
    return [(BipartiteGraph(nside, r, key), classes[key]) for key in sorted(classes, reverse=True)]


def iter_labeled(nside: int, r: int) -> Iterator[BipartiteGraph]:
    """Every labeled biadjacency matrix (brute force; small cases only)."""
    from itertools import combinations

    choices = [sum(1 << (nside - 1 - c) for c in comb) for comb in combinations(range(nside), r)]

    def rec(rows, colsum):
        i = len(rows)
        if i == nside:
            yield BipartiteGraph(nside, r, tuple(rows))
            return
        left = nside - i
        for row in choices:
            ok = True
            new = list(colsum)
            for c in range(nside):
                if row >> (nside - 1 - c) & 1:
                    new[c] += 1
                    if new[c] > r:
                        ok = False
                        break
            if ok and all(r - s <= left - 1 for s in new):
                yield from rec(rows + [row], new)

    yield from rec([], [0] * nside)
