"""Canonical forms and orderly enumeration of regular bipartite biadjacency matrices.

Rows are ``nside``-bit integers; column 0 is the most significant bit, so
comparing row integers compares rows lexicographically.

The canonical form of a matrix is the arrangement (row permutation, column
permutation) whose row-major reading is lexicographically largest. In that
arrangement both the rows and the columns are sorted non-increasingly, so
enumerating only doubly sorted matrices reaches every isomorphism class.
"""

from __future__ import annotations

from math import factorial
from typing import Iterator, Sequence


def transpose(rows: Sequence[int], n: int) -> tuple[int, ...]:
    out = []
    for c in range(n):
        bit = 1 << (n - 1 - c)
        v = 0
        for r in rows:
            v = (v << 1) | (1 if r & bit else 0)
        out.append(v)
    return tuple(out)


def _row_reading(rowmask: int, classes: tuple[int, ...], n: int) -> tuple[int, tuple[int, ...]]:
    """Best reading of one row given ordered column classes (as bitmasks).

    Returns the row's integer value under the best column order inside each
    class (ones first) and the refined class list.
    """
    value = 0
    refined = []
    for cls in classes:
        size = cls.bit_count()
        ones = (rowmask & cls)
        k = ones.bit_count()
        value = (value << size) | (((1 << k) - 1) << (size - k))
        if k and k < size:
            refined.append(ones)
            refined.append(cls & ~ones)
        else:
            refined.append(cls)
    return value, tuple(refined)


def canonical_rc(rows: Sequence[int], n: int) -> tuple[tuple[int, ...], int]:
    """Canonical form under independent row and column permutations.

    Returns ``(canonical rows, |automorphism group|)`` where the group is the
    set of (row perm, column perm) pairs fixing the matrix.
    """
    full = (1 << n) - 1
    # state: (used row bitmask, column classes) -> number of row sequences
    states: dict[tuple[int, tuple[int, ...]], int] = {(0, (full,)): 1}
    canon = []
    nrows = len(rows)
    for _ in range(nrows):
        best = -1
        nxt: dict[tuple[int, tuple[int, ...]], int] = {}
        for (used, classes), mult in states.items():
            for i in range(nrows):
                if used >> i & 1:
                    continue
                val, refined = _row_reading(rows[i], classes, n)
                if val < best:
                    continue
                if val > best:
                    best = val
                    nxt = {}
                key = (used | (1 << i), refined)
                nxt[key] = nxt.get(key, 0) + mult
        canon.append(best)
        states = nxt
    aut = 0
    for (_, classes), mult in states.items():
        colfix = 1
        for cls in classes:
            colfix *= factorial(cls.bit_count())
        aut += mult * colfix
    # each surviving state yields the same matrix; column freedom inside final
    # classes is identical across states
    return tuple(canon), aut


def canonical_form(rows: Sequence[int], n: int) -> tuple[int, ...]:
    """Canonical form under row perms, column perms and side swap."""
    a, _ = canonical_rc(rows, n)
    b, _ = canonical_rc(transpose(rows, n), n)
    return max(a, b)


def doubly_sorted(n: int, r: int) -> Iterator[tuple[int, ...]]:
    """All ``n x n`` 0/1 matrices with line sums ``r`` whose rows and columns
    are both non-increasing. Every isomorphism class has a member here."""
    if not 0 <= r <= n:
        return

    def rec(rows, classes, prev, left):
        # classes: list of (start, size, residual) in column order
        if left == 0:
            yield tuple(rows)
            return
        # columns whose residual equals the remaining rows are forced to 1
        yield from place(rows, classes, prev, left, 0, 0, [], r)

    def place(rows, classes, prev, left, idx, value, newclasses, need):
        if idx == len(classes):
            if need == 0 and value <= prev:
                yield from rec(rows + [value], newclasses, value, left - 1)
            return
        start, size, resid = classes[idx]
        rest_cap = sum(s for _, s, res in classes[idx + 1 :] if res > 0)
        lo = size if resid == left else 0
        hi = size if resid > 0 else 0
        hi = min(hi, need)
        lo = max(lo, need - rest_cap)
        for k in range(hi, lo - 1, -1):
            bits = ((1 << k) - 1) << (size - k)
            v = (value << size) | bits
            # prune on the row order: compare the prefix with prev's prefix
            shift = n - (start + size)
            if v > (prev >> shift):
                continue
            nc = list(newclasses)
            if k:
                nc.append((start, k, resid - 1))
            if k < size:
                nc.append((start + k, size - k, resid))
            yield from place(rows, classes, prev, left, idx + 1, v, nc, need - k)

    yield from rec([], [(0, n, r)], (1 << n) - 1, n)


def enumerate_classes(n: int, r: int) -> dict[tuple[int, ...], dict]:
    """Isomorphism classes (row/col perms plus side swap) of r-regular n+n graphs.

    Values record ``aut_rc`` for the canonical arrangement, whether the class
    is self-dual (equivalent to its transpose) and the number of labeled
    biadjacency matrices it accounts for.
    """
    seen_rc: dict[tuple[int, ...], int] = {}
    for m in doubly_sorted(n, r):
        c, aut = canonical_rc(m, n)
        if c not in seen_rc:
            seen_rc[c] = aut
    out: dict[tuple[int, ...], dict] = {}
    nf2 = factorial(n) ** 2
    for c, aut in seen_rc.items():
        t, aut_t = canonical_rc(transpose(c, n), n)
        key = max(c, t)
        if key in out:
            continue
        self_dual = t == c
        labeled = nf2 // aut if self_dual else nf2 // aut + nf2 // aut_t
        out[key] = {"aut_rc": aut, "self_dual": self_dual, "labeled": labeled}
    return out
