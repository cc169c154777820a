"""Compressed sequences of naturals: tau, enumeration, and interleaving.

A sequence is compressed by exhaustively (1) removing consecutive
repetitions and (2) deleting every entry strictly between positions i and j
whenever all entries of the window [i, j] lie between s_i and s_j (weakly
monotone bound in either direction).  The fixpoint is unique; sequences
equal to their own compression are called typical.

A bottom marker is representable as ``BOTTOM`` (infinity): it absorbs
sums and compares greater than every natural.
"""

from __future__ import annotations

import math
from itertools import combinations
from typing import Iterable, Iterator, Sequence

BOTTOM = math.inf

Entry = float  # naturals plus BOTTOM
Seq = tuple


def to_sequence(entries: Iterable[Entry]) -> Seq:
    out = tuple(entries)
    if not out:
        raise ValueError("sequences must be nonempty")
    for e in out:
        if e != BOTTOM and (not isinstance(e, int) or e < 0):
            raise ValueError(f"entries must be naturals or BOTTOM, got {e!r}")
    return out


def typical_of(s: Sequence[Entry]) -> Seq:
    """The unique fixpoint of exhaustively applying both operations."""
    cur = list(s)
    if not cur:
        raise ValueError("sequences must be nonempty")
    changed = True
    while changed:
        changed = False
        # remove consecutive repetitions in one sweep
        dedup = [cur[0]]
        for e in cur[1:]:
            if e != dedup[-1]:
                dedup.append(e)
        if len(dedup) != len(cur):
            changed = True
        cur = dedup
        # one application of the window operation, then rescan
        n = len(cur)
        done = False
        for i in range(n):
            if done:
                break
            for j in range(i + 2, n):
                window = cur[i:j + 1]
                lo, hi = cur[i], cur[j]
                if all(lo <= x <= hi for x in window) or all(lo >= x >= hi for x in window):
                    cur = cur[:i + 1] + cur[j:]
                    changed = True
                    done = True
                    break
    return tuple(cur)


def is_typical(s: Sequence[Entry]) -> bool:
    return tuple(s) == typical_of(s)


def shift(s: Sequence[Entry], z: Entry) -> Seq:
    """Entrywise sum with a constant; BOTTOM absorbs."""
    return tuple(e + z for e in s)


def enumerate_typical(k: int, _hard_cap: int | None = None) -> list[Seq]:
    """All typical sequences with entries in {0..k}, sorted by (length,
    entries).

    Generated by depth-first extension: every prefix of a typical sequence
    is typical, so extensions that create an applicable window operation
    are pruned.  The search terminates on its own; ``_hard_cap`` is a
    defensive bound (default 4k + 5) that raises if generation runs past
    roughly twice the expected maximum length.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k > 6:
        raise ValueError("enumeration limited to k <= 6")
    cap = _hard_cap if _hard_cap is not None else 4 * k + 5
    out: list[tuple[int, ...]] = []
    prefix: list[int] = []

    def extendable(nxt: int) -> bool:
        # appending nxt must not enable the window operation ending here
        m = len(prefix)
        if m and prefix[-1] == nxt:
            return False
        for i in range(m - 1):
            window = prefix[i:] + [nxt]
            lo, hi = prefix[i], nxt
            if all(lo <= x <= hi for x in window) or all(lo >= x >= hi for x in window):
                return False
        return True

    def walk():
        if len(prefix) > cap:
            raise RuntimeError("typical-sequence generation exceeded the defensive cap")
        if prefix:
            out.append(tuple(prefix))
        for v in range(k + 1):
            if extendable(v):
                prefix.append(v)
                walk()
                prefix.pop()

    walk()
    out.sort(key=lambda t: (len(t), t))
    return out


def extensions(s: Sequence[Entry], length: int) -> Iterator[Seq]:
    """All sequences obtained from s by repeating each entry at least once,
    with total length exactly ``length``."""
    m = len(s)
    if length < m:
        return
    # compositions of `length` into m positive parts via cut points
    for cuts in combinations(range(1, length), m - 1):
        bounds = (0,) + cuts + (length,)
        out = []
        for idx in range(m):
            out.extend([s[idx]] * (bounds[idx + 1] - bounds[idx]))
        yield tuple(out)


def interleave(s: Sequence[Entry], t: Sequence[Entry],
               max_length: int | None = None) -> set[Seq]:
    """The set of compressions of entrywise sums over equal-length
    extension pairs of s and t, capped at extension length ``max_length``
    (default len(s) + len(t)).

    Equal-length extension pairs correspond to monotone walks through the
    index grid with steps (1,0), (0,1), (1,1) and stays (0,0); stays only
    stutter the sum sequence and never change its compression, so the
    stutter-free walks (at most len(s) + len(t) - 1 positions) realize
    every result.  Raising the cap beyond that adds nothing, which the
    test suite verifies against the literal extension enumeration.
    """
    s = tuple(s)
    t = tuple(t)
    if not is_typical(s) or not is_typical(t):
        raise ValueError("interleaving is defined on typical sequences")
    m, n = len(s), len(t)
    cap = max_length if max_length is not None else m + n
    if cap < max(m, n):
        return set()
    out: set[Seq] = set()
    path: list[Entry] = []

    def walk(i: int, j: int, steps: int):
        path.append(s[i] + t[j])
        if i == m - 1 and j == n - 1:
            out.add(typical_of(path))
        elif steps < cap:
            if i + 1 < m:
                walk(i + 1, j, steps + 1)
            if j + 1 < n:
                walk(i, j + 1, steps + 1)
            if i + 1 < m and j + 1 < n:
                walk(i + 1, j + 1, steps + 1)
        path.pop()

    walk(0, 0, 1)
    return out


def format_sequence(s: Sequence[Entry]) -> str:
    return ",".join("_|_" if e == BOTTOM else str(int(e)) for e in s)


def parse_sequence(text: str) -> Seq:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    out: list[Entry] = []
    for p in parts:
        out.append(BOTTOM if p == "_|_" else int(p))
    return to_sequence(out)
