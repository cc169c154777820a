import itertools
import math
import random

import pytest

from fbranch.typseq import (
    BOTTOM,
    enumerate_typical,
    extensions,
    format_sequence,
    interleave,
    is_typical,
    parse_sequence,
    shift,
    typical_of,
)


def brute_force_typical(s):
    """Independent oracle: breadth-first closure under single operations;
    the fixpoint (a sequence admitting no operation) must be unique."""
    def single_steps(seq):
        for i in range(len(seq) - 1):
            if seq[i] == seq[i + 1]:
                yield seq[:i] + seq[i + 1:]
        for i in range(len(seq)):
            for j in range(i + 2, len(seq)):
                win = seq[i:j + 1]
                if all(seq[i] <= x <= seq[j] for x in win) or all(seq[i] >= x >= seq[j] for x in win):
                    yield seq[:i + 1] + seq[j:]

    frontier = {tuple(s)}
    fixpoints = set()
    seen = set(frontier)
    while frontier:
        nxt = set()
        for seq in frontier:
            steps = list(single_steps(seq))
            if not steps:
                fixpoints.add(seq)
            for t in steps:
                if t not in seen:
                    seen.add(t)
                    nxt.add(t)
        frontier = nxt
    assert len(fixpoints) == 1
    return fixpoints.pop()


def test_typical_examples():
    assert typical_of((3, 3, 3)) == (3,)
    assert typical_of((1, 2, 3)) == (1, 3)
    # frozen from the exhaustive-closure oracle; note the full window
    # (1,...,3) bounds the interior, so everything between collapses
    assert brute_force_typical((1, 1, 2, 2, 1, 3)) == (1, 3)
    assert typical_of((1, 1, 2, 2, 1, 3)) == (1, 3)


def test_typical_matches_oracle_on_random_sequences():
    rng = random.Random(23)
    for _ in range(300):
        s = tuple(rng.randint(0, 3) for _ in range(rng.randint(1, 7)))
        assert typical_of(s) == brute_force_typical(s)


def test_typical_idempotent_and_bounds():
    rng = random.Random(5)
    for _ in range(500):
        s = tuple(rng.randint(0, 6) for _ in range(rng.randint(1, 12)))
        t = typical_of(s)
        assert typical_of(t) == t
        assert min(t) == min(s) and max(t) == max(s)
        assert len(t) <= len(s)


def test_typical_concat_law():
    rng = random.Random(6)
    for _ in range(300):
        a = tuple(rng.randint(0, 4) for _ in range(rng.randint(1, 6)))
        b = tuple(rng.randint(0, 4) for _ in range(rng.randint(1, 6)))
        assert typical_of(a + b) == typical_of(typical_of(a) + typical_of(b))


def test_shift():
    assert shift((0, 1), 2) == (2, 3)
    assert shift((4, 2), 0) == (4, 2)
    rng = random.Random(7)
    for _ in range(1000):
        s = tuple(rng.randint(0, 5) for _ in range(rng.randint(1, 10)))
        z = rng.randint(0, 4)
        assert typical_of(shift(s, z)) == shift(typical_of(s), z)


def test_enumerate_typical_k1():
    assert enumerate_typical(1) == [(0,), (1,), (0, 1), (1, 0), (0, 1, 0), (1, 0, 1)]


def test_enumerate_typical_against_brute_force():
    for k in range(0, 3):
        max_len = 2 * k + 1
        brute = set()
        for ln in range(1, max_len + 2):  # one beyond the bound, must add nothing
            for seq in itertools.product(range(k + 1), repeat=ln):
                if is_typical(seq):
                    assert len(seq) <= max_len
                    brute.add(seq)
        assert set(enumerate_typical(k)) == brute


def test_enumerate_typical_bounds():
    for k in range(0, 5):
        seqs = enumerate_typical(k)
        assert all(len(s) <= 2 * k + 1 for s in seqs)
        assert len(seqs) <= math.ceil(8 / 3 * 2 ** (2 * k))
        assert len(set(seqs)) == len(seqs)


def test_extensions():
    assert set(extensions((1, 2), 3)) == {(1, 1, 2), (1, 2, 2)}
    assert list(extensions((5,), 4)) == [(5, 5, 5, 5)]
    assert list(extensions((1, 2, 3), 2)) == []


def brute_force_interleave(s, t, cap):
    """Literal definition: equal-length extension pairs up to the cap."""
    out = set()
    for ln in range(max(len(s), len(t)), cap + 1):
        for se in extensions(s, ln):
            for te in extensions(t, ln):
                out.add(typical_of(tuple(a + b for a, b in zip(se, te))))
    return out


def test_interleave_examples():
    assert interleave((1,), (2,)) == {(3,)}
    assert interleave((0, 2), (1,)) == {(1, 3)}


def test_interleave_commutative():
    rng = random.Random(9)
    for _ in range(50):
        s = typical_of(tuple(rng.randint(0, 3) for _ in range(rng.randint(1, 5))))
        t = typical_of(tuple(rng.randint(0, 3) for _ in range(rng.randint(1, 5))))
        assert interleave(s, t) == interleave(t, s)


def test_interleave_matches_literal_definition():
    rng = random.Random(10)
    for _ in range(40):
        s = typical_of(tuple(rng.randint(0, 2) for _ in range(rng.randint(1, 3))))
        t = typical_of(tuple(rng.randint(0, 2) for _ in range(rng.randint(1, 3))))
        cap = len(s) + len(t)
        assert interleave(s, t) == brute_force_interleave(s, t, cap)
        # doubling the literal cap must not add results either
        assert interleave(s, t) == brute_force_interleave(s, t, 2 * cap)


def test_interleave_requires_typical():
    with pytest.raises(ValueError):
        interleave((1, 1), (2,))


def test_bottom_absorbs():
    assert shift((BOTTOM, 1), 3) == (BOTTOM, 4)
    assert BOTTOM > 10 ** 9
    assert interleave((BOTTOM,), (0, 1)) == {(BOTTOM,)}
    assert interleave((BOTTOM,), (BOTTOM,)) == {(BOTTOM,)}


def test_format_parse():
    assert format_sequence((1, 2, 3)) == "1,2,3"
    assert format_sequence((BOTTOM,)) == "_|_"
    assert parse_sequence("1, 2,3") == (1, 2, 3)
    assert parse_sequence("_|_,0") == (BOTTOM, 0)


def test_enumerate_typical_limit():
    with pytest.raises(ValueError):
        enumerate_typical(7)
    with pytest.raises(ValueError):
        enumerate_typical(-1)
