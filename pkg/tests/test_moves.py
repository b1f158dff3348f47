import itertools
import random

import pytest
from hypothesis import given

from chartfold.chart import Chart, black, branch_event, cup, fire, make_alphabet, validate
from chartfold.cover import cover_invariants, sheet_trace_oracle
from chartfold.moves import (COVER_CHANGING, MoveError, MoveInstance, apply_move, candidate_moves, commute,
                             handles, inverse_move, inverse_sequence, moves_from_json, moves_to_json,
                             pair_create, pattern_move, pattern_sides, search_equivalence, verify_sequence)
from tests.conftest import chart_from_seed, seeds

# (kind, degree, alphabet, params)
SITES = [
    ("SlideThroughCrossing", 6, "perm", dict(p=1, labels=[1, 3, 5])),
    ("SlideThroughWhite", 6, "perm", dict(p=1, labels=[5, 2, 3], side=0)),
    ("SlideThroughWhite", 6, "perm", dict(p=1, labels=[5, 2, 3], side=1)),
    ("Tetrahedral", 4, "perm", dict(p=1, d=1)),
    ("BlackThroughCrossing", 5, "perm", dict(p=1, labels=[1, 3], side=0)),
    ("BlackThroughCrossing", 5, "perm", dict(p=1, labels=[1, 3], side=1)),
    ("BlackThroughWhite", 4, "perm", dict(p=1, labels=[1, 2], side=0)),
    ("BlackThroughWhite", 4, "perm", dict(p=1, labels=[1, 2], side=1)),
    ("CupThroughCrossing", 5, "perm", dict(p=1, labels=[1, 3], side=0)),
    ("CupThroughCrossing", 5, "perm", dict(p=1, labels=[1, 3], side=1)),
    ("Snake", 4, "perm", dict(p=1, labels=[2], side=0)),
    ("Snake", 5, "dihedral", dict(p=1, labels=["x"], side=1)),
    ("BranchConjugate", 5, "perm", dict(p=2, word=[1, 2], labels=[3], side=0)),
    ("BranchConjugate", 5, "dihedral", dict(p=1, word=["r", "x"], labels=["x"], side=1)),
    ("BranchFlip", 5, "perm", dict(p=1, word=[1, 2])),
    ("BranchFlip", 5, "dihedral", dict(p=1, word=["r"])),
    ("HalfTwist", 4, "perm", dict(p=1, u=[1], v=[2], conj=[1, 2, 1], sign=1)),
    ("HalfTwist", 4, "perm", dict(p=1, u=[1], v=[2], conj=[2, 1, 2], sign=-1)),
    ("HalfTwist", 5, "dihedral", dict(p=1, u=["r"], v=["x", "r", "X"], conj=["X", "X", "r"], sign=1)),
    ("BranchRelabel", 4, "perm", dict(p=1, word=[1, 2, 1], new=[2, 1, 2], mode="+")),
    ("BranchRelabel", 4, "perm", dict(p=1, word=[1, 2, 1], new=[2, 1, 2], mode="-")),
]


def _run(alpha, events, s):
    for ev in events:
        from chartfold.chart import check_event
        if check_event(alpha, ev, s):
            return None
        s = fire(alpha, ev, s)
    return s


def closed_site(kind, n, alphabet, prm):
    """A closed chart whose events after the returned level are the left side of the pattern."""
    alpha = make_alphabet(alphabet, n)
    left, right = pattern_sides(alpha, kind, prm)
    letters = list(range(1, n)) if alphabet == "perm" else ["r", "x", "X"]
    for length in range(0, 7):
        for s in itertools.product(letters, repeat=length):
            t = _run(alpha, left, tuple(s))
            if t is not None and t == _run(alpha, right, tuple(s)):
                pre = [black(i + 1, a) for i, a in enumerate(s)]
                post = [black(i, a, "-") for i, a in reversed(list(enumerate(t, 1)))]
                return Chart(n, alphabet, tuple(pre + left + post)), len(pre)
    raise AssertionError(f"no site for {kind}")


@pytest.mark.parametrize("kind,n,alphabet,prm", SITES, ids=[f"{s[0]}-{i}" for i, s in enumerate(SITES)])
def test_pattern_move_preserves_cover_and_inverts(kind, n, alphabet, prm):
    c, level = closed_site(kind, n, alphabet, prm)
    assert validate(c) == []
    m = pattern_move(kind, level, **prm)
    d = apply_move(c, m)
    assert d != c
    assert cover_invariants(d).summary() == cover_invariants(c).summary()
    assert sheet_trace_oracle(d).summary() == cover_invariants(c).summary()
    assert apply_move(d, inverse_move(c, m)) == c


def test_pattern_mismatch_is_an_error():
    c, level = closed_site("Snake", 4, "perm", dict(p=1, labels=[2], side=0))
    with pytest.raises(MoveError):
        apply_move(c, pattern_move("Snake", level, p=1, labels=[3], side=0))


def test_cupcap_cancel_to_empty():
    c = Chart(3, "perm", (cup(1, 2), cup(1, 2).inverse()))
    assert apply_move(c, MoveInstance("CupCapCancel", 0)).p == 0


def test_branch_resolve_simple_points():
    c = Chart(4, "perm", (branch_event(1, (1, 2, 1)), branch_event(1, (1, 2, 1), "-")))
    d = apply_move(c, MoveInstance("BranchResolve", 0))
    assert sum(e.kind == "Black" for e in d.events) == 1
    assert cover_invariants(d).summary() == cover_invariants(c).summary()


def test_unknown_move_kind():
    with pytest.raises(MoveError):
        MoveInstance("Teleport", 0)


def test_verify_sequence_reports_first_bad_move():
    c = Chart(3, "perm")
    seq = [pair_create(0, cup(1, 1)), commute(5)]
    res = verify_sequence(c, seq)
    assert not res.ok and res.index == 1
    assert verify_sequence(c, []).chart == c


def test_moves_json_round_trip():
    seq = [pair_create(0, cup(1, 1)), commute(2, above=True), pattern_move("Snake", 1, p=1, labels=[2], side=0)]
    assert moves_from_json(moves_to_json(seq)) == seq


def _random_creation(rng, c):
    level = rng.randint(0, c.p)
    from chartfold.chart import slice_at
    s = slice_at(c, level)
    pos = rng.randint(1, len(s) + 1)
    letter = rng.choice(list(range(1, c.degree)) if c.alphabet == "perm" else ["r", "x", "X"])
    ev = cup(pos, letter) if rng.random() < 0.5 else black(pos, letter)
    return pair_create(level, ev)


@given(seeds)
def test_random_moves_invert_and_keep_bookkeeping(seed):
    rng = random.Random(seed)
    c = chart_from_seed(seed, rng.choice(["perm", "dihedral"]))
    if c.degree < 2:
        return
    seq = []
    cur = c
    for _ in range(6):
        opts = candidate_moves(cur)
        m = rng.choice(opts) if opts and rng.random() < 0.7 else _random_creation(rng, cur)
        try:
            nxt = apply_move(cur, m)
        except MoveError:
            continue
        h1, h2 = handles(cur, m)
        before, after = cover_invariants(cur), cover_invariants(nxt)
        assert after.euler_total - before.euler_total == -2 * h1 + 2 * h2
        if m.kind not in COVER_CHANGING:
            assert after.summary() == before.summary()
        assert sheet_trace_oracle(nxt).summary() == after.summary()
        seq.append(m)
        cur = nxt
    back = inverse_sequence(c, seq)
    assert verify_sequence(cur, back).chart == c


def test_search_finds_short_certificates():
    assert search_equivalence(Chart(3, "perm"), Chart(3, "perm")).moves == ()
    a = Chart(3, "perm", (cup(1, 2), cup(1, 2).inverse()))
    res = search_equivalence(a, Chart(3, "perm"))
    assert res.found and len(res.moves) == 1


def test_search_undoes_a_scramble():
    start = Chart(4, "perm", (black(1, 1), black(2, 3), black(2, 3, "-"), black(1, 1, "-")))
    seq = [pair_create(1, cup(2, 2)), commute(2), pattern_move("Snake", 1, p=2, labels=[2], side=1)]
    res = verify_sequence(start, seq[:2])
    assert res.ok
    found = search_equivalence(res.chart, start, budget=20_000)
    assert found.found
    assert verify_sequence(res.chart, found.moves).chart == start
    assert search_equivalence(res.chart, start, budget=20_000).moves == found.moves
