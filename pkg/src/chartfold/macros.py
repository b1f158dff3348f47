"""Composite move generators: insert form, half twists and cleanup.

Each generator returns the chart it reaches together with the list of
elementary moves that got there, so the result can be replayed and checked
by :func:`chartfold.moves.verify_sequence`.
"""

from __future__ import annotations

from . import dihedral, perm
from typing import Sequence

from .chart import BRANCH_KINDS, Chart, slice_at
from .moves import (MoveInstance, apply_move, cancel_greedily, commute, commuted, default_conjugate,
                    pattern_move)


class Recorder:
    """A chart plus the moves applied to it so far."""

    def __init__(self, chart: Chart):
        self.start = chart
        self.chart = chart
        self.moves: list[MoveInstance] = []

    def apply(self, m: MoveInstance) -> None:
        self.chart = apply_move(self.chart, m)
        self.moves.append(m)

    def extend(self, moves) -> None:
        for m in moves:
            self.apply(m)


def _is_insert(ev) -> bool:
    return ev.kind in BRANCH_KINDS and ev.mode == "+"


def insert_prefix(c: Chart) -> int:
    """Number of leading branch insertions already in slice order."""
    k = 0
    while k < c.p and _is_insert(c.events[k]):
        if k and c.events[k].pos < c.events[k - 1].pos + len(c.events[k - 1].labels):
            break
        k += 1
    return k


def _prefix_intervals(c: Chart, k: int) -> list[tuple[int, int]]:
    spans: list[tuple[int, int]] = []
    for ev in c.events[:k]:
        n = len(ev.labels)
        spans = [(s + n if s >= ev.pos else s, m) for s, m in spans] + [(ev.pos, n)]
    return spans


def _conjugate(rec: Recorder, level: int, side: int = 0) -> None:
    ev = rec.chart.events[level]
    letter = slice_at(rec.chart, level)[ev.pos - 2 if side == 0 else ev.pos - 1]
    rec.apply(pattern_move("BranchConjugate", level, p=ev.pos, word=list(ev.labels),
                           labels=[letter], side=side))


def gather(rec: Recorder) -> None:
    """Bring every branch insertion to the front, sorted by slice position.

    Deletions are flipped into insertions first.  An insertion blocked by
    the output of an earlier event is conjugated past it one letter at a
    time; the caps this leaves behind stay where they are.
    """
    while True:
        evs = rec.chart.events
        flip = next((i for i, e in enumerate(evs) if e.kind in BRANCH_KINDS and e.mode == "-"), None)
        if flip is not None:
            e = evs[flip]
            rec.apply(pattern_move("BranchFlip", flip, p=e.pos, word=list(e.labels)))
            continue
        k = insert_prefix(rec.chart)
        i = next((i for i in range(k, len(evs)) if _is_insert(evs[i])), None)
        if i is None:
            return
        if i > k:
            if commuted(rec.chart.alpha, evs[i - 1], evs[i]) is not None:
                rec.apply(commute(i - 1, above=True))
            else:
                _conjugate(rec, i)
            continue
        e = evs[k]
        inside = [(s, m) for s, m in _prefix_intervals(rec.chart, k) if s < e.pos < s + m]
        if inside:
            s, m = inside[0]
            _conjugate(rec, k, side=int(s + m - e.pos < e.pos - s))
            continue
        j = k
        while j > 0 and rec.chart.events[j].pos <= rec.chart.events[j - 1].pos:
            rec.apply(commute(j - 1))
            j -= 1


def _snake_at(c: Chart, i: int):
    e1, e2 = c.events[i], c.events[i + 1]
    if e1.kind != "Cup" or e2.kind != "Cap":
        return None
    a = e2.labels[0]
    inv = c.alpha.inv
    if e1.pos == e2.pos + 1 and e1.labels[0] == inv(a):
        return pattern_move("Snake", i, p=e2.pos, labels=[a], side=0)
    b = e1.labels[0]
    if e2.pos == e1.pos + 1 and a == inv(b):
        return pattern_move("Snake", i, p=e1.pos, labels=[b], side=1)
    return None


def simplify(rec: Recorder) -> None:
    """Cancel adjacent inverse pairs and straighten snakes until stuck."""
    while True:
        c, moves = cancel_greedily(rec.chart)
        if moves:
            rec.chart = c
            rec.moves.extend(moves)
        snake = next((m for i in range(rec.chart.p - 1) if (m := _snake_at(rec.chart, i))), None)
        if snake is None:
            return
        rec.apply(snake)


def to_insert_form(c: Chart) -> tuple[Chart, list[MoveInstance]]:
    rec = Recorder(c)
    gather(rec)
    simplify(rec)
    return rec.chart, rec.moves


def _key(alpha, word):
    return alpha.evaluate(tuple(word))


def canonical_word(alpha, word) -> tuple:
    """Shortest standard word with the value of ``word``."""
    if alpha.name == "perm":
        return perm.reduce_word(alpha.n, tuple(word))
    return dihedral.element_word(_key(alpha, word))


def half_twist(rec: Recorder, j: int, sign: int = 1, prefer: Sequence = ()) -> None:
    """Exchange the insertions at levels ``j`` and ``j + 1`` by a half twist.

    The conjugated label is the first word of ``prefer`` with the right
    value, or the canonical word when none has it.
    """
    evs = rec.chart.events
    e1, e2 = evs[j], evs[j + 1]
    if not (_is_insert(e1) and _is_insert(e2) and e2.pos == e1.pos + len(e1.labels)):
        raise ValueError(f"levels {j} and {j + 1} are not adjacent insertions")
    alpha = rec.chart.alpha
    u, v = tuple(e1.labels), tuple(e2.labels)
    word = canonical_word(alpha, default_conjugate(alpha, u, v, sign))
    value = _key(alpha, word)
    word = next((tuple(w) for w in prefer if _key(alpha, w) == value), word)
    rec.apply(pattern_move("HalfTwist", j, p=e1.pos, u=list(u), v=list(v), conj=list(word), sign=sign))
    gather(rec)
