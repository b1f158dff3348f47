"""Chart moves, move-sequence verification and bounded equivalence search.

A move acts on the event list of a chart at a *level* (the slice after
``level`` events).  Three families:

* ``Commute``: swap two adjacent events with disjoint windows.  This is the
  only isotopy move.
* pair moves: insert or delete an event followed by its inverse.  The kind
  name records the event type (``CupCapCreate`` is the type II bubble,
  ``SaddleCreate`` the type II saddle, ``BlackPairCreate`` is 2B+, ...).
* pattern moves: two event blocks with the same source and target slice
  (``SlideThroughWhite``, ``Tetrahedral``, ``HalfTwist``, ...).  Applying the
  move replaces whichever side is present by the other, so every pattern
  move is its own inverse.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Iterable, Sequence

from . import dihedral, perm
from .blocks import invert_events, normalize_any, rewrite_events
from .chart import (Chart, ChartError, Event, black, branch_event, cap,
                    crossing, cup, slices, validate, white)


class MoveError(ValueError):
    """The move's pattern does not match the chart at its site."""


# -- move instances -----------------------------------------------------------------


def _freeze(v):
    if isinstance(v, (list, tuple)):
        return tuple(_freeze(x) for x in v)
    if isinstance(v, dict):
        return tuple(sorted((k, _freeze(x)) for k, x in v.items()))
    return v


def _thaw(v):
    if isinstance(v, tuple):
        return [_thaw(x) for x in v]
    return v


@dataclass(frozen=True)
class MoveInstance:
    kind: str
    level: int
    params: tuple = ()

    def __post_init__(self):
        kind = ALIASES.get(self.kind, self.kind)
        if kind not in MOVE_KINDS:
            raise MoveError(f"unknown move kind {self.kind!r}")
        object.__setattr__(self, "kind", kind)
        if isinstance(self.params, dict):
            object.__setattr__(self, "params", _freeze(self.params))
        if not isinstance(self.level, int) or self.level < 0:
            raise MoveError(f"level must be a non-negative integer, got {self.level!r}")

    @classmethod
    def make(cls, kind: str, level: int, **params) -> "MoveInstance":
        return cls(kind, level, _freeze(params))

    def get(self, key: str, default=None):
        for k, v in self.params:
            if k == key:
                return v
        return default

    def to_json(self) -> dict:
        d: dict[str, Any] = {"kind": self.kind, "level": self.level}
        if self.params:
            d["params"] = {k: (v if k != "event" else _event_json(v)) for k, v in
                           ((k, _thaw(v)) for k, v in self.params)}
        return d

    @classmethod
    def from_json(cls, d: dict) -> "MoveInstance":
        extra = set(d) - {"kind", "level", "params"}
        if extra:
            raise MoveError(f"unknown move fields {sorted(extra)}")
        params = dict(d.get("params", {}))
        if "event" in params:
            params["event"] = _event_key(Event.from_json(params["event"]))
        return cls(d["kind"], d["level"], _freeze(params))

    def __str__(self):
        inner = ", ".join(f"{k}={_thaw(v)}" for k, v in self.params)
        return f"{self.kind}@{self.level}({inner})"


def _event_key(ev: Event) -> tuple:
    return (ev.kind, ev.pos, ev.labels, ev.mode, ev.after)


def _event_from_key(key) -> Event:
    kind, pos, labels, mode, after = key
    return Event(kind, pos, tuple(labels), mode, tuple(after))


def _event_json(v):
    return _event_from_key(_freeze(v)).to_json()


def moves_to_json(moves: Sequence[MoveInstance]) -> list:
    return [m.to_json() for m in moves]


def moves_from_json(data: list) -> list[MoveInstance]:
    if not isinstance(data, list):
        raise MoveError("a move sequence must be a JSON array")
    return [MoveInstance.from_json(d) for d in data]


def dumps_moves(moves: Sequence[MoveInstance]) -> str:
    return json.dumps(moves_to_json(moves), separators=(",", ":"))


# -- constructors ------------------------------------------------------------------


PAIR_KINDS = {
    "CupCap": "Cup",
    "Saddle": "Cap",
    "CrossingPair": "Crossing",
    "WhitePair": "White",
    "DihedralRelatorPair": "Relator",
    "BlackPair": "Black",
    "BranchPair": "Branch",
}
PATTERN_KINDS = ("SlideThroughCrossing", "SlideThroughWhite", "Tetrahedral", "BlackThroughCrossing",
                 "BlackThroughWhite", "CupThroughCrossing", "Snake", "BranchConjugate", "BranchFlip",
                 "HalfTwist", "BranchRelabel")
MOVE_KINDS = (("Commute", "BranchResolve", "BranchMerge")
              + tuple(k + s for k in PAIR_KINDS for s in ("Create", "Cancel")) + PATTERN_KINDS)
ALIASES = {
    "CommuteDistantEvents": "Commute",
    "LoopBirth": "CupCapCreate",
    "LoopDeath": "CupCapCancel",
    "SimpleArcBirth": "BlackPairCreate",
    "SimpleArcDeath": "BlackPairCancel",
    "RelatorPairCreate": "DihedralRelatorPairCreate",
    "RelatorPairCancel": "DihedralRelatorPairCancel",
}
COVER_CHANGING = ("BlackPairCreate", "BlackPairCancel", "BranchPairCreate", "BranchPairCancel",
                  "BranchResolve", "BranchMerge")


def pair_create(level: int, ev: Event) -> MoveInstance:
    for name, kind in PAIR_KINDS.items():
        if kind == ev.kind:
            return MoveInstance(name + "Create", level, (("event", _event_key(ev)),))
    raise MoveError(f"no pair move for {ev.kind}")


def pair_cancel(c: Chart, level: int) -> MoveInstance:
    if level + 1 >= c.p + 1 or level < 0:
        raise MoveError(f"no event pair after level {level}")
    ev = c.events[level]
    for name, kind in PAIR_KINDS.items():
        if kind == ev.kind:
            return MoveInstance(name + "Cancel", level)
    raise MoveError(f"no pair move for {ev.kind}")


def commute(level: int, above: bool = False) -> MoveInstance:
    if above:
        return MoveInstance.make("Commute", level, above=1)
    return MoveInstance("Commute", level)


def is_cover_changing(m: MoveInstance) -> bool:
    return m.kind in COVER_CHANGING


# -- commuting -------------------------------------------------------------------------


def commuted(alpha, e1: Event, e2: Event, above: bool = False) -> tuple[Event, Event] | None:
    """``(e2', e1')`` doing the same as ``e1`` then ``e2`` with disjoint windows.

    When ``e1`` has an empty output and ``e2`` has an empty input at the same
    position, ``e2`` may pass on either side; ``above`` picks the upper one.
    """
    a1, b1 = (len(w) for w in e1.window(alpha))
    a2, b2 = (len(w) for w in e2.window(alpha))
    p1, p2 = e1.pos, e2.pos
    below_ok = p2 + a2 <= p1
    above_ok = p2 >= p1 + b1
    if below_ok and not (above and above_ok):  # e2 sits below the output of e1
        return e2, e1.shifted(b2 - a2)
    if above_ok:  # e2 sits above it
        return e2.shifted(a1 - b1), e1
    return None


def can_commute(c: Chart, level: int) -> bool:
    return 0 <= level and level + 2 <= c.p and commuted(c.alpha, c.events[level], c.events[level + 1]) is not None


# -- pattern catalogue -----------------------------------------------------------------


@lru_cache(maxsize=None)
def zamolodchikov_paths() -> tuple[tuple, tuple]:
    """Two event paths from ``121321`` to ``323123`` through reduced words of w0 in S_4.

    Steps are ``("C"|"W", pos, a, b)``; the first path begins with a white
    vertex, the second with a crossing.
    """
    def nbrs(w):
        out = []
        for i in range(5):
            a, b = w[i], w[i + 1]
            if abs(a - b) > 1:
                out.append((w[:i] + (b, a) + w[i + 2:], ("C", i + 1, a, b)))
        for i in range(4):
            a, b, c = w[i:i + 3]
            if a == c and abs(a - b) == 1:
                out.append((w[:i] + (b, a, b) + w[i + 3:], ("W", i + 1, a, b)))
        return out

    src, dst = (1, 2, 1, 3, 2, 1), (3, 2, 3, 1, 2, 3)
    paths = []
    for first in "WC":
        start = next(x for x in nbrs(src) if x[1][0] == first)
        prev = {src: None, start[0]: (src, start[1])}
        queue = deque([start[0]])
        while queue:
            w = queue.popleft()
            if w == dst:
                break
            for v, step in nbrs(w):
                if v not in prev:
                    prev[v] = (w, step)
                    queue.append(v)
        steps = []
        w = dst
        while prev[w]:
            w, step = prev[w][0], prev[w][1]
            steps.append(step)
        paths.append(tuple(reversed(steps)))
    return paths[0], paths[1]


def _path_events(path, p: int, d: int) -> list[Event]:
    out = []
    for kind, pos, a, b in path:
        make = crossing if kind == "C" else white
        out.append(make(p + pos - 1, a + d - 1, b + d - 1))
    return out


def pattern_sides(alpha, kind: str, prm: dict) -> tuple[list[Event], list[Event]]:
    """Both sides of a pattern move, before the optional inversion."""
    p = prm["p"]
    inv = alpha.inv
    if kind == "SlideThroughCrossing":
        a, b, c = prm["labels"]
        return ([crossing(p, a, b), crossing(p + 1, a, c), crossing(p, b, c)],
                [crossing(p + 1, b, c), crossing(p, a, c), crossing(p + 1, a, b)])
    if kind == "SlideThroughWhite":
        l, j, k = prm["labels"]
        if prm.get("side", 0) == 0:  # strand l enters from below
            return ([crossing(p, l, j), crossing(p + 1, l, k), crossing(p + 2, l, j), white(p, j, k)],
                    [white(p + 1, j, k), crossing(p, l, k), crossing(p + 1, l, j), crossing(p + 2, l, k)])
        return ([crossing(p + 2, j, l), crossing(p + 1, k, l), crossing(p, j, l), white(p + 1, j, k)],
                [white(p, j, k), crossing(p + 2, k, l), crossing(p + 1, j, l), crossing(p, k, l)])
    if kind == "Tetrahedral":
        pa, pb = zamolodchikov_paths()
        d = prm.get("d", 1)
        return _path_events(pa, p, d), _path_events(pb, p, d)
    if kind == "BlackThroughCrossing":
        j, k = prm["labels"]
        if prm.get("side", 0) == 0:  # strand k below the vertex
            return [black(p + 1, j), crossing(p, k, j)], [black(p, j)]
        return [black(p, j), crossing(p, j, k)], [black(p + 1, j)]
    if kind == "BlackThroughWhite":
        j, k = prm["labels"]
        if prm.get("side", 0) == 0:
            return [black(p + 2, j), white(p, j, k)], [black(p, k)]
        return [black(p, j), white(p, j, k)], [black(p + 2, k)]
    if kind == "CupThroughCrossing":
        j, k = prm["labels"]
        if prm.get("side", 0) == 0:
            return [cup(p + 1, j), crossing(p, k, j), crossing(p + 1, k, j)], [cup(p, j)]
        return [cup(p, j), crossing(p + 1, j, k), crossing(p, j, k)], [cup(p + 1, j)]
    if kind == "Snake":
        (a,) = prm["labels"]
        if prm.get("side", 0) == 0:
            return [cup(p + 1, inv(a)), cap(p, a)], []
        return [cup(p, a), cap(p + 1, inv(a))], []
    if kind == "BranchConjugate":
        u = tuple(prm["word"])
        (b,) = prm["labels"]
        if prm.get("side", 0) == 0:  # letter b sits just below the vertex
            return ([branch_event(p, u)],
                    [branch_event(p - 1, (b,) + u + (inv(b),)), cap(p + len(u), inv(b))])
        return ([branch_event(p, u)],
                [branch_event(p + 1, (inv(b),) + u + (b,)), cap(p, b)])
    if kind == "BranchFlip":
        u = tuple(prm["word"])
        k = len(u)
        caps = [cap(p + i, u[i]) for i in range(k - 1, -1, -1)]
        return [branch_event(p, u, "-")], [branch_event(p + k, alpha.invert_word(u))] + caps
    if kind == "HalfTwist":
        # sign +1: the upper vertex passes below, carrying u v u^-1;
        # sign -1: the lower vertex passes above, carrying v^-1 u v
        u, v, w = (tuple(prm[x]) for x in ("u", "v", "conj"))
        lo, hi = (w, u) if prm.get("sign", 1) == 1 else (v, w)
        block = rewrite_events(alpha.name, alpha.n, lo + hi, u + v, base=p - 1)
        return ([branch_event(p, u), branch_event(p + len(u), v)],
                [branch_event(p, lo), branch_event(p + len(lo), hi)] + list(block))
    if kind == "BranchRelabel":
        u, w = tuple(prm["word"]), tuple(prm["new"])
        mode = prm.get("mode", "+")
        block = list(rewrite_events(alpha.name, alpha.n, w, u, base=p - 1))
        if mode == "+":
            return [branch_event(p, u)], [branch_event(p, w)] + block
        return [branch_event(p, u, "-")], list(invert_events(block)) + [branch_event(p, w, "-")]
    raise MoveError(f"{kind} is not a pattern move")


def default_conjugate(alpha, u: Sequence, v: Sequence, sign: int = 1) -> tuple:
    """Reduced word for the conjugated label produced by a half twist.

    ``sign=1`` gives the word ``u v u^-1``; ``sign=-1`` gives ``v^-1 u v``.
    """
    u, v = tuple(u), tuple(v)
    word = u + v + alpha.invert_word(u) if sign == 1 else alpha.invert_word(v) + u + v
    if alpha.name == "perm":
        return perm.reduce_word(alpha.n, word)
    return dihedral.element_word(dihedral.evaluate(alpha.n, word))


def pattern_move(kind: str, level: int, inverted: bool = False, **prm) -> MoveInstance:
    if inverted:
        prm["inv"] = 1
    return MoveInstance.make(kind, level, **prm)


# -- application -----------------------------------------------------------------------


def _params(m: MoveInstance) -> dict:
    return {k: v for k, v in m.params}


def _match(events: Sequence[Event], level: int, block: Sequence[Event]) -> bool:
    return tuple(events[level:level + len(block)]) == tuple(block)


def rewrite(c: Chart, m: MoveInstance) -> tuple[int, int, list[Event]]:
    """``(start, stop, replacement)`` for the event list; raises MoveError."""
    ev = c.events
    L = m.level
    if L > c.p:
        raise MoveError(f"level {L} beyond last level {c.p}")
    alpha = c.alpha
    if m.kind == "Commute":
        if L + 2 > c.p:
            raise MoveError(f"no two events after level {L}")
        sw = commuted(alpha, ev[L], ev[L + 1], bool(m.get("above")))
        if sw is None:
            raise MoveError(f"events {ev[L]} and {ev[L + 1]} overlap")
        return L, L + 2, list(sw)
    if m.kind.endswith("Create") and m.kind[:-6] in PAIR_KINDS:
        e = _event_from_key(m.get("event"))
        if e.kind != PAIR_KINDS[m.kind[:-6]]:
            raise MoveError(f"{m.kind} cannot create a {e.kind} pair")
        return L, L, [e, e.inverse()]
    if m.kind.endswith("Cancel") and m.kind[:-6] in PAIR_KINDS:
        if L + 2 > c.p:
            raise MoveError(f"no two events after level {L}")
        e1, e2 = ev[L], ev[L + 1]
        if e1.kind != PAIR_KINDS[m.kind[:-6]] or e2 != e1.inverse():
            raise MoveError(f"{e1} and {e2} are not a cancelling {m.kind[:-6]}")
        return L, L + 2, []
    if m.kind == "BranchResolve":
        if L + 1 > c.p or ev[L].kind != "Branch":
            raise MoveError(f"no Branch event after level {L}")
        return L, L + 1, list(resolution_events(alpha, ev[L]))
    if m.kind == "BranchMerge":
        e = Event("Branch", m.get("p"), tuple(m.get("word")), m.get("mode", "+"))
        block = resolution_events(alpha, e)
        if not _match(ev, L, block):
            raise MoveError(f"events after level {L} are not the resolution of {e}")
        return L, L + len(block), [e]
    if m.kind in PATTERN_KINDS:
        prm = _params(m)
        try:
            a, b = pattern_sides(alpha, m.kind, prm)
        except (KeyError, ValueError, TypeError) as exc:
            raise MoveError(f"bad parameters for {m.kind}: {exc}") from None
        if prm.get("inv"):
            a, b = list(invert_events(a)), list(invert_events(b))
        if _match(ev, L, a) and (a or not _match(ev, L, b)):
            return L, L + len(a), b
        if _match(ev, L, b) and b:
            return L, L + len(b), a
        if not a or not b:  # an empty side can always be inserted if it fires
            return L, L, a if a else b
        raise MoveError(f"{m.kind} pattern not found after level {L}")
    raise MoveError(f"unhandled move {m.kind}")


def apply_move(c: Chart, m: MoveInstance, check: bool = True) -> Chart:
    start, stop, repl = rewrite(c, m)
    out = c.replace_events(c.events[:start] + tuple(repl) + c.events[stop:])
    if check:
        v = validate(out)
        if v:
            raise MoveError(f"{m} leaves an invalid chart: {v[0]}")
    return out


def inverse_move(c: Chart, m: MoveInstance) -> MoveInstance:
    """A move undoing ``m`` on the chart it produces from ``c``."""
    kind = m.kind
    if kind == "Commute":
        out = apply_move(c, m, check=False)
        for back in (MoveInstance("Commute", m.level), MoveInstance.make("Commute", m.level, above=1)):
            if apply_move(out, back, check=False).events == c.events:
                return back
        raise MoveError(f"{m} cannot be undone by a commute")
    if kind in PATTERN_KINDS:
        return m
    if kind.endswith("Create"):
        return MoveInstance(kind[:-6] + "Cancel", m.level)
    if kind.endswith("Cancel"):
        return MoveInstance(kind[:-6] + "Create", m.level, (("event", _event_key(c.events[m.level])),))
    if kind == "BranchResolve":
        e = c.events[m.level]
        return MoveInstance.make("BranchMerge", m.level, p=e.pos, word=e.labels, mode=e.mode)
    if kind == "BranchMerge":
        return MoveInstance("BranchResolve", m.level)
    raise MoveError(f"no inverse for {kind}")


def handles(c: Chart, m: MoveInstance) -> tuple[int, int]:
    """``(one_handles, two_handles)`` attached by a cover-changing move."""
    if m.kind not in ("BlackPairCreate", "BlackPairCancel", "BranchPairCreate", "BranchPairCancel"):
        return 0, 0
    e = _event_from_key(m.get("event")) if m.kind.endswith("Create") else c.events[m.level]
    g = c.alpha.to_permutation(c.alpha.evaluate(e.labels))
    k = c.degree - perm.cycle_count(g)
    return (k, 0) if m.kind.endswith("Create") else (0, k)


# -- branch resolution ----------------------------------------------------------------------


def simple_factorization(sigma: perm.Permutation) -> list[tuple[int, int]]:
    """Transpositions ``t_1, ..., t_m`` (applied in order) with product ``sigma``.

    ``m = n - cycle_count(sigma)``, the least possible.
    """
    out = []
    for cyc in sigma.cycles():
        c1 = cyc[0]
        out.extend(tuple(sorted((c1, ci))) for ci in cyc[1:])
    return out


def transposition_events(a: int, b: int, pos: int) -> tuple[list[Event], tuple[int, ...]]:
    """Nested cups around one black vertex, building ``[a..b-2, b-1, b-2..a]``."""
    u = list(range(a, b - 1))
    evs = [cup(pos + i, j) for i, j in enumerate(u)]
    evs.append(black(pos + len(u), b - 1))
    return evs, tuple(u) + (b - 1,) + tuple(reversed(u))


def resolution_events(alpha, e: Event) -> tuple[Event, ...]:
    """Simple black vertices plus scaffolding equivalent to a Branch event.

    Only permutation charts are resolved; the number of black vertices is
    ``n - cycle_count`` of the branch monodromy.
    """
    if alpha.name != "perm":
        raise MoveError("branch resolution acts on permutation charts")
    if e.mode == "-":
        return invert_events(resolution_events(alpha, e.inverse()))
    sigma = alpha.evaluate(e.labels)
    evs: list[Event] = []
    word: tuple[int, ...] = ()
    for a, b in simple_factorization(sigma):
        block, w = transposition_events(a, b, e.pos + len(word))
        evs.extend(block)
        word += w
    evs.extend(rewrite_events("perm", alpha.n, word, e.labels, base=e.pos - 1))
    return tuple(evs)


# -- sequences -------------------------------------------------------------------------------


@dataclass(frozen=True)
class SequenceResult:
    ok: bool
    chart: Chart
    index: int | None = None
    reason: str = ""
    one_handles: int = 0
    two_handles: int = 0

    def __bool__(self):
        return self.ok


def verify_sequence(c0: Chart, moves: Iterable[MoveInstance]) -> SequenceResult:
    """Apply moves in order; stop at the first illegal one."""
    v = validate(c0)
    if v:
        return SequenceResult(False, c0, None, f"start chart invalid: {v[0]}")
    c = c0
    h1 = h2 = 0
    for i, m in enumerate(moves):
        try:
            d1, d2 = handles(c, m)
            c = apply_move(c, m)
        except (MoveError, ChartError) as exc:
            return SequenceResult(False, c, i, str(exc), h1, h2)
        h1 += d1
        h2 += d2
    return SequenceResult(True, c, None, "", h1, h2)


def inverse_sequence(c0: Chart, moves: Sequence[MoveInstance]) -> list[MoveInstance]:
    """Moves taking the result of ``moves`` back to ``c0``."""
    inv = []
    c = c0
    for m in moves:
        inv.append(inverse_move(c, m))
        c = apply_move(c, m)
    return list(reversed(inv))


def chart_key(c: Chart) -> str:
    from .chart import serialize
    return serialize(c)


def cancel_greedily(c: Chart) -> tuple[Chart, list[MoveInstance]]:
    """Remove adjacent cancelling pairs until none is left (lowest level first)."""
    moves = []
    changed = True
    while changed:
        changed = False
        for i in range(c.p - 1):
            if c.events[i + 1] == c.events[i].inverse():
                m = pair_cancel(c, i)
                c = apply_move(c, m, check=False)
                moves.append(m)
                changed = True
                break
    return c, moves


def candidate_moves(c: Chart) -> list[MoveInstance]:
    """Size-neutral or size-reducing moves used by the search (no creations)."""
    out = []
    for i in range(c.p - 1):
        if can_commute(c, i):
            out.append(commute(i))
    if c.alphabet == "perm":
        for i, e in enumerate(c.events):
            if e.kind == "Branch":
                out.append(MoveInstance("BranchResolve", i))
    sl = None
    for i in range(c.p - 1):
        e1, e2 = c.events[i], c.events[i + 1]
        if e1.kind == "Cup" and e2.kind == "Cap" and abs(e1.pos - e2.pos) == 1:
            out.append(pattern_move("Snake", i, p=min(e1.pos, e2.pos), labels=(e2.labels[0],),
                                    side=0 if e1.pos > e2.pos else 1))
        if e1.kind == "Black" and e2.kind in ("Crossing", "White") and e1.mode == "+":
            if sl is None:
                sl = slices(c)
            for side in (0, 1):
                for kind in ("BlackThroughCrossing", "BlackThroughWhite"):
                    p0 = e2.pos
                    m = pattern_move(kind, i, p=p0, labels=e2.labels if side else (e2.labels[1], e2.labels[0]),
                                     side=side)
                    try:
                        rewrite(c, m)
                    except (MoveError, KeyError, ValueError):
                        continue
                    out.append(m)
    uniq = []
    seen = set()
    for m in out:
        if m not in seen:
            seen.add(m)
            uniq.append(m)
    return sorted(uniq, key=lambda m: json.dumps(m.to_json(), sort_keys=True))


@dataclass(frozen=True)
class SearchResult:
    found: bool
    moves: tuple[MoveInstance, ...] = ()
    states: int = 0


def search_equivalence(a: Chart, b: Chart, budget: int = 100_000, max_depth: int = 12) -> SearchResult:
    """Breadth-first search for a move sequence turning ``a`` into ``b``.

    After every search move, adjacent cancelling pairs are removed greedily
    and those cancellations are recorded too.  ``b`` is compared after the
    same greedy reduction, and its reduction is appended inverted.  States
    are keyed by canonical serialization; candidates are tried in
    lexicographic order of their JSON form, so the certificate is
    deterministic.  Not finding a sequence proves nothing.
    """
    if (a.degree, a.alphabet) != (b.degree, b.alphabet):
        raise MoveError("charts differ in degree or alphabet")
    for c in (a, b):
        v = validate(c)
        if v:
            raise MoveError(f"invalid chart: {v[0]}")
    if chart_key(a) == chart_key(b):
        return SearchResult(True, (), 1)
    b_red, b_moves = cancel_greedily(b)
    goal = chart_key(b_red)
    tail = inverse_sequence(b, b_moves)
    a_red, a_moves = cancel_greedily(a)
    start = chart_key(a_red)
    parent: dict[str, tuple[str | None, tuple[MoveInstance, ...]]] = {start: (None, tuple(a_moves))}
    queue = deque([(a_red, 0)])
    found = start if start == goal else None
    while queue and found is None and len(parent) < budget:
        c, depth = queue.popleft()
        if depth >= max_depth:
            continue
        key = chart_key(c)
        for m in candidate_moves(c):
            try:
                nxt = apply_move(c, m)
            except (MoveError, ChartError):
                continue
            nxt, extra = cancel_greedily(nxt)
            k = chart_key(nxt)
            if k in parent:
                continue
            parent[k] = (key, (m,) + tuple(extra))
            if k == goal:
                found = k
                break
            queue.append((nxt, depth + 1))
    if found is None:
        return SearchResult(False, (), len(parent))
    steps: list[MoveInstance] = []
    k: str | None = found
    while k is not None:
        prev, ms = parent[k]
        steps[:0] = ms
        k = prev
    result = tuple(steps) + tuple(tail)
    assert chart_key(verify_sequence(a, result).chart) == chart_key(b)
    return SearchResult(True, result, len(parent))


# -- presentations ------------------------------------------------------------------------


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        letters = set(self.generators) | {g.upper() for g in self.generators}
        for r in self.relators:
            if not r or any(a not in letters for a in r):
                raise ValueError(f"relator {r} is not a nonempty word over the generators")


def dihedral_presentation(n: int) -> Presentation:
    dihedral.check_parameter(n)
    return Presentation(("r", "x"), (("r", "r"), ("x",) * n, ("r", "x", "r", "x")))


def relator_block(pres: Presentation, psi_map, relator_word: Sequence[str], n: int) -> Chart:
    """Fragment from the image word of a relator down to the empty slice.

    ``psi_map`` sends a letter (capital = inverse) to a transposition word.
    Uses only Crossing, White and Cap events.
    """
    word = tuple(relator_word)
    if word not in pres.relators:
        raise ValueError(f"{word} is not a relator of the presentation")
    image = tuple(j for a in word for j in psi_map(a))
    if not perm.evaluate_word(n, image).is_identity():
        raise ValueError("the relator's image is not the identity")
    events, nf = normalize_any("perm", n, image)
    assert nf == ()
    return Chart(n, "perm", events, image, ())


def psi_letter_map(n: int):
    return lambda a: dihedral.letter_psi_word(n, a, reduced=False)
