"""Chart movies: sequences of closed charts joined by certified move lists.

A movie starts and ends at the empty chart.  Each transition records the
elementary moves taking one frame to the next and the numbers of 1- and
2-handles they attach to the cover, so the change in euler characteristic
between frames is ``-2 * one + 2 * two``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from . import dihedral
from .chart import (Chart, ChartError, black, branch_event, chart_from_json, chart_to_json,
                    cup, empty, validate)
from .coloring import DiagramError, DihedralColoring, KnotDiagram
from .cover import cover_invariants
from .macros import Recorder, half_twist, simplify, to_insert_form
from .moves import (MoveError, MoveInstance, inverse_sequence, is_cover_changing, moves_from_json,
                    moves_to_json, pair_cancel, pair_create, verify_sequence)

COMPLETE = "complete"
INCOMPLETE = "simplification incomplete"


@dataclass
class Transition:
    label: str
    moves: list[MoveInstance]
    one_handles: int = 0
    two_handles: int = 0

    def to_json(self) -> dict:
        return {"label": self.label, "handles": {"one": self.one_handles, "two": self.two_handles},
                "moves": moves_to_json(self.moves)}

    @classmethod
    def from_json(cls, d: dict) -> "Transition":
        h = d.get("handles", {})
        return cls(d.get("label", ""), moves_from_json(d.get("moves", [])),
                   int(h.get("one", 0)), int(h.get("two", 0)))


@dataclass
class ChartMovie:
    frames: list[Chart]
    transitions: list[Transition]
    status: str = COMPLETE
    name: str = ""
    notes: list[str] = field(default_factory=list)

    @property
    def degree(self) -> int:
        return self.frames[0].degree

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status, "notes": list(self.notes),
                "frames": [chart_to_json(f) for f in self.frames],
                "transitions": [t.to_json() for t in self.transitions]}

    @classmethod
    def from_json(cls, d: dict) -> "ChartMovie":
        if not isinstance(d, dict) or "frames" not in d:
            raise ChartError("movie JSON needs a 'frames' list")
        frames = [chart_from_json(f) for f in d["frames"]]
        trans = [Transition.from_json(t) for t in d.get("transitions", [])]
        if len(trans) != max(len(frames) - 1, 0):
            raise ChartError(f"{len(frames)} frames need {len(frames) - 1} transitions, got {len(trans)}")
        return cls(frames, trans, d.get("status", COMPLETE), d.get("name", ""), list(d.get("notes", [])))

    def dumps(self) -> str:
        # one frame or transition per line keeps fixtures diffable
        d = self.to_json()
        head = {k: d[k] for k in ("name", "status", "notes")}
        parts = [json.dumps(head, separators=(",", ":"))[:-1]]
        frames = ",\n".join(json.dumps(f, separators=(",", ":")) for f in d["frames"])
        trans = ",\n".join(json.dumps(t, separators=(",", ":")) for t in d["transitions"])
        return parts[0] + ',\n"frames":[\n' + frames + '\n],\n"transitions":[\n' + trans + "\n]}\n"

    @classmethod
    def loads(cls, text: str) -> "ChartMovie":
        try:
            return cls.from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise ChartError(f"malformed movie JSON: {exc}") from None


class _Builder:
    def __init__(self, start: Chart):
        self.frames = [start]
        self.transitions: list[Transition] = []

    @property
    def chart(self) -> Chart:
        return self.frames[-1]

    def push(self, label: str, moves: Sequence[MoveInstance]) -> None:
        res = verify_sequence(self.chart, moves)
        if not res.ok:
            raise MoveError(f"{label}: move {res.index} failed: {res.reason}")
        self.frames.append(res.chart)
        self.transitions.append(Transition(label, list(moves), res.one_handles, res.two_handles))

    def movie(self, name: str, status: str = COMPLETE, notes: Sequence[str] = ()) -> ChartMovie:
        return ChartMovie(self.frames, self.transitions, status, name, list(notes))


def _chunks(items: list, k: int) -> list[list]:
    k = max(1, min(k, len(items)))
    q, r = divmod(len(items), k)
    out, at = [], 0
    for i in range(k):
        size = q + (i < r)
        out.append(items[at:at + size])
        at += size
    return out


# -- dihedral movies ----------------------------------------------------------------


def bowl_exponent(n: int, color: int) -> int:
    """The ``m`` of smallest size, positive first, with ``x^m r x^-m`` of color ``color``."""
    target = dihedral.conjugate_reflection(n, color)
    k = (n - 1) // 2
    for m in sorted(range(-k, k + 1), key=lambda t: (abs(t), -t)):
        letter = "x" if m >= 0 else "X"
        bowl = (letter,) * abs(m)
        if dihedral.evaluate(n, bowl + ("r",) + dihedral.invert_word(bowl)) == target:
            return m
    raise AssertionError("every reflection is a conjugate of r")


def _loop_births(level: int, m: int) -> list[MoveInstance]:
    letter = "x" if m >= 0 else "X"
    return [pair_create(level + i, cup(i + 1, letter)) for i in range(abs(m))]


def _arc_birth(level: int, m: int) -> MoveInstance:
    return pair_create(level + abs(m), black(abs(m) + 1, "r"))


def _cancel_first(c: Chart, kind: str) -> MoveInstance | None:
    """Cancel the lowest adjacent black pair (``kind="Black"``) or cup-cap loop."""
    partner = {"Black": ("Black", "+", "-"), "Cup": ("Cap", "", "")}[kind]
    for i in range(c.p - 1):
        e1, e2 = c.events[i], c.events[i + 1]
        if (e1.kind, e2.kind) == (kind, partner[0]) and e1.pos == e2.pos and e1.labels == e2.labels \
                and (kind == "Cup" or (e1.mode, e2.mode) == partner[1:]):
            return pair_cancel(c, i)
    return None


def _deaths(c: Chart, kind: str, limit: int | None = None) -> list[MoveInstance]:
    rec = Recorder(c)
    while limit is None or len(rec.moves) < limit:
        m = _cancel_first(rec.chart, kind)
        if m is None:
            break
        rec.apply(m)
    return rec.moves


def _aura_frames(b: _Builder, exps: Sequence[int]) -> None:
    """Nested loops for every arc side by side, then every arc inside its loops."""
    loops, level = [], 0
    for m in exps:
        loops.extend(_loop_births(level, m))
        level += 2 * abs(m)
    b.push("aura loops", loops)
    arcs, level = [], 0
    for m in exps:
        arcs.append(_arc_birth(level, m))
        level += 2 * abs(m) + 2
    b.push("arc births", arcs)


def _plat_twists(b: _Builder, word: Sequence[int]) -> bool:
    """Twist the middle pair of the insert form once per letter; True when it returns."""
    start = b.chart
    prefer = [start.events[1].labels, start.events[2].labels]
    rec = Recorder(start)
    for k, letter in enumerate(word):
        half_twist(rec, 1, 1 if letter > 0 else -1, prefer)
        b.push(f"half twist {k + 1}", rec.moves)
        if k:
            rec = Recorder(b.chart)
            simplify(rec)
            b.push(f"cancel after twist {k + 1}", rec.moves)
        rec = Recorder(b.chart)
    return b.chart == start


def build_dihedral_movie(col: DihedralColoring, scheme: str = "aura", return_chunks: int = 7) -> ChartMovie:
    """Movie of closed dihedral charts realizing the colored diagram's surface.

    Frames run empty, aura loops, arcs in their loops.  Two-strand braid
    closures continue through the insert form, one half twist per crossing
    and the way back, then every arc and loop dies.  Other diagrams stop
    after the arcs are born with status ``simplification incomplete``.
    With ``scheme="steps"`` the first two arcs are born one per frame.
    """
    d = col.diagram
    n = col.n
    dihedral.check_parameter(n)
    if d.kind == "braid" and d.strands <= 2:
        colors = col.seed_colors()
    else:
        colors = col.arc_colors
    exps = [bowl_exponent(n, j) for j in colors]
    b = _Builder(empty(n, "dihedral"))
    name = f"dihedral n={n} {d.serialize()}"
    if scheme == "steps" and len(exps) == 2:
        level = 0
        for t, m in enumerate(exps):
            b.push(f"arc {'AB'[t]} with its loops", _loop_births(level, m) + [_arc_birth(level, m)])
            level += 2 * abs(m) + 2
    else:
        _aura_frames(b, exps)
    c1 = b.chart
    if d.kind != "braid" or d.strands > 2:
        return b.movie(name, INCOMPLETE, ["no sweep is implemented for this diagram; the movie stops "
                                          "once every arc is born"])
    if d.strands == 2:
        form, conv = to_insert_form(c1)
        b.push("insert form", conv)
        if not _plat_twists(b, d.word):
            return b.movie(name, INCOMPLETE, ["the twisted insert form did not return to its start"])
        back = inverse_sequence(c1, conv)
        for i, part in enumerate(_chunks(back, return_chunks)):
            b.push(f"return {i + 1}", part)
    if scheme == "steps" and len(exps) == 2:
        b.push("arc A dies", _deaths(b.chart, "Black", 1))
        rec = Recorder(b.chart)
        rec.extend(_deaths(rec.chart, "Black", 1))
        rec.extend(_deaths(rec.chart, "Cup"))
        b.push("arc B and the loops die", rec.moves)
    elif len(exps) == 1:
        rec = Recorder(b.chart)
        rec.extend(_deaths(rec.chart, "Black"))
        rec.extend(_deaths(rec.chart, "Cup"))
        b.push("arc and loops die", rec.moves)
    else:
        b.push("arc deaths", _deaths(b.chart, "Black"))
        b.push("loop deaths", _deaths(b.chart, "Cup"))
    status = COMPLETE if b.chart.p == 0 else INCOMPLETE
    return b.movie(name, status)


# -- cyclic movies ------------------------------------------------------------------


def build_cyclic_movie(d: KnotDiagram, n: int) -> ChartMovie:
    """Movie of permutation charts for the cyclic ``n``-fold cover along a braid closure.

    Every strand is born as a pair of branch vertices labelled by the
    ``n``-cycle, nested so the insertions sit in strand order.  Each crossing
    is a half twist of two equal insertions, which leaves the chart in place
    once its blocks cancel.  The strands then die in reverse order.
    """
    if n < 2:
        raise DiagramError("the cyclic cover needs degree at least 2")
    if d.kind != "braid":
        raise DiagramError("cyclic movies are built from braid closures only")
    tau = tuple(range(1, n))
    k = len(tau)
    b = _Builder(empty(n, "perm"))
    for i in range(d.strands):
        b.push(f"strand {i + 1} born", [pair_create(i, branch_event(i * k + 1, tau))])
    nested = b.chart
    if d.word:
        form, conv = to_insert_form(nested)
        b.push("insert form", conv)
        start = b.chart
        for t, letter in enumerate(d.word):
            rec = Recorder(b.chart)
            half_twist(rec, abs(letter) - 1, 1 if letter > 0 else -1, [tau])
            simplify(rec)
            b.push(f"crossing {t + 1}", rec.moves)
        if b.chart != start:
            return b.movie(f"cyclic n={n} {d.serialize()}", INCOMPLETE,
                           ["a crossing did not restore the insert form"])
        b.push("back to nested pairs", inverse_sequence(nested, conv))
    for i in reversed(range(d.strands)):
        b.push(f"strand {i + 1} dies", [pair_cancel(b.chart, i)])
    return b.movie(f"cyclic n={n} {d.serialize()}")


# -- verification -------------------------------------------------------------------


@dataclass
class MovieReport:
    status: str
    frames: list[dict]
    transitions: list[dict]
    failures: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def complete(self) -> bool:
        return self.ok and self.status == COMPLETE

    def to_json(self) -> dict:
        return {"ok": self.ok, "status": self.status, "frames": self.frames,
                "transitions": self.transitions, "failures": self.failures}

    def lines(self) -> list[str]:
        out = [f"status: {self.status}", f"frames: {len(self.frames)}"]
        for f in self.frames:
            inv = f.get("invariants")
            txt = f"components={inv['components']}, euler={inv['euler']}" if inv else "open"
            nodes = f" nodes={f['nodes']}" if "nodes" in f else ""
            out.append(f"frame {f['index']}: branch_points={f['branch_points']} {txt}{nodes}")
        out += [f"FAIL {x}" for x in self.failures] or ["all transitions certified"]
        return out


def _frame_info(i: int, c: Chart, orient: bool) -> dict:
    from .chart import branch_points
    info: dict = {"index": i, "valid": True, "branch_points": len(branch_points(c))}
    if c.is_closed:
        info["invariants"] = cover_invariants(c).to_json()
    if orient:
        from .compile import compile_chart
        from .orient import attempt_orientation
        pc = c if c.alphabet == "perm" else compile_chart(c)
        oc = attempt_orientation(pc)
        info["nodes"] = oc.node_count
        info["nodes_optimal"] = oc.optimal
    return info


def verify_movie(m: ChartMovie, orient: bool = False) -> MovieReport:
    """Re-check every frame and every transition of ``m``.

    A failing transition is reported with its frame pair and the index of
    the first move that does not apply.  Handle annotations and the euler
    bookkeeping between closed frames are recomputed.
    """
    failures: list[str] = []
    frames: list[dict] = []
    for i, c in enumerate(m.frames):
        bad = validate(c)
        if bad:
            failures.append(f"frame {i} invalid: {bad[0]}")
            frames.append({"index": i, "valid": False, "branch_points": 0})
            continue
        frames.append(_frame_info(i, c, orient))
    if m.frames and m.frames[0].p:
        failures.append("frame 0 is not the empty chart")
    if m.status == COMPLETE and m.frames and m.frames[-1].p:
        failures.append(f"frame {len(m.frames) - 1} is not the empty chart")
    trans: list[dict] = []
    for i, t in enumerate(m.transitions):
        a, b = m.frames[i], m.frames[i + 1]
        res = verify_sequence(a, t.moves)
        row = {"index": i, "label": t.label, "moves": len(t.moves), "ok": res.ok,
               "handles": [res.one_handles, res.two_handles]}
        trans.append(row)
        if not res.ok:
            where = f"move {res.index}" if res.index is not None else "start"
            failures.append(f"transition {i} (frame {i} -> {i + 1}) {where}: {res.reason}")
            continue
        if res.chart != b:
            failures.append(f"transition {i} (frame {i} -> {i + 1}) ends at a different chart")
            continue
        if (res.one_handles, res.two_handles) != (t.one_handles, t.two_handles):
            failures.append(f"transition {i} handle annotation {t.one_handles},{t.two_handles} "
                            f"should be {res.one_handles},{res.two_handles}")
        fa, fb = frames[i].get("invariants"), frames[i + 1].get("invariants")
        if fa and fb:
            delta = fb["euler"] - fa["euler"]
            row["delta_euler"] = delta
            if delta != -2 * res.one_handles + 2 * res.two_handles:
                failures.append(f"transition {i} changes euler by {delta} with handles "
                                f"{res.one_handles},{res.two_handles}")
        if not any(is_cover_changing(x) for x in t.moves) \
                and frames[i]["branch_points"] != frames[i + 1]["branch_points"]:
            failures.append(f"transition {i} moves branch points without a cover-changing move")
    return MovieReport(m.status, frames, trans, failures)


# -- the fixed torus-knot movie ------------------------------------------------------

T25_DIAGRAM = "braid s=2: 1 1 1 1 1"
T25_FIXTURE = Path(__file__).with_name("data") / "t25_movie.json"


def t25_coloring() -> DihedralColoring:
    from .coloring import fox_colorings, parse_diagram
    d = parse_diagram(T25_DIAGRAM)
    return next(c for c in fox_colorings(d, 5) if c.seed_colors() == (0, 1))


def build_t25_movie() -> ChartMovie:
    """The five-fold dihedral movie of T(2,5) with the two arcs born one at a time."""
    m = build_dihedral_movie(t25_coloring(), scheme="steps")
    m.name = "T(2,5) dihedral n=5"
    return m


def replay_t25_fixture(path: str | Path | None = None) -> ChartMovie:
    """Load the committed T(2,5) movie; callers verify it with :func:`verify_movie`."""
    return ChartMovie.loads(Path(path or T25_FIXTURE).read_text())
