"""Charts stored as Morse-style event movies.

A chart of degree ``n`` is a sequence of events.  Between consecutive events
the chart meets a vertical line in a *slice*: a word read bottom to top.
Each event rewrites a contiguous window of the slice starting at the
1-based position ``pos``: it consumes a subword and produces another.

==========  ======================  ======================
kind        consumes                produces
==========  ======================  ======================
Cup         --                      ``a, a^-1``
Cap         ``a, a^-1``             --
Crossing    ``j, k`` (|j-k| > 1)    ``k, j``
White       ``j, k, j`` (|j-k|=1)   ``k, j, k``
Black +/-   -- / ``a``              ``a`` / --
Branch +/-  -- / ``w``              ``w`` / --
Relator     ``u``                   ``v`` (dihedral only)
==========  ======================  ======================

Closed charts start and end with the empty slice.  Open charts (fragments,
the morphisms of the category of words) carry ``source``/``target`` slices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Iterator, Sequence

from . import dihedral, perm

KINDS = ("Cup", "Cap", "Crossing", "White", "Black", "Branch", "Relator")
BRANCH_KINDS = ("Black", "Branch")


class ChartError(ValueError):
    """Raised for malformed input or operations on invalid charts."""


# -- alphabets ----------------------------------------------------------------


class PermAlphabet:
    name = "perm"

    def __init__(self, n: int):
        if not 2 <= n <= perm.MAX_DEGREE:
            raise ChartError(f"degree {n} out of range 2..{perm.MAX_DEGREE}")
        self.n = n

    def check(self, a) -> None:
        if not isinstance(a, int) or isinstance(a, bool) or not 1 <= a <= self.n - 1:
            raise ChartError(f"letter {a!r} out of range 1..{self.n - 1}")

    def inv(self, a):
        return a

    def invert_word(self, word):
        return tuple(reversed(word))

    def evaluate(self, word) -> perm.Permutation:
        return perm.evaluate_word(self.n, word)

    def identity(self):
        return perm.Permutation.identity(self.n)

    def compose(self, a, b):
        return perm.compose(a, b)

    def inverse(self, a):
        return perm.inverse(a)

    def to_permutation(self, g) -> perm.Permutation:
        return g


class DihedralAlphabet:
    name = "dihedral"

    def __init__(self, n: int):
        try:
            dihedral.check_parameter(n)
        except ValueError as exc:
            raise ChartError(str(exc)) from None
        self.n = n

    def check(self, a) -> None:
        if a not in dihedral.LETTERS:
            raise ChartError(f"letter {a!r} not in {dihedral.LETTERS}")

    def inv(self, a):
        return dihedral.INVERSE_LETTER[a]

    def invert_word(self, word):
        return dihedral.invert_word(word)

    def evaluate(self, word) -> dihedral.DihedralElement:
        return dihedral.evaluate(self.n, word)

    def identity(self):
        return dihedral.DihedralElement.identity(self.n)

    def compose(self, a, b):
        return dihedral.multiply(a, b)

    def inverse(self, a):
        return dihedral.inverse(a)

    def to_permutation(self, g) -> perm.Permutation:
        return dihedral.psi(g)


def make_alphabet(name: str, n: int):
    if name == "perm":
        return PermAlphabet(n)
    if name == "dihedral":
        return DihedralAlphabet(n)
    raise ChartError(f"unknown alphabet {name!r}")


def is_relator_pair(n: int, before: Sequence[str], after: Sequence[str]) -> bool:
    """Whether ``before -> after`` is a single dihedral relator vertex.

    The cyclic word ``before . after^-1`` must read ``r r``, ``x^n`` or
    ``r x r x`` up to rotation, with ``r = r^-1`` and a common sign on ``x``.
    """
    cyc = tuple(before) + dihedral.invert_word(after)
    if not cyc:
        return False
    gens = "".join(a.lower() for a in cyc)
    xs = {a for a in cyc if a in "xX"}
    if len(xs) > 1:
        return False
    if gens == "rr":
        return True
    if gens == "x" * n:
        return True
    if len(gens) == 4 and gens in ("rxrx", "xrxr"):
        return True
    return False


# -- events -------------------------------------------------------------------


@dataclass(frozen=True)
class Event:
    kind: str
    pos: int
    labels: tuple = ()
    mode: str = ""
    after: tuple = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ChartError(f"unknown event kind {self.kind!r}")
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "after", tuple(self.after))
        if self.kind in BRANCH_KINDS:
            if self.mode not in ("+", "-"):
                raise ChartError(f"{self.kind} needs mode '+' or '-'")
        elif self.mode:
            raise ChartError(f"{self.kind} takes no mode")
        if self.kind != "Relator" and self.after:
            raise ChartError("only Relator events carry an output word")
        if not isinstance(self.pos, int) or self.pos < 1:
            raise ChartError(f"position must be a positive integer, got {self.pos!r}")

    def window(self, alpha) -> tuple[tuple, tuple]:
        """The consumed and produced words."""
        k, lab = self.kind, self.labels
        if k == "Cup":
            return (), (lab[0], alpha.inv(lab[0]))
        if k == "Cap":
            return (lab[0], alpha.inv(lab[0])), ()
        if k == "Crossing":
            return (lab[0], lab[1]), (lab[1], lab[0])
        if k == "White":
            j, kk = lab
            return (j, kk, j), (kk, j, kk)
        if k in BRANCH_KINDS:
            return ((), lab) if self.mode == "+" else (lab, ())
        return lab, self.after

    def inverse(self) -> "Event":
        """The event undoing this one at the same position."""
        k, lab = self.kind, self.labels
        if k == "Cup":
            return Event("Cap", self.pos, lab)
        if k == "Cap":
            return Event("Cup", self.pos, lab)
        if k in ("Crossing", "White"):
            return Event(k, self.pos, (lab[1], lab[0]))
        if k in BRANCH_KINDS:
            return Event(k, self.pos, lab, "-" if self.mode == "+" else "+")
        return Event("Relator", self.pos, self.after, after=lab)

    def shifted(self, delta: int) -> "Event":
        return Event(self.kind, self.pos + delta, self.labels, self.mode, self.after)

    def relabeled(self, fn) -> "Event":
        return Event(self.kind, self.pos, tuple(fn(a) for a in self.labels), self.mode,
                     tuple(fn(a) for a in self.after))

    def to_json(self) -> dict:
        d: dict[str, Any] = {"kind": self.kind, "pos": self.pos, "labels": list(self.labels)}
        if self.mode:
            d["mode"] = self.mode
        if self.kind == "Relator":
            d["after"] = list(self.after)
        return d

    @classmethod
    def from_json(cls, d: dict) -> "Event":
        extra = set(d) - {"kind", "pos", "labels", "mode", "after"}
        if extra:
            raise ChartError(f"unknown event fields {sorted(extra)}")
        try:
            return cls(d["kind"], d["pos"], tuple(d.get("labels", ())), d.get("mode", ""),
                       tuple(d.get("after", ())))
        except KeyError as exc:
            raise ChartError(f"event missing field {exc}") from None

    def __str__(self) -> str:
        lab = ",".join(str(a) for a in self.labels)
        extra = "->" + ",".join(str(a) for a in self.after) if self.kind == "Relator" else ""
        return f"{self.kind}{self.mode}({self.pos};{lab}{extra})"


# shorthand constructors


def cup(pos, a):
    return Event("Cup", pos, (a,))


def cap(pos, a):
    return Event("Cap", pos, (a,))


def crossing(pos, j, k):
    return Event("Crossing", pos, (j, k))


def white(pos, j, k):
    return Event("White", pos, (j, k))


def black(pos, a, mode="+"):
    return Event("Black", pos, (a,), mode)


def branch(pos, word, mode="+"):
    return Event("Branch", pos, tuple(word), mode)


def branch_event(pos, word, mode="+"):
    """Black for a single letter, Branch otherwise."""
    word = tuple(word)
    if not word:
        raise ChartError("empty branch word")
    return black(pos, word[0], mode) if len(word) == 1 else branch(pos, word, mode)


def relator(pos, before, after):
    return Event("Relator", pos, tuple(before), after=tuple(after))


# -- charts -------------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    level: int
    reason: str

    def __str__(self):
        return f"level {self.level}: {self.reason}"


def check_event(alpha, ev: Event, slice_: Sequence) -> str | None:
    """Reason the event cannot fire on ``slice_``, or None."""
    lab = ev.labels
    for a in lab + ev.after:
        try:
            alpha.check(a)
        except ChartError as exc:
            return str(exc)
    k = ev.kind
    if k in ("Cup", "Cap", "Black") and len(lab) != 1:
        return f"{k} takes exactly one label"
    if k in ("Crossing", "White"):
        if alpha.name != "perm":
            return f"{k} vertices exist only in permutation charts"
        if len(lab) != 2:
            return f"{k} takes two labels"
        gap = abs(lab[0] - lab[1])
        if k == "Crossing" and gap <= 1:
            return f"crossing labels {lab} must differ by more than 1"
        if k == "White" and gap != 1:
            return f"white vertex labels {lab} must differ by 1"
    if k == "Relator":
        if alpha.name != "dihedral":
            return "relator vertices exist only in dihedral charts"
        if not is_relator_pair(alpha.n, lab, ev.after):
            return f"{list(lab)} -> {list(ev.after)} is not a relator vertex"
    if k == "Branch" and len(lab) < 2:
        return "a branch word needs two or more letters; use Black for one"
    consumed, _ = ev.window(alpha)
    p = ev.pos
    if p > len(slice_) + 1 or p + len(consumed) - 1 > len(slice_):
        return f"position {p} outside slice of length {len(slice_)}"
    actual = tuple(slice_[p - 1:p - 1 + len(consumed)])
    if actual != tuple(consumed):
        return f"expected {list(consumed)} at {p}, found {list(actual)}"
    return None


def fire(alpha, ev: Event, slice_: tuple) -> tuple:
    consumed, produced = ev.window(alpha)
    p = ev.pos - 1
    return slice_[:p] + tuple(produced) + slice_[p + len(consumed):]


@dataclass(frozen=True)
class Chart:
    degree: int
    alphabet: str = "perm"
    events: tuple[Event, ...] = ()
    source: tuple = ()
    target: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "events", tuple(self.events))
        object.__setattr__(self, "source", tuple(self.source))
        object.__setattr__(self, "target", tuple(self.target))
        make_alphabet(self.alphabet, self.degree)

    @cached_property
    def alpha(self):
        return make_alphabet(self.alphabet, self.degree)

    @property
    def p(self) -> int:
        """Number of events (levels)."""
        return len(self.events)

    @property
    def is_closed(self) -> bool:
        return not self.source and not self.target

    def replace_events(self, events) -> "Chart":
        return Chart(self.degree, self.alphabet, tuple(events), self.source, self.target)

    # replay ---------------------------------------------------------------

    def iter_slices(self) -> Iterator[tuple]:
        """Yield slices at levels ``0..p``; raise ChartError on an illegal event."""
        s = self.source
        yield s
        for level, ev in enumerate(self.events, 1):
            reason = check_event(self.alpha, ev, s)
            if reason:
                raise ChartError(f"level {level}: {reason}")
            s = fire(self.alpha, ev, s)
            yield s

    @cached_property
    def _replay(self) -> tuple[tuple[tuple, ...], tuple[Violation, ...]]:
        slices = [self.source]
        violations = []
        try:
            for w in self.source:
                self.alpha.check(w)
        except ChartError as exc:
            violations.append(Violation(0, f"source: {exc}"))
            return tuple(slices), tuple(violations)
        s = self.source
        for level, ev in enumerate(self.events, 1):
            reason = check_event(self.alpha, ev, s)
            if reason:
                violations.append(Violation(level, reason))
                break
            s = fire(self.alpha, ev, s)
            slices.append(s)
        else:
            if s != self.target:
                violations.append(Violation(self.p, f"final slice {list(s)} differs from "
                                                    f"target {list(self.target)}"))
        return tuple(slices), tuple(violations)

    @property
    def width(self) -> int:
        """Width bound ``q``: the longest slice (recomputed on every call)."""
        return max(len(s) for s in self._replay[0])


def validate(c: Chart) -> list[Violation]:
    """Empty list iff every event fires and the final slice equals the target."""
    return list(c._replay[1])


def is_valid(c: Chart) -> bool:
    return not c._replay[1]


def require_valid(c: Chart) -> None:
    v = validate(c)
    if v:
        raise ChartError("invalid chart: " + "; ".join(map(str, v)))


def slices(c: Chart) -> tuple[tuple, ...]:
    require_valid(c)
    return c._replay[0]


def slice_at(c: Chart, level: int) -> tuple:
    if not 0 <= level <= c.p:
        raise ChartError(f"level {level} outside 0..{c.p}")
    return slices(c)[level]


def slice_permutation(c_or_n, word: Sequence | None = None, alphabet: str = "perm"):
    """Group element of a slice.

    Accepts ``(degree, word)`` or ``(chart, word)``; dihedral words give a
    dihedral element, use :func:`slice_as_permutation` for its image.
    """
    if isinstance(c_or_n, Chart):
        alpha = c_or_n.alpha
    else:
        alpha = make_alphabet(alphabet, c_or_n)
    return alpha.evaluate(tuple(word or ()))


@dataclass(frozen=True)
class BranchPoint:
    level: int
    pos: int
    word: tuple
    mode: str
    prefix: tuple  # slice letters below the vertex
    local: Any  # group element of the small loop around the vertex

    @property
    def is_simple(self) -> bool:
        return len(self.word) == 1


def branch_points(c: Chart) -> list[BranchPoint]:
    """One entry per Black/Branch event with its local monodromy."""
    sl = slices(c)
    alpha = c.alpha
    out = []
    for level, ev in enumerate(c.events, 1):
        if ev.kind not in BRANCH_KINDS:
            continue
        g = alpha.evaluate(ev.labels)
        if ev.mode == "-":
            g = alpha.inverse(g)
        out.append(BranchPoint(level, ev.pos, ev.labels, ev.mode, sl[level - 1][:ev.pos - 1], g))
    return out


def branch_count(c: Chart) -> int:
    return sum(1 for ev in c.events if ev.kind in BRANCH_KINDS)


# -- serialization ---------------------------------------------------------------


def chart_to_json(c: Chart) -> dict:
    d: dict[str, Any] = {"degree": c.degree, "alphabet": c.alphabet,
                         "events": [ev.to_json() for ev in c.events]}
    if c.source:
        d["source"] = list(c.source)
    if c.target:
        d["target"] = list(c.target)
    return d


def chart_from_json(d: dict) -> Chart:
    if not isinstance(d, dict):
        raise ChartError("chart JSON must be an object")
    extra = set(d) - {"degree", "alphabet", "events", "source", "target"}
    if extra:
        raise ChartError(f"unknown chart fields {sorted(extra)}")
    if "degree" not in d:
        raise ChartError("chart missing 'degree'")
    events = tuple(Event.from_json(e) for e in d.get("events", ()))
    return Chart(d["degree"], d.get("alphabet", "perm"), events,
                 tuple(d.get("source", ())), tuple(d.get("target", ())))


def dumps(obj: Any) -> str:
    """Canonical JSON text: fixed key order, compact separators."""
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=True)


def serialize(c: Chart) -> str:
    return dumps(chart_to_json(c))


def parse(text: str) -> Chart:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ChartError(f"malformed chart JSON: {exc}") from None
    return chart_from_json(data)


def empty(degree: int, alphabet: str = "perm") -> Chart:
    return Chart(degree, alphabet)
