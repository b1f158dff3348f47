"""Dihedral charts to permutation charts, branch resolution and the saw tooth."""

from __future__ import annotations

from typing import Sequence

from . import dihedral
from .blocks import rewrite_events
from .chart import (Chart, ChartError, Event, black, branch_event, cap, cup, fire, make_alphabet,
                    require_valid, slices)
from .dihedral import DihedralElement
from .moves import MoveInstance, apply_move, resolution_events


def psi_letters(n: int, word: Sequence[str], reduced: bool = True) -> tuple[int, ...]:
    """Concatenated transposition words of the letters of ``word``."""
    return tuple(j for a in word for j in dihedral.letter_psi_word(n, a, reduced))


def compile_event(n: int, ev: Event, below: Sequence[str], reduced: bool = True) -> list[Event]:
    """Permutation events for one dihedral event with ``below`` under its window."""
    at = 1 + len(psi_letters(n, below, reduced))
    if ev.kind == "Cup":
        w = dihedral.letter_psi_word(n, ev.labels[0], reduced)
        return [cup(at + t, j) for t, j in enumerate(w)]
    if ev.kind == "Cap":
        w = dihedral.letter_psi_word(n, ev.labels[0], reduced)
        return [cap(at + t, w[t]) for t in range(len(w) - 1, -1, -1)]
    if ev.kind in ("Black", "Branch"):
        return [branch_event(at, psi_letters(n, ev.labels, reduced), ev.mode)]
    if ev.kind == "Relator":
        before = psi_letters(n, ev.labels, reduced)
        after = psi_letters(n, ev.after, reduced)
        return list(rewrite_events("perm", n, before, after, base=at - 1))
    raise ChartError(f"{ev.kind} events do not occur in dihedral charts")


def compile_chart(d: Chart, reduced: bool = True) -> Chart:
    """The permutation chart obtained by replacing every letter by its psi-word.

    Letters become nested transposition strands, black and branch vertices
    carry the psi-word of their label, and relator vertices become blocks of
    crossings, white vertices and caps.
    """
    if d.alphabet != "dihedral":
        raise ChartError("compile_chart needs a dihedral chart")
    require_valid(d)
    n = d.degree
    sl = slices(d)
    events: list[Event] = []
    for i, ev in enumerate(d.events):
        events.extend(compile_event(n, ev, sl[i][:ev.pos - 1], reduced))
    out = Chart(n, "perm", tuple(events), psi_letters(n, d.source, reduced),
                psi_letters(n, d.target, reduced))
    require_valid(out)
    return out


def resolve_branch(c: Chart, level: int) -> Chart:
    """Replace the Branch event after ``level`` by simple black vertices.

    A Black event is already simple and is returned unchanged.
    """
    if not 0 <= level < c.p:
        raise ChartError(f"no event after level {level}")
    ev = c.events[level]
    if ev.kind == "Black":
        return c
    if ev.kind != "Branch":
        raise ChartError(f"event after level {level} is {ev.kind}, not a branch vertex")
    return apply_move(c, MoveInstance("BranchResolve", level))


def resolve_all(c: Chart) -> Chart:
    """Resolve every Branch event, lowest level first."""
    level = 0
    while level < c.p:
        ev = c.events[level]
        if ev.kind == "Branch":
            block = resolution_events(c.alpha, ev)
            c = resolve_branch(c, level)
            level += len(block)
        else:
            level += 1
    return c


def _point_events(n: int, a: DihedralElement) -> list[Event]:
    """Events inserting a vertex with value ``a`` at the bottom of the slice."""
    if a == DihedralElement.identity(n):
        raise ChartError("branch colors must be nontrivial")
    if not a.refl:
        return [branch_event(1, dihedral.element_word(a))]
    k = (n - 1) // 2
    for m in sorted(range(-k, k + 1), key=lambda t: (abs(t), -t)):
        letter = "x" if m >= 0 else "X"
        bowl = (letter,) * abs(m)
        if dihedral.evaluate(n, bowl + ("r",) + dihedral.invert_word(bowl)) == a:
            return [cup(i + 1, letter) for i in range(abs(m))] + [black(abs(m) + 1, "r")]
    raise AssertionError("every reflection is a conjugate of r")


def build_planar_cover_chart(n: int, colors: Sequence[DihedralElement]) -> Chart:
    """Saw-tooth chart for a cover of the sphere with branch values ``colors``.

    The vertex for ``a_1`` is inserted first and each later one below it, so
    the slice evaluates to ``a_1 a_2 ... a_b``; reflections sit inside
    conjugation bowls.  The slice is then trivialized by relator vertices.
    """
    dihedral.check_parameter(n)
    colors = list(colors)
    if len(colors) < 2:
        raise ChartError("a planar cover needs at least two branch points")
    prod = DihedralElement.identity(n)
    for a in colors:
        prod = dihedral.multiply(prod, a)
    if prod != DihedralElement.identity(n):
        raise ChartError(f"the product of the colors is {dihedral.format_element(prod)}, not the identity")
    events: list[Event] = []
    for a in colors:
        events.extend(_point_events(n, a))
    alpha = make_alphabet("dihedral", n)
    top: tuple = ()
    for ev in events:
        top = fire(alpha, ev, top)
    c = Chart(n, "dihedral", tuple(events) + rewrite_events("dihedral", n, top, ()))
    require_valid(c)
    return c
