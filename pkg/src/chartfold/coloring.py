"""Knot diagrams (braid closures and PD codes) and their Fox colorings.

Text formats::

    braid s=2: 1 1 1 1 1          closure of sigma_1^5 on two strands
    braid s=3: 1 -2 1 -2          negative letters are inverse generators
    pd: X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]

In a PD crossing ``X[a,b,c,d]`` the under strand runs from ``a`` to ``c``
and ``b``, ``d`` lie on the over strand.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from . import dihedral
from .dihedral import DihedralElement


class DiagramError(ValueError):
    """Malformed or unrealizable diagram text."""


@dataclass(frozen=True)
class Crossing:
    over: int
    under_in: int
    under_out: int
    sign: int


@dataclass(frozen=True)
class KnotDiagram:
    kind: str  # "braid" or "pd"
    strands: int = 0
    word: tuple[int, ...] = ()
    pd: tuple[tuple[int, int, int, int], ...] = ()
    arcs: tuple[int, ...] = field(default=(), compare=False)
    crossings: tuple[Crossing, ...] = field(default=(), compare=False)
    components: int = field(default=1, compare=False)
    # braid only: arc at each bottom position, the strands' seed arcs
    seed_arcs: tuple[int, ...] = field(default=(), compare=False)

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)

    def serialize(self) -> str:
        if self.kind == "braid":
            return f"braid s={self.strands}: " + " ".join(str(x) for x in self.word)
        return "pd: " + " ".join("X[" + ",".join(map(str, x)) + "]" for x in self.pd)


class _UF:
    def __init__(self, items):
        self.p = {i: i for i in items}

    def find(self, a):
        while self.p[a] != a:
            self.p[a] = self.p[self.p[a]]
            a = self.p[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.p[max(ra, rb)] = min(ra, rb)


def braid_diagram(strands: int, word: Sequence[int]) -> KnotDiagram:
    """Closure of a braid word.

    For ``i`` the strand at position ``i`` passes over to ``i+1`` and the
    strand at ``i+1`` passes under to ``i``; ``-i`` mirrors this.
    """
    if strands < 1:
        raise DiagramError("a braid needs at least one strand")
    word = tuple(int(x) for x in word)
    for x in word:
        if x == 0 or abs(x) >= strands:
            raise DiagramError(f"braid letter {x} out of range for {strands} strands")
    at = list(range(strands))
    nxt = strands
    raw = []
    for x in word:
        i = abs(x) - 1
        if x > 0:
            over, under = at[i], at[i + 1]
            at[i], at[i + 1] = nxt, over
            raw.append((over, under, nxt, 1))
        else:
            over, under = at[i + 1], at[i]
            at[i], at[i + 1] = over, nxt
            raw.append((over, under, nxt, -1))
        nxt += 1
    uf = _UF(range(nxt))
    for pos in range(strands):
        uf.union(at[pos], pos)
    names: dict = {}
    for a in range(nxt):
        names.setdefault(uf.find(a), len(names))
    crossings = tuple(Crossing(names[uf.find(o)], names[uf.find(u)], names[uf.find(v)], s)
                      for o, u, v, s in raw)
    perm_ = list(range(strands))
    for x in word:
        i = abs(x) - 1
        perm_[i], perm_[i + 1] = perm_[i + 1], perm_[i]
    seen, comps = set(), 0
    for s in range(strands):
        if s not in seen:
            comps += 1
            while s not in seen:
                seen.add(s)
                s = perm_[s]
    return KnotDiagram("braid", strands, word, arcs=tuple(range(len(names))), crossings=crossings,
                       components=comps, seed_arcs=tuple(names[uf.find(p)] for p in range(strands)))


def pd_diagram(pd: Sequence[Sequence[int]]) -> KnotDiagram:
    pd = tuple(tuple(int(v) for v in x) for x in pd)
    if any(len(x) != 4 for x in pd):
        raise DiagramError("every PD crossing needs four edge labels")
    labels: dict = {}
    for x in pd:
        for v in x:
            labels[v] = labels.get(v, 0) + 1
    bad = sorted(v for v, k in labels.items() if k != 2)
    if bad:
        raise DiagramError(f"edge labels {bad} do not appear exactly twice")
    edges = sorted(labels)
    comp = _UF(edges)
    arcs = _UF(edges)
    for a, b, c, d in pd:
        comp.union(a, c)
        comp.union(b, d)
        arcs.union(b, d)
    # each edge must be the incoming end of exactly one crossing position along its component
    names: dict = {}
    for e in edges:
        names.setdefault(arcs.find(e), len(names))
    comp_edges: dict = {}
    for e in edges:
        comp_edges.setdefault(comp.find(e), []).append(e)
    crossings = []
    for a, b, c, d in pd:
        members = comp_edges[comp.find(b)]
        succ = members[(members.index(b) + 1) % len(members)]
        sign = -1 if succ == d else 1
        crossings.append(Crossing(names[arcs.find(b)], names[arcs.find(a)], names[arcs.find(c)], sign))
    return KnotDiagram("pd", pd=pd, arcs=tuple(range(len(names))), crossings=tuple(crossings),
                       components=len(comp_edges))


_BRAID = re.compile(r"^\s*braid\s+s\s*=\s*(\d+)\s*:(.*)$", re.I | re.S)
_PD = re.compile(r"^\s*pd\s*:(.*)$", re.I | re.S)


def parse_diagram(text: str) -> KnotDiagram:
    m = _BRAID.match(text)
    if m:
        body = m.group(2).replace(",", " ").split()
        try:
            word = [int(t) for t in body]
        except ValueError:
            raise DiagramError(f"bad braid letters in {text.strip()!r}") from None
        return braid_diagram(int(m.group(1)), word)
    m = _PD.match(text)
    if m:
        groups = re.findall(r"\[([^\[\]]*)\]", m.group(1))
        if not groups:
            raise DiagramError("no PD crossings found")
        try:
            return pd_diagram([[int(t) for t in g.split(",")] for g in groups])
        except ValueError:
            raise DiagramError(f"bad PD labels in {text.strip()!r}") from None
    raise DiagramError("diagram text must start with 'braid s=N:' or 'pd:'")


# -- colorings ---------------------------------------------------------------------


@dataclass(frozen=True)
class DihedralColoring:
    """Arc ``i`` colored ``j`` stands for the reflection ``x^-j r x^j``."""

    n: int
    arc_colors: tuple[int, ...]
    diagram: KnotDiagram = field(compare=False, repr=False, default=None)

    @property
    def trivial(self) -> bool:
        return len(set(self.arc_colors)) <= 1

    def seed_colors(self) -> tuple[int, ...]:
        return tuple(self.arc_colors[a] for a in self.diagram.seed_arcs)

    def to_json(self) -> dict:
        return {"n": self.n, "diagram": self.diagram.serialize(), "arc_colors": list(self.arc_colors),
                "trivial": self.trivial}

    @classmethod
    def from_json(cls, d: dict) -> "DihedralColoring":
        col = cls(int(d["n"]), tuple(int(v) for v in d["arc_colors"]), parse_diagram(d["diagram"]))
        check_coloring(col)
        return col


@dataclass(frozen=True)
class CyclicLabeling:
    """Every arc sent to the same rotation ``x^power``."""

    n: int
    power: int

    def element(self) -> DihedralElement:
        return DihedralElement.x(self.n, self.power)


def coloring_violations(d: KnotDiagram, n: int, colors: Sequence[int]) -> list[int]:
    """Indices of crossings where ``c = 2b - a`` fails mod n."""
    return [i for i, x in enumerate(d.crossings)
            if (2 * colors[x.over] - colors[x.under_in] - colors[x.under_out]) % n]


def check_coloring(col: DihedralColoring) -> None:
    bad = coloring_violations(col.diagram, col.n, col.arc_colors)
    if len(col.arc_colors) != len(col.diagram.arcs):
        raise DiagramError("one color per arc is required")
    if bad:
        raise DiagramError(f"coloring fails at crossings {bad}")


def _propagate(d: KnotDiagram, n: int, colors: list) -> bool:
    half = pow(2, -1, n)
    changed = True
    while changed:
        changed = False
        for x in d.crossings:
            b, a, c = colors[x.over], colors[x.under_in], colors[x.under_out]
            known = (b is not None) + (a is not None) + (c is not None)
            if known == 3:
                if (2 * b - a - c) % n:
                    return False
            elif known == 2:
                if b is None:
                    colors[x.over] = (a + c) * half % n
                elif a is None:
                    colors[x.under_in] = (2 * b - c) % n
                else:
                    colors[x.under_out] = (2 * b - a) % n
                changed = True
    return True


def _solutions(d: KnotDiagram, n: int, colors: list) -> list[tuple[int, ...]]:
    if not _propagate(d, n, colors):
        return []
    free = next((i for i, v in enumerate(colors) if v is None), None)
    if free is None:
        return [tuple(colors)]
    out = []
    for v in range(n):
        trial = colors[:]
        trial[free] = v
        out.extend(_solutions(d, n, trial))
    return out


def fox_colorings(d: KnotDiagram, n: int) -> list[DihedralColoring]:
    """Every coloring of the arcs by integers mod ``n``, in lexicographic order.

    Braids are solved from their seed strands; PD codes by assigning arcs one
    at a time and propagating the crossing relations.
    """
    dihedral.check_parameter(n)
    if d.kind == "braid":
        found = set()
        for seed in product(range(n), repeat=d.strands):
            colors: list = [None] * len(d.arcs)
            ok = True
            for a, v in zip(d.seed_arcs, seed):
                if colors[a] is not None and colors[a] != v:
                    ok = False
                colors[a] = v
            if ok:
                found.update(_solutions(d, n, colors))
        sols = sorted(found)
    else:
        sols = sorted(set(_solutions(d, n, [None] * len(d.arcs))))
    return [DihedralColoring(n, s, d) for s in sols]


def cyclic_labelings(d: KnotDiagram, n: int) -> list[CyclicLabeling]:
    """Nontrivial constant-rotation labelings; they satisfy every crossing."""
    dihedral.check_parameter(n)
    return [CyclicLabeling(n, k) for k in range(1, n)]


def coloring_to_representation(col: DihedralColoring) -> dict[int, DihedralElement]:
    rep = {a: dihedral.conjugate_reflection(col.n, j) for a, j in enumerate(col.arc_colors)}
    for x in col.diagram.crossings:
        b = rep[x.over]
        if dihedral.multiply(dihedral.multiply(b, rep[x.under_in]), b) != rep[x.under_out]:
            raise DiagramError("coloring does not give a representation")
    return rep


def dumps_colorings(cols: Sequence[DihedralColoring]) -> str:
    return json.dumps([c.to_json() for c in cols], separators=(",", ":"))
