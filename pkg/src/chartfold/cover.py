"""Covering-surface invariants of a closed chart.

Two independent routes:

* :func:`cover_invariants` conjugates each local monodromy to the common
  basepoint below the chart and applies Riemann-Hurwitz per orbit.
* :func:`sheet_trace_oracle` builds a cell structure on the sphere from the
  movie, lifts every cell to ``n`` sheets, glues sheets across strands and
  counts cells; components come from union-find.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import dihedral, perm
from .chart import BRANCH_KINDS, Chart, ChartError, branch_points, require_valid, slices
from .perm import Permutation


@dataclass(frozen=True)
class Component:
    sheets: frozenset[int]
    euler: int

    @property
    def genus(self) -> int:
        return (2 - self.euler) // 2

    def to_json(self) -> dict:
        return {"sheets": sorted(self.sheets), "euler": self.euler, "genus": self.genus}


@dataclass(frozen=True)
class CoverInvariants:
    degree: int
    branch_count: int
    component_orbits: tuple[frozenset[int], ...]
    euler_total: int
    per_component: tuple[Component, ...] = field(default=())

    @property
    def components(self) -> int:
        return len(self.component_orbits)

    def summary(self) -> tuple:
        """Comparable fingerprint: orbits with their euler numbers."""
        return (self.degree, self.branch_count, self.euler_total,
                tuple((tuple(sorted(c.sheets)), c.euler) for c in self.per_component))

    def to_json(self) -> dict:
        return {"components": self.components, "euler": self.euler_total,
                "per_component": [c.to_json() for c in self.per_component],
                "branch_points": self.branch_count}


def _edge_perm(c: Chart):
    if c.alphabet == "perm":
        return lambda j: perm.adjacent(c.degree, j)
    return lambda a: dihedral.psi(dihedral.letter_element(c.degree, a))


def _closed(c: Chart) -> None:
    require_valid(c)
    if not c.is_closed:
        raise ChartError("cover invariants need a closed chart (empty source and target)")


def global_monodromies(c: Chart, pushed: bool = True) -> list:
    """Monodromy of each branch point measured from the bottom basepoint.

    ``g = W^-1 o L o W`` with ``W`` the value of the slice letters below the
    vertex and ``L`` its local monodromy.  Dihedral charts give dihedral
    elements unless ``pushed`` asks for their permutation images.
    """
    require_valid(c)
    alpha = c.alpha
    out = []
    for bp in branch_points(c):
        w = alpha.evaluate(bp.prefix)
        g = alpha.compose(alpha.inverse(w), alpha.compose(bp.local, w))
        out.append(alpha.to_permutation(g) if pushed else g)
    return out


def invariants_from_monodromy(n: int, gens: list[Permutation]) -> CoverInvariants:
    """Riemann-Hurwitz on the sphere, one orbit at a time."""
    b = len(gens)
    orbits = perm.orbits(gens, n)
    comps = []
    for orb in orbits:
        cyc = sum(len(perm.restrict(g, orb)) for g in gens)
        comps.append(Component(orb, len(orb) * (2 - b) + cyc))
    total = n * (2 - b) + sum(perm.cycle_count(g) for g in gens)
    assert total == sum(x.euler for x in comps)
    return CoverInvariants(n, b, tuple(orbits), total, tuple(comps))


def cover_invariants(c: Chart) -> CoverInvariants:
    _closed(c)
    return invariants_from_monodromy(c.degree, global_monodromies(c))


# -- sheet-tracing oracle -----------------------------------------------------


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def add(self, a):
        self.parent.setdefault(a, a)

    def find(self, a):
        self.add(a)
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def base_complex(c: Chart):
    """Cells of the sphere decomposition used by the oracle.

    Faces are ``("F", column, gap)``; vertices ``"inf"``, ``("V", wall)`` and
    ``("P", wall, column_strand_index)`` for strands passing a wall.
    Edges are ``(left_face, right_face, gluing_letter_or_None, endpoints)``.
    """
    sl = slices(c)
    p = c.p
    faces = [("F", col, i) for col in range(p + 1) for i in range(len(sl[col]) + 1)]
    verts = {"inf"}
    edges = []
    # wall segments between column w-1 and column w
    for w in range(1, p + 1):
        ev = c.events[w - 1]
        consumed, produced = ev.window(c.alpha)
        a, b = len(consumed), len(produced)
        m = len(sl[w - 1])
        pos = ev.pos
        r = m - (pos - 1) - a
        v = ("V", w)
        verts.add(v)
        lower = ["inf"] + [("P", w, i) for i in range(1, pos)] + [v]
        upper = [v] + [("P", w, pos - 1 + b + i) for i in range(1, r + 1)] + ["inf"]
        verts.update(lower[1:-1])
        verts.update(upper[1:-1])
        for i in range(pos):
            edges.append((("F", w - 1, i), ("F", w, i), None, (lower[i], lower[i + 1])))
        for i in range(r + 1):
            edges.append((("F", w - 1, pos - 1 + a + i), ("F", w, pos - 1 + b + i), None,
                          (upper[i], upper[i + 1])))
    # strand segments inside each column
    for col in range(1, p):
        word = sl[col]
        for i, letter in enumerate(word, 1):
            left = _strand_end(c, col, i)
            right = _strand_start(c, col + 1, i)
            edges.append((("F", col, i - 1), ("F", col, i), letter, (left, right)))
    if p == 0:
        # a single face bounded by one vertex at infinity: V - E + F = 2
        pass
    return faces, sorted(verts, key=repr), edges


def _strand_end(c: Chart, col: int, i: int):
    """Endpoint on wall ``col`` of strand ``i`` of column ``col`` (its left end)."""
    ev = c.events[col - 1]
    _, produced = ev.window(c.alpha)
    if ev.pos <= i < ev.pos + len(produced):
        return ("V", col)
    return ("P", col, i)


def _strand_start(c: Chart, wall: int, i: int):
    """Endpoint on ``wall`` of strand ``i`` of the column to its left."""
    ev = c.events[wall - 1]
    consumed, produced = ev.window(c.alpha)
    if ev.pos <= i < ev.pos + len(consumed):
        return ("V", wall)
    if i < ev.pos:
        return ("P", wall, i)
    return ("P", wall, i - len(consumed) + len(produced))


def sheet_trace_oracle(c: Chart) -> CoverInvariants:
    """Invariants of the cover by explicit lifting of a cell complex."""
    _closed(c)
    n = c.degree
    gperm = _edge_perm(c)
    faces, verts, edges = base_complex(c)
    assert len(verts) - len(edges) + len(faces) == 2, "base complex is not a sphere"

    def glue(uf, edge):
        left, right, letter, _ = edge
        g = gperm(letter) if letter is not None else None
        for s in range(1, n + 1):
            uf.union((left, s), (right, g(s) if g else s))

    whole = _UnionFind()
    for f in faces:
        for s in range(1, n + 1):
            whole.add((f, s))
    for e in edges:
        glue(whole, e)

    # lifts of each vertex: sheet classes around its link
    incident: dict = {v: [] for v in verts}
    for e in edges:
        for v in set(e[3]):
            incident[v].append(e)
    vertex_lifts: list = []  # (component root) per lifted vertex
    for v in verts:
        link = _UnionFind()
        for e in incident[v]:
            glue(link, e)
            for f in (e[0], e[1]):
                for s in range(1, n + 1):
                    link.add((f, s))
        if not incident[v]:  # the lone vertex of the empty chart
            for s in range(1, n + 1):
                link.add((faces[0], s))
        roots = {link.find(x) for x in link.parent}
        vertex_lifts.extend(whole.find(r) for r in roots)

    base = ("F", 0, 0)
    comp_of_sheet = {s: whole.find((base, s)) for s in range(1, n + 1)}
    roots = sorted(set(comp_of_sheet.values()))
    euler = {r: 0 for r in roots}
    for r in vertex_lifts:
        euler[r] += 1
    for e in edges:
        for s in range(1, n + 1):
            euler[whole.find((e[0], s))] -= 1
    for f in faces:
        for s in range(1, n + 1):
            euler[whole.find((f, s))] += 1
    comps = []
    for r in roots:
        sheets = frozenset(s for s, rr in comp_of_sheet.items() if rr == r)
        comps.append(Component(sheets, euler[r]))
    comps.sort(key=lambda x: min(x.sheets))
    b = sum(1 for ev in c.events if ev.kind in BRANCH_KINDS)
    return CoverInvariants(n, b, tuple(x.sheets for x in comps), sum(euler.values()), tuple(comps))
