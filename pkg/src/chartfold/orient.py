"""Lifting a permutation chart to an oriented braid chart, with nodes.

Strand segments live in the columns between events.  Segments joined
through passing points, cups and caps form the chart's edges.  Crossings
and white vertices constrain the directions of their incident edge ends;
black and branch vertices do not.  An edge whose two ends disagree needs
one node, a point where its orientation reverses.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .chart import Chart, ChartError, require_valid, slices

# direction of a segment: +1 points towards higher levels, -1 towards lower


@dataclass
class ChartGraph:
    segments: list[tuple[int, int]]
    links: list[tuple[tuple, tuple, int]]  # (seg, seg, relation) with d1 == relation * d2
    vertices: list[tuple[str, list]]  # (kind, [(seg, side)]) side "L" or "R"
    chains: list[list[tuple[int, int]]] = field(default_factory=list)


def chart_graph(c: Chart) -> ChartGraph:
    require_valid(c)
    if c.alphabet != "perm":
        raise ChartError("orientation lifting needs a permutation chart")
    sl = slices(c)
    segs = [(col, i) for col in range(c.p + 1) for i in range(1, len(sl[col]) + 1)]
    links: list = []
    verts: list = []
    for w, ev in enumerate(c.events, 1):
        consumed, produced = ev.window(c.alpha)
        a, b, pos = len(consumed), len(produced), ev.pos
        for i in range(1, len(sl[w - 1]) + 1):
            if i < pos:
                links.append(((w - 1, i), (w, i), 1))
            elif i >= pos + a:
                links.append(((w - 1, i), (w, i - a + b), 1))
        if ev.kind == "Cup":
            links.append(((w, pos), (w, pos + 1), -1))
        elif ev.kind == "Cap":
            links.append(((w - 1, pos), (w - 1, pos + 1), -1))
        else:
            ends = [((w - 1, pos + t), "L") for t in range(a)] + [((w, pos + t), "R") for t in range(b)]
            verts.append((ev.kind, ends))
    g = ChartGraph(segs, links, verts)
    g.chains = _chains(g)
    return g


def _chains(g: ChartGraph) -> list[list[tuple[int, int]]]:
    adj: dict = {s: [] for s in g.segments}
    for s, t, _ in g.links:
        adj[s].append(t)
        adj[t].append(s)
    seen: set = set()
    out = []
    # start from segments with fewer than two links so open chains come out in order
    order = sorted(g.segments, key=lambda s: (len(adj[s]) == 2, s))
    for s in order:
        if s in seen:
            continue
        path, prev, cur = [], None, s
        while cur is not None and cur not in seen:
            seen.add(cur)
            path.append(cur)
            nxt = [t for t in adj[cur] if t != prev and t not in seen]
            prev, cur = cur, (nxt[0] if nxt else None)
        out.append(path)
    return out


def vertex_states(kind: str, ends: list) -> list[dict]:
    """Allowed direction assignments to the ends ``(segment, side)`` of a vertex.

    Black and branch vertices impose nothing and return ``[]``.
    """
    if kind == "Crossing":
        l1, l2, r1, r2 = ends
        return [{l1: dj, r2: dj, l2: dk, r1: dk} for dj in (1, -1) for dk in (1, -1)]
    if kind == "White":
        cycle = [ends[0], ends[1], ends[2], ends[5], ends[4], ends[3]]
        states = []
        for start in range(6):
            incoming = {cycle[(start + t) % 6] for t in range(3)}
            states.append({e: (1 if (e in incoming) == (e[1] == "L") else -1) for e in ends})
        return states
    return []


@dataclass
class OrientedChart:
    chart: Chart
    directions: dict
    nodes: list
    optimal: bool

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    def to_json(self) -> dict:
        from .chart import chart_to_json
        return {"chart": chart_to_json(self.chart),
                "orientation": [[col, i, d] for (col, i), d in sorted(self.directions.items())],
                "nodes": [list(s) for s in sorted(self.nodes)],
                "node_count": self.node_count, "optimal": self.optimal}


class _Problem:
    """Vertices with finite state sets; chains cost one node when their ends disagree."""

    def __init__(self, g: ChartGraph):
        self.g = g
        self.parity: dict = {}
        self.chain_of: dict = {}
        rel = {}
        for s, t, r in g.links:
            rel[(s, t)] = rel[(t, s)] = r
        for k, path in enumerate(g.chains):
            d = 1
            for idx, s in enumerate(path):
                if idx:
                    d *= rel[(path[idx - 1], s)]
                self.parity[s] = d
                self.chain_of[s] = k
        self.vars = [(kind, ends, vertex_states(kind, ends)) for kind, ends in g.vertices]
        self.vars = [v for v in self.vars if v[2]]
        owner: dict = {}
        for vi, (_, ends, _) in enumerate(self.vars):
            for e in ends:
                owner.setdefault(self.chain_of[e[0]], []).append((vi, e))
        # chains whose two ends are both constrained
        self.pairs = [tuple(v) for v in owner.values() if len(v) == 2]

    def chain_cost(self, states) -> int:
        cost = 0
        for (v1, s1), (v2, s2) in self.pairs:
            d1 = states[v1][s1] * self.parity[s1[0]]
            d2 = states[v2][s2] * self.parity[s2[0]]
            cost += d1 != d2
        return cost


def _solve(p: _Problem, budget: int) -> tuple[list[int], int, bool]:
    nv = len(p.vars)
    by_last: list[list] = [[] for _ in range(nv)]
    for pair in p.pairs:
        by_last[max(pair[0][0], pair[1][0])].append(pair)
    # the all-rightward choice is the initial upper bound
    best = [0] * nv
    best_cost = p.chain_cost([p.vars[i][2][0] for i in range(nv)])
    choice = [0] * nv
    steps = 0
    exhausted = True

    def rec(i: int, cost: int):
        nonlocal best, best_cost, steps, exhausted
        if cost >= best_cost:
            return
        if i == nv:
            best, best_cost = choice[:], cost
            return
        for k, st in enumerate(p.vars[i][2]):
            steps += 1
            if steps > budget:
                exhausted = False
                return
            choice[i] = k
            add = 0
            for (v1, s1), (v2, s2) in by_last[i]:
                st1 = st if v1 == i else p.vars[v1][2][choice[v1]]
                st2 = st if v2 == i else p.vars[v2][2][choice[v2]]
                add += st1[s1] * p.parity[s1[0]] != st2[s2] * p.parity[s2[0]]
            rec(i + 1, cost + add)

    rec(0, 0)
    return best, best_cost, exhausted


def attempt_orientation(c: Chart, budget: int = 200_000) -> OrientedChart:
    """Direct every edge, inserting the fewest nodes found within ``budget``."""
    g = chart_graph(c)
    p = _Problem(g)
    choice, _, exact = _solve(p, budget)
    states = [p.vars[i][2][k] for i, k in enumerate(choice)]
    want: dict = {}
    for st in states:
        for (seg, side), d in st.items():
            want.setdefault(seg, []).append(d * p.parity[seg])
    directions: dict = {}
    nodes: list = []
    for path in g.chains:
        roots = [(idx, r) for idx, seg in enumerate(path) for r in want.get(seg, [])]
        if len({r for _, r in roots}) <= 1:
            r0 = roots[0][1] if roots else 1
            for seg in path:
                directions[seg] = r0 * p.parity[seg]
            continue
        # two constrained ends that disagree: one node on the middle segment
        (f, r_first), (_, r_last) = roots[0], roots[-1]
        mid = len(path) // 2
        nodes.append(path[mid])
        for idx, seg in enumerate(path):
            first_side = idx < mid if f < mid else idx > mid
            directions[seg] = (r_first if first_side else r_last) * p.parity[seg]
    return OrientedChart(c, directions, nodes, exact)


def edge_count(c: Chart) -> int:
    return len(chart_graph(c).chains)


def exhaustive_minimum(c: Chart) -> int:
    """Fewest nodes over every combination of vertex states, with no pruning."""
    g = chart_graph(c)
    p = _Problem(g)
    best = None
    for combo in product(*(v[2] for v in p.vars)):
        cost = p.chain_cost(list(combo))
        best = cost if best is None else min(best, cost)
    return best or 0


def check_lift(oc: OrientedChart) -> list[str]:
    """Local braid-chart constraints violated away from nodes."""
    g = chart_graph(oc.chart)
    d = oc.directions
    skip = set(oc.nodes)
    bad = []
    for s, t, r in g.links:
        if s in skip or t in skip:
            continue
        if d[s] != r * d[t]:
            bad.append(f"edge through {s} and {t} changes direction")
    for kind, ends in g.vertices:
        states = vertex_states(kind, ends)
        live = [e for e in ends if e[0] not in skip]
        if states and not any(all(st[e] == d[e[0]] for e in live) for st in states):
            bad.append(f"{kind} vertex at {ends[0][0]} has an illegal in/out pattern")
    return bad
