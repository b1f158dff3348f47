"""Acceptance criteria, one test each.

Every test prints a single ``PASS``/``FAIL`` line.  Running the file as a
script prints the same lines without pytest.
"""

import random
from itertools import product

import pytest

from chartfold import dihedral, figures, lemmas, perm
from chartfold.chart import branch_points, empty
from chartfold.coloring import coloring_to_representation, coloring_violations, fox_colorings, parse_diagram
from chartfold.compile import compile_chart, resolve_all
from chartfold.cover import cover_invariants, sheet_trace_oracle
from chartfold.dihedral import DihedralElement
from chartfold.generate import random_chart, random_charts
from chartfold.movie import build_cyclic_movie, replay_t25_fixture, verify_movie
from chartfold.orient import attempt_orientation, check_lift, edge_count, exhaustive_minimum

T25 = "braid s=2: 1 1 1 1 1"
FIG8_PD = "pd: X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]"
TREFOIL_PD = "pd: X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]"


def _first_miss(checks):
    return next((name for name, ok in checks if not ok), "")


def c1_dihedral_algebra():
    els = dihedral.elements(5)
    closure = [(f"{a}*{b}", (a * b) in els and dihedral.evaluate(5, dihedral.normal_word(a * b)) == a * b)
               for a in els for b in els]
    e = DihedralElement.identity(5)
    relators = [(w, dihedral.evaluate(5, tuple(w)) == e) for w in ("rr", "xxxxx", "xrxr")]
    table = {"r x": 5, "r x^2": 3, "r x^3": 1, "r x^4": 4,
             "x^-1 r x": 3, "x^-2 r x^2": 4, "x^-3 r x^3": 5, "x^-4 r x^4": 1}
    tables = [(t, dihedral.fixed_vertex(dihedral.parse_element(5, t)) == v) for t, v in table.items()]
    checks = closure + relators + tables
    return len(closure) == 100 and not _first_miss(checks), f"{len(closure)} products, 3 relators, 8 table rows"


def c2_psi():
    checks = [("psi(r) n=5", perm.format_compact(dihedral.psi(DihedralElement.r(5))) == "(13)(45)"),
              ("psi(r) n=7", perm.format_compact(dihedral.psi(DihedralElement.r(7))) == "(15)(24)(67)")]
    for n in (5, 7, 9):
        cycle = (1,) + tuple(range(n, 1, -1))
        checks.append((f"psi(x) n={n}", dihedral.psi(DihedralElement.x(n)) == perm.Permutation.from_cycles(n, [cycle])))
        els = dihedral.elements(n)
        checks.append((f"hom n={n}", all(dihedral.psi(a * b) == perm.compose(dihedral.psi(a), dihedral.psi(b))
                                         for a in els for b in els)))
    miss = _first_miss(checks)
    return not miss, miss or "exhaustive for n=5,7,9"


def c3_permutation_identities():
    a = perm.power(perm.parse_cycles(5, "(15432)"), 3)
    b = perm.parse_cycles(5, "(13524)")
    c = perm.power(perm.parse_cycles(5, "(12345)"), 2)
    lines = [perm.parse_product(t) for t in lemmas.EXAMPLE_LINES]
    checks = [("powers", a == b == c),
              ("16 letters", len(lines[0]) == 16),
              ("last line", perm.product_text(lines[-1]) == "(23)(12)(34)(23)(45)(34)"),
              ("values", all(perm.evaluate_word(5, w) == b for w in lines)),
              ("reduced", perm.reduce_word(5, lines[0]) == perm.reduce_word(5, lines[-1])
               and perm.is_reduced(5, lines[-1])),
              ("chain", lemmas.example_chain().p > 0)]
    miss = _first_miss(checks)
    return not miss, miss or "(15432)^3 = (13524) = (12345)^2, 6 lines"


def c4_cover_invariants():
    def pair(c):
        inv = cover_invariants(c)
        return inv.components, inv.euler_total

    frame = resolve_all(compile_chart(replay_t25_fixture().frames[2]))
    bps = branch_points(frame)
    checks = [("submarine", pair(figures.submarine()) == (3, 6)),
              ("fromnone2five top", pair(figures.fromnone2five_top()) == (1, 2)),
              ("t25 frame", len(bps) == 8 and all(bp.is_simple for bp in bps) and pair(frame) == (1, 2))]
    checks += [(f"empty {n}", pair(empty(n)) == (n, 2 * n)) for n in range(2, 8)]
    miss = _first_miss(checks)
    return not miss, miss or "3/6, 1/2, n/2n, t25 frame 8 points 1/2"


def c5_oracle():
    charts = random_charts(20250, 220)
    bad = [i for i, c in enumerate(charts) if cover_invariants(c).summary() != sheet_trace_oracle(c).summary()]
    degrees = {c.degree for c in charts}
    ok = not bad and len(charts) >= 200 and max(degrees) <= 6
    return ok, f"{len(charts)} charts, degrees {sorted(degrees)}" + (f", mismatch at {bad[:5]}" if bad else "")


def c6_lemmas():
    rows = lemmas.run_suite()
    cert = next(c for c in lemmas.load_certificates() if c.name == "lemma1")
    mid = lemmas.middle_slice(cert.end)
    t4321 = perm.parse_product("(45)(34)(23)(12)" * 3)
    checks = [(n, ok) for n, ok, _ in rows]
    checks += [("lemma1 ends", cert.start.source == cert.end.target == t4321),
               ("lemma1 centre", perm.product_text(mid) == "(12)(23)(34)(45)(12)(23)(34)(45)"
                and str(perm.evaluate_word(5, mid)) == "(1 3 5 2 4)")]
    names = {n for n, _, _ in rows}
    checks.append(("all present", {"lemma1", "corollary1:block-then-inverse", "lemma2:block-then-inverse"} <= names))
    miss = _first_miss(checks)
    return not miss, miss or f"{len(rows)} suite rows"


def _brute(d, n):
    return sum(not coloring_violations(d, n, cs) for cs in product(range(n), repeat=len(d.arcs)))


def c7_colorings():
    cases = [(T25, 5, 25), (FIG8_PD, 5, 25), (TREFOIL_PD, 3, 9)] + [("braid s=1: ", n, n) for n in (3, 5, 7)]
    checks = []
    for text, n, want in cases:
        d = parse_diagram(text)
        checks.append((f"{text} mod {n}", len(fox_colorings(d, n)) == want == _brute(d, n)))
    d = parse_diagram(T25)
    bridge = [c for c in fox_colorings(d, 5) if c.seed_colors() == (0, 1)]
    rep = coloring_to_representation(bridge[0]) if bridge else {}
    checks.append(("bridge", [dihedral.fixed_vertex(rep[a]) for a in d.seed_arcs] == [2, 3] if rep else False))
    miss = _first_miss(checks)
    return not miss, miss or "25, 25, 9, n; bridge [2],[3]"


def c8_replay():
    m = replay_t25_fixture()
    rep = verify_movie(m)
    counts = [f["branch_points"] for f in rep.frames]
    deltas = [t.get("delta_euler") for t in rep.transitions]
    checks = [("verifies", rep.ok and rep.complete),
              ("21 steps", len(m.transitions) == 21),
              ("frames 2-19", all(k == 4 for k in counts[2:20]) and counts[1] == counts[20] == 2),
              ("handles", deltas[:2] == [-4, -4] and deltas[-2:] == [4, 4] and sum(deltas) == 0)]
    miss = _first_miss(checks)
    return not miss, miss or f"{len(m.frames)} frames, delta euler {deltas[:2]} ... {deltas[-2:]}"


def c9_compilation():
    rng = random.Random(909)
    bad = []
    for i in range(120):
        d = random_chart(rng, rng.choice((3, 5)), "dihedral", rng.randint(0, 10))
        c = compile_chart(d)
        r = resolve_all(c)
        before, after = cover_invariants(c).summary(), cover_invariants(r).summary()
        if not (cover_invariants(d).summary() == before == sheet_trace_oracle(c).summary()
                and (after[0],) + after[2:] == (before[0],) + before[2:]
                and all(bp.is_simple for bp in branch_points(r))):
            bad.append(i)
    return not bad, "120 dihedral charts" + (f", failures {bad[:5]}" if bad else "")


def c10_orientation():
    movies = [build_cyclic_movie(parse_diagram(t), n) for t, n in
              [("braid s=2: 1 1 1", 5), ("braid s=2: 1 1 1 1 1", 3), ("braid s=3: 1 -2 1 -2", 5),
               ("braid s=1: ", 5)]]
    nodes = [f["nodes"] for m in movies for f in verify_movie(m, orient=True).frames]
    rng = random.Random(1010)
    small = 0
    mismatched = []
    while small < 40:
        c = random_chart(rng, rng.choice((2, 3, 4)), "perm", rng.randint(0, 8))
        if edge_count(c) > 12:
            continue
        small += 1
        oc = attempt_orientation(c)
        if check_lift(oc) or oc.node_count != exhaustive_minimum(c):
            mismatched.append(small)
    ok = all(k == 0 for k in nodes) and not mismatched
    return ok, f"{len(nodes)} cyclic frames with 0 nodes, {small} small charts at the exhaustive minimum"


CRITERIA = [c1_dihedral_algebra, c2_psi, c3_permutation_identities, c4_cover_invariants, c5_oracle,
            c6_lemmas, c7_colorings, c8_replay, c9_compilation, c10_orientation]


def _line(k, fn):
    ok, detail = fn()
    return ok, f"{'PASS' if ok else 'FAIL'} criterion {k}: {fn.__name__.split('_', 1)[1]} ({detail})"


@pytest.mark.parametrize("k", range(1, len(CRITERIA) + 1))
def test_criterion(k, capsys):
    ok, line = _line(k, CRITERIA[k - 1])
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    for k, fn in enumerate(CRITERIA, 1):
        print(_line(k, fn)[1])
