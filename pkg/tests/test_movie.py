import pytest

from chartfold.chart import branch_points
from chartfold.coloring import DiagramError, fox_colorings, parse_diagram
from chartfold.compile import compile_chart, resolve_all
from chartfold.cover import cover_invariants
from chartfold.movie import (COMPLETE, INCOMPLETE, ChartMovie, T25_FIXTURE, bowl_exponent,
                             build_cyclic_movie, build_dihedral_movie, build_t25_movie, replay_t25_fixture,
                             t25_coloring, verify_movie)


@pytest.fixture(scope="module")
def t25():
    return replay_t25_fixture()


def test_fixture_is_what_the_builder_makes(t25):
    assert T25_FIXTURE.read_text() == build_t25_movie().dumps()
    assert ChartMovie.loads(t25.dumps()).to_json() == t25.to_json()


def test_t25_replay_structure(t25):
    rep = verify_movie(t25)
    assert rep.ok and rep.complete
    counts = [f["branch_points"] for f in rep.frames]
    assert len(t25.frames) == 22 and len(t25.transitions) == 21
    assert counts[0] == counts[-1] == 0 and counts[1] == 2
    assert all(k == 4 for k in counts[2:20])
    deltas = [t.get("delta_euler") for t in rep.transitions]
    assert deltas[:2] == [-4, -4] and deltas[-2:] == [4, 4] and set(deltas[2:-2]) == {0}


def test_t25_middle_frame_compiles_to_a_sphere(t25):
    c = resolve_all(compile_chart(t25.frames[2]))
    inv = cover_invariants(c)
    assert len(branch_points(c)) == 8 and all(bp.is_simple for bp in branch_points(c))
    assert (inv.components, inv.euler_total) == (1, 2)


def test_fault_injection_is_pinpointed(t25):
    data = t25.to_json()
    data["transitions"][5]["moves"][2]["level"] += 3
    rep = verify_movie(ChartMovie.from_json(data))
    assert not rep.ok
    assert rep.failures[0].startswith("transition 5 (frame 5 -> 6) move 2")


def test_wrong_handle_annotation_is_reported(t25):
    data = t25.to_json()
    data["transitions"][0]["handles"]["one"] = 1
    rep = verify_movie(ChartMovie.from_json(data))
    assert any("handle annotation" in f for f in rep.failures)


def test_frame_count_mismatch_rejected(t25):
    data = t25.to_json()
    data["transitions"].pop()
    with pytest.raises(Exception):
        ChartMovie.from_json(data)


@pytest.mark.parametrize("word", ["1 1 1 1 1", "-1 -1 -1 -1 -1", "1 1 1"])
def test_two_bridge_movies_complete(word):
    n = 5 if word.count("1") == 5 else 3
    d = parse_diagram(f"braid s=2: {word}")
    col = next(c for c in fox_colorings(d, n) if not c.trivial)
    m = build_dihedral_movie(col)
    rep = verify_movie(m)
    assert m.status == COMPLETE and rep.ok
    assert cover_invariants(m.frames[2]).euler_total == 2


def test_unknot_movie_has_four_frames():
    d = parse_diagram("braid s=1: ")
    m = build_dihedral_movie(fox_colorings(d, 5)[1])
    assert len(m.frames) == 4 and m.status == COMPLETE and verify_movie(m).ok


def test_pd_movies_stop_after_the_arcs():
    d = parse_diagram("pd: X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]")
    col = next(c for c in fox_colorings(d, 5) if not c.trivial)
    m = build_dihedral_movie(col)
    rep = verify_movie(m)
    assert m.status == INCOMPLETE and rep.ok and not rep.complete
    assert len(m.frames) == 3 and len(branch_points(m.frames[2])) == 8


def test_bowl_exponents_are_small():
    for j in range(5):
        m = bowl_exponent(5, j)
        assert abs(m) <= 2


@pytest.mark.parametrize("text,n", [("braid s=2: 1 1 1", 5), ("braid s=3: 1 -2 1 -2", 5),
                                    ("braid s=1: ", 5), ("braid s=2: 1 1 1 1 1", 3)])
def test_cyclic_movies_verify_and_orient(text, n):
    m = build_cyclic_movie(parse_diagram(text), n)
    rep = verify_movie(m, orient=True)
    assert rep.ok and m.status == COMPLETE
    assert all(f["nodes"] == 0 for f in rep.frames)


def test_cyclic_trefoil_unknot_shape():
    m = build_cyclic_movie(parse_diagram("braid s=1: "), 5)
    assert len(m.frames) == 3
    mid = cover_invariants(m.frames[1])
    assert (mid.components, mid.euler_total) == (1, 2)


def test_cyclic_movie_needs_a_braid():
    with pytest.raises(DiagramError):
        build_cyclic_movie(parse_diagram("pd: X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]"), 5)


def test_t25_coloring_seeds():
    assert t25_coloring().seed_colors() == (0, 1)
