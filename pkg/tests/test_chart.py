import pytest
from hypothesis import given

from chartfold import figures, perm
from chartfold.chart import (Chart, ChartError, Event, black, branch, branch_points, cap, crossing, cup,
                             empty, parse, serialize, slice_at, slice_permutation, slices, validate, white)
from tests.conftest import chart_from_seed, seeds


def test_empty_chart_is_valid():
    assert validate(empty(5)) == []
    assert slices(empty(5)) == ((),)


def test_submarine_movie_is_valid_with_middle_slice_r():
    c = figures.submarine()
    assert validate(c) == []
    assert slice_at(c, 3) == (4, 1, 2, 1)
    assert perm.format_compact(slice_permutation(5, slice_at(c, 3))) == "(13)(45)"
    assert len(branch_points(c)) == 4


def test_cap_on_unequal_letters_is_reported_at_its_level():
    c = Chart(4, "perm", (cup(1, 1), cup(2, 3), cap(1, 1)))
    bad = validate(c)
    assert bad and bad[0].level == 3


def test_open_chart_violation():
    bad = validate(Chart(3, "perm", (cup(1, 1),)))
    assert bad and "differs from target" in bad[-1].reason


def test_vertex_label_rules():
    assert validate(Chart(4, "perm", (cup(1, 1), cup(2, 2), crossing(1, 1, 2)))) != []
    ok = Chart(4, "perm", (black(1, 1), black(2, 3), crossing(1, 1, 3), black(1, 3, "-"), black(1, 1, "-")))
    assert validate(ok) == []
    assert validate(Chart(3, "perm", (cup(1, 1), cup(1, 2), white(1, 2, 1)))) != []


def test_slice_level_out_of_range():
    with pytest.raises(ChartError):
        slice_at(empty(3), 1)


def test_dihedral_charts_reject_crossings():
    assert validate(Chart(5, "dihedral", (black(1, "r"), black(2, "r"), crossing(1, 1, 3)))) != []


def test_event_json_rejects_unknown_fields():
    with pytest.raises(ChartError):
        Event.from_json({"kind": "Cup", "pos": 1, "labels": [1], "colour": "red"})


def test_parse_rejects_malformed_json():
    with pytest.raises(ChartError):
        parse("{not json")


def test_branch_needs_two_letters():
    assert validate(Chart(3, "perm", (branch(1, (1,)),))) != []


@given(seeds)
def test_serialization_round_trip(seed):
    for alphabet in ("perm", "dihedral"):
        c = chart_from_seed(seed, alphabet)
        assert validate(c) == []
        text = serialize(c)
        assert parse(text) == c
        assert serialize(parse(text)) == text


@given(seeds)
def test_last_slice_empty_and_replay_consistent(seed):
    c = chart_from_seed(seed)
    sl = slices(c)
    assert sl[-1] == ()
    assert all(slice_at(c, i) == sl[i] for i in range(c.p + 1))
