import pytest
from hypothesis import given, strategies as st

from chartfold import dihedral, perm
from chartfold.blocks import invert_fragment, normalize, rewrite_block, trivializing_events
from chartfold.chart import Chart, ChartError, validate


@st.composite
def perm_words(draw):
    n = draw(st.integers(2, 6))
    return n, tuple(draw(st.lists(st.integers(1, n - 1), max_size=10)))


@given(perm_words())
def test_normalize_reaches_the_normal_form(nw):
    n, w = nw
    events, nf = normalize(n, w)
    assert nf == perm.normal_form(perm.evaluate_word(n, w))
    frag = Chart(n, "perm", events, w, nf)
    assert validate(frag) == []


@given(perm_words(), st.data())
def test_rewrite_between_equal_words(nw, data):
    n, w = nw
    target = perm.reduce_word(n, w)
    block = rewrite_block("perm", n, w, target)
    assert validate(block) == []
    assert validate(invert_fragment(block)) == []
    assert {e.kind for e in block.events} <= {"Cup", "Cap", "Crossing", "White"}


def test_rewrite_rejects_different_values():
    with pytest.raises(ChartError):
        rewrite_block("perm", 3, (1,), (2,))


@given(st.sampled_from([3, 5, 7]), st.lists(st.sampled_from(dihedral.LETTERS), max_size=8))
def test_dihedral_words_trivialize_with_their_inverse(n, w):
    word = tuple(w) + dihedral.invert_word(w)
    events = trivializing_events("dihedral", n, word)
    assert validate(Chart(n, "dihedral", events, word, ())) == []
