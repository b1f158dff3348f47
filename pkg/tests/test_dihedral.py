import pytest
from hypothesis import given, strategies as st

from chartfold import dihedral, perm
from chartfold.dihedral import DihedralElement

odd = st.sampled_from([3, 5, 7, 9, 11])


def test_parameter_must_be_odd():
    with pytest.raises(ValueError):
        dihedral.check_parameter(4)


@pytest.mark.parametrize("text,vertex", [
    ("r x", 5), ("r x^2", 3), ("r x^3", 1), ("r x^4", 4),
    ("x^-1 r x", 3), ("x^-2 r x^2", 4), ("x^-3 r x^3", 5), ("x^-4 r x^4", 1),
])
def test_reflection_tables(text, vertex):
    assert dihedral.fixed_vertex(dihedral.parse_element(5, text)) == vertex


def test_psi_images():
    assert perm.format_compact(dihedral.psi(DihedralElement.r(5))) == "(13)(45)"
    assert perm.format_compact(dihedral.psi(DihedralElement.r(7))) == "(15)(24)(67)"
    assert perm.format_compact(dihedral.psi(DihedralElement.x(5))) == "(15432)"


@pytest.mark.parametrize("n", [5, 7, 9])
def test_psi_homomorphism_exhaustive(n):
    els = dihedral.elements(n)
    for a in els:
        for b in els:
            assert dihedral.psi(a * b) == perm.compose(dihedral.psi(a), dihedral.psi(b))


@pytest.mark.parametrize("n", [5, 7, 9])
def test_relators(n):
    one = DihedralElement.identity(n)
    for rel in (("r", "r"), ("x",) * n, ("r", "x", "r", "x")):
        assert dihedral.evaluate(n, rel) == one


@given(odd, st.lists(st.sampled_from(dihedral.LETTERS), max_size=12))
def test_words_and_psi_words_agree(n, word):
    e = dihedral.evaluate(n, word)
    assert perm.evaluate_word(n, dihedral.psi_word(word, n)) == dihedral.psi(e)
    assert dihedral.evaluate(n, dihedral.element_word(e)) == e
    assert dihedral.evaluate(n, dihedral.invert_word(word)) == dihedral.inverse(e)


@given(odd, st.integers(0, 40))
def test_reflection_color_inverts_conjugation(n, j):
    assert dihedral.reflection_color(dihedral.conjugate_reflection(n, j)) == j % n


@given(odd, st.booleans(), st.integers(0, 20))
def test_format_parse_round_trip(n, refl, rot):
    e = DihedralElement(n, refl, rot)
    assert dihedral.parse_element(n, dihedral.format_element(e)) == e
