import json

from chartfold import lemmas, perm
from chartfold.chart import validate
from chartfold.moves import dihedral_presentation


def test_fixtures_match_builders():
    built = {c.name: c.to_json() for c in lemmas.all_certificates()}
    loaded = {c.name: c.to_json() for c in lemmas.load_certificates()}
    assert built == loaded


def test_relator_fixtures_match_builders():
    for n in (5, 7, 9):
        shipped = json.loads((lemmas.RELATOR_DIR / f"d{n}.json").read_text())
        assert shipped == json.loads(json.dumps(lemmas.relator_fixture(n)))


def test_suite_passes():
    rows = lemmas.run_suite()
    assert rows and all(ok for _, ok, _ in rows), [r for r in rows if not r[1]]


def test_lemma1_shape():
    cert = lemmas.lemma1_certificate()
    assert cert.check() == (True, "")
    assert perm.product_text(lemmas.middle_slice(cert.end)) == lemmas.LEMMA1_CENTER_TEXT
    assert cert.start.p == 0 and cert.end.p == 2 * len(cert.moves)


def test_corrupted_certificate_fails():
    cert = lemmas.lemma2_certificates()[0]
    cert.moves = cert.moves[:-1]
    ok, why = cert.check()
    assert not ok


def test_example_lines():
    assert [str(v) for v in lemmas.example_line_values()] == ["(1 3 5 2 4)"] * 6
    assert validate(lemmas.example_chain()) == []
    assert len(perm.parse_product(lemmas.EXAMPLE_LINES[0])) == 16


def test_fallback_block_for_unshipped_degree():
    blk = lemmas.load_relator_block(11, "rr")
    assert validate(blk) == [] and blk.target == ()
    assert ("r", "r") in dihedral_presentation(11).relators
