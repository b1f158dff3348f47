import json

import pytest

from chartfold.cli import main
from chartfold.figures import CHART_DIR

T25_PD = "pd: X[1,7,2,6] X[3,9,4,8] X[5,1,6,10] X[7,3,8,2] X[9,5,10,4]"


def run(capsys, *args):
    code = main(list(args))
    return code, capsys.readouterr().out


def test_invariants(capsys):
    code, out = run(capsys, "invariants", str(CHART_DIR / "submarine.chart.json"))
    assert code == 0 and out.strip() == "components=3, euler=6"


def test_invariants_json_with_oracle(capsys):
    code, out = run(capsys, "invariants", "--json", "--oracle", str(CHART_DIR / "fromnone2five-top.chart.json"))
    data = json.loads(out)
    assert code == 0 and data["components"] == 1 and data["euler"] == 2 and data["oracle_agrees"]


def test_color_list(capsys, tmp_path):
    f = tmp_path / "t25.pd"
    f.write_text(T25_PD)
    code, out = run(capsys, "color", "list", "--n", "5", str(f))
    assert code == 0 and out.startswith("25 colorings")
    code, out = run(capsys, "color", "list", "--n", "5", "--json", str(f))
    colors = json.loads(out)
    (tmp_path / "c.json").write_text(json.dumps(colors))
    assert run(capsys, "color", "check", str(tmp_path / "c.json"))[0] == 0


def test_validate_and_bad_input(capsys, tmp_path):
    assert run(capsys, "validate", str(CHART_DIR / "submarine.chart.json")) == (0, "ok\n")
    bad = tmp_path / "bad.json"
    bad.write_text('{"degree":3,"events":[{"kind":"Cup","pos":1,"labels":[1]}]}')
    assert run(capsys, "validate", str(bad))[0] == 1
    assert main(["validate", str(tmp_path / "missing.json")]) == 2


def test_lemmas(capsys):
    code, out = run(capsys, "lemmas")
    assert code == 0 and "FAIL" not in out and out.count("PASS") >= 7


def test_movie_round_trip(capsys, tmp_path):
    out = tmp_path / "m.json"
    code, _ = run(capsys, "movie", "cyclic", "braid s=2: 1 1 1", "--n", "5", "-o", str(out))
    assert code == 0
    code, text = run(capsys, "movie", "verify", str(out), "--orient", "--report", str(tmp_path / "rep"))
    assert code == 0 and "all transitions certified" in text
    assert (tmp_path / "rep" / "movie.tsv").exists() and (tmp_path / "rep" / "movie.png").exists()


def test_replay_t25(capsys):
    code, out = run(capsys, "movie", "replay-t25", "--json")
    data = json.loads(out)
    assert code == 0 and data["ok"] and len(data["frames"]) == 22


def test_compile_orient_render(capsys, tmp_path):
    out = tmp_path / "c.json"
    assert main(["compile", "--resolve", str(CHART_DIR / "submarine-dihedral.chart.json"), "-o", str(out)]) == 0
    code, text = run(capsys, "orient", str(out))
    assert code == 0 and text.startswith("nodes=0")
    svg = tmp_path / "c.svg"
    assert main(["render", str(out), "-o", str(svg)]) == 0
    assert svg.read_text().startswith("<svg")


def test_moves_verify_and_reduce(capsys, tmp_path):
    chart = tmp_path / "c.json"
    chart.write_text('{"degree":3,"alphabet":"perm","events":[{"kind":"Cup","pos":1,"labels":[2]},'
                     '{"kind":"Cap","pos":1,"labels":[2]}]}')
    moves = tmp_path / "m.json"
    moves.write_text('[{"kind":"CupCapCancel","level":0}]')
    assert run(capsys, "moves", "verify", str(chart), str(moves))[0] == 0
    moves.write_text('[{"kind":"CupCapCancel","level":4}]')
    code, out = run(capsys, "moves", "verify", str(chart), str(moves))
    assert code == 1 and out.startswith("move 0 fails")
    code, out = run(capsys, "reduce", str(chart))
    assert code == 0 and json.loads(out)["events"] == []


def test_usage_errors():
    with pytest.raises(SystemExit):
        main(["frobnicate"])
    assert main(["movie", "cyclic", "pd: X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]"]) == 2
