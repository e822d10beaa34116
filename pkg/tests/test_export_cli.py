import io
import json

import pytest

from rootposet.cli import main
from rootposet.dynkin import default_diagrams, parse_diagram
from rootposet.export import export_dot, export_json, export_tikz, import_json
from rootposet.poset import build_poset
from rootposet.report import full_report


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_dot_a2():
    dot = export_dot(build_poset(parse_diagram("A2")))
    assert dot.count("[label=") == 5
    edges = [line for line in dot.splitlines() if "->" in line]
    assert sorted(line.split('"')[1] for line in edges) == ["a", "b"]


def test_dot_g2_chain():
    dot = export_dot(build_poset(parse_diagram("G2")))
    edges = [line.split('"')[1] for line in dot.splitlines() if "->" in line]
    assert len(edges) == 5 and set(edges) == {"a", "b"}


@pytest.mark.parametrize("d", default_diagrams(), ids=str)
def test_json_roundtrip_and_stability(d):
    p = build_poset(d)
    text = export_json(p)
    assert import_json(text).matches(p)
    assert export_json(p) == text
    assert export_dot(p) == export_dot(p) and export_tikz(p) == export_tikz(p)


def test_json_schema():
    doc = json.loads(export_json(build_poset(parse_diagram("F4"))))
    assert set(doc) >= {"diagram", "elements", "covers", "levels"}
    assert set(doc["elements"][0]) == {"id", "coeffs", "height"}
    assert set(doc["covers"][0]) == {"lo", "hi", "simple"}
    assert sorted(len(v) for v in doc["levels"]["table"].values()) == [10, 14]


def test_roundtrip_detects_tampering():
    p = build_poset(parse_diagram("B3"))
    doc = json.loads(export_json(p))
    doc["covers"].pop()
    assert not import_json(json.dumps(doc)).matches(p)


def test_cli_verify_e6_theorem():
    code, out = run("verify", "E6", "theorem")
    assert code == 0
    assert "Phi_4 is not maximal" in out and "heights [4, 5]" in out


def test_cli_levels_f4():
    code, out = run("levels", "F4")
    assert code == 0
    rows = [line for line in out.splitlines() if line[:1].isdigit() and "|" in line]
    assert [int(r.split("|")[-1]) for r in rows] == [10, 14]


def test_cli_g2_all_trivial():
    code, out = run("verify", "G2", "all")
    assert code == 0 and "overall: PASS" in out


def test_cli_failure_exit_code():
    code, out = run("verify", "D5", "models")
    assert code == 1 and "almost chains: False" in out


def test_cli_usage_errors(capsys):
    assert run("verify", "Q7")[0] == 2
    assert "A1..A8" in capsys.readouterr().err
    assert run("maximal", "E6")[0] == 2
    assert "--size" in capsys.readouterr().err
    assert run("export", "A2", "--format", "png")[0] == 2
    assert run("antichains", "A2", "--size", "x")[0] == 2
    assert run()[0] == 2


def test_cli_high_rank_warning(caplog):
    code, out = run("width", "A9")
    assert code == 0 and "width 9" in out
    assert "rank 9" in caplog.text


def test_cli_misc(tmp_path):
    assert run("generate", "A3")[1].endswith("6 positive roots\n")
    code, out = run("generate", "G2", "--json")
    assert json.loads(out)["roots"][-1]["coeffs"] == [3, 2]
    assert run("antichains", "F4", "--count-only")[1] == "105 antichains\n"
    assert run("antichains", "A3", "--size", "3")[1].endswith("1 antichains\n")
    assert "1 maximal 5-antichains" in run("maximal", "E6", "--size", "5")[1]
    target = tmp_path / "e8.json"
    assert run("export", "E8", "--format", "json", "--out", str(target))[0] == 0
    assert import_json(target.read_text()).matches(build_poset(parse_diagram("E8")))
    assert run("export", "A2", "--format", "tikz")[1].startswith("% Hasse")
    code, out = run("verify", "F4", "lemma", "--json")
    assert code == 0 and json.loads(out)["passed"]


def test_full_report():
    rep = full_report()
    assert rep.passed
    assert rep.h_table() == {d.name: h for d, h in zip(default_diagrams(), [2] * 7 + [3] * 19 + [4, 5, 7, 5, 5])}
    warn = rep.warnings
    assert sum("E8" in w for w in warn) == 2 and len(warn) == 3
    assert full_report([parse_diagram("F4")]).to_json() == full_report([parse_diagram("F4")]).to_json()
