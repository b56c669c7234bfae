"""Command-line surface: document parsing, report envelope, exit codes."""

import json
from fractions import Fraction

import pytest

from mvsheaf import cli


DOC = """\
# workbench fixtures
c2 = chain(2)
k3 = gamma(unit=(2,0), ranks=[1])
sq = product(c2, c2)
qk = quotient(k3, radical)
sub = subalgebra(c2, [2])
cof = cofinite(k3, komori)
"""


@pytest.fixture
def doc(tmp_path):
    f = tmp_path / "fixtures.mvalg"
    f.write_text(DOC)
    return str(f)


def run(capsys, args):
    code = cli.main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_spectrum_report_envelope(doc, capsys):
    code, out, err = run(capsys, ["spectrum", doc, "--algebra", "sq"])
    assert code == 0, err
    rep = json.loads(out)
    assert rep["schema"] == "mvsheaf-report/1"
    assert rep["command"] == "spectrum"
    assert rep["input"]["algebra"] == "sq"
    assert len(rep["input"]["sha256"]) == 64
    assert rep["verdict"]["passed"] is True
    assert rep["timings"]["run_s"] >= 0


def test_all_commands_pass_on_k3(doc, capsys):
    for command in ("spectrum", "topology", "sheaf-check", "represent", "verify-all"):
        code, out, _ = run(capsys, [command, doc, "--algebra", "k3"])
        assert code == 0, (command, out[-500:])
        assert json.loads(out)["command"] == command


def test_report_bytes_are_stable(doc, capsys):
    _, out1, _ = run(capsys, ["spectrum", doc, "--algebra", "c2"])
    _, out2, _ = run(capsys, ["spectrum", doc, "--algebra", "c2"])
    rep1, rep2 = json.loads(out1), json.loads(out2)
    for rep in (rep1, rep2):
        del rep["timings"]
    assert json.dumps(rep1, sort_keys=True) == json.dumps(rep2, sort_keys=True)


def test_out_flag_writes_file(doc, capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, ["spectrum", doc, "--algebra", "c2", "--out", str(target)])
    assert code == 0
    assert out == ""
    rep = json.loads(target.read_text())
    assert rep["input"]["expression"] == "chain(2)"


def test_document_with_several_algebras_needs_a_pick(doc, capsys):
    code, _, err = run(capsys, ["spectrum", doc])
    assert code == 3
    assert "--algebra" in err


def test_unknown_name_rejected(doc, capsys):
    code, _, err = run(capsys, ["spectrum", doc, "--algebra", "nope"])
    assert code == 3
    assert "no definition named" in err


def test_syntax_error_reports_line_and_column(tmp_path, capsys):
    f = tmp_path / "bad.mvalg"
    f.write_text("c = chain(2\nd = chain(3)\n")
    code, _, err = run(capsys, ["spectrum", str(f)])
    assert code == 3
    assert "(line 2, column 1)" in err
    f.write_text("c = chain(\n")
    code, _, err = run(capsys, ["spectrum", str(f)])
    assert code == 3
    assert "found end of document" in err


def test_semantic_errors_rejected(tmp_path, capsys):
    for body, fragment in (
        ("c = chain(0)\n", "positive"),
        ("g = gamma(unit=(0,0), ranks=[1])\n", "unit"),
        ("g = gamma(unit=(1,0), ranks=[2])\n", ""),
        ("x = product(c, c)\n", "unknown name"),
        ("k = cofinite(chain(2), komori)\n", ""),
    ):
        f = tmp_path / "bad.mvalg"
        f.write_text(body)
        code, _, err = run(capsys, ["spectrum", str(f)])
        assert code == 3, body
        if fragment:
            assert fragment in err, (body, err)


def test_usage_error_is_exit_3(capsys):
    assert cli.main(["spectrum"]) == 3
    capsys.readouterr()
    assert cli.main(["no-such-command", "x.mvalg"]) == 3
    capsys.readouterr()


def test_missing_file_is_exit_3(capsys):
    code, _, err = run(capsys, ["spectrum", "/nonexistent/x.mvalg"])
    assert code == 3
    assert "mvsheaf:" in err


def test_closure_budget_at_parse_is_inconclusive(tmp_path, capsys):
    f = tmp_path / "diverge.mvalg"
    f.write_text("g = gamma(unit=(1,0), ranks=[1])\ns = subalgebra(g, [(0,1)])\n")
    code, _, err = run(capsys, ["spectrum", str(f), "--algebra", "s"])
    assert code == 2
    assert "closure budget" in err


def test_represent_on_k3_pins_half_section(doc, capsys):
    code, out, _ = run(capsys, ["represent", doc, "--algebra", "k3"])
    assert code == 0
    rep = json.loads(out)
    verdict = rep["verdict"]
    assert verdict["pinned_values"]["passed"] is True
    dump = verdict["dump"]
    assert dump and all({"element", "sections"} == set(r) for r in dump)


def test_verify_all_on_cofinite_counterexample(doc, capsys):
    code, out, _ = run(capsys, ["verify-all", doc, "--algebra", "cof"])
    assert code == 0, out[-500:]
    verdict = json.loads(out)["verdict"]
    assert verdict["passed"] is True
    assert "counterexample" in verdict["suites"]


def test_jsonable_fractions_and_sets():
    enc = cli.jsonable({"q": Fraction(1, 2), "s": {3, 1, 2}, "t": (1, 2)})
    assert enc["q"] == "1/2"
    assert enc["s"] == [1, 2, 3]
    assert enc["t"] == [1, 2]
