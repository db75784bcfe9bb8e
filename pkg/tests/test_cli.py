import json

import pytest

from absorbtop.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_topology_sierpinski(capsys):
    code, out, _ = run(capsys, "topology", "--ring", "zn:2", "--a", "0")
    assert code == 0
    assert out == "3 open sets: {}, {0}, {0,1}\n"


def test_topology_engine_summary_above_cap(capsys):
    code, out, _ = run(capsys, "topology", "--ring", "ut:f3", "--a", "[[1,0],[0,1]]")
    assert code == 0
    assert "exceeds the oracle cap 16" in out
    assert out.count("tail=0 cycle=1") == 27


def test_pierce_worked_example(capsys):
    code, out, _ = run(capsys, "pierce", "--ring", "ut:f2", "--e", "[[1,1],[0,0]]", "--side", "left")
    assert code == 0
    assert "[Thm-3.1] eR open: yes" in out
    assert "[Thm-3.1] eR dense (closure = R): yes" in out
    assert "eR = {[[0,0],[0,0]], [[0,1],[0,0]], [[1,0],[0,0]], [[1,1],[0,0]]}" in out


def test_pierce_index_literal_matches_label(capsys):
    _, by_label, _ = run(capsys, "pierce", "--ring", "zn:6", "--e", "3", "--format", "json")
    doc = json.loads(by_label)
    assert doc["Re"] == ["0", "3"] and doc["R(1-e)"] == ["0", "2", "4"]
    assert doc["derived_sets"]["R(1-e)"] == ["2", "4"]


def test_axioms_two_cycle(capsys):
    code, out, _ = run(capsys, "axioms", "--ring", "zn:4", "--a", "3")
    assert code == 0
    assert out.splitlines()[0] == "T0: definitional=fails characterization=fails witness=(1,3)"
    assert "nonzero fixed points (S-unital witnesses): {2}" in out


def test_axioms_regular_skipped_above_cap(capsys):
    code, out, _ = run(capsys, "axioms", "--ring", "ut:f3", "--a", "1")
    assert code == 0 and "regular: skipped" in out and "16" in out


def test_orbits_dot_and_json(capsys):
    code, out, _ = run(capsys, "orbits", "--ring", "zn:4", "--a", "2")
    assert code == 0 and out.startswith("digraph") and "n1 -> n2;" in out
    _, out, _ = run(capsys, "orbits", "--ring", "zn:4", "--a", "2", "--format", "json")
    rows = json.loads(out)
    assert rows[1] == {"x": "1", "successor": "2", "orbit": ["0", "1", "2"], "tail": 2, "cycle": 1}


def test_describe_card(capsys):
    code, out, _ = run(capsys, "describe", "--ring", "zn:6")
    assert code == 0
    assert "order: 6" in out and "idempotents (4): 0, 1, 3, 4" in out
    _, out, _ = run(capsys, "describe", "--ring", "ut:f2", "--format", "json")
    assert json.loads(out)["order"] == 8


def test_out_file(tmp_path, capsys):
    target = tmp_path / "g.dot"
    assert main(["orbits", "--ring", "zn:3", "--a", "2", "--out", str(target)]) == 0
    assert target.read_text().startswith("digraph")


@pytest.mark.parametrize(
    "argv, needle",
    [
        (["topology", "--ring", "zn:4"], "--a"),
        (["topology", "--ring", "zq:4", "--a", "1"], "zq"),
        (["topology", "--ring", "zn:4", "--a", "9"], "9"),
        (["describe", "--ring", "zn:4", "--claim", "Thm-7.7", "--a", "1"], "Thm-7.7"),
        (["frobnicate"], "invalid choice"),
        ([], "required"),
    ],
)
def test_usage_errors_exit_1(capsys, argv, needle):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    _, err = capsys.readouterr()
    assert code == 1
    assert needle in err


def test_argparse_errors_exit_1(capsys):
    with pytest.raises(SystemExit) as info:
        main(["axioms", "--ring", "zn:4", "--a", "1", "--side", "up"])
    assert info.value.code == 1


def test_bad_spec_file_diagnostic(tmp_path, capsys):
    p = tmp_path / "ring.json"
    p.write_text('{"kind": "zn",\n "n": }')
    code, _, err = run(capsys, "describe", "--ring", f"file:{p}")
    assert code == 1 and "line 2" in err
    p.write_text(json.dumps({"kind": "upper_triangular"}))
    code, _, err = run(capsys, "describe", "--ring", str(p))
    assert code == 1 and "'base'" in err


def test_table_ring_from_file(tmp_path, capsys):
    p = tmp_path / "f2.json"
    p.write_text(json.dumps({"kind": "tables", "add": [[0, 1], [1, 0]], "mul": [[0, 0], [0, 1]],
                             "zero": 0, "one": 1, "labels": ["z", "u"]}))
    code, out, _ = run(capsys, "topology", "--ring", f"file:{p}", "--a", "z")
    assert code == 0 and out == "3 open sets: {}, {z}, {z,u}\n"


def test_audit_exit_codes(tmp_path, capsys):
    report = tmp_path / "r.json"
    code, _, err = run(capsys, "audit", "--max-order", "4", "--out", str(report))
    assert code == 2 and "Cor-2.15" in err
    doc = json.loads(report.read_text())
    failing = sorted({r["claim"] for r in doc["records"] if r["verdict"] == "fails"})
    code, _, _ = run(capsys, "audit", "--max-order", "4", "--out", str(report),
                     "--expected-failures", ",".join(failing))
    assert code == 0
    code, out, _ = run(capsys, "audit", "--max-order", "4", "--claims", "Lemma-2.13", "--format", "markdown")
    assert code == 0 and "| Lemma-2.13 | zn/right |" in out


def test_every_failing_witness_replays_through_describe(tmp_path, capsys):
    report = tmp_path / "r.json"
    run(capsys, "audit", "--max-order", "8", "--out", str(report))
    records = [r for r in json.loads(report.read_text())["records"] if r["verdict"] == "fails"]
    assert records
    for rec in records:
        inst = rec["instance"]
        code, out, _ = run(capsys, "describe", "--ring", inst["ring"], "--a", inst["a"],
                           "--side", inst["side"], "--claim", rec["claim"])
        assert code == 0
        assert json.loads(out) == rec


def test_audit_figures(tmp_path, capsys):
    report = tmp_path / "r.json"
    code, _, err = run(capsys, "audit", "--max-order", "3", "--out", str(report), "--figures")
    png = tmp_path / "r.png"
    assert png.exists() and png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
    assert str(png) in err
