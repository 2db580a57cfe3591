import json

import pytest

from tempiric.catalog import builtin, serialize
from tempiric.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_catalog_listing(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == 0
    assert out.splitlines() == ["SL2R", "SO31", "Sp11"]


def test_catalog_json_round_trips(capsys, tmp_path):
    code, out, _ = run(capsys, "catalog", "--group", "Sp11", "--format", "json")
    assert code == 0
    path = tmp_path / "sp11.json"
    path.write_text(out)
    code, out2, _ = run(
        capsys, "catalog", "--group-file", str(path), "--format", "json"
    )
    assert code == 0 and out2 == out


def test_unknown_group_exits_2(capsys):
    code, _, err = run(capsys, "verify", "--group", "SU99", "--bound", "10")
    assert code == 2
    assert "unknown group" in err


def test_missing_group_exits_2(capsys):
    code, _, err = run(capsys, "ktypes", "--bound", "10")
    assert code == 2
    assert "--group" in err


def test_bad_bound_exits_2(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["ktypes", "--group", "SL2R", "--bound", "eleven"])
    assert excinfo.value.code == 2


def test_ktypes_csv(capsys):
    import csv
    import io

    code, out, _ = run(capsys, "ktypes", "--group", "SL2R", "--bound", "4")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["label", "norm", "dim"]
    assert [row[0] for row in rows[1:]] == ["(0)", "(-1)", "(1)", "(-2)", "(2)"]
    assert [row[1] for row in rows[1:]] == ["0", "1", "1", "4", "4"]


def test_branch_table(capsys):
    code, out, _ = run(
        capsys, "branch", "--group", "Sp11", "--bound", "18", "--format", "json"
    )
    assert code == 0
    payload = json.loads(out)
    entries = {
        (tuple(r["ktype"]), tuple(r["mtype"])): r["multiplicity"]
        for r in payload["branchings"]
    }
    assert entries[((1, 1), (0,))] == 1
    assert entries[((1, 1), (2,))] == 1


def test_tempiric_table_counts(capsys):
    code, out, _ = run(capsys, "tempiric-table", "--group", "SL2R", "--bound", "9")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "kind,parameters,minimal_ktype,split,vogan_norm"
    assert len(lines) == 1 + 7
    code, out, _ = run(
        capsys, "tempiric-table", "--group", "SO31", "--bound", "16",
        "--format", "json",
    )
    payload = json.loads(out)
    assert len(payload["records"]) == 4
    assert all(r["kind"] == "principal-series" for r in payload["records"])


def test_ck_matrix_json_with_inverse(capsys):
    code, out, _ = run(
        capsys, "ck-matrix", "--group", "SO31", "--bound", "16", "--format", "json"
    )
    assert code == 0
    payload = json.loads(out)
    assert "inverse" in payload and "refusal" not in payload
    assert payload["resolution"] == ["exact"] * 4
    assert payload["entries"][0] == [0, 0, 1]


def test_ck_matrix_json_refusal(capsys):
    code, out, _ = run(
        capsys, "ck-matrix", "--group", "Sp11", "--bound", "20", "--format", "json"
    )
    assert code == 0
    payload = json.loads(out)
    assert "inverse" not in payload
    assert payload["refusal"]["reason"] == "aggregate-only columns"
    assert len(payload["refusal"]["columns"]) == 2
    assert payload["resolution"].count("aggregate-only") == 2


def test_ck_matrix_csv_sections(capsys):
    code, out, _ = run(
        capsys, "ck-matrix", "--group", "SL2R", "--bound", "9", "--format", "csv"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "section,row,col,value"
    sections = {line.split(",")[0] for line in lines[1:]}
    assert sections == {"entry", "resolution", "inverse"}


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "--group", "SO31", "--bound", "25")
    assert code == 0
    assert "seed=1729" in out
    assert out.count(": pass") == 5


def test_verify_json(capsys):
    code, out, _ = run(
        capsys, "verify", "--group", "Sp11", "--bound", "41", "--format", "json"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["all_passed"] is True
    assert [c["name"] for c in payload["checks"]] == [
        "blattner_consistency",
        "vogan_bijection",
        "triangularity",
        "dimension_identity",
        "admissibility",
    ]


def test_verify_corrupted_group_file(capsys, tmp_path):
    doc = serialize(builtin("Sp11"))
    doc["two_rho_c"] = [2, 3]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "verify", "--group-file", str(path), "--bound", "20")
    assert code == 1
    assert "blattner_consistency: FAIL" in out


def test_malformed_group_file_exits_2(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{oops")
    code, _, err = run(capsys, "verify", "--group-file", str(path), "--bound", "20")
    assert code == 2
    assert "parse error" in err


def test_figure_text(capsys):
    code, out, _ = run(capsys, "figure", "--group", "Sp11", "--grid-bound", "6")
    assert code == 0
    assert "counts: circles=30 squares=12 (pairs=6) triangles=7" in out


def test_figure_dot_and_svg(capsys):
    code, out, _ = run(
        capsys, "figure", "--group", "Sp11", "--grid-bound", "6", "--format", "dot"
    )
    assert code == 0 and out.startswith("graph")
    code, out, _ = run(
        capsys, "figure", "--group", "SL2R", "--grid-bound", "4", "--format", "svg"
    )
    assert code == 0 and out.startswith("<svg")


def test_figure_rejects_csv(capsys):
    code, _, err = run(
        capsys, "figure", "--group", "Sp11", "--grid-bound", "6", "--format", "csv"
    )
    assert code == 2 and "format" in err


def test_outputs_are_deterministic(capsys):
    args = ("verify", "--group", "SL2R", "--bound", "16")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second
    args = ("ck-matrix", "--group", "Sp11", "--bound", "41", "--format", "json")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second


def test_out_flag_writes_file(capsys, tmp_path):
    target = tmp_path / "window.csv"
    code, out, _ = run(
        capsys, "ktypes", "--group", "SO31", "--bound", "16", "--out", str(target)
    )
    assert code == 0 and out == ""
    assert target.read_text().splitlines()[0] == "label,norm,dim"
