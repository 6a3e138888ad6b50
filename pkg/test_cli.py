import json

import pytest

from cli import main, read_table
from errors import TableFormatError
from gbf import gbf_parse
from report import analyze, gray_report


def run(capsys, argv):
    code = main(argv)
    return code, json.loads(capsys.readouterr().out)


def test_analyze_2x1x2(capsys):
    code, out = run(capsys, ["analyze", "2:2:0,0,0,2"])
    assert code == 0
    assert out["input"] == {"n": 2, "k": 2, "values": [0, 0, 0, 2]}
    c = out["classification"]
    assert c["gbent"] is True and c["plateau"] == "plateaued(0)"
    assert c["dual"] == [0, 0, 0, 2] and c["dual_kind"] == "regular"
    assert c["gbent_by_distribution"] is True
    assert out["spectrum"]["values"] == [[2, 0], [2, 0], [2, 0], [-2, 0]]
    assert set(out["theorems"]) == {"k2", "inductive", "components-bent"}
    assert out["theorems"]["k2"]["holds"] is True
    assert all(out["identities"].values())


def test_analyze_approx(capsys):
    code, out = run(capsys, ["analyze", "--tt", "2:1:0,1", "--approx"])
    assert code == 0
    assert out["spectrum"]["approx"] == [[1.0, 1.0], [1.0, -1.0]]
    assert "dual" not in out["classification"]
    assert out["classification"]["dual_kind"] == "not_representable"


def test_gray_command(capsys):
    code, out = run(capsys, ["gray", "3:3:01234567"])
    assert code == 0
    assert set(out) == {"input", "gray"}
    assert out["gray"]["variables"] == 5
    assert out["gray"]["image_class"] == "semibent"
    assert out["gray"]["max_abs"] == 8
    assert out["gray"]["spectrum"]["0"] == 16


def test_analyze_from_file_and_json(tmp_path, capsys):
    path = tmp_path / "f.json"
    path.write_text(json.dumps({"n": 2, "k": 2, "values": [0, 0, 0, 2]}))
    code, out = run(capsys, ["analyze", "--file", str(path)])
    assert code == 0 and out["classification"]["gbent"] is True
    assert read_table(path=str(path)) == gbf_parse("2:2:0,0,0,2")


def test_bad_table_exits_2(capsys):
    code, out = run(capsys, ["analyze", "2:2:0,0,0,9"])
    assert code == 2
    assert out["type"] == "TableFormatError"


def test_missing_file_exits_2(tmp_path, capsys):
    code, out = run(capsys, ["analyze", "--file", str(tmp_path / "none.txt")])
    assert code == 2


def test_empty_table():
    with pytest.raises(TableFormatError):
        read_table("  ")


def test_verify_command(capsys):
    code, out = run(capsys, ["verify", "k2", "--n", "2"])
    assert code == 0
    assert out["tested"] == 256 and out["discrepancies"] == 0


def test_verify_bad_level_exits_2(capsys):
    code, out = run(capsys, ["verify", "k2", "--n", "2", "--k", "3"])
    assert code == 2
    assert out["type"] == "PreconditionError"


def test_search_command(tmp_path, capsys):
    out_path = tmp_path / "g.jsonl"
    code, out = run(capsys, ["search", "--n", "2", "--k", "2", "--out", str(out_path)])
    assert code == 0
    assert out["matched"] == 64
    assert out_path.exists()


def test_search_guard_exits_1(capsys):
    code, out = run(capsys, ["search", "--n", "3", "--k", "4"])
    assert code == 1
    assert out["type"] == "InfeasibleSearch"


def test_search_bad_predicate_exits_2(capsys):
    code, out = run(capsys, ["search", "--n", "2", "--k", "2", "--predicate", "nearly"])
    assert code == 2
    assert out["type"] == "ValidationError"


def test_argparse_rejects_unknown_suite():
    with pytest.raises(SystemExit):
        main(["verify", "k9", "--n", "2"])


def test_report_skips_level_2_extras():
    report = analyze(gbf_parse("1:2:0,0,0,1"))
    assert report.classification.gbent
    assert report.gray is None
    assert report.theorems is None and report.identities is None
    assert gray_report(gbf_parse("1:2:0,0,0,1")) is None


def test_report_odd_n_has_no_distribution():
    report = analyze(gbf_parse("3:1:0,2"))
    assert report.classification.gbent_by_distribution is None
    assert report.classification.dual == [1, 7]
    assert "components-bent" not in report.theorems
