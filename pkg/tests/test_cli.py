import csv
import io
import json
import subprocess
import sys

import pytest

from liminal.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_necklace(capsys):
    code, out, _ = run(capsys, "necklace", "--d", "3", "--n", "1")
    assert code == 0 and out.strip() == "(-1/3)q + (1/3)q^3"
    code, out, _ = run(capsys, "necklace", "--d", "1", "--n", "inf")
    assert out.strip() == "-q/(q-1)"


def test_necklace_series(capsys):
    code, out, _ = run(capsys, "necklace", "--d", "3", "--n", "inf", "--series", "7", "--format", "json")
    data = json.loads(out)
    assert data["n"] == "inf"
    assert data["series"]["coeffs"][:8] == ["0", "-1/3", "-1/3", "0", "2/3", "5/3", "3", "14/3"]
    # default series length is n + 7 for finite n
    code, out, _ = run(capsys, "necklace", "--d", "3", "--n", "2", "--series", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["exponent", "coefficient"] and len(rows) == 1 + 10


def test_table_m3n(capsys):
    code, out, _ = run(capsys, "table", "--which", "m3n", "--n-max", "7", "--format", "json")
    rows = json.loads(out)["rows"]
    assert rows[1]["coeffs"][:7] == ["0", "-1/3", "-1/3", "1/3", "0", "-1", "-2/3"]
    assert len(rows) == 7


def test_table_lmoment(capsys):
    code, out, _ = run(capsys, "table", "--which", "lmoment", "--n-max", "1")
    assert "q - 5q^2 + 10q^3 - 10q^4 + 5q^5 - q^6" in out


def test_chars_csv(capsys):
    code, out, _ = run(capsys, "chars", "--d", "3", "--kind", "sigma", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["lambda", "k=0", "k=1", "k=2"]
    assert ["1,1,1", "6", "7", "2"] in rows


def test_moment_builtin_and_expected(capsys):
    code, out, _ = run(capsys, "moment", "--stat", "sign", "--d", "4", "--n", "1", "--expected")
    assert code == 0 and out.strip() == "1/q^2"
    code, out, _ = run(capsys, "moment", "--stat", "indicator:2,1", "--d", "3", "--n", "1", "--format", "json")
    assert json.loads(out)["value"] == ["0", "0", "-1/2", "1/2"]


def test_moment_from_file(capsys, tmp_path):
    path = tmp_path / "L.json"
    path.write_text(json.dumps({"3": "0", "2,1": "1", "1,1,1": "3"}))
    code, out, _ = run(capsys, "moment", "--stat", f"file:{path}", "--d", "3", "--n", "inf", "--squarefree")
    code2, out2, _ = run(capsys, "moment", "--stat", "linear", "--d", "3", "--n", "inf", "--squarefree")
    assert code == code2 == 0 and out == out2


def test_bad_statistic_file(capsys, tmp_path):
    path = tmp_path / "partial.json"
    path.write_text(json.dumps({"3": "1", "2,1": "1"}))
    code, _, err = run(capsys, "moment", "--stat", f"file:{path}", "--d", "3", "--n", "1")
    assert code == 1 and "error" in err
    code, _, err = run(capsys, "moment", "--stat", "bogus", "--d", "3", "--n", "1")
    assert code == 1


def test_census_and_out(capsys, tmp_path):
    target = tmp_path / "c.json"
    code, out, _ = run(capsys, "census", "--q", "2", "--n", "2", "--d", "2", "--format", "json", "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["irreducible"] == 35


def test_census_errors(capsys):
    assert run(capsys, "census", "--q", "6", "--n", "1", "--d", "2")[0] == 1
    assert run(capsys, "census", "--q", "2", "--n", "2", "--d", "7")[0] == 1


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "reciprocity", "--d-max", "4")
    assert code == 0 and out.rstrip().endswith("0 failed")
    code, out, _ = run(capsys, "verify", "--suite", "oracle", "--q", "3", "--n", "1", "--d-max", "3", "--format", "json")
    data = json.loads(out)
    assert code == 0 and all(e["pass"] for e in data)


def test_verify_reports_failure(capsys, monkeypatch):
    from liminal import cli
    from liminal.report import Report

    def broken(*_):
        r = Report()
        r.check("always wrong", {}, 1, 2)
        return r

    monkeypatch.setattr(cli.ct, "carlitz_degree_check", broken)
    code, out, _ = run(capsys, "verify", "--suite", "carlitz")
    assert code == 1 and "FAIL" in out


@pytest.mark.parametrize("argv", [
    ["necklace", "--d", "3", "--n", "zero"],
    ["necklace", "--d", "0", "--n", "1"],
    ["chars", "--d", "3", "--kind", "chi"],
    ["verify", "--suite", "nope"],
    [],
])
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "liminal", "necklace", "--d", "2", "--n", "1"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout.strip() == "(-1/2)q + (1/2)q^2"
