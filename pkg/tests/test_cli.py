import csv
import io
import json
import subprocess
import sys

import pytest

from lowslope.cli import main
from lowslope.emit import decimal6, render


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows_csv(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_base_g3(capsys):
    code, out, _ = run(capsys, "base", "--g", "3", "--format", "csv")
    assert code == 0
    (row,) = rows_csv(out)
    assert (row["n_twists"], row["sigma"], row["K2"], row["chi_f"], row["slope"]) == ("28", "-16", "8", "3", "8/3")
    assert row["slope_decimal"] == "2.66667"


def test_base_g4(capsys):
    code, out, _ = run(capsys, "base", "--g", "4", "--format", "json")
    (row,) = json.loads(out)
    assert (row["K2"], row["chi_f"], row["slope"]) == (12, 4, "3/1")


def test_base_bad_genus(capsys):
    code, _, err = run(capsys, "base", "--g", "1")
    assert code == 2 and "--g" in err


def test_bad_flag_exit_two():
    with pytest.raises(SystemExit) as exc:
        main(["thm124", "--g", "3", "--mode", "fast"])
    assert exc.value.code == 2


def test_thm124_h1(capsys):
    code, out, _ = run(capsys, "thm124", "--g", "3", "--h", "1", "--r", "1", "--n", "3", "--format", "csv")
    assert code == 0
    rows = rows_csv(out)
    assert [r["slope"] for r in rows] == ["8/3", "18/7", "22/9", "30/13"]
    assert [r["i"] for r in rows] == ["0", "1", "2", "3"]
    assert list(rows[0]) == ["i", "r_i", "n_twists", "sigma", "e", "K2", "chi_f", "slope", "slope_decimal"]


def test_thm124_fixed_point(capsys):
    code, out, _ = run(capsys, "thm124", "--g", "3", "--h", "2", "--r", "1", "--n", "4", "--format", "csv")
    assert code == 0 and {r["slope"] for r in rows_csv(out)} == {"8/3"}


def test_thm124_ledger_large_n(capsys):
    code, out, _ = run(capsys, "thm124", "--g", "5", "--h", "4", "--r", "1", "--n", "50", "--mode", "ledger", "--format", "json")
    rows = json.loads(out)
    assert code == 0 and len(rows) == 51
    from fractions import Fraction

    last = Fraction(rows[-1]["slope"])
    assert abs(last - Fraction(16, 5)) < Fraction(1, 10**12)


def test_thm124_bad_h(capsys):
    code, _, err = run(capsys, "thm124", "--g", "3", "--h", "3")
    assert code == 2


def test_budget_reported(capsys):
    code, _, err = run(capsys, "thm124", "--g", "3", "--h", "2", "--n", "4", "--max-letters", "1000")
    assert code == 2 and "budget" in err


def test_budget_env(capsys, monkeypatch):
    monkeypatch.setenv("LOWSLOPE_MAX_LETTERS", "50")
    code, _, err = run(capsys, "thm124", "--g", "3", "--n", "1")
    assert code == 2 and "budget" in err


def test_thm12(capsys):
    code, out, _ = run(capsys, "thm12", "--g", "3", "--n", "4", "--format", "json")
    (row,) = json.loads(out)
    assert code == 0
    assert row["slope"] == "46/21" and row["upper_bound"] == "9/4"
    assert row["bounds"] and row["homology_identity"] and row["chain_present"] and row["h1_trivial"] and row["minimal"]


def test_thm12_ledger_mode(capsys):
    code, out, _ = run(capsys, "thm12", "--g", "4", "--n", "12", "--mode", "ledger", "--format", "csv")
    (row,) = rows_csv(out)
    assert code == 0 and row["homology_identity"] == "-" and row["bounds"] == "true"


def test_lantern(capsys):
    code, out, _ = run(capsys, "lantern", "--dir", "down", "--format", "csv")
    (row,) = rows_csv(out)
    assert code == 0 and (row["before"], row["after"], row["verdict"]) == ("8/3", "23/9", "decreased")
    code, out, _ = run(capsys, "lantern", "--dir", "up", "--g", "3", "--format", "csv")
    (row,) = rows_csv(out)
    assert code == 0 and (row["after"], row["verdict"]) == ("11/4", "increased")


def test_lantern_on_family_and_file(capsys, tmp_path):
    code, out, _ = run(capsys, "lantern", "--dir", "down", "--family", "1", "--format", "csv")
    (row,) = rows_csv(out)
    assert code == 0 and row["before"] == "18/7"
    p = tmp_path / "b.json"
    assert run(capsys, "base", "--g", "4", "--out", str(p))[0] == 0
    code, out, _ = run(capsys, "lantern", "--dir", "up", "--input", str(p), "--format", "csv")
    assert code == 0 and rows_csv(out)[0]["verdict"] == "increased"


def test_verify_good_and_broken(capsys, tmp_path):
    p = tmp_path / "f.json"
    assert run(capsys, "thm12", "--g", "3", "--n", "1", "--out", str(p))[0] == 0
    code, out, _ = run(capsys, "verify", str(p), "--format", "csv")
    assert code == 0
    checks = {r["check"]: r["ok"] for r in rows_csv(out)}
    assert checks["homology_identity"] == "true" and checks["h1_trivial"] == "true"
    d = json.loads(p.read_text())
    del d["letters"][3]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(d))
    code, out, err = run(capsys, "verify", str(bad), "--format", "csv")
    checks = {r["check"]: r["ok"] for r in rows_csv(out)}
    assert code == 1 and checks["homology_identity"] == "false"


def test_verify_rejects_unknown_fields(capsys, tmp_path):
    p = tmp_path / "b.json"
    run(capsys, "base", "--g", "3", "--out", str(p))
    d = json.loads(p.read_text())
    d["mystery"] = True
    p.write_text(json.dumps(d))
    code, _, err = run(capsys, "verify", str(p))
    assert code == 2 and "mystery" in err
    assert run(capsys, "verify", str(tmp_path / "missing.json"))[0] == 2


def test_out_in_ledger_mode_is_usage_error(capsys, tmp_path):
    code, _, _ = run(capsys, "thm124", "--g", "3", "--n", "2", "--mode", "ledger", "--out", str(tmp_path / "x.json"))
    assert code == 2


def test_table_and_jobs_deterministic(capsys):
    args = ["table", "--g", "3", "4", "--r", "1", "2", "--n", "3", "--format", "csv"]
    code, serial, _ = run(capsys, *args)
    code2, parallel, _ = run(capsys, *args, "--jobs", "2")
    assert code == code2 == 0 and serial == parallel
    rows = rows_csv(serial)
    assert len(rows) == (2 + 3) * 2 * 4


def test_output_byte_identical(capsys):
    a = run(capsys, "thm124", "--g", "4", "--h", "2", "--n", "3")[1]
    b = run(capsys, "thm124", "--g", "4", "--h", "2", "--n", "3")[1]
    assert a == b


def test_md_and_text_formats(capsys):
    out = run(capsys, "base", "--g", "3", "--format", "md")[1]
    assert out.startswith("| g | n_twists") and "| 8/3 |" in out
    out = run(capsys, "base", "--g", "3")[1]
    assert out.splitlines()[0].split()[0] == "g"


def test_decimal6():
    from fractions import Fraction

    assert decimal6(Fraction(8, 3)) == "2.66667"
    assert decimal6(Fraction(3)) == "3.00000"
    assert decimal6(Fraction(46, 21)) == "2.19048"
    assert decimal6(Fraction(1, 3000)) == "0.000333333"
    assert decimal6(Fraction(0)) == "0.00000"
    with pytest.raises(ValueError):
        render([], ["a"], "xml")


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "lowslope", "base", "--g", "3", "--format", "csv"], capture_output=True, text=True)
    assert out.returncode == 0 and "8/3" in out.stdout
