import csv
import subprocess
import sys

import pytest

from bentparity.cli import main
from bentparity.core import parse_truth_table
from bentparity.walsh import is_bent


def parse_report(text):
    return dict(line.split("=", 1) for line in text.strip().splitlines())


def test_analyze_x1x2_hex(capsys):
    assert main(["analyze", "--hex", "8", "--n", "2"]) == 0
    rep = parse_report(capsys.readouterr().out)
    assert rep["Nl"] == "1" and rep["bent"] == "true" and rep["balanced_even"] == "true"
    assert rep["wH"] == "1" and rep["degree"] == "2"


def test_analyze_file_and_stdin(tmp_path, capsys, monkeypatch):
    path = tmp_path / "f.txt"
    path.write_text("n=2\n8\n")
    assert main(["analyze", str(path)]) == 0
    from_file = capsys.readouterr().out
    monkeypatch.setattr(sys, "stdin", open(path))
    assert main(["analyze", "-"]) == 0
    assert capsys.readouterr().out == from_file


def test_analyze_anf_zero(capsys):
    assert main(["analyze", "--anf", "0", "--n", "3"]) == 0
    rep = parse_report(capsys.readouterr().out)
    assert rep["Nl"] == "0" and rep["bent"] == "false"


def test_analyze_truncated_hex(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("n=4\n80\n")
    assert main(["analyze", str(path)]) == 2
    assert "expected 4 hex digits" in capsys.readouterr().err


def test_analyze_bad_anf_reports_column(capsys):
    assert main(["analyze", "--anf", "x1 + * x2"]) == 2
    assert "column 6" in capsys.readouterr().err


def test_analyze_needs_one_source(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["analyze", "--hex", "8", "--anf", "x1"])
    assert exc.value.code == 1
    assert main(["analyze", "--hex", "8"]) == 1


def test_extend_round_trip(tmp_path, capsys):
    out = tmp_path / "f8.txt"
    trace = tmp_path / "trace.csv"
    code = main(["extend", "--hex", "8", "--n", "2", "--target-n", "8", "-o", str(out), "--trace", str(trace)])
    assert code == 0
    f = parse_truth_table(out.read_text())
    assert f.n == 8 and is_bent(f)
    rows = list(csv.DictReader(trace.open()))
    assert [r["n"] for r in rows] == ["4", "6", "8"]
    assert [r["Nl"] for r in rows] == ["6", "28", "120"]
    capsys.readouterr()
    assert main(["analyze", str(out)]) == 0
    rep = parse_report(capsys.readouterr().out)
    assert rep["bent"] == "true" and rep["balanced_even"] == "true"


@pytest.mark.parametrize("packed,klass", [("1", "odd"), ("8", "odd"), ("9", "even"), ("6", "even")])
def test_extend_with_offset_round_trip(tmp_path, capsys, packed, klass):
    # packed bits: a0 at bit 0, a_s at bit 3; the balanced class is even iff a0 == a_s
    out = tmp_path / "f.txt"
    assert main(["extend", "--hex", "8", "--n", "2", "--target-n", "4", "--offset", packed, "-o", str(out)]) == 0
    capsys.readouterr()
    main(["analyze", str(out)])
    rep = parse_report(capsys.readouterr().out)
    assert rep["bent"] == "true"
    assert rep[f"balanced_{klass}"] == "true"


def test_extend_usage_errors(capsys):
    assert main(["extend", "--hex", "8", "--n", "2", "--target-n", "5"]) == 1
    assert main(["extend", "--hex", "8", "--n", "2", "--target-n", "6", "--offset", "1"]) == 1
    assert main(["extend", "--hex", "8", "--n", "2", "--target-n", "4", "--offset", "zz"]) == 1


def test_extend_non_bent_seed(capsys):
    assert main(["extend", "--hex", "0", "--n", "2", "--target-n", "4"]) == 1
    assert "W(0x0)" in capsys.readouterr().err


def test_enumerate(tmp_path, capsys):
    assert main(["enumerate", "--n", "4"]) == 0
    assert "bent_count=896" in capsys.readouterr().out
    path = tmp_path / "b2.csv"
    assert main(["enumerate", "--n", "2", "--csv", str(path)]) == 0
    assert "bent_count=8" in capsys.readouterr().out
    assert len(list(csv.DictReader(path.open()))) == 8


def test_enumerate_large_n_suggests_sampling(capsys):
    assert main(["enumerate", "--n", "6"]) == 1
    assert "verify --suite theorem4 --sampled" in capsys.readouterr().err


@pytest.mark.parametrize("suite", ["walsh", "nonlinearity", "theorem4"])
def test_verify_suites_pass(suite, capsys):
    assert main(["verify", "--suite", suite, "--n", "4"]) == 0
    assert capsys.readouterr().out.count("PASS") == 1


def test_verify_sampled_theorem4(capsys):
    assert main(["verify", "--suite", "theorem4", "--n", "6", "--sampled", "--samples", "200"]) == 0
    assert "checked=200" in capsys.readouterr().out


def test_verify_algorithms_n2(capsys):
    assert main(["verify", "--suite", "algorithms", "--n", "2"]) == 0


def test_verify_unsampled_large_n(capsys):
    assert main(["verify", "--suite", "theorem4", "--n", "6"]) == 1


def test_seed_is_deterministic(tmp_path, capsys):
    assert main(["seed", "--n", "6", "--rng-seed", "3"]) == 0
    first = capsys.readouterr().out
    assert main(["seed", "--n", "6", "--rng-seed", "3"]) == 0
    assert capsys.readouterr().out == first
    assert is_bent(parse_truth_table(first))
    assert main(["seed", "--n", "5"]) == 1


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "bentparity", "analyze", "--anf", "x1*x2 + x3*x4"],
        capture_output=True, text=True, check=False,
    )
    assert res.returncode == 0
    assert "bent=true" in res.stdout
