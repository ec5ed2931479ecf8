import json
import os
import subprocess
import sys

import numpy as np
import pytest

from hadminors import kernels
from hadminors.catalog import sylvester
from hadminors.cli import EXIT_HAZARD, EXIT_INPUT, EXIT_OK, EXIT_SEARCH, EXIT_VERIFY, main, parse_orders
from hadminors.matrix import serialize
from hadminors.minors import MinorProfile


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_orders():
    import argparse

    assert parse_orders("2..5") == (2, 5)
    assert parse_orders("3") == (3, 3)
    for bad in ("5..2", "x", "0..3"):
        with pytest.raises(argparse.ArgumentTypeError):
            parse_orders(bad)


def test_minors_table_h8(capsys):
    code, out, _ = run(capsys, "minors", "--construct", "sylvester:3", "--format", "table")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "m=8 {1}*2^5"
    assert lines[-1] == "m=1 {1}"
    assert len(lines) == 8


def test_minors_order_one(capsys):
    code, out, _ = run(capsys, "minors", "--construct", "sylvester:0", "--format", "table")
    assert code == EXIT_OK and out == "m=1 {1}\n"


def test_minors_json_a_equals_d(capsys):
    _, a, _ = run(capsys, "minors", "--construct", "paley:7", "--alg", "A")
    _, d, _ = run(capsys, "minors", "--construct", "paley:7", "--alg", "D")
    assert a == d
    p = MinorProfile.from_json(a)
    assert p.n == 8 and p.is_complete()
    assert p.total(4) == 70**2


def test_minors_order_filters(capsys):
    _, out, _ = run(capsys, "minors", "--construct", "sylvester:3", "--orders", "2..6", "--min-order", "3",
                    "--max-order", "4", "--format", "csv")
    rows = out.splitlines()
    assert rows[0] == "m,normalized,multiplicity"
    assert {r.split(",")[0] for r in rows[1:]} == {"3", "4"}


def test_minors_from_file(tmp_path, capsys):
    f = tmp_path / "h4.txt"
    f.write_text(serialize(sylvester(2)))
    code, out, _ = run(capsys, "minors", "--file", str(f), "--format", "table")
    assert code == EXIT_OK
    assert out.splitlines()[1] == "m=3 {1}"


def test_report_paley12(capsys):
    code, out, _ = run(capsys, "report", "--construct", "paley:11")
    assert code == EXIT_OK
    d = json.loads(out)
    assert (d["depth"]["d"], d["depth"]["m_f"]) == (5, 6)
    assert d["szollosi"]["ok"] and d["cohn"]["ok"]


def test_report_table_h8(capsys):
    code, out, _ = run(capsys, "report", "--construct", "sylvester:3", "--format", "table")
    assert code == EXIT_OK
    assert out.startswith("n=8 k=2 d=4 m_d=4 m_f=4 hadamard=yes")
    body = [ln.split() for ln in out.splitlines()[2:10]]
    assert all(row[5] == "1.000" for row in body)  # R_H column
    assert "complementary minors: pass" in out


def test_report_needs_all_orders(capsys):
    code, _, err = run(capsys, "report", "--construct", "sylvester:2", "--orders", "1..2")
    assert code == EXIT_INPUT and "every minor order" in err


def test_bounds_cli(capsys):
    code, out, _ = run(capsys, "bounds", "29")
    assert code == EXIT_OK
    assert "x0 = " in out and "excluded orders: 23..26" in out
    code, out, _ = run(capsys, "bounds", "16")
    assert "interval empty" in out
    code, out, _ = run(capsys, "bounds", "100", "--format", "json")
    d = json.loads(out)
    assert not d["empty"] and d["x1"] > 0.97
    assert run(capsys, "bounds", "3")[0] == EXIT_INPUT


def test_verify_szollosi(capsys):
    code, out, _ = run(capsys, "verify", "szollosi", "--order", "8")
    assert code == EXIT_OK
    assert out.startswith("PASS")
    assert out.splitlines()[-1] == "1/1 checks passed"


def test_verify_failure_exit_code(capsys, monkeypatch):
    from hadminors import checks

    monkeypatch.setitem(checks.SUITES, "bounds", lambda order=None: [checks.Check("forced", False, "x")])
    code, out, _ = run(capsys, "verify", "bounds")
    assert code == EXIT_VERIFY
    assert "FAIL  forced  (x)" in out


def test_search_cli(tmp_path, capsys):
    out = tmp_path / "m7.txt"
    assert run(capsys, "search", "7", "--out", str(out))[0] == EXIT_OK
    _, js, _ = run(capsys, "minors", "--file", str(out), "--orders", "7")
    assert MinorProfile.from_json(js).max_value(7) == 9


def test_search_exhausted(capsys, monkeypatch):
    from hadminors import catalog, cli

    def boom(n, **kw):
        raise catalog.SearchExhausted(n, 10, None, False)

    monkeypatch.setattr(cli, "search_maxdet", boom)
    assert run(capsys, "search", "12")[0] == EXIT_SEARCH


@pytest.mark.parametrize(
    "argv",
    [
        ["minors", "--construct", "bogus:1"],
        ["minors", "--construct", "sylvester:9"],
        ["minors", "--file", "/nonexistent/file.txt"],
        ["minors", "--construct", "sylvester:2", "--min-order", "5"],
        ["minors", "--construct", "sylvester:2", "--workers", "0"],
    ],
)
def test_input_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == EXIT_INPUT
    assert out == "" and err.startswith("error:")


def test_parse_error_exit(tmp_path, capsys):
    f = tmp_path / "bad.txt"
    f.write_text("2\n+-\n+x\n")
    code, _, err = run(capsys, "minors", "--file", str(f))
    assert code == EXIT_INPUT and "unexpected character" in err


def test_rounding_hazard_exit_and_no_partial_file(tmp_path, capsys, monkeypatch):
    def fake(A, k, lo, hi, binom):
        return (np.zeros(0, np.int64), np.zeros(0, np.int64), np.uint64(0), np.uint64(0), lo, 0, 0.5)

    monkeypatch.setattr(kernels, "alga_histogram", fake)
    out = tmp_path / "out.json"
    code, _, err = run(capsys, "minors", "--construct", "sylvester:2", "--alg", "A", "--out", str(out))
    assert code == EXIT_HAZARD and "rounding hazard" in err
    assert list(tmp_path.iterdir()) == []


def test_out_file_byte_identical(tmp_path, capsys):
    paths = []
    for i, workers in enumerate((1, 1, 3)):
        p = tmp_path / f"r{i}.json"
        assert run(capsys, "report", "--construct", "paley:7", "--workers", str(workers), "--out", str(p))[0] == 0
        paths.append(p)
    blobs = [p.read_bytes() for p in paths]
    assert blobs[0] == blobs[1] == blobs[2]
    assert sorted(x.name for x in tmp_path.iterdir()) == ["r0.json", "r1.json", "r2.json"]


def test_module_entry_point():
    env = dict(os.environ)
    res = subprocess.run([sys.executable, "-m", "hadminors", "bounds", "16"], capture_output=True, text=True,
                         env=env, timeout=120)
    assert res.returncode == 0
    assert "interval empty" in res.stdout
    assert res.stderr == ""


def test_progress_on_stderr_for_large_orders(capsys):
    code, out, err = run(capsys, "minors", "--construct", "maxdet:15", "--orders", "2", "--format", "table")
    assert code == EXIT_OK
    assert out.startswith("m=2 ")
    assert "[order 2]" in err and "11025/11025" not in out
    _, _, err = run(capsys, "minors", "--construct", "sylvester:3", "--orders", "2")
    assert err == ""
