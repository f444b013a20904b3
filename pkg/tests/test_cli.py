import json
import subprocess
import sys
from fractions import Fraction

import pytest

from natpoly.cli import CSV_HEADER, main
from natpoly.metrics import MetricsRecord
from natpoly.refdata import load_reference


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_props_csv(capsys):
    code, out, _ = run(capsys, "props", "6")
    assert code == 0 and out.strip() == "6,2,3,3,5,8,5,2,1/2"
    code, out, _ = run(capsys, "props", "1", "--header")
    assert out.splitlines() == [CSV_HEADER, "1,,0,1,1,,,,1"]


def test_props_subset(capsys):
    code, out, _ = run(capsys, "props", "10", "--subset", "one-evens-odd-primes")
    cells = out.strip().split(",")
    assert cells[2] == "4" and cells[-1] == "5/24"


def test_props_json(capsys):
    code, out, _ = run(capsys, "props", "12", "--format", "json")
    d = json.loads(out)
    assert d["vol"] == "3/40" and d["h_star"][:3] == [1, 6, 2]
    assert MetricsRecord.from_dict(d).vol == Fraction(3, 40)


def test_hstar_fvector(capsys):
    assert run(capsys, "hstar", "12")[1].strip() == "1 6 2"
    assert run(capsys, "hstar", "2")[1].strip() == "1"
    assert run(capsys, "fvector", "11")[1].strip() == "7 19 26 19 7"


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "hstar", "31")[0] == 3
    assert run(capsys, "props", "20000")[0] == 2
    assert run(capsys, "sweep", "--from", "5", "--to", "3")[0] == 2
    assert run(capsys, "sweep", "--to", "3", "--out", str(tmp_path / "no" / "such" / "f.csv"))[0] == 4
    assert run(capsys, "props", "31", "--hstar")[0] == 3
    with pytest.raises(SystemExit) as exc:
        main(["props"])
    assert exc.value.code == 2


def test_list_file(capsys, tmp_path):
    f = tmp_path / "m.txt"
    f.write_text("1\n2\n3\n4\n")
    code, out, _ = run(capsys, "props", "4", "--list-file", str(f))
    assert out.strip() == "4,1,2,2,3,3,3,2,1"
    f.write_text("1\n6\n")
    assert run(capsys, "props", "6", "--list-file", str(f))[0] == 2


def test_sweep_matches_small_table(capsys, tmp_path):
    out = tmp_path / "s.csv"
    assert run(capsys, "sweep", "--from", "1", "--to", "16", "--out", str(out))[0] == 0
    lines = out.read_text().splitlines()
    assert lines[0] == CSV_HEADER and len(lines) == 17
    table = load_reference("table1_1")
    for line in lines[1:]:
        cells = line.split(",")
        N = int(cells[0])
        assert Fraction(cells[-1]) == table[N]["vol"]
        assert int(cells[2]) == table[N]["dim"]


def test_sweep_resume(capsys, tmp_path):
    ref = tmp_path / "ref.csv"
    run(capsys, "sweep", "--to", "30", "--out", str(ref))
    ck = tmp_path / "ck.jsonl"
    run(capsys, "sweep", "--to", "30", "--out", str(tmp_path / "x.csv"), "--checkpoint", str(ck))
    lines = ck.read_text().splitlines()
    assert len(lines) == 30
    # simulate a kill mid-write after N = 12
    ck.write_text("\n".join(lines[:12]) + "\n" + lines[12][:25])
    again = tmp_path / "again.csv"
    run(capsys, "sweep", "--to", "30", "--out", str(again), "--checkpoint", str(ck))
    assert again.read_bytes() == ref.read_bytes()


def test_sweep_parallel_equals_serial(capsys, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run(capsys, "sweep", "--to", "25", "--out", str(a))
    run(capsys, "sweep", "--to", "25", "--out", str(b), "--jobs", "3")
    assert a.read_bytes() == b.read_bytes()


def test_verify_clean(capsys):
    code, out, _ = run(capsys, "verify", "--from", "1", "--to", "50", "--tables", "appendixA")
    assert code == 0
    report = json.loads(out.splitlines()[-1])
    assert report["mismatches"] == 0 and report["rows"] == 50
    assert report["skipped_fields"] == ["n_hilbert_basis"]


def test_verify_h_star(capsys):
    code, out, _ = run(capsys, "verify", "--to", "20", "--tables", "table3_1,table1_1")
    assert code == 0


def test_verify_corrupted_checkpoint(capsys, tmp_path):
    ck = tmp_path / "ck.jsonl"
    run(capsys, "sweep", "--to", "20", "--out", str(tmp_path / "s.csv"), "--checkpoint", str(ck))
    lines = ck.read_text().splitlines()
    obj = json.loads(lines[9])
    obj["record"]["Vol"] += 1
    lines[9] = json.dumps(obj)
    ck.write_text("\n".join(lines) + "\n")
    code, out, _ = run(capsys, "verify", "--to", "20", "--checkpoint", str(ck))
    assert code == 1
    assert "N=10 Vol: expected 8, computed 9" in out


def test_verify_bad_table(capsys):
    assert run(capsys, "verify", "--tables", "table5_1")[0] == 2


def test_plotdata(capsys):
    code, out, _ = run(capsys, "plotdata", "vertex-ratio", "--to", "3")
    assert out.splitlines()[-1] == "3\t3\t1.000000"
    code, out, _ = run(capsys, "plotdata", "volume", "--from", "14", "--to", "14")
    assert out.splitlines()[-1] == "14\t11/720\t1.527777777777e-2"
    code, out, _ = run(capsys, "plotdata", "correlation", "--to", "4")
    assert out.splitlines()[1] == "1\t1\t"


def test_sum(capsys):
    code, out, _ = run(capsys, "sum", "--subset", "one-and-primes", "--upto", "11", "--digits", "6")
    assert "decimal: 2.716666" in out and "fraction: 163/60" in out
    code, out, _ = run(capsys, "sum", "--upto", "40", "--digits", "8", "--ratio-e")
    assert code == 0 and "ratio_e:" in out and "heuristic" in out


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "natpoly.cli", "props", "9"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "9,1,4,6,5,10,5,6,1/4"
