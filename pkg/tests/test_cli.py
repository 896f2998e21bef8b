import csv
import io
import json
import subprocess
import sys

import pytest

from parastat.cli import main
from parastat.exactnum import RadicalSum


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_basis_examples(capsys):
    code, out, _ = run(capsys, "basis", "--m", "1", "--n", "1", "--p", "2", "--level", "1")
    assert code == 0 and json.loads(out)["count"] == 3
    code, out, _ = run(capsys, "basis", "--m", "1", "--n", "1", "--p", "1", "--level", "0")
    assert code == 0 and json.loads(out)["count"] == 1


@pytest.mark.parametrize("argv", [
    ["basis", "--m", "0"],
    ["basis", "--p", "0"],
    ["basis", "--level", "-1"],
    ["matrix", "g1+"],
    ["matrix", "f2+", "--m", "1"],
    ["matrix", "[f1+,b1-"],
    ["verify"],
])
def test_usage_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_bad_flag_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["basis", "--bogus"])
    assert exc.value.code == 2


def test_basis_csv_and_text(capsys):
    _, out, _ = run(capsys, "basis", "--p", "2", "--level", "1", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["index", "level", "rows", "weight"] and len(rows) == 4
    assert json.loads(rows[2][2]) == [[1, 0], [0]]
    code, out, _ = run(capsys, "basis", "--p", "2", "--level", "1", "--format", "text")
    assert code == 0 and "1,0 / 1" in out


def test_output_is_deterministic(capsys):
    argv = ["matrix", "[f1+,b1-]", "--m", "2", "--n", "1", "--p", "2", "--level", "3"]
    first = run(capsys, *argv)[1]
    assert run(capsys, *argv)[1] == first


def test_output_file(tmp_path, capsys):
    target = tmp_path / "basis.json"
    code, out, _ = run(capsys, "basis", "--p", "2", "--level", "2", "--output", str(target))
    assert code == 0 and out == ""
    text = target.read_text(encoding="utf-8")
    assert text.endswith("\n") and json.loads(text)["count"] > 3


def test_config_file_and_flag_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# small run\nm = 2\nn = 1\np = 2\nlevel = 1\n")
    _, out, _ = run(capsys, "basis", "--config", str(cfg))
    d = json.loads(out)
    assert (d["m"], d["n"], d["p"], d["level_cap"]) == (2, 1, 2, 1)
    _, out, _ = run(capsys, "basis", "--config", str(cfg), "--m", "1")
    assert json.loads(out)["m"] == 1


def test_missing_config_exits_2(tmp_path, capsys):
    assert run(capsys, "basis", "--config", str(tmp_path / "nope.cfg"))[0] == 2


def test_defining_matrix_dump(capsys):
    # [PAPER] the 5x5 realization of f1+ at m = n = 1
    code, out, _ = run(capsys, "matrix", "--defining", "f1+", "--m", "1", "--n", "1")
    assert code == 0
    d = json.loads(out)
    rows = [[RadicalSum.from_json_obj(v) for v in r] for r in d["rows"]]
    r2 = RadicalSum.sqrt(2)
    for i in range(5):
        for j in range(5):
            want = r2 if (i, j) == (0, 2) else -r2 if (i, j) == (2, 1) else RadicalSum.rational(0)
            assert rows[i][j] == want


def _entries(out):
    return {(e["row"], e["col"]): RadicalSum.from_json_obj(e["value"]) for e in json.loads(out)["entries"]}


def test_pso_dump_is_level_twisted_osp(capsys):
    base = ["matrix", "f1+", "--m", "1", "--n", "1", "--p", "3", "--level", "4"]
    _, osp, _ = run(capsys, *base)
    _, pso, _ = run(capsys, *base, "--variant", "pso")
    levels = [sum(b["rows"][0]) for b in json.loads(osp)["basis"]]
    a, b = _entries(osp), _entries(pso)
    assert a.keys() == b.keys() and a
    for (i, j), v in a.items():
        assert b[(i, j)] == (-v if levels[j] % 2 else v)


def test_creation_dump_is_transpose_of_annihilation(capsys):
    base = ["--m", "2", "--n", "1", "--p", "2", "--level", "3"]
    _, up, _ = run(capsys, "matrix", "b1+", *base)
    _, down, _ = run(capsys, "matrix", "b1-", *base)
    a, b = _entries(up), _entries(down)
    cap = json.loads(up)["max_source_level"]
    levels = [sum(x["rows"][0]) for x in json.loads(up)["basis"]]
    # b1- sources one level higher, so compare inside the levels both dumps cover
    inner = {k: v for k, v in a.items() if levels[k[0]] <= cap}
    assert inner == {(j, i): v for (i, j), v in b.items() if levels[i] <= cap}


def test_verify_examples(capsys):
    assert run(capsys, "verify", "--all", "--m", "1", "--n", "1", "--p", "2", "--level", "5")[0] == 0
    assert run(capsys, "verify", "--section4", "--p", "3", "--level", "8")[0] == 0
    assert run(capsys, "verify", "--closed-form", "--p", "1", "--level", "8")[0] == 0
    code, out, _ = run(capsys, "verify", "--defining", "--m", "3", "--n", "3")
    assert code == 0 and json.loads(out)["ok"] is True


def test_verify_report_shape(capsys):
    code, out, _ = run(capsys, "verify", "--relations", "--p", "2", "--level", "4", "--full")
    d = json.loads(out)
    assert code == 0 and d["ok"]
    first = d["suites"][0]["results"][0]
    assert {"relation", "indices", "signs", "status"} <= set(first)


def test_phase_link_gtilde_clause_exits_1(capsys):
    code, out, _ = run(capsys, "verify", "--phase", "--p", "2", "--level", "4")
    assert code == 1 and json.loads(out)["ok"] is False


def test_character_text(capsys):
    code, out, _ = run(capsys, "character", "--m", "2", "--n", "1", "--p", "2", "--level", "3", "--format", "text")
    assert code == 0
    assert out.splitlines()[0].split() == ["level", "partition", "dimension", "patterns"]
    assert all(line.rstrip().endswith("ok") for line in out.splitlines()[1:])


def test_gtable_csv(capsys):
    code, out, _ = run(capsys, "gtable", "--p", "2", "--level", "2", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[0] == ["top", "k", "value"]
    table = {(r[0], int(r[1])): RadicalSum.from_json(r[2]) for r in rows[1:]}
    # [DERIVED] vacuum creation norm sqrt(p)
    assert table[("0,0", 1)] == RadicalSum.sqrt(2)
    assert table[("1,0", 2)] == RadicalSum.sqrt(2)


def test_gtable_tilde(capsys):
    _, plain, _ = run(capsys, "gtable", "--p", "3", "--level", "3", "--format", "csv")
    _, tilde, _ = run(capsys, "gtable", "--p", "3", "--level", "3", "--format", "csv", "--tilde")
    assert plain != tilde


def test_cgc_subcommand(capsys):
    # [PAPER] the boson step off an empty fermion row carries a minus sign
    code, out, _ = run(capsys, "cgc", "1,0/0", "1,1/0", "--format", "text")
    assert code == 0
    assert "theta-sign" in out and "b-end" in out and "CGC = -1" in out
    code, out, _ = run(capsys, "cgc", "0,0/0", "1,1/1")
    assert code == 0 and json.loads(out)["j"] is None
    code, out, _ = run(capsys, "cgc", "1,0/0", "1,1/0", "--format", "csv")
    assert list(csv.reader(io.StringIO(out)))[-1][0] == "product"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "parastat", "basis", "--p", "2", "--level", "1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["count"] == 3
    proc = subprocess.run([sys.executable, "-m", "parastat", "basis", "--m", "0"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 2 and "error" in proc.stderr
