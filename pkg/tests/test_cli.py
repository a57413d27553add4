import csv
import io
import subprocess
import sys

import pytest

from planarlabel.cli import main
from planarlabel.planar import load_graph


@pytest.fixture
def grid_file(tmp_path):
    p = tmp_path / "g.txt"
    assert main(["gen", "grid", "--rows", "6", "--cols", "7", "--out", str(p)]) == 0
    return p


def test_gen_then_load(grid_file):
    g = load_graph(grid_file.read_text())
    assert (g.n, g.m) == (42, 6 * 6 + 5 * 7)


def test_gen_is_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    main(["gen", "random-triangulation", "--n", "90", "--seed", "4", "--out", str(a)])
    main(["gen", "random-triangulation", "--n", "90", "--seed", "4", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_build_query(grid_file, tmp_path, capsys):
    labels = tmp_path / "l.bin"
    assert main(["build", str(grid_file), "--out", str(labels)]) == 0
    capsys.readouterr()
    assert main(["query", str(labels), "0", "41"]) == 0
    assert capsys.readouterr().out.strip() == "11"


def test_build_twice_identical(grid_file, tmp_path):
    for name in ("x", "y"):
        main(["build", str(grid_file), "--scheme", "baseline", "--out", str(tmp_path / name)])
    assert (tmp_path / "x").read_bytes() == (tmp_path / "y").read_bytes()


def test_check_pass(grid_file, capsys):
    assert main(["check", str(grid_file)]) == 0
    out = capsys.readouterr().out
    assert "PASS [improved]" in out and "PASS [baseline]" in out


def test_check_disconnected(tmp_path, capsys):
    p = tmp_path / "d.txt"
    p.write_text("5 4\n1 2\n0 2\n0 1\n4\n3\n")
    assert main(["check", str(p)]) == 0
    assert "unreachable=12" in capsys.readouterr().out


def test_query_unreachable(tmp_path, capsys):
    p = tmp_path / "d.txt"
    p.write_text("3 1\n1\n0\n\n")
    main(["build", str(p), "--out", str(tmp_path / "l")])
    capsys.readouterr()
    main(["query", str(tmp_path / "l"), "0", "2"])
    assert capsys.readouterr().out.strip() == "INF"


def test_corrupted_label_file(grid_file, tmp_path, capsys):
    labels = tmp_path / "l.bin"
    main(["build", str(grid_file), "--out", str(labels)])
    data = bytearray(labels.read_bytes())
    data[len(data) // 2] ^= 0xFF
    labels.write_bytes(bytes(data))
    assert main(["check", str(grid_file), "--labels", str(labels)]) == 1
    assert "FormatError" in capsys.readouterr().err
    assert main(["query", str(labels), "0", "1"]) == 1


def test_check_wrong_graph(grid_file, tmp_path):
    other = tmp_path / "o.txt"
    main(["gen", "tree", "--n", "42", "--out", str(other)])
    labels = tmp_path / "l.bin"
    main(["build", str(other), "--out", str(labels)])
    assert main(["check", str(grid_file), "--labels", str(labels)]) == 1


def test_invalid_graph_exit_code(tmp_path):
    p = tmp_path / "k5.txt"
    p.write_text("5 10\n" + "\n".join(" ".join(str(w) for w in range(5) if w != v) for v in range(5)))
    assert main(["build", str(p)]) == 1


def test_usage_errors():
    assert main([]) == 2
    assert main(["frobnicate"]) == 2
    assert main(["gen", "grid"]) == 2
    assert main(["gen", "hypercube", "--n", "4"]) == 2


def test_bench_csv(capsys):
    assert main(["bench", "--family", "grid,tree", "--sizes", "64,256", "--queries", "50"]) == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert list(rows[0]) == ["family", "n", "seed", "max_bits", "mean_bits", "base_max_bits",
                             "c", "log_sum", "build_ms", "query_ns"]
    assert len(rows) == 4
    assert all(int(r["base_max_bits"]) >= int(r["max_bits"]) for r in rows)


def test_dump_separator(grid_file, capsys):
    assert main(["dump-separator", str(grid_file)]) == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert rows and int(rows[0]["c"]) == len(rows)
    assert int(rows[0]["max_component"]) <= int(rows[0]["bound"]) == 28


def test_dump_augmented(tmp_path, capsys):
    p = tmp_path / "c.txt"
    main(["gen", "big-face", "--n", "10", "--chords", "0", "--out", str(p)])
    assert main(["dump-augmented", str(p)]) == 0
    text = capsys.readouterr().out
    g = load_graph(text)
    assert g.n == 26
    weights = next(l for l in text.splitlines() if l.startswith("# weights:"))
    assert weights.split(":")[1].split() == ["1"] * 10 + ["0"] * 16


def test_console_script_runs():
    out = subprocess.run([sys.executable, "-m", "planarlabel.cli", "gen", "grid", "--n", "9"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and "9 12" in out.stdout
