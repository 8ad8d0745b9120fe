"""End-to-end checks of the command-line surface via entry()."""

import shutil
import subprocess
import sys

import pytest

from harmony import (
    Forest,
    build_double_broom,
    build_t_delta,
    emit_edge_list,
    is_harmonious,
    parse_coloring,
    parse_edge_list,
    predict_h,
)
from harmony.cli import _build_caterpillar, _build_spider, entry


def report(text):
    """key=value lines -> dict (ignores anything else)."""
    out = {}
    for ln in text.splitlines():
        if "=" in ln:
            key, _, val = ln.partition("=")
            out[key] = val
    return out


def write_graph(tmp_path, f, name="g.txt"):
    p = tmp_path / name
    p.write_text(emit_edge_list(f))
    return str(p)


def star6(tmp_path):
    return write_graph(tmp_path, Forest(6, [(0, v) for v in range(1, 6)]))


class TestColor:
    def test_writes_coloring_file(self, tmp_path, capsys):
        g = star6(tmp_path)
        out = tmp_path / "c.txt"
        assert entry(["color", g, "--out", str(out)]) == 0
        rep = report(capsys.readouterr().out)
        assert rep["command"] == "color"
        assert rep["colors"] == "6"
        assert rep["verified"] == "true"
        assert rep["fallbacks"] == "0"
        assert rep["case_trace"] == "Case1"
        assert len(rep["digest"]) == 64
        c = parse_coloring(out.read_text())
        assert is_harmonious(Forest(6, [(0, v) for v in range(1, 6)]), c)

    def test_coloring_on_stdout_report_on_stderr(self, tmp_path, capsys):
        g = star6(tmp_path)
        assert entry(["color", g]) == 0
        captured = capsys.readouterr()
        c = parse_coloring(captured.out)
        assert c.n == 6 and c.distinct_colors() == 6
        assert report(captured.err)["command"] == "color"

    def test_precondition_exit(self, tmp_path, capsys):
        g = write_graph(tmp_path, build_t_delta(4))
        assert entry(["color", g]) == 3
        rep = report(capsys.readouterr().out)
        assert rep["error"] == "precondition"
        assert rep["slack"] == "-1"

    def test_corrupt_graph_exit(self, tmp_path, capsys):
        p = tmp_path / "bad.txt"
        p.write_text("3 2\n0 1\nnot an edge\n")
        assert entry(["color", str(p)]) == 2

    def test_missing_file_exit(self, tmp_path):
        assert entry(["color", str(tmp_path / "nope.txt")]) == 2

    def test_seed_recorded(self, tmp_path, capsys):
        g = star6(tmp_path)
        assert entry(["color", g, "--seed", "7", "--out",
                      str(tmp_path / "c.txt")]) == 0
        assert report(capsys.readouterr().out)["seed"] == "7"


class TestExact:
    def test_sharp_instance(self, tmp_path, capsys):
        g = write_graph(tmp_path, build_t_delta(3))
        assert entry(["exact", g]) == 0
        rep = report(capsys.readouterr().out)
        assert rep["h"] == "5"
        assert rep["timed_out"] == "false"

    def test_budget_exhaustion(self, tmp_path, capsys):
        g = write_graph(tmp_path, build_t_delta(5))
        assert entry(["exact", g, "--budget", "50"]) == 4
        rep = report(capsys.readouterr().out)
        assert rep["timed_out"] == "true"
        assert rep["h"] == "none"

    def test_witness_file(self, tmp_path, capsys):
        f = Forest(4, [(0, 1), (1, 2), (2, 3)])
        g = write_graph(tmp_path, f)
        w = tmp_path / "w.txt"
        assert entry(["exact", g, "--out", str(w)]) == 0
        c = parse_coloring(w.read_text())
        assert is_harmonious(f, c)
        assert c.distinct_colors() == 3


class TestVerify:
    def test_accepts_good_coloring(self, tmp_path, capsys):
        g = star6(tmp_path)
        out = tmp_path / "c.txt"
        entry(["color", g, "--out", str(out)])
        capsys.readouterr()
        assert entry(["verify", g, str(out)]) == 0
        assert report(capsys.readouterr().out)["verified"] == "true"

    def test_rejects_tampered_coloring(self, tmp_path, capsys):
        g = star6(tmp_path)
        out = tmp_path / "c.txt"
        entry(["color", g, "--out", str(out)])
        capsys.readouterr()
        c = parse_coloring(out.read_text())
        c.colors[2] = c.colors[1]  # duplicate a center-leaf pair
        lines = [f"{c.n} {c.k}"] + [f"{v} {c.colors[v]}" for v in range(c.n)]
        out.write_text("\n".join(lines) + "\n")
        assert entry(["verify", g, str(out)]) == 1
        assert report(capsys.readouterr().out)["verified"] == "false"

    def test_rejects_size_mismatch(self, tmp_path, capsys):
        g = star6(tmp_path)
        bad = tmp_path / "c.txt"
        bad.write_text("2 2\n0 0\n1 1\n")
        assert entry(["verify", g, str(bad)]) == 2


class TestPredict:
    def test_star(self, tmp_path, capsys):
        g = star6(tmp_path)
        assert entry(["predict", g]) == 0
        rep = report(capsys.readouterr().out)
        assert rep["h"] == "6"
        assert rep["delta"] == "5"
        assert rep["slack"] == "7"

    def test_sharpness_family_refused(self, tmp_path, capsys):
        g = write_graph(tmp_path, build_t_delta(5))
        assert entry(["predict", g]) == 3
        assert report(capsys.readouterr().out)["slack"] == "-1"


class TestGen:
    def test_t_delta_round_trip(self, tmp_path):
        out = tmp_path / "t.txt"
        assert entry(["gen", "t-delta", "--delta", "4",
                      "--out", str(out)]) == 0
        text = out.read_text()
        assert text.startswith("# t-delta delta=4\n")
        assert parse_edge_list(text) == build_t_delta(4)

    def test_double_broom_round_trip(self, tmp_path):
        out = tmp_path / "b.txt"
        assert entry(["gen", "double-broom", "--q", "2", "--d1", "4",
                      "--d2", "4", "--out", str(out)]) == 0
        assert parse_edge_list(out.read_text()) == build_double_broom(2, 4, 4)

    def test_random_respects_flags(self, tmp_path):
        out = tmp_path / "r.txt"
        assert entry(["gen", "random", "--n", "20", "--delta", "8",
                      "--nonadjacent", "--seed", "7", "--out", str(out)]) == 0
        f = parse_edge_list(out.read_text())
        assert f.n == 20 and f.max_degree() == 8
        assert predict_h(f) == 10

    def test_random_to_stdout(self, capsys):
        assert entry(["gen", "random", "--n", "12", "--delta", "5"]) == 0
        f = parse_edge_list(capsys.readouterr().out)
        assert f.n == 12 and f.max_degree() == 5

    def test_env_seed_override(self, tmp_path, monkeypatch):
        a, b = tmp_path / "a.txt", tmp_path / "b.txt"
        entry(["gen", "random", "--n", "20", "--delta", "8",
               "--seed", "9", "--out", str(a)])
        monkeypatch.setenv("HARMONY_SEED", "9")
        entry(["gen", "random", "--n", "20", "--delta", "8",
               "--seed", "3", "--out", str(b)])
        assert a.read_text() == b.read_text()

    def test_env_seed_must_be_integer(self, monkeypatch, capsys):
        monkeypatch.setenv("HARMONY_SEED", "soon")
        assert entry(["gen", "random", "--n", "12", "--delta", "5"]) == 2

    def test_invalid_parameters(self, capsys):
        # delta too small for the height condition
        assert entry(["gen", "random", "--n", "20", "--delta", "4"]) == 2


class TestTheoremCheck:
    def test_small_sweep_clean(self, capsys):
        assert entry(["theorem-check", "--n-max", "5"]) == 0
        out = capsys.readouterr().out
        assert "n=3 mode=exhaustive qualifying=3 mismatches=0" in out
        assert "n=4 mode=exhaustive qualifying=16 mismatches=0" in out
        assert "n=5 mode=exhaustive qualifying=65 mismatches=0" in out
        assert "case.SmallDelta=" in out
        assert "case.Case1=" in out
        assert "\nmismatches=0" in out
        assert "\nfallbacks=0" in out
        assert "\noracle_skipped=0" in out


class TestBench:
    def test_star_family(self, capsys):
        assert entry(["bench", "--family", "star", "--n", "100001",
                      "--repeat", "1"]) == 0
        rep = report(capsys.readouterr().out)
        assert rep["family"] == "star"
        assert rep["colors"] == "100001"
        assert rep["fallbacks"] == "0"

    def test_spider_family(self, capsys):
        assert entry(["bench", "--family", "spider", "--n", "10001",
                      "--repeat", "1"]) == 0
        rep = report(capsys.readouterr().out)
        assert rep["colors"] == "5001"

    def test_caterpillar_family(self, capsys):
        assert entry(["bench", "--family", "caterpillar", "--n", "10001",
                      "--repeat", "1"]) == 0
        rep = report(capsys.readouterr().out)
        want = _build_caterpillar(10001).max_degree() + 1
        assert rep["colors"] == str(want)

    def test_random_theorem_family(self, capsys):
        assert entry(["bench", "--family", "random-theorem", "--n", "30002",
                      "--delta", "10002", "--repeat", "1", "--seed", "0"]) == 0
        rep = report(capsys.readouterr().out)
        assert rep["delta"] == "10002"
        assert rep["colors"] == "10003"

    def test_family_size_floor(self, capsys):
        assert entry(["bench", "--family", "spider", "--n", "3",
                      "--repeat", "1"]) == 2

    def test_spider_shape(self):
        f = _build_spider(8)
        assert f.n == 8
        assert f.max_degree() == 4  # three long legs, one short


class TestUsageErrors:
    def test_no_command(self):
        with pytest.raises(SystemExit) as err:
            entry([])
        assert err.value.code == 2

    def test_unknown_command(self):
        with pytest.raises(SystemExit) as err:
            entry(["paint"])
        assert err.value.code == 2


HARMONY = shutil.which("harmony")
SCRIPT = [HARMONY] if HARMONY else [sys.executable, "-m", "harmony.cli"]


class TestConsoleScript:
    def test_stdin_dash(self):
        text = emit_edge_list(Forest(6, [(0, v) for v in range(1, 6)]))
        res = subprocess.run(SCRIPT + ["color", "-"], input=text,
                             capture_output=True, text=True)
        assert res.returncode == 0
        c = parse_coloring(res.stdout)
        assert c.distinct_colors() == 6
        assert "command=color" in res.stderr

    def test_gen_then_predict(self, tmp_path):
        g = tmp_path / "t.txt"
        res = subprocess.run(SCRIPT + ["gen", "t-delta", "--delta", "4",
                                       "--out", str(g)],
                             capture_output=True, text=True)
        assert res.returncode == 0
        res = subprocess.run(SCRIPT + ["predict", str(g)],
                             capture_output=True, text=True)
        assert res.returncode == 3
        assert "slack=-1" in res.stdout
