import json
import subprocess
import sys

import pytest

from matchroute import io
from matchroute.cli import main
from matchroute.graph import gen_complete, gen_cycle, gen_hypercube


def run(*args):
    return main([str(a) for a in args])


@pytest.fixture
def inst(tmp_path):
    g = tmp_path / "g.txt"
    p = tmp_path / "p.txt"
    assert run("gen", "random-regular", 64, 16, "--seed", 3, "--out", g) == 0
    p.write_text(" ".join(str((7 * v + 5) % 64) for v in range(64)) + "\n")
    return tmp_path, g, p


def test_gen_complete(capsys):
    assert run("gen", "complete", 5) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "5 4" and len(out.splitlines()) == 11


def test_gen_is_byte_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    run("gen", "random-regular", 64, 8, "--seed", 1, "--out", a)
    run("gen", "random-regular", 64, 8, "--seed", 1, "--out", b)
    assert a.read_bytes() == b.read_bytes()
    assert io.read_graph(a).d == 8


def test_gen_errors(capsys):
    assert run("gen", "random-regular", 5, 3) == 3
    assert "error" in capsys.readouterr().err
    assert run("gen", "random-regular", 8) == 2


def test_route_verify_round_trip(inst, capsys):
    d, g, p = inst
    for name in ("s.txt", "s.json"):
        out = d / name
        assert run("route", g, p, "--out", out, "--seed", 1) == 0
        assert "verified true" in capsys.readouterr().out
        assert run("verify", g, p, out) == 0
        assert capsys.readouterr().out.startswith("ok rounds=")
    assert json.loads((d / "s.json").read_text())["graph_hash"] == io.graph_hash(io.read_graph(g))


def test_route_is_byte_deterministic(inst):
    d, g, p = inst
    run("route", g, p, "--out", d / "a.txt", "--seed", 9)
    run("route", g, p, "--out", d / "b.txt", "--seed", 9)
    assert (d / "a.txt").read_bytes() == (d / "b.txt").read_bytes()


def test_route_identity_and_k2(tmp_path, capsys):
    g, p = tmp_path / "g", tmp_path / "p"
    io.write_graph(gen_complete(2), g)
    io.write_perm([0, 1], p)
    assert run("route", g, p) == 0
    assert capsys.readouterr().out.startswith("rounds 0\n")
    io.write_perm([1, 0], p)
    assert run("route", g, p) == 0
    assert capsys.readouterr().out.startswith("rounds 1\n")


def test_route_exit_codes(tmp_path):
    g, p = tmp_path / "g", tmp_path / "p"
    io.write_graph(gen_cycle(5), g)
    io.write_perm([2, 1, 0, 3, 4], p)
    assert run("route", g, p, "--max-resamples", 20) == 4
    assert run("route", g, p, "--max-resamples", 20, "--fallback") == 0
    p.write_text("0 1 2\n")
    assert run("route", g, p) == 2
    assert run("route", tmp_path / "missing", p) == 2


def test_verify_truncated_and_diagonal(inst, tmp_path, capsys):
    d, g, p = inst
    run("route", g, p, "--out", d / "s.txt")
    lines = (d / "s.txt").read_text().splitlines()
    (d / "short.txt").write_text("\n".join(lines[:-1]) + "\n")
    assert run("verify", g, p, d / "short.txt") == 6
    c4, ident, diag = tmp_path / "c4", tmp_path / "id", tmp_path / "diag"
    io.write_graph(gen_cycle(4), c4)
    io.write_perm([2, 1, 0, 3], ident)
    diag.write_text("round 0: 0-1\nround 1: 0-2\n")
    capsys.readouterr()
    assert run("verify", c4, ident, diag) == 6
    err = capsys.readouterr().err
    assert "round 1" in err and "0-2" in err


def test_verify_rejects_schedule_for_other_graph(inst, tmp_path):
    d, g, p = inst
    run("route", g, p, "--out", d / "s.json")
    other = tmp_path / "other"
    run("gen", "random-regular", 64, 16, "--seed", 4, "--out", other)
    assert run("verify", other, p, d / "s.json") == 6


@pytest.mark.parametrize(
    "g, expected", [(gen_complete(6), 1.0), (gen_cycle(5), 1.6180340), (gen_hypercube(3), 3.0)]
)
def test_lambda(tmp_path, capsys, g, expected):
    path = tmp_path / "g"
    io.write_graph(g, path)
    assert run("lambda", path) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0].startswith("lambda_hat ")
    assert float(out[0].split()[1]) == pytest.approx(expected, abs=1e-6)
    assert out[3] == "converged true"


def test_lambda_strict(tmp_path, capsys):
    path = tmp_path / "g"
    run("gen", "random-regular", 64, 8, "--out", path)
    assert run("lambda", path, "--tol", 1e-15, "--max-iter", 3) == 0
    assert "warning" in capsys.readouterr().err
    assert run("lambda", path, "--tol", 1e-15, "--max-iter", 3, "--strict") == 7


def test_bench_single_row(tmp_path, capsys):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"d": 16, "n": [64], "seeds": [0]}))
    assert run("bench", spec) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 2 and lines[1].endswith("true")
    spec.write_text("not json")
    assert run("bench", spec) == 2


def test_rt_exact(tmp_path, capsys):
    g, p = tmp_path / "g", tmp_path / "p"
    io.write_graph(gen_complete(2), g)
    io.write_perm([1, 0], p)
    assert run("rt-exact", g, p) == 0
    assert capsys.readouterr().out == "1\n"
    io.write_graph(gen_cycle(12), g)
    io.write_perm(list(range(12)), p)
    assert run("rt-exact", g, p) == 3


def test_help_shows_defaults(capsys):
    with pytest.raises(SystemExit):
        run("route", "--help")
    out = " ".join(capsys.readouterr().out.split())
    assert "(default: 0.0138" in out and "--retry-limit" in out


def test_module_entry_point(tmp_path):
    res = subprocess.run(
        [sys.executable, "-m", "matchroute", "gen", "cycle", "4"], capture_output=True, text=True, check=True
    )
    assert res.stdout == "4 2\n0 1\n0 3\n1 2\n2 3\n"
