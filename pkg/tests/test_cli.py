from __future__ import annotations

import json
import subprocess
import sys

import pytest

from hypersigma import verify
from hypersigma.algebra import GenusContext
from hypersigma.cli import main
from hypersigma.operators import build_H
from hypersigma.rational import solve_m
from hypersigma.render import emit, op_from_json, poly_from_json
from hypersigma.report import Report
from hypersigma.symmetric import shw


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_solve_rational_text(capsys):
    code, out, _ = run(capsys, "solve-rational", "--genus", "2", "--format", "text")
    assert code == 0 and out.strip() == "z1^3 - 3*z3"


def test_solve_rational_induction(capsys):
    code, out, _ = run(capsys, "solve-rational", "--genus", "3", "--method", "induction")
    assert code == 0 and out.strip() == "z1^6 - 15*z1^3*z3 + 45*z1*z5 - 45*z3^2"


def test_verify_witt(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "witt", "--genus", "4", "--max-k", "6")
    assert code == 0 and "FAIL" not in out


def test_gen_op_euler_operator_genus_seven(capsys):
    code, out, _ = run(capsys, "gen-op", "--genus", "7", "--family", "H", "--k", "0", "--format", "json")
    assert code == 0
    op = op_from_json(out)
    terms = list(op.terms.items())
    assert sum(1 for (m, d), _ in terms if d) == 7
    assert dict(((m, d), c) for (m, d), c in terms)[((), ())] == -28


def test_json_examples(capsys):
    assert json.loads(emit(solve_m(1).poly, "json")) == \
        {"genus": 1, "terms": [{"coeff": [1, 1], "exps": [["Z", 1, 1]]}]}
    code, out, _ = run(capsys, "emit-table", "--table", "mu", "--max-k", "4")
    assert code == 0 and out.strip() == "1 1 3 45 4725"
    assert emit(shw(2), "latex") == r"\frac{1}{3}\left(p_1^{3} - p_3\right)"


@pytest.mark.parametrize("g", [1, 2, 3, 4])
def test_json_round_trip(g):
    p = solve_m(g).poly
    assert poly_from_json(emit(p, "json")) == p
    for k in range(min(3, 2 * g)):
        op = build_H(GenusContext(g), k)
        assert op_from_json(emit(op, "json")) == op


def test_output_is_deterministic():
    argv = [sys.executable, "-m", "hypersigma", "sigma-series", "--genus", "2",
            "--max-lambda-weight", "6", "--format", "json"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second and first


def test_out_file(tmp_path, capsys):
    target = tmp_path / "m3.tex"
    code, out, _ = run(capsys, "solve-rational", "--genus", "3", "--format", "latex", "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text().startswith("z_1^{6}")


@pytest.mark.parametrize("argv", [
    ["solve-rational"],
    ["solve-rational", "--genus", "0"],
    ["gen-op", "--genus", "2", "--family", "H", "--k", "4"],
    ["verify", "--suite", "nonsense"],
    ["solve-rational", "--genus", "2", "--bogus"],
    ["change-of-vars", "--which", "tanh", "--genus", "3", "--order", "4"],
    ["solve-rational", "--genus", "2", "--out", "/nonexistent/dir/file.txt"],
])
def test_usage_errors_exit_two(argv, capsys):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_failed_verification_exits_one(monkeypatch, capsys):
    def failing(*args, **kwargs):
        rep = Report("rational")
        rep.add("kernel-dim[g=2]", False, 2)
        return rep

    monkeypatch.setattr(verify, "run_suite", failing)
    code, out, _ = run(capsys, "verify", "--suite", "rational")
    assert code == 1
    report = json.loads(out)
    assert report["passed"] is False and report["checks"][0]["name"] == "kernel-dim[g=2]"


def test_other_subcommands(capsys):
    code, out, _ = run(capsys, "shw", "--genus", "2", "--basis", "e")
    assert code == 0 and out.strip() == "e1*e2 - e3"
    code, out, _ = run(capsys, "adler-moser", "--k", "2")
    assert code == 0 and out.strip() == "tau1^3 + tau2"
    code, out, _ = run(capsys, "change-of-vars", "--which", "pz", "--genus", "3")
    assert code == 0 and out.splitlines() == ["p1 = z1", "p3 = 3*z3", "p5 = 5*z5"]
    code, out, _ = run(capsys, "change-of-vars", "--which", "tanh", "--genus", "2")
    assert code == 0 and out.strip() == "taustar2 = -1/3*tau2"
    code, _, _ = run(capsys, "verify", "--suite", "rational", "--max-genus", "3")
    assert code == 0
