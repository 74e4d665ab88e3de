import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from ladderpt import superops
from ladderpt.algebra import op
from ladderpt.cli import main
from ladderpt.engine import iterate
from ladderpt.models import zeeman_problem
from ladderpt.oracle import BasisSpec
from ladderpt.render import expr_from_json
from ladderpt.verify import FAIL, PASS, SKIP, homomorphism_check, run_checks

GOLDEN = Path(__file__).parent / "golden"


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.mark.parametrize("argv, golden", [
    (["run", "--preset", "stark", "--order", "4"], "stark_order4.txt"),
    (["run", "--preset", "zeeman", "--order", "4", "--format", "latex"], "zeeman_order4.tex"),
    (["run", "--preset", "zeeman", "--order", "1", "--format", "json"], "zeeman_order1.json"),
])
def test_golden_outputs(argv, golden):
    code, text = run(*argv)
    assert code == 0
    assert text == (GOLDEN / golden).read_text()


def test_stark_text_content():
    _, text = run("run", "--preset", "stark", "--order", "4")
    assert "W = −(1/2)·e²·𝓔²·m⁻¹·ω₀⁻²·1\n" in text
    for n in (3, 4):
        assert f"  A_{n} = 0\n" in text and f"  G_{n} = 0\n" in text
    assert "[a, a†] = 1" in text


def test_zeeman_latex_w_series():
    _, text = run("run", "--preset", "zeeman", "--order", "4", "--format", "latex")
    assert (r"\hat{W} &= \left(\frac{1}{2} \kappa^{-1} - \frac{1}{8} \kappa^{-3}\right)"
            r" \hat{L}_0") in text


def test_zeeman_order1_json_w_empty():
    _, text = run("run", "--preset", "zeeman", "--order", "1", "--format", "json")
    assert json.loads(text)["orders"][0]["W"]["terms"] == []


def test_json_round_trip():
    _, text = run("run", "--preset", "zeeman", "--order", "5", "--format", "json")
    data = json.loads(text)
    s = iterate(zeeman_problem(5))
    for entry in data["orders"]:
        n = entry["order"]
        assert expr_from_json(entry["A"]) == s.A(n)
        assert expr_from_json(entry["W"]) == s.W(n)
        assert expr_from_json(entry["G"]) == s.G(n)
    assert expr_from_json(data["W"]) == s.w_total()
    assert expr_from_json(data["G"]) == s.g_total()
    assert expr_from_json(data["problem"]["v"]) == s.problem.v


@pytest.mark.parametrize("fmt", ["text", "json", "latex"])
def test_deterministic(fmt):
    assert run("run", "--preset", "zeeman", "--order", "6", "--format", fmt) == \
        run("run", "--preset", "zeeman", "--order", "6", "--format", fmt)


def test_config_file(tmp_path):
    path = tmp_path / "zeeman.toml"
    path.write_text('algebra = "su2"\nv = "1/2*u*L+ , 1/2*u_conj*L-"\norder = 4\n')
    code, text = run("run", "--config", str(path), "--format", "json")
    assert code == 0
    _, preset = run("run", "--preset", "zeeman", "--order", "4", "--format", "json")
    assert json.loads(text)["W"] == json.loads(preset)["W"]


def _rows(text):
    lines = text.strip().splitlines()
    header = lines[0].split("\t")
    return [dict(zip(header, line.split("\t"))) for line in lines[1:]]


def test_spectrum_stark():
    code, text = run("spectrum", "--preset", "stark", "--order", "4", "--states", "0,1,2,3",
                     "--params", "hbar=1,m=1,omega0=1,e=1,field=0.1")
    assert code == 0
    for n, row in enumerate(_rows(text)):
        assert float(row["E"]) - float(row["E0"]) == pytest.approx(-0.005, abs=1e-12)
        assert float(row["E0"]) == n + 0.5


def test_spectrum_zeeman():
    code, text = run("spectrum", "--preset", "zeeman", "--order", "4", "--states", "1:1,1:-1",
                     "--params", "hbar=1,kappa=5,u=1,eps_R=0,alpha_r2=0")
    up, down = _rows(text)
    shift_up = float(up["E"]) - float(up["E0"])
    assert shift_up == pytest.approx(0.099, abs=1e-12)
    assert float(down["E"]) - float(down["E0"]) == pytest.approx(-shift_up, abs=1e-12)
    assert abs(shift_up - 0.0990195) < 3e-5


def test_spectrum_json():
    code, text = run("spectrum", "--preset", "zeeman", "--order", "2", "--states", "1:0",
                     "--params", "hbar=1,kappa=5,u=1,eps_R=0,alpha_r2=0", "--format", "json")
    assert json.loads(text) == [{"state": "1:0", "e0": 0.0, "corrections": [0.0, 0.0],
                                 "energy": 0.0}]


@pytest.mark.parametrize("argv", [
    ["run"],
    ["run", "--preset", "stark", "--order", "0"],
    ["run", "--config", "/nonexistent.toml"],
    ["spectrum", "--preset", "stark", "--states", "0"],
    ["spectrum", "--preset", "stark", "--params", "hbar=1"],
    ["spectrum", "--preset", "stark", "--states", "1:0", "--params",
     "hbar=1,m=1,omega0=1,e=1,field=1"],
    ["spectrum", "--preset", "zeeman", "--states", "1:1", "--params",
     "hbar=-1,kappa=1,u=1,eps_R=0,alpha_r2=0"],
])
def test_usage_errors_exit_2(argv, capsys):
    code, text = run(*argv)
    assert code == 2 and text == ""
    assert "ladderpt: error:" in capsys.readouterr().err


def test_bad_config_exit_2(tmp_path, capsys):
    path = tmp_path / "bad.toml"
    path.write_text('algebra = "su2"\nv = "1*L+"\n')
    assert run("run", "--config", str(path))[0] == 2
    assert "Hermitian" in capsys.readouterr().err


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as info:
        main(["run", "--preset", "hydrogen"])
    assert info.value.code == 2


def test_verify_passes():
    code, text = run("verify", "--samples", "200")
    assert code == 0
    assert "[FAIL]" not in text


def test_flipped_gamma_inverse_sign_is_caught(monkeypatch):
    original = superops.gamma_inverse
    monkeypatch.setattr(superops, "gamma_inverse", lambda expr, gap: -original(expr, gap))
    outcomes = {o.name: o for o in run_checks(["goldens"])}
    bad = outcomes["G_stark ∝ (a†-a)"]
    assert bad.status == FAIL
    assert "expected" in bad.detail and "but got" in bad.detail
    code, text = run("verify", "--scope", "goldens")
    assert code == 1
    assert "[FAIL] G_stark ∝ (a†-a)" in text


def test_truncation_guard_skips():
    x = op("a†")
    for _ in range(5):
        x = x * op("a†")
    res = homomorphism_check(x, op("a"), BasisSpec.hw(8))
    assert res.status == SKIP
    assert homomorphism_check(op("a"), op("a†"), BasisSpec.hw(8)).status == PASS


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ladderpt", "run", "--preset", "stark",
                           "--order", "2"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stderr == ""
    assert "W = " in proc.stdout
    proc = subprocess.run([sys.executable, "-m", "ladderpt", "run"], capture_output=True, text=True)
    assert proc.returncode == 2 and proc.stdout == ""
