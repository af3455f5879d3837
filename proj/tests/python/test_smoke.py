import json
import os
import subprocess
from fractions import Fraction

import pytest

qva = pytest.importorskip("qva")


def test_eta_leading_terms():
    terms = qva.series_terms(qva.eta("4"))
    assert terms[0] == (Fraction(1, 24), "1")
    assert terms[1] == (Fraction(25, 24), "-1")


def test_char_and_mlde_round_trip():
    chars = [qva.sl2_boundary_char(3, j, flow="-1/2", trunc="10") for j in (0, 1)]
    op = json.loads(qva.mlde_fit(chars, 2, "Gamma0_2"))
    assert op["order"] == 2
    assert op["coeffs"] == [{"at": 0, "basis": "Theta(1,1)", "weight": "-1/96"}]
    for ch in chars:
        assert qva.mlde_verify(json.dumps(op), ch, "8")


def test_mlde_fit_underdetermined_raises():
    chars = [qva.sl2_boundary_char(3, j, flow="-1/2", trunc="10") for j in (0, 1)]
    with pytest.raises(qva.MathError):
        qva.mlde_fit(chars, 1, "Gamma0_2")


def test_fusion_and_zhu():
    assert qva.zhu_roots(2, 3) == ["2/3", "0", "-2/3"]
    table = json.loads(qva.fusion_table(2, 3))
    assert table["level"] == {"p": 2, "q": 3}
    vac = [e for e in table["pairs"] if e["a"] == "L(-4/3,0)" and e["b"] == "L(-4/3,-2/3)"]
    assert vac and vac[0]["result"] == ["L(-4/3,-2/3)"]


def test_singular_vectors():
    assert qva.is_singular(
        "(2/9)*e[-2] - (1/3)*e[-1]h[-1] + e[-1]e[-1]f[0]", "-4/3", "-2/3"
    )
    assert not qva.is_singular(
        "(1/9)*e[-2] - (1/3)*e[-1]h[-1] + e[-1]e[-1]f[0]", "-4/3", "-2/3"
    )
    img = qva.zhu_image(
        "9*h[-1]h[-1]h[-1] + 18*h[-2]h[-1] - 16*h[-3]"
        " + 36*f[-1]h[-1]e[-1] + 24*e[-2]f[-1] - 96*f[-2]e[-1]",
        2,
        3,
    )
    assert img == ["0", "-4", "0", "9"]


# --- command line interface ----------------------------------------------------

CLI = os.environ.get("QVA_CLI")


def run_cli(*args, stdin=None):
    return subprocess.run([CLI, *args], input=stdin, capture_output=True, text=True)


@pytest.mark.skipif(not CLI, reason="QVA_CLI not set")
def test_cli_eta_and_exit_codes():
    r = run_cli("eta", "--trunc", "3")
    assert r.returncode == 0
    data = json.loads(r.stdout)
    assert data["terms"][0] == ["1", "1"]

    # usage errors exit with 2
    assert run_cli("eta", "--trunc", "not-a-number").returncode == 2
    assert run_cli("no-such-command").returncode == 2


@pytest.mark.skipif(not CLI, reason="QVA_CLI not set")
def test_cli_zhu_and_singular_check():
    r = run_cli("zhu", "--p", "2", "--q", "3")
    assert r.returncode == 0
    assert "2/3" in r.stdout

    r = run_cli(
        "singular-check",
        "-",
        stdin="(2/9)*e[-2] - (1/3)*e[-1]h[-1] + e[-1]e[-1]f[0] |hw: level=-4/3, j=-2/3>",
    )
    assert r.returncode == 0
    assert "singular" in r.stdout


@pytest.mark.skipif(not CLI, reason="QVA_CLI not set")
def test_cli_mlde_pipeline():
    chars = [
        run_cli("char", "--family", "sl2-boundary", "--u", "3", "--j", str(j),
                "--flow", "-1/2", "--trunc", "10").stdout
        for j in (0, 1)
    ]
    with open("/tmp/qva_py_char0.json", "w") as f:
        f.write(chars[0])
    with open("/tmp/qva_py_char1.json", "w") as f:
        f.write(chars[1])
    r = run_cli("mlde-fit", "--order", "2", "--group", "gamma0-2",
                "--series", "/tmp/qva_py_char0.json", "--series", "/tmp/qva_py_char1.json")
    assert r.returncode == 0
    op = json.loads(r.stdout)
    assert op["coeffs"] == [{"at": 0, "basis": "Theta(1,1)", "weight": "-1/96"}]
