import json
import subprocess
import sys

import pytest

from qknot.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_jones_formats(capsys):
    code, out, _ = run(capsys, "jones", "--n", "2", "--format", "json")
    assert code == 0
    assert json.loads(out)["values"][0]["J"].startswith("-q^8")
    code, out, _ = run(capsys, "jones", "--n", "1", "--nmax", "3", "--format", "tsv")
    lines = out.strip().split("\n")
    assert lines[0].split("\t") == ["n", "ldeg", "deg", "J"]
    assert [l.split("\t")[2] for l in lines[1:]] == ["0", "8", "23"]


def test_degrees_plot(capsys, tmp_path):
    fig = tmp_path / "deg.png"
    code, out, _ = run(capsys, "degrees", "--nmax", "6", "--plot", str(fig), "--format", "tsv")
    assert code == 0 and fig.stat().st_size > 1000
    assert out.splitlines()[1].split("\t")[:3] == ["2", "8", "8"]


def test_newton_plot(capsys, tmp_path):
    fig = tmp_path / "newton.svg"
    op = "(q-1)^2*L^5 + ((q-1)*(M*q-1))^-1*L^3 + L^2 + (q-1)^-1*L + 1"
    code, out, _ = run(capsys, "newton", "--operator", op, "--plot", str(fig), "--format", "json")
    assert code == 0 and fig.exists()
    assert json.loads(out)["hull"] == [[0, 0], [1, -1], [3, -1], [5, 2]]


def test_extpow_and_assoc(capsys):
    code, out, _ = run(capsys, "extpow", "--operator", "L^2 + (q*M-1)*L + q^3*M^2", "--k", "2")
    assert code == 0 and "q^3*M^2" in out
    code, out, _ = run(capsys, "assoc", "--operator", "L^3 + M*L + 1", "--k", "2", "--j", "2")
    assert code == 0


def test_qhyper(capsys):
    code, out, _ = run(capsys, "qhyper", "--operator", "L - q*M", "--format", "json")
    rep = json.loads(out)
    assert code == 0 and rep["factors"] == ["L - q*M"] and rep["complete"]
    code, out, _ = run(capsys, "qhyper", "--table2", "wedge2", "--format", "json")
    assert json.loads(out)["candidates"] == 4504


def test_plethysm(capsys):
    code, out, _ = run(capsys, "plethysm", "--d", "5", "--k", "3", "--format", "tsv")
    assert code == 0 and out.splitlines()[-1].split("\t") == ["10", "e5^6"]


def test_guess(capsys, tmp_path):
    data = tmp_path / "seq.json"
    data.write_text(json.dumps([f"q^{n}" for n in range(12)]))
    code, out, _ = run(capsys, "guess", "--data", str(data), "--order", "1", "--degm", "0", "--format", "json")
    assert code == 0 and json.loads(out)["P"] == {"op": [[0, "-q"], [1, "1"]]}


def test_irreducible_exit_codes(capsys):
    code, out, _ = run(capsys, "irreducible", "--operator", "L^2 + q*M*L + 1", "--format", "json")
    assert code == 0 and json.loads(out)["verdict"] == "IrreducibleProved"
    code, out, _ = run(capsys, "irreducible", "--operator", "p74", "--budget", "20000", "--format", "json")
    assert code == 3 and json.loads(out)["verdict"] == "Inconclusive"


def test_parse_error_exit(capsys):
    code, _, err = run(capsys, "newton", "--operator", "L*M")
    assert code == 2 and "error" in err


def test_verify_appendix_cli(capsys):
    code, out, _ = run(capsys, "verify-appendix", "--nmax", "3", "--degree-nmax", "5", "--format", "json")
    rep = json.loads(out)
    assert code == 0 and rep["checks"]["palindromy"] and not rep["checks"]["recurrence"]


def test_console_script(tmp_path):
    r = subprocess.run([sys.executable, "-m", "qknot.cli", "jones", "--n", "1"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip().endswith("1")
