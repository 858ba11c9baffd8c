import csv
import math
import io
import json
import subprocess
import sys

import pytest

from matsuvdw.cli import main
from matsuvdw.models import two_level
from matsuvdw.spectrum import ThermalState, save_spectrum


def run(argv):
    out = io.StringIO()
    code = main(argv, out=out)
    return code, out.getvalue()


def _numbers_have_units(obj):
    if isinstance(obj, dict):
        if set(obj) == {"value", "unit"}:
            return isinstance(obj["unit"], str)
        return all(_numbers_have_units(v) for v in obj.values())
    if isinstance(obj, list):
        return all(_numbers_have_units(v) for v in obj)
    return not isinstance(obj, (int, float)) or isinstance(obj, bool)


@pytest.fixture
def spectra(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    save_spectrum(a, two_level(1.0, 0.5), ThermalState(2.0))
    save_spectrum(b, two_level(1.5, 0.3))
    return str(a), str(b)


def test_electron_gas_copper():
    code, out = run(["electron-gas", "--density", "8.5e28"])
    assert code == 0
    rep = json.loads(out)
    assert rep["f_c"]["unit"] == "eV"
    assert rep["f_c"]["value"] == pytest.approx(-1.4, abs=0.05)
    assert _numbers_have_units(rep)


def test_electron_gas_sweep_csv(tmp_path):
    path = tmp_path / "sweep.csv"
    code, out = run(["electron-gas", "--sweep", "rs:1:4:3", "--csv", str(path)])
    assert code == 0
    rows = list(csv.reader(path.open()))
    assert rows[0][0] == "density" and len(rows) == 4
    assert len(json.loads(out)["sweep"]) == 3


def test_electron_gas_spectral_csv(tmp_path):
    path = tmp_path / "eps.csv"
    code, _ = run(["electron-gas", "--rs", "4", "--spectral-points", "5", "--csv", str(path)])
    assert code == 0
    rows = list(csv.reader(path.open()))
    assert rows[0] == ["u_half", "eps_c"] and len(rows) == 6


def test_electron_gas_input_errors():
    assert run(["electron-gas"])[0] == 1
    assert run(["electron-gas", "--density", "1e28", "--rs", "1"])[0] == 1
    assert run(["electron-gas", "--sweep", "density:1:2:3"])[0] == 1
    assert run(["electron-gas", "--density", "-5"])[0] == 1


def test_validate_is_deterministic():
    argv = ["validate", "--instances", "15", "--seed", "7", "--oracle-instances", "5"]
    code1, out1 = run(argv)
    code2, out2 = run(argv)
    assert code1 == 0
    assert out1 == out2
    rep = json.loads(out1)
    assert "PCG64" in rep["prng"]
    assert all(c["result"] == "PASS" for c in rep["checks"])
    assert _numbers_have_units(rep)


def test_validate_failure_exit_code():
    code, out = run(["validate", "--instances", "3", "--tolerance", "1e-30",
                     "--oracle-instances", "0"])
    assert code == 2
    assert json.loads(out)["passed"] is False


def test_pair_free_energy(spectra):
    code, out = run(["pair-free-energy", *spectra, "--psi", "0.01"])
    assert code == 0
    rep = json.loads(out)
    vals = rep["free_energy"]
    assert set(vals) == {"closed", "matsubara_second_order", "matsubara_log"}
    assert rep["relative_deviation"]["closed-matsubara_second_order"]["value"] < 1e-10
    assert _numbers_have_units(rep)


def test_pair_free_energy_numerical_failure(spectra):
    assert run(["pair-free-energy", *spectra, "--psi", "10"])[0] == 2


def test_pair_free_energy_fermi_flags(spectra):
    code, out = run(["pair-free-energy", *spectra, "--psi", "0.01", "--beta", "1.5",
                     "--zeta", "2", "--no-log"])
    assert code == 0
    assert json.loads(out)["statistics"] == "fermi"


def test_missing_temperature(tmp_path):
    a = tmp_path / "a.json"
    save_spectrum(a, two_level(1.0, 0.5))
    assert run(["pair-free-energy", str(a), str(a), "--psi", "0.1"])[0] == 1
    assert run(["pair-free-energy", str(a), str(a), "--psi", "0.1", "--zero-temperature"])[0] == 0


def test_polarizability_csv(spectra, tmp_path):
    path = tmp_path / "alpha.csv"
    code, out = run(["polarizability", spectra[0], "--k-grid", "0:5:6", "--csv", str(path)])
    assert code == 0
    rows = list(csv.reader(path.open()))
    assert rows[0] == ["K", "alpha"] and len(rows) == 7
    # two-level alpha(0) = (2 M / W) tanh(beta W / 2)
    assert float(rows[1][1]) == pytest.approx(math.tanh(1.0), rel=1e-12)


def test_polarizability_matsubara_grid(spectra):
    code, out = run(["polarizability", spectra[0], "--matsubara", "3"])
    assert code == 0
    assert len(json.loads(out)["points"]) == 4


def test_atoms_defaults_and_pretty():
    code, out = run(["atoms-estimate"])
    rep = json.loads(out)
    assert rep["vdw_contact_energy"]["value"] == pytest.approx(-45.0, abs=1.0)
    assert rep["lj_contact_energy"]["value"] == pytest.approx(-42.0, abs=1.0)
    code, out = run(["atoms-estimate", "--from-susceptibility", "1.0", "0.4", "--pretty"])
    assert code == 0
    assert "vdw_contact_energy" in out and "meV" in out


def test_usage_errors_exit_1(capsys):
    assert run(["no-such-command"])[0] == 1
    assert run(["electron-gas", "--nope"])[0] == 1
    assert run([])[0] == 1
    assert run(["polarizability", "/nonexistent.json", "--beta", "1"])[0] == 1


def test_help_exits_zero(capsys):
    assert run(["--help"])[0] == 0


def test_constants_env(tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"boltzmann": 2.76e-23}))
    env = {"MATSUVDW_CONSTANTS": str(path), "PATH": ""}
    out = subprocess.run([sys.executable, "-m", "matsuvdw", "atoms-estimate"], env=env,
                         capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)["lj_contact_energy"]["value"] == pytest.approx(-83.25, abs=0.1)
