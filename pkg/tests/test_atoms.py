import pytest

from matsuvdw.atoms import alpha_from_susceptibility, lj_contact_energy, vdw_contact_energy
from matsuvdw.constants import DEFAULT_CONSTANTS
from matsuvdw.errors import InputError


def test_vdw_default():
    assert vdw_contact_energy() * 1e3 == pytest.approx(-45.0, abs=1e-9)


def test_vdw_scaling():
    assert vdw_contact_energy(r_over_sigma=2.0) == pytest.approx(vdw_contact_energy() / 64)
    assert vdw_contact_energy(0.0) == 0.0
    with pytest.raises(InputError):
        vdw_contact_energy(r_over_sigma=0.0)


def test_susceptibility():
    assert alpha_from_susceptibility() == pytest.approx(0.199, abs=1e-3)
    assert alpha_from_susceptibility(0.0, 0.4) == 0.0
    assert alpha_from_susceptibility(1.0, 0.8) == pytest.approx(alpha_from_susceptibility() / 2)
    with pytest.raises(InputError):
        alpha_from_susceptibility(1.0, 0.0)


def test_lennard_jones():
    assert lj_contact_energy() * 1e3 == pytest.approx(-42.0, abs=1.0)
    assert lj_contact_energy(ratio=0.0) == 0.0
    assert lj_contact_energy(302.0) == pytest.approx(2 * lj_contact_energy(151.0))
    # the rounded k_B in eV gives the same answer to 0.3 meV
    assert lj_contact_energy() * 1e3 == pytest.approx(-4 * 0.8 * 8.63e-5 * 151 * 1e3, abs=0.3)
    with pytest.raises(InputError):
        lj_contact_energy(0.0)
    stiff = DEFAULT_CONSTANTS.replace(boltzmann=2 * DEFAULT_CONSTANTS.boltzmann)
    assert lj_contact_energy(constants=stiff) == pytest.approx(2 * lj_contact_energy())


def test_routes_agree_within_fifteen_percent():
    v = vdw_contact_energy(alpha_from_susceptibility())
    lj = lj_contact_energy()
    assert abs(v - lj) / abs(lj) < 0.15
