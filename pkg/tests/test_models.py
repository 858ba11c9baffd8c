import numpy as np
import pytest

from matsuvdw.errors import InputError
from matsuvdw.models import (harmonic_oscillator, normal_mode_free_energy, oscillator_free_energy,
                             random_pair, random_spectrum)
from matsuvdw.polarizability import polarizability_function


def test_oscillator_free_energy_limits():
    assert oscillator_free_energy(2.0, 1e3) == pytest.approx(1.0, rel=1e-12)
    beta = 0.01
    assert oscillator_free_energy(1.0, beta) == pytest.approx(np.log(beta) / beta, rel=1e-4)


def test_normal_mode_oracle():
    # frozen: explicit ln(2 sinh) terms
    def f(w, b):
        return np.log(2 * np.sinh(b * w / 2)) / b
    w0, c, b = 1.0, 0.3, 2.0
    ref = f(np.sqrt(1.3), b) + f(np.sqrt(0.7), b) - 2 * f(1.0, b)
    assert normal_mode_free_energy(w0, c, b) == pytest.approx(ref, rel=1e-13)
    with pytest.raises(InputError):
        normal_mode_free_energy(1.0, 1.0, 1.0)


def test_harmonic_oscillator_structure():
    s = harmonic_oscillator(5, 0.5, 0.2)
    np.testing.assert_allclose(s.energies, 0.5 * np.arange(5))
    assert s.transition_weights[2, 3] == pytest.approx(3 * 0.2)
    assert s.transition_weights[0, 2] == 0.0


def test_random_spectrum_shape(rng):
    s = random_spectrum(rng, 4)
    assert s.energies[0] == 0.0
    assert np.all(np.diff(s.energies) >= 0.2)
    np.testing.assert_array_equal(np.diag(s.transition_weights), 0.0)


@pytest.mark.parametrize("stats", ["boltzmann", "fermi"])
def test_random_pair_coupling_bound(rng, stats):
    for _ in range(20):
        p = random_pair(rng, stats)
        assert max(p.static_couplings()) <= 0.1 + 1e-15
        assert p.system_a.size <= 5
        assert 0.1 <= p.beta <= 10.0


def test_random_pair_is_seeded():
    p1 = random_pair(np.random.default_rng(3), "fermi")
    p2 = random_pair(np.random.default_rng(3), "fermi")
    assert p1.psi == p2.psi
    np.testing.assert_array_equal(p1.system_a.dipole, p2.system_a.dipole)
    with pytest.raises(InputError):
        random_pair(np.random.default_rng(3), "bose")
