import numpy as np
import pytest

from matsuvdw.errors import InputError, ResonanceError, TrackingError
from matsuvdw.models import random_spectrum, two_level
from matsuvdw.pair_free_energy import PairCoupling, free_energy_closed
from matsuvdw.perturbation import (diagonalization_oracle, oracle_coupling, second_order_shift,
                                   second_order_shift_fermi, shift_table, thermal_free_energy)
from matsuvdw.spectrum import SpectrumModel, ThermalState
from matsuvdw.validation import nondegenerate_pair


def test_two_level_closed_form(pair_two_level):
    a, b = pair_two_level
    assert second_order_shift(a, b, 0.3, 0, 0) == pytest.approx(-0.09 * 0.15 / 3.0, rel=1e-15)
    assert second_order_shift(a, b, 0.0, 1, 1) == 0.0


def test_ground_state_is_lowered(rng):
    for _ in range(10):
        a, b = random_spectrum(rng, 4), random_spectrum(rng, 3)
        assert second_order_shift(a, b, 0.1, 0, 0) < 0


def test_table_matches_single_shifts(random_four):
    a, b = random_four
    table = shift_table(a, b, 0.2)
    for n in range(4):
        for l in range(4):
            assert table[n, l] == pytest.approx(second_order_shift(a, b, 0.2, n, l), rel=1e-12)


def test_fermi_shift_limits(random_four):
    a, b = random_four
    ones = (np.ones(4), np.ones(4))
    assert second_order_shift_fermi(a, b, 0.1, 1, 2, ones) == pytest.approx(
        second_order_shift(a, b, 0.1, 1, 2), rel=1e-14)
    zeros = (np.zeros(4), np.zeros(4))
    assert second_order_shift_fermi(a, b, 0.1, 1, 2, zeros) == 0.0


def test_resonance_reported():
    # E_2 - E_0 of a equals E_1 - E_0 of b in reverse: W_a(2,1) + W_b(0,1) = 0
    a = SpectrumModel.from_dipole([0.0, 1.0, 2.0], [[0, 0.5, 0], [0.5, 0, 0.4], [0, 0.4, 0]])
    b = SpectrumModel.from_dipole([0.0, 1.0], [[0, 0.6], [0.6, 0]])
    with pytest.raises(ResonanceError) as info:
        second_order_shift(a, b, 0.1, 1, 1)
    assert len(info.value.quadruple) == 4
    with pytest.raises(ResonanceError):
        shift_table(a, b, 0.1)


def test_thermal_ground_state_limit(random_four):
    a, b = random_four
    assert thermal_free_energy(a, b, 0.1, 1e4) == pytest.approx(
        second_order_shift(a, b, 0.1, 0, 0), rel=1e-12)


def test_thermal_matches_closed(random_four):
    a, b = random_four
    p = PairCoupling(0.05, a, b, ThermalState(0.6))
    assert thermal_free_energy(a, b, 0.05, 0.6) == pytest.approx(free_energy_closed(p), rel=1e-10)


def test_index_checks(random_four):
    a, b = random_four
    with pytest.raises(IndexError):
        second_order_shift(a, b, 0.1, 4, 0)
    with pytest.raises(InputError):
        shift_table(a, b, 0.1, vacancies=(np.ones(3), np.ones(4)))


def test_oracle_two_level(pair_two_level):
    a, b = pair_two_level
    res = diagonalization_oracle(a, b)
    assert res.coefficients[0, 0] == pytest.approx(-0.15 / 3.0, rel=1e-8)
    assert res.richardson_change < 1e-6


def test_oracle_independent_of_coupling(pair_two_level):
    a, b = pair_two_level
    psi = oracle_coupling(a, b)
    c1 = diagonalization_oracle(a, b, psi).coefficients
    c2 = diagonalization_oracle(a, b, 0.5 * psi).coefficients
    np.testing.assert_allclose(c1, c2, rtol=1e-8)


def test_oracle_random_three_level(rng):
    a, b = nondegenerate_pair(rng)
    res = diagonalization_oracle(a, b)
    np.testing.assert_allclose(res.coefficients, shift_table(a, b, 1.0), rtol=1e-6)


def test_oracle_rejects_degenerate_and_large():
    s = two_level(1.0, 0.5)
    with pytest.raises(TrackingError):
        diagonalization_oracle(s, s)
    big = SpectrumModel(np.arange(21.0), np.zeros((21, 21)))
    with pytest.raises(InputError):
        diagonalization_oracle(big, big)


def test_oracle_tracking_failure(pair_two_level):
    a, b = pair_two_level
    with pytest.raises(TrackingError):
        diagonalization_oracle(a, b, psi_small=50.0)
