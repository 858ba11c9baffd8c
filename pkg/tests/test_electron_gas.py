import math

import numpy as np
import pytest

from matsuvdw.constants import DEFAULT_CONSTANTS, ev_to_joule
from matsuvdw.electron_gas import (C1_DEFAULT, ElectronGasParams, c2_from_c1,
                                   consistency_derivative_check, correlation_closed,
                                   correlation_energy, correlation_quadrature, cutoff_u0,
                                   density_from_rs, derive_basics, equal_time_structure_factor,
                                   exchange_energy_closed, exchange_energy_quadrature,
                                   mode_free_energy, mode_free_energy_quadrature, rs_from_density,
                                   spectral_distribution, sphere_overlap_fraction, sweep_rs)
from matsuvdw.errors import InputError

CU = ElectronGasParams(density=8.5e28)
RS1 = ElectronGasParams(r_s=1.0)


def test_params_validation():
    with pytest.raises(InputError):
        ElectronGasParams()
    with pytest.raises(InputError):
        ElectronGasParams(density=1e28, r_s=1.0)
    with pytest.raises(InputError):
        ElectronGasParams(density=-1.0)
    with pytest.raises(InputError):
        ElectronGasParams(r_s=1.0, g=0)


def test_basics_copper():
    k_f, hwp, mu = derive_basics(CU)
    assert hwp == pytest.approx(10.82, abs=0.01)
    assert mu == pytest.approx(7.04, abs=0.01)


def test_basics_rs1():
    assert RS1.rho == pytest.approx(1.61e30, rel=2e-3)
    _, hwp, mu = derive_basics(RS1)
    assert hwp == pytest.approx(47.1, abs=0.05)
    assert mu == pytest.approx(50.1, abs=0.05)


def test_density_power_laws():
    k1, w1, m1 = derive_basics(ElectronGasParams(density=1e28))
    k8, w8, m8 = derive_basics(ElectronGasParams(density=8e28))
    assert k8 / k1 == pytest.approx(2.0, rel=1e-13)
    assert m8 / m1 == pytest.approx(4.0, rel=1e-13)
    assert density_from_rs(2.0) == pytest.approx(density_from_rs(1.0) / 8, rel=1e-14)
    for rs in (0.3, 1.0, 7.5):
        assert rs_from_density(density_from_rs(rs)) == pytest.approx(rs, rel=1e-12)


def test_structure_factor_values():
    assert equal_time_structure_factor(2.0) == pytest.approx(1.0, abs=1e-15)
    assert equal_time_structure_factor(3.0) == 1.0
    assert equal_time_structure_factor(1.0) == pytest.approx(0.6875, abs=1e-15)
    assert equal_time_structure_factor(1e-6) == pytest.approx(0.75e-6, rel=1e-9)
    with pytest.raises(InputError):
        equal_time_structure_factor(-0.1)


@pytest.mark.parametrize("u", [0.5, 1.0, 1.5])
def test_sphere_overlap_monte_carlo(u):
    rng = np.random.default_rng(11)
    n = 2_000_000
    pts = rng.uniform(-1.0, 1.0, size=(n, 3))
    inside = pts[np.einsum("ij,ij->i", pts, pts) <= 1.0]
    shifted = inside - np.array([u, 0.0, 0.0])
    frac = np.mean(np.einsum("ij,ij->i", shifted, shifted) <= 1.0)
    assert sphere_overlap_fraction(u) == pytest.approx(frac, abs=1e-3)


def test_exchange_closed_values():
    assert exchange_energy_closed(10.82, 7.04) == pytest.approx(-4.68, abs=0.01)
    assert exchange_energy_closed(0.0, 7.04) == 0.0
    r = correlation_energy(RS1)
    assert r.f_ex == pytest.approx(-9 * r.hbar_omega_p ** 2 / (32 * r.mu), rel=1e-15)


@pytest.mark.parametrize("params", [CU, RS1])
def test_exchange_quadrature_matches_closed(params):
    _, hwp, mu = derive_basics(params)
    assert exchange_energy_quadrature(params) == pytest.approx(
        exchange_energy_closed(hwp, mu), rel=1e-6)


def test_exchange_scales_as_cube_root_density():
    lo = exchange_energy_quadrature(ElectronGasParams(density=1e28))
    hi = exchange_energy_quadrature(ElectronGasParams(density=1e29))
    assert hi / lo == pytest.approx(10 ** (1 / 3), rel=1e-10)


def test_reduced_coupling_constant():
    # 2 rho (3/4) u / (c1 mu u) * q^2 / (eps0 k^2) must equal (alpha/u)^2
    c = DEFAULT_CONSTANTS
    k_f, hwp, mu = derive_basics(CU)
    alpha = c2_from_c1(C1_DEFAULT) * hwp / mu
    for u in (0.1, 0.7, 1.2):
        lhs = (2 * CU.rho * 0.75 * u / (C1_DEFAULT * ev_to_joule(mu) * u)
               * c.elementary_charge ** 2 / (c.vacuum_permittivity * (u * k_f) ** 2))
        assert lhs == pytest.approx((alpha / u) ** 2, rel=1e-12)
        # the same constant written with the plasmon quantum
        assert 3 * hwp ** 2 / (4 * C1_DEFAULT * mu ** 2 * u ** 2) == pytest.approx(lhs, rel=1e-12)


def test_mode_free_energy_limits():
    assert mode_free_energy(1.0, 1e-3, 1.0) == pytest.approx(
        -C1_DEFAULT / 16 * 1e-12, rel=1e-5)
    a = 1e4
    big = mode_free_energy(1.0, a, 2.0)
    assert big == pytest.approx(0.5 * C1_DEFAULT * 2.0 * (a - 0.5 * a * a), rel=1e-3)
    assert np.all(mode_free_energy(np.linspace(0.01, 3, 50), 1.3, 1.0) <= 0)
    with pytest.raises(InputError):
        mode_free_energy(0.0, 1.0, 1.0)


def test_mode_free_energy_frequency_quadrature():
    # frozen: 30-digit frequency integral at u = alpha = mu = 1
    assert mode_free_energy(1.0, 1.0, 1.0) == pytest.approx(-0.038364861216261044, rel=1e-12)
    for u, alpha in [(1.0, 1.0), (0.2, 1.4), (1.3, 0.3)]:
        assert mode_free_energy_quadrature(u, alpha, 1.0) == pytest.approx(
            mode_free_energy(u, alpha, 1.0), rel=1e-8)


def test_cutoff():
    assert cutoff_u0(2) == pytest.approx(1.3466, abs=1e-4)
    assert cutoff_u0(1) == pytest.approx(cutoff_u0(2) / 2 ** (1 / 3), rel=1e-14)
    assert cutoff_u0(2) ** 3 == pytest.approx(2 / (0.8944272 * 0.9157), rel=1e-4)


def test_copper_report():
    r = correlation_energy(CU)
    assert r.x0 == pytest.approx(0.957, abs=1e-3)
    assert r.f_c == pytest.approx(-1.4, abs=0.05)
    assert r.kinetic_ref == pytest.approx(4.22, abs=0.01)
    assert r.f_ex < 0 and r.f_c < 0


def test_rs1_report():
    r = correlation_energy(RS1)
    assert r.x0 == pytest.approx(1.564, abs=1e-3)
    # independent 30-digit quadrature of the mode sum, frozen
    assert r.f_c == pytest.approx(-2.2701135821003695, rel=1e-12)
    assert r.f_c < correlation_energy(CU).f_c


def test_closed_matches_quadrature_across_densities():
    for r in sweep_rs(0.5, 20.0, 20):
        assert r.f_c == pytest.approx(r.f_c_quadrature, rel=1e-8)


def test_plasma_identity():
    for rs in (0.5, 2.0, 9.0):
        r = correlation_energy(ElectronGasParams(r_s=rs))
        lhs = C1_DEFAULT * r.mu * r.alpha ** 4 * r.x0 ** 3
        assert lhs == pytest.approx(2 * r.hbar_omega_p, rel=1e-12)


def test_low_density_growth_relative_to_plasmon():
    ratios = [correlation_closed(1.0, x) / -0.5 for x in (2.0, 1.0, 0.5, 0.25)]
    assert all(b > a for a, b in zip(ratios, ratios[1:]))


@pytest.mark.parametrize("params", [CU, RS1])
def test_derivative_check(params):
    r = correlation_energy(params)
    assert consistency_derivative_check(r.alpha, r.mu) < 1e-6


def test_c1_knob_keeps_consistency():
    p = ElectronGasParams(r_s=2.0, c1=4.0 / 3.0)
    r = correlation_energy(p)
    assert r.f_c == pytest.approx(r.f_c_quadrature, rel=1e-8)
    assert r.u0 == pytest.approx(cutoff_u0(2, 4.0 / 3.0))
    assert consistency_derivative_check(r.alpha, r.mu, c1=4.0 / 3.0) < 1e-6


def test_spectral_distribution():
    from scipy.integrate import quad
    r = correlation_energy(CU)
    half_u, eps = spectral_distribution(CU, np.linspace(0.01, r.u0, 30))
    assert np.all(eps <= 0)
    np.testing.assert_allclose(half_u[-1], r.u0 / 2)
    total, _ = quad(lambda h: float(spectral_distribution(CU, [2 * h])[1][0]), 0, r.u0 / 2,
                    epsrel=1e-12)
    assert total == pytest.approx(r.f_c, rel=1e-9)
    small = spectral_distribution(CU, [1e-4, 2e-4])[1]
    assert small[1] / small[0] == pytest.approx(2.0, rel=1e-3)
    with pytest.raises(InputError):
        spectral_distribution(CU, [r.u0 * 1.1])


def test_correlation_quadrature_direct():
    r = correlation_energy(CU)
    assert correlation_quadrature(r.alpha, r.mu, r.u0) == pytest.approx(r.f_c, rel=1e-10)
    with pytest.raises(InputError):
        correlation_closed(1.0, 0.0)
