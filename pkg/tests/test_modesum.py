import math

import mpmath as mp
import numpy as np
import pytest
from scipy import integrate as sp_integrate

from plasmacyl.beyond import energy
from plasmacyl.models import Geometry, PlasmaParams
from plasmacyl.modesum import (
    SpectralRadiusError,
    TruncationSpec,
    _logdet,
    a_entry,
    energy_oracle,
    interaction_logdet,
    interaction_matrix,
    k0_diag,
)
from plasmacyl.pfa import hard_energy

GEOM = Geometry(1.0, 0.5)


def _a_entry_te_reference(m, m2, k3, geom, Omega):
    # plasma-sheet TE: cylinder factor from mpmath Bessel functions, plane integral by scipy quad;
    # I_{m'}/K_m is the diagonal T-matrix I_m/K_m up to a similarity transform
    rho, R = k3, geom.R
    x = mp.mpf(rho * R)
    k1 = mp.besselk(abs(m), x)
    r = float(mp.besseli(abs(m2), x) / k1 / (1 + 1 / (2 * Omega * R * mp.besseli(abs(m), x) * k1)))

    def f(th):
        g = rho * math.cosh(th)
        return math.cosh((m + m2) * th) * Omega / (Omega + g) * math.exp(-2 * geom.a * g)

    return r * sp_integrate.quad(f, 0, 20, epsabs=0, epsrel=1e-13, limit=400)[0]


@pytest.mark.parametrize("m,m2", [(0, 0), (2, -1), (3, 3), (-4, 1)])
def test_a_entry_vs_independent_construction(m, m2):
    params = PlasmaParams(2.0)
    Omega, _ = params.dimensional(GEOM.L)
    ref = _a_entry_te_reference(m, m2, 1.3, GEOM, Omega)
    assert a_entry("dd-te", m, m2, 0.0, 1.3, GEOM, params) == pytest.approx(ref, rel=1e-10)


@pytest.mark.parametrize("label,omega", [("dd-te", 0.0), ("dd-tm", 0.8), ("ed-tm", 0.5)])
def test_assembled_matrix_matches_entries(label, omega):
    params = PlasmaParams(2.0, 1.5)
    A = interaction_matrix(label, omega, 0.9, 4, GEOM, params)
    for i, m in enumerate(A.m[::3]):
        for j, m2 in enumerate(A.m[::4]):
            ref = a_entry(label, int(m), int(m2), omega, 0.9, GEOM, params)
            assert A.entries[3 * i, 4 * j] == pytest.approx(ref, rel=1e-9)
    assert 0 < A.spectral_radius_estimate < 1


def test_far_apart_bodies_decouple():
    A = interaction_matrix("dd-te", 0.0, 1.0, 5, Geometry(1.0, 40.0), PlasmaParams(40.0))
    assert np.max(np.abs(A.entries)) < 1e-30


def test_k0_diag_examples():
    Omega, R, rho = 3.0, 1.0, 2.0
    ik = float(mp.besseli(2, rho * R) * mp.besselk(2, rho * R))
    assert k0_diag("TE", 2, rho, R, Omega) == pytest.approx(2 * Omega / R * (1 + 2 * Omega * R * ik), rel=1e-13)
    om = 0.7
    ipkp = float(mp.diff(lambda z: mp.besseli(2, z), rho) * mp.diff(lambda z: mp.besselk(2, z), rho))
    ref = -2 * Omega / (om**2 * R) * (1 - 2 * Omega * rho**2 * R / om**2 * ipkp)
    assert k0_diag("TM", 2, rho, R, Omega, om) == pytest.approx(ref, rel=1e-12)
    with pytest.raises(ValueError):
        k0_diag("TM", 2, rho, R, Omega, 0.0)


def test_logdet_small_and_rank_one():
    v = np.array([0.3, -0.5, 0.2])
    assert _logdet(np.outer(v, v)) == pytest.approx(math.log(1 - v @ v), rel=1e-14)
    w = 1e-6 * v
    assert _logdet(np.outer(w, w)) == pytest.approx(math.log1p(-w @ w), rel=1e-12)
    with pytest.raises(SpectralRadiusError):
        _logdet(np.outer(2 * v, 2 * v) * 10)


def test_dirichlet_flag_matches_stiff_sheet():
    geom, trunc = Geometry(1.0, 0.5), TruncationSpec(convergence_tol=1e-12)
    stiff = interaction_logdet("dd-te", 0.0, 1.5, trunc, geom, PlasmaParams(1e9))
    hard = interaction_logdet("dd-te", 0.0, 1.5, trunc, geom, PlasmaParams(1e9), dirichlet=True)
    assert stiff == pytest.approx(hard, rel=1e-6)


def test_truncation_is_converged():
    params, k3 = PlasmaParams(5.0), 0.8
    base = interaction_logdet("dd-tm", 0.4, k3, TruncationSpec(convergence_tol=1e-11), GEOM, params)
    big = interaction_logdet("dd-tm", 0.4, k3, TruncationSpec(m_max=120, auto_grow=False), GEOM, params)
    assert base == pytest.approx(big, rel=1e-9)
    with pytest.raises(RuntimeError):
        interaction_logdet("dd-te", 0.0, 0.05, TruncationSpec(m_limit=3), Geometry(1.0, 0.01), PlasmaParams(5.0))


def test_tm_even_in_frequency():
    params, trunc = PlasmaParams(3.0), TruncationSpec()
    for omega, k3 in ((0.3, 0.7), (1.1, 0.2)):
        a = interaction_logdet("dd-tm", omega, k3, trunc, GEOM, params)
        b = interaction_logdet("dd-tm", -omega, k3, trunc, GEOM, params)
        assert a == pytest.approx(b, rel=1e-12)
        assert a < 0


def test_transparent_sheet_has_no_energy():
    E, diag = energy_oracle("dd-te", GEOM, PlasmaParams(0.0))
    assert E == 0.0 and diag.converged


def test_oracle_near_pfa_te():
    geom, params = Geometry(1.0, 0.1), PlasmaParams(50.0)
    E, diag = energy_oracle("dd-te", geom, params)
    assert diag.converged
    b = energy("dd-te", geom, params)
    # the remaining difference is the next order in the gap ratio
    assert E / b.E_total == pytest.approx(1.0, abs=0.01 * 0.1)
    assert E < 0 and abs(E) < abs(hard_energy(geom))


def test_validation():
    with pytest.raises(ValueError):
        TruncationSpec(grow_step=0)
    with pytest.raises(ValueError):
        TruncationSpec(convergence_tol=0.0)
    with pytest.raises(ValueError):
        interaction_logdet("dd-te", 0.0, 0.0, TruncationSpec(), GEOM, PlasmaParams(1.0))
