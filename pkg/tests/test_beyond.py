import math

import numpy as np
import pytest
from scipy import integrate as sp_integrate

from plasmacyl.beyond import (
    F1,
    chain_coefficients,
    energy,
    f1_dd_closed,
    f1_integrand,
    f1_series,
    f1_small_limit,
    g_dd_normalized,
    tau_reduce,
)
from plasmacyl.chain import EVEN_MONOMIALS, ODD_MONOMIALS
from plasmacyl.coefficients import a_coeff
from plasmacyl.models import Geometry, PlasmaParams
from plasmacyl.pfa import f0, hard_energy


def test_tau_reduce_known_averages():
    # <tau^2> over the angles is 1/3, <tau^4> is 1/5
    assert tau_reduce(1, lambda y: np.ones_like(y)) == pytest.approx(1 / 3, rel=1e-13)
    assert tau_reduce(2, lambda y: np.ones_like(y)) == pytest.approx(1 / 5, rel=1e-13)
    f = lambda y: np.exp(-y)
    ref = math.gamma(1.5) / (math.sqrt(math.pi) * math.gamma(2)) * sp_integrate.quad(
        lambda y: (1 - y * y) * math.exp(-y), 0, 1)[0]
    assert tau_reduce(1, f) == pytest.approx(ref, rel=1e-12)
    with pytest.raises(ValueError):
        tau_reduce(-1, f)


def test_hard_constants():
    assert F1.f1h_TE == pytest.approx(7 / 36)
    assert F1.f1h_TM == pytest.approx(7 / 36 - 40 / (3 * math.pi**2))
    assert F1.f1h("tm") == F1.f1h_TM


@pytest.mark.parametrize("label", ["dd-te", "ed-tm"])
def test_chain_coefficients_rebuild_elements(label):
    p = PlasmaParams(1.3, 0.8)
    t, y = 0.9, 0.45
    alpha, b0, b1 = chain_coefficients(label, t, y, p)
    rng = np.random.default_rng(3)
    for n, n2 in rng.normal(size=(5, 2)):
        tau = rng.uniform(-1, 1)
        half = tau * sum(c * n**i * n2**j for c, (i, j) in zip(alpha, ODD_MONOMIALS))
        one = sum((c0 + tau * tau * c1) * n**i * n2**j for c0, c1, (i, j) in zip(b0, b1, EVEN_MONOMIALS))
        assert half == pytest.approx(a_coeff(label, "half", n, n2, t, tau, y, p), rel=1e-10, abs=1e-12)
        assert one == pytest.approx(a_coeff(label, "one", n, n2, t, tau, y, p), rel=1e-10, abs=1e-12)


@pytest.mark.parametrize("mode,label,y", [("TE", "dd-te", 0.5), ("TM", "dd-tm", 0.3), ("TM", "dd-tm", 0.9)])
def test_generic_integrand_matches_closed_form(mode, label, y):
    p = PlasmaParams(0.7)
    t = np.array([0.05, 0.4, 2.0, 7.0])
    gen = f1_integrand(label, t, y, p)
    ref = g_dd_normalized(mode, t, y, 0.7)
    np.testing.assert_allclose(gen, ref, rtol=1e-9)


def test_integrand_routes_agree():
    p = PlasmaParams(2.0)
    t = np.array([0.01, 0.3, 3.0])
    a = f1_integrand("dd-te", t, 0.5, p, method="series")
    b = f1_integrand("dd-te", t, 0.5, p, method="resummed")
    np.testing.assert_allclose(a, b, rtol=1e-9)


@pytest.mark.parametrize("W,te,tm", [(0.1, 0.029681, 0.285357), (1.0, 0.273424, 0.677310),
                                      (10.0, 0.785873, 0.942425)])
def test_reference_values(W, te, tm):
    assert f1_dd_closed("TE", W).value == pytest.approx(te, abs=6e-7)
    assert f1_dd_closed("TM", W).value == pytest.approx(tm, abs=6e-7)


def test_series_route_te():
    for W in (0.1, 10.0):
        v, err = f1_series("dd-te", PlasmaParams(W))
        assert v == pytest.approx(f1_dd_closed("TE", W).value, rel=1e-9)
        assert err < 1e-8


def test_small_and_hard_limits():
    # TM reaches its printed small-Omega_L form; the TE ratio settles near 0.794, not 1
    assert f1_dd_closed("TM", 1e-7).value / f1_small_limit("TM", 1e-7) == pytest.approx(1, abs=0.01)
    r = [f1_dd_closed("TE", W).value / f1_small_limit("TE", W) for W in (1e-5, 1e-6, 1e-7)]
    assert (r[1] - r[0]) / (r[2] - r[1]) == pytest.approx(math.sqrt(10), rel=0.15)
    assert r[2] == pytest.approx(0.794, abs=0.002)
    assert f1_dd_closed("TE", 1e5).value == pytest.approx(1, abs=0.01)
    assert f1_dd_closed("TM", 1e5).value == pytest.approx(1, abs=0.01)


def test_energy_breakdown():
    g, p = Geometry(1.0, 0.1), PlasmaParams(3.0)
    e = energy("dd-te", g, p)
    assert e.f0 == pytest.approx(f0("dd-te", p)[0])
    assert e.f1 == pytest.approx(f1_dd_closed("TE", 3.0).value, rel=1e-9)
    assert e.E_pfa == pytest.approx(hard_energy(g) * e.f0)
    assert e.E_total == pytest.approx(hard_energy(g) * (e.f0 + 0.1 * F1.f1h_TE * e.f1))
    assert e.E_total < e.E_pfa < 0


def test_validation():
    with pytest.raises(ValueError):
        f1_series("ed-te", PlasmaParams(1.0, 0.0))
    with pytest.raises(ValueError):
        f1_dd_closed("XX", 1.0)
