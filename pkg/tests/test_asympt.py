import math

import mpmath as mp
import numpy as np
import pytest
from scipy import integrate as sp_integrate
from scipy.special import kv

from plasmacyl.asympt import (
    compose_coefficients,
    ktilde_exact,
    ktilde_ratio_asympt,
    ktilde_ratio_exact,
    r_cyl_exact,
    r_cyl_ratio_asympt,
    r_cyl_ratio_exact,
    saddle_point,
)
from plasmacyl.coefficients import a_coeff
from plasmacyl.models import BoundaryKind, PlasmaParams, dtilde
from plasmacyl.specfun import QuadSpec


@pytest.mark.parametrize("label", ["dd-te", "dd-tm", "ed-te", "ed-tm"])
def test_printed_coefficients_match_composition(label):
    rng = np.random.default_rng(11)
    for _ in range(40):
        n, n2 = rng.normal(size=2)
        t, tau, y = rng.uniform(0.1, 5), rng.uniform(-0.9, 0.9), rng.uniform(0.05, 1)
        p = PlasmaParams(rng.uniform(0.1, 10), rng.uniform(0.1, 10))
        ch, c1 = compose_coefficients(label, n, n2, t, tau, y, p)
        assert a_coeff(label, "half", n, n2, t, tau, y, p) == pytest.approx(ch, rel=1e-12, abs=1e-12)
        assert a_coeff(label, "one", n, n2, t, tau, y, p) == pytest.approx(c1, rel=1e-12, abs=1e-12)


def _ktilde_quad(kind, mu, a, rho, omega, Omega, omega_p):
    def f(th):
        g = rho * math.cosh(th)
        return math.cosh(mu * th) * 2 * g * dtilde(kind, omega, g, Omega, omega_p) * math.exp(-2 * a * g)

    return sp_integrate.quad(f, 0, 12, epsabs=0, epsrel=1e-13, limit=400)[0]


@pytest.mark.parametrize("kind", list(BoundaryKind))
def test_ktilde_exact_vs_scipy(kind):
    a, rho, Omega, omega_p = 1.2, 3 / 1.2, 3 / 1.2, 2.0
    omega = 0.7 * rho
    for mu in (0, 1, 4):
        ref = _ktilde_quad(kind, mu, a, rho, omega, Omega, omega_p)
        assert ktilde_exact(kind, mu, a, rho, omega, Omega, omega_p) == pytest.approx(ref, rel=1e-11)


def test_ktilde_hard_is_bessel_k():
    for mu in (0, 3, 40):
        for arho in (0.5, 3.0, 20.0):
            a = 1.1
            v = ktilde_exact(BoundaryKind.DeltaTE, mu, a, arho / a)
            assert v == pytest.approx(kv(mu, 2 * arho), rel=1e-13)


def test_ktilde_vector_and_log():
    mus = np.arange(0, 30)
    lk, sign = ktilde_exact(BoundaryKind.DeltaTM, mus, 1.1, 2.0, 0.5, 4.0, log=True)
    assert sign == -1
    direct = [ktilde_exact(BoundaryKind.DeltaTM, int(m), 1.1, 2.0, 0.5, 4.0) for m in (0, 7, 29)]
    np.testing.assert_allclose(-np.exp(lk[[0, 7, 29]]), direct, rtol=1e-12)
    _, err = ktilde_exact(BoundaryKind.DeltaTE, 2, 1.1, 2.0, 0.0, 4.0, return_error=True, spec=QuadSpec(rel_tol=1e-12))
    assert err <= 1e-12


def test_dirichlet_deviation_is_first_order_in_inverse_omega():
    a, rho, mu = 1.1, 3 / 1.1, 1
    kd = kv(mu, 2 * a * rho)
    dev = [abs(ktilde_exact(BoundaryKind.DeltaTE, mu, a, rho, 0.0, W) / kd - 1) for W in (1e6, 1e7, 1e8)]
    assert dev[0] / dev[1] == pytest.approx(10, rel=0.01)
    assert dev[1] / dev[2] == pytest.approx(10, rel=0.01)


def test_r_cyl_exact_te_tm():
    m, m2, rho, R, Omega, omega = 2, -1, 3.0, 1.0, 5.0, 1.2
    x = rho * R
    i, k = (lambda n: float(mp.besseli(n, x))), (lambda n: float(mp.besselk(n, x)))
    ip = lambda n: float(mp.diff(lambda z: mp.besseli(n, z), x))
    kp = lambda n: float(mp.diff(lambda z: mp.besselk(n, z), x))
    te = i(1) / k(2) / (1 + 1 / (2 * Omega * R * i(2) * k(2)))
    assert r_cyl_exact(BoundaryKind.DeltaTE, m, m2, rho, R, Omega) == pytest.approx(te, rel=1e-12)
    tm = ip(1) / kp(2) / (1 - omega**2 / (2 * Omega * R * rho**2 * ip(2) * kp(2)))
    assert r_cyl_exact(BoundaryKind.DeltaTM, m, m2, rho, R, Omega, omega) == pytest.approx(tm, rel=1e-12)


def test_saddle_point_reproduces_bessel_k():
    # int_0^inf cosh(nu th) e^{-lam cosh th} = K_nu(lam); the full-line form gives 2 K_nu
    for nu, lam in ((0.0, 200.0), (2.0, 80.0)):
        res = saddle_point(lambda th: math.cosh(nu * th), math.cosh, lam, 0.0)
        exact = 2 * kv(nu, lam)
        assert res.value == pytest.approx(exact, rel=5 / lam**2)
        # the neglected term is the next Debye term -(4 nu^2 - 1)(4 nu^2 - 9)/(128 lam^2)
        resid = res.value / exact - 1
        assert resid == pytest.approx(-(4 * nu**2 - 1) * (4 * nu**2 - 9) / (128 * lam**2), rel=0.05)


def test_saddle_point_exact_derivatives():
    lam = 50.0
    res = saddle_point(None, None, lam, 0.0, derivatives=((1.0, 0.0, 0.0), (1.0, 0.0, 1.0, 0.0, 1.0)))
    assert res.value == pytest.approx(2 * kv(0, lam), rel=1e-3)


def _order(fe, fa, kind, eps_pair=(0.02, 0.01)):
    rng = np.random.default_rng(5)
    p = PlasmaParams(2.0, 1.5)
    pts = [(rng.uniform(0.3, 3), rng.uniform(0.1, 0.9), rng.uniform(-0.8, 0.8), rng.uniform(-0.8, 0.8),
            rng.uniform(0.2, 1)) for _ in range(6)]
    rms = []
    for eps in eps_pair:
        d = [fe(kind, t, tau, n, n2, eps, p, y=yf * math.sqrt(1 - tau * tau))
             - fa(kind, t, tau, n, n2, eps, p, y=yf * math.sqrt(1 - tau * tau)) for t, tau, n, n2, yf in pts]
        rms.append(math.sqrt(np.mean(np.square(d))))
    return math.log2(rms[0] / rms[1])


@pytest.mark.parametrize("kind", [BoundaryKind.DeltaTE, BoundaryKind.DeltaTM])
def test_r_cyl_error_order(kind):
    assert 1.2 <= _order(r_cyl_ratio_exact, r_cyl_ratio_asympt, kind) <= 1.8


def test_ktilde_error_order():
    assert 1.2 <= _order(ktilde_ratio_exact, ktilde_ratio_asympt, BoundaryKind.EpsTM) <= 1.8


def test_lower_orders_converge_slower():
    kind, p = BoundaryKind.DeltaTE, PlasmaParams(2.0, 1.5)
    args = (1.0, 0.4, 0.3, -0.2)
    errs = {o: [abs(r_cyl_ratio_exact(kind, *args, e, p) - r_cyl_ratio_asympt(kind, *args, e, p, order=o))
                for e in (0.02, 0.01)] for o in ("leading", "half", "one")}
    slopes = {o: math.log2(v[0] / v[1]) for o, v in errs.items()}
    assert slopes["leading"] == pytest.approx(0.5, abs=0.15)
    assert slopes["half"] == pytest.approx(1.0, abs=0.2)
    assert slopes["one"] > 1.2
