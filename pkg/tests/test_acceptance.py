"""Acceptance criteria 1-13, each at its stated tolerance.

Every test records a single PASS/FAIL line (shown in the terminal summary)
and then asserts the criterion.  Criteria that the implementation cannot
meet are left failing.
"""

import math
import time

import numpy as np
import pytest

from plasmacyl.asympt import (
    ktilde_exact,
    ktilde_ratio_asympt,
    ktilde_ratio_exact,
    r_cyl_ratio_asympt,
    r_cyl_ratio_exact,
)
from plasmacyl.beyond import F1, energy, f1_dd_closed, f1_integrand, f1_series, g_dd_normalized
from plasmacyl.models import BoundaryKind, Geometry, PlasmaParams
from plasmacyl.modesum import energy_oracle
from plasmacyl.pfa import f0, ftilde_dd, ftilde_ed
from plasmacyl.specfun import log_bessel_ik
from plasmacyl.verify import run_suite

pytestmark = pytest.mark.acceptance


def test_c01_ftilde_dd(report):
    t0 = time.perf_counter()
    v = ftilde_dd().value
    dt = time.perf_counter() - t0
    ok = abs(v - 0.254) <= 0.002 and dt < 30
    report(1, ok, f"ftilde_dd = {v:.7f} (target 0.254 +- 0.002), {dt:.1f} s")
    assert ok


def test_c02_ftilde_ed_limits(report):
    small = ftilde_ed(1e-4).value / (1.62 * math.sqrt(1e-4))
    large = ftilde_ed(1e4).value
    ok = 0.95 <= small <= 1.05 and abs(large - 1.39) <= 0.03
    report(2, ok, f"x=1e-4: value/(1.62 sqrt x) = {small:.4f} (in [0.95, 1.05]); "
                  f"x=1e4: value = {large:.5f} (target 1.39 +- 0.03)")
    assert ok


def test_c03_hard_limits(report):
    grid = np.geomspace(1e-2, 1e4, 20)
    ok = True
    parts = []
    for label in ("dd-te", "dd-tm", "ed-te", "ed-tm"):
        vals = np.array([f0(label, PlasmaParams(W, W))[0] for W in grid])
        hard = vals[-1]
        mono = bool(np.all(np.diff(vals) > 0))
        ok &= 0.95 <= hard <= 1.0 and mono
        parts.append(f"{label} f0(1e4) = {hard:.5f}{'' if mono else ' NOT monotone'}")
    report(3, ok, "; ".join(parts))
    assert ok


def test_c04_small_omega_te(report):
    r_dd = f0("dd-te", PlasmaParams(1e-3))[0] / (840 / math.pi**4 * 1e-6)
    r_ed = f0("ed-te", PlasmaParams(1e-3, 1e-3))[0] / (420 / math.pi**4 * 1e-6)
    ok = 0.95 <= r_dd <= 1.05 and 0.95 <= r_ed <= 1.05
    report(4, ok, f"dd-te ratio = {r_dd:.4f}, ed-te ratio = {r_ed:.4f} (in [0.95, 1.05])")
    assert ok


def test_c05_small_omega_tm(report):
    r = f0("dd-tm", PlasmaParams(1e-4))[0] / (840 * math.sqrt(2) / math.pi**4.5 * 0.254 * 1e-2)
    ok = 0.95 <= r <= 1.05
    report(5, ok, f"dd-tm ratio = {r:.4f} (in [0.95, 1.05])")
    assert ok


def test_c06_f1_small_te(report):
    v, _ = f1_series("dd-te", PlasmaParams(1e-3))
    r = v / (720 * math.sqrt(2) / (7 * math.pi**3.5) * 10**-4.5)
    ok = 0.90 <= r <= 1.10
    report(6, ok, f"f1 dd-te(1e-3) ratio = {r:.4f} (in [0.90, 1.10])")
    assert ok


def test_c07_f1_small_tm(report):
    v, _ = f1_series("dd-tm", PlasmaParams(1e-4))
    r = v / (0.92e-2)
    ok = 0.95 <= r <= 1.05
    report(7, ok, f"f1 dd-tm(1e-4) ratio = {r:.4f} (in [0.95, 1.05])")
    assert ok


def test_c08_f1_hard_limit(report):
    te, _ = f1_series("dd-te", PlasmaParams(1e4))
    tm, _ = f1_series("dd-tm", PlasmaParams(1e4))
    ok = 0.95 <= te <= 1.05 and 0.95 <= tm <= 1.05
    report(8, ok, f"f1(1e4): TE = {te:.5f}, TM = {tm:.5f} (in [0.95, 1.05])")
    assert ok


def test_c09_generic_vs_closed(report):
    t0 = time.perf_counter()
    worst_int = 0.0
    for W in (0.1, 1.0, 10.0):
        for mode, label in (("TE", "dd-te"), ("TM", "dd-tm")):
            s, _ = f1_series(label, PlasmaParams(W))
            c = f1_dd_closed(mode, W).value
            worst_int = max(worst_int, abs(s - c) / abs(c))
    rng = np.random.default_rng(2024)
    worst_pt = 0.0
    for _ in range(20):
        t, y, W = 10 ** rng.uniform(-2, 0.8), rng.uniform(0, 1), 10 ** rng.uniform(-2, 3)
        for mode, label in (("TE", "dd-te"), ("TM", "dd-tm")):
            g = g_dd_normalized(mode, t, y, W)
            worst_pt = max(worst_pt, abs(float(f1_integrand(label, t, y, PlasmaParams(W))) - g) / abs(g))
    dt = time.perf_counter() - t0
    ok = worst_int <= 1e-4 and worst_pt <= 1e-6 and dt < 600
    report(9, ok, f"integrated max rel diff = {worst_int:.2e} (<= 1e-4), "
                  f"integrand max rel diff = {worst_pt:.2e} (<= 1e-6), {dt:.0f} s")
    assert ok


def _asymptotic_sample():
    rng = np.random.default_rng(7)
    return [(rng.uniform(0.3, 3), rng.uniform(0.1, 0.9), rng.uniform(-0.8, 0.8), rng.uniform(-0.8, 0.8),
             rng.uniform(0.2, 1)) for _ in range(10)]


def test_c10_asymptotic_order(report):
    # err(eps) is the RMS of exact - asymptotic over the 10-point sample
    pts = _asymptotic_sample()
    p = PlasmaParams(2.0, 1.5)
    pairs = [("r_cyl", k, r_cyl_ratio_exact, r_cyl_ratio_asympt) for k in (BoundaryKind.DeltaTE, BoundaryKind.DeltaTM)]
    pairs += [("ktilde", k, ktilde_ratio_exact, ktilde_ratio_asympt) for k in BoundaryKind]
    lo, hi = 1.2, 1.8
    ok = True
    parts = []
    for name, kind, fe, fa in pairs:
        rms = []
        for eps in (0.02, 0.01):
            d = [fe(kind, t, tau, n, n2, eps, p, y=yf * math.sqrt(1 - tau * tau))
                 - fa(kind, t, tau, n, n2, eps, p, y=yf * math.sqrt(1 - tau * tau))
                 for t, tau, n, n2, yf in pts]
            rms.append(math.sqrt(np.mean(np.square(d))))
        order = math.log2(rms[0] / rms[1])
        ok &= lo <= order <= hi
        parts.append(f"{name} {kind.value}: {order:.3f}")
    report(10, ok, "log2 err(0.02)/err(0.01) in [1.2, 1.8]: " + ", ".join(parts))
    assert ok


def test_c11_dirichlet_limit(report):
    a = 1.1  # R = 1, L = 0.1
    worst = 0.0
    for mu in (0, 1, 5):
        for arho in (1.0, 3.0):
            rho = arho / a
            k = ktilde_exact(BoundaryKind.DeltaTE, mu, a, rho, 0.0, 1e8)
            kd = math.exp(float(log_bessel_ik(mu, 2 * arho).log_k))
            worst = max(worst, abs(k - kd) / kd)
    ok = worst < 1e-8
    report(11, ok, f"max |K - K_mu(2 a rho)|/K_mu = {worst:.2e} at Omega = 1e8, a = {a} (< 1e-8)")
    assert ok


def test_c12_oracle_vs_expansion(report):
    t0 = time.perf_counter()
    params = PlasmaParams(50.0)
    eps = [0.4, 0.2, 0.1]
    ok = True
    parts = []
    for label, mode, tol in (("dd-te", "TE", 0.15), ("dd-tm", "TM", 0.20)):
        slopes = []
        for e in eps:
            geom = Geometry(1.0, e)
            E, diag = energy_oracle(label, geom, params)
            b = energy(label, geom, params)
            assert diag.converged and E < 0
            slopes.append((E / b.E_pfa - 1) / e)
        intercept = np.polyfit(eps, slopes, 1)[1]
        pred = F1.f1h(mode) * b.f1 / b.f0
        rel = abs(intercept / pred - 1)
        ok &= rel <= tol
        parts.append(f"{label}: slopes {', '.join(f'{s:.4f}' for s in slopes)} -> {intercept:.4f} "
                     f"vs f1h f1/f0 = {pred:.4f} (deviation {100 * rel:.1f}%, limit {100 * tol:.0f}%)")
    dt = time.perf_counter() - t0
    ok &= dt <= 1800
    report(12, ok, "; ".join(parts) + f"; {dt:.0f} s")
    assert ok


def test_c13_property_suites(report):
    t0 = time.perf_counter()
    checks = run_suite("all")
    dt = time.perf_counter() - t0
    failed = [c.name for c in checks if not c.passed]
    ok = not failed and dt < 300
    report(13, ok, f"{len(checks) - len(failed)}/{len(checks)} verify checks green"
                   + (f" (failed: {', '.join(failed)})" if failed else "") + f", {dt:.0f} s")
    assert ok
