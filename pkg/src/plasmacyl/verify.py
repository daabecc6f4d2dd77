"""Property suites run by ``plasmacyl verify``.

Each check returns a :class:`Check`; a suite is a list of check functions.
The checks use independent routes (exact rationals, scipy quadrature,
direct series) wherever the library has a single implementation.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import integrate as sp_integrate

from .beyond import tau_reduce
from .chain import EVEN_MONOMIALS, ODD_MONOMIALS, _full_covariance, _matching_poly, chain_moment
from .models import Geometry, PlasmaParams
from .modesum import energy_oracle
from .specfun import SUPPORTED_POLYLOG_ORDERS, QuadSpec, bessel_ik, gamma_half, polylog

__all__ = ["Check", "SUITES", "run_suite"]


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.detail}"


# ---------------------------------------------------------------------------
# specfun
# ---------------------------------------------------------------------------

def check_wronskian(tol: float = 1e-12) -> Check:
    worst = 0.0
    for m in [0, 1, 2, 3, 5, 10, 20, 35, 50, 75, 100]:
        for x in np.geomspace(1e-3, 50.0, 23):
            i, k = bessel_ik(m, float(x), warn=False)
            # scales cancel in the product up to exp(log_scale_i + log_scale_k)
            w = x * math.exp(i.log_scale + k.log_scale) * (i.derivative * k.value - i.value * k.derivative)
            worst = max(worst, abs(w - 1.0))
    return Check("bessel_wronskian", worst <= tol, f"max |x W - 1| = {worst:.2e} (tol {tol:g})")


def check_polylog_duplication(tol: float = 1e-10) -> Check:
    worst = 0.0
    z = np.linspace(-0.995, 0.995, 81)
    for s in SUPPORTED_POLYLOG_ORDERS:
        lhs = polylog(s, z) + polylog(s, -z)
        rhs = 2.0 ** (1.0 - s) * polylog(s, z * z)
        scale = np.abs(polylog(s, z)) + np.abs(polylog(s, -z))
        scale = np.where(scale > 0, scale, 1.0)
        worst = max(worst, float(np.max(np.abs(lhs - rhs) / scale)))
    return Check("polylog_duplication", worst <= tol, f"max rel defect = {worst:.2e} (tol {tol:g})")


def check_gamma_half(tol: float = 1e-14) -> Check:
    worst = max(abs(gamma_half(n) / math.gamma(n + 0.5) - 1.0) for n in range(40))
    return Check("gamma_half", worst <= tol, f"max rel error vs math.gamma = {worst:.2e}")


# ---------------------------------------------------------------------------
# tau reduction and chain moments
# ---------------------------------------------------------------------------

_TAU_TEST_FUNCTIONS = (
    ("1", lambda y: np.ones_like(y)),
    ("exp(-3y)", lambda y: np.exp(-3.0 * y)),
    ("1/(1+4y^2)", lambda y: 1.0 / (1.0 + 4.0 * y * y)),
)


def check_tau_identity(tol: float = 1e-10) -> Check:
    """Angular average of tau^{2n} f(sqrt(1 - tau^2) sin alpha) vs tau_reduce."""
    worst = 0.0
    spec = QuadSpec(rel_tol=1e-13, abs_tol=1e-15, t_max=40.0)
    for n in (0, 1, 2):
        for _, f in _TAU_TEST_FUNCTIONS:
            # tau = sin(phi) removes the square-root endpoint behaviour
            def g(phi, alpha):
                tau, c = math.sin(phi), math.cos(phi)
                return tau ** (2 * n) * float(f(np.array(c * math.sin(alpha)))) * c

            lhs, _ = sp_integrate.dblquad(g, 0.0, math.pi / 2, 0.0, math.pi / 2, epsabs=1e-15, epsrel=1e-13)
            lhs /= math.pi / 2
            rhs = tau_reduce(n, f, spec)
            worst = max(worst, abs(lhs - rhs) / abs(rhs))
    return Check("tau_identity", worst <= tol, f"n = 0, 1, 2; max rel defect = {worst:.2e} (tol {tol:g})")


def _tridiagonal_det(s: int) -> Fraction:
    # det of the quadratic form of eta_1: 2 on the diagonal, -1 off it
    d0, d1 = Fraction(1), Fraction(2)
    for _ in range(s - 1):
        d0, d1 = d1, 2 * d1 - d0
    return d1


def check_chain_normalization(s_max: int = 40) -> Check:
    bad = []
    for s in range(1, s_max + 1):
        det = _tridiagonal_det(s)
        # Gaussian integral with weight prod dn/sqrt(pi) is det^{-1/2}
        if det != s + 1 or chain_moment(s, [0] * s) != (s + 1) ** -0.5:
            bad.append(s)
        # the covariance must invert the form exactly: Q C = 1/2
        C = _full_covariance(s + 1, exact=True)
        for i in range(1, s + 1):
            for j in range(1, s + 1):
                qc = 2 * C[i][j] - C[i - 1][j] - C[i + 1][j]  # C vanishes on the ends 0, s + 1
                if qc != (Fraction(1, 2) if i == j else 0):
                    bad.append(s)
    return Check("chain_normalization", not bad,
                 f"(s+1)^(-1/2) exact for s = 1..{s_max}" if not bad else f"failures at s = {sorted(set(bad))}")


def check_odd_moments() -> Check:
    bad = []
    for s in (1, 2, 3, 5, 8):
        rng = np.random.default_rng(s)
        for _ in range(20):
            k = rng.integers(0, 4, size=s)
            if k.sum() % 2 == 0:
                k[rng.integers(s)] += 1
            if k.sum() > 7:
                continue
            if chain_moment(s, k) != 0.0:
                bad.append((s, tuple(k)))
    for p, q in ODD_MONOMIALS:
        for p2, q2 in EVEN_MONOMIALS:
            if _matching_poly((p, q, p2, q2)):
                bad.append((p, q, p2, q2))
    return Check("odd_moments_vanish", not bad, "all odd-degree moments are exactly 0" if not bad else f"{bad[:3]}")


# ---------------------------------------------------------------------------
# oracle
# ---------------------------------------------------------------------------

def check_oracle_attraction() -> Check:
    """Energy negative and |E| decreasing in L at fixed R and Omega."""
    Omega = 100.0
    rows = []
    for pair, gaps in (("dd-te", (0.5, 0.4, 0.3)), ("dd-tm", (0.5, 0.4))):
        for L in gaps:
            E, diag = energy_oracle(pair, Geometry(1.0, L), PlasmaParams.from_dimensional(Omega, 0.0, L))
            rows.append((pair, L, E, diag.converged))
    ok = all(E < 0 and conv for _, _, E, conv in rows)
    for pair in ("dd-te", "dd-tm"):
        es = [abs(E) for p, _, E, _ in rows if p == pair]
        ok &= all(a < b for a, b in zip(es, es[1:]))
    detail = ", ".join(f"{p} L={L}: {E:.6g}" for p, L, E, _ in rows)
    return Check("oracle_negative_monotone", ok, detail)


SUITES = {
    "specfun": [check_wronskian, check_polylog_duplication, check_gamma_half],
    "beyond": [check_tau_identity, check_chain_normalization, check_odd_moments],
    "modesum": [check_oracle_attraction],
}
SUITES["all"] = [c for k in ("specfun", "beyond", "modesum") for c in SUITES[k]]


def run_suite(name: str) -> list[Check]:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    out = []
    for fn in SUITES[name]:
        t0 = time.perf_counter()
        try:
            c = fn()
        except Exception as exc:  # a crashing check is a failing check
            c = Check(fn.__name__.removeprefix("check_"), False, f"raised {type(exc).__name__}: {exc}")
        out.append(Check(c.name, c.passed, c.detail, time.perf_counter() - t0))
    return out
