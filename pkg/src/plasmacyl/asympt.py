"""Exact cylinder/plane factors against their small-gap asymptotics.

Variables follow the rescaled mode-sum integrals: with R = 1 and
eps = L/R,

    rho = (t/eps) sqrt(1 - tau^2),  m = (t/eps) tau,
    mu_1 = m + n sqrt(4t/eps),      mu_2 = m + n' sqrt(4t/eps),
    a = 1 + eps,  Omega = Omega_L/eps,  omega_p = omega_L/eps,
    omega = rho sin(alpha),  y = sqrt(1 - tau^2) sin(alpha).

The exact factors are evaluated at real (generally non-integer) Bessel
orders mu_1, mu_2.

Building blocks of the expansion:

* cylinder factor R ~ (e^{eta0}/pi) r_cyl (1 + P sqrt(eps) + Q eps),
* plane integral  K_{mu_1+mu_2} ~ sqrt(pi eps/(4t)) (1/tau) phi,
  phi = phi0 + phi_half sqrt(eps) + phi_one eps,
* a common factor psi = 1 + psi_half sqrt(eps) + psi_one eps from the
  exponentials and the saddle-point prefactor.

Composing them gives the coefficients of :mod:`plasmacyl.coefficients`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .coefficients import _psi_half, _psi_one, _q_dte, _q_dtm_block
from .models import BoundaryKind, PlasmaParams, dtilde, get_model, refl
from .specfun import QuadSpec, log_bessel_ik

__all__ = [
    "ExpansionOrder",
    "SaddleExpansion",
    "a_asympt_compose",
    "cyl_PQ",
    "ktilde_asympt",
    "ktilde_exact",
    "ktilde_ratio_asympt",
    "ktilde_ratio_exact",
    "phi_coeffs",
    "psi_factor",
    "r_cyl_asympt",
    "r_cyl_exact",
    "r_cyl_ratio_asympt",
    "r_cyl_ratio_exact",
    "saddle_point",
    "compose_coefficients",
]


ORDERS = ("leading", "half", "one")


def ExpansionOrder(order: str) -> int:
    """Map an order name to the number of sqrt(eps) powers kept (0, 1, 2)."""
    try:
        return ORDERS.index(order)
    except ValueError:
        raise ValueError(f"order must be one of {ORDERS}") from None


# ---------------------------------------------------------------------------
# Asymptotic building blocks
# ---------------------------------------------------------------------------

def cyl_PQ(kind: BoundaryKind, n, n2, t, tau, y, Omega_L):
    """P and Q of the cylinder factor for a plasma-sheet cylinder.

    Infinite ``Omega_L`` gives the hard-boundary (Dirichlet / Neumann) values.
    """
    m = n2
    T2 = tau * tau
    W = Omega_L
    if kind is BoundaryKind.DeltaTE:
        if math.isinf(W):
            P = -(-n + m) * tau / np.sqrt(t)
            Q = (-6 * (3 * T2 - 2) * n**2 - 12 * m * T2 * n - 5 * T2 + 6 * m**2 * (5 * T2 - 2) + 3) / (12 * t)
        else:
            P = -(n * (t - W) + m * (W + t)) * tau / (np.sqrt(t) * (W + t))
            Q = _q_dte(n, m, t, T2, W)
        return P, Q
    if kind is BoundaryKind.DeltaTM:
        y2 = y * y
        if math.isinf(W):
            P = tau * (-n + m) / np.sqrt(t)
            Q = (6 * (5 * T2 - 2) * n**2 - 12 * m * T2 * n + 7 * T2 - 6 * m**2 * (3 * T2 - 2) - 9) / (12 * t)
        else:
            P = tau * (n * t * y2 + m * t * y2 - n * W + m * W) / (np.sqrt(t) * (t * y2 + W))
            Q = _q_dtm_block(n, m, t, T2, y2, W) / (12 * t * (t * y2 + W) ** 2)
        return P, Q
    raise ValueError("the cylinder is always a plasma sheet")


def phi_coeffs(kind: BoundaryKind, n, n2, t, tau, y, params: PlasmaParams):
    """(phi0, phi_half, phi_one) of the plane integral for a boundary kind."""
    m = n2
    T2 = tau * tau
    W, w = params.Omega_L, params.omega_L
    st = np.sqrt(t)
    if kind is BoundaryKind.DeltaTE:
        if math.isinf(W):
            return 1.0 + 0 * t, 0 * t, (5 * T2 - 3) / (48 * t)
        p0 = W / (W + t)
        ph = -(n + m) * W * st * tau / (W + t) ** 2
        p1 = W * (
            (5 * T2 - 3) * W**2
            + 2 * t * (12 * (T2 - 1) * n**2 + 24 * m * (T2 - 1) * n + 24 * t * T2 + 11 * T2 + 12 * m**2 * (T2 - 1) - 9) * W
            + t**2 * (24 * (3 * T2 - 1) * n**2 + 48 * m * (3 * T2 - 1) * n + 48 * t * T2 + 41 * T2
                      + 24 * m**2 * (3 * T2 - 1) - 15)
        ) / (48 * t * (W + t) ** 3)
        return p0, ph, p1
    if kind is BoundaryKind.DeltaTM:
        if math.isinf(W):
            return -1.0 + 0 * t, 0 * t, -(5 * T2 - 3) / (48 * t)
        y2 = y * y
        D = t * y2 + W
        p0 = -W / D
        ph = -(n + m) * W * st * tau * y2 / D**2
        p1 = W * (
            t**2 * (24 * (T2 - 1) * n**2 + 48 * m * (T2 - 1) * n + 48 * t * T2 + 7 * T2 + 24 * m**2 * (T2 - 1) - 9) * y2**2
            + 2 * W * t * (12 * (3 * T2 - 1) * n**2 + 24 * m * (3 * T2 - 1) * n + 24 * t * T2 + 13 * T2
                           + 12 * m**2 * (3 * T2 - 1) - 3) * y2
            + W**2 * (3 - 5 * T2)
        ) / (48 * t * D**3)
        return p0, ph, p1
    if kind is BoundaryKind.EpsTE:
        if math.isinf(w):
            return 1.0 + 0 * t, 0 * t, (5 * T2 - 3) / (48 * t)
        S = np.sqrt(w * w + t * t)
        w2 = w * w
        p0 = (S - t) / (t + S)
        ph = -2 * (n + m) * w2 * st * tau / (S * (t + S) ** 2)
        blk = (T2 - 1) * w2**2 + t * (S * (3 * T2 - 1) + t * (5 * T2 - 2)) * w2 + t**3 * (t + S) * (4 * T2 - 1)
        p1 = (
            -(w2 + t * (-t * T2 - 2 * S * T2 + t)) * w2 / (2 * S**3 * (t + S) ** 2)
            + (blk * n**2 + 2 * m * blk * n + 2 * t * (w2 + t * t) * (w2 + t * (t + S)) * T2 + m**2 * blk) * w2
            / (S**4 * (t + S) ** 3)
            + (S - t) * T2 / (2 * (w2 + t * (t + S)))
            + (S - t) * (5 * T2 - 3) / (48 * t * (t + S))
        )
        return p0, ph, p1
    if kind is BoundaryKind.EpsTM:
        if math.isinf(w):
            return -1.0 + 0 * t, 0 * t, -(5 * T2 - 3) / (48 * t)
        y2 = y * y
        S = np.sqrt(w * w + t * t)
        w2 = w * w
        D = w2 + t * (t + S) * y2
        E = w2 + t * t * y2
        p0 = (t * (S - t) * y2 - w2) / D
        ph = -2 * (n + m) * w2 * st * tau * y2 * E / (S * D**2)
        blk = (
            ((t * y2 + 3 * S) * T2 - t * y2 - S) * w2**2
            + t**2 * ((5 * t * y2 + S * (3 * y2 + 4)) * T2 - 2 * t * y2 - S * (y2 + 1)) * w2
            + t**4 * (t + S) * (4 * T2 - 1) * y2
        )
        inner = (
            24 * w2 * T2 * E * D * y2 / S
            - 24 * w2 * E * ((1 - 2 * T2) * w2**2 + t * (S * y2 + t * (-(2 * y2 + 3) * T2 + y2 + 1)) * w2
                             - t**3 * (t + S) * (3 * T2 - 1) * y2) * y2 / S**3
            + 48 * w2 * E * (blk * n**2 + 2 * m * blk * n
                             + 2 * t * (w2 + t * t) * T2 * ((t * y2 + S) * w2 + t**2 * (t + S) * y2)
                             + m**2 * blk) * y2 / S**4
            - (5 * T2 - 3) / t * (w2 + t * (t - S) * y2) * D**2
        )
        p1 = inner / (48 * D**3)
        return p0, ph, p1
    raise ValueError(kind)  # pragma: no cover


def psi_factor(n, n2, t, tau, epsilon=None):
    """(psi_half, psi_one), or the truncated psi if ``epsilon`` is given."""
    h = _psi_half(n, n2, t, tau)
    o = _psi_one(n, n2, t, tau * tau)
    if epsilon is None:
        return h, o
    return 1.0 + h * np.sqrt(epsilon) + o * epsilon


def compose_coefficients(pair, n, n2, t, tau, y, params: PlasmaParams):
    """a^(1/2), a^(1) from the cylinder, plane and psi factors.

    Expanding (1 + P s + Q s^2)(1 + (phi_half/phi0) s + (phi_one/phi0) s^2)
    (1 + psi_half s + psi_one s^2) in s = sqrt(eps) gives
    a_half = P + phi_half/phi0 + psi_half and
    a_one = Q + phi_one/phi0 + psi_one + P phi_half/phi0 + P psi_half
    + psi_half phi_half/phi0.
    """
    pair = get_model(pair)
    P, Q = cyl_PQ(pair.cyl, n, n2, t, tau, y, params.Omega_L)
    p0, ph, p1 = phi_coeffs(pair.plane, n, n2, t, tau, y, params)
    sh, so = psi_factor(n, n2, t, tau)
    rh, r1 = ph / p0, p1 / p0
    a_h = P + rh + sh
    a_1 = Q + r1 + so + P * rh + P * sh + sh * rh
    return a_h, a_1


def a_asympt_compose(pair, n, n2, t, tau, y, epsilon, params: PlasmaParams):
    """Asymptotic matrix element through order eps.

    sqrt(eps/(4 pi t)) e^{-2t-(n-n')^2} r_cyl r_plane (1 + sqrt(eps) a_half + eps a_one)
    """
    pair = get_model(pair)
    a_h, a_1 = compose_coefficients(pair, n, n2, t, tau, y, params)
    rr = refl(pair.cyl, t, y, params) * refl(pair.plane, t, y, params)
    pref = np.sqrt(epsilon / (4 * np.pi * t)) * np.exp(-2 * t - (n - n2) ** 2)
    return pref * rr * (1 + np.sqrt(epsilon) * a_h + epsilon * a_1)


def r_cyl_asympt(kind: BoundaryKind, t, tau, n, n2, epsilon, params: PlasmaParams, order="one", y=1.0):
    """r_cyl (1 + P sqrt(eps) + Q eps) truncated at ``order`` (e^{eta0}/pi excluded)."""
    k = ExpansionOrder(order)
    r = refl(kind, t, y, params)
    P, Q = cyl_PQ(kind, n, n2, t, tau, y, params.Omega_L)
    se = np.sqrt(epsilon)
    return r * (1 + (P * se if k >= 1 else 0) + (Q * epsilon if k >= 2 else 0))


def ktilde_asympt(kind: BoundaryKind, n, n2, t, tau, y, epsilon, params: PlasmaParams, order="one"):
    """sqrt(pi eps/(4t)) (1/tau) phi, phi truncated at ``order``.

    The exponential factor exp(-lambda eta) is not included.
    """
    k = ExpansionOrder(order)
    p0, ph, p1 = phi_coeffs(kind, n, n2, t, tau, y, params)
    se = np.sqrt(epsilon)
    phi = p0 + (ph * se if k >= 1 else 0) + (p1 * epsilon if k >= 2 else 0)
    return np.sqrt(np.pi * epsilon / (4 * t)) / tau * phi


# ---------------------------------------------------------------------------
# Exact factors
# ---------------------------------------------------------------------------

def _log_iv(nu, x):
    return log_bessel_ik(nu, x).log_i


def _log_kv(nu, x):
    return log_bessel_ik(nu, x).log_k


def _cyl_denominator_factor(kind, nu, x, Omega, omega, R=1.0):
    """1/(1 + 1/(2 Omega R I K)) for TE; 1/(1 - omega^2/(2 Omega R rho^2 I' K')) for TM."""
    if math.isinf(Omega):
        return np.ones(np.broadcast(nu, x).shape)
    b = log_bessel_ik(nu, x)
    lik = b.log_i + b.log_k
    if kind is BoundaryKind.DeltaTE:
        return 1.0 / (1.0 + np.exp(-lik) / (2.0 * Omega * R))
    ipkp = np.exp(lik) * b.dlog_i * b.dlog_k  # I'K' < 0
    rho = x / R
    return 1.0 / (1.0 - omega**2 / (2.0 * Omega * R * rho**2) / ipkp)


def r_cyl_exact(kind: BoundaryKind, m, m2, rho, R, Omega, omega=0.0):
    """Exact cylinder factor of the matrix element A = R_factor * K_{m+m'}.

    TE: I_{m'}(rho R)/K_m(rho R) / (1 + 1/(2 Omega R I_m K_m)).
    TM: I'_{m'}(rho R)/K'_m(rho R) / (1 - omega^2/(2 Omega R rho^2 I'_m K'_m)).
    Orders may be real; negative orders use I_{-nu} = I_nu for integers.
    """
    x = rho * R
    f = _cyl_denominator_factor(kind, m, x, Omega, omega, R)
    bm, bm2 = log_bessel_ik(m, x), log_bessel_ik(m2, x)
    ratio = np.exp(bm2.log_i - bm.log_k)
    if kind is BoundaryKind.DeltaTM:
        ratio = ratio * bm2.dlog_i / bm.dlog_k
    return f * ratio


def _ktilde_log_terms(kind, mu, a, rho, omega, Omega, omega_p, theta):
    gamma = rho * np.cosh(theta)
    g = 2 * gamma * dtilde(kind, omega, gamma, Omega, omega_p)
    mu = np.atleast_1d(np.asarray(mu, dtype=float))[:, None]
    mth = np.abs(mu) * theta[None, :]
    logcosh = mth + np.log1p(np.exp(-2 * mth)) - math.log(2.0)
    return logcosh - 2 * a * rho * np.cosh(theta)[None, :] + np.log(np.abs(g))[None, :], np.sign(g)


def _theta_grid(mu_max, a, rho, n_per_width=6.0, drop=46.0):
    big = math.hypot(mu_max, 2 * a * rho)
    width = 1.0 / math.sqrt(big)
    h = min(0.5, width) / n_per_width
    th0 = math.asinh(mu_max / (2 * a * rho)) if mu_max > 0 else 0.0
    # go out until the largest-mu integrand has dropped by exp(-drop)
    def expo(th):
        return mu_max * th - 2 * a * rho * math.cosh(th)
    peak = expo(th0)
    th = th0 + width
    while expo(th) > peak - drop:
        th += max(width, 0.25 * th)
    return np.arange(0.0, th + h, h), h


def _log_trapezoid(kind, mus, a, rho, omega, Omega, omega_p, n_per_width):
    theta, h = _theta_grid(float(np.max(np.abs(mus))), a, rho, n_per_width)
    lt, sgn = _ktilde_log_terms(kind, mus, a, rho, omega, Omega, omega_p, theta)
    lt = lt.copy()
    lt[:, 0] -= math.log(2.0)

    def lsum(x, step):
        mx = x.max(axis=1, keepdims=True)
        return mx[:, 0] + np.log(np.exp(x - mx).sum(axis=1)) + math.log(step)

    # the even-indexed nodes form the rule with step 2h
    return lsum(lt, h), lsum(lt[:, ::2], 2 * h), float(sgn[0])


def ktilde_exact(kind: BoundaryKind, mu, a, rho, omega=0.0, Omega=math.inf, omega_p=math.inf, *,
                 spec: QuadSpec = QuadSpec(), log=False, return_error=False):
    """Plane integral K_mu = int_0^inf cosh(mu th) 2 gamma d~(omega, gamma) e^{-2 a gamma} dth.

    gamma = rho cosh(th); ``omega``, ``Omega`` and ``omega_p`` are
    dimensional (inverse length), infinite values giving the hard plane.
    ``mu`` may be an array (one grid serves all).  The integrand is even
    and analytic in th, so the trapezoidal rule on a uniform grid converges
    exponentially; the step-2h rule on the same nodes gives the error
    estimate and the step is halved until it meets ``spec.rel_tol``.

    Returns
    -------
    K, or (log|K|, sign) with ``log=True``; with ``return_error=True`` a
    relative error estimate is appended.

    Raises
    ------
    RuntimeError
        If the estimate stays above ``spec.rel_tol`` after three halvings.
    """
    mus = np.atleast_1d(np.asarray(mu, dtype=float))
    if not (a * rho > 0):
        raise ValueError("a*rho must be positive")
    n_per_width = 6.0
    for _ in range(4):
        lk, lk2, sign = _log_trapezoid(kind, mus, a, rho, omega, Omega, omega_p, n_per_width)
        rel = np.abs(np.expm1(lk2 - lk))
        if np.all(rel <= spec.rel_tol):
            break
        n_per_width *= 2
    else:
        raise RuntimeError(f"ktilde_exact did not converge (relative estimate {np.max(rel):.3g})")
    scalar = not np.ndim(mu)
    if log:
        out = (float(lk[0]) if scalar else lk), sign
    else:
        val = sign * np.exp(lk)
        out = float(val[0]) if scalar else val
    if return_error:
        err = float(rel[0]) if scalar else rel
        return (*out, err) if log else (out, err)
    return out


# ---------------------------------------------------------------------------
# Ratios used for error-order studies
# ---------------------------------------------------------------------------

def _scaled(t, tau, n, n2, epsilon, params: PlasmaParams, y):
    rho = t * np.sqrt(1 - tau * tau) / epsilon
    m = t * tau / epsilon
    d = np.sqrt(4 * t / epsilon)
    mu1, mu2 = m + n * d, m + n2 * d
    Omega, omega_p = params.Omega_L / epsilon, params.omega_L / epsilon
    sin_a = y / np.sqrt(1 - tau * tau)
    omega = rho * sin_a
    return rho, mu1, mu2, Omega, omega_p, omega


def r_cyl_ratio_exact(kind, t, tau, n, n2, epsilon, params: PlasmaParams, y=1.0):
    """Exact R(Omega)/R(hard) at the rescaled indices; exponentials cancel."""
    rho, mu1, mu2, Omega, _, omega = _scaled(t, tau, n, n2, epsilon, params, y)
    return _cyl_denominator_factor(kind, mu1, rho, Omega, omega)


def r_cyl_ratio_asympt(kind, t, tau, n, n2, epsilon, params: PlasmaParams, y=1.0, order="one"):
    """(r/r_h)(1 + P s + Q s^2)/(1 + P_h s + Q_h s^2) re-expanded through ``order``.

    r_h = +-1 is the hard-boundary coefficient, so the ratio tends to 1 as
    Omega_L grows.
    """
    k = ExpansionOrder(order)
    r = refl(kind, t, y, params) * (-1.0 if kind.is_tm else 1.0)
    P, Q = cyl_PQ(kind, n, n2, t, tau, y, params.Omega_L)
    Ph, Qh = cyl_PQ(kind, n, n2, t, tau, y, math.inf)
    s = np.sqrt(epsilon)
    c1 = P - Ph
    c2 = Q - Qh - Ph * (P - Ph)
    return r * (1 + (c1 * s if k >= 1 else 0) + (c2 * epsilon if k >= 2 else 0))


def ktilde_ratio_exact(kind, t, tau, n, n2, epsilon, params: PlasmaParams, y=1.0):
    """Exact K_{mu1+mu2}(model)/K_{mu1+mu2}(2 a rho)."""
    rho, mu1, mu2, Omega, omega_p, omega = _scaled(t, tau, n, n2, epsilon, params, y)
    a = 1 + epsilon
    out = []
    for r_, m1, m2, om in np.broadcast(rho, mu1, mu2, omega):
        mu = m1 + m2
        lk, sg = ktilde_exact(kind, mu, a, r_, om, Omega, omega_p, log=True)
        out.append(sg * np.exp(lk - _log_kv(abs(mu), 2 * a * r_)))
    out = np.array(out)
    return out if out.size > 1 else float(out[0])


def ktilde_ratio_asympt(kind, t, tau, n, n2, epsilon, params: PlasmaParams, y=1.0, order="one"):
    """phi/phi_TE,hard re-expanded through ``order``.

    K_mu(2 a rho) is the plane integral of a hard TE plane, whose phi is
    1 + (5 tau^2 - 3) eps/(48 t); a hard TM plane gives the negative of it.
    """
    k = ExpansionOrder(order)
    p0, ph, p1 = phi_coeffs(kind, n, n2, t, tau, y, params)
    h1 = (5 * tau * tau - 3) / (48 * t)
    s = np.sqrt(epsilon)
    return p0 + (ph * s if k >= 1 else 0) + ((p1 - p0 * h1) * epsilon if k >= 2 else 0)


# ---------------------------------------------------------------------------
# Generic saddle-point engine
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SaddleExpansion:
    """Saddle-point expansion of int_0^inf g(th) e^{-lam h(th)} dth."""

    theta0: float
    leading: float
    correction: float

    @property
    def value(self) -> float:
        return self.leading * (1.0 + self.correction)


def _derivs(f, x0, step):
    # central differences through fourth order on a 9-point stencil
    k = np.arange(-4, 5)
    v = np.array([f(x0 + i * step) for i in k])
    c1 = np.array([1 / 280, -4 / 105, 1 / 5, -4 / 5, 0, 4 / 5, -1 / 5, 4 / 105, -1 / 280])
    c2 = np.array([-1 / 560, 8 / 315, -1 / 5, 8 / 5, -205 / 72, 8 / 5, -1 / 5, 8 / 315, -1 / 560])
    c3 = np.array([-7 / 240, 3 / 10, -169 / 120, 61 / 30, 0, -61 / 30, 169 / 120, -3 / 10, 7 / 240])
    c4 = np.array([7 / 240, -2 / 5, 169 / 60, -122 / 15, 91 / 8, -122 / 15, 169 / 60, -2 / 5, 7 / 240])
    return (v[4], c1 @ v / step, c2 @ v / step**2, c3 @ v / step**3, c4 @ v / step**4)


def saddle_point(g, h, lam: float, theta0: float | None = None, *, derivatives=None, step=1e-2):
    """Two-term saddle-point expansion around the minimum theta0 of h.

    int g e^{-lam h} ~ sqrt(2 pi/(lam h2)) e^{-lam h0}
        [g0 + ((5 h3^2/(24 h2^3) - h4/(8 h2^2)) g0 - h3 g1/(2 h2^2) + g2/(2 h2))/lam].

    The full-line Gaussian width is used; for an even integrand on (0, inf)
    with theta0 = 0 halve the result.  ``derivatives`` may supply
    ((g0, g1, g2), (h0, h1, h2, h3, h4)) exactly; otherwise finite
    differences with spacing ``step`` are used.
    """
    if derivatives is None:
        if theta0 is None:
            theta0 = float(minimize_scalar(h).x)
        gd = _derivs(g, theta0, step)[:3]
        hd = _derivs(h, theta0, step)
    else:
        gd, hd = derivatives
    g0, g1, g2 = gd
    h0, _, h2, h3, h4 = hd
    lead = math.sqrt(2 * math.pi / (lam * h2)) * math.exp(-lam * h0) * g0
    corr = ((5 * h3**2 / (24 * h2**3) - h4 / (8 * h2**2)) * g0 - h3 * g1 / (2 * h2**2) + g2 / (2 * h2)) / lam / g0
    return SaddleExpansion(theta0 if theta0 is not None else float("nan"), lead, corr)
