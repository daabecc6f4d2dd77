"""First correction beyond PFA.

The energy per unit length to first order in eps = L/R is

    E = -pi^3/(1920 sqrt2 L^2) sqrt(R/L) (f0 + eps f1h f1),

with f1h = 7/36 (TE) or 7/36 - 40/(3 pi^2) (TM) the hard-boundary
values, so that f1 -> 1 for hard boundaries.  With X = r_cyl r_plane e^{-2t}
the combination f1h f1 is

    f1h f1 = C int dt t^{3/2} int_0^1 dy G(t, y),
    G = sum_{N >= 1} X^N N^{-3/2} [b0 . U_N + h(y) (b1 . U_N + alpha^T T_N alpha)],

where alpha, b0, b1 are the polynomial coefficients (in the chain variables)
of the sqrt(eps) and eps terms of the asymptotic matrix element, U_N and T_N
are the chain sums of :mod:`plasmacyl.chain`, and h(y) is the weight that
the angular reduction assigns to tau^2: 1/3 for TE, (1 - y^2)/2 for TM.

Two independent routes are provided for the plasma-sheet pair: the generic
chain machinery (:func:`f1_series`) and the closed polylog forms
(:func:`f1_dd_closed`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.special import gammaln

from .chain import EVEN_MONOMIALS, LAURENT_POWERS, ODD_MONOMIALS, _solve_exact, chain_sums, laurent_tables
from .coefficients import a_coeff
from .models import Geometry, ModelPair, PlasmaParams, get_model
from .pfa import C_PFA, EnergyBreakdown, _inner_y, _t_scales, _y_breakpoints, f0, hard_energy, li_log_argument
from .specfun import QuadResult, QuadSpec, integrate_semiinf, integrate_unit, polylog_exp

__all__ = [
    "F1",
    "F1Constants",
    "chain_coefficients",
    "energy",
    "f1_dd_closed",
    "f1_integrand",
    "f1_series",
    "f1_small_limit",
    "g_dd",
    "g_dd_normalized",
    "mas_mean",
    "tau_reduce",
    "BRACKET_SUPPORT",
]


@dataclass(frozen=True)
class F1Constants:
    """Hard-boundary values f1h, stored as rational + rational/pi^2."""

    te: tuple = (Fraction(7, 36), Fraction(0))
    tm: tuple = (Fraction(7, 36), Fraction(-40, 3))

    @staticmethod
    def _value(c) -> float:
        return float(c[0]) + float(c[1]) / math.pi**2

    @property
    def f1h_TE(self) -> float:
        return self._value(self.te)

    @property
    def f1h_TM(self) -> float:
        return self._value(self.tm)

    def f1h(self, mode: str) -> float:
        mode = _mode(mode)
        return self.f1h_TM if mode == "TM" else self.f1h_TE


F1 = F1Constants()


def _mode(mode) -> str:
    if isinstance(mode, ModelPair):
        return mode.mode
    m = str(mode).upper()
    if m not in ("TE", "TM"):
        raise ValueError("mode must be 'TE' or 'TM'")
    return m


def tau_reduce(n: int, f, spec: QuadSpec = QuadSpec()) -> float:
    """Gamma(n+1/2)/(sqrt(pi) Gamma(n+1)) int_0^1 dy (1 - y^2)^n f(y).

    This is the average of tau^{2n} f(y) over the angular variables.
    ``f`` must accept an array of y values.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    pref = math.exp(gammaln(n + 0.5) - gammaln(n + 1.0)) / math.sqrt(math.pi)
    res = integrate_unit(lambda y: (1.0 - y * y) ** n * np.asarray(f(y), dtype=float), spec)
    if not res.converged:
        raise RuntimeError("tau_reduce quadrature did not converge")
    return pref * res.value


# ---------------------------------------------------------------------------
# Coefficient extraction
# ---------------------------------------------------------------------------

# At small t the order-eps Laurent coefficients d_k come from cancellations
# between terms of size 1/t, so the extraction runs in extended precision
# with an exactly computed least-squares inverse.
_XP = np.longdouble
_FIT_GRID_EXACT = [Fraction(13 * k, 30) for k in range(-3, 4)]


def _to_xp(x: Fraction):
    return _XP(x.numerator) / _XP(x.denominator) if abs(x.numerator) < 2**63 and x.denominator < 2**63 \
        else _XP(str(Decimal(x.numerator) / Decimal(x.denominator)))


def _exact_pinv(monomials) -> np.ndarray:
    pts = [(a, b) for a in _FIT_GRID_EXACT for b in _FIT_GRID_EXACT]
    V = [[a**p * b**q for p, q in monomials] for a, b in pts]
    m = len(monomials)
    gram = [[sum(row[i] * row[j] for row in V) for j in range(m)] for i in range(m)]
    # solve gram X = V^T column by column
    out = np.empty((m, len(pts)), dtype=_XP)
    for c, row in enumerate(V):
        x = _solve_exact(gram, row)
        out[:, c] = [_to_xp(v) for v in x]
    return out


_FIT_N, _FIT_N2 = (g.ravel() for g in np.meshgrid(np.array([_to_xp(v) for v in _FIT_GRID_EXACT]),
                                                 np.array([_to_xp(v) for v in _FIT_GRID_EXACT]),
                                                 indexing="ij"))
_PINV_ODD = _exact_pinv(ODD_MONOMIALS)
_PINV_EVEN = _exact_pinv(EVEN_MONOMIALS)


def chain_coefficients(pair, t, y, params: PlasmaParams, *, extended: bool = False):
    """Polynomial coefficients of the asymptotic matrix element.

    a^(1/2)(n, n') = tau sum alpha[p,q] n^p n'^q and
    a^(1)(n, n') = sum (b0 + tau^2 b1)[p,q] n^p n'^q.

    The coefficients are exact polynomials in (n, n') and tau; they are
    recovered by a least-squares fit on a 7x7 grid, which is exact up to
    rounding.  The fit runs in long double; ``extended=True`` returns the
    long double coefficients instead of rounding them to float.

    Returns
    -------
    alpha : ndarray, shape (6,) + broadcast(t, y).shape
    b0, b1 : ndarray, shape (16,) + broadcast(t, y).shape
    """
    pair = get_model(pair)
    t, y = np.broadcast_arrays(np.asarray(t, dtype=_XP), np.asarray(y, dtype=_XP))
    ex = (slice(None),) + (None,) * t.ndim
    n, n2 = _FIT_N[ex], _FIT_N2[ex]
    ah = np.broadcast_to(a_coeff(pair, "half", n, n2, t, 1.0, y, params), n.shape[:1] + t.shape)
    a0 = np.broadcast_to(a_coeff(pair, "one", n, n2, t, 0.0, y, params), n.shape[:1] + t.shape)
    a1 = np.broadcast_to(a_coeff(pair, "one", n, n2, t, 1.0, y, params), n.shape[:1] + t.shape)
    alpha = np.tensordot(_PINV_ODD, ah, axes=1)
    b0 = np.tensordot(_PINV_EVEN, a0, axes=1)
    b1 = np.tensordot(_PINV_EVEN, a1, axes=1) - b0
    if extended:
        return alpha, b0, b1
    return alpha.astype(float), b0.astype(float), b1.astype(float)


def _tau2_weight(pair: ModelPair, y):
    # average of tau^2 at fixed y: 1/3 after the trivial y-integral (TE),
    # (1 - y^2)/2 inside the y-integral (TM)
    y = np.asarray(y, dtype=float)
    return (1.0 - y * y) / 2.0 if pair.is_tm else np.full_like(y, 1.0 / 3.0)


def mas_mean(pair, s: int, t, y, params: PlasmaParams, tau=None):
    """Chain expectation of the order-eps bracket of the asymptotic element.

    <sum_{i<j} a^(1/2)_i a^(1/2)_j + sum_i a^(1)_i> over the normalized
    chain Gaussian with s integration variables (including the factor
    (s+1)^{-1/2}).  With ``tau=None`` tau^2 is replaced by its angular
    weight (1/3 for TE, (1 - y^2)/2 for TM), otherwise the given tau is used.
    The sqrt(eps) bracket has zero expectation by parity and is not returned.
    """
    pair = get_model(pair)
    if s < 0:
        raise ValueError("s must be nonnegative")
    N = s + 1
    U, T = chain_sums(N)
    alpha, b0, b1 = chain_coefficients(pair, t, y, params)
    w = _tau2_weight(pair, y) if tau is None else np.asarray(tau, dtype=float) ** 2
    val = (
        np.tensordot(U, b0, axes=1)
        + w * (np.tensordot(U, b1, axes=1) + np.einsum("a...,ab,b...->...", alpha, T, alpha))
    )
    val = val * N**-0.5
    return val if np.ndim(val) else float(val)


# ---------------------------------------------------------------------------
# Generic integrand
# ---------------------------------------------------------------------------

_TABLE_CACHE: dict = {}


def _chain_tables(S: int):
    if S not in _TABLE_CACHE:
        U = np.empty((S, len(EVEN_MONOMIALS)))
        T = np.empty((S, len(ODD_MONOMIALS), len(ODD_MONOMIALS)))
        for N in range(1, S + 1):
            U[N - 1], T[N - 1] = chain_sums(N)
        _TABLE_CACHE[S] = (U, T)
    return _TABLE_CACHE[S]


#: powers of N that survive in the combined bracket; the other Laurent
#: coefficients cancel identically between the U and T contributions
BRACKET_SUPPORT = (-1, 3)


def _laurent_weights(pair, t, y, params):
    """Per-node coefficients d_k of N^k in the chain bracket, and h.

    Coefficients outside :data:`BRACKET_SUPPORT` vanish analytically but
    carry rounding noise of relative size 1e-16 against summands that grow
    like 1/t; since they multiply Li_{3/2-k}(X) ~ t^{k-5/2} they are set to
    zero after checking that they are at rounding level.
    """
    pair = get_model(pair)
    u, tt = _laurent_tables_xp()
    alpha, b0, b1 = chain_coefficients(pair, t, y, params, extended=True)
    h = _tau2_weight(pair, y)
    hx = h.astype(_XP)
    tt_part = np.einsum("a...,abk,b...->k...", alpha, tt, alpha)
    d = np.tensordot(u.T, b0, axes=1) + hx * (np.tensordot(u.T, b1, axes=1) + tt_part)
    scale = (np.tensordot(np.abs(u.T), np.abs(b0), axes=1)
             + np.abs(hx) * (np.tensordot(np.abs(u.T), np.abs(b1), axes=1)
                             + np.einsum("a...,abk,b...->k...", np.abs(alpha), np.abs(tt), np.abs(alpha))))
    ks = np.array(LAURENT_POWERS)
    drop = (ks < BRACKET_SUPPORT[0]) | (ks > BRACKET_SUPPORT[1])
    if np.any(np.abs(d[drop]) > 1e-9 * (scale[drop] + np.max(scale, axis=0))):
        raise RuntimeError("chain bracket has Laurent terms outside the expected support")
    d[drop] = 0.0
    return d.astype(float), alpha.astype(float), b0.astype(float), b1.astype(float), h


@lru_cache(maxsize=None)
def _laurent_tables_xp():
    _, _, exact = laurent_tables()
    u = np.array([[_to_xp(c) for c in exact[("U", m)]] for m in EVEN_MONOMIALS])
    tt = np.array([[[_to_xp(c) for c in exact[("T", m1, m2)]] for m2 in ODD_MONOMIALS]
                   for m1 in ODD_MONOMIALS])
    return u, tt


def f1_integrand(pair, t, y, params: PlasmaParams, *, s_max: int = 60, tail_tol: float = 1e-10,
                 method: str = "series", return_error: bool = False):
    """G(t, y) of the generic route.

    ``method="series"`` sums N = 1 .. s_max + 1 with float chain moments and
    adds the remaining tail in closed form whenever the certified geometric
    bound on it exceeds ``tail_tol`` relative to the partial sum.
    ``method="resummed"`` uses the Laurent form of the chain sums for all N,
    G = sum_k d_k Li_{3/2-k}(X).

    With ``return_error=True`` also returns the neglected-tail bound per
    node (zero where the tail was added exactly).
    """
    pair = get_model(pair)
    t, y = np.broadcast_arrays(np.asarray(t, dtype=float), np.asarray(y, dtype=float))
    mu = li_log_argument(pair, t, y, params)
    X = np.exp(-mu)
    d, alpha, b0, b1, h = _laurent_weights(pair, t, y, params)
    ks = np.array(LAURENT_POWERS, dtype=float)
    if method == "resummed":
        val = sum(d[i] * polylog_exp(1.5 - k, mu) for i, k in enumerate(ks))
        err = np.zeros_like(X)
    elif method == "series":
        S = s_max + 1
        U, T = _chain_tables(S)
        Ns = np.arange(1, S + 1, dtype=float)
        brk = (np.tensordot(U, b0, axes=1)
               + h * (np.tensordot(U, b1, axes=1) + np.einsum("a...,nab,b...->n...", alpha, T, alpha)))
        ex = (slice(None),) + (None,) * X.ndim
        XN = X[None] ** Ns[ex]
        partial = np.sum(XN * Ns[ex] ** -1.5 * brk, axis=0)
        # certified bound: |term_N| <= X^N N^{-3/2} sum_k |d_k| N^k, and the
        # bound's successive ratio is at most X (1 + 1/(S+1))^{k_max}
        N1 = S + 1.0
        b_first = X**N1 * N1**-1.5 * np.tensordot(N1**ks, np.abs(d), axes=1)
        rho = X * (1.0 + 1.0 / N1) ** max(ks.max(), 0.0)
        with np.errstate(divide="ignore"):
            bound = np.where(rho < 1.0, b_first / (1.0 - np.minimum(rho, 1.0 - 1e-300)), np.inf)
        need = bound > tail_tol * np.abs(partial)
        tail = np.zeros_like(X)
        if np.any(need):
            Xn, mun = X[need], mu[need]
            dn = d[:, need]
            for i, k in enumerate(ks):
                head = np.sum(Xn[None] ** Ns[:, None] * Ns[:, None] ** (k - 1.5), axis=0)
                tail[need] += dn[i] * (polylog_exp(1.5 - k, mun) - head)
        val = partial + tail
        err = np.where(need, 0.0, bound)
    else:
        raise ValueError("method must be 'series' or 'resummed'")
    if return_error:
        return val, err
    return val


def small_t_cut(pair: ModelPair, params: PlasmaParams) -> float:
    """Lower end of the direct t-quadrature of the generic route.

    Below it the chain bracket is dominated by rounding (its summands grow
    like 1/t while the result stays O(t)); the rounding error relative to G
    behaves like 3e-17 (min(1, Omega_L)/t)^2, and the t-structure of the
    integrand is set by min(1, Omega_L, omega_L).
    """
    scale = min(1.0, params.Omega_L)
    if pair.dielectric:
        scale = min(scale, params.omega_L)
    return 1e-3 * scale


def _small_t_integral(f, t_s: float):
    """int_0^{t_s} f dt for f analytic in sqrt(t), from samples on [t_s, 9 t_s].

    f is fitted as a polynomial in u = sqrt(t/t_s) and integrated exactly;
    the difference between degree 7 and degree 5 fits is the error estimate.
    """
    k = np.arange(12)
    u = 2.0 - np.cos((2 * k + 1) * np.pi / 24)  # Chebyshev nodes on [1, 3]
    fu = np.asarray(f(t_s * u * u), dtype=float)
    out = []
    for deg in (7, 5):
        V = np.vander(u, deg + 1, increasing=True)
        c = np.linalg.lstsq(V, fu, rcond=None)[0]
        out.append(t_s * float(np.sum(c * 2.0 / (np.arange(deg + 1) + 2.0))))
    return out[0], abs(out[0] - out[1])


_ROUNDING_REL = 1e-18


def _f1h_f1(pair: ModelPair, params: PlasmaParams, spec: QuadSpec, method: str) -> QuadResult:
    flags = []

    def G(tt, yy):
        # a neglected tail is below series_tail_tol relative to each node value
        return f1_integrand(pair, tt, yy, params, s_max=spec.s_max, tail_tol=spec.series_tail_tol,
                            method=method)

    inner_t, inner_e = [], []
    if not pair.is_tm:
        def ft(t):
            return t**1.5 * G(t, np.ones_like(t))
    else:
        ybp = _y_breakpoints(params)

        def ft(t):
            # the bracket carries relative rounding noise ~3e-20/t^2 (long
            # double extraction); do not ask the y-quadrature for less
            floor = _ROUNDING_REL / float(np.min(t)) ** 2
            sp = spec if floor <= spec.rel_tol else spec.replace(rel_tol=floor)
            v, e, ok = _inner_y(G, t, sp, ybp)
            # a y-integral stopped by rounding noise is accepted when small;
            # its error enters the total through inner_e
            flags.append(ok or bool(np.all(e <= 1e-6 * np.abs(v) + spec.abs_tol)))
            inner_t.append(t)
            inner_e.append(t**1.5 * e)
            return t**1.5 * v

    t_s = small_t_cut(pair, params)
    head, head_err = _small_t_integral(ft, t_s)
    res = integrate_semiinf(ft, spec, t_min=t_s, scales=_t_scales(params))
    val = res.value + head
    err = res.error_estimate + head_err + spec.series_tail_tol * abs(val)
    if inner_t:
        tt = np.concatenate(inner_t)
        order = np.argsort(tt)
        err += float(np.trapezoid(np.concatenate(inner_e)[order], tt[order]))
    ok = res.converged and all(flags) and head_err <= max(spec.abs_tol, spec.rel_tol * abs(val))
    return QuadResult(C_PFA * val, C_PFA * err, ok)


def f1_series(pair, params: PlasmaParams, spec: QuadSpec = QuadSpec(), *, method: str = "series"):
    """f1 of any model by the generic chain machinery.

    Returns
    -------
    (value, error_estimate)

    Raises
    ------
    RuntimeError
        If the quadrature does not converge.
    """
    pair = get_model(pair)
    if not params.Omega_L > 0:
        raise ValueError("Omega_L must be positive")
    if pair.dielectric and not params.omega_L > 0:
        raise ValueError("omega_L must be positive for the dielectric models")
    res = _f1h_f1(pair, params, spec, method)
    if not res.converged:
        raise RuntimeError(f"f1 quadrature did not converge (err {res.error_estimate:.3g})")
    f1h = F1.f1h(pair.mode)
    return res.value / f1h, res.error_estimate / abs(f1h)


# ---------------------------------------------------------------------------
# Closed forms for the plasma-sheet pair
# ---------------------------------------------------------------------------

def g_dd(mode, t, y=None, Omega_L: float = 1.0):
    """Polylog combinations g of the plasma-sheet pair, as printed.

    These lack the positive factor 1/(144 t (Omega_L + t)^2) (TE) or
    1/(96 t (t y^2 + Omega_L)^2) (TM); see :func:`g_dd_normalized`.
    """
    mode = _mode(mode)
    t = np.asarray(t, dtype=float)
    W = Omega_L
    if mode == "TE":
        # argument e^{-2t} W^2/(W + t)^2 passed as its negative logarithm
        z = 2 * t + 2 * np.log1p(t / W)
        out = (
            (16 * t**4 + 32 * W * t**3 + 32 * t**3 + 16 * W**2 * t**2 + 32 * W * t**2 + 16 * t**2) * polylog_exp(-1.5, z)
            + (-40 * t**3 - 80 * W * t**2 - 24 * t**2 - 40 * W**2 * t - 40 * W * t) * polylog_exp(-0.5, z)
            + (32 * t**4 + 64 * W * t**3 + 16 * t**3 + 32 * W**2 * t**2 + 16 * W * t**2 + 11 * t**2 + 30 * W * t
               + 15 * W**2) * polylog_exp(0.5, z)
            + (-8 * t**3 - 16 * W * t**2 + 12 * t**2 - 8 * W**2 * t + 16 * W * t) * polylog_exp(1.5, z)
            + (-3 * W**2 - 6 * t * W - 3 * t**2) * polylog_exp(2.5, z)
        )
        return out if np.ndim(out) else float(out)
    if y is None:
        raise ValueError("TM needs y")
    y = np.asarray(y, dtype=float)
    y2 = y * y
    z = 2 * t + 2 * np.log1p(t * y2 / W)
    out = (
        -16 * t**2 * (y2 - 1) * ((t - 1) * y2 + W) ** 2 * polylog_exp(-1.5, z)
        - 8 * t * (t * (-3 * y2 + t * (y2 + 3) - 1) * y2**2 + W * (-5 * y2 + 2 * t * (y2 + 3) + 1) * y2
                   + W**2 * (y2 + 3)) * polylog_exp(-0.5, z)
        + (-32 * t**4 * y2**3 + 16 * t**3 * y2**3 - 23 * t**2 * y2**3 + 32 * t**4 * y2**2 - 64 * W * t**3 * y2**2
           - 16 * t**3 * y2**2 + 16 * W * t**2 * y2**2 - 49 * t**2 * y2**2 - 54 * W * t * y2**2
           + 64 * W * t**3 * y2 - 27 * W**2 * y2 - 32 * W**2 * t**2 * y2 - 16 * W * t**2 * y2 - 90 * W * t * y2
           - 45 * W**2 + 32 * W**2 * t**2) * polylog_exp(0.5, z)
        + (-16 * t**3 * y2**3 - 32 * W * t**2 * y2**2 - 8 * t**2 * y2**2 - 4 * W * t * y2**2 - 16 * W**2 * t * y2
           - 4 * W * t * y2) * polylog_exp(1.5, z)
        + (-6 * t**2 * y2**3 - 12 * W * t * y2**2 - 6 * W**2 * y2) * polylog_exp(2.5, z)
    )
    return out if np.ndim(out) else float(out)


def g_dd_normalized(mode, t, y=None, Omega_L: float = 1.0):
    """g of the plasma-sheet pair with its missing denominator restored.

    Equals the generic integrand G(t, y) of :func:`f1_integrand`.
    """
    mode = _mode(mode)
    t = np.asarray(t, dtype=float)
    if mode == "TE":
        out = g_dd("TE", t, None, Omega_L) / (144.0 * t * (Omega_L + t) ** 2)
    else:
        y = np.asarray(y, dtype=float)
        out = g_dd("TM", t, y, Omega_L) / (96.0 * t * (t * y * y + Omega_L) ** 2)
    return out if np.ndim(out) else float(out)


def f1_dd_closed(mode, Omega_L: float, spec: QuadSpec = QuadSpec()) -> QuadResult:
    """f1 of the plasma-sheet pair from the closed polylog forms.

    C/f1h int dt t^{3/2} [int_0^1 dy] g_normalized, with C/f1h equal to
    (480 sqrt2/pi^{9/2}) 36/7 for TE and (480 sqrt2/pi^{9/2})/(7/36 - 40/(3 pi^2))
    for TM.
    """
    mode = _mode(mode)
    if not Omega_L > 0:
        raise ValueError("Omega_L must be positive")
    pref = C_PFA / F1.f1h(mode)
    if mode == "TE":
        res = integrate_semiinf(lambda t: t**1.5 * g_dd_normalized("TE", t, None, Omega_L), spec,
                               scales=(Omega_L,))
        ok = res.converged
        err = res.error_estimate
    else:
        flags = []
        ybp = _y_breakpoints(PlasmaParams(Omega_L))

        def ft(t):
            v, e, ok_ = _inner_y(lambda tt, yy: g_dd_normalized("TM", tt, yy, Omega_L), t, spec, ybp)
            flags.append(ok_)
            return t**1.5 * v

        res = integrate_semiinf(ft, spec, scales=(Omega_L,))
        ok = res.converged and all(flags)
        err = 1.5 * res.error_estimate
    return QuadResult(pref * res.value, abs(pref) * err, ok)


def f1_small_limit(mode, Omega_L: float) -> float:
    """Leading small-Omega_L form: 720 sqrt2/(7 pi^{7/2}) Omega_L^{3/2} (TE), 0.92 sqrt(Omega_L) (TM)."""
    mode = _mode(mode)
    if Omega_L < 0:
        raise ValueError("Omega_L must be nonnegative")
    if mode == "TE":
        return 720.0 * math.sqrt(2.0) / (7.0 * math.pi**3.5) * Omega_L**1.5
    return 0.92 * math.sqrt(Omega_L)


def energy(pair, geom: Geometry, params: PlasmaParams, spec: QuadSpec = QuadSpec()) -> EnergyBreakdown:
    """PFA energy and its first correction for a geometry.

    E = -pi^3/(1920 sqrt2 L^2) sqrt(R/L) (f0 + eps f1h f1); ``params`` are
    the dimensionless Omega_L, omega_L.
    """
    pair = get_model(pair)
    v0, e0 = f0(pair, params, spec)
    v1, e1 = f1_series(pair, params, spec)
    eh = hard_energy(geom)
    f1h = F1.f1h(pair.mode)
    return EnergyBreakdown(
        f0=v0,
        f1=v1,
        E_pfa=eh * v0,
        E_total=eh * (v0 + geom.epsilon * f1h * v1),
        err_f0=e0,
        err_f1=e1,
    )
