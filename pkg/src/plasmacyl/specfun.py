"""Special functions and quadrature engines.

Everything here works on the real axis only.  Modified Bessel functions are
available in a log-scaled form so that orders of several hundred can be used
at small arguments without overflow, the polylogarithm covers the
half-integer orders needed by the Lifshitz-type integrals, and the adaptive
Gauss-Kronrod engine integrates scalar or vector-valued integrands over
finite, unit and semi-infinite ranges.
"""

from __future__ import annotations

import heapq
import math
import dataclasses
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import special

__all__ = [
    "AccuracyWarning",
    "BesselPair",
    "BesselTable",
    "QuadResult",
    "QuadSpec",
    "bessel_ik",
    "bessel_table",
    "gamma_half",
    "integrate",
    "integrate_semiinf",
    "integrate_unit",
    "log_bessel_ik",
    "polylog",
    "polylog_exp",
    "SUPPORTED_POLYLOG_ORDERS",
]


class AccuracyWarning(UserWarning):
    """Raised as a warning when a request leaves the validated range."""


# ---------------------------------------------------------------------------
# Modified Bessel functions
# ---------------------------------------------------------------------------

BESSEL_M_MAX = 600
BESSEL_X_RANGE = (1e-4, 2000.0)


@dataclass(frozen=True)
class BesselPair:
    """Value and derivative of a modified Bessel function.

    The true value is ``value * exp(log_scale)`` (same for the derivative).
    ``scaled_flag`` is True whenever a nonzero scale was factored out, which
    is always the case for arguments where the plain double would overflow
    or underflow.
    """

    value: float
    derivative: float
    scaled_flag: bool
    log_scale: float = 0.0

    def unscaled(self) -> tuple[float, float]:
        """Return ``(value, derivative)`` without scaling (may over/underflow)."""
        f = math.exp(self.log_scale) if self.log_scale < 709 else math.inf
        return self.value * f, self.derivative * f


@dataclass(frozen=True)
class BesselTable:
    """Log-scaled tables of I_m(x), K_m(x) for m = 0..m_max.

    Arrays have shape ``(m_max + 1,) + x.shape``.  ``log_i`` and ``log_k``
    are natural logs of I_m and K_m.  ``dlog_i`` = I'_m/I_m and
    ``dlog_k`` = K'_m/K_m (the latter is negative).
    """

    x: np.ndarray
    log_i: np.ndarray
    log_k: np.ndarray
    dlog_i: np.ndarray
    dlog_k: np.ndarray

    def log_ik(self) -> np.ndarray:
        """log(I_m K_m), free of overflow for every tabulated pair."""
        return self.log_i + self.log_k

    def ik_prime(self) -> np.ndarray:
        """I'_m K'_m (negative), evaluated without forming I'_m or K'_m."""
        return np.exp(self.log_ik()) * self.dlog_i * self.dlog_k


def bessel_table(m_max: int, x) -> BesselTable:
    """Tabulate I_m(x), K_m(x) and log-derivatives for m = 0..m_max.

    K is built by forward recurrence of the ratio K_{m+1}/K_m seeded with
    the scaled K_0, K_1 from scipy; the ratio I_{m+1}/I_m comes from a
    backward recurrence started well above ``max(m_max, x)``.  The Wronskian
    ``I_m K_{m+1} + I_{m+1} K_m = 1/x`` then fixes I_m absolutely.
    """
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0) or not np.all(np.isfinite(x)):
        raise ValueError("bessel_table needs finite x > 0")
    if m_max < 0:
        raise ValueError("m_max must be nonnegative")
    shape = (m_max + 1,) + x.shape

    # K ratios q_m = K_{m+1}/K_m, forward (K is the dominant solution).
    q = np.empty(shape)
    q[0] = special.k1e(x) / special.k0e(x)
    for m in range(1, m_max + 1):
        q[m] = 1.0 / q[m - 1] + 2.0 * m / x
    log_k = np.empty(shape)
    log_k[0] = np.log(special.k0e(x)) - x
    if m_max > 0:
        log_k[1:] = log_k[0] + np.cumsum(np.log(q[:-1]), axis=0)

    # I ratios r_m = I_{m+1}/I_m, backward from a start order where the
    # starting guess no longer matters.
    top = int(max(m_max, float(np.max(x)))) + 40 + int(4.0 * math.sqrt(float(np.max(x))) * 6)
    nu = top + 1.5
    r = x / (nu + np.sqrt(nu * nu + x * x))
    rs = np.empty(shape)
    for m in range(top, 0, -1):
        r = 1.0 / (2.0 * m / x + r)
        if m - 1 <= m_max:
            rs[m - 1] = r
    # rs[m] now holds I_{m+1}/I_m for m = 0..m_max
    log_i = -np.log(x) - log_k - np.log(q + rs)
    m_col = np.arange(m_max + 1, dtype=float).reshape((-1,) + (1,) * x.ndim)
    dlog_i = rs + m_col / x
    dlog_k = m_col / x - q
    return BesselTable(x=x, log_i=log_i, log_k=log_k, dlog_i=dlog_i, dlog_k=dlog_k)


def log_bessel_ik(nu, x) -> BesselTable:
    """log I_nu(x), log K_nu(x) and their log-derivatives for real nu >= 0.

    Elementwise over broadcast ``nu`` and ``x``.  Scaled scipy values are
    used where they are representable; otherwise K is carried up from the
    fractional part of nu by the forward ratio recurrence, the I ratio comes
    from a backward recurrence, and the Wronskian fixes log I.
    """
    nu, x = np.broadcast_arrays(np.abs(np.asarray(nu, dtype=float)), np.asarray(x, dtype=float))
    if np.any(x <= 0) or not np.all(np.isfinite(x)) or not np.all(np.isfinite(nu)):
        raise ValueError("log_bessel_ik needs finite x > 0 and finite nu")
    shape = nu.shape
    nu, x = nu.ravel().copy(), x.ravel().copy()
    out = [np.empty(nu.size) for _ in range(4)]
    with np.errstate(all="ignore"):
        ie0, ie1 = special.ive(nu, x), special.ive(nu + 1, x)
        ke0, ke1 = special.kve(nu, x), special.kve(nu + 1, x)
    lo, hi = 1e-280, 1e280
    fast = (ie0 > lo) & (ie1 > lo) & (ke0 < hi) & (ke1 < hi) & np.isfinite(ke1)
    if np.any(fast):
        f = fast
        out[0][f] = np.log(ie0[f]) + x[f]
        out[1][f] = np.log(ke0[f]) - x[f]
        out[2][f] = ie1[f] / ie0[f] + nu[f] / x[f]
        out[3][f] = nu[f] / x[f] - ke1[f] / ke0[f]
    slow = ~fast
    if np.any(slow):
        v, xs = nu[slow], x[slow]
        steps = np.floor(v)
        frac = v - steps
        log_k = np.log(special.kve(frac, xs)) - xs
        q = special.kve(frac + 1, xs) / special.kve(frac, xs)
        for j in range(1, int(steps.max()) + 1):
            act = j <= steps
            log_k = np.where(act, log_k + np.log(q), log_k)
            q = np.where(act, 1.0 / q + 2.0 * (frac + j) / xs, q)
        extra = 40 + int(24.0 * math.sqrt(float(xs.max())))
        top = v + extra + 1.0
        r = xs / (top + np.sqrt(top * top + xs * xs))
        for j in range(extra, -1, -1):
            r = 1.0 / (2.0 * (v + j + 1.0) / xs + r)
        out[0][slow] = -np.log(xs) - log_k - np.log(q + r)
        out[1][slow] = log_k
        out[2][slow] = r + v / xs
        out[3][slow] = v / xs - q
    res = [a.reshape(shape) for a in out]
    return BesselTable(x=x.reshape(shape), log_i=res[0], log_k=res[1], dlog_i=res[2], dlog_k=res[3])


def bessel_ik(m: int, x: float, *, warn: bool = True) -> tuple[BesselPair, BesselPair]:
    """Return ``(I_m(x), K_m(x))`` with derivatives as :class:`BesselPair`.

    Within the double range scipy's exponentially scaled ``ive``/``kve`` are
    used directly (scale e^{x} for I, e^{-x} for K); otherwise the log-space
    recurrence of :func:`bessel_table` supplies a mantissa and a log scale.

    Raises
    ------
    ValueError
        For ``x <= 0`` or negative ``m``.
    """
    if not x > 0 or not math.isfinite(x):
        raise ValueError("bessel_ik needs finite x > 0")
    if m < 0 or int(m) != m:
        raise ValueError("order m must be a nonnegative integer")
    m = int(m)
    if warn and (m > BESSEL_M_MAX or not BESSEL_X_RANGE[0] <= x <= BESSEL_X_RANGE[1]):
        import warnings

        warnings.warn(f"bessel_ik({m}, {x}) is outside the validated range", AccuracyWarning, stacklevel=2)

    iv0, iv1 = special.ive(m, x), special.ive(m + 1, x)
    kv0, kv1 = special.kve(m, x), special.kve(m + 1, x)
    vals = np.array([iv0, iv1, kv0, kv1])
    if np.all(np.isfinite(vals)) and np.all(vals > 1e-280) and np.all(vals < 1e280):
        ip = iv1 + m / x * iv0
        kp = -kv1 + m / x * kv0
        return BesselPair(iv0, ip, True, x), BesselPair(kv0, kp, True, -x)

    tab = bessel_table(m, np.array([x]))
    li, lk = float(tab.log_i[m, 0]), float(tab.log_k[m, 0])
    return (
        BesselPair(1.0, float(tab.dlog_i[m, 0]), True, li),
        BesselPair(1.0, float(tab.dlog_k[m, 0]), True, lk),
    )


# ---------------------------------------------------------------------------
# Gamma at half-integers
# ---------------------------------------------------------------------------

def gamma_half(n: int) -> float:
    """Gamma(n + 1/2) = sqrt(pi) (2n-1)!! / 2^n for integer n >= 0."""
    if n < 0 or int(n) != n:
        raise ValueError("n must be a nonnegative integer")
    prod = 1.0
    for k in range(1, int(n) + 1):
        prod *= k - 0.5
    return math.sqrt(math.pi) * prod


# ---------------------------------------------------------------------------
# Polylogarithm of half-integer order
# ---------------------------------------------------------------------------

SUPPORTED_POLYLOG_ORDERS = tuple(k + 0.5 for k in range(-6, 6))

_SERIES_CROSSOVER = 0.5
_N_SERIES = 200
_N_MU = 40


def _zeta(s: float) -> float:
    return float(special.zeta(s))


def _eta(s: float) -> float:
    # Dirichlet eta; finite for every real s
    return (1.0 - 2.0 ** (1.0 - s)) * _zeta(s)


_ZETA_CACHE: dict[float, np.ndarray] = {}
_ETA_CACHE: dict[float, np.ndarray] = {}


def _mu_coefficients(s: float, negative: bool) -> np.ndarray:
    cache = _ETA_CACHE if negative else _ZETA_CACHE
    if s not in cache:
        fn = _eta if negative else _zeta
        cache[s] = np.array([fn(s - k) / math.factorial(k) * (-1.0) ** k for k in range(_N_MU)])
    return cache[s]


def _check_order(s: float) -> float:
    s = float(s)
    if s not in SUPPORTED_POLYLOG_ORDERS:
        raise ValueError(f"polylog order {s} not supported; use one of {SUPPORTED_POLYLOG_ORDERS}")
    return s


def polylog(s: float, z):
    """Li_s(z) = sum_{n>=1} z^n / n^s for half-integer s and real |z| < 1.

    Three branches, all vectorized:

    * ``|z| <= 0.5``: the defining series, truncated once |z|^N N^{-s}
      drops below e^{-40} (at most 200 terms).
    * ``0.5 < z < 1``: expansion in mu = -ln z,
      Li_s = Gamma(1-s) mu^(s-1) + sum_k zeta(s-k) (-mu)^k / k!.
    * ``-1 < z < -0.5``: -Li_s(-e^-mu) = sum_k eta(s-k) (-mu)^k / k!.

    Both mu-series converge for mu < pi; with mu < ln 2 forty terms reach
    roundoff.

    Raises
    ------
    ValueError
        If any ``|z| >= 1`` or the order is unsupported.
    """
    s = _check_order(s)
    z = np.asarray(z, dtype=float)
    if np.any(~(np.abs(z) < 1.0)):
        raise ValueError("polylog needs |z| < 1")
    out = np.empty_like(z)

    small = np.abs(z) <= _SERIES_CROSSOVER
    if np.any(small):
        zs = z[small]
        n = np.arange(1, _N_SERIES + 1, dtype=float)
        zmax = float(np.max(np.abs(zs)))
        if zmax > 0:
            # last kept term z^N N^{-s} below e^{-40}; negative orders grow with N
            lterm = n * math.log(zmax) - s * np.log(n)
            nterms = int(np.argmax((lterm < -40.0) & (n > -s))) + 1
            n = n[: max(4, nterms)]
        # Horner from the highest power down
        acc = np.zeros_like(zs)
        for c in (n ** (-s))[::-1]:
            acc = (acc + c) * zs
        out[small] = acc

    pos = z > _SERIES_CROSSOVER
    if np.any(pos):
        mu = -np.log(z[pos])
        c = _mu_coefficients(s, negative=False)
        out[pos] = math.gamma(1.0 - s) * mu ** (s - 1.0) + np.polynomial.polynomial.polyval(mu, c)

    neg = z < -_SERIES_CROSSOVER
    if np.any(neg):
        mu = -np.log(-z[neg])
        c = _mu_coefficients(s, negative=True)
        out[neg] = -np.polynomial.polynomial.polyval(mu, c)

    return out if out.ndim else float(out)


def polylog_exp(s: float, mu):
    """Li_s(e^{-mu}) for mu > 0, accurate as mu -> 0 where e^{-mu} rounds to 1."""
    s = _check_order(s)
    mu = np.asarray(mu, dtype=float)
    if np.any(~(mu > 0)):
        raise ValueError("polylog_exp needs mu > 0")
    out = np.empty_like(mu)
    near = mu < -math.log(_SERIES_CROSSOVER)
    if np.any(near):
        m = mu[near]
        c = _mu_coefficients(s, negative=False)
        out[near] = math.gamma(1.0 - s) * m ** (s - 1.0) + np.polynomial.polynomial.polyval(m, c)
    if np.any(~near):
        out[~near] = polylog(s, np.exp(-mu[~near]))
    return out if out.ndim else float(out)


# ---------------------------------------------------------------------------
# Adaptive Gauss-Kronrod quadrature
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuadSpec:
    """Tolerances and budgets shared by all quadratures and series."""

    rel_tol: float = 1e-8
    abs_tol: float = 1e-13
    t_max: float = 40.0
    max_subdivisions: int = 2000
    s_max: int = 60
    series_tail_tol: float = 1e-10

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0 and self.series_tail_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.max_subdivisions < 1 or self.s_max < 1:
            raise ValueError("budgets must be positive")
        if math.exp(-2.0 * self.t_max) >= self.abs_tol:
            raise ValueError("t_max too small: need exp(-2 t_max) < abs_tol")

    def replace(self, **kw) -> "QuadSpec":
        return dataclasses.replace(self, **kw)


@dataclass(frozen=True)
class QuadResult:
    """Integral value with an error estimate and convergence flag."""

    value: float
    error_estimate: float
    converged: bool

    def __float__(self) -> float:
        return float(self.value)


def _kronrod21():
    # Gauss-Kronrod 10/21 nodes and weights (standard QUADPACK tables)
    xgk = np.array([
        0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
        0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
        0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
        0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
        0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
        0.0,
    ])
    wgk = np.array([
        0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
        0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
        0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
        0.123491976262065851077208980223048, 0.134709217311473325928054001771707,
        0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
        0.149445554002916905664936468389821,
    ])
    wg = np.array([
        0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
        0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
        0.295524224714752870173892994651338,
    ])
    nodes = np.concatenate([-xgk[:-1], [0.0], xgk[:-1][::-1]])
    wk = np.concatenate([wgk[:-1], [wgk[-1]], wgk[:-1][::-1]])
    wgauss = np.zeros(21)
    # Gauss nodes sit at odd positions of xgk (indices 1, 3, ..., 9)
    for j, idx in enumerate([1, 3, 5, 7, 9]):
        wgauss[idx] = wg[j]
        wgauss[20 - idx] = wg[j]
    return nodes, wk, wgauss


_GK_NODES, _GK_WK, _GK_WG = _kronrod21()


def _gk_batch(f, a: np.ndarray, b: np.ndarray):
    """Apply GK21 to many intervals at once; f may be vector-valued."""
    half = 0.5 * (b - a)
    mid = 0.5 * (b + a)
    x = (mid[:, None] + half[:, None] * _GK_NODES[None, :]).ravel()
    fx = np.asarray(f(x), dtype=float)
    vshape = fx.shape[1:]
    fx = fx.reshape((a.size, 21) + vshape)
    hk = half.reshape((-1,) + (1,) * len(vshape))
    sk = np.tensordot(fx, _GK_WK, axes=([1], [0]))
    k = hk * sk
    g = hk * np.tensordot(fx, _GK_WG, axes=([1], [0]))
    err = np.abs(k - g)
    # QUADPACK-style pessimistic rescaling for smooth integrands
    resasc = hk * np.tensordot(np.abs(fx - 0.5 * sk[:, None]), _GK_WK, axes=([1], [0]))
    with np.errstate(divide="ignore", invalid="ignore"):
        scaled = np.where(resasc > 0, resasc * np.minimum(1.0, (200 * err / resasc) ** 1.5), err)
    err = np.maximum(np.where(np.isfinite(scaled), scaled, err), 50 * np.finfo(float).eps * np.abs(k))
    return k, err


_STALL_BATCHES = 12


def integrate(
    f: Callable[[np.ndarray], np.ndarray],
    breakpoints,
    spec: QuadSpec = QuadSpec(),
) -> tuple[np.ndarray, np.ndarray, bool]:
    """Adaptive GK21 over ``[breakpoints[0], breakpoints[-1]]``.

    ``f`` takes a 1-D node array and returns an array whose leading axis
    matches the nodes; trailing axes make the integrand vector-valued and
    the refinement then targets the worst component.

    Returns
    -------
    value, error, converged
    """
    pts = np.asarray(breakpoints, dtype=float)
    a, b = pts[:-1], pts[1:]
    vals, errs = _gk_batch(f, a, b)
    # heap ordered by largest error (max over vector components)
    heap = []
    store = {}
    for i in range(a.size):
        e = float(np.max(errs[i]))
        heapq.heappush(heap, (-e, i))
        store[i] = (a[i], b[i], vals[i], errs[i])
    next_id = a.size
    total = vals.sum(axis=0)
    total_err = errs.sum(axis=0)
    n_sub = a.size

    def worst() -> float:
        tol = np.maximum(spec.abs_tol, spec.rel_tol * np.abs(total))
        return float(np.max(total_err / tol))

    def done() -> bool:
        return worst() <= 1.0

    # refinement that fails to halve the error over many batches is chasing
    # rounding noise in f; stop and report non-convergence
    history = []
    while not done() and n_sub < spec.max_subdivisions:
        history.append(worst())
        if len(history) > _STALL_BATCHES and history[-1] > 0.5 * history[-1 - _STALL_BATCHES]:
            break
        # split a batch of the worst intervals at once
        nsplit = max(1, min(len(heap), 16))
        picked = [heapq.heappop(heap)[1] for _ in range(nsplit)]
        aa, bb = [], []
        for i in picked:
            ia, ib, iv, ie = store.pop(i)
            total = total - iv
            total_err = total_err - ie
            m = 0.5 * (ia + ib)
            aa += [ia, m]
            bb += [m, ib]
        nv, ne = _gk_batch(f, np.array(aa), np.array(bb))
        for j in range(len(aa)):
            store[next_id] = (aa[j], bb[j], nv[j], ne[j])
            heapq.heappush(heap, (-float(np.max(ne[j])), next_id))
            next_id += 1
        total = total + nv.sum(axis=0)
        total_err = total_err + ne.sum(axis=0)
        n_sub += nsplit
    # recompute sums from the store to shed accumulated rounding
    total = sum(v for _, _, v, _ in store.values())
    total_err = np.abs(sum(e for _, _, _, e in store.values()))
    return total, total_err, done()


def _semiinf_breakpoints(t_max: float, t_min: float = 0.0, scales=()) -> np.ndarray:
    inner = [1e-8, 1e-6, 1e-4, 1e-3, 1e-2, 0.05, 0.2, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0]
    for sc in scales:
        inner += [sc * g for g in (1e-3, 1e-2, 0.1, 0.3, 1.0, 3.0, 10.0)]
    pts = [t_min] + sorted(p for p in set(inner) if t_min * 1.5 < p < t_max) + [t_max]
    return np.array(pts)


def integrate_semiinf(f, spec: QuadSpec = QuadSpec(), *, vector: bool = False, t_min: float = 0.0,
                      scales=()):
    """Integrate ``f`` over (t_min, inf), t_min defaulting to 0.

    The integrand must decay at least like exp(-2t); an integrable t^-alpha
    singularity at 0 is handled by a geometric initial mesh.  The range is
    cut at ``spec.t_max`` and the neglected tail estimated as
    |f(t_max)| t_max / (2 t_max - 6), the tail of f(t_max) (t/t_max)^3
    e^{-2(t-t_max)}.

    ``scales`` lists momenta where f has structure (for example a plasma
    frequency); the initial mesh is graded around each of them.

    With ``vector=True`` the integrand may return extra trailing axes and the
    result value/error are arrays.
    """
    if not 0.0 <= t_min < spec.t_max:
        raise ValueError("t_min must lie in [0, t_max)")
    pts = _semiinf_breakpoints(spec.t_max, t_min, [float(s) for s in scales if 0 < s < math.inf])
    val, err, ok = integrate(f, pts, spec)
    tmax = spec.t_max
    ftail = np.abs(np.asarray(f(np.array([tmax])), dtype=float)[0])
    tail = ftail * tmax / max(2.0 * tmax - 6.0, 1.0)
    err = err + tail
    tol = np.maximum(spec.abs_tol, spec.rel_tol * np.abs(val))
    ok = ok and bool(np.all(err <= tol + tail)) and bool(np.all(tail <= spec.abs_tol))
    if vector:
        return QuadResultArray(np.asarray(val), np.asarray(err), ok)
    return QuadResult(float(val), float(err), ok)


@dataclass(frozen=True)
class QuadResultArray:
    """Vector-valued counterpart of :class:`QuadResult`."""

    value: np.ndarray
    error_estimate: np.ndarray
    converged: bool


def integrate_unit(f, spec: QuadSpec = QuadSpec(), *, infinite: bool = False, vector: bool = False,
                   breakpoints=None):
    """Integrate ``f`` over y in (0, 1), or over (0, inf) when ``infinite``.

    The infinite range is mapped to (0, 1) with y = u / (1 - u),
    dy = du / (1 - u)^2.  ``breakpoints`` (interior points of (0, 1) in the
    integration variable) can be supplied to resolve boundary layers.
    """
    if infinite:
        def g(u):
            u = np.asarray(u, dtype=float)
            one = 1.0 - u
            with np.errstate(divide="ignore", invalid="ignore"):
                y = u / one
                jac = 1.0 / (one * one)
            fy = np.asarray(f(np.where(one > 0, y, 0.0)), dtype=float)
            jac = jac.reshape((-1,) + (1,) * (fy.ndim - 1))
            return np.where(jac < np.inf, fy * jac, 0.0)
        fn = g
    else:
        fn = f
    pts = [0.0, 1e-6, 1e-4, 1e-2, 0.1, 0.5]
    if breakpoints is not None:
        pts = pts + [float(p) for p in np.ravel(breakpoints) if 0.0 < p < 1.0]
    pts = pts + [0.9, 0.99, 1.0]
    pts = np.unique(np.array(pts))
    val, err, ok = integrate(fn, pts, spec)
    if vector:
        return QuadResultArray(np.asarray(val), np.asarray(err), ok)
    return QuadResult(float(val), float(err), ok)
