"""Exact mode-sum oracle for the cylinder-plane interaction energy.

The distance-dependent energy per unit length is

    E = 1/2 int dxi/(2 pi) int dk3/(2 pi) ln det(1 - A(xi, k3)),

with Euclidean frequency xi, rho = sqrt(xi^2 + k3^2) and the matrix
A_{m,m'} = K~_{m,m'} / K0_m over angular momenta m, m'.  Both factors
separate: A = diag(c_m) S diag(d_m') with S_{m,m'} = K_{m+m'} the plane
integral, so det(1 - A) equals det(1 - B) for the symmetric matrix

    B_{m,m'} = sign * sqrt|c_m d_m| S_{m,m'} sqrt|c_m' d_m'|,

which is built in log space (no Bessel overflow) and factored by Cholesky.
Polar coordinates xi = rho sin(alpha), k3 = rho cos(alpha) reduce the
outer integral to alpha in (0, pi/2) and rho in (0, inf); TE integrands do
not depend on alpha.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .asympt import ktilde_exact, r_cyl_exact
from .models import BoundaryKind, Geometry, ModelPair, PlasmaParams, get_model
from .specfun import QuadSpec, bessel_table, integrate, integrate_semiinf, log_bessel_ik

__all__ = [
    "InteractionMatrix",
    "OracleDiagnostics",
    "SpectralRadiusError",
    "TruncationSpec",
    "a_entry",
    "energy_oracle",
    "interaction_logdet",
    "interaction_matrix",
    "k0_diag",
]


class SpectralRadiusError(ValueError):
    """1 - A is not positive definite: overlapping bodies or broken conventions."""


@dataclass(frozen=True)
class TruncationSpec:
    """Angular-momentum truncation m in [-m_max, m_max].

    ``m_max = 0`` starts from ceil(5/eps).  With ``auto_grow`` the start is
    raised to where the diagonal of the interaction matrix has decayed
    (its tail below convergence_tol/10 of the trace), and the range then
    grows by ``grow_step`` until the log-determinant changes by less than
    ``convergence_tol`` relative to its value.
    """

    m_max: int = 0
    convergence_tol: float = 1e-9
    auto_grow: bool = True
    grow_step: int = 5
    m_limit: int = 5000

    def __post_init__(self):
        if self.m_max < 0 or self.grow_step < 1 or self.m_limit < 1:
            raise ValueError("truncation sizes must be positive")
        if not self.convergence_tol > 0:
            raise ValueError("convergence_tol must be positive")


@dataclass(frozen=True)
class InteractionMatrix:
    """A_{m,m'} on m, m' = -m_max..m_max and an estimate of its spectral radius."""

    m: np.ndarray
    entries: np.ndarray
    spectral_radius_estimate: float


@dataclass
class OracleDiagnostics:
    quad_error: float
    m_convergence: float
    m_max_used: int
    converged: bool
    evaluations: int = 0
    notes: list = field(default_factory=list)


# ---------------------------------------------------------------------------
# Single entries (reference implementations)
# ---------------------------------------------------------------------------

def k0_diag(mode, m: int, rho: float, R: float, Omega: float, omega: float = 0.0) -> float:
    """Diagonal cylinder kernel K0_m of the plasma shell.

    TE: (2 Omega/R)(1 + 2 Omega R I_m K_m);
    TM: (-2 Omega/(omega^2 R))(1 - (2 Omega rho^2 R/omega^2) I'_m K'_m),
    Bessel functions at rho R.
    """
    kind = _cyl_kind(mode)
    b = log_bessel_ik(abs(m), rho * R)
    ik = math.exp(float(b.log_i + b.log_k))
    if kind is BoundaryKind.DeltaTE:
        return 2 * Omega / R * (1 + 2 * Omega * R * ik)
    if omega == 0:
        raise ValueError("the TM kernel needs omega != 0")
    ipkp = ik * float(b.dlog_i * b.dlog_k)
    return -2 * Omega / (omega**2 * R) * (1 - 2 * Omega * rho**2 * R / omega**2 * ipkp)


def a_entry(pair, m: int, m2: int, omega: float, k3: float, geom: Geometry, params: PlasmaParams,
            spec: QuadSpec = QuadSpec(rel_tol=1e-12)) -> float:
    """A_{m,m'} = R-factor * K_{m+m'} for one entry (dimensional omega, k3)."""
    pair = get_model(pair)
    rho = math.hypot(omega, k3)
    if not rho > 0:
        raise ValueError("rho must be positive")
    Omega, omega_p = params.dimensional(geom.L)
    r = r_cyl_exact(pair.cyl, abs(m), abs(m2), rho, geom.R, Omega, omega)
    k = ktilde_exact(pair.plane, m + m2, geom.a, rho, omega, Omega, omega_p, spec=spec)
    return float(r * k)


def _cyl_kind(mode) -> BoundaryKind:
    if isinstance(mode, BoundaryKind):
        return mode
    mode = str(mode).upper()
    if mode in ("TE", "DELTA-TE"):
        return BoundaryKind.DeltaTE
    if mode in ("TM", "DELTA-TM"):
        return BoundaryKind.DeltaTM
    raise ValueError("mode must be 'TE' or 'TM'")


# ---------------------------------------------------------------------------
# Matrix assembly
# ---------------------------------------------------------------------------

_KTILDE_SPEC = QuadSpec(rel_tol=1e-10)  # well below the truncation tolerance, above rounding


def _log_weights(pair: ModelPair, M: int, rho: float, omega: float, R: float, Omega: float):
    """log|c_m d_m| and its sign for m = 0..M (c d = f I/K, or f I'/K' for TM)."""
    x = rho * R
    tab = bessel_table(M, x)
    lik = tab.log_i + tab.log_k
    if pair.is_tm:
        ipkp = -np.exp(lik) * tab.dlog_i * np.abs(tab.dlog_k)  # I'K' < 0
        if math.isinf(Omega):
            lf = np.zeros(M + 1)
        else:
            lf = -np.log1p(omega**2 / (2 * Omega * R * rho**2) / np.abs(ipkp))
        lw = lf + tab.log_i + np.log(tab.dlog_i) - tab.log_k - np.log(np.abs(tab.dlog_k))
        return lw, -1.0
    lf = np.zeros(M + 1) if math.isinf(Omega) else -np.log1p(np.exp(-lik) / (2 * Omega * R))
    return lf + tab.log_i - tab.log_k, 1.0


def _plane_log(pair: ModelPair, mu_max: int, a: float, rho: float, omega: float, Omega: float,
               omega_p: float, dirichlet: bool):
    mus = np.arange(mu_max + 1)
    if dirichlet:
        return log_bessel_ik(mus, 2 * a * rho).log_k, 1.0
    lk, sign = ktilde_exact(pair.plane, mus, a, rho, omega, Omega, omega_p, spec=_KTILDE_SPEC, log=True)
    return np.asarray(lk), sign


class _Assembler:
    """Log weights and plane integrals at one (rho, omega), grown on demand."""

    def __init__(self, pair, rho, omega, geom, Omega, omega_p, dirichlet=False):
        self.pair, self.rho, self.omega = pair, rho, omega
        self.geom, self.Omega, self.omega_p = geom, Omega, omega_p
        self.dirichlet = dirichlet
        self.M = -1

    def _ensure(self, M):
        if M <= self.M:
            return
        M = max(M, int(1.3 * self.M))
        R = self.geom.R
        Om = math.inf if self.dirichlet else self.Omega
        self.lw, self.sw = _log_weights(self.pair, M, self.rho, self.omega, R, Om)
        self.lk, self.sk = _plane_log(self.pair, 2 * M, self.geom.a, self.rho, self.omega,
                                      self.Omega, self.omega_p, self.dirichlet)
        self.M = M

    def symmetric(self, M):
        self._ensure(M)
        m = np.arange(-M, M + 1)
        lw = self.lw[np.abs(m)]
        lb = 0.5 * (lw[:, None] + lw[None, :]) + self.lk[np.abs(m[:, None] + m[None, :])]
        return self.sw * self.sk * np.exp(lb)

    def nonsymmetric(self, M):
        self._ensure(M)
        x = self.rho * self.geom.R
        tab = bessel_table(M, x)
        m = np.arange(-M, M + 1)
        am = np.abs(m)
        lw, sw = self.lw[am], self.sw
        # c_m = w_m / d_m with d_m = I_m (TE) or I'_m (TM), both positive
        ld = tab.log_i[am] + (np.log(tab.dlog_i[am]) if self.pair.is_tm else 0.0)
        return sw * self.sk * np.exp((lw - ld)[:, None] + ld[None, :] + self.lk[np.abs(m[:, None] + m[None, :])])


def _logdet(B: np.ndarray) -> float:
    norm = float(np.max(np.sum(np.abs(B), axis=1))) if B.size else 0.0
    if norm < 1e-3:
        # Cholesky of 1 - B would round away the small eigenvalues
        return float(np.sum(np.log1p(-np.linalg.eigvalsh(B))))
    try:
        c = np.linalg.cholesky(np.eye(B.shape[0]) - B)
    except np.linalg.LinAlgError:
        raise SpectralRadiusError("1 - A is not positive definite (spectral radius >= 1)") from None
    return 2.0 * float(np.sum(np.log(np.diag(c))))


def _start_size(trunc: TruncationSpec, geom: Geometry, rho: float) -> int:
    M = trunc.m_max if trunc.m_max > 0 else math.ceil(5 / geom.epsilon)
    return min(M, trunc.m_limit)


def _diagonal_size(asm: _Assembler, trunc: TruncationSpec, M0: int) -> int:
    """Smallest M whose diagonal tail sum_{|m|>M} |B_mm| is below tol/10 of tr B.

    To first order ln det(1 - B) = -tr B, so the diagonal tail estimates
    the truncation error.
    """
    cap = max(M0, math.ceil(2 * asm.rho * asm.geom.R) + 20)
    while True:
        cap = min(cap, trunc.m_limit)
        asm._ensure(cap)
        d = np.exp(asm.lw[: cap + 1] + asm.lk[: 2 * cap + 1 : 2])
        total = d[0] + 2 * d[1:].sum()
        tail = 2 * (d[::-1].cumsum()[::-1] - d)  # tail[k] = 2 sum_{m > k} d_m
        ok = np.nonzero(tail <= 0.1 * trunc.convergence_tol * total)[0]
        if ok.size or cap >= trunc.m_limit:
            return int(ok[0]) if ok.size else cap
        cap *= 2


def _logdet_auto(asm: _Assembler, trunc: TruncationSpec, geom: Geometry):
    """(logdet, |change over the last grow step|, m_max used, converged)."""
    M = _start_size(trunc, geom, asm.rho)
    if not trunc.auto_grow:
        return _logdet(asm.symmetric(M)), math.nan, M, True
    M = max(M, _diagonal_size(asm, trunc, M) + trunc.grow_step)
    prev = _logdet(asm.symmetric(M - trunc.grow_step))
    val = _logdet(asm.symmetric(M))
    while abs(val - prev) > trunc.convergence_tol * abs(val) + 1e-300:
        if M + trunc.grow_step > trunc.m_limit:
            return val, abs(val - prev), M, False
        M += trunc.grow_step
        prev, val = val, _logdet(asm.symmetric(M))
    return val, abs(val - prev), M, True


def interaction_matrix(pair, omega: float, k3: float, m_max: int, geom: Geometry,
                       params: PlasmaParams) -> InteractionMatrix:
    """The (non-symmetric) matrix A_{m,m'} on |m|, |m'| <= m_max."""
    pair = get_model(pair)
    rho = math.hypot(omega, k3)
    Omega, omega_p = params.dimensional(geom.L)
    asm = _Assembler(pair, rho, omega, geom, Omega, omega_p)
    A = asm.nonsymmetric(m_max)
    radius = float(np.max(np.abs(np.linalg.eigvalsh(asm.symmetric(m_max)))))
    return InteractionMatrix(np.arange(-m_max, m_max + 1), A, radius)


def interaction_logdet(pair, omega: float, k3: float, trunc: TruncationSpec, geom: Geometry,
                       params: PlasmaParams, *, dirichlet: bool = False) -> float:
    """ln det(1 - A) at Euclidean frequency ``omega`` and axial momentum ``k3``.

    ``dirichlet=True`` replaces both bodies by Dirichlet boundaries with the
    plane integral taken directly as K_{m+m'}(2 a rho).

    Raises
    ------
    SpectralRadiusError
        If 1 - A is not positive definite.
    RuntimeError
        If the truncation does not converge below ``trunc.m_limit``.
    """
    pair = get_model(pair)
    rho = math.hypot(omega, k3)
    if not rho > 0:
        raise ValueError("rho must be positive")
    Omega, omega_p = params.dimensional(geom.L)
    asm = _Assembler(pair, rho, omega, geom, Omega, omega_p, dirichlet)
    val, _, _, ok = _logdet_auto(asm, trunc, geom)
    if not ok:
        raise RuntimeError("angular-momentum truncation did not converge")
    return val


# ---------------------------------------------------------------------------
# Energy
# ---------------------------------------------------------------------------

_ALPHA_BREAKS = (0.0, 1.0)


def energy_oracle(pair, geom: Geometry, params: PlasmaParams, trunc: TruncationSpec = TruncationSpec(),
                  spec: QuadSpec = QuadSpec(rel_tol=1e-7, t_max=25.0), *, dirichlet: bool = False,
                  workers: int = 1):
    """Interaction energy per unit length from the exact log-determinant.

    TE: E = 1/(4 pi) int rho drho ln det(1 - A);
    TM: E = 1/(2 pi^2) int_0^{pi/2} dalpha int rho drho ln det(1 - A)
    with omega = rho sin(alpha).  The rho integral runs over t = rho L.

    Returns
    -------
    (E, OracleDiagnostics)
    """
    pair = get_model(pair)
    Omega, omega_p = params.dimensional(geom.L)
    if Omega == 0 and (not pair.dielectric or omega_p == 0) and not dirichlet:
        return 0.0, OracleDiagnostics(0.0, 0.0, 0, True)
    L = geom.L
    inner_spec = spec.replace(rel_tol=spec.rel_tol * 0.1)
    stats = {"m": 0, "dm": 0.0, "ok": True, "n": 0}

    def logdet_at(rho, omega):
        asm = _Assembler(pair, rho, omega, geom, Omega, omega_p, dirichlet)
        v, dm, M, ok = _logdet_auto(asm, trunc, geom)
        stats["m"] = max(stats["m"], M)
        stats["dm"] = max(stats["dm"], dm if np.isfinite(dm) else 0.0)
        stats["ok"] &= ok
        stats["n"] += 1
        return v

    def at_t(t):
        rho = t / L
        if not pair.is_tm:
            return rho * logdet_at(rho, 0.0)
        val, err, ok = integrate(
            lambda u: np.array([logdet_at(rho, rho * math.sin(0.5 * math.pi * ui)) for ui in u]),
            _ALPHA_BREAKS, inner_spec)
        stats["ok"] &= ok
        return rho * 0.5 * math.pi * float(val)

    pool = ThreadPoolExecutor(workers) if workers > 1 else None

    def ft(ts):
        ts = np.asarray(ts, dtype=float)
        vals = list(pool.map(at_t, ts)) if pool else [at_t(t) for t in ts]
        return np.array(vals) / L  # d rho = dt / L

    try:
        res = integrate_semiinf(ft, spec)
    finally:
        if pool:
            pool.shutdown()
    pref = 1 / (4 * math.pi) if not pair.is_tm else 1 / (2 * math.pi**2)
    E = pref * res.value
    diag = OracleDiagnostics(abs(pref) * res.error_estimate, stats["dm"], stats["m"],
                             res.converged and stats["ok"], stats["n"])
    return E, diag
