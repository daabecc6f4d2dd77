"""Gaussian chain moments for the beyond-PFA integrations.

The integration variables n_1 .. n_s carry the weight exp(-eta_1) with
eta_1 = sum_{i=0}^{s} (n_i - n_{i+1})^2 and n_0 = n_{s+1} = 0.  With
N = s + 1 the normalized integral is N^{-1/2} and the covariance of the
underlying Gaussian is

    <n_i n_j> = min(i, j) (N - max(i, j)) / (2 N),   0 <= i, j <= N,

which vanishes on the fixed ends.  Polynomial moments follow from
Isserlis' theorem.

The beyond-PFA integrand needs two kinds of chain sums over neighbouring
pairs (n_i, n_{i+1}):

    U_N[p, q] = sum_{i=0}^{s} E[n_i^p n_{i+1}^q],
    T_N[(p, q), (p', q')] = sum_{0 <= i < j <= s} E[n_i^p n_{i+1}^q n_j^p' n_{j+1}^q'],

with E the expectation under the normalized Gaussian.  Both are Laurent
polynomials in N; their exact rational coefficients are available from
:func:`laurent_tables`.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import numpy as np

__all__ = [
    "EVEN_MONOMIALS",
    "LAURENT_POWERS",
    "ODD_MONOMIALS",
    "MAX_MOMENT_DEGREE",
    "chain_covariance",
    "chain_moment",
    "chain_sums",
    "chain_sums_exact",
    "laurent_tables",
]

MAX_MOMENT_DEGREE = 8

#: monomials n^p n'^q of the sqrt(eps) coefficient (odd, degree 1 and 3)
ODD_MONOMIALS = tuple((p, d - p) for d in (1, 3) for p in range(d, -1, -1))
#: monomials of the eps coefficient (even, degree 0 to 6)
EVEN_MONOMIALS = tuple((p, d - p) for d in (0, 2, 4, 6) for p in range(d, -1, -1))
#: powers k of N in the Laurent form of the chain sums
LAURENT_POWERS = tuple(range(-4, 7))

# Slot covariance entries in a fixed order: (0,0), (0,1), ..., (3,3).
_PAIRS = tuple((a, b) for a in range(4) for b in range(a, 4))
_PAIR_INDEX = {p: k for k, p in enumerate(_PAIRS)}


def chain_covariance(s: int) -> np.ndarray:
    """Covariance <n_i n_j>, i, j = 1..s, of the chain Gaussian."""
    if s < 1:
        raise ValueError("s must be a positive integer")
    N = s + 1
    i = np.arange(1, N)
    lo = np.minimum.outer(i, i)
    hi = np.maximum.outer(i, i)
    return lo * (N - hi) / (2.0 * N)


def _full_covariance(N: int, exact: bool = False):
    # indices 0..N including the fixed ends
    if exact:
        return [[Fraction(min(i, j) * (N - max(i, j)), 2 * N) for j in range(N + 1)] for i in range(N + 1)]
    i = np.arange(N + 1)
    return np.minimum.outer(i, i) * (N - np.maximum.outer(i, i)) / (2.0 * N)


def _isserlis(cov, exps) -> float:
    """E[prod x_k^{e_k}] for a zero-mean Gaussian with covariance ``cov``."""
    memo: dict = {}

    def rec(e):
        tot_deg = sum(e)
        if tot_deg == 0:
            return 1.0
        if tot_deg % 2:
            return 0.0
        if e in memo:
            return memo[e]
        k = next(i for i, v in enumerate(e) if v > 0)
        e1 = list(e)
        e1[k] -= 1
        tot = 0.0
        for l, el in enumerate(e1):
            if el > 0 and cov[k][l] != 0:
                e2 = list(e1)
                e2[l] -= 1
                tot += cov[k][l] * el * rec(tuple(e2))
        memo[e] = tot
        return tot

    return rec(tuple(exps))


def chain_moment(s: int, monomial) -> float:
    """Normalized moment int prod(dn_i/sqrt(pi)) e^{-eta_1} prod n_i^{k_i}.

    ``monomial`` lists the exponents k_1..k_s.  The result includes the
    normalization (s+1)^{-1/2}; odd total degree gives exactly 0.
    """
    k = tuple(int(v) for v in monomial)
    if len(k) != s:
        raise ValueError(f"monomial must have {s} exponents")
    if any(v < 0 for v in k):
        raise ValueError("exponents must be nonnegative")
    deg = sum(k)
    if deg > MAX_MOMENT_DEGREE:
        raise ValueError(f"total degree {deg} exceeds {MAX_MOMENT_DEGREE}")
    norm = (s + 1) ** -0.5
    if deg % 2:
        return 0.0
    if deg == 0:
        return norm
    idx = [i for i, v in enumerate(k) if v]
    cov = chain_covariance(s)[np.ix_(idx, idx)]
    return norm * _isserlis(cov.tolist(), [k[i] for i in idx])


# ---------------------------------------------------------------------------
# Symbolic Isserlis polynomials over four slots (n_i, n_{i+1}, n_j, n_{j+1})
# ---------------------------------------------------------------------------

def _poly_mul_pair(poly: dict, pair_idx: int, factor: int) -> dict:
    out: dict = {}
    for mono, c in poly.items():
        m = list(mono)
        m[pair_idx] += 1
        m = tuple(m)
        out[m] = out.get(m, 0) + c * factor
    return out


@lru_cache(maxsize=None)
def _matching_poly(exps: tuple) -> tuple:
    """E[prod slot^e] as a polynomial in the 10 slot covariances.

    Returned as a tuple of (coefficient, exponent-vector) terms.
    """
    if sum(exps) == 0:
        return ((1, (0,) * len(_PAIRS)),)
    if sum(exps) % 2:
        return ()
    k = next(i for i, v in enumerate(exps) if v > 0)
    e1 = list(exps)
    e1[k] -= 1
    acc: dict = {}
    for l, el in enumerate(e1):
        if el > 0:
            e2 = list(e1)
            e2[l] -= 1
            sub = {m: c for c, m in _matching_poly(tuple(e2))}
            pidx = _PAIR_INDEX[(min(k, l), max(k, l))]
            for m, c in _poly_mul_pair(sub, pidx, el).items():
                acc[m] = acc.get(m, 0) + c
    return tuple((c, m) for m, c in acc.items() if c)


def _eval_poly(terms, entries):
    """Evaluate a matching polynomial on stacked slot covariances (10, ...)."""
    tot = 0
    for c, mono in terms:
        v = c
        for pidx, e in enumerate(mono):
            if e:
                v = v * entries[pidx] ** e
        tot = tot + v
    return tot


def _sum_poly(terms, entries, shape) -> float:
    return float(np.sum(np.broadcast_to(_eval_poly(terms, entries), shape)))


def _slot_entries(cov, slots):
    # slots: 4 index arrays (or ints); returns the 10 covariance entries
    return [cov[slots[a], slots[b]] for a, b in _PAIRS]


def chain_sums(N: int) -> tuple[np.ndarray, np.ndarray]:
    """Float chain sums (U_N, T_N) by vectorized Isserlis evaluation.

    Returns
    -------
    U : ndarray, shape (16,)
        indexed like :data:`EVEN_MONOMIALS`
    T : ndarray, shape (6, 6)
        indexed like :data:`ODD_MONOMIALS` on both axes
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    cov = _full_covariance(N)
    i = np.arange(N)
    ent = _slot_entries(cov, (i, i + 1, i, i + 1))
    U = np.array([_sum_poly(_matching_poly((p, q, 0, 0)), ent, i.shape) for p, q in EVEN_MONOMIALS])
    T = np.zeros((len(ODD_MONOMIALS), len(ODD_MONOMIALS)))
    if N >= 2:
        ii, jj = np.triu_indices(N, k=1)
        ent = _slot_entries(cov, (ii, ii + 1, jj, jj + 1))
        for a, (p, q) in enumerate(ODD_MONOMIALS):
            for b, (p2, q2) in enumerate(ODD_MONOMIALS):
                T[a, b] = _sum_poly(_matching_poly((p, q, p2, q2)), ent, ii.shape)
    return U, T


@lru_cache(maxsize=None)
def chain_sums_exact(N: int):
    """Exact rational chain sums (U_N, T_N) as nested tuples of Fractions."""
    if N < 1:
        raise ValueError("N must be at least 1")
    cov = _full_covariance(N, exact=True)

    def ent(a, b, c, d):
        sl = (a, b, c, d)
        return [cov[sl[x]][sl[y]] for x, y in _PAIRS]

    U = tuple(
        sum((_eval_poly(_matching_poly((p, q, 0, 0)), ent(i, i + 1, i, i + 1)) for i in range(N)), Fraction(0))
        for p, q in EVEN_MONOMIALS
    )
    T = tuple(
        tuple(
            sum(
                (_eval_poly(_matching_poly((p, q, p2, q2)), ent(i, i + 1, j, j + 1))
                 for i in range(N) for j in range(i + 1, N)),
                Fraction(0),
            )
            for p2, q2 in ODD_MONOMIALS
        )
        for p, q in ODD_MONOMIALS
    )
    return U, T


def _solve_exact(A, b):
    n = len(A)
    M = [list(row) + [bb] for row, bb in zip(A, b)]
    for c in range(n):
        p = next(r for r in range(c, n) if M[r][c] != 0)
        M[c], M[p] = M[p], M[c]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c] / M[c][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [M[i][n] / M[i][i] for i in range(n)]


@lru_cache(maxsize=None)
def laurent_tables():
    """Exact Laurent coefficients of the chain sums in N.

    U_N[mono] = sum_k u[mono, k] N^k and likewise for T, with k running
    over :data:`LAURENT_POWERS`.  The coefficients are fitted exactly on
    N = 1..11 and confirmed on N = 12..14; a mismatch raises.

    Returns
    -------
    u : ndarray, shape (16, K)
    t : ndarray, shape (6, 6, K)
    exact : dict
        the same coefficients as Fractions, keyed by ("U", mono) or
        ("T", mono, mono').
    """
    ks = LAURENT_POWERS
    fit_N = range(1, len(ks) + 1)
    check_N = range(len(ks) + 1, len(ks) + 4)
    A = [[Fraction(N) ** k for k in ks] for N in fit_N]
    data = {N: chain_sums_exact(N) for N in list(fit_N) + list(check_N)}

    def fit(getter, label):
        c = _solve_exact(A, [getter(data[N]) for N in fit_N])
        for N in check_N:
            if sum(ci * Fraction(N) ** k for ci, k in zip(c, ks)) != getter(data[N]):
                raise RuntimeError(f"chain sum {label} is not a Laurent polynomial in the fitted range")
        return c

    exact = {}
    u = np.zeros((len(EVEN_MONOMIALS), len(ks)))
    for a, mono in enumerate(EVEN_MONOMIALS):
        c = fit(lambda d, a=a: d[0][a], mono)
        exact[("U", mono)] = tuple(c)
        u[a] = [float(x) for x in c]
    t = np.zeros((len(ODD_MONOMIALS), len(ODD_MONOMIALS), len(ks)))
    for a, m1 in enumerate(ODD_MONOMIALS):
        for b, m2 in enumerate(ODD_MONOMIALS):
            c = fit(lambda d, a=a, b=b: d[1][a][b], (m1, m2))
            exact[("T", m1, m2)] = tuple(c)
            t[a, b] = [float(x) for x in c]
    return u, t, exact

