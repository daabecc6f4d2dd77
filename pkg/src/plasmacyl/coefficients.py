"""Explicit a^(1/2) and a^(1) coefficients of the small-gap expansion.

The matrix element A_{m+n, m+n'} of the mode sum behaves at small
epsilon = L/R as

    sqrt(eps/(4 pi t)) e^{-2t-(n-n')^2} r_cyl r_plane
        * (1 + sqrt(eps) a_half(n, n') + eps a_one(n, n') + ...),

with n, n' the rescaled index offsets, t the rescaled momentum, tau and y
the angular variables and Omega_L, omega_L the plasma parameters.  The four
models have the closed forms below.  ``a_half`` is odd and ``a_one`` even
under (n, n') -> (-n, -n').

All functions broadcast over numpy arrays.
"""

from __future__ import annotations

import numpy as np

from .models import ModelPair, PlasmaParams, get_model

__all__ = ["a_coeff", "a_half", "a_one"]


def _psi_one(n, m, t, T2):
    """Order-eps part of the prefactor collected from the saddle point and Debye factors."""
    X = n * n - 2 * m * n + m * m - 2 * t
    return (
        -12 * (n + m) ** 2 * X * T2
        + 3 * ((5 * T2 - 2) * n**2 + 2 * m * (5 * T2 - 2) * n + 4 * t * (T2 - 1) + m**2 * (5 * T2 - 2))
        + 2 * (
            -7 * (3 * T2 - 1) * n**4
            + 4 * m * (3 * T2 - 1) * n**3
            + 6 * ((3 * T2 - 1) * m**2 + 2 * t * (T2 - 1)) * n**2
            + 4 * m * ((3 * T2 - 1) * m**2 + 6 * t * (T2 - 1)) * n
            + 6 * (n + m) ** 2 * X**2 * T2
            + 12 * t**2 * T2
            + 12 * m**2 * t * (T2 - 1)
            - 7 * m**4 * (3 * T2 - 1)
        )
    ) / (24 * t)


def _psi_half(n, m, t, tau):
    return (n + m) * (2 * n**2 - 4 * m * n + 2 * m**2 - 4 * t - 1) * tau / (2 * np.sqrt(t))


def _q_dte(n, m, t, T2, W):
    return (
        (-6 * (3 * T2 - 2) * n**2 - 12 * m * T2 * n - 5 * T2 + 6 * m**2 * (5 * T2 - 2) + 3) * W**2
        + 2 * t * (6 * (5 * T2 - 2) * m**2 - (18 * n**2 + 5) * T2 + 3) * W
        + t**2 * (6 * (5 * T2 - 2) * n**2 + 12 * m * T2 * n - 5 * T2 + 6 * m**2 * (5 * T2 - 2) + 3)
    ) / (12 * t * (W + t) ** 2)


def _q_dtm_block(n, m, t, T2, y2, W):
    return (
        t**2 * (-6 * (3 * T2 - 2) * n**2 + 12 * m * T2 * n + 7 * T2 - 6 * m**2 * (3 * T2 - 2) - 9) * y2**2
        - 2 * W * t * (6 * (3 * T2 - 2) * m**2 + (18 * n**2 - 7) * T2 + 9) * y2
        + W**2 * (6 * (5 * T2 - 2) * n**2 - 12 * m * T2 * n + 7 * T2 - 6 * m**2 * (3 * T2 - 2) - 9)
    )


# --- (delta delta) TE -------------------------------------------------------

def _dd_te_half(n, m, t, tau, y, W, w):
    return tau / (2 * np.sqrt(t) * (W + t)) * (
        -(
            -2 * (W + t) * n**3
            + 2 * m * (W + t) * n**2
            + (W * (2 * m**2 + 4 * t - 1) + t * (2 * m**2 + 4 * t + 5)) * n
            + m * (W * (-2 * m**2 + 4 * t + 3) + t * (-2 * m**2 + 4 * t + 5))
        )
    )


def _dd_te_one(n, m, t, tau, y, W, w):
    T2 = tau * tau
    X = n**2 - 2 * m * n + m**2 - 2 * t
    Y = 2 * n**2 - 4 * m * n + 2 * m**2 - 4 * t
    body = (
        48 * T2 * t**3 - 72 * n**2 * t**2 - 72 * m**2 * t**2 + 192 * n**2 * T2 * t**2
        + 192 * m**2 * T2 * t**2 + 192 * n * m * T2 * t**2 + 48 * W * T2 * t**2 + 21 * T2 * t**2
        - 48 * n * m * t**2 - 3 * t**2 + 24 * n**2 * W * T2 * t + 264 * m**2 * W * T2 * t
        - 8 * (18 * n**2 + 5) * W * T2 * t + 48 * n * m * W * T2 * t + 22 * W * T2 * t
        - 24 * n**2 * W * t - 120 * m**2 * W * t - 48 * n * m * W * t + 6 * W * t
        + 48 * n**2 * W**2 - 48 * m**2 * W**2 + 9 * W**2
        - 72 * n**2 * W**2 * T2 + 120 * m**2 * W**2 * T2 - 48 * n * m * W**2 * T2 - 15 * W**2 * T2
        + (W + t) ** 2 * (
            -84 * T2 * n**4 + 28 * n**4 + 48 * m * T2 * n**3 - 16 * m * n**3 - 24 * m**2 * n**2
            + 72 * m**2 * T2 * n**2 + 48 * t * T2 * n**2 + 30 * T2 * n**2 - 48 * t * n**2 - 12 * n**2
            - 16 * m**3 * n + 48 * m**3 * T2 * n + 60 * m * T2 * n + 96 * m * t * T2 * n - 24 * m * n
            - 96 * m * t * n + 28 * m**4 - 12 * m**2 - 84 * m**4 * T2 + 30 * m**2 * T2
            + 48 * t**2 * T2 + 48 * m**2 * t * T2 + 24 * t * T2 - 48 * m**2 * t - 24 * t
        )
        + (n + m) * (
            -24 * n * (t - W) * (W * (Y - 1) + (Y - 3) * t) * T2
            - 24 * m * (W + t) * (W * (Y - 1) + (Y - 3) * t) * T2
        )
        + (n + m) ** 2 * ((W + t) ** 2 * (24 * X**2 * T2 - 24 * X * T2) - 24 * (Y - 1) * t * (W + t) * T2)
    )
    return body / (48 * t * (W + t) ** 2)


# --- (delta delta) TM -------------------------------------------------------

def _dd_tm_half(n, m, t, tau, y, W, w):
    y2 = y * y
    return tau / (2 * np.sqrt(t) * (W + t * y2)) * (
        W * (2 * n**3 - 2 * m * n**2 - 2 * m**2 * n - 4 * t * n - 3 * n + 2 * m**3 + m - 4 * m * t)
        - (n + m) * t * (-2 * n**2 + 4 * m * n - 2 * m**2 + 4 * t - 3) * y2
    )


def _dd_tm_one(n, m, t, tau, y, W, w):
    T2 = tau * tau
    y2 = y * y
    D = t * y2 + W
    Y = 2 * n**2 - 4 * m * n + 2 * m**2 - 4 * t
    phi_block = (
        t**2 * (24 * (T2 - 1) * n**2 + 48 * m * (T2 - 1) * n + 48 * t * T2 + 7 * T2 + 24 * m**2 * (T2 - 1) - 9) * y2**2
        + 2 * W * t * (12 * (3 * T2 - 1) * n**2 + 24 * m * (3 * T2 - 1) * n + 24 * t * T2 + 13 * T2
                       + 12 * m**2 * (3 * T2 - 1) - 3) * y2
        + W**2 * (3 - 5 * T2)
    )
    return (
        24 * (n + m) * (n * t * y2 + m * t * y2 - n * W + m * W) * ((Y + 1) * t * y2 + W * (Y - 1)) * T2 / (t * D**2)
        + 24 * (n + m) ** 2 * (Y - 1) * y2 * T2 / D
        + 48 * _psi_one(n, m, t, T2)
        - phi_block / (t * D**2)
        + 4 * _q_dtm_block(n, m, t, T2, y2, W) / (t * D**2)
    ) / 48


# --- (eps delta) TE ---------------------------------------------------------

def _ed_te_half(n, m, t, tau, y, W, w):
    S = np.sqrt(w * w + t * t)
    return (
        -(n * (t - W) + m * (W + t)) * tau / (np.sqrt(t) * (W + t))
        + _psi_half(n, m, t, tau)
        - 2 * (n + m) * np.sqrt(t) * tau / S
    )


def _ed_te_one(n, m, t, tau, y, W, w):
    T2 = tau * tau
    S = np.sqrt(w * w + t * t)
    k = 2 * n**2 + 4 * m * n + 2 * m**2 + 1
    return (
        -(n + m) * (n * (t - W) + m * (W + t)) * (2 * n**2 - 4 * m * n + 2 * m**2 - 4 * t - 4 * t / S - 1) * T2
        / (2 * t * (W + t))
        + (n + m) ** 2 * (-2 * n**2 + 4 * m * n - 2 * m**2 + 4 * t + 1) * T2 / S
        + _q_dte(n, m, t, T2, W)
        + _psi_one(n, m, t, T2)
        + (
            (96 * t**2 * T2 + 24 * k * t * (T2 - 1) + S * (5 * T2 - 3)) * w**2
            + t**2 * (96 * t**2 * T2 + 24 * k * t * (2 * T2 - 1)
                      + S * ((96 * n**2 + 192 * m * n + 96 * m**2 + 53) * T2 - 3))
        ) / (48 * t * S**3)
    )


# --- (eps delta) TM ---------------------------------------------------------

def _ed_tm_half(n, m, t, tau, y, W, w):
    y2 = y * y
    S = np.sqrt(w * w + t * t)
    D2 = w * w - t * t * y2 * (y2 - 2)
    return (
        2 * (n + m) * np.sqrt(t) * tau * (w * w + t * t * y2) * y2 / (S * D2)
        + _psi_half(n, m, t, tau)
        + tau * (n * t * y2 + m * t * y2 - n * W + m * W) / (np.sqrt(t) * (t * y2 + W))
    )


def _ed_tm_one(n, m, t, tau, y, W, w):
    T2 = tau * tau
    y2 = y * y
    y4 = y2 * y2
    S = np.sqrt(w * w + t * t)
    w2 = w * w
    D2 = w2 - t * t * y2 * (y2 - 2)
    E = w2 + t * t * y2
    k = 2 * n**2 + 4 * m * n + 2 * m**2 + 1
    c = 48 * n**2 + 96 * m * n + 48 * m**2
    big = (
        ((-96 * t**2 * y2 - 72 * k * t * y2 + 5 * S) * T2 + 24 * k * t * y2 - 3 * S) * w2**3
        + t**2 * (
            (24 * k * t * (y4 - 9 * y2 - 4) * y2 + 96 * t**2 * (y4 - 3 * y2 - 1) * y2
             + S * (2 * (c + 19) * y4 + 20 * y2 + 5)) * T2
            + 3 * (S * (2 * y4 - 4 * y2 - 1) - 8 * k * t * y2 * (y4 - 3 * y2 - 1))
        ) * w2**2
        + t**4 * y2 * (
            T2 * (24 * k * t * (y4 - 4 * y2 - 12) * y2 + 96 * t**2 * (y4 - y2 - 3) * y2
                  + S * (5 * y2**3 + 4 * (c + 19) * y4 + 10 * y2 + 20))
            - 3 * (8 * k * t * (y4 - y2 - 3) * y2 + S * (y2**3 - 4 * y4 + 2 * y2 + 4))
        ) * w2
        + t**6 * y4 * (
            T2 * (48 * k * t * (y2 - 4) * y2 + 96 * t**2 * (y2 - 2) * y2 + S * ((2 * c + 53) * y4 - 20 * y2 + 20))
            - 3 * (y2 - 2) * (8 * k * t * y2 + S * (y2 - 2))
        )
    )
    return (
        -(n + m) ** 2 * (-2 * n**2 + 4 * m * n - 2 * m**2 + 4 * t + 1) * T2 * E * y2 / (S * D2)
        + _psi_one(n, m, t, T2)
        + 2 * _q_dtm_block(n, m, t, T2, y2, W) / (24 * t * (t * y2 + W) ** 2)
        + (n + m) * T2 * (n * t * y2 + m * t * y2 - n * W + m * W)
        * (2 * n**2 - 4 * m * n + 2 * m**2 - 4 * t + 4 * t * y2 * E / (S * D2) - 1) / (2 * t * (t * y2 + W))
        + big / (48 * t * S**3 * D2**2)
    )


_TABLE = {
    "dd-te": (_dd_te_half, _dd_te_one),
    "dd-tm": (_dd_tm_half, _dd_tm_one),
    "ed-te": (_ed_te_half, _ed_te_one),
    "ed-tm": (_ed_tm_half, _ed_tm_one),
}


def _params(params: PlasmaParams):
    return params.Omega_L, params.omega_L


def _arrays(*xs):
    # keep extended precision when the caller supplies it
    dt = np.result_type(float, *(np.asarray(x).dtype for x in xs))
    return tuple(np.asarray(x, dtype=dt) for x in xs)


def a_half(pair, n, n2, t, tau, y, params: PlasmaParams):
    """The sqrt(eps) coefficient a^(1/2)_{n,n'} of a model."""
    pair = get_model(pair)
    W, w = _params(params)
    return _TABLE[pair.label][0](*_arrays(n, n2, t, tau, y), W, w)


def a_one(pair, n, n2, t, tau, y, params: PlasmaParams):
    """The eps coefficient a^(1)_{n,n'} of a model."""
    pair = get_model(pair)
    W, w = _params(params)
    return _TABLE[pair.label][1](*_arrays(n, n2, t, tau, y), W, w)


def a_coeff(pair, order: str, n, n2, t, tau, y, params: PlasmaParams):
    """Dispatch on ``order`` in {"half", "one"}."""
    if order == "half":
        return a_half(pair, n, n2, t, tau, y, params)
    if order == "one":
        return a_one(pair, n, n2, t, tau, y, params)
    raise ValueError("order must be 'half' or 'one'")
