"""Boundary models: plasma sheets and a plasma-model dielectric half-space.

All frequencies are Euclidean (imaginary-axis) values.  The plane-side
amplitudes ``dtilde`` enter the exact mode sum; the dimensionless reflection
coefficients ``refl`` enter the small-separation formulas.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "BoundaryKind",
    "Geometry",
    "ModelPair",
    "PlasmaParams",
    "MODELS",
    "dtilde",
    "get_model",
    "permittivity_plasma",
    "refl",
]


class BoundaryKind(enum.Enum):
    DeltaTE = "delta-te"
    DeltaTM = "delta-tm"
    EpsTE = "eps-te"
    EpsTM = "eps-tm"

    @property
    def is_tm(self) -> bool:
        return self in (BoundaryKind.DeltaTM, BoundaryKind.EpsTM)

    @property
    def is_plasma_sheet(self) -> bool:
        return self in (BoundaryKind.DeltaTE, BoundaryKind.DeltaTM)


@dataclass(frozen=True)
class ModelPair:
    """Cylinder boundary (always a plasma sheet) and plane boundary."""

    cyl: BoundaryKind
    plane: BoundaryKind
    label: str

    def __post_init__(self):
        if not self.cyl.is_plasma_sheet:
            raise ValueError("the cylinder must be a plasma sheet")
        if self.cyl.is_tm != self.plane.is_tm:
            raise ValueError("cylinder and plane must carry the same polarization")

    @property
    def is_tm(self) -> bool:
        return self.cyl.is_tm

    @property
    def dielectric(self) -> bool:
        return not self.plane.is_plasma_sheet

    @property
    def mode(self) -> str:
        return "TM" if self.is_tm else "TE"


MODELS = {
    "dd-te": ModelPair(BoundaryKind.DeltaTE, BoundaryKind.DeltaTE, "dd-te"),
    "dd-tm": ModelPair(BoundaryKind.DeltaTM, BoundaryKind.DeltaTM, "dd-tm"),
    "ed-te": ModelPair(BoundaryKind.DeltaTE, BoundaryKind.EpsTE, "ed-te"),
    "ed-tm": ModelPair(BoundaryKind.DeltaTM, BoundaryKind.EpsTM, "ed-tm"),
}


def get_model(label: str | ModelPair) -> ModelPair:
    """Look up a model by its CLI label (``dd-te``, ``dd-tm``, ``ed-te``, ``ed-tm``)."""
    if isinstance(label, ModelPair):
        return label
    try:
        return MODELS[label]
    except KeyError:
        raise ValueError(f"unknown model {label!r}; choose from {sorted(MODELS)}") from None


@dataclass(frozen=True)
class Geometry:
    """Cylinder radius R and surface-to-surface gap L."""

    R: float
    L: float

    def __post_init__(self):
        if not (self.R > 0 and self.L > 0):
            raise ValueError("R and L must be positive")

    @property
    def a(self) -> float:
        return self.R + self.L

    @property
    def epsilon(self) -> float:
        return self.L / self.R


@dataclass(frozen=True)
class PlasmaParams:
    """Plasma parameters, dimensionless (``Omega_L``, ``omega_L``).

    ``Omega_L = Omega * L`` and ``omega_L = omega_p * L``.  The dimensional
    values are obtained from :meth:`dimensional`.
    """

    Omega_L: float
    omega_L: float = 0.0

    def __post_init__(self):
        if self.Omega_L < 0 or self.omega_L < 0:
            raise ValueError("plasma parameters must be nonnegative")

    @classmethod
    def from_dimensional(cls, Omega: float, omega_p: float, L: float) -> "PlasmaParams":
        return cls(Omega * L, omega_p * L)

    def dimensional(self, L: float) -> tuple[float, float]:
        """Return ``(Omega, omega_p)`` in units of 1/length for gap L."""
        return self.Omega_L / L, self.omega_L / L


def permittivity_plasma(omega_p: float, xi):
    """epsilon(i xi) = 1 + omega_p^2 / xi^2 of the plasma model."""
    xi = np.asarray(xi, dtype=float)
    if np.any(xi == 0):
        raise ValueError("permittivity is singular at xi = 0")
    out = 1.0 + omega_p**2 / xi**2
    return out if out.ndim else float(out)


def dtilde(kind: BoundaryKind, omega, gamma, Omega: float = 0.0, omega_p: float = 0.0):
    """Plane-side amplitude d~_{omega,gamma} (includes the 1/(2 gamma) factor).

    ``Omega`` and ``omega_p`` are dimensional (same length unit as 1/gamma).
    Infinite ``Omega`` or ``omega_p`` give the hard-boundary limits.
    """
    omega = np.asarray(omega, dtype=float)
    gamma = np.asarray(gamma, dtype=float)
    if np.any(gamma <= 0):
        raise ValueError("gamma must be positive")
    h = 0.5 / gamma
    if kind is BoundaryKind.DeltaTE:
        if math.isinf(Omega):
            out = h * np.ones_like(gamma)
        else:
            out = h * Omega / (Omega + gamma)
    elif kind is BoundaryKind.DeltaTM:
        if math.isinf(Omega):
            out = -h * np.ones(np.broadcast(omega, gamma).shape)
        else:
            out = -h * gamma * Omega / (omega**2 + gamma * Omega)
    elif kind is BoundaryKind.EpsTE:
        # Sign chosen so that the hard limit is Dirichlet-like (+1), as for
        # the TE plasma sheet and the reflection coefficient used in refl().
        if math.isinf(omega_p):
            out = h * np.ones(np.broadcast(omega, gamma).shape)
        else:
            p = np.sqrt(omega_p**2 + gamma**2)
            # (p - gamma)/(p + gamma) with p - gamma = omega_p^2/(p + gamma)
            out = h * omega_p**2 / (p + gamma) ** 2
    elif kind is BoundaryKind.EpsTM:
        if math.isinf(omega_p):
            out = -h * np.ones(np.broadcast(omega, gamma).shape)
        else:
            eps_w2 = omega**2 + omega_p**2  # eps(i omega) omega^2
            p = np.sqrt(eps_w2 + gamma**2 - omega**2)
            # eps*gamma - p with eps = eps_w2/omega^2, multiplied through by omega^2
            num = eps_w2 * gamma - omega**2 * p
            den = eps_w2 * gamma + omega**2 * p
            out = -h * num / den
    else:  # pragma: no cover
        raise ValueError(kind)
    return out if np.ndim(out) else float(out)


def refl(kind: BoundaryKind, t, y=1.0, params: PlasmaParams = PlasmaParams(1.0, 1.0)):
    """Dimensionless reflection coefficient r(t, y) of the small-gap formulas.

    ``t`` is the rescaled momentum, ``y`` the angular variable; TE kinds do
    not depend on ``y``.  Infinite parameters give hard-boundary values.
    """
    t = np.asarray(t, dtype=float)
    y = np.asarray(y, dtype=float)
    W, w = params.Omega_L, params.omega_L
    if kind is BoundaryKind.DeltaTE:
        out = np.ones_like(t) if math.isinf(W) else W / (W + t)
        out = out * np.ones_like(y)
    elif kind is BoundaryKind.DeltaTM:
        out = -np.ones(np.broadcast(t, y).shape) if math.isinf(W) else -W / (t * y**2 + W)
    elif kind is BoundaryKind.EpsTE:
        if math.isinf(w):
            out = np.ones_like(t)
        else:
            s = np.sqrt(w * w + t * t)
            out = w * w / (t + s) ** 2  # = (s - t)/(s + t)
        out = out * np.ones_like(y)
    elif kind is BoundaryKind.EpsTM:
        if math.isinf(w):
            out = -np.ones(np.broadcast(t, y).shape)
        else:
            s = np.sqrt(w * w + t * t)
            # t (s - t) y^2 - w^2 with s - t = w^2/(s + t)
            num = w * w * (t * y**2 / (s + t) - 1.0)
            den = w * w + t * (t + s) * y**2
            out = num / den
    else:  # pragma: no cover
        raise ValueError(kind)
    return out if np.ndim(out) else float(out)
