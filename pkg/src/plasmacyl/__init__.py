"""Casimir interaction of a cylindrical plasma shell with a plasma sheet or
a plasma-model dielectric half-space.

Submodules
----------
specfun   Bessel functions, polylogarithms and adaptive quadrature
models    boundary models, geometry and reflection coefficients
pfa       proximity force approximation (f0)
beyond    first correction beyond PFA (f1)
asympt    exact and asymptotic matrix-element factors, saddle-point engine
modesum   exact log-determinant oracle
cli       command-line interface
"""

__version__ = "0.1.0"

from .beyond import F1, energy, f1_dd_closed, f1_series
from .models import MODELS, BoundaryKind, Geometry, ModelPair, PlasmaParams, get_model
from .modesum import TruncationSpec, energy_oracle, interaction_logdet
from .pfa import EnergyBreakdown, e_pfa, f0, ftilde_dd, ftilde_ed
from .specfun import QuadResult, QuadSpec

__all__ = [
    "BoundaryKind",
    "EnergyBreakdown",
    "F1",
    "Geometry",
    "MODELS",
    "ModelPair",
    "PlasmaParams",
    "QuadResult",
    "QuadSpec",
    "TruncationSpec",
    "__version__",
    "e_pfa",
    "energy",
    "energy_oracle",
    "f0",
    "f1_dd_closed",
    "f1_series",
    "ftilde_dd",
    "ftilde_ed",
    "get_model",
    "interaction_logdet",
]
