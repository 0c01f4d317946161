"""Neutral Kaehler geometry of oriented line spaces TS^2 and TH^2."""
from .kahler import (
    EUCLIDEAN,
    LORENTZIAN,
    ConformalData,
    LinePoint,
    SpaceKind,
    TangentVector,
    apply_complex_structure,
    conformal_data,
    metric_value,
    sigma_squared,
    symplectic_value,
    wirtinger_residual,
)
from .kernels import BACKEND

__version__ = "0.1.0"
