"""Neutral Kaehler structure (G, J, Omega) on TS^2 and TH^2.

Points of the line space are pairs ``(xi, eta)``: ``xi`` is the stereographic
(Euclidean) or Poincare-disc (Lorentzian) coordinate of the direction and
``eta`` the fibre coordinate.  Real tangent vectors are stored by their
holomorphic components ``(dxi, deta)``; the conjugate components are implied.

All functions are written with plain arithmetic so that the fields of
:class:`LinePoint` and :class:`TangentVector` may be numpy arrays, in which
case every result is evaluated elementwise.

Conventions: the symmetric product is ``da db (v, w) = (da(v) db(w) + db(v) da(w)) / 2``
and the wedge is ``da ^ db (v, w) = (da(v) db(w) - da(w) db(v)) / 2``.  With these
``G(v, w) = Omega(J v, w)`` holds identically.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

#: Lorentzian chart cutoff, |xi| must stay below ``1 - DISC_MARGIN``.
DISC_MARGIN = 1e-9


@dataclass(frozen=True)
class SpaceKind:
    """Selects the Euclidean (``sign=+1``, base S^2) or Lorentzian (``sign=-1``, base H^2) case."""

    sign: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign!r}")

    @property
    def epsilon(self) -> int:
        # both instantiated metrics are neutral
        return -1

    @property
    def kappa(self) -> int:
        """Gauss curvature of the base."""
        return self.sign

    @property
    def name(self) -> str:
        return "euclidean" if self.sign == 1 else "lorentzian"

    @classmethod
    def from_name(cls, name: str) -> "SpaceKind":
        key = name.strip().lower()
        if key in ("euclidean", "e", "ts2", "+"):
            return EUCLIDEAN
        if key in ("lorentzian", "l", "th2", "-"):
            return LORENTZIAN
        raise ValueError(f"unknown space {name!r}")

    def __repr__(self):
        return f"SpaceKind({self.name})"


EUCLIDEAN = SpaceKind(1)
LORENTZIAN = SpaceKind(-1)


@dataclass(frozen=True)
class LinePoint:
    xi: complex
    eta: complex


@dataclass(frozen=True)
class TangentVector:
    dxi: complex
    deta: complex

    def __add__(self, other):
        return TangentVector(self.dxi + other.dxi, self.deta + other.deta)

    def __mul__(self, scalar):
        return TangentVector(self.dxi * scalar, self.deta * scalar)

    __rmul__ = __mul__


@dataclass(frozen=True)
class ConformalData:
    """``e^{2u}`` and the Wirtinger derivatives of ``u`` at a base point."""

    e2u: float
    du: complex
    ddu: complex
    dbar_du: float


def check_domain(space: SpaceKind, xi) -> None:
    """Raise :class:`DomainError` if ``xi`` leaves the Lorentzian disc."""
    if space.sign == -1 and np.any(np.abs(xi) >= 1.0 - DISC_MARGIN):
        raise DomainError("xi must satisfy |xi| < 1 - 1e-9 on TH^2")


def conformal_data(space: SpaceKind, xi) -> ConformalData:
    """Conformal factor of the round/hyperbolic metric ``4 dxi dxibar / (1 +- xi xibar)^2``."""
    check_domain(space, xi)
    sg = space.sign
    xib = np.conj(xi)
    p = 1.0 + sg * np.real(xi * xib)
    e2u = 4.0 / p**2
    du = -sg * xib / p
    ddu = xib**2 / p**2
    dbar_du = -sg / p**2
    return ConformalData(e2u=e2u, du=du, ddu=ddu, dbar_du=dbar_du)


def _sym(a_v, b_v, a_w, b_w):
    return 0.5 * (a_v * b_w + b_v * a_w)


def _wedge(a_v, b_v, a_w, b_w):
    return 0.5 * (a_v * b_w - a_w * b_v)


def metric_value(space: SpaceKind, p: LinePoint, v: TangentVector, w: TangentVector):
    """``G(v, w)`` with ``G = 2 Im(e^{2u} deta-bar dxi - eta d(e^{2u}) dxi dxi-bar)``."""
    cd = conformal_data(space, p.xi)
    de2u = 2.0 * cd.du * cd.e2u
    term1 = cd.e2u * _sym(np.conj(v.deta), v.dxi, np.conj(w.deta), w.dxi)
    term2 = p.eta * de2u * _sym(v.dxi, np.conj(v.dxi), w.dxi, np.conj(w.dxi))
    return 2.0 * np.imag(term1 - term2)


def symplectic_value(space: SpaceKind, p: LinePoint, v: TangentVector, w: TangentVector):
    """``Omega(v, w)`` with ``Omega = 2 Re(e^{2u} deta ^ dxi-bar + eta d(e^{2u}) dxi ^ dxi-bar)``."""
    cd = conformal_data(space, p.xi)
    de2u = 2.0 * cd.du * cd.e2u
    term1 = cd.e2u * _wedge(v.deta, np.conj(v.dxi), w.deta, np.conj(w.dxi))
    term2 = p.eta * de2u * _wedge(v.dxi, np.conj(v.dxi), w.dxi, np.conj(w.dxi))
    return 2.0 * np.real(term1 + term2)


def apply_complex_structure(v: TangentVector) -> TangentVector:
    """``J = j + j`` acts by multiplication by ``i`` on both holomorphic components."""
    return TangentVector(1j * v.dxi, 1j * v.deta)


def sigma_squared(space: SpaceKind, p: LinePoint, v: TangentVector, w: TangentVector):
    """``e^{4u} |dxi(v) deta(w) - deta(v) dxi(w)|^2``; vanishes exactly on complex planes."""
    cd = conformal_data(space, p.xi)
    det = v.dxi * w.deta - v.deta * w.dxi
    return cd.e2u**2 * np.abs(det) ** 2


def gram_determinant(space: SpaceKind, p: LinePoint, v: TangentVector, w: TangentVector):
    gvv = metric_value(space, p, v, v)
    gww = metric_value(space, p, w, w)
    gvw = metric_value(space, p, v, w)
    return gvv * gww - gvw**2


def wirtinger_residual(space: SpaceKind, p: LinePoint, v: TangentVector, w: TangentVector):
    """Defect of ``Omega(v,w)^2 + eps * sigma^2(v,w) = det G(v_i, v_j)``.

    Returns the raw (absolute) residual; :func:`wirtinger_scale` gives the
    magnitude to normalise against.
    """
    om = symplectic_value(space, p, v, w)
    s2 = sigma_squared(space, p, v, w)
    return om**2 + space.epsilon * s2 - gram_determinant(space, p, v, w)


def wirtinger_scale(space: SpaceKind, p: LinePoint, v: TangentVector, w: TangentVector):
    """Sum of the magnitudes of the terms entering :func:`wirtinger_residual`."""
    gvv = metric_value(space, p, v, v)
    gww = metric_value(space, p, w, w)
    gvw = metric_value(space, p, v, w)
    om = symplectic_value(space, p, v, w)
    s2 = sigma_squared(space, p, v, w)
    return om**2 + s2 + np.abs(gvv * gww) + gvw**2


REAL_BASIS = (
    TangentVector(1.0, 0.0),
    TangentVector(1j, 0.0),
    TangentVector(0.0, 1.0),
    TangentVector(0.0, 1j),
)
"""Coordinate vectors d/dx, d/dy, d/dp, d/dq for xi = x + iy, eta = p + iq."""


def metric_matrix(space: SpaceKind, p: LinePoint) -> np.ndarray:
    """4x4 real matrix of ``G`` in the real coordinates ``(x, y, p, q)``.

    With array-valued ``p`` the matrix axes come last: shape ``(..., 4, 4)``.
    """
    rows = [[metric_value(space, p, a, b) for b in REAL_BASIS] for a in REAL_BASIS]
    return np.moveaxis(np.array(rows, dtype=float), (0, 1), (-2, -1))


def symplectic_matrix(space: SpaceKind, p: LinePoint) -> np.ndarray:
    rows = [[symplectic_value(space, p, a, b) for b in REAL_BASIS] for a in REAL_BASIS]
    return np.moveaxis(np.array(rows, dtype=float), (0, 1), (-2, -1))
