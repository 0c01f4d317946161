"""The map between (line, affine parameter) and points of E^3 / E^3_1.

A point of 3-space is ``(z, t)`` with ``z = x1 + i x2`` and ``t = x3``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .kahler import LinePoint, SpaceKind, check_domain


@dataclass(frozen=True)
class SpacePoint:
    z: complex
    t: float

    def as_array(self) -> np.ndarray:
        return np.array([np.real(self.z), np.imag(self.z), self.t], dtype=float)

    @classmethod
    def from_array(cls, x) -> "SpacePoint":
        return cls(complex(x[0], x[1]), float(x[2]))


@dataclass(frozen=True)
class LineWithParam:
    line: LinePoint
    r: float


def to_space(space: SpaceKind, lw: LineWithParam) -> SpacePoint:
    """Point at affine distance ``r`` from the foot of the perpendicular from the origin."""
    xi, eta, r = lw.line.xi, lw.line.eta, lw.r
    check_domain(space, xi)
    sg = space.sign
    xib = np.conj(xi)
    s = np.real(xi * xib)
    p = 1.0 + sg * s
    z = (2.0 * (eta - sg * np.conj(eta) * xi**2) + 2.0 * xi * p * r) / p**2
    t = (-sg * 2.0 * np.real(eta * xib + np.conj(eta) * xi) + (1.0 - s**2) * r) / p**2
    return SpacePoint(z, t)


def from_space(space: SpaceKind, xi, pt: SpacePoint) -> LineWithParam:
    """Line through ``pt`` with direction ``xi``, and the affine parameter of ``pt`` on it."""
    check_domain(space, xi)
    sg = space.sign
    xib = np.conj(xi)
    s = np.real(xi * xib)
    z, t = pt.z, pt.t
    eta = 0.5 * (z - 2.0 * t * xi - sg * np.conj(z) * xi**2)
    r = (sg * 2.0 * np.real(xib * z) + (1.0 - sg * s) * t) / (1.0 + sg * s)
    return LineWithParam(LinePoint(xi, eta), r)


def direction_vector(space: SpaceKind, xi):
    """Unit direction ``(z_dir, t_dir)`` of lines with base coordinate ``xi``.

    Euclidean: ``|z_dir|^2 + t_dir^2 = 1``; Lorentzian: ``|z_dir|^2 - t_dir^2 = -1``
    with ``t_dir >= 1`` (future pointing).
    """
    check_domain(space, xi)
    sg = space.sign
    s = np.real(xi * np.conj(xi))
    p = 1.0 + sg * s
    return 2.0 * xi / p, (1.0 - sg * s) / p


def xi_from_direction(space: SpaceKind, d, tol: float = 1e-9):
    """Invert :func:`direction_vector`; rejects non-unit and past-pointing directions."""
    zd, td = complex(d[0]), float(d[1])
    norm = abs(zd) ** 2 + space.sign * td**2
    if abs(norm - space.sign) > tol:
        raise DomainError(f"direction is not normalised (norm {norm!r})")
    if space.sign == -1 and td <= 0:
        raise DomainError("time-like direction must be future pointing")
    if space.sign == 1 and td <= -1.0 + tol:
        raise DomainError("direction (0, 0, -1) is outside the chart")
    return zd / (1.0 + td)


def line_from_point_direction(space: SpaceKind, pt: SpacePoint, d) -> LinePoint:
    xi = xi_from_direction(space, d)
    return from_space(space, xi, pt).line


def line_through_points(space: SpaceKind, p0: SpacePoint, p1: SpacePoint) -> LinePoint:
    """Oriented line from ``p0`` towards ``p1``.

    In the Lorentzian case the displacement must be future-pointing time-like.
    """
    dx = p1.as_array() - p0.as_array()
    norm2 = dx[0] ** 2 + dx[1] ** 2 + space.sign * dx[2] ** 2
    if space.sign == -1 and not norm2 < 0:
        raise DomainError("points are not time-like separated")
    length = np.sqrt(abs(norm2))
    if length == 0:
        raise DomainError("coincident points")
    dx = dx / length
    return line_from_point_direction(space, p0, (complex(dx[0], dx[1]), dx[2]))
