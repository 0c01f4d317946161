"""Geodesics of G, the closed-form TH^2 family and their ruled surfaces.

Geodesics off the fibres project to geodesics of the base; fibre lines
``eta(s) = eta0 + s deta0`` are null geodesics.  On TH^2, starting from the
x3-axis, the general solution is::

    xi  = tanh(C2 s) e^{i theta}
    eta = (C5 sinh(2 C2 s) - i C1 s) e^{i theta} / (4 C2 cosh^2(C2 s))
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DomainError, DomainExitError, SpaceMismatchError
from .kahler import (
    DISC_MARGIN,
    LORENTZIAN,
    LinePoint,
    SpaceKind,
    TangentVector,
    check_domain,
    metric_value,
)
from .linemap import LineWithParam, to_space

#: Euclidean trajectories are stopped once |xi| exceeds this (chart antipode).
EUCLIDEAN_XI_LIMIT = 1e6


@dataclass(frozen=True)
class GeodesicState:
    xi: complex
    eta: complex
    dxi: complex
    deta: complex
    s: float = 0.0

    @property
    def point(self) -> LinePoint:
        return LinePoint(self.xi, self.eta)

    @property
    def velocity(self) -> TangentVector:
        return TangentVector(self.dxi, self.deta)


@dataclass(frozen=True)
class GeodesicParams:
    """Constants of a TH^2 geodesic through the x3-axis at ``s = 0``.

    ``C1`` is the first integral (zero iff null), ``C2 != 0`` the base speed,
    ``C5`` the offset along the axis and ``theta`` the initial direction.
    """

    C1: float
    C2: float
    C5: float = 0.0
    theta: float = 0.0

    def __post_init__(self):
        if self.C2 == 0:
            raise ValueError("C2 must be non-zero (C2 = 0 is a fibre geodesic)")

    def initial_state(self) -> GeodesicState:
        rot = np.exp(1j * self.theta)
        deta = (2.0 * self.C2 * self.C5 - 1j * self.C1) * rot / (4.0 * self.C2)
        return GeodesicState(0j, 0j, self.C2 * rot, deta, 0.0)

    @classmethod
    def from_initial_velocity(cls, dxi0: complex, deta0: complex) -> "GeodesicParams":
        """Constants of the geodesic leaving the x3-axis with velocity ``(dxi0, deta0)``."""
        c2 = abs(dxi0)
        if c2 == 0:
            raise ValueError("dxi0 = 0 is a fibre geodesic")
        theta = float(np.angle(dxi0)) % (2 * np.pi)
        w = 4.0 * c2 * deta0 * np.exp(-1j * theta)
        return cls(C1=float(-w.imag), C2=float(c2), C5=float(w.real / (2.0 * c2)), theta=theta)


def geodesic_rhs(space: SpaceKind, st: GeodesicState):
    """Accelerations ``(xi'', eta'')``:

    ``xi'' = -2 du xi'^2``,
    ``eta'' = -4 du xi' eta' - 2 (eta ddu - conj(eta) dbar_du) xi'^2``.
    """
    check_domain(space, st.xi)
    return kernels.geodesic_accel(
        space.sign, complex(st.xi), complex(st.eta), complex(st.dxi), complex(st.deta)
    )


class Trajectory:
    """Dense RK4 output; indexing yields :class:`GeodesicState` values."""

    def __init__(self, s, states):
        self.s = np.asarray(s, dtype=float)
        states = np.asarray(states, dtype=complex)
        self.xi = states[:, 0]
        self.eta = states[:, 1]
        self.dxi = states[:, 2]
        self.deta = states[:, 3]

    def __len__(self):
        return len(self.s)

    def __getitem__(self, k):
        return GeodesicState(self.xi[k], self.eta[k], self.dxi[k], self.deta[k], float(self.s[k]))

    def __iter__(self):
        for k in range(len(self)):
            yield self[k]

    @property
    def points(self) -> LinePoint:
        return LinePoint(self.xi, self.eta)

    @property
    def velocities(self) -> TangentVector:
        return TangentVector(self.dxi, self.deta)


def integrate_geodesic(space: SpaceKind, st0: GeodesicState, s1: float, step: float) -> Trajectory:
    """Fixed-step RK4 from ``st0.s`` to ``s1`` with output at every step.

    Raises :class:`DomainExitError` (carrying the valid part of the
    trajectory) if the curve leaves the chart.
    """
    if step <= 0:
        raise ValueError("step must be positive")
    if s1 < st0.s:
        raise ValueError("s1 must not precede the initial parameter")
    check_domain(space, st0.xi)
    nsteps = int(round((s1 - st0.s) / step))
    limit = 1.0 - DISC_MARGIN if space.sign == -1 else EUCLIDEAN_XI_LIMIT
    y0 = (complex(st0.xi), complex(st0.eta), complex(st0.dxi), complex(st0.deta))
    states, n_valid = kernels.rk4_geodesic(space.sign, y0, float(step), nsteps, limit)
    s = st0.s + step * np.arange(nsteps + 1)
    if n_valid < nsteps + 1:
        partial = Trajectory(s[:n_valid], states[:n_valid])
        raise DomainExitError(f"geodesic left the chart after s = {s[n_valid - 1]:.6g}", partial)
    return Trajectory(s, states)


def energy(space: SpaceKind, st) -> float:
    """``G(c', c')``; constant along affinely parametrised geodesics."""
    return metric_value(space, LinePoint(st.xi, st.eta), TangentVector(st.dxi, st.deta),
                        TangentVector(st.dxi, st.deta))


def first_integral(space: SpaceKind, st) -> float:
    """The conserved quantity ``C1`` of a TH^2 geodesic (equals ``G(c', c') / 2``)."""
    if space.sign != -1:
        raise SpaceMismatchError("the first integral C1 is defined on TH^2 only")
    xi, eta, dxi, deta = st.xi, st.eta, st.dxi, st.deta
    check_domain(space, xi)
    q = 1.0 - np.real(xi * np.conj(xi))
    bracket = (
        deta * np.conj(dxi)
        - np.conj(deta) * dxi
        - 2.0 * (xi * np.conj(eta) - np.conj(xi) * eta) * dxi * np.conj(dxi) / q
    )
    return np.real(2j / q**2 * bracket)


def closed_form_th2(gp: GeodesicParams, s) -> LinePoint:
    c2s = gp.C2 * np.asarray(s, dtype=float)
    rot = np.exp(1j * gp.theta)
    xi = np.tanh(c2s) * rot
    num = gp.C5 * np.sinh(2.0 * c2s) - 1j * gp.C1 * np.asarray(s, dtype=float)
    eta = num * rot / (4.0 * gp.C2 * np.cosh(c2s) ** 2)
    return LinePoint(xi, eta)


def closed_form_velocity(gp: GeodesicParams, s) -> TangentVector:
    s = np.asarray(s, dtype=float)
    c2s = gp.C2 * s
    rot = np.exp(1j * gp.theta)
    ch2 = np.cosh(c2s) ** 2
    dxi = gp.C2 / ch2 * rot
    num = gp.C5 * np.sinh(2.0 * c2s) - 1j * gp.C1 * s
    dnum = 2.0 * gp.C2 * gp.C5 * np.cosh(2.0 * c2s) - 1j * gp.C1
    deta = rot * (dnum - 2.0 * gp.C2 * np.tanh(c2s) * num) / (4.0 * gp.C2 * ch2)
    return TangentVector(dxi, deta)


def closed_form_state(gp: GeodesicParams, s: float) -> GeodesicState:
    p = closed_form_th2(gp, s)
    v = closed_form_velocity(gp, s)
    return GeodesicState(complex(p.xi), complex(p.eta), complex(v.dxi), complex(v.deta), float(s))


def ruled_surface(space: SpaceKind, geodesic, s_values=None, r_values=(-1.0, 1.0, 11)) -> np.ndarray:
    """Points swept by the lines of a geodesic: array ``(len(s), len(r), 3)`` of ``(x1, x2, x3)``.

    ``geodesic`` is either :class:`GeodesicParams` (TH^2 closed form, ``s_values``
    required) or a :class:`Trajectory` (its own ``s`` grid is used).
    ``r_values`` may be an explicit sequence or a ``(start, stop, count)`` triple.
    """
    r = _as_grid(r_values)
    if isinstance(geodesic, GeodesicParams):
        if space.sign != -1:
            raise SpaceMismatchError("closed-form geodesics are only available on TH^2")
        if s_values is None:
            raise ValueError("s_values required for a closed-form geodesic")
        s = _as_grid(s_values)
        lp = closed_form_th2(geodesic, s)
    else:
        lp = geodesic.points
    xi = np.asarray(lp.xi)[:, None] * np.ones_like(r)[None, :]
    eta = np.asarray(lp.eta)[:, None] * np.ones_like(r)[None, :]
    rr = np.ones(np.shape(lp.xi))[:, None] * r[None, :]
    try:
        pt = to_space(space, LineWithParam(LinePoint(xi, eta), rr))
    except DomainError as exc:
        raise DomainError("geodesic leaves the chart") from exc
    return np.stack([np.real(pt.z), np.imag(pt.z), np.asarray(pt.t, dtype=float)], axis=-1)


def helicoid_standard(gp: GeodesicParams, s, t) -> np.ndarray:
    """Standard-position helicoid ``(t sinh 2C2s, -C1 s / 2C2, t cosh 2C2s)``."""
    s = np.asarray(s, dtype=float)[:, None]
    t = np.asarray(t, dtype=float)[None, :]
    x1 = t * np.sinh(2.0 * gp.C2 * s)
    x2 = -gp.C1 * s / (2.0 * gp.C2) * np.ones_like(t)
    x3 = t * np.cosh(2.0 * gp.C2 * s)
    return np.stack(np.broadcast_arrays(x1, x2, x3), axis=-1)


def fibre_geodesic(eta0: complex, deta0: complex, xi0: complex = 0j) -> GeodesicState:
    return GeodesicState(complex(xi0), complex(eta0), 0j, complex(deta0), 0.0)


def _as_grid(spec) -> np.ndarray:
    if isinstance(spec, tuple) and len(spec) == 3 and isinstance(spec[2], int):
        return np.linspace(spec[0], spec[1], spec[2])
    return np.atleast_1d(np.asarray(spec, dtype=float))
