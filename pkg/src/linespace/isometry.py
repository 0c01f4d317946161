"""Killing fields of G and the action of rigid motions on line space.

Killing fields are determined by two holomorphic quadratics: ``a0`` (a Killing
field of the base) and ``b1`` (a holomorphic Lagrangian section).  In
coordinates::

    V^xi  = a0(xi)
    V^eta = b1(xi) - (conj(a0'(xi)) + 2 a0 du + 2 conj(a0) conj(du)) eta

Rigid motions ``x -> R x + T`` act on lines through the fractional linear
map of the rotation part on ``xi`` (with ``eta`` transforming as a tangent
vector) followed by the translation shift of ``eta``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .kahler import REAL_BASIS, LinePoint, SpaceKind, TangentVector, conformal_data, metric_matrix
from .linemap import (
    LineWithParam,
    SpacePoint,
    direction_vector,
    line_through_points,
    to_space,
)


def _poly(coeffs, xi):
    c0, c1, c2 = coeffs
    return c0 + c1 * xi + c2 * xi**2


def _dpoly(coeffs, xi):
    _, c1, c2 = coeffs
    return c1 + 2.0 * c2 * xi


def _ddpoly(coeffs, xi):
    return 2.0 * coeffs[2] + 0.0 * xi


@dataclass(frozen=True)
class KillingField:
    """Quadratic data ``a0 = a0[0] + a0[1] xi + a0[2] xi^2`` and likewise ``b1``.

    ``a1`` (the fibre-rotation coefficient) is identically zero on curved bases
    and is kept only so the general form of the field is visible.
    """

    a0: tuple = (0j, 0j, 0j)
    b1: tuple = (0j, 0j, 0j)
    a1: float = 0.0
    label: str = field(default="", compare=False)

    def __add__(self, other):
        return KillingField(
            tuple(x + y for x, y in zip(self.a0, other.a0)),
            tuple(x + y for x, y in zip(self.b1, other.b1)),
            label=f"{self.label}+{other.label}",
        )


def rotation_generator(space: SpaceKind, alpha_dot: complex, beta_dot: complex, label="") -> KillingField:
    """Infinitesimal rotation (Euclidean) or Lorentz transformation (Lorentzian).

    ``alpha_dot`` must be imaginary.  ``a0 = beta_dot + 2 alpha_dot xi +- conj(beta_dot) xi^2``.
    """
    if abs(np.real(alpha_dot)) > 1e-15:
        raise ValueError("alpha_dot must be purely imaginary")
    a0 = (complex(beta_dot), 2.0 * complex(alpha_dot), space.sign * np.conj(complex(beta_dot)))
    return KillingField(a0=a0, label=label)


def translation_generator(space: SpaceKind, gamma_dot: complex, delta_dot: float, label="") -> KillingField:
    """Infinitesimal translation by ``(gamma_dot, delta_dot)`` in ``(z, t)``."""
    g = complex(gamma_dot)
    b1 = (0.5 * g, -float(delta_dot) + 0j, -0.5 * space.sign * np.conj(g))
    return KillingField(b1=b1, label=label)


def killing_basis(space: SpaceKind) -> list:
    """Six generators: three rotations/boosts followed by three translations."""
    return [
        rotation_generator(space, 0.5j, 0.0, "rot_t"),
        rotation_generator(space, 0.0, 0.5, "rot_re_beta"),
        rotation_generator(space, 0.0, 0.5j, "rot_im_beta"),
        translation_generator(space, 1.0, 0.0, "trans_x1"),
        translation_generator(space, 1j, 0.0, "trans_x2"),
        translation_generator(space, 0.0, 1.0, "trans_x3"),
    ]


def section_from_base_field(kf: KillingField) -> KillingField:
    """The isomorphism ``a0 -> b1 = i a0`` onto holomorphic Lagrangian sections."""
    return KillingField(b1=tuple(1j * c for c in kf.a0), label=f"i*{kf.label}")


def _eta_coefficient(kf, cd, xi):
    a0 = _poly(kf.a0, xi)
    return np.conj(_dpoly(kf.a0, xi)) + 2.0 * a0 * cd.du + 2.0 * np.conj(a0) * np.conj(cd.du)


def killing_eval(field: KillingField, space: SpaceKind, p: LinePoint) -> TangentVector:
    cd = conformal_data(space, p.xi)
    vxi = _poly(field.a0, p.xi) + field.a1 * p.eta
    veta = _poly(field.b1, p.xi) - _eta_coefficient(field, cd, p.xi) * p.eta
    return TangentVector(vxi, veta)


def _killing_jacobian(field, space, p):
    """Analytic ``dV^i / dX^j`` in real coordinates ``X = (x, y, p, q)``."""
    if field.a1 != 0.0:
        raise NotImplementedError("fibre-rotation fields only occur on flat bases")
    xi, eta = p.xi, p.eta
    cd = conformal_data(space, xi)
    a0 = _poly(field.a0, xi)
    da0 = _dpoly(field.a0, xi)
    dda0 = _ddpoly(field.a0, xi)
    db1 = _dpoly(field.b1, xi)
    coef = _eta_coefficient(field, cd, xi)
    dbar_bar_u = np.conj(cd.ddu)
    d_coef = 2.0 * da0 * cd.du + 2.0 * a0 * cd.ddu + 2.0 * np.conj(a0) * cd.dbar_du
    dbar_coef = (
        np.conj(dda0)
        + 2.0 * a0 * cd.dbar_du
        + 2.0 * np.conj(da0) * np.conj(cd.du)
        + 2.0 * np.conj(a0) * dbar_bar_u
    )
    zero = 0.0 * xi
    dvxi = [da0, 1j * da0, zero, zero]
    dveta = [
        db1 - (d_coef + dbar_coef) * eta,
        1j * db1 - 1j * (d_coef - dbar_coef) * eta,
        -coef,
        -1j * coef,
    ]
    rows = [
        [np.real(c) for c in dvxi],
        [np.imag(c) for c in dvxi],
        [np.real(c) for c in dveta],
        [np.imag(c) for c in dveta],
    ]
    return np.moveaxis(np.array(rows, dtype=float), (0, 1), (-2, -1))


def _shift(p, k, h):
    b = REAL_BASIS[k]
    return LinePoint(p.xi + h * b.dxi, p.eta + h * b.deta)


def _central_diff(space, p, k, h):
    # 5-point central stencil, O(h^4)
    g = lambda m: metric_matrix(space, _shift(p, k, m * h))
    return (-g(2) + 8.0 * g(1) - 8.0 * g(-1) + g(-2)) / (12.0 * h)


def killing_equation(field: KillingField, space: SpaceKind, p: LinePoint, h: float = 1e-5) -> np.ndarray:
    """The tensor ``V^i d_i G_jk + G_ki d_j V^i + G_ji d_k V^i`` (shape ``(..., 4, 4)``).

    Metric derivatives use 5-point central differences with step ``h``; derivatives
    of ``V`` are analytic.
    """
    if h <= 0:
        raise ValueError("h must be positive")
    v = killing_eval(field, space, p)
    vr = np.stack(
        [np.real(v.dxi), np.imag(v.dxi), np.real(v.deta), np.imag(v.deta)], axis=-1
    ).astype(float)
    try:
        dg = np.stack([_central_diff(space, p, k, h) for k in range(4)], axis=-3)
    except DomainError as exc:
        raise DomainError("finite-difference stencil leaves the disc") from exc
    g = metric_matrix(space, p)
    jac = _killing_jacobian(field, space, p)
    lie = np.einsum("...i,...ijk->...jk", vr, dg)
    gj = np.einsum("...ki,...ij->...kj", g, jac)
    return lie + gj + np.swapaxes(gj, -1, -2)


def killing_residual(field: KillingField, space: SpaceKind, p: LinePoint, h: float = 1e-5):
    """Max-norm of the Killing equation at ``p`` (elementwise for array points)."""
    return np.abs(killing_equation(field, space, p, h)).max(axis=(-1, -2))


def killing_flow(field: KillingField, space: SpaceKind, p: LinePoint, t: float, steps: int = 200) -> LinePoint:
    """Integrate the flow of ``field`` for time ``t`` with RK4."""
    y = np.array([p.xi, p.eta], dtype=complex)

    def f(y):
        v = killing_eval(field, space, LinePoint(y[0], y[1]))
        return np.array([v.dxi, v.deta], dtype=complex)

    dt = t / steps
    for _ in range(steps):
        k1 = f(y)
        k2 = f(y + 0.5 * dt * k1)
        k3 = f(y + 0.5 * dt * k2)
        k4 = f(y + dt * k3)
        y = y + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
    return LinePoint(complex(y[0]), complex(y[1]))


# ---------------------------------------------------------------------------
# Finite rigid motions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RigidMotion:
    """``x -> R x + (gamma, delta)`` with ``R`` encoded by ``(alpha, beta)``.

    Normalisation: ``|alpha|^2 + |beta|^2 = 1`` (Euclidean) or
    ``|alpha|^2 - |beta|^2 = 1`` (Lorentzian).
    """

    alpha: complex = 1.0
    beta: complex = 0.0
    gamma: complex = 0.0
    delta: float = 0.0

    def check(self, space: SpaceKind, tol: float = 1e-9) -> None:
        norm = abs(self.alpha) ** 2 + space.sign * abs(self.beta) ** 2
        if abs(norm - 1.0) > tol:
            raise ValueError(f"rotation part not normalised for {space.name} ({norm!r})")

    def su_matrix(self, space: SpaceKind) -> np.ndarray:
        return np.array(
            [[self.alpha, self.beta], [-space.sign * np.conj(self.beta), np.conj(self.alpha)]],
            dtype=complex,
        )


def axis_rotation(phi: float, gamma: complex = 0.0, delta: float = 0.0) -> RigidMotion:
    """Rotation by ``phi`` about the x3-axis (valid in both spaces)."""
    return RigidMotion(np.exp(0.5j * phi), 0.0, gamma, delta)


def boost(a: float, direction: float = 0.0) -> RigidMotion:
    """Lorentzian boost with rapidity ``a``; ``direction`` rotates the boost plane."""
    return RigidMotion(np.cosh(a / 2), np.sinh(a / 2) * np.exp(1j * direction))


def motion_act_on_line(space: SpaceKind, m: RigidMotion, lp: LinePoint) -> LinePoint:
    """Image of the oriented line ``lp`` under ``m`` (fractional linear formula)."""
    m.check(space)
    den = -space.sign * np.conj(m.beta) * lp.xi + np.conj(m.alpha)
    xi2 = (m.alpha * lp.xi + m.beta) / den
    if space.sign == 1 and np.any(~np.isfinite(xi2)):
        raise DomainError("image line points along (0, 0, -1), outside the chart")
    eta2 = lp.eta / den**2 + 0.5 * (m.gamma - 2.0 * m.delta * xi2 - space.sign * np.conj(m.gamma) * xi2**2)
    return LinePoint(xi2, eta2)


def _direction_array(space, xi):
    zd, td = direction_vector(space, xi)
    return np.array([np.real(zd), np.imag(zd), td], dtype=float)


def rotation_matrix(space: SpaceKind, m: RigidMotion) -> np.ndarray:
    """3x3 linear part of ``m`` recovered from its action on three directions.

    The result is validated to preserve the Euclidean / Minkowski form; a
    failure would mean the fractional linear formula is not a rigid rotation.
    """
    m.check(space)
    samples = [0.0, 0.5, 0.5j]
    den = [-space.sign * np.conj(m.beta) * x + np.conj(m.alpha) for x in samples]
    images = [(m.alpha * x + m.beta) / d for x, d in zip(samples, den)]
    src = np.column_stack([_direction_array(space, x) for x in samples])
    dst = np.column_stack([_direction_array(space, x) for x in images])
    rot = dst @ np.linalg.inv(src)
    form = np.diag([1.0, 1.0, float(space.sign)])
    if not np.allclose(rot.T @ form @ rot, form, atol=1e-9):
        raise ArithmeticError("fractional linear map does not induce an isometry of 3-space")
    return rot


def apply_motion_to_point(space: SpaceKind, m: RigidMotion, pt: SpacePoint) -> SpacePoint:
    x = rotation_matrix(space, m) @ pt.as_array()
    x = x + np.array([np.real(m.gamma), np.imag(m.gamma), m.delta])
    return SpacePoint.from_array(x)


def motion_act_on_line_oracle(space: SpaceKind, m: RigidMotion, lp: LinePoint) -> LinePoint:
    """Same action computed in 3-space: move two points of the line and rebuild it."""
    p0 = to_space(space, LineWithParam(lp, 0.0))
    p1 = to_space(space, LineWithParam(lp, 1.0))
    q0 = apply_motion_to_point(space, m, p0)
    q1 = apply_motion_to_point(space, m, p1)
    return line_through_points(space, q0, q1)


def compose(space: SpaceKind, second: RigidMotion, first: RigidMotion) -> RigidMotion:
    """The motion ``second o first``."""
    mat = second.su_matrix(space) @ first.su_matrix(space)
    t1 = np.array([np.real(first.gamma), np.imag(first.gamma), first.delta])
    t2 = np.array([np.real(second.gamma), np.imag(second.gamma), second.delta])
    t = rotation_matrix(space, second) @ t1 + t2
    return RigidMotion(mat[0, 0], mat[0, 1], complex(t[0], t[1]), float(t[2]))
