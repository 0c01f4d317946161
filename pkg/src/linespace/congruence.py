"""Line congruences: optical scalars, induced geometry and curvature.

A congruence is either the graph of a section ``xi -> (xi, F(xi, xibar))``
(a :class:`~linespace.jets.SectionJet`) or a general parametric surface
``nu -> (xi(nu), eta(nu))`` (:class:`ParametricCongruence`).  Derivatives are
carried by :class:`~linespace.jets.WirtingerJet` objects, so every formula
below is evaluated from exact (or finite-difference) Taylor data at a point.

Conventions
-----------
* slopes: ``sigma0 = -d conj(F)``, ``rho0 = e^{-2u} d(e^{2u} F)``;
* optical scalars on a graph at affine parameter ``r``::

      rho   = (r + rho0) / ((r + rho0)^2 - |sigma0|^2)
      sigma = sigma0     / ((r + rho0)^2 - |sigma0|^2)

  so the sphere congruence ``F = 0`` has ``rho = 1/r``;
* principal radii of the orthogonal surface at ``r`` are
  ``r + rho0 -/+ |sigma0|``;
* ``K`` is the scalar curvature (twice the Gauss curvature) of the induced
  metric normalised as ``ds^2 = 2i e^{2u}(sigma0 dxi^2 - conj(sigma0) dxibar^2)``
  on Lagrangian graphs.  :func:`induced_metric` uses the symmetrised product
  of :mod:`linespace.kahler` and is half of that, so ``K`` is also the Gauss
  curvature of :func:`induced_metric`.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from .errors import DegenerateFrameError, NotLagrangianError, UmbilicPointError
from .isometry import RigidMotion
from .jets import PolynomialSection, SectionJet, WirtingerJet, conformal_factor_jet, one_plus_jet
from .kahler import (
    LinePoint,
    SpaceKind,
    TangentVector,
    check_domain,
    conformal_data,
    metric_value,
    symplectic_value,
)

#: |sigma0| below this (times the local scale) is treated as an umbilic point.
UMBILIC_TOL = 1e-8
#: relative threshold for a vanishing parametric-route denominator.
DEGENERATE_TOL = 1e-12


class ParametricCongruence:
    """Surface ``nu -> (xi, eta)`` in TN given by a jet builder.

    Parameters
    ----------
    space : SpaceKind
    builder : callable
        ``builder(nu_jet) -> (xi_jet, eta_jet)``; ``nu_jet`` is the coordinate
        jet of ``nu`` (order ``input_order``) and the outputs must have order
        at least 1.
    r_field : callable, optional
        ``nu -> r``, the affine parameter used when none is passed explicitly.
    """

    def __init__(self, space: SpaceKind, builder: Callable, r_field: Callable | None = None,
                 input_order: int = 2, label: str = "parametric"):
        self.space = space
        self.builder = builder
        self.r_field = r_field
        self.input_order = input_order
        self.label = label

    def jets(self, nu):
        return self.builder(WirtingerJet.variable(complex(nu), self.input_order))

    @classmethod
    def from_graph(cls, sec: SectionJet, r_field: Callable | None = None) -> "ParametricCongruence":
        def builder(z):
            return WirtingerJet.variable(z.value, sec.order), sec.jet(z.value)

        return cls(sec.space, builder, r_field, input_order=1, label=f"graph:{sec!r}")

    def __repr__(self):
        return f"ParametricCongruence({self.space.name}, {self.label})"


def _surface_jets(space: SpaceKind, surface, nu):
    if isinstance(surface, ParametricCongruence):
        return surface.jets(nu)
    if isinstance(surface, SectionJet):
        return WirtingerJet.variable(complex(nu), max(surface.order, 1)), surface.jet(nu)
    raise TypeError(f"not a congruence: {surface!r}")


def _first_order(xj: WirtingerJet, ej: WirtingerJet):
    return (xj.value, ej.value, xj.deriv(1, 0), xj.deriv(0, 1), ej.deriv(1, 0), ej.deriv(0, 1))


# ---------------------------------------------------------------------------
# optical scalars of a parametric congruence
# ---------------------------------------------------------------------------


def dplus_dminus(space: SpaceKind, cong, nu, r: float | None = None):
    """``(d+ eta, d- eta)`` of a parametric congruence at ``nu``.

    ``d+ eta = d eta + r d xi -+ 2 conj(xi) eta d xi / (1 +- xi conj(xi))`` and
    likewise for ``d-`` with ``dbar``.
    """
    if not isinstance(cong, ParametricCongruence):
        cong = ParametricCongruence.from_graph(cong)
    if r is None:
        if cong.r_field is None:
            raise ValueError("no affine parameter r given and the congruence has no r_field")
        r = cong.r_field(nu)
    xi, eta, dxi, dbxi, deta, dbeta = _first_order(*cong.jets(nu))
    check_domain(space, xi)
    p = 1.0 + space.sign * (xi * np.conj(xi)).real
    c = -space.sign * 2.0 * np.conj(xi) * eta / p
    return deta + (r + c) * dxi, dbeta + (r + c) * dbxi


def spin_coefficients_parametric(space: SpaceKind, cong, nu, r: float | None = None):
    """Optical scalars ``(rho, sigma)`` of a parametric congruence.

    The denominator is ``|d+ eta|^2 - |d- eta|^2`` (orientation chosen so that
    the sphere congruence has ``rho = +1/r``).
    """
    if not isinstance(cong, ParametricCongruence):
        cong = ParametricCongruence.from_graph(cong)
    dp, dm = dplus_dminus(space, cong, nu, r)
    _, _, dxi, dbxi, _, _ = _first_order(*cong.jets(nu))
    den = abs(dp) ** 2 - abs(dm) ** 2
    scale = abs(dp) ** 2 + abs(dm) ** 2
    if scale == 0 or abs(den) <= DEGENERATE_TOL * scale:
        raise DegenerateFrameError(f"degenerate frame at nu={complex(nu):.6g}")
    # d conj(xi) = conj(dbar xi), dbar conj(xi) = conj(d xi)
    rho = (dp * np.conj(dxi) - dm * np.conj(dbxi)) / den
    sigma = (np.conj(dp) * np.conj(dbxi) - np.conj(dm) * np.conj(dxi)) / den
    return complex(rho), complex(sigma)


# ---------------------------------------------------------------------------
# Graph sections: slopes and their jets
# ---------------------------------------------------------------------------


def slope_jets(space: SpaceKind, sec: SectionJet, xi):
    """Jets of ``(sigma0, rho0, F)`` at ``xi`` (slope jets lose one order)."""
    check_domain(space, xi)
    f = sec.jet(xi)
    e2u = conformal_factor_jet(space, complex(xi), f.order)
    sigma0 = -(f.conj().d())
    rho0 = (e2u * f).d() / e2u.truncate(f.order - 1)
    return sigma0, rho0, f


def slopes(space: SpaceKind, sec: SectionJet, xi):
    """Complex slopes ``(sigma0, rho0)`` of a graph section at ``xi``."""
    check_domain(space, xi)
    f = sec.jet(xi)
    xi = complex(xi)
    p = 1.0 + space.sign * abs(xi) ** 2
    du = -space.sign * np.conj(xi) / p
    sigma0 = -np.conj(f.deriv(0, 1))
    rho0 = f.deriv(1, 0) + 2.0 * du * f.value
    return complex(sigma0), complex(rho0)


def spin_coefficients_graph(space: SpaceKind, sec: SectionJet, xi, r: float):
    """``(rho, sigma)`` from the slopes at affine parameter ``r``."""
    sigma0, rho0 = slopes(space, sec, xi)
    a = r + rho0
    den = a * a - abs(sigma0) ** 2
    if abs(den) <= DEGENERATE_TOL * (abs(a) ** 2 + abs(sigma0) ** 2) or den == 0:
        raise DegenerateFrameError(f"focal point at xi={complex(xi):.6g}, r={r}")
    return complex(a / den), complex(sigma0 / den)


# ---------------------------------------------------------------------------
# Pulled-back structures
# ---------------------------------------------------------------------------


def coordinate_tangents(space: SpaceKind, surface, nu):
    """Point and push-forwards of ``d/dx``, ``d/dy`` (``nu = x + i y``)."""
    xi, eta, dxi, dbxi, deta, dbeta = _first_order(*_surface_jets(space, surface, nu))
    vx = TangentVector(dxi + dbxi, deta + dbeta)
    vy = TangentVector(1j * (dxi - dbxi), 1j * (deta - dbeta))
    return LinePoint(xi, eta), vx, vy


def lagrangian_residual(space: SpaceKind, surface, nu) -> float:
    """``Omega(d/dx, d/dy)`` pulled back to the surface; zero iff Lagrangian there.

    For a graph section this equals ``2 e^{2u} Im(rho0)``.
    """
    p, vx, vy = coordinate_tangents(space, surface, nu)
    return float(symplectic_value(space, p, vx, vy))


def holomorphic_residual(space: SpaceKind, surface, nu) -> float:
    """``e^{4u} |d xi dbar eta - d eta dbar xi|^2``; zero iff the tangent plane is complex."""
    xi, eta, dxi, dbxi, deta, dbeta = _first_order(*_surface_jets(space, surface, nu))
    e2u = conformal_data(space, xi).e2u
    return float(e2u**2 * abs(dxi * dbeta - deta * dbxi) ** 2)


def _signature(det: float, scale: float, tol: float) -> str:
    if abs(det) <= tol * scale:
        return "degenerate"
    return "lorentzian" if det < 0 else "riemannian"


def induced_metric(space: SpaceKind, surface, nu, tol: float = 1e-10):
    """Induced metric in the ``(Re nu, Im nu)`` basis and its signature tag.

    Returns
    -------
    (ndarray of shape (2, 2), str)
        The tag is ``"lorentzian"``, ``"degenerate"`` or ``"riemannian"``.
    """
    p, vx, vy = coordinate_tangents(space, surface, nu)
    gxx = float(metric_value(space, p, vx, vx))
    gxy = float(metric_value(space, p, vx, vy))
    gyy = float(metric_value(space, p, vy, vy))
    mat = np.array([[gxx, gxy], [gxy, gyy]])
    det = gxx * gyy - gxy * gxy
    scale = gxx * gxx + 2 * gxy * gxy + gyy * gyy
    return mat, _signature(det, scale, tol)


# ---------------------------------------------------------------------------
# Support function
# ---------------------------------------------------------------------------


def support_gradient(space: SpaceKind, F, xi):
    """``dbar r = +-2 F / (1 +- xi xibar)^2`` (vectorised in ``xi`` and ``F``)."""
    p = 1.0 + space.sign * np.abs(xi) ** 2
    return space.sign * 2.0 * F / p**2


def support_integrate(space: SpaceKind, sec: SectionJet, path, r0: float = 0.0, nodes: int = 10,
                      max_step: float = 0.05, lag_tol: float | None = 1e-8) -> float:
    """Integrate ``dr = 2 Re(dbar r dxibar)`` along a polyline in the ``xi`` plane.

    Each segment is cut into pieces no longer than ``max_step`` and integrated
    with ``nodes``-point Gauss-Legendre quadrature.  With ``lag_tol`` set, the
    section is checked to be Lagrangian at every vertex
    (:class:`NotLagrangianError` otherwise); the result is then path independent.
    """
    path = np.atleast_1d(np.asarray(path, dtype=complex))
    if path.size < 2:
        return float(r0)
    check_domain(space, path)
    if lag_tol is not None:
        for z in path:
            _, rho0 = slopes(space, sec, z)
            if abs(rho0.imag) > lag_tol * max(1.0, abs(rho0)):
                raise NotLagrangianError(f"section is not Lagrangian at xi={z:.6g} (Im rho0={rho0.imag:.3e})")
    x, w = np.polynomial.legendre.leggauss(nodes)
    tau, wts = [], []
    for a, b in zip(path[:-1], path[1:]):
        npieces = max(1, int(np.ceil(abs(b - a) / max_step)))
        edges = np.linspace(0.0, 1.0, npieces + 1)
        for lo, hi in zip(edges[:-1], edges[1:]):
            t = lo + (hi - lo) * (x + 1.0) / 2.0
            tau.append(a + t * (b - a))
            wts.append((hi - lo) / 2.0 * w * np.conj(b - a))
    z = np.concatenate(tau)
    dz_bar = np.concatenate(wts)
    check_domain(space, z)
    F = np.asarray(sec.value(z), dtype=complex)
    return float(r0 + 2.0 * np.sum(np.real(support_gradient(space, F, z) * dz_bar)))


def cm2_residual(space: SpaceKind, sec: SectionJet, xi, method: str = "jet", h: float = 2.5e-4) -> complex:
    """``dbar rho0 + e^{-2u} d(conj(sigma0) e^{2u}) + F e^{2u} kappa / 2``.

    This vanishes identically for every section.  ``method="jet"`` takes the
    outer derivatives on the slope jets (a check of the jet algebra);
    ``method="fd"`` differentiates :func:`slopes` numerically instead, which
    only shares the first-order slope formulas with the identity.
    """
    xi = complex(xi)
    f = sec.jet(xi)
    e2u = conformal_factor_jet(space, xi, max(f.order, 1))
    if method == "jet":
        if f.order < 2:
            raise ValueError("cm2 needs jets of order 2")
        rho0 = (e2u * f).d() / e2u.truncate(f.order - 1)
        sigma0_bar = -(f.dbar())
        lhs = rho0.dbar().value
        rhs = -(sigma0_bar * e2u.truncate(f.order - 1)).d().value / e2u.value
    elif method == "fd":
        def fields(z):
            s0, r0 = slopes(space, sec, z)
            return np.array([r0, np.conj(s0) * conformal_data(space, z).e2u])

        gx = (fields(xi - 2 * h) - 8 * fields(xi - h) + 8 * fields(xi + h) - fields(xi + 2 * h)) / (12 * h)
        gy = (fields(xi - 2j * h) - 8 * fields(xi - 1j * h) + 8 * fields(xi + 1j * h) - fields(xi + 2j * h)) / (12 * h)
        lhs = 0.5 * (gx[0] + 1j * gy[0])
        rhs = -0.5 * (gx[1] - 1j * gy[1]) / e2u.value
    else:
        raise ValueError(f"unknown method {method!r}")
    rhs -= 0.5 * f.value * e2u.value * space.kappa
    return complex(lhs - rhs)


# ---------------------------------------------------------------------------
# Curvature
# ---------------------------------------------------------------------------


def _umbilic_check(sigma0, rho0, xi, tol):
    scale = max(1.0, abs(rho0))
    if abs(sigma0) < tol * scale:
        raise UmbilicPointError(f"umbilic point at xi={complex(xi):.6g} (|sigma0|={abs(sigma0):.3e})")


def dbar_r_plus_rho0(space: SpaceKind, sec: SectionJet, xi) -> complex:
    """``dbar(r + rho0) = -(1 +- xi xibar)^2 d(conj(sigma0) / (1 +- xi xibar)^2)``."""
    sigma0, _, f = slope_jets(space, sec, xi)
    p2 = one_plus_jet(space, complex(xi), sigma0.order) ** 2
    return complex(-(p2.value) * (sigma0.conj() / p2).d().value)


def scalar_curvature_graph(space: SpaceKind, sec: SectionJet, xi, umbilic_tol: float = UMBILIC_TOL) -> float:
    """Scalar curvature of the induced metric on a Lagrangian graph.

    ``K = -(1 +- xi xibar)^2 / (8 |sigma0|^4) Im[d(|sigma0|^2) dbar(r + rho0)]``
    with ``dbar(r + rho0)`` expressed through ``sigma0`` so no ``r`` is needed.
    """
    sigma0, rho0, f = slope_jets(space, sec, xi)
    if sigma0.order < 2:
        raise ValueError("scalar curvature needs section jets of order 3")
    _umbilic_check(sigma0.value, rho0.value, xi, umbilic_tol)
    s2 = sigma0 * sigma0.conj()
    p2 = one_plus_jet(space, complex(xi), sigma0.order) ** 2
    dbar_rr = -p2.value * (sigma0.conj() / p2).d().value
    k = -p2.value.real / (8.0 * abs(sigma0.value) ** 4) * (s2.d().value * dbar_rr).imag
    return float(k)


def gauss_curvature_graph(space: SpaceKind, sec: SectionJet, xi, umbilic_tol: float = UMBILIC_TOL) -> float:
    """Gauss curvature ``e^{-4u}/(4|sigma0|^4) Im[d(|sigma0|^2) d(conj(sigma0) e^{2u})]``."""
    sigma0, rho0, f = slope_jets(space, sec, xi)
    _umbilic_check(sigma0.value, rho0.value, xi, umbilic_tol)
    e2u = conformal_factor_jet(space, complex(xi), sigma0.order)
    s2 = sigma0 * sigma0.conj()
    val = (s2.d().value * (sigma0.conj() * e2u).d().value).imag
    return float(val / (4.0 * e2u.value.real**2 * abs(sigma0.value) ** 4))


_D1 = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0
_D2 = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0


def metric_scalar_curvature(space: SpaceKind, surface, nu, h: float = 1e-3) -> float:
    """Scalar curvature of the induced metric by finite differences (Brioschi formula).

    Independent of the slope formulas: only the induced metric at a 5x5 grid
    of nearby parameter values is used.  The metric is taken as twice
    :func:`induced_metric` (the normalisation of ``K``, see the module notes).
    """
    nu = complex(nu)
    off = np.arange(-2, 3) * h
    E = np.empty((5, 5))
    Fm = np.empty((5, 5))
    G = np.empty((5, 5))
    for i, dx in enumerate(off):
        for j, dy in enumerate(off):
            m, _ = induced_metric(space, surface, nu + dx + 1j * dy)
            m = 2.0 * m
            E[i, j], Fm[i, j], G[i, j] = m[0, 0], m[0, 1], m[1, 1]

    def du(a):
        return _D1 @ a[:, 2] / h

    def dv(a):
        return a[2, :] @ _D1 / h

    def duu(a):
        return _D2 @ a[:, 2] / h**2

    def dvv(a):
        return a[2, :] @ _D2 / h**2

    def duv(a):
        return _D1 @ a @ _D1 / h**2

    e, f, g = E[2, 2], Fm[2, 2], G[2, 2]
    m1 = np.array([
        [-0.5 * dvv(E) + duv(Fm) - 0.5 * duu(G), 0.5 * du(E), du(Fm) - 0.5 * dv(E)],
        [dv(Fm) - 0.5 * du(G), e, f],
        [0.5 * dv(G), f, g],
    ])
    m2 = np.array([
        [0.0, 0.5 * dv(E), 0.5 * du(G)],
        [0.5 * dv(E), e, f],
        [0.5 * du(G), f, g],
    ])
    gauss = (np.linalg.det(m1) - np.linalg.det(m2)) / (e * g - f * f) ** 2
    return float(2.0 * gauss)


# ---------------------------------------------------------------------------
# Spin data and principal curvatures
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpinData:
    xi: complex
    sigma0: complex
    rho0: complex
    r: float
    rho: complex
    sigma: complex
    lambda1: float
    lambda2: float
    K: float

    def as_dict(self) -> dict:
        return asdict(self)


def principal_curvatures(sd, tol: float = 1e-9):
    """``(lambda1, lambda2, angle)`` with ``lambda1 = rho + |sigma| >= lambda2``.

    ``angle`` is ``arg(sigma) / 2``, the rotation from the frame to the
    principal directions.  Raises :class:`NotLagrangianError` if ``rho`` is not real.
    """
    rho = complex(sd.rho)
    if abs(rho.imag) > tol * max(1.0, abs(rho)):
        raise NotLagrangianError(f"rho is not real (Im rho = {rho.imag:.3e})")
    s = abs(sd.sigma)
    return rho.real + s, rho.real - s, float(np.angle(sd.sigma)) / 2.0


def spin_data(space: SpaceKind, sec: SectionJet, xi, r: float, umbilic_tol: float = UMBILIC_TOL) -> SpinData:
    """Slopes, optical scalars, principal curvatures and ``K`` at ``xi``.

    Entries that are undefined at the point (``K`` at umbilics, ``lambda`` off
    Lagrangian points) are NaN.
    """
    sigma0, rho0 = slopes(space, sec, xi)
    rho, sigma = spin_coefficients_graph(space, sec, xi, r)
    sd = SpinData(complex(xi), sigma0, rho0, float(r), rho, sigma, np.nan, np.nan, np.nan)
    try:
        l1, l2, _ = principal_curvatures(sd)
    except NotLagrangianError:
        l1 = l2 = np.nan
    try:
        k = scalar_curvature_graph(space, sec, xi, umbilic_tol)
    except UmbilicPointError:
        k = np.nan
    return SpinData(complex(xi), sigma0, rho0, float(r), rho, sigma, l1, l2, k)


# ---------------------------------------------------------------------------
# Weingarten detection
# ---------------------------------------------------------------------------


def _lambdas(space, sec, z, r):
    rho, sigma = spin_coefficients_graph(space, sec, z, r)
    return rho.real + abs(sigma), rho.real - abs(sigma)


def lambda_wedge(space: SpaceKind, sec: SectionJet, xi, r: float, h: float = 1e-3) -> float:
    """Normalised ``d lambda1 ^ d lambda2`` at the orthogonal surface through ``(xi, r)``.

    ``r`` at neighbouring points comes from :func:`support_integrate`; the
    result is the sine of the angle between the two gradients (0 when one
    gradient vanishes).
    """
    xi = complex(xi)
    grads = np.zeros((2, 2))
    for axis, unit in enumerate((1.0, 1j)):
        vals = []
        for k in (-2, -1, 1, 2):
            z = xi + k * h * unit
            rz = support_integrate(space, sec, [xi, z], r, nodes=6, lag_tol=None)
            vals.append(_lambdas(space, sec, z, rz))
        vals = np.array(vals)
        grads[:, axis] = (vals[0] - 8 * vals[1] + 8 * vals[2] - vals[3]) / (12 * h)
    n1 = np.hypot(*grads[0])
    n2 = np.hypot(*grads[1])
    if n1 * n2 < 1e-14:
        return 0.0
    return float((grads[0, 0] * grads[1, 1] - grads[0, 1] * grads[1, 0]) / (n1 * n2))


@dataclass
class WeingartenReport:
    is_weingarten: bool
    is_weingarten_wedge: bool
    agree: bool
    max_abs_K: float
    max_abs_wedge: float
    umbilic_cells: int
    samples: list

    def as_dict(self) -> dict:
        return asdict(self)


def weingarten_test(space: SpaceKind, sec: SectionJet, grid, r0: float = 2.0, anchor: complex = 0j,
                    tol: float = 1e-6, wedge_tol: float = 1e-6, h: float = 1e-3) -> WeingartenReport:
    """Scalar-curvature and ``d lambda1 ^ d lambda2`` Weingarten detectors over a grid.

    ``grid`` is an array of ``xi`` values; ``r`` is anchored at ``r0`` at
    ``anchor``.  Umbilic cells are skipped and counted.
    """
    pts = np.asarray(grid, dtype=complex).ravel()
    samples = []
    umb = 0
    max_k = 0.0
    max_w = 0.0
    for z in pts:
        try:
            k = scalar_curvature_graph(space, sec, z)
        except UmbilicPointError:
            umb += 1
            continue
        r = support_integrate(space, sec, [anchor, z], r0)
        w = lambda_wedge(space, sec, z, r, h)
        max_k = max(max_k, abs(k))
        max_w = max(max_w, abs(w))
        samples.append((complex(z), k, w))
    by_k = max_k <= tol
    by_w = max_w <= wedge_tol
    return WeingartenReport(by_k, by_w, by_k == by_w, max_k, max_w, umb, samples)


# ---------------------------------------------------------------------------
# Example congruences
# ---------------------------------------------------------------------------


def rotational_section(space: SpaceKind, g=(0.1, 0.1)) -> PolynomialSection:
    """``F = xi g(xi xibar)`` with real polynomial ``g`` (ascending coefficients).

    These are Lagrangian and orthogonal to surfaces of revolution.
    """
    return PolynomialSection(space, [(k + 1, k, float(c)) for k, c in enumerate(g)])


def perturbed_section(space: SpaceKind, g=(0.1, 0.1), eps: float = 0.1) -> PolynomialSection:
    """``xi g(xi xibar) + eps (1 +- xi xibar)^2 (xi + xibar) / 4``: Lagrangian, not Weingarten."""
    sg = space.sign
    terms = [(k + 1, k, float(c)) for k, c in enumerate(g)]
    # (1 + 2 sg s + s^2)(xi + xibar) / 4
    for k, c in enumerate((1.0, 2.0 * sg, 1.0)):
        terms.append((k + 1, k, eps * c / 4.0))
        terms.append((k, k + 1, eps * c / 4.0))
    return PolynomialSection(space, terms)


#: sample point at which the perturbed section's K is certified non-zero.
PERTURBED_SAMPLE_POINT = 0.3 + 0.2j


def cylinder_congruence() -> ParametricCongruence:
    """Normals of the Euclidean cylinders about the x3-axis, ``nu = phi + i x3``.

    ``xi = e^{i phi}``, ``eta = -x3 xi``.  The congruence lies over the
    equator ``|xi| = 1`` so it is not a graph (flat branch of the Weingarten
    theorem); the cylinder of radius ``R`` sits at ``r = R``.
    """
    from .kahler import EUCLIDEAN

    def builder(nu):
        xi = (nu.real * 1j).exp()
        return xi, -(nu.imag * xi)

    return ParametricCongruence(EUCLIDEAN, builder, input_order=3, label="cylinder")


def section_on_jet(sec: PolynomialSection, z: WirtingerJet) -> WirtingerJet:
    """Evaluate a polynomial section on a coordinate jet (composition)."""
    zb = z.conj()
    out = WirtingerJet.constant(0.0, z.order)
    for m, n, c in sec.terms:
        out = out + (z**m) * (zb**n) * c
    return out


def transformed_section(space: SpaceKind, m: RigidMotion, sec: PolynomialSection):
    """The image of a polynomial section under a rigid motion, as a jet section.

    ``xi' = (alpha xi + beta) / (-+ conj(beta) xi + conj(alpha))`` and
    ``eta' = eta / den^2 + (gamma - 2 delta xi' -+ conj(gamma) xi'^2) / 2``.
    """
    from .jets import JetSection

    m.check(space)
    sg = space.sign
    a, b = complex(m.alpha), complex(m.beta)
    ac, bc = a.conjugate(), b.conjugate()
    gamma, delta = complex(m.gamma), float(m.delta)

    def builder(z2):
        z = (z2 * ac - b) / (z2 * (sg * bc) + a)
        den = z * (-sg * bc) + ac
        eta = section_on_jet(sec, z) / den**2
        return eta + 0.5 * (gamma - z2 * (2.0 * delta) - (z2**2) * (sg * gamma.conjugate()))

    def forward(xi):
        return (a * xi + b) / (-sg * bc * xi + ac)

    js = JetSection(space, builder, input_order=sec.order, label="moved")
    js.forward = forward
    return js
