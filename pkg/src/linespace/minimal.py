"""Minimal (Euclidean) and maximal (Lorentzian) surfaces from line congruences.

A Lagrangian graph ``eta = F`` is normal to a minimal / maximal surface iff
``dbar(d conj(F) / (1 +- xi xibar)^2) = 0``.  Two generators of such
sections are provided: truncated power series (:class:`SeriesSection`) and
the Weierstrass-type construction from a holomorphic polynomial ``w``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .congruence import slopes, spin_coefficients_graph
from .errors import FlatPointError, UmbilicPointError
from .jets import JetSection, PolynomialSection, SectionJet, WirtingerJet, one_plus_jet
from .kahler import SpaceKind, check_domain
from .linemap import SpacePoint, from_space


class HolomorphicPoly:
    """``w(xi) = sum_k coeffs[k] xi^k``."""

    def __init__(self, coeffs):
        self.coeffs = np.atleast_1d(np.asarray(coeffs, dtype=complex))

    @property
    def degree(self) -> int:
        nz = np.flatnonzero(self.coeffs)
        return int(nz[-1]) if nz.size else -1

    def __call__(self, xi):
        # numpy polyval wants descending powers
        return np.polyval(self.coeffs[::-1], np.asarray(xi, dtype=complex))

    def deriv(self, k: int = 1) -> "HolomorphicPoly":
        c = self.coeffs
        for _ in range(k):
            c = c[1:] * np.arange(1, len(c)) if len(c) > 1 else np.zeros(1, complex)
        return HolomorphicPoly(c)

    def on_jet(self, z: WirtingerJet) -> WirtingerJet:
        out = WirtingerJet.constant(0.0, z.order)
        for c in self.coeffs[::-1]:  # Horner
            out = out * z + complex(c)
        return out

    def to_json(self, space: SpaceKind) -> dict:
        return {"space": space.name, "w": [[c.real, c.imag] for c in self.coeffs]}

    @staticmethod
    def from_json(data):
        """Parse ``{"space": ..., "w": [[re, im], ...]}``; returns ``(space, poly)``."""
        if isinstance(data, (str, bytes)):
            data = json.loads(data)
        if not isinstance(data, dict):
            raise ValueError("Weierstrass JSON must be an object")
        space = SpaceKind.from_name(str(data.get("space", "")))
        rows = data.get("w")
        if not isinstance(rows, list):
            raise ValueError("'w' must be a list of [re, im] pairs")
        coeffs = []
        for row in rows:
            if not isinstance(row, (list, tuple)) or len(row) != 2:
                raise ValueError(f"bad coefficient {row!r}")
            coeffs.append(complex(float(row[0]), float(row[1])))
        return space, HolomorphicPoly(coeffs or [0.0])

    def __repr__(self):
        return f"HolomorphicPoly({list(self.coeffs)})"


# ---------------------------------------------------------------------------
# The minimal-surface condition
# ---------------------------------------------------------------------------


def minimal_residual(space: SpaceKind, sec: SectionJet, xi) -> complex:
    """``dbar(d conj(F) / (1 +- xi xibar)^2)`` at ``xi``."""
    check_domain(space, xi)
    f = sec.jet(xi)
    if f.order < 2:
        raise ValueError("minimal residual needs jets of order 2")
    p2 = one_plus_jet(space, complex(xi), f.order - 1) ** 2
    return complex((f.conj().d() / p2).dbar().value)


@dataclass(frozen=True)
class SeriesSection:
    """Truncated series solution of the minimal condition, ``lambdas[n] = lambda_n``.

    ``F = sum 2 l_n xi^{n+3} - conj(l_n) xibar^{n+1} (+-(n+2)(n+3) + 2(n+1)(n+3) s +- (n+1)(n+2) s^2)``
    with ``s = xi xibar``.
    """

    space: SpaceKind
    lambdas: tuple

    def __init__(self, space: SpaceKind, lambdas):
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "lambdas", tuple(complex(c) for c in lambdas))

    def terms(self):
        sg = self.space.sign
        out = []
        for n, lam in enumerate(self.lambdas):
            if lam == 0:
                continue
            out.append((n + 3, 0, 2.0 * lam))
            cs = (sg * (n + 2) * (n + 3), 2 * (n + 1) * (n + 3), sg * (n + 1) * (n + 2))
            for k, c in enumerate(cs):
                out.append((k, n + 1 + k, -np.conj(lam) * c))
        return out

    def build(self, order: int = 3) -> PolynomialSection:
        return PolynomialSection(self.space, self.terms(), order)

    def potential_r(self, xi):
        """``r = -2 sum (3 + n +- (1 + n) s)(l_n xi^{n+2} + conj(l_n) xibar^{n+2}) / (1 +- s)``."""
        xi = np.asarray(xi, dtype=complex)
        check_domain(self.space, xi)
        sg = self.space.sign
        s = np.abs(xi) ** 2
        acc = np.zeros(xi.shape)
        for n, lam in enumerate(self.lambdas):
            acc = acc + (3 + n + sg * (1 + n) * s) * 2.0 * np.real(lam * xi ** (n + 2))
        r = -2.0 * acc / (1.0 + sg * s)
        return r if r.ndim else float(r)

    def alphas(self):
        """Coefficients of ``d conj(F) / (1 +- s)^2 = sum alpha_n xi^n``."""
        sg = self.space.sign
        return [-sg * (n + 1) * (n + 2) * (n + 3) * lam for n, lam in enumerate(self.lambdas)]


def series_section_build(ss: SeriesSection, order: int = 3) -> PolynomialSection:
    return ss.build(order)


def series_potential_r(ss: SeriesSection, xi):
    return ss.potential_r(xi)


# ---------------------------------------------------------------------------
# Weierstrass-type representation
# ---------------------------------------------------------------------------


def weierstrass_surface(space: SpaceKind, w: HolomorphicPoly, xi) -> SpacePoint:
    """Point of the minimal / maximal surface determined by the holomorphic ``w``.

    ``z = -+(xi^2 w''/2 - xi w' + w) + conj(w'')/2``,
    ``t = -+(xi w''/2 - w'/2 + conj(xi w'')/2 - conj(w')/2)``.
    """
    xi = np.asarray(xi, dtype=complex)
    check_domain(space, xi)
    sg = space.sign
    w0, w1, w2 = w(xi), w.deriv(1)(xi), w.deriv(2)(xi)
    z = -sg * (0.5 * xi**2 * w2 - xi * w1 + w0) + 0.5 * np.conj(w2)
    t = -sg * np.real(xi * w2 - w1)
    if z.ndim == 0:
        return SpacePoint(complex(z), float(t))
    return SpacePoint(z, t)


def weierstrass_eta_jet(space: SpaceKind, w: HolomorphicPoly, z: WirtingerJet) -> WirtingerJet:
    """``eta = (1 +- s)^3 dbar dbar(conj(w) / (1 +- s)) / 4 -+ w / 2`` on a coordinate jet."""
    sg = space.sign
    p = 1.0 + sg * (z * z.conj())
    wj = w.on_jet(z)
    inner = (wj.conj() / p).dbar().dbar()
    return (p.truncate(inner.order) ** 3) * inner * 0.25 - wj.truncate(inner.order) * (0.5 * sg)


def weierstrass_eta(space: SpaceKind, w: HolomorphicPoly, xi) -> complex:
    check_domain(space, xi)
    return weierstrass_eta_jet(space, w, WirtingerJet.variable(complex(xi), 2)).value


class WeierstrassSection(JetSection):
    """The normal congruence of a Weierstrass surface as a graph section (jets to order 3)."""

    def __init__(self, space: SpaceKind, w: HolomorphicPoly):
        super().__init__(space, lambda z: weierstrass_eta_jet(space, w, z), input_order=5,
                         label=f"weierstrass{list(w.coeffs)}")
        self.w = w

    def surface_r(self, xi):
        """Affine parameter of the surface point on the line through ``xi``."""
        pt = weierstrass_surface(self.space, self.w, xi)
        return from_space(self.space, xi, pt).r


def check_immersion(w: HolomorphicPoly, xi=None, tol: float = 1e-12) -> None:
    """Raise :class:`FlatPointError` if ``w''' = 0`` identically or at any of ``xi``."""
    w3 = w.deriv(3)
    if w3.degree < 0:
        raise FlatPointError("w''' vanishes identically: degenerate, no immersion")
    if xi is not None:
        vals = np.abs(w3(xi))
        scale = max(1.0, float(np.max(np.abs(w3.coeffs))))
        if np.any(vals <= tol * scale):
            raise FlatPointError("w''' vanishes at a sampled point (flat point)")


def flat_point_mask(w: HolomorphicPoly, xi, tol: float = 1e-12):
    w3 = w.deriv(3)
    scale = max(1.0, float(np.max(np.abs(w3.coeffs))))
    return np.abs(w3(xi)) <= tol * scale


def dbar_eta_relation_residual(space: SpaceKind, w: HolomorphicPoly, xi) -> complex:
    """``dbar eta / (1 +- s)^2 - conj(w''') / 4``."""
    z = WirtingerJet.variable(complex(xi), 3)
    eta = weierstrass_eta_jet(space, w, z)
    p = 1.0 + space.sign * abs(complex(xi)) ** 2
    return complex(eta.deriv(0, 1) / p**2 - 0.25 * np.conj(w.deriv(3)(complex(xi))))


def r_relation_residual(space: SpaceKind, w: HolomorphicPoly, xi) -> float:
    """``r + (1 +- s)^2 d(eta / (1 +- s)^2)`` at the Weierstrass surface point (``= r + rho0``)."""
    sec = WeierstrassSection(space, w)
    r = sec.surface_r(complex(xi))
    _, rho0 = slopes(space, sec, complex(xi))
    return complex(r + rho0)


def surface_rho(space: SpaceKind, w: HolomorphicPoly, xi) -> complex:
    """Divergence ``rho`` of the normal congruence at the Weierstrass surface (``0`` for minimal)."""
    sec = WeierstrassSection(space, w)
    return spin_coefficients_graph(space, sec, complex(xi), sec.surface_r(complex(xi)))[0]


# ---------------------------------------------------------------------------
# Umbilic points
# ---------------------------------------------------------------------------


def umbilic_winding(space: SpaceKind, sec: SectionJet, center: complex, radius: float,
                    samples: int = 256, max_samples: int = 65536, tol: float = 1e-8) -> int:
    """Winding number of ``sigma0`` around 0 along the circle ``|xi - center| = radius``.

    Sampling is refined until consecutive phase steps stay below 1 rad.
    Raises :class:`UmbilicPointError` if ``sigma0`` vanishes on the contour.
    """
    n = samples
    while True:
        theta = 2 * np.pi * np.arange(n + 1) / n
        pts = center + radius * np.exp(1j * theta)
        check_domain(space, pts)
        s0 = np.array([slopes(space, sec, z)[0] for z in pts[:-1]])
        s0 = np.append(s0, s0[0])
        mags = np.abs(s0)
        if mags.min() <= tol * max(1.0, mags.max()):
            raise UmbilicPointError("sigma0 vanishes on the contour")
        steps = np.diff(np.unwrap(np.angle(s0)))
        if np.max(np.abs(steps)) < 1.0 or n >= max_samples:
            return int(round(np.sum(steps) / (2 * np.pi)))
        n *= 4
