"""Truncated Wirtinger jets and graph sections ``eta = F(xi, xibar)``.

A :class:`WirtingerJet` stores the Taylor coefficients of a function of
``(xi, xibar)`` at a point up to a fixed total order ``N``::

    f(xi0 + h) = sum_{a + b <= N} c[a, b] h^a conj(h)^b

so ``d^a dbar^b f = a! b! c[a, b]``.  Jets close under ``+ - * /``, conjugation
and the two Wirtinger derivatives (which lower the order by one), which is
all the slope / curvature formulas need.
"""
from __future__ import annotations

import json
import math
import warnings
from typing import Callable

import numpy as np

from . import kernels


class JetAccuracyWarning(UserWarning):
    """Finite-difference jets failed the order-2 / order-4 consistency gate."""


class WirtingerJet:
    __slots__ = ("c", "order")

    def __init__(self, coeffs, order: int):
        c = np.zeros((order + 1, order + 1), dtype=complex)
        src = np.asarray(coeffs, dtype=complex)
        n = min(src.shape[0], order + 1)
        c[:n, :n] = src[:n, :n]
        c[_mask(order)] = 0.0
        self.c = c
        self.order = order

    # -- constructors -------------------------------------------------
    @classmethod
    def constant(cls, value, order: int) -> "WirtingerJet":
        c = np.zeros((order + 1, order + 1), dtype=complex)
        c[0, 0] = value
        return cls(c, order)

    @classmethod
    def variable(cls, xi0, order: int) -> "WirtingerJet":
        """The coordinate function ``xi`` expanded about ``xi0``."""
        c = np.zeros((order + 1, order + 1), dtype=complex)
        c[0, 0] = xi0
        if order >= 1:
            c[1, 0] = 1.0
        return cls(c, order)

    @classmethod
    def from_derivatives(cls, derivs: dict, order: int) -> "WirtingerJet":
        """Build from ``{(a, b): d^a dbar^b f}``."""
        c = np.zeros((order + 1, order + 1), dtype=complex)
        for (a, b), val in derivs.items():
            if a + b <= order:
                c[a, b] = val / (math.factorial(a) * math.factorial(b))
        return cls(c, order)

    # -- access -------------------------------------------------------
    @property
    def value(self) -> complex:
        return complex(self.c[0, 0])

    def deriv(self, a: int, b: int) -> complex:
        """``d^a dbar^b f`` at the expansion point."""
        if a + b > self.order:
            raise ValueError(f"jet of order {self.order} has no derivative ({a}, {b})")
        return complex(self.c[a, b] * math.factorial(a) * math.factorial(b))

    # -- calculus -----------------------------------------------------
    def d(self) -> "WirtingerJet":
        if self.order == 0:
            raise ValueError("cannot differentiate an order-0 jet")
        k = np.arange(1, self.order + 1)[:, None]
        return WirtingerJet(self.c[1:, :-1] * k, self.order - 1)

    def dbar(self) -> "WirtingerJet":
        if self.order == 0:
            raise ValueError("cannot differentiate an order-0 jet")
        k = np.arange(1, self.order + 1)[None, :]
        return WirtingerJet(self.c[:-1, 1:] * k, self.order - 1)

    def conj(self) -> "WirtingerJet":
        return WirtingerJet(np.conj(self.c.T), self.order)

    @property
    def real(self) -> "WirtingerJet":
        return (self + self.conj()) * 0.5

    @property
    def imag(self) -> "WirtingerJet":
        return (self - self.conj()) * (-0.5j)

    def truncate(self, order: int) -> "WirtingerJet":
        return WirtingerJet(self.c, min(order, self.order))

    # -- algebra ------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, WirtingerJet):
            return other
        return WirtingerJet.constant(other, self.order)

    def __add__(self, other):
        other = self._coerce(other)
        n = min(self.order, other.order)
        return WirtingerJet(self.c[: n + 1, : n + 1] + other.c[: n + 1, : n + 1], n)

    __radd__ = __add__

    def __neg__(self):
        return WirtingerJet(-self.c, self.order)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, WirtingerJet):
            return WirtingerJet(self.c * other, self.order)
        n = min(self.order, other.order)
        x = self.c[: n + 1, : n + 1]
        y = other.c[: n + 1, : n + 1]
        out = np.zeros((n + 1, n + 1), dtype=complex)
        for i in range(n + 1):
            for j in range(n + 1 - i):
                if x[i, j] != 0:
                    out[i:, j:] += x[i, j] * y[: n + 1 - i, : n + 1 - j]
        return WirtingerJet(out, n)

    __rmul__ = __mul__

    def reciprocal(self) -> "WirtingerJet":
        f0 = self.c[0, 0]
        if f0 == 0:
            raise ZeroDivisionError("jet with zero value has no reciprocal")
        g = self * (1.0 / f0) - 1.0  # nilpotent part
        acc = WirtingerJet.constant(1.0, self.order)
        term = WirtingerJet.constant(1.0, self.order)
        for _ in range(self.order):
            term = term * (-g)
            acc = acc + term
        return acc * (1.0 / f0)

    def __truediv__(self, other):
        if not isinstance(other, WirtingerJet):
            return WirtingerJet(self.c / other, self.order)
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("only integer powers are supported")
        if k < 0:
            return (self**-k).reciprocal()
        acc = WirtingerJet.constant(1.0, self.order)
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def exp(self) -> "WirtingerJet":
        f0 = self.c[0, 0]
        g = self - f0
        acc = WirtingerJet.constant(1.0, self.order)
        term = WirtingerJet.constant(1.0, self.order)
        for k in range(1, self.order + 1):
            term = term * g * (1.0 / k)
            acc = acc + term
        return acc * np.exp(f0)

    def __repr__(self):
        return f"WirtingerJet(order={self.order}, value={self.value!r})"


def _mask(order):
    a, b = np.indices((order + 1, order + 1))
    return a + b > order


def jet_exp(f: WirtingerJet) -> WirtingerJet:
    return f.exp()


def conformal_factor_jet(space, xi0, order: int) -> WirtingerJet:
    """Jet of ``e^{2u} = 4 / (1 +- xi xibar)^2`` about ``xi0``."""
    return 4.0 / (one_plus_jet(space, xi0, order) ** 2)


def one_plus_jet(space, xi0, order: int) -> WirtingerJet:
    """Jet of ``1 +- xi xibar``."""
    z = WirtingerJet.variable(xi0, order)
    return 1.0 + space.sign * (z * z.conj())


# ---------------------------------------------------------------------------
# Sections
# ---------------------------------------------------------------------------


class SectionJet:
    """A graph section ``xi -> (xi, F(xi, xibar))`` with Wirtinger jets of ``F``.

    Subclasses implement :meth:`jet` (order-``N`` jet of ``F`` at ``xi``) and
    :meth:`value` (vectorised evaluation of ``F``).
    """

    provenance = "analytic"
    order = 3

    def __init__(self, space):
        self.space = space

    def jet(self, xi) -> WirtingerJet:
        raise NotImplementedError

    def value(self, xi):
        raise NotImplementedError

    def __call__(self, xi):
        return self.value(xi)


class PolynomialSection(SectionJet):
    """``F = sum c_mn xi^m xibar^n`` with exact jets."""

    def __init__(self, space, terms, order: int = 3):
        super().__init__(space)
        terms = [(int(m), int(n), complex(c)) for m, n, c in terms]
        for m, n, _ in terms:
            if m < 0 or n < 0:
                raise ValueError("exponents must be non-negative")
        self.terms = terms
        self.order = order
        self._m = np.array([t[0] for t in terms], dtype=np.int64)
        self._n = np.array([t[1] for t in terms], dtype=np.int64)
        self._c = np.array([t[2] for t in terms], dtype=complex)

    def jet(self, xi) -> WirtingerJet:
        coeffs = kernels.poly_taylor(self._m, self._n, self._c, complex(xi), self.order)
        return WirtingerJet(coeffs, self.order)

    def value(self, xi):
        xi = np.asarray(xi, dtype=complex)
        out = np.zeros_like(xi)
        xib = np.conj(xi)
        for m, n, c in self.terms:
            out = out + c * xi**m * xib**n
        return out if out.ndim else complex(out)

    def with_order(self, order: int) -> "PolynomialSection":
        return PolynomialSection(self.space, self.terms, order)

    def to_json(self) -> dict:
        return {
            "space": self.space.name,
            "kind": "polynomial",
            "coeffs": [[m, n, c.real, c.imag] for m, n, c in self.terms],
        }

    @classmethod
    def from_json(cls, data) -> "PolynomialSection":
        from .kahler import SpaceKind

        if isinstance(data, (str, bytes)):
            data = json.loads(data)
        if not isinstance(data, dict):
            raise ValueError("section JSON must be an object")
        if data.get("kind") != "polynomial":
            raise ValueError(f"unsupported section kind {data.get('kind')!r}")
        space = SpaceKind.from_name(str(data.get("space", "")))
        coeffs = data.get("coeffs")
        if not isinstance(coeffs, list):
            raise ValueError("'coeffs' must be a list of [m, n, re, im]")
        terms = []
        for row in coeffs:
            if not isinstance(row, (list, tuple)) or len(row) != 4:
                raise ValueError(f"bad coefficient row {row!r}")
            m, n, re, im = row
            if int(m) != m or int(n) != n:
                raise ValueError(f"non-integer exponent in {row!r}")
            terms.append((int(m), int(n), complex(float(re), float(im))))
        return cls(space, terms)

    def __repr__(self):
        return f"PolynomialSection({self.space.name}, {len(self.terms)} terms)"


# central-difference stencils: offsets -3..3, (order-2, order-4) per derivative order
_OFFSETS = np.arange(-3, 4)
_STENCILS = {
    2: {
        0: np.array([0, 0, 0, 1, 0, 0, 0], float),
        1: np.array([0, 0, -1, 0, 1, 0, 0], float) / 2,
        2: np.array([0, 0, 1, -2, 1, 0, 0], float),
        3: np.array([0, -1, 2, 0, -2, 1, 0], float) / 2,
    },
    4: {
        0: np.array([0, 0, 0, 1, 0, 0, 0], float),
        1: np.array([0, 1, -8, 0, 8, -1, 0], float) / 12,
        2: np.array([0, -1, 16, -30, 16, -1, 0], float) / 12,
        3: np.array([1, -8, 13, 0, -13, 8, -1], float) / 8,
    },
}


def real_partials(f: Callable, xi0: complex, h: float, accuracy: int = 4) -> dict:
    """Central-difference partials ``d^p/dx^p d^q/dy^q f`` for ``p + q <= 3``."""
    xs = xi0.real + h * _OFFSETS
    ys = xi0.imag + h * _OFFSETS
    grid = xs[:, None] + 1j * ys[None, :]
    vals = np.asarray(f(grid), dtype=complex)
    if vals.shape != grid.shape:
        vals = np.vectorize(lambda z: complex(f(z)))(grid)
    st = _STENCILS[accuracy]
    out = {}
    for p in range(4):
        for q in range(4 - p):
            out[p, q] = st[p] @ vals @ st[q] / h ** (p + q)
    return out


def wirtinger_from_real(partials: dict, order: int = 3) -> dict:
    """Convert real partials to ``d^a dbar^b`` using ``d = (dx - i dy)/2``, ``dbar = (dx + i dy)/2``."""
    out = {}
    for a in range(order + 1):
        for b in range(order + 1 - a):
            # polynomial in (X, Y): coefficient array poly[p, q] of X^p Y^q
            poly = np.zeros((order + 1, order + 1), dtype=complex)
            poly[0, 0] = 1.0
            for factor in [(0.5, -0.5j)] * a + [(0.5, 0.5j)] * b:
                new = np.zeros_like(poly)
                new[1:, :] += factor[0] * poly[:-1, :]
                new[:, 1:] += factor[1] * poly[:, :-1]
                poly = new
            out[a, b] = sum(
                poly[p, q] * partials[p, q]
                for p in range(order + 1)
                for q in range(order + 1 - p)
                if poly[p, q] != 0
            )
    return out


class FiniteDifferenceSection(SectionJet):
    """Section given by a callable ``F``; jets by 4th-order central differences.

    Values and first derivatives use step ``h``; second and third derivatives
    use the coarser ``h_high`` (default ``10 h``) because their round-off grows
    like ``eps / h^k``.  Every jet evaluation runs a consistency gate: the
    order-2 and order-4 estimates of the first derivatives must agree to
    ``gate_tol`` (relative), otherwise a :class:`JetAccuracyWarning` is emitted.
    """

    provenance = "finite-difference"

    def __init__(self, space, func: Callable, h: float = 1e-4, gate_tol: float = 1e-6,
                 h_high: float | None = None):
        super().__init__(space)
        self.func = func
        self.h = h
        self.h_high = 10.0 * h if h_high is None else h_high
        self.gate_tol = gate_tol

    def jet(self, xi) -> WirtingerJet:
        xi = complex(xi)
        lo_h = real_partials(self.func, xi, self.h, accuracy=4)
        lo_2 = real_partials(self.func, xi, self.h, accuracy=2)
        hi_h = real_partials(self.func, xi, self.h_high, accuracy=4)
        scale = max(1.0, abs(lo_h[0, 0]), abs(lo_h[1, 0]), abs(lo_h[0, 1]))
        gap = max(abs(lo_h[1, 0] - lo_2[1, 0]), abs(lo_h[0, 1] - lo_2[0, 1])) / scale
        if gap > self.gate_tol:
            warnings.warn(
                f"finite-difference jet at xi={xi:.6g} failed consistency gate ({gap:.2e})",
                JetAccuracyWarning,
                stacklevel=2,
            )
        partials = {k: (lo_h[k] if sum(k) <= 1 else hi_h[k]) for k in lo_h}
        return WirtingerJet.from_derivatives(wirtinger_from_real(partials), 3)

    def value(self, xi):
        return self.func(xi)


class JetSection(SectionJet):
    """Section whose jet is produced by a function of the coordinate jet.

    ``builder(z)`` receives the jet of ``xi`` (order ``input_order``) and
    returns the jet of ``F``; arithmetic on jets carries the derivatives
    along, so the output order may be lower than ``input_order`` when the
    builder differentiates.
    """

    def __init__(self, space, builder: Callable, input_order: int = 3, label: str = "jet"):
        super().__init__(space)
        self.builder = builder
        self.input_order = input_order
        self.label = label

    def jet(self, xi) -> WirtingerJet:
        return self.builder(WirtingerJet.variable(complex(xi), self.input_order))

    def value(self, xi):
        arr = np.asarray(xi, dtype=complex)
        if arr.ndim == 0:
            return self.jet(complex(arr)).value
        flat = [self.jet(z).value for z in arr.ravel()]
        return np.array(flat, dtype=complex).reshape(arr.shape)

    def __repr__(self):
        return f"JetSection({self.space.name}, {self.label})"
