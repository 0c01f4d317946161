"""Reference (pure Python / numpy) implementations of the hot kernels.

Each function here has a twin with the same signature in ``_ckernels.pyx``.
"""
from math import comb

import numpy as np


def geodesic_accel(sign, xi, eta, dxi, deta):
    """Second derivatives ``(xi'', eta'')`` of an affinely parametrised geodesic."""
    xib = xi.conjugate()
    p = 1.0 + sign * (xi * xib).real
    du = -sign * xib / p
    ddu = xib * xib / (p * p)
    dbar_du = -sign / (p * p)
    acc_xi = -2.0 * du * dxi * dxi
    acc_eta = -4.0 * du * dxi * deta - 2.0 * (eta * ddu - eta.conjugate() * dbar_du) * dxi * dxi
    return acc_xi, acc_eta


def _deriv(sign, y):
    a_xi, a_eta = geodesic_accel(sign, y[0], y[1], y[2], y[3])
    return (y[2], y[3], a_xi, a_eta)


def rk4_geodesic(sign, y0, step, nsteps, xi_limit):
    """Fixed-step RK4 for the geodesic system.

    Returns ``(states, n_valid)``: ``states`` has shape ``(nsteps + 1, 4)``
    holding ``(xi, eta, dxi, deta)``; integration stops early (``n_valid``
    rows filled) once ``|xi| >= xi_limit``.
    """
    out = np.zeros((nsteps + 1, 4), dtype=complex)
    y = tuple(complex(v) for v in y0)
    out[0] = y
    h = float(step)
    for k in range(1, nsteps + 1):
        k1 = _deriv(sign, y)
        y2 = tuple(y[i] + 0.5 * h * k1[i] for i in range(4))
        k2 = _deriv(sign, y2)
        y3 = tuple(y[i] + 0.5 * h * k2[i] for i in range(4))
        k3 = _deriv(sign, y3)
        y4 = tuple(y[i] + h * k3[i] for i in range(4))
        k4 = _deriv(sign, y4)
        y = tuple(y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) for i in range(4))
        if abs(y[0]) >= xi_limit:
            return out, k
        out[k] = y
    return out, nsteps + 1


def poly_taylor(m, n, c, xi0, order):
    """Taylor coefficients ``T[a, b]`` of ``sum c_k xi^m_k xibar^n_k`` about ``xi0``.

    ``T[a, b] = sum_k c_k C(m_k, a) C(n_k, b) xi0^(m_k - a) conj(xi0)^(n_k - b)``
    for ``a + b <= order``.
    """
    out = np.zeros((order + 1, order + 1), dtype=complex)
    xib = complex(xi0).conjugate()
    for mk, nk, ck in zip(m, n, c):
        mk = int(mk)
        nk = int(nk)
        for a in range(min(mk, order) + 1):
            pa = comb(mk, a) * complex(xi0) ** (mk - a)
            for b in range(min(nk, order - a) + 1):
                out[a, b] += ck * pa * comb(nk, b) * xib ** (nk - b)
    return out
