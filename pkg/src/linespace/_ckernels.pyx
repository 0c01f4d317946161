# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_kernels_py``."""
import numpy as np
cimport numpy as cnp

cnp.import_array()

cdef extern from "<complex.h>" nogil:
    double cabs(double complex)
    double complex conj(double complex)
    double creal(double complex)


cdef inline void _accel(int sign, double complex xi, double complex eta,
                        double complex dxi, double complex deta,
                        double complex* a_xi, double complex* a_eta) noexcept nogil:
    cdef double complex xib = conj(xi)
    cdef double p = 1.0 + sign * creal(xi * xib)
    cdef double complex du = -sign * xib / p
    cdef double complex ddu = xib * xib / (p * p)
    cdef double dbar_du = -sign / (p * p)
    a_xi[0] = -2.0 * du * dxi * dxi
    a_eta[0] = -4.0 * du * dxi * deta - 2.0 * (eta * ddu - conj(eta) * dbar_du) * dxi * dxi


def geodesic_accel(int sign, double complex xi, double complex eta,
                   double complex dxi, double complex deta):
    cdef double complex a, b
    _accel(sign, xi, eta, dxi, deta, &a, &b)
    return a, b


def rk4_geodesic(int sign, y0, double step, Py_ssize_t nsteps, double xi_limit):
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] out = np.zeros((nsteps + 1, 4), dtype=np.complex128)
    cdef double complex y[4]
    cdef double complex yt[4]
    cdef double complex k1[4]
    cdef double complex k2[4]
    cdef double complex k3[4]
    cdef double complex k4[4]
    cdef Py_ssize_t k, i
    cdef double h = step
    for i in range(4):
        y[i] = y0[i]
        out[0, i] = y[i]
    for k in range(1, nsteps + 1):
        k1[0] = y[2]; k1[1] = y[3]
        _accel(sign, y[0], y[1], y[2], y[3], &k1[2], &k1[3])
        for i in range(4):
            yt[i] = y[i] + 0.5 * h * k1[i]
        k2[0] = yt[2]; k2[1] = yt[3]
        _accel(sign, yt[0], yt[1], yt[2], yt[3], &k2[2], &k2[3])
        for i in range(4):
            yt[i] = y[i] + 0.5 * h * k2[i]
        k3[0] = yt[2]; k3[1] = yt[3]
        _accel(sign, yt[0], yt[1], yt[2], yt[3], &k3[2], &k3[3])
        for i in range(4):
            yt[i] = y[i] + h * k3[i]
        k4[0] = yt[2]; k4[1] = yt[3]
        _accel(sign, yt[0], yt[1], yt[2], yt[3], &k4[2], &k4[3])
        for i in range(4):
            y[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
        if cabs(y[0]) >= xi_limit:
            return out, k
        for i in range(4):
            out[k, i] = y[i]
    return out, nsteps + 1


cdef double _comb(long n, long k) noexcept nogil:
    cdef double r = 1.0
    cdef long j
    if k < 0 or k > n:
        return 0.0
    for j in range(1, k + 1):
        r = r * (n - k + j) / j
    return r


cdef double complex _ipow(double complex z, long e) noexcept nogil:
    cdef double complex r = 1.0
    cdef long j
    for j in range(e):
        r = r * z
    return r


def poly_taylor(m, n, c, double complex xi0, int order):
    cdef cnp.int64_t[:] mv = np.ascontiguousarray(m, dtype=np.int64)
    cdef cnp.int64_t[:] nv = np.ascontiguousarray(n, dtype=np.int64)
    cdef cnp.complex128_t[:] cv = np.ascontiguousarray(c, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] out = np.zeros((order + 1, order + 1), dtype=np.complex128)
    cdef double complex xib = conj(xi0)
    cdef double complex pa
    cdef Py_ssize_t k
    cdef long a, b, mk, nk, amax, bmax
    for k in range(mv.shape[0]):
        mk = mv[k]
        nk = nv[k]
        amax = mk if mk < order else order
        for a in range(amax + 1):
            pa = cv[k] * _comb(mk, a) * _ipow(xi0, mk - a)
            bmax = nk if nk < order - a else order - a
            for b in range(bmax + 1):
                out[a, b] = out[a, b] + pa * _comb(nk, b) * _ipow(xib, nk - b)
    return out
