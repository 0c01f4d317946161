import os
import subprocess
import sys

import numpy as np
import pytest

from linespace import kernels
from linespace.jets import PolynomialSection
from linespace import EUCLIDEAN

BACKENDS = kernels.available_backends()


def test_python_backend_always_available():
    assert "python" in BACKENDS
    assert kernels.BACKEND in BACKENDS


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_geodesic_accel_fibre(name):
    assert BACKENDS[name].geodesic_accel(-1, 0.3 + 0.1j, 1j, 0j, 2 + 0j) == (0, 0)


@pytest.mark.skipif("cython" not in BACKENDS, reason="compiled extension not built")
def test_backends_agree_on_accel():
    rng = np.random.default_rng(0)
    py, cy = BACKENDS["python"], BACKENDS["cython"]
    for _ in range(100):
        args = [complex(*rng.normal(size=2)) * s for s in (0.6, 1, 1, 1)]
        for sign in (1, -1):
            a = py.geodesic_accel(sign, *args)
            b = cy.geodesic_accel(sign, *args)
            assert np.allclose(a, b, rtol=1e-14, atol=1e-14)


@pytest.mark.skipif("cython" not in BACKENDS, reason="compiled extension not built")
def test_backends_agree_on_rk4():
    y0 = (0.1j, 0.2, 0.5 + 0.1j, -0.3j)
    for sign, limit in ((-1, 1 - 1e-9), (1, 1e6)):
        a, na = BACKENDS["python"].rk4_geodesic(sign, y0, 1e-3, 500, limit)
        b, nb = BACKENDS["cython"].rk4_geodesic(sign, y0, 1e-3, 500, limit)
        assert na == nb == 501
        assert np.allclose(a, b, rtol=1e-13, atol=1e-14)


@pytest.mark.skipif("cython" not in BACKENDS, reason="compiled extension not built")
def test_backends_agree_on_early_exit():
    y0 = (0j, 0j, 2.0 + 0j, 0j)
    a, na = BACKENDS["python"].rk4_geodesic(-1, y0, 1e-2, 5000, 1 - 1e-9)
    b, nb = BACKENDS["cython"].rk4_geodesic(-1, y0, 1e-2, 5000, 1 - 1e-9)
    assert na == nb < 5001
    assert np.allclose(a[:na], b[:nb])


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_poly_taylor(name):
    m = np.array([2, 0, 1], dtype=np.int64)
    n = np.array([1, 3, 0], dtype=np.int64)
    c = np.array([1 - 1j, 0.5, 2j])
    xi0 = 0.4 + 0.3j
    T = np.asarray(BACKENDS[name].poly_taylor(m, n, c, xi0, 3))
    # evaluate the Taylor polynomial at a small offset and compare with the exact value
    sec = PolynomialSection(EUCLIDEAN, list(zip(m, n, c)))
    h = 1e-3 * (1 + 2j)
    approx = sum(T[a, b] * h**a * np.conj(h) ** b for a in range(4) for b in range(4 - a))
    assert abs(approx - sec.value(xi0 + h)) < 1e-10
    assert T[0, 0] == pytest.approx(sec.value(xi0))


def test_pure_python_switch():
    env = dict(os.environ, LINESPACE_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import linespace; print(linespace.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
