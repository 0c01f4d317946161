import json
import math
import warnings

import numpy as np
import pytest
import sympy as sp

from linespace import EUCLIDEAN, LORENTZIAN
from linespace.jets import (
    FiniteDifferenceSection,
    JetAccuracyWarning,
    JetSection,
    PolynomialSection,
    WirtingerJet,
    conformal_factor_jet,
    one_plus_jet,
)

Z, ZB = sp.symbols("z zb")


def _sym_derivs(expr, xi0, order=3):
    subs = {Z: xi0, ZB: np.conj(xi0)}
    return {(a, b): complex(sp.diff(expr, Z, a, ZB, b).subs(subs).evalf())
            for a in range(order + 1) for b in range(order + 1 - a)}


def _assert_jet(jet, derivs, tol):
    for (a, b), want in derivs.items():
        if a + b <= jet.order:
            assert abs(jet.deriv(a, b) - want) <= tol * (1 + abs(want)), (a, b)


def test_jet_arithmetic_matches_sympy():
    xi0 = 0.3 - 0.2j
    z = WirtingerJet.variable(xi0, 3)
    zb = z.conj()
    jet = (z**2 * zb + 3) / (1 + z * zb) - (z * 0.5j).exp()
    expr = (Z**2 * ZB + 3) / (1 + Z * ZB) - sp.exp(sp.I * Z / 2)
    _assert_jet(jet, _sym_derivs(expr, xi0), 1e-13)


def test_wirtinger_derivatives_lower_order():
    z = WirtingerJet.variable(0.1 + 0.4j, 3)
    f = z**3 * z.conj() ** 2
    assert f.d().order == 2 and f.dbar().dbar().order == 1
    assert f.d().dbar().value == pytest.approx(f.deriv(1, 1))
    with pytest.raises(ValueError):
        WirtingerJet.constant(1.0, 0).d()
    with pytest.raises(ValueError):
        f.deriv(2, 2)


def test_conjugation_swaps_derivatives():
    z = WirtingerJet.variable(0.2 + 0.1j, 3)
    f = z**2 * z.conj() + 1j * z
    g = f.conj()
    for a in range(4):
        for b in range(4 - a):
            assert g.deriv(a, b) == pytest.approx(np.conj(f.deriv(b, a)))


def test_real_and_imag_parts():
    z = WirtingerJet.variable(0.5j, 2)
    f = z * z
    assert (f.real + f.imag * 1j).value == pytest.approx(f.value)
    assert f.real.value.imag == pytest.approx(0)


def test_reciprocal_and_power():
    z = WirtingerJet.variable(0.7, 3)
    one = z * z.reciprocal()
    assert one.value == pytest.approx(1)
    assert np.allclose(one.c[1:, :], 0) and np.allclose(one.c[:, 1:], 0)
    assert (z**-2).deriv(1, 0) == pytest.approx(-2 / 0.7**3)
    with pytest.raises(ZeroDivisionError):
        WirtingerJet.constant(0.0, 2).reciprocal()
    with pytest.raises(TypeError):
        z**0.5


def test_from_derivatives_round_trip():
    d = {(0, 0): 1.0, (1, 0): 2j, (0, 1): -1.0, (1, 1): 0.5, (2, 0): 3.0}
    jet = WirtingerJet.from_derivatives(d, 2)
    for k, v in d.items():
        assert jet.deriv(*k) == pytest.approx(v)


@pytest.mark.parametrize("space", [EUCLIDEAN, LORENTZIAN], ids=lambda s: s.name)
def test_conformal_jets(space):
    xi0 = -0.25 + 0.5j
    expr = 4 / (1 + space.sign * Z * ZB) ** 2
    _assert_jet(conformal_factor_jet(space, xi0, 3), _sym_derivs(expr, xi0), 1e-13)
    _assert_jet(one_plus_jet(space, xi0, 3), _sym_derivs(1 + space.sign * Z * ZB, xi0), 1e-15)


def test_polynomial_section_jet():
    sec = PolynomialSection(EUCLIDEAN, [(2, 1, 1 - 1j), (0, 3, 0.5), (1, 0, 2j)])
    expr = (1 - sp.I) * Z**2 * ZB + sp.Rational(1, 2) * ZB**3 + 2 * sp.I * Z
    xi0 = 0.4 + 0.3j
    _assert_jet(sec.jet(xi0), _sym_derivs(expr, xi0), 1e-13)
    assert sec.value(xi0) == pytest.approx(complex(expr.subs({Z: xi0, ZB: np.conj(xi0)})))
    vals = sec.value(np.array([[0.1, 0.2j]]))
    assert vals.shape == (1, 2)


def test_polynomial_section_json():
    sec = PolynomialSection(LORENTZIAN, [(1, 2, 0.5 - 0.25j), (3, 0, 1.0)])
    back = PolynomialSection.from_json(json.dumps(sec.to_json()))
    assert back.space is LORENTZIAN and back.terms == sec.terms


@pytest.mark.parametrize("bad", [
    "[]",
    '{"kind": "spline", "space": "euclidean", "coeffs": []}',
    '{"kind": "polynomial", "space": "euclidean", "coeffs": [[1, 2, 3]]}',
    '{"kind": "polynomial", "space": "euclidean", "coeffs": [[1.5, 0, 1, 0]]}',
    '{"kind": "polynomial", "space": "sitter", "coeffs": []}',
])
def test_polynomial_section_json_errors(bad):
    with pytest.raises(ValueError):
        PolynomialSection.from_json(bad)


def test_negative_exponent_rejected():
    with pytest.raises(ValueError):
        PolynomialSection(EUCLIDEAN, [(-1, 0, 1.0)])


def test_finite_difference_jet_accuracy():
    sec = PolynomialSection(EUCLIDEAN, [(m, n, complex(m + 1, -n)) for m in range(4) for n in range(4)])
    fd = FiniteDifferenceSection(EUCLIDEAN, sec.value)
    xi0 = 0.2 - 0.35j
    exact = sec.jet(xi0)
    approx = fd.jet(xi0)
    for a in range(4):
        for b in range(4 - a):
            tol = 1e-8 if a + b <= 1 else 1e-5
            assert abs(approx.deriv(a, b) - exact.deriv(a, b)) <= tol * (1 + abs(exact.deriv(a, b)))


def test_finite_difference_gate_warns():
    # a wiggle far below the step makes the two stencils disagree
    fd = FiniteDifferenceSection(EUCLIDEAN, lambda z: np.sin(3e3 * np.real(z)) * 1e-3, h=1e-3)
    with pytest.warns(JetAccuracyWarning):
        fd.jet(0.1)


def test_finite_difference_gate_silent_on_smooth_input():
    fd = FiniteDifferenceSection(LORENTZIAN, lambda z: z**2 * np.conj(z))
    with warnings.catch_warnings():
        warnings.simplefilter("error", JetAccuracyWarning)
        fd.jet(0.3 + 0.1j)


def test_jet_section_lowers_order():
    sec = JetSection(EUCLIDEAN, lambda z: (z**3).conj().d() + z, input_order=4)
    assert sec.jet(0.2).order == 3
    assert sec.value(np.array([0.5, 0.1])).shape == (2,)
    assert math.isclose(sec.value(0.5).real, 0.5)
