import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from linespace import EUCLIDEAN, LORENTZIAN, LinePoint, SpaceKind, TangentVector
from linespace.errors import DomainError
from linespace.kahler import (
    apply_complex_structure,
    check_domain,
    conformal_data,
    gram_determinant,
    metric_matrix,
    metric_value,
    sigma_squared,
    symplectic_matrix,
    symplectic_value,
    wirtinger_residual,
    wirtinger_scale,
)

SPACES = [EUCLIDEAN, LORENTZIAN]

finite = st.floats(-3, 3, allow_nan=False)
cplx = st.builds(complex, finite, finite)
disc = st.builds(lambda r, t: r * np.exp(1j * t), st.floats(0, 0.9), st.floats(0, 2 * np.pi))
vec = st.builds(TangentVector, cplx, cplx)


def test_conformal_data_at_origin():
    cl = conformal_data(LORENTZIAN, 0j)
    ce = conformal_data(EUCLIDEAN, 0j)
    assert cl.e2u == 4 and cl.du == 0 and cl.dbar_du == 1
    assert ce.e2u == 4 and ce.du == 0 and ce.dbar_du == -1


def test_conformal_data_half():
    c = conformal_data(LORENTZIAN, 0.5)
    assert c.e2u == pytest.approx(4 / 0.75**2, rel=1e-15)
    assert c.du == pytest.approx(0.5 / 0.75, rel=1e-15)


@pytest.mark.parametrize("space", SPACES, ids=lambda s: s.name)
def test_conformal_data_symbolic(space):
    z, zb = sp.symbols("z zb")
    u = sp.log(2 / (1 + space.sign * z * zb))
    xi0 = 0.3 - 0.4j
    subs = {z: xi0, zb: xi0.conjugate()}
    c = conformal_data(space, xi0)
    assert complex(sp.exp(2 * u).subs(subs)) == pytest.approx(c.e2u, rel=1e-14)
    assert complex(sp.diff(u, z).subs(subs)) == pytest.approx(c.du, rel=1e-14)
    assert complex(sp.diff(u, z, 2).subs(subs)) == pytest.approx(c.ddu, rel=1e-14)
    assert complex(sp.diff(u, z, zb).subs(subs)) == pytest.approx(c.dbar_du, rel=1e-14)


def test_space_kind():
    assert SpaceKind.from_name("TH2") is LORENTZIAN
    assert SpaceKind.from_name("euclidean") is EUCLIDEAN
    assert EUCLIDEAN.kappa == 1 and LORENTZIAN.kappa == -1
    with pytest.raises(ValueError):
        SpaceKind(0)
    with pytest.raises(ValueError):
        SpaceKind.from_name("de sitter")


def test_disc_boundary():
    check_domain(EUCLIDEAN, 5.0)
    check_domain(LORENTZIAN, 0.999)
    with pytest.raises(DomainError):
        check_domain(LORENTZIAN, 1.0)
    with pytest.raises(DomainError):
        metric_value(LORENTZIAN, LinePoint(1.2j, 0), TangentVector(1, 0), TangentVector(1, 0))


def test_complex_structure():
    assert apply_complex_structure(TangentVector(1, 0)) == TangentVector(1j, 0)
    assert apply_complex_structure(TangentVector(0, 1)) == TangentVector(0, 1j)
    v = TangentVector(0.3 - 1j, 2 + 0.5j)
    jj = apply_complex_structure(apply_complex_structure(v))
    assert jj.dxi == -v.dxi and jj.deta == -v.deta


def test_sigma_squared_examples():
    p = LinePoint(0j, 0j)
    assert sigma_squared(LORENTZIAN, p, TangentVector(1, 0), TangentVector(0, 1)) == 16
    v = TangentVector(0.2 + 1j, -1.5j)
    assert sigma_squared(EUCLIDEAN, p, v, apply_complex_structure(v)) == 0


def test_dependent_vectors_give_zero():
    p = LinePoint(0.2 + 0.1j, 1 - 1j)
    v = TangentVector(0.3 + 0.2j, -1 + 0.4j)
    w = v * 2.5
    for space in SPACES:
        assert abs(symplectic_value(space, p, v, w)) < 1e-14
        assert abs(sigma_squared(space, p, v, w)) < 1e-14
        assert abs(gram_determinant(space, p, v, w)) < 1e-12


@pytest.mark.parametrize("space", SPACES, ids=lambda s: s.name)
def test_neutral_signature(space):
    rng = np.random.default_rng(0)
    for _ in range(20):
        p = LinePoint(0.8 * rng.uniform() * np.exp(2j * np.pi * rng.uniform()), complex(*rng.normal(size=2)))
        g = metric_matrix(space, p)
        assert np.allclose(g, g.T, atol=1e-14)
        ev = np.linalg.eigvalsh(g)
        assert (ev > 0).sum() == 2 and (ev < 0).sum() == 2
        om = symplectic_matrix(space, p)
        assert np.allclose(om, -om.T, atol=1e-14)
        assert abs(np.linalg.det(om)) > 1e-8


def test_metric_matrix_vectorised():
    xi = np.array([0.1, 0.2j, -0.3 + 0.1j])
    eta = np.array([1, 1j, -2.0])
    batch = metric_matrix(LORENTZIAN, LinePoint(xi, eta))
    assert batch.shape == (3, 4, 4)
    for k in range(3):
        assert np.allclose(batch[k], metric_matrix(LORENTZIAN, LinePoint(xi[k], eta[k])))


@settings(max_examples=200, deadline=None)
@given(xi=disc, eta=cplx, v=vec, w=vec, lorentz=st.booleans())
def test_compatibility_property(xi, eta, v, w, lorentz):
    space = LORENTZIAN if lorentz else EUCLIDEAN
    p = LinePoint(xi, eta)
    g = metric_value(space, p, v, w)
    om = symplectic_value(space, p, apply_complex_structure(v), w)
    scale = 1 + abs(metric_value(space, p, v, v)) + abs(metric_value(space, p, w, w))
    assert abs(g - om) <= 1e-12 * scale
    # J is an isometry
    jg = metric_value(space, p, apply_complex_structure(v), apply_complex_structure(w))
    assert abs(jg - g) <= 1e-12 * scale


@settings(max_examples=200, deadline=None)
@given(xi=disc, eta=cplx, v=vec, w=vec, lorentz=st.booleans())
def test_wirtinger_identity_property(xi, eta, v, w, lorentz):
    space = LORENTZIAN if lorentz else EUCLIDEAN
    p = LinePoint(xi, eta)
    res = wirtinger_residual(space, p, v, w)
    assert abs(res) <= 1e-9 * (wirtinger_scale(space, p, v, w) + 1e-300)


def test_fibre_directions_are_null():
    # vertical vectors are null and Lagrangian
    p = LinePoint(0.4 - 0.2j, 0.7j)
    for space in SPACES:
        v, w = TangentVector(0, 1), TangentVector(0, 1j)
        assert metric_value(space, p, v, v) == 0
        assert metric_value(space, p, v, w) == 0
        assert symplectic_value(space, p, v, w) == 0
