import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from linespace import EUCLIDEAN, LORENTZIAN, LinePoint
from linespace.errors import DomainError
from linespace.linemap import (
    LineWithParam,
    SpacePoint,
    direction_vector,
    from_space,
    line_from_point_direction,
    line_through_points,
    to_space,
    xi_from_direction,
)

SPACES = [EUCLIDEAN, LORENTZIAN]


def _inner(space, a, b):
    return a[0] * b[0] + a[1] * b[1] + space.sign * a[2] * b[2]


@pytest.mark.parametrize("space", SPACES, ids=lambda s: s.name)
def test_axis_examples(space):
    eta0 = 0.7 - 0.2j
    pt = to_space(space, LineWithParam(LinePoint(0j, eta0), 1.5))
    assert pt.z == 2 * eta0 and pt.t == 1.5
    origin = to_space(space, LineWithParam(LinePoint(0j, 0j), 0.0))
    assert origin.z == 0 and origin.t == 0
    lw = from_space(space, 0j, SpacePoint(1 + 2j, -0.5))
    assert lw.line.eta == 0.5 + 1j and lw.r == -0.5


def test_direction_examples():
    for space in SPACES:
        assert direction_vector(space, 0j) == (0, 1)
    zd, td = direction_vector(EUCLIDEAN, 1.0)
    assert zd == 1 and td == 0
    zd, td = direction_vector(LORENTZIAN, 0.5)
    assert zd == pytest.approx(4 / 3) and td == pytest.approx(5 / 3)
    assert abs(zd) ** 2 - td**2 == pytest.approx(-1)


@pytest.mark.parametrize("space", SPACES, ids=lambda s: s.name)
def test_points_lie_on_unit_speed_line(space):
    rng = np.random.default_rng(3)
    for _ in range(50):
        xi = 0.85 * rng.uniform() * np.exp(2j * np.pi * rng.uniform())
        eta = complex(*rng.normal(size=2))
        r0, r1 = rng.normal(size=2)
        a = to_space(space, LineWithParam(LinePoint(xi, eta), r0)).as_array()
        b = to_space(space, LineWithParam(LinePoint(xi, eta), r1)).as_array()
        zd, td = direction_vector(space, xi)
        d = np.array([zd.real, zd.imag, td])
        assert np.allclose(b - a, (r1 - r0) * d, atol=1e-11)
        # r = 0 is the foot of the perpendicular from the origin
        foot = to_space(space, LineWithParam(LinePoint(xi, eta), 0.0)).as_array()
        assert abs(_inner(space, foot, d)) < 1e-11 * (1 + np.abs(foot).max())


@settings(max_examples=200, deadline=None)
@given(r=st.floats(0, 0.9), th=st.floats(0, 6.3), x=st.floats(-5, 5), y=st.floats(-5, 5), t=st.floats(-5, 5),
       lorentz=st.booleans())
def test_round_trip_property(r, th, x, y, t, lorentz):
    space = LORENTZIAN if lorentz else EUCLIDEAN
    xi = r * np.exp(1j * th)
    pt = SpacePoint(complex(x, y), t)
    back = to_space(space, from_space(space, xi, pt))
    assert abs(back.z - pt.z) + abs(back.t - pt.t) <= 1e-12 * (1 + abs(x) + abs(y) + abs(t)) * 10


def test_vectorised_round_trip():
    xi = np.array([0.1, 0.5j, -0.7])
    eta = np.array([1j, 2.0, -1 + 1j])
    r = np.array([0.0, 1.0, -2.0])
    for space in SPACES:
        pt = to_space(space, LineWithParam(LinePoint(xi, eta), r))
        lw = from_space(space, xi, pt)
        assert np.allclose(lw.line.eta, eta) and np.allclose(lw.r, r)


@pytest.mark.parametrize("space", SPACES, ids=lambda s: s.name)
def test_direction_inverse(space):
    for xi in (0j, 0.3 + 0.4j, -0.6j):
        assert xi_from_direction(space, direction_vector(space, xi)) == pytest.approx(xi, abs=1e-14)
    with pytest.raises(DomainError):
        xi_from_direction(space, (2.0, 0.0))


def test_direction_errors():
    with pytest.raises(DomainError):
        xi_from_direction(LORENTZIAN, (0.0, -1.0))
    with pytest.raises(DomainError):
        xi_from_direction(EUCLIDEAN, (0.0, -1.0))


def test_line_from_point_direction_examples():
    for space in SPACES:
        lp = line_from_point_direction(space, SpacePoint(0, 0), (0, 1))
        assert lp.xi == 0 and lp.eta == 0
        lp = line_from_point_direction(space, SpacePoint(2 * (0.3 - 1j), 0), (0, 1))
        assert lp.eta == pytest.approx(0.3 - 1j)


@pytest.mark.parametrize("space", SPACES, ids=lambda s: s.name)
def test_line_through_points_round_trip(space):
    rng = np.random.default_rng(11)
    for _ in range(50):
        lp = LinePoint(0.8 * rng.uniform() * np.exp(2j * np.pi * rng.uniform()), complex(*rng.normal(size=2)))
        p0 = to_space(space, LineWithParam(lp, 0.0))
        p1 = to_space(space, LineWithParam(lp, 1.0))
        back = line_through_points(space, p0, p1)
        assert abs(back.xi - lp.xi) < 1e-10 and abs(back.eta - lp.eta) < 1e-10


def test_space_like_pair_rejected():
    with pytest.raises(DomainError):
        line_through_points(LORENTZIAN, SpacePoint(0, 0), SpacePoint(1, 0.1))
