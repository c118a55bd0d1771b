import math

import numpy as np
import pytest
from scipy import integrate as sci_integrate

from minkspiral.curve import FrenetFrame
from minkspiral.errors import ProfileDomainError, QuadratureError
from minkspiral.estimators import estimate
from minkspiral.expr import eval_profile, parse_profile
from minkspiral.frenet import integrate
from minkspiral.lorentz import E1, E2, E3, CurveCase, lorentz_dot
from minkspiral.planar import (
    PlanarKind,
    PlanarSpiralSpec,
    generate_planar,
    generate_spacelike_planar,
    generate_timelike_planar,
    turning_angle,
)

TL = PlanarKind.TIMELIKE_PLANAR
SL = PlanarKind.SPACELIKE_PLANAR


def nested_quad_point(kappa_text, s0, s, phi0=0.0):
    """Oracle: nested scipy quadrature of sinh/cosh of the turning angle."""
    k = parse_profile(kappa_text)
    phi = lambda t: phi0 + sci_integrate.quad(lambda u: eval_profile(k, u), s0, t, epsabs=1e-13)[0]  # noqa: E731
    sh = sci_integrate.quad(lambda t: math.sinh(phi(t)), s0, s, epsabs=1e-12)[0]
    ch = sci_integrate.quad(lambda t: math.cosh(phi(t)), s0, s, epsabs=1e-12)[0]
    return sh, ch


@pytest.mark.parametrize("text, s0, s, expected", [
    ("s", 0.0, 2.0, 2.0),
    ("3*s+0.5", 0.0, 1.2, 1.5 * 1.2**2 + 0.5 * 1.2),
    ("1/s", 1.0, math.e, 1.0),
    ("0", 0.0, 5.0, 0.0),
])
def test_turning_angle(text, s0, s, expected):
    assert turning_angle(parse_profile(text), s0, s) == pytest.approx(expected, abs=1e-10)


def test_turning_angle_singularities():
    with pytest.raises(ProfileDomainError):
        turning_angle(parse_profile("1/s"), 0.0, 1.0)
    with pytest.raises((QuadratureError, ProfileDomainError)):
        turning_angle(parse_profile("1/(s-1)"), 0.0, 2.0)


def test_straight_timelike_line():
    c = generate_timelike_planar(PlanarSpiralSpec(parse_profile("0"), 0.0, 1.0, 11, TL))
    np.testing.assert_allclose(c.points, np.column_stack([0 * c.s, 0 * c.s, c.s]), atol=1e-15)
    assert c.case is CurveCase.TIMELIKE


def test_straight_spacelike_line():
    c = generate_spacelike_planar(PlanarSpiralSpec(parse_profile("0"), 0.0, 1.0, 11, SL))
    np.testing.assert_allclose(c.points, np.column_stack([c.s, 0 * c.s, 0 * c.s]), atol=1e-15)
    assert c.case is CurveCase.SPACELIKE_TIMELIKE_NORMAL


def test_kind_mismatch():
    spec = PlanarSpiralSpec(parse_profile("s"), 0.0, 1.0, 5, SL)
    with pytest.raises(ValueError):
        generate_timelike_planar(spec)


@pytest.mark.parametrize("text, s0, s1, phi0", [
    ("s", 0.0, 1.0, 0.0),
    ("2*s+0.3", 0.0, 1.5, 0.0),
    ("1/s", 1.0, 2.0, 0.2),
    ("cos(3*s)", -1.0, 1.0, -0.5),
])
@pytest.mark.parametrize("kind", [TL, SL])
def test_generator_matches_nested_quadrature(text, s0, s1, phi0, kind):
    c = generate_planar(PlanarSpiralSpec(parse_profile(text), s0, s1, 201, kind, phi0))
    for i in (50, 137, 200):
        sh, ch = nested_quad_point(text, s0, c.s[i], phi0)
        expected = (0.0, sh, ch) if kind is TL else (ch, 0.0, sh)
        np.testing.assert_allclose(c.points[i], expected, atol=1e-10)


def test_example_one_integrands():
    a, b = 0.8, 0.3
    c = generate_planar(PlanarSpiralSpec(parse_profile(f"{a}*s+{b}"), 0.0, 1.0, 101, TL))
    phi = a / 2 * c.s**2 + b * c.s
    np.testing.assert_allclose(c.T[:, 1], np.sinh(phi), atol=1e-12)
    np.testing.assert_allclose(c.T[:, 2], np.cosh(phi), atol=1e-12)


@pytest.mark.parametrize("kind, sign", [(TL, -1.0), (SL, 1.0)])
def test_unit_speed_at_probe_points(kind, sign):
    c = generate_planar(PlanarSpiralSpec(parse_profile("s"), 0.0, 2.0, 1000, kind))
    np.testing.assert_allclose(lorentz_dot(c.T, c.T), sign, atol=1e-9)
    assert np.max(c.frame_defects()) <= 1e-12
    assert c.binormal_defect() <= 1e-12


@pytest.mark.parametrize("kind", [TL, SL])
def test_estimated_curvature_and_torsion(kind):
    c = generate_planar(PlanarSpiralSpec(parse_profile("s+0.5"), 0.0, 2.0, 2001, kind))
    est = estimate(c.s, c.points)
    np.testing.assert_allclose(est.kappa, np.abs(est.s + 0.5), atol=1e-4)
    assert np.max(np.abs(est.tau)) <= 1e-6
    assert est.case is c.case


def test_frenet_matches_timelike_planar():
    kappa = parse_profile("s")
    planar = generate_planar(PlanarSpiralSpec(kappa, 0.0, 2.0, 2001, TL))
    frame0 = FrenetFrame(E3.copy(), E2.copy(), -E1, CurveCase.TIMELIKE)
    frenet = integrate(CurveCase.TIMELIKE, kappa, parse_profile("0"), frame0=frame0, s0=0.0, s1=2.0, step=1e-3)
    np.testing.assert_allclose(frenet.points, planar.points, atol=1e-6)


def test_frenet_matches_constant_curvature_arc():
    kappa = parse_profile("1.5")
    planar = generate_planar(PlanarSpiralSpec(kappa, 0.0, 1.0, 1001, TL, phi0=0.4))
    T0, N0 = planar.T[0], planar.N[0]
    frame0 = FrenetFrame(T0, N0, planar.B[0], CurveCase.TIMELIKE)
    frenet = integrate(CurveCase.TIMELIKE, kappa, parse_profile("0"), frame0=frame0, s1=1.0, step=1e-3)
    np.testing.assert_allclose(frenet.points, planar.points, atol=1e-6)
    # closed form: z' = cosh(1.5 s + 0.4)
    expected_z = (np.sinh(1.5 * planar.s + 0.4) - np.sinh(0.4)) / 1.5
    np.testing.assert_allclose(planar.points[:, 2], expected_z, atol=1e-12)


def test_frenet_matches_spacelike_planar():
    kappa = parse_profile("2*s-1")
    planar = generate_planar(PlanarSpiralSpec(kappa, 0.0, 1.0, 1001, SL))
    frenet = integrate(CurveCase.SPACELIKE_TIMELIKE_NORMAL, kappa, parse_profile("0"), s1=1.0, step=1e-3)
    np.testing.assert_allclose(frenet.points, planar.points, atol=1e-6)


def test_reciprocal_curvature_needs_positive_start():
    with pytest.raises(ProfileDomainError, match="at s=0.0"):
        generate_planar(PlanarSpiralSpec(parse_profile("1/s"), 0.0, 1.0, 11, TL))


def test_spec_validation():
    k = parse_profile("s")
    with pytest.raises(ValueError):
        PlanarSpiralSpec(k, 1.0, 0.0, 10)
    with pytest.raises(ValueError):
        PlanarSpiralSpec(k, 0.0, 1.0, 1)
    assert PlanarSpiralSpec.from_step(k, 0.0, 2.0, 0.001).n == 2001
    with pytest.raises(ValueError):
        PlanarSpiralSpec.from_step(k, 0.0, 1.0, 0.3)
