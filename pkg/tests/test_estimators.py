import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from minkspiral.errors import CausalityError, GridError, NullCaseError, StraightSegmentError
from minkspiral.estimators import estimate, estimate_curve
from minkspiral.expr import parse_profile
from minkspiral.frenet import integrate
from minkspiral.lorentz import METRIC, CurveCase
from minkspiral.profiles import fit_linear

CASES = list(CurveCase)


def isometry(rapidity, angle):
    """Boost in the (y, z) plane followed by a rotation in the (x, y) plane."""
    ch, sh = np.cosh(rapidity), np.sinh(rapidity)
    boost = np.array([[1, 0, 0], [0, ch, sh], [0, sh, ch]])
    c, s = np.cos(angle), np.sin(angle)
    rot = np.array([[c, -s, 0], [s, c, 0], [0, 0, 1]])
    return rot @ boost


def test_straight_timelike_line():
    s = np.linspace(0, 1, 11)
    with pytest.raises(StraightSegmentError, match="torsion undefined on straight segments"):
        estimate(s, np.column_stack([0 * s, 0 * s, s]))


@pytest.mark.parametrize("case", CASES)
def test_round_trip_recovers_linear_profiles(case):
    c = integrate(case, parse_profile("2*s+1"), parse_profile("s"), s1=1.0, step=1e-3)
    est = estimate_curve(c)
    assert est.case is case
    k = fit_linear(est.s, est.kappa)
    t = fit_linear(est.s, est.tau)
    np.testing.assert_allclose(k.coefficients, (2, 1), atol=1e-3)
    np.testing.assert_allclose(t.coefficients, (1, 0), atol=1e-3)
    assert np.all(est.kappa >= 0)


@pytest.mark.parametrize("case", CASES)
def test_estimated_frames_match_integrated(case):
    c = integrate(case, parse_profile("1.5"), parse_profile("0.5*s-0.2"), s1=1.0, step=1e-3)
    est = estimate_curve(c)
    inner = slice(2, -2)
    for name in ("T", "N", "B"):
        np.testing.assert_allclose(getattr(est, name), getattr(c, name)[inner], atol=1e-5)
    np.testing.assert_allclose(est.speed, 1.0, atol=1e-6)
    assert est.s.size == len(c) - 4


def test_non_unit_speed_parametrization():
    # the same curve sampled at twice the speed gives the same curvature and torsion
    c = integrate("timelike", parse_profile("1+s"), parse_profile("2-s"), s1=1.0, step=1e-3)
    est = estimate(c.s[::2] / 2, c.points[::2])
    arc = 2 * est.s
    np.testing.assert_allclose(est.speed, 2.0, atol=1e-5)
    np.testing.assert_allclose(est.kappa, 1 + arc, atol=1e-4)
    np.testing.assert_allclose(est.tau, 2 - arc, atol=1e-4)


@settings(max_examples=10, deadline=None)
@given(st.sampled_from(CASES), st.floats(-0.5, 0.5), st.floats(-np.pi, np.pi))
def test_lorentz_isometry_invariance(case, rapidity, angle):
    m = isometry(rapidity, angle)
    np.testing.assert_allclose(m.T @ METRIC @ m, METRIC, atol=1e-14)
    c = integrate(case, parse_profile("2*s+0.5"), parse_profile("1-s"), s1=1.0, step=1e-2)
    a = estimate(c.s, c.points)
    b = estimate(c.s, c.points @ m.T)
    assert b.case is a.case
    assert np.max(np.abs(a.kappa - b.kappa)) <= 1e-9
    assert np.max(np.abs(a.tau - b.tau)) <= 1e-9


def test_second_order_convergence():
    kappa, tau = parse_profile("2*s+0.5"), parse_profile("1-s")
    errs = []
    for h in (0.02, 0.005):
        c = integrate("timelike", kappa, tau, s1=1.0, step=h)
        est = estimate_curve(c)
        errs.append(np.max(np.abs(est.kappa - (2 * est.s + 0.5))))
    assert 12 <= errs[0] / errs[1] <= 20


def test_lightlike_tangent_rejected():
    s = np.linspace(0, 1, 11)
    with pytest.raises(CausalityError, match="lightlike tangent"):
        estimate(s, np.column_stack([s, 0 * s, s]))


def test_lightlike_normal_rejected():
    s = np.linspace(0, 1, 11)
    with pytest.raises(NullCaseError):
        estimate(s, np.column_stack([s, s**2 / 2, s**2 / 2]))


def test_mixed_causality_rejected():
    s = np.linspace(0, 1, 40)  # tangent is null at s=0.5, which is off the grid
    with pytest.raises(CausalityError, match="mixed causality"):
        estimate(s, np.column_stack([s, 0 * s, s**2]))


def test_input_validation():
    s = np.linspace(0, 1, 4)
    with pytest.raises(ValueError):
        estimate(s, np.zeros((4, 3)))
    s = np.array([0.0, 0.1, 0.2, 0.35, 0.4, 0.5])
    with pytest.raises(GridError):
        estimate(s, np.column_stack([s, s**2, 0 * s]))
