import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from minkspiral.curve import FrenetFrame, SampledCurve, check_uniform_grid
from minkspiral.errors import FrameDegeneracyError, GridError, NullCaseError, ProfileDomainError
from minkspiral.expr import parse_profile
from minkspiral.frenet import (
    arc_length_grid,
    default_initial_frame,
    frenet_matrix,
    frenet_rhs,
    integrate,
)
from minkspiral.lorentz import E1, E2, E3, CurveCase, lorentz_cross, lorentz_dot

CASES = list(CurveCase)


def test_rhs_timelike_unit_curvature():
    f = default_initial_frame(CurveCase.TIMELIKE)
    dT, dN, dB = frenet_rhs(f, 1.0, 0.0)
    np.testing.assert_array_equal(dT, f.N)
    np.testing.assert_array_equal(dN, f.T)
    np.testing.assert_array_equal(dB, 0.0)


@pytest.mark.parametrize("case", CASES)
def test_rhs_zero(case):
    for d in frenet_rhs(default_initial_frame(case), 0.0, 0.0):
        np.testing.assert_array_equal(d, 0.0)


def test_rhs_spacelike_spacelike_normal():
    f = default_initial_frame(CurveCase.SPACELIKE_SPACELIKE_NORMAL)
    _, dN, _ = frenet_rhs(f, 2.0, 3.0)
    np.testing.assert_array_equal(dN, -2.0 * f.T + 3.0 * f.B)


@pytest.mark.parametrize("case, rows", [
    (CurveCase.TIMELIKE, [[0, 2, 0], [2, 0, 3], [0, -3, 0]]),
    (CurveCase.SPACELIKE_SPACELIKE_NORMAL, [[0, 2, 0], [-2, 0, 3], [0, 3, 0]]),
    (CurveCase.SPACELIKE_TIMELIKE_NORMAL, [[0, 2, 0], [2, 0, 3], [0, 3, 0]]),
])
def test_printed_matrices(case, rows):
    np.testing.assert_array_equal(frenet_matrix(case, 2.0, 3.0), rows)


@pytest.mark.parametrize("case", CASES)
def test_default_frames(case):
    f = default_initial_frame(case)
    assert f.defect() == 0.0
    np.testing.assert_array_equal(f.B, lorentz_cross(f.T, f.N))
    if case is CurveCase.SPACELIKE_TIMELIKE_NORMAL:
        assert lorentz_dot(f.N, f.N) == -1.0


def test_default_frame_vectors():
    assert default_initial_frame(CurveCase.TIMELIKE).B.tolist() == E2.tolist()
    assert default_initial_frame(CurveCase.SPACELIKE_SPACELIKE_NORMAL).B.tolist() == (-E3).tolist()
    assert default_initial_frame(CurveCase.SPACELIKE_TIMELIKE_NORMAL).B.tolist() == (-E2).tolist()


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(CASES), st.floats(-3, 3), st.floats(-3, 3))
def test_rhs_preserves_gram_matrix(case, kappa, tau):
    # d/ds <X_i, X_j> = 0 for the frame derivative at an orthonormal frame
    f = default_initial_frame(case)
    vs = f.vectors()
    ds = frenet_rhs(f, kappa, tau)
    for i in range(3):
        for j in range(3):
            assert abs(lorentz_dot(ds[i], vs[j]) + lorentz_dot(vs[i], ds[j])) <= 1e-12


@pytest.mark.parametrize("case", CASES)
def test_straight_line(case):
    zero = parse_profile("0")
    start = np.array([1.0, -2.0, 0.5])
    c = integrate(case, zero, zero, start=start, s1=1.0, step=0.01)
    f = default_initial_frame(case)
    np.testing.assert_allclose(c.points, start + c.s[:, None] * f.T, atol=1e-14)
    np.testing.assert_allclose(c.T, np.tile(f.T, (len(c), 1)), atol=1e-15)


@pytest.mark.parametrize("case", CASES)
def test_frame_conservation_and_unit_speed(case):
    c = integrate(case, parse_profile("2*s+0.5"), parse_profile("-s+1"), s1=1.0, step=1e-3)
    assert np.max(c.frame_defects()) <= 1e-9
    assert c.binormal_defect() <= 1e-9
    # five-point stencil: a three-point one has O(h^2 kappa^2) error near 2e-6 here
    p = c.points
    d1 = (-p[4:] + 8 * p[3:-1] - 8 * p[1:-3] + p[:-4]) / (12 * c.step)
    np.testing.assert_allclose(lorentz_dot(d1, d1), case.signs[0], atol=1e-6)
    np.testing.assert_allclose(c.kappa, 2 * c.s + 0.5)
    assert len(c) == 1001 and c.s[0] == 0.0 and c.s[-1] == 1.0


def test_tangent_matches_finite_difference():
    c = integrate("timelike", parse_profile("s"), parse_profile("1"), s1=1.0, step=1e-3)
    d1 = (c.points[2:] - c.points[:-2]) / (2 * c.step)
    assert np.max(np.abs(d1 - c.T[1:-1])) <= 1e-6


def test_endpoint_order():
    kappa, tau = parse_profile("2*s+0.5"), parse_profile("-s+1")
    ref = integrate("timelike", kappa, tau, s1=2.0, step=0.1 / 16).points[-1]
    errs = [np.linalg.norm(integrate("timelike", kappa, tau, s1=2.0, step=h).points[-1] - ref)
            for h in (0.1, 0.05)]
    assert 12 <= errs[0] / errs[1] <= 20


def test_string_case_and_null_case():
    one = parse_profile("1")
    assert integrate("spacelike-timelike-normal", one, one, step=0.1).case is CurveCase.SPACELIKE_TIMELIKE_NORMAL
    with pytest.raises(NullCaseError):
        integrate("spacelike-lightlike-normal", one, one, step=0.1)


def test_domain_error_mid_interval():
    with pytest.raises(ProfileDomainError, match="s=0.5"):
        integrate("timelike", parse_profile("1/(s-0.5)"), parse_profile("1"), s1=1.0, step=0.1)


def test_bad_initial_frame():
    frame = FrenetFrame(E3, E1 + 0.1 * E2, E2, CurveCase.TIMELIKE)
    with pytest.raises(FrameDegeneracyError):
        integrate("timelike", parse_profile("1"), parse_profile("1"), frame0=frame)


def test_grid():
    s = arc_length_grid(0.0, 2.0, 1e-3)
    assert s.size == 2001 and s[-1] == 2.0
    assert check_uniform_grid(s) == pytest.approx(1e-3)
    with pytest.raises(GridError):
        arc_length_grid(0.0, 1.0, 0.3)
    with pytest.raises(GridError):
        arc_length_grid(0.0, 1.0, -0.1)
    with pytest.raises(GridError):
        check_uniform_grid([0.0, 0.1, 0.3])


def test_sampled_curve_validation():
    n = 4
    ok = dict(s=np.arange(n) * 0.5, points=np.zeros((n, 3)), T=np.zeros((n, 3)), N=np.zeros((n, 3)),
              B=np.zeros((n, 3)), kappa=np.zeros(n), tau=np.zeros(n))
    assert SampledCurve(CurveCase.TIMELIKE, **ok).step == 0.5
    with pytest.raises(ValueError):
        SampledCurve(CurveCase.TIMELIKE, **{**ok, "kappa": np.zeros(n + 1)})
    with pytest.raises(GridError):
        SampledCurve(CurveCase.TIMELIKE, **{**ok, "s": np.array([0.0, 0.5, 0.4, 1.5])})
