"""Planar spirals from their turning angle.

A unit-speed curve in a timelike coordinate plane is fixed by its turning
angle ``phi(s) = phi0 + integral of kappa``.  In the (y, z) plane the timelike
curve has tangent ``(0, sinh phi, cosh phi)``; in the (x, z) plane the
spacelike curve has tangent ``(cosh phi, 0, sinh phi)``.  Positions are the
running integrals of the tangent starting at the origin.
"""

from dataclasses import dataclass
import enum
import warnings

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy import integrate as sci_integrate

from .curve import SampledCurve
from .errors import ProfileDomainError, QuadratureError
from .expr import Expr, eval_profile
from .lorentz import CurveCase

QUAD_TOLERANCE = 1e-10
_MAX_DEPTH = 30
_ORDER = 8


class PlanarKind(enum.Enum):
    TIMELIKE_PLANAR = "planar-timelike"
    SPACELIKE_PLANAR = "planar-spacelike"


@dataclass(frozen=True)
class PlanarSpiralSpec:
    kappa: Expr
    s0: float
    s1: float
    n: int
    kind: PlanarKind = PlanarKind.TIMELIKE_PLANAR
    phi0: float = 0.0

    def __post_init__(self):
        if not self.s0 < self.s1:
            raise ValueError("need s0 < s1")
        if int(self.n) != self.n or self.n < 2:
            raise ValueError("need at least 2 samples")

    @classmethod
    def from_step(cls, kappa, s0, s1, step, kind=PlanarKind.TIMELIKE_PLANAR, phi0=0.0):
        n = int(round((s1 - s0) / step))
        if n < 1 or abs(n * step - (s1 - s0)) > 1e-6 * step:
            raise ValueError(f"step {step!r} does not divide [{s0!r}, {s1!r}]")
        return cls(kappa, s0, s1, n + 1, kind, phi0)


def turning_angle(kappa, s0, s, tolerance=QUAD_TOLERANCE):
    """Integral of ``kappa`` over [s0, s] by adaptive quadrature."""
    if s == s0:
        return 0.0
    # pole or domain error at an endpoint is reported by the evaluator
    eval_profile(kappa, np.array([s0, s]))
    f = lambda u: eval_profile(kappa, u)  # noqa: E731
    with warnings.catch_warnings():
        warnings.simplefilter("error", sci_integrate.IntegrationWarning)
        try:
            value, _ = sci_integrate.quad(f, s0, s, epsabs=tolerance, epsrel=0.0, limit=200)
        except sci_integrate.IntegrationWarning as exc:
            worst = _probe_singularity(kappa, s0, s)
            raise QuadratureError(f"curvature is not integrable ({exc})", worst) from None
    return value


def _probe_singularity(kappa, a, b, n=2001):
    u = np.linspace(a, b, n)
    try:
        v = np.abs(eval_profile(kappa, u))
    except ProfileDomainError as exc:
        return exc.s
    return float(u[int(np.argmax(v))])


class _Rule:
    def __init__(self, order):
        x, w = leggauss(order)
        self.x = (x + 1.0) / 2.0  # nodes on [0, 1]
        self.w = w / 2.0


_LO = _Rule(_ORDER)
_HI = _Rule(2 * _ORDER)


def _angle_increment(kappa, a, b, rule):
    """Integral of kappa over each [a_i, b_i] (vectorized Gauss-Legendre)."""
    h = b - a
    nodes = a[:, None] + h[:, None] * rule.x[None, :]
    return h * (eval_profile(kappa, nodes) @ rule.w)


def _panel(kappa, a, b, phi_a, rule):
    """(delta phi, int sinh phi, int cosh phi) over each panel at one rule order."""
    h = b - a
    t = a[:, None] + h[:, None] * rule.x[None, :]  # outer nodes, shape (m, k)
    # phi at each outer node by an inner rule on [a, t]
    inner = a[:, None, None] + (t - a[:, None])[:, :, None] * rule.x[None, None, :]
    phi_t = phi_a[:, None] + (t - a[:, None]) * (eval_profile(kappa, inner) @ rule.w)
    dphi = _angle_increment(kappa, a, b, rule)
    with np.errstate(over="raise"):
        try:
            sh = h * (np.sinh(phi_t) @ rule.w)
            ch = h * (np.cosh(phi_t) @ rule.w)
        except FloatingPointError:
            raise QuadratureError("turning angle overflows cosh/sinh", float(a[0])) from None
    return np.stack([dphi, sh, ch], axis=1)


def _adaptive_panels(kappa, a, b, phi_a, tol, depth=0):
    lo = _panel(kappa, a, b, phi_a, _LO)
    hi = _panel(kappa, a, b, phi_a, _HI)
    err = np.max(np.abs(hi - lo), axis=1)
    bad = err > tol
    if np.any(bad):
        if depth >= _MAX_DEPTH:
            i = int(np.argmax(err))
            raise QuadratureError("adaptive quadrature did not converge", float(a[i]))
        ab, bb, pb = a[bad], b[bad], phi_a[bad]
        mid = 0.5 * (ab + bb)
        left = _adaptive_panels(kappa, ab, mid, pb, tol / 2, depth + 1)
        right = _adaptive_panels(kappa, mid, bb, pb + left[:, 0], tol / 2, depth + 1)
        hi[bad] = left + right
    return hi


def _running_integrals(spec, s):
    """phi, y-like and z-like running integrals at every grid point."""
    # endpoints and grid nodes go through the evaluator so poles are reported by position
    eval_profile(spec.kappa, s)
    a, b = s[:-1], s[1:]
    # pass 1: turning angle at the grid nodes
    dphi_lo = _angle_increment(spec.kappa, a, b, _LO)
    dphi = _angle_increment(spec.kappa, a, b, _HI)
    if np.any(np.abs(dphi - dphi_lo) > QUAD_TOLERANCE):
        zeros = np.zeros_like(a)
        dphi = _adaptive_panels(spec.kappa, a, b, zeros, QUAD_TOLERANCE)[:, 0]
    phi = spec.phi0 + np.concatenate([[0.0], np.cumsum(dphi)])
    # pass 2: position integrals with the angle known at each panel start
    panels = _adaptive_panels(spec.kappa, a, b, phi[:-1], QUAD_TOLERANCE)
    sinh_int = np.concatenate([[0.0], np.cumsum(panels[:, 1])])
    cosh_int = np.concatenate([[0.0], np.cumsum(panels[:, 2])])
    return phi, sinh_int, cosh_int


def _generate(spec):
    s = np.linspace(spec.s0, spec.s1, int(spec.n))
    kappa = eval_profile(spec.kappa, s)
    phi, sinh_int, cosh_int = _running_integrals(spec, s)
    sh, ch = np.sinh(phi), np.cosh(phi)
    zero = np.zeros_like(s)
    if spec.kind is PlanarKind.TIMELIKE_PLANAR:
        points = np.column_stack([zero, sinh_int, cosh_int])
        T = np.column_stack([zero, sh, ch])
        N = np.column_stack([zero, ch, sh])
        B = np.tile([-1.0, 0.0, 0.0], (s.size, 1))
        case = CurveCase.TIMELIKE
    else:
        points = np.column_stack([cosh_int, zero, sinh_int])
        T = np.column_stack([ch, zero, sh])
        N = np.column_stack([sh, zero, ch])
        B = np.tile([0.0, -1.0, 0.0], (s.size, 1))
        case = CurveCase.SPACELIKE_TIMELIKE_NORMAL
    return SampledCurve(case, s, points, T, N, B, kappa, zero.copy())


def generate_timelike_planar(spec):
    """Timelike spiral in the (y, z) plane with signed curvature ``spec.kappa``.

    The frame is T = (0, sinh phi, cosh phi), N = (0, cosh phi, sinh phi),
    B = T x N = (-1, 0, 0), so T' = kappa N with kappa the signed curvature.
    """
    if spec.kind is not PlanarKind.TIMELIKE_PLANAR:
        raise ValueError("spec is not for a timelike planar spiral")
    return _generate(spec)


def generate_spacelike_planar(spec):
    """Spacelike spiral in the (x, z) plane; its normal (sinh phi, 0, cosh phi) is timelike."""
    if spec.kind is not PlanarKind.SPACELIKE_PLANAR:
        raise ValueError("spec is not for a spacelike planar spiral")
    return _generate(spec)


def generate_planar(spec):
    return _generate(spec)
