"""Frames, curvature and torsion recovered from sampled points.

Derivatives are second-order central differences on a uniform grid.  The
curve does not have to be unit speed: the normal is the part of the second
derivative orthogonal to the first, and curvature and torsion are rescaled
by the speed.  For arc-length samples this reduces to ``kappa = |T'|``,
``N = T'/kappa`` and ``B = T x N``.

Torsion is ``<N', B> / <B, B>``, which is the sign convention of the Frenet
matrices used by the integrator in all three cases.
"""

from dataclasses import dataclass
from collections import Counter

import numpy as np

from .curve import SampledCurve, check_uniform_grid
from .errors import CausalityError, NullCaseError, StraightSegmentError
from .lorentz import EPS_CAUSAL, CausalCharacter, CurveCase, lorentz_cross, lorentz_dot

KAPPA_MIN = 1e-12


@dataclass
class EstimatedData:
    """Estimates at the samples where every quantity is available (two dropped per end)."""

    case: CurveCase
    s: np.ndarray
    points: np.ndarray
    T: np.ndarray
    N: np.ndarray
    B: np.ndarray
    kappa: np.ndarray
    tau: np.ndarray
    speed: np.ndarray
    step: float

    def to_curve(self):
        return SampledCurve(self.case, self.s, self.points, self.T, self.N, self.B,
                            self.kappa, self.tau, self.step)


def _characters(q, euclid, eps):
    out = np.full(q.shape, CausalCharacter.LIGHTLIKE, dtype=object)
    out[q > eps * euclid] = CausalCharacter.SPACELIKE
    out[q < -eps * euclid] = CausalCharacter.TIMELIKE
    return out


def _single_character(chars, what, s):
    light = np.flatnonzero(chars == CausalCharacter.LIGHTLIKE)
    if light.size:
        err = NullCaseError if what == "normal" else CausalityError
        raise err(f"lightlike {what} at s={float(s[light[0]])!r}")
    votes = Counter(chars.tolist())
    (winner, count), = votes.most_common(1)
    if count != chars.size:
        raise CausalityError(f"{what} changes causal character along the curve (mixed causality)")
    return winner


def _straight_check(mask, s):
    small = np.flatnonzero(mask)
    if small.size:
        raise StraightSegmentError(
            f"curvature vanishes at s={float(s[small[0]])!r}: torsion undefined on straight segments"
        )


def estimate(s, points, eps_causal=EPS_CAUSAL, kappa_min=KAPPA_MIN):
    """Estimate the Frenet apparatus of a sampled curve.

    ``s`` must be uniform.  Needs at least 5 samples; results are returned for
    samples 2 .. n-3.
    """
    s = np.asarray(s, dtype=float)
    p = np.asarray(points, dtype=float)
    if p.shape != (s.size, 3):
        raise ValueError("points must have shape (n, 3)")
    if s.size < 5:
        raise ValueError("estimation needs at least 5 samples")
    h = check_uniform_grid(s, tol=1e-9)

    d1 = (p[2:] - p[:-2]) / (2.0 * h)
    d2 = (p[2:] - 2.0 * p[1:-1] + p[:-2]) / (h * h)
    si = s[1:-1]

    q1 = lorentz_dot(d1, d1)
    t_char = _single_character(_characters(q1, np.einsum("ij,ij->i", d1, d1), eps_causal), "tangent", si)
    speed = np.sqrt(np.abs(q1))
    T = d1 / speed[:, None]

    normal = d2 - (lorentz_dot(d2, d1) / q1)[:, None] * d1
    qn = lorentz_dot(normal, normal)
    nn = np.sqrt(np.abs(qn))
    euclid_n = np.einsum("ij,ij->i", normal, normal)
    # second differences of exactly straight data are pure roundoff
    roundoff = 64 * np.finfo(float).eps * float(np.max(np.abs(p))) / (h * h)
    _straight_check(np.sqrt(euclid_n) <= roundoff, si)
    n_char = _single_character(_characters(qn, euclid_n, eps_causal), "normal", si)
    kappa = nn / speed**2
    _straight_check(kappa <= kappa_min, si)
    case = CurveCase.from_characters(t_char, n_char)
    N = normal / nn[:, None]
    B = lorentz_cross(T, N)

    dN = (N[2:] - N[:-2]) / (2.0 * h) / speed[1:-1, None]
    sign_b = case.signs[2]
    tau = sign_b * lorentz_dot(dN, B[1:-1])

    inner = slice(1, -1)
    return EstimatedData(
        case=case,
        s=si[inner],
        points=p[2:-2],
        T=T[inner],
        N=N[inner],
        B=B[inner],
        kappa=kappa[inner],
        tau=tau,
        speed=speed[inner],
        step=h,
    )


def estimate_curve(curve):
    """Re-estimate a SampledCurve from its points alone."""
    return estimate(curve.s, curve.points)
