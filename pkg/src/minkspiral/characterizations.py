"""Curve-family classification and the offset-curve / ruled-surface checks.

Families, in terms of the sampled curvature and torsion:

* planar cornu: tau == 0 and kappa linear
* euler: kappa and tau both linear
* logarithmic: 1/kappa and 1/tau both linear
* generalized euler: kappa*(c s + d) == tau*(a s + b) for some (a, b, c, d) != 0
* helix: tau/kappa constant
* rectifying: tau/kappa linear with nonzero slope
* bertrand: A kappa + B tau == 1 for constants A, B

Everything works on :class:`SampledCurve` values; derivatives of derived
vector fields are central finite differences on the curve's grid.
"""

from dataclasses import dataclass, field
import math

import numpy as np

from .curve import SampledCurve, check_uniform_grid
from .errors import DegenerateError, ProportionalProfilesError, StraightSegmentError
from .estimators import estimate
from .frenet import _MATRIX_SIGNS
from .lorentz import lorentz_dot
from .profiles import (
    FIT_TOLERANCE,
    fit_constant,
    fit_linear,
    fit_ratio_rational_linear,
    ratio_residual,
)

RESIDUAL_TOLERANCE = 1e-3
STRAIGHT_KAPPA = 1e-12
POLE_GUARD = 1e-9


@dataclass(frozen=True)
class Verdict:
    ok: bool
    residual: float
    coefficients: tuple = ()
    note: str = ""


@dataclass
class ClassificationReport:
    tolerance: float
    n_samples: int
    planar_cornu: Verdict
    euler: Verdict
    logarithmic: Verdict
    generalized_euler: Verdict
    helix: Verdict
    rectifying: Verdict
    bertrand: Verdict
    fits: dict = field(default_factory=dict)

    FAMILIES = ("planar_cornu", "euler", "logarithmic", "generalized_euler",
                "helix", "rectifying", "bertrand")

    def verdicts(self):
        return {name: getattr(self, name) for name in self.FAMILIES}

    def to_dict(self):
        def clean(x):
            if isinstance(x, float) and not math.isfinite(x):
                return None
            return x

        return {
            "tolerance": self.tolerance,
            "n_samples": self.n_samples,
            "families": {
                name: {
                    "ok": v.ok,
                    "residual": clean(v.residual),
                    "coefficients": [clean(c) for c in v.coefficients],
                    "note": v.note,
                }
                for name, v in self.verdicts().items()
            },
            "fits": {
                name: {
                    "coefficients": [clean(c) for c in f.coefficients],
                    "residual": clean(f.residual),
                    "ok": f.ok,
                }
                for name, f in self.fits.items()
            },
        }

    def format(self):
        lines = [f"samples: {self.n_samples}   tolerance: {self.tolerance:g}"]
        labels = {
            "planar_cornu": "kappa=a s+b, tau=0",
            "euler": "kappa=a s+b, tau=c s+d",
            "logarithmic": "1/kappa=a s+b, 1/tau=c s+d",
            "generalized_euler": "kappa/tau=(a s+b)/(c s+d)",
            "helix": "tau/kappa=lambda",
            "rectifying": "tau/kappa=l1 s+l2",
            "bertrand": "A kappa+B tau=1",
        }
        for name, v in self.verdicts().items():
            coef = ", ".join(f"{c:.10g}" for c in v.coefficients)
            line = f"{name:18s} {str(v.ok).lower():5s}  residual={v.residual:.3e}"
            if coef:
                line += f"  [{labels[name]}] ({coef})"
            if v.note:
                line += f"  {v.note}"
            lines.append(line)
        return "\n".join(lines)


def _linear_coeffs(fit):
    if hasattr(fit, "coefficients"):
        return tuple(fit.coefficients)
    return tuple(fit)


def bertrand_coefficients(kappa_fit, tau_fit):
    """Constants (A, B) with ``A kappa + B tau = 1`` for linear kappa and tau.

    ``kappa = c1 s + c2`` and ``tau = d1 s + d2`` (FitResult, CanonicalForm-like
    or plain pairs).  Matching the s and constant terms gives
    ``A c1 + B d1 = 0`` and ``A c2 + B d2 = 1``.
    """
    c1, c2 = _linear_coeffs(kappa_fit)
    d1, d2 = _linear_coeffs(tau_fit)
    det = c1 * d2 - d1 * c2
    scale = max(abs(c1), abs(c2)) * max(abs(d1), abs(d2))
    if det == 0 or abs(det) <= 1e-12 * scale:
        raise ProportionalProfilesError(
            "profiles proportional (helix) - Bertrand coefficients not unique"
        )
    A = -d1 / det
    B = c1 / det
    return A, B


def bertrand_offset(A, case):
    """Offset along N that turns a curve with ``A kappa + B tau = 1`` into a Bertrand mate.

    The mate's tangent is ``(1 + r sigma kappa) T + r tau B`` where
    ``N' = sigma kappa T + tau B``.  Its direction is constant relative to the
    frame exactly when ``1 + r sigma kappa`` is proportional to ``tau``, i.e.
    for ``r = -sigma A``: -A for timelike curves and for spacelike curves with
    timelike normal, +A for spacelike curves with spacelike normal.
    """
    sigma, _ = _MATRIX_SIGNS[case]
    return -sigma * A


def _require_curved(curve):
    if np.max(np.abs(curve.kappa)) <= STRAIGHT_KAPPA:
        raise StraightSegmentError("torsion undefined on straight segments (curvature vanishes)")


def bertrand_mate(curve, r):
    """The curve ``alpha + r N``, with its own frames re-estimated from the points.

    The result keeps the base curve's parameter and loses two samples per end
    to the finite differences.  ``r == 0`` returns the base curve unchanged.
    """
    if not math.isfinite(r):
        raise ValueError("offset must be finite")
    _require_curved(curve)
    if r == 0:
        return curve.slice(None, None)
    points = curve.points + r * curve.N
    return estimate(curve.s, points).to_curve()


def normal_line_angles(base, mate):
    """Euclidean angle (rad) between the base and mate principal normals at common samples.

    The mate lies on the base's normal line, so the two normal lines
    coincide exactly when the normals are parallel.
    """
    idx = np.searchsorted(base.s, mate.s)
    if np.any(idx >= len(base)) or np.any(np.abs(base.s[idx] - mate.s) > 1e-9 * max(1.0, base.step)):
        raise ValueError("mate samples are not a subset of the base grid")
    n1 = base.N[idx]
    n2 = mate.N
    cos = np.abs(np.einsum("ij,ij->i", n1, n2)) / (
        np.linalg.norm(n1, axis=1) * np.linalg.norm(n2, axis=1)
    )
    return np.arccos(np.clip(cos, -1.0, 1.0))


def darboux_curve(curve):
    """Darboux vector field ``W = eps tau T - kappa B`` (eps = -1 timelike, +1 spacelike).

    With this sign ``W'`` has no N component in every case:
    ``W' = eps tau' T - kappa' B``.
    """
    eps = curve.case.epsilon
    W = eps * curve.tau[:, None] * curve.T - curve.kappa[:, None] * curve.B
    return curve.s.copy(), W


def frame_components(vectors, T, N, B, case):
    """Coefficients of ``vectors`` in the orthonormal frame (T, N, B)."""
    sT, sN, sB = case.signs
    return np.column_stack([
        sT * lorentz_dot(vectors, T),
        sN * lorentz_dot(vectors, N),
        sB * lorentz_dot(vectors, B),
    ])


def second_difference(s, vectors):
    h = check_uniform_grid(s, tol=1e-9)
    v = np.asarray(vectors, dtype=float)
    return (v[2:] - 2.0 * v[1:-1] + v[:-2]) / (h * h)


def _require_on_grid(curve, s):
    s = np.asarray(s, dtype=float)
    if s.shape != curve.s.shape or np.max(np.abs(s - curve.s)) > 1e-9 * max(1.0, curve.step):
        raise ValueError("vector samples must lie on the curve's grid")


def parallel_to_normal_residual(s, vectors, curve, min_norm=1e-12):
    """How far the second derivative of a vector field is from being parallel to N.

    At each interior sample the second difference is written in frame
    coordinates (x_T, x_N, x_B); the residual there is
    ``sqrt(x_T^2 + x_B^2) / sqrt(x_T^2 + x_N^2 + x_B^2)``, between 0 (parallel
    to N) and 1 (orthogonal to N).  The maximum over the samples is returned.

    Roundoff in the second difference is amplified by the Euclidean size of
    the frame, which grows exponentially along strongly curved spacelike
    curves with timelike normal; the residual is reliable while the frame
    stays within a few hundred in Euclidean norm.
    """
    _require_on_grid(curve, s)
    d2 = second_difference(s, vectors)
    inner = slice(1, -1)
    comps = frame_components(d2, curve.T[inner], curve.N[inner], curve.B[inner], curve.case)
    total = np.linalg.norm(comps, axis=1)
    if np.any(total < min_norm):
        i = int(np.argmin(total))
        raise DegenerateError(
            f"second derivative vanishes at s={float(curve.s[1 + i])!r}; the condition is vacuous"
        )
    off = np.hypot(comps[:, 0], comps[:, 2])
    return float(np.max(off / total))


def u_curve(curve):
    """``U = (eps/kappa) T - (1/tau) B``; for timelike curves ``-(1/kappa) T - (1/tau) B``."""
    bad = (np.abs(curve.kappa) < POLE_GUARD) | (np.abs(curve.tau) < POLE_GUARD)
    if np.any(bad):
        i = int(np.argmax(bad))
        raise DegenerateError(f"curvature or torsion vanishes at s={float(curve.s[i])!r}")
    eps = curve.case.epsilon
    U = (eps / curve.kappa)[:, None] * curve.T - (1.0 / curve.tau)[:, None] * curve.B
    return curve.s.copy(), U


@dataclass
class OffsetCurve:
    """Points of an offset curve and their finite-difference derivative in s."""

    s: np.ndarray
    points: np.ndarray
    derivative: np.ndarray


def involute_offset_curve(curve, a, b, c, d, lam=0.0):
    """``beta = alpha + (a s + b) T + (c s + d) B + lam N``."""
    s = curve.s
    lin1 = (a * s + b)[:, None]
    lin2 = (c * s + d)[:, None]
    points = curve.points + lin1 * curve.T + lin2 * curve.B + lam * curve.N
    derivative = np.gradient(points, curve.step, axis=0, edge_order=2)
    return OffsetCurve(s.copy(), points, derivative)


def involute_normal_component(curve, offset):
    """<beta', N> at every sample (second-order differences, one-sided at the ends)."""
    return lorentz_dot(offset.derivative, curve.N)


def expected_normal_component(curve, a, b, c, d):
    """Closed form of <beta', N> for the involute offset.

    Differentiating gives an N coefficient of ``kappa (a s + b) + rho tau (c s + d)``
    where ``B' = rho tau N``; multiplying by <N, N> yields the inner product.
    For timelike curves this is ``kappa (a s + b) - tau (c s + d)``.
    """
    _, rho = _MATRIX_SIGNS[curve.case]
    s = curve.s
    sign_n = curve.case.signs[1]
    return sign_n * (curve.kappa * (a * s + b) + rho * curve.tau * (c * s + d))


def director_condition(curve, a, b, c, d):
    """Scalar N coefficient of X' for the director ``X = (a s + b) T + (c s + d) B``.

    It vanishes identically exactly when the ruled surface is developable
    (where c s + d != 0); used to construct matched inputs.
    """
    return curve.case.signs[1] * expected_normal_component(curve, a, b, c, d)


@dataclass
class RuledSurfaceSpec:
    """Ruled surface ``Phi(s, v) = alpha(s) + v X(s)`` with ``X = (a s + b) T + (c s + d) B``."""

    base: SampledCurve
    a: float
    b: float
    c: float
    d: float

    def director(self):
        s = self.base.s
        return (self.a * s + self.b)[:, None] * self.base.T + (self.c * s + self.d)[:, None] * self.base.B

    def points(self, v):
        """Surface points for each ruling parameter in ``v``: shape (len(v), n, 3)."""
        v = np.atleast_1d(np.asarray(v, dtype=float))
        return self.base.points[None, :, :] + v[:, None, None] * self.director()[None, :, :]


def developability_residual(spec):
    """max |det(T, X, X')| over interior samples, with X' by central differences."""
    base = spec.base
    if len(base) < 3:
        raise ValueError("need at least 3 samples")
    X = spec.director()
    dX = (X[2:] - X[:-2]) / (2.0 * base.step)
    mats = np.stack([base.T[1:-1], X[1:-1], dX], axis=-1)
    return float(np.max(np.abs(np.linalg.det(mats))))


# ---------------------------------------------------------------------------
# classification

def _safe_div(num, den):
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        out = np.asarray(num, dtype=float) / np.asarray(den, dtype=float)
    return np.where(np.isfinite(out), out, np.inf)


def _bertrand_verdict(s, kappa, tau, euler, kappa_fit, tau_fit, tol):
    design = np.column_stack([kappa, tau])
    (A, B), *_ = np.linalg.lstsq(design, np.ones_like(kappa), rcond=None)
    note = ""
    if euler.ok:
        try:
            A, B = bertrand_coefficients(kappa_fit, tau_fit)
        except ProportionalProfilesError as exc:
            note = str(exc)
    resid = float(np.max(np.abs(A * kappa + B * tau - 1.0)))
    ok = resid <= tol
    if note and not ok:
        return Verdict(False, resid, (), note)
    return Verdict(ok, resid, (float(A), float(B)), note)


def classify(curve, tolerance=FIT_TOLERANCE):
    """Fit the curve's curvature and torsion against every family.

    Uses ``curve.kappa`` and ``curve.tau`` as given (integrated profile values
    or estimates).  The generalized-Euler verdict takes the best of the
    singular-vector fit and the explicit witnesses supplied by the euler,
    logarithmic and helix fits, so those implications hold whenever the
    witnesses' residuals are within tolerance.
    """
    if len(curve) < 5:
        raise ValueError("classification needs at least 5 samples")
    _require_curved(curve)
    s, kappa, tau = curve.s, curve.kappa, curve.tau
    tol = tolerance

    k_lin = fit_linear(s, kappa, tol)
    t_lin = fit_linear(s, tau, tol)
    inv_k = fit_linear(s, _safe_div(1.0, kappa), tol)
    inv_t = fit_linear(s, _safe_div(1.0, tau), tol)
    ratio = _safe_div(tau, kappa)
    ratio_const = fit_constant(s, ratio, tol)
    ratio_lin = fit_linear(s, ratio, tol)
    try:
        projective = fit_ratio_rational_linear(s, kappa, tau, tol)
    except DegenerateError:
        projective = None

    tau_max = float(np.max(np.abs(tau)))
    planar = Verdict(
        k_lin.ok and tau_max <= tol, max(k_lin.residual, tau_max), k_lin.coefficients
    )
    euler = Verdict(
        k_lin.ok and t_lin.ok, max(k_lin.residual, t_lin.residual),
        k_lin.coefficients + t_lin.coefficients,
    )
    log = Verdict(
        inv_k.ok and inv_t.ok, max(inv_k.residual, inv_t.residual),
        inv_k.coefficients + inv_t.coefficients,
    )
    helix = Verdict(ratio_const.ok, ratio_const.residual, ratio_const.coefficients)
    slope = ratio_lin.coefficients[0]
    rect = Verdict(
        ratio_lin.ok and math.isfinite(slope) and abs(slope) > tol,
        ratio_lin.residual, ratio_lin.coefficients,
        "" if not ratio_lin.ok or abs(slope) > tol else "zero slope (helix)",
    )

    # witnesses (a, b, c, d) for kappa (c s + d) = tau (a s + b)
    witnesses = []
    if projective is not None:
        witnesses.append(("singular-vector fit", projective.coefficients))
    if euler.ok:
        c1, c2 = k_lin.coefficients
        d1, d2 = t_lin.coefficients
        witnesses.append(("euler", (c1, c2, d1, d2)))
    if log.ok:
        a1, b1 = inv_k.coefficients
        a2, b2 = inv_t.coefficients
        witnesses.append(("logarithmic", (a2, b2, a1, b1)))
    if helix.ok:
        (lam,) = ratio_const.coefficients
        witnesses.append(("helix", (0.0, 1.0, 0.0, lam)))
    best_name, best_coef, best_resid = "", (math.nan,) * 4, math.inf
    for name, coef in witnesses:
        r = ratio_residual(s, kappa, tau, coef)
        if r < best_resid:
            norm = float(np.linalg.norm(coef))
            best_name, best_coef, best_resid = name, tuple(float(c) / norm for c in coef), r
    gen = Verdict(best_resid <= tol, best_resid, best_coef, f"witness: {best_name}" if best_name else "")

    bert = _bertrand_verdict(s, kappa, tau, euler, k_lin, t_lin, tol)

    fits = {
        "kappa_linear": k_lin,
        "tau_linear": t_lin,
        "inv_kappa_linear": inv_k,
        "inv_tau_linear": inv_t,
        "tau_over_kappa_constant": ratio_const,
        "tau_over_kappa_linear": ratio_lin,
    }
    if projective is not None:
        fits["ratio_rational_linear"] = projective

    return ClassificationReport(
        tolerance=tol,
        n_samples=len(curve),
        planar_cornu=planar,
        euler=euler,
        logarithmic=log,
        generalized_euler=gen,
        helix=helix,
        rectifying=rect,
        bertrand=bert,
        fits=fits,
    )
