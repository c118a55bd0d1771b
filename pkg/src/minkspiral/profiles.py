"""Canonical forms and least-squares fits for curvature/torsion profiles.

The families of interest are constant, linear ``a*s + b`` and
reciprocal-linear ``1/(a*s + b)`` functions of arc length, plus the
rational-linear relation ``kappa/tau = (a*s + b)/(c*s + d)`` between two
sampled profiles.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import DegenerateError, NumericError
from .expr import BinOp, Call, Expr, Neg, Num, Var, const, eval_profile, is_constant, parse_profile, to_text

__all__ = [
    "CanonicalForm",
    "FitResult",
    "canonicalize",
    "eval_profile",
    "fit_constant",
    "fit_linear",
    "fit_ratio_rational_linear",
    "linear_profile",
    "parse_profile",
    "ratio_at",
    "ratio_residual",
    "reciprocal_linear_profile",
    "to_text",
]

FIT_TOLERANCE = 1e-6
PROBE_TOLERANCE = 1e-9
PROBE_POINTS = (0.1127, 0.4383, 0.8190, 1.3571, 1.9034)


@dataclass(frozen=True)
class CanonicalForm:
    """One of ``constant``, ``linear``, ``reciprocal_linear`` or ``other``.

    Coefficients: ``(c,)`` for constant, ``(a, b)`` for the two linear kinds,
    empty for ``other``.
    """

    tag: str
    coefficients: tuple = ()

    def __call__(self, s):
        s = np.asarray(s, dtype=float)
        if self.tag == "constant":
            return np.full(s.shape, self.coefficients[0])[()]
        if self.tag == "linear":
            a, b = self.coefficients
            return a * s + b
        if self.tag == "reciprocal_linear":
            a, b = self.coefficients
            return 1.0 / (a * s + b)
        raise ValueError("an 'other' profile has no closed form")


@dataclass(frozen=True)
class FitResult:
    coefficients: tuple
    residual: float
    ok: bool
    tolerance: float = FIT_TOLERANCE


def linear_profile(a, b):
    """AST for ``a*s + b`` with literals kept nonnegative."""
    if b == 0:
        return BinOp("*", const(a), Var())
    return BinOp("+", BinOp("*", const(a), Var()), const(b))


def reciprocal_linear_profile(a, b):
    return BinOp("/", Num(1.0), linear_profile(a, b))


# ---------------------------------------------------------------------------
# structural recognition

def _affine(node):
    """(a, b) if ``node`` is affine in s, else None."""
    if isinstance(node, Var):
        return 1.0, 0.0
    if is_constant(node):
        try:
            return 0.0, eval_profile(node, 0.0)
        except NumericError:
            return None
    if isinstance(node, Neg):
        inner = _affine(node.operand)
        return None if inner is None else (-inner[0], -inner[1])
    if isinstance(node, Call):
        return None
    left = _affine(node.left)
    right = _affine(node.right)
    if left is None or right is None:
        return None
    (la, lb), (ra, rb) = left, right
    if node.op == "+":
        return la + ra, lb + rb
    if node.op == "-":
        return la - ra, lb - rb
    if node.op == "*":
        if la == 0:
            return lb * ra, lb * rb
        if ra == 0:
            return la * rb, lb * rb
        return None
    if ra == 0 and rb != 0:
        return la / rb, lb / rb
    return None


def _reciprocal(node):
    """(a, b) if ``node`` is structurally ``1/(a*s + b)`` up to constant factors."""
    if isinstance(node, Neg):
        inner = _reciprocal(node.operand)
        return None if inner is None else (-inner[0], -inner[1])
    if not isinstance(node, BinOp) or node.op not in "*/":
        return None
    left_const = is_constant(node.left)
    right_const = is_constant(node.right)
    if node.op == "/" and left_const and not right_const:
        k = _affine(node.left)
        den = _affine(node.right)
        if k is None or den is None or k[1] == 0 or den[0] == 0:
            return None
        return den[0] / k[1], den[1] / k[1]
    if node.op == "/" and right_const:
        inner = _reciprocal(node.left)
        k = _affine(node.right)
        if inner is None or k is None or k[1] == 0:
            return None
        return inner[0] * k[1], inner[1] * k[1]
    if node.op == "*" and (left_const or right_const):
        k = _affine(node.left if left_const else node.right)
        inner = _reciprocal(node.right if left_const else node.left)
        if inner is None or k is None or k[1] == 0:
            return None
        return inner[0] / k[1], inner[1] / k[1]
    return None


def canonicalize(p: Expr) -> CanonicalForm:
    """Detect whether ``p`` is constant, linear or reciprocal-linear in s.

    Structural recognition is tried first.  Failing that, the profile is
    evaluated at a handful of generic points and each family is fitted in
    turn; the first with residual at most 1e-9 wins.
    """
    aff = _affine(p)
    if aff is not None:
        a, b = aff
        return CanonicalForm("constant", (b,)) if a == 0 else CanonicalForm("linear", (a, b))
    rec = _reciprocal(p)
    if rec is not None:
        return CanonicalForm("reciprocal_linear", rec)

    s = np.array(PROBE_POINTS)
    try:
        v = eval_profile(p, s)
    except NumericError:
        return CanonicalForm("other")
    c = fit_constant(s, v, PROBE_TOLERANCE)
    if c.ok:
        return CanonicalForm("constant", c.coefficients)
    lin = fit_linear(s, v, PROBE_TOLERANCE)
    if lin.ok:
        return CanonicalForm("linear", lin.coefficients)
    if np.all(v != 0):
        inv = fit_linear(s, 1.0 / v, PROBE_TOLERANCE)
        if np.all(np.isfinite(inv.coefficients)):
            a, b = inv.coefficients
            with np.errstate(divide="ignore"):
                resid = float(np.max(np.abs(1.0 / (a * s + b) - v)))
            if resid <= PROBE_TOLERANCE:
                return CanonicalForm("reciprocal_linear", (a, b))
    return CanonicalForm("other")


# ---------------------------------------------------------------------------
# fits

def _prepare(s, values):
    s = np.asarray(s, dtype=float).ravel()
    values = np.asarray(values, dtype=float).ravel()
    if s.shape != values.shape:
        raise ValueError("s and values must have the same length")
    return s, values


def fit_constant(s, values, tolerance=FIT_TOLERANCE):
    s, values = _prepare(s, values)
    if values.size == 0:
        raise ValueError("no samples")
    if not np.all(np.isfinite(values)):
        return FitResult((math.nan,), math.inf, False, tolerance)
    c = float(np.mean(values))
    resid = float(np.max(np.abs(values - c)))
    return FitResult((c,), resid, resid <= tolerance, tolerance)


def fit_linear(s, values, tolerance=FIT_TOLERANCE):
    """Least-squares line through ``(s_i, v_i)``; residual is the max abs deviation."""
    s, values = _prepare(s, values)
    if s.size < 2 or np.all(s == s[0]):
        raise DegenerateError("linear fit needs at least two distinct s values")
    if not np.all(np.isfinite(values)):
        return FitResult((math.nan, math.nan), math.inf, False, tolerance)
    design = np.column_stack([s, np.ones_like(s)])
    (a, b), *_ = np.linalg.lstsq(design, values, rcond=None)
    resid = float(np.max(np.abs(a * s + b - values)))
    return FitResult((float(a), float(b)), resid, resid <= tolerance, tolerance)


def ratio_residual(s, kappa, tau, coefficients):
    """max |kappa*(c*s + d) - tau*(a*s + b)| for a unit-normalized (a, b, c, d)."""
    coef = np.asarray(coefficients, dtype=float)
    norm = np.linalg.norm(coef)
    if norm == 0 or not np.isfinite(norm):
        return math.inf
    a, b, c, d = coef / norm
    s, kappa = _prepare(s, kappa)
    tau = np.asarray(tau, dtype=float).ravel()
    with np.errstate(invalid="ignore", over="ignore"):
        r = np.abs(kappa * (c * s + d) - tau * (a * s + b))
    return float(np.max(r)) if np.all(np.isfinite(r)) else math.inf


def fit_ratio_rational_linear(s, kappa, tau, tolerance=FIT_TOLERANCE):
    """Fit ``kappa/tau = (a*s + b)/(c*s + d)`` in the cross-multiplied form.

    Solves ``kappa_i (c s_i + d) - tau_i (a s_i + b) = 0`` in the least-squares
    sense subject to ``a^2 + b^2 + c^2 + d^2 = 1``: the right singular vector
    of the smallest singular value.  The relation is projective in
    (a, b, c, d), so neither numerator nor denominator is privileged.
    """
    s, kappa = _prepare(s, kappa)
    tau = np.asarray(tau, dtype=float).ravel()
    if tau.shape != s.shape:
        raise ValueError("s, kappa and tau must have the same length")
    if s.size < 4:
        raise ValueError("ratio fit needs at least 4 samples")
    if not (np.all(np.isfinite(kappa)) and np.all(np.isfinite(tau))):
        return FitResult((math.nan,) * 4, math.inf, False, tolerance)
    rows = np.column_stack([-tau * s, -tau, kappa * s, kappa])
    if not np.any(rows):
        raise DegenerateError("ratio fit is degenerate: all rows are zero")
    _, _, vt = np.linalg.svd(rows)
    coef = vt[-1]
    # fix the overall sign for reproducible output
    if coef[np.argmax(np.abs(coef))] < 0:
        coef = -coef
    resid = float(np.max(np.abs(rows @ coef)))
    return FitResult(tuple(float(c) for c in coef), resid, resid <= tolerance, tolerance)


def ratio_at(coefficients, s):
    a, b, c, d = coefficients
    s = np.asarray(s, dtype=float)
    return (a * s + b) / (c * s + d)
