"""Frenet frames and arc-length sampled curves."""

from dataclasses import dataclass

import numpy as np

from .errors import GridError
from .lorentz import CurveCase, frame_defect, lorentz_cross

GRID_TOLERANCE = 1e-12


@dataclass(frozen=True)
class FrenetFrame:
    T: np.ndarray
    N: np.ndarray
    B: np.ndarray
    case: CurveCase

    def defect(self):
        """Largest deviation of the pairwise products from the case's signature."""
        return frame_defect(self.T, self.N, self.B, self.case)

    def is_valid(self, tol=1e-9):
        return self.defect() <= tol

    def vectors(self):
        return self.T, self.N, self.B


def check_uniform_grid(s, tol=GRID_TOLERANCE):
    """Return the step of a strictly increasing uniform grid, or raise GridError."""
    s = np.asarray(s, dtype=float)
    if s.ndim != 1 or s.size < 2:
        raise GridError("need at least two samples on a one-dimensional grid")
    ds = np.diff(s)
    if np.any(ds <= 0):
        raise GridError("arc length must be strictly increasing")
    step = (s[-1] - s[0]) / (s.size - 1)
    scale = max(1.0, float(np.max(np.abs(s))))
    if np.max(np.abs(ds - step)) > tol * scale:
        raise GridError(f"grid is not uniform (max step deviation {np.max(np.abs(ds - step)):.3g})")
    return float(step)


@dataclass
class SampledCurve:
    """Samples of a curve, its Frenet frame and its curvature data on a uniform grid.

    Arrays: ``s`` (n,), ``points``/``T``/``N``/``B`` (n, 3), ``kappa``/``tau`` (n,).
    For generated curves ``s`` is arc length; offset curves keep their base
    curve's parameter.
    """

    case: CurveCase
    s: np.ndarray
    points: np.ndarray
    T: np.ndarray
    N: np.ndarray
    B: np.ndarray
    kappa: np.ndarray
    tau: np.ndarray
    step: float = None

    def __post_init__(self):
        self.s = np.asarray(self.s, dtype=float)
        n = self.s.size
        for name in ("points", "T", "N", "B"):
            arr = np.asarray(getattr(self, name), dtype=float)
            if arr.shape != (n, 3):
                raise ValueError(f"{name} must have shape ({n}, 3), got {arr.shape}")
            setattr(self, name, arr)
        for name in ("kappa", "tau"):
            arr = np.asarray(getattr(self, name), dtype=float)
            if arr.shape != (n,):
                raise ValueError(f"{name} must have shape ({n},), got {arr.shape}")
            setattr(self, name, arr)
        if n == 0:
            raise ValueError("a sampled curve needs at least one sample")
        if n > 1:
            step = check_uniform_grid(self.s)
            if self.step is None:
                self.step = step
            elif abs(self.step - step) > GRID_TOLERANCE * max(1.0, abs(step)) * n:
                raise GridError(f"declared step {self.step!r} disagrees with grid step {step!r}")
        elif self.step is None:
            self.step = 0.0

    def __len__(self):
        return self.s.size

    def frame(self, i):
        return FrenetFrame(self.T[i], self.N[i], self.B[i], self.case)

    def samples(self):
        """Iterate over per-sample records as dicts."""
        for i in range(len(self)):
            yield {
                "s": self.s[i],
                "point": self.points[i],
                "frame": self.frame(i),
                "kappa": self.kappa[i],
                "tau": self.tau[i],
            }

    def frame_defects(self):
        """Per-sample max deviation of the Gram matrix from the case signature."""
        signs = np.array(self.case.signs, dtype=float)
        vs = (self.T, self.N, self.B)
        worst = np.zeros(len(self))
        for i in range(3):
            for j in range(3):
                g = np.einsum("ij,ij->i", vs[i] * [1.0, 1.0, -1.0], vs[j])
                target = signs[i] if i == j else 0.0
                worst = np.maximum(worst, np.abs(g - target))
        return worst

    def binormal_defect(self):
        """max |B - T x N| over the samples."""
        return float(np.max(np.abs(self.B - lorentz_cross(self.T, self.N))))

    def slice(self, start, stop):
        sl = slice(start, stop)
        return SampledCurve(
            self.case, self.s[sl], self.points[sl], self.T[sl], self.N[sl], self.B[sl],
            self.kappa[sl], self.tau[sl], self.step,
        )
