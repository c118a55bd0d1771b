"""Linear algebra of Minkowski 3-space with signature (+, +, -).

Vectors are plain numpy arrays whose last axis has length 3; every function
broadcasts over leading axes.  The third coordinate is the timelike one.
"""

import enum

import numpy as np

from .errors import CausalityError, FrameDegeneracyError, NullCaseError

METRIC = np.diag([1.0, 1.0, -1.0])

EPS_CAUSAL = 1e-10
DRIFT_TOLERANCE = 1e-2


def lvec(x, y, z):
    v = np.array([x, y, z], dtype=float)
    if not np.all(np.isfinite(v)):
        raise ValueError(f"non-finite vector component in {v}")
    return v


E1 = lvec(1, 0, 0)
E2 = lvec(0, 1, 0)
E3 = lvec(0, 0, 1)


class CausalCharacter(enum.Enum):
    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"
    LIGHTLIKE = "lightlike"

    @property
    def sign(self):
        """Sign of <v, v> for a unit vector of this character (0 for lightlike)."""
        return {"spacelike": 1, "timelike": -1, "lightlike": 0}[self.value]


class CurveCase(enum.Enum):
    """Causal type of a non-null curve and its principal normal.

    ``signs`` gives <T,T>, <N,N>, <B,B> for an orthonormal Frenet frame.
    ``epsilon`` is -1 for timelike curves and +1 for spacelike ones.
    """

    TIMELIKE = "timelike"
    SPACELIKE_SPACELIKE_NORMAL = "spacelike-spacelike-normal"
    SPACELIKE_TIMELIKE_NORMAL = "spacelike-timelike-normal"

    @property
    def epsilon(self):
        return -1 if self is CurveCase.TIMELIKE else 1

    @property
    def signs(self):
        return _CASE_SIGNS[self]

    @classmethod
    def from_name(cls, name):
        key = name.strip().lower().replace("_", "-")
        if key in ("lightlike", "null", "spacelike-lightlike-normal", "spacelike-null-normal"):
            raise NullCaseError(
                "curves with a lightlike principal normal have no curvature; case not supported"
            )
        aliases = {
            "spacelike-1": cls.SPACELIKE_SPACELIKE_NORMAL,
            "spacelike-2": cls.SPACELIKE_TIMELIKE_NORMAL,
        }
        if key in aliases:
            return aliases[key]
        try:
            return cls(key)
        except ValueError:
            choices = ", ".join(c.value for c in cls)
            raise ValueError(f"unknown curve case {name!r}; expected one of {choices}") from None

    @classmethod
    def from_characters(cls, tangent, normal):
        if tangent is CausalCharacter.TIMELIKE and normal is CausalCharacter.SPACELIKE:
            return cls.TIMELIKE
        if tangent is CausalCharacter.SPACELIKE:
            if normal is CausalCharacter.SPACELIKE:
                return cls.SPACELIKE_SPACELIKE_NORMAL
            if normal is CausalCharacter.TIMELIKE:
                return cls.SPACELIKE_TIMELIKE_NORMAL
        if CausalCharacter.LIGHTLIKE in (tangent, normal):
            raise NullCaseError(f"lightlike {'tangent' if tangent is CausalCharacter.LIGHTLIKE else 'normal'}")
        raise CausalityError(f"no Frenet case with {tangent.value} tangent and {normal.value} normal")


_CASE_SIGNS = {
    CurveCase.TIMELIKE: (-1, 1, 1),
    CurveCase.SPACELIKE_SPACELIKE_NORMAL: (1, 1, -1),
    CurveCase.SPACELIKE_TIMELIKE_NORMAL: (1, -1, 1),
}


def lorentz_dot(u, v):
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return u[..., 0] * v[..., 0] + u[..., 1] * v[..., 1] - u[..., 2] * v[..., 2]


def lorentz_cross(u, v):
    """Lorentzian cross product.

    Returns the vector w with ``lorentz_dot(w, c) == det[u, v, c]`` for every c.
    The Euclidean cross product e satisfies ``e . c == det[u, v, c]``, so w is e
    with its timelike component negated.
    """
    w = np.cross(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
    w[..., 2] = -w[..., 2]
    return w


def lorentz_norm_sq(v):
    return lorentz_dot(v, v)


def causal_character(v, eps_causal=EPS_CAUSAL):
    v = np.asarray(v, dtype=float)
    euclid = float(np.dot(v, v))
    if euclid == 0.0:
        raise CausalityError("undefined causal character of the zero vector")
    q = float(lorentz_dot(v, v))
    if q < -eps_causal * euclid:
        return CausalCharacter.TIMELIKE
    if q > eps_causal * euclid:
        return CausalCharacter.SPACELIKE
    return CausalCharacter.LIGHTLIKE


def lorentz_normalize(v, eps_causal=EPS_CAUSAL):
    v = np.asarray(v, dtype=float)
    if causal_character(v, eps_causal) is CausalCharacter.LIGHTLIKE:
        raise CausalityError(f"cannot normalize lightlike vector {v}")
    return v / np.sqrt(abs(lorentz_dot(v, v)))


def frame_gram(T, N, B):
    """3x3 matrix of pairwise Lorentz products of the frame vectors."""
    vs = (T, N, B)
    return np.array([[lorentz_dot(a, b) for b in vs] for a in vs])


def frame_defect(T, N, B, case):
    """Largest deviation of the frame's Gram matrix from diag(case.signs)."""
    return float(np.max(np.abs(frame_gram(T, N, B) - np.diag(case.signs))))


def reorthonormalize(T, N, B, case, drift_tolerance=DRIFT_TOLERANCE):
    """Project a slightly drifted frame back onto an orthonormal frame of ``case``.

    Gram-Schmidt under the Lorentz product: T is rescaled, N is stripped of its
    T component and rescaled, and B is recomputed as ``T x N``.  With the
    printed Frenet matrices ``B = T x N`` holds with a plus sign in all three
    cases, so no extra sign is applied.

    Raises FrameDegeneracyError when the input is further than
    ``drift_tolerance`` from orthonormal or a projected vector has the wrong
    causal character.
    """
    T = np.asarray(T, dtype=float)
    N = np.asarray(N, dtype=float)
    B = np.asarray(B, dtype=float)
    defect = frame_defect(T, N, B, case)
    if not np.isfinite(defect) or defect > drift_tolerance:
        raise FrameDegeneracyError(
            f"frame defect {defect:.3g} exceeds drift tolerance {drift_tolerance:g}"
        )
    s_t, s_n, _ = case.signs

    tt = lorentz_dot(T, T)
    if tt * s_t <= 0:
        raise FrameDegeneracyError("tangent lost its causal character")
    T = T / np.sqrt(abs(tt))

    N = N - s_t * lorentz_dot(N, T) * T
    nn = lorentz_dot(N, N)
    if nn * s_n <= 0:
        raise FrameDegeneracyError("normal lost its causal character")
    N = N / np.sqrt(abs(nn))

    B_new = lorentz_cross(T, N)
    if lorentz_dot(B, B_new) * case.signs[2] < 0.5:
        raise FrameDegeneracyError("binormal is not oriented as T x N")
    return T, N, B_new
