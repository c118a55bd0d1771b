"""Fixed-step integration of the Lorentzian Frenet equations.

The three non-null cases use these derivative matrices acting on (T, N, B)::

    timelike                     spacelike, N spacelike      spacelike, N timelike
    [ 0    kappa  0  ]           [ 0     kappa  0 ]          [ 0     kappa  0 ]
    [ kappa  0   tau ]           [-kappa  0    tau]          [ kappa  0    tau]
    [ 0   -tau    0  ]           [ 0     tau    0 ]          [ 0     tau    0 ]

The torsion value is used exactly as the profile evaluates; no per-case sign
flip is applied.
"""

import numpy as np

from .curve import FrenetFrame, SampledCurve
from .errors import FrameDegeneracyError, GridError
from .expr import eval_profile
from .lorentz import DRIFT_TOLERANCE, E1, E2, E3, CurveCase, lorentz_cross, reorthonormalize

# (coefficient of kappa*T in N', coefficient of tau*N in B')
_MATRIX_SIGNS = {
    CurveCase.TIMELIKE: (1.0, -1.0),
    CurveCase.SPACELIKE_SPACELIKE_NORMAL: (-1.0, 1.0),
    CurveCase.SPACELIKE_TIMELIKE_NORMAL: (1.0, 1.0),
}


def frenet_matrix(case, kappa, tau):
    sigma, rho = _MATRIX_SIGNS[case]
    return np.array([
        [0.0, kappa, 0.0],
        [sigma * kappa, 0.0, tau],
        [0.0, rho * tau, 0.0],
    ])


def frenet_rhs(frame, kappa, tau):
    """Derivatives (T', N', B') of a frame for the given curvature and torsion."""
    sigma, rho = _MATRIX_SIGNS[frame.case]
    T, N, B = frame.T, frame.N, frame.B
    return kappa * N, sigma * kappa * T + tau * B, rho * tau * N


def default_initial_frame(case):
    """Canonical frame built from the coordinate axes.

    timelike: T = e3, N = e1, B = T x N = e2.
    spacelike with spacelike normal: T = e1, N = e2, B = T x N = -e3.
    spacelike with timelike normal: T = e1, N = e3, B = T x N = -e2.
    """
    T, N = {
        CurveCase.TIMELIKE: (E3, E1),
        CurveCase.SPACELIKE_SPACELIKE_NORMAL: (E1, E2),
        CurveCase.SPACELIKE_TIMELIKE_NORMAL: (E1, E3),
    }[case]
    return FrenetFrame(T.copy(), N.copy(), lorentz_cross(T, N), case)


def arc_length_grid(s0, s1, step):
    """Uniform grid from s0 to s1 whose spacing is ``step`` (must divide the interval)."""
    if not step > 0:
        raise GridError("step must be positive")
    if not s1 > s0:
        raise GridError("need s0 < s1")
    length = s1 - s0
    n = int(round(length / step))
    if n < 1 or abs(n * step - length) > 1e-6 * step:
        raise GridError(f"step {step!r} does not divide the interval [{s0!r}, {s1!r}]")
    s = s0 + np.arange(n + 1) * (length / n)
    s[-1] = s1
    return s


def _state_rhs(state, kappa, tau, sigma, rho):
    _, T, N, B = state
    return np.array([T, kappa * N, sigma * kappa * T + tau * B, rho * tau * N])


def integrate(case, kappa, tau, start=None, frame0=None, s0=0.0, s1=1.0, step=1e-3,
              drift_tolerance=DRIFT_TOLERANCE):
    """Integrate point and frame with classical RK4 on a uniform arc-length grid.

    ``kappa`` and ``tau`` are profile ASTs.  The frame is re-orthonormalized
    after every step.  Every grid point, endpoints included, is recorded.
    """
    if isinstance(case, str):
        case = CurveCase.from_name(case)
    if frame0 is None:
        frame0 = default_initial_frame(case)
    if frame0.case is not case:
        raise ValueError(f"initial frame is for {frame0.case.value}, not {case.value}")
    if frame0.defect() > 1e-9:
        raise FrameDegeneracyError(f"initial frame is not orthonormal (defect {frame0.defect():.3g})")
    start = np.zeros(3) if start is None else np.asarray(start, dtype=float)

    s = arc_length_grid(s0, s1, step)
    h = s[1] - s[0]
    mids = s[:-1] + 0.5 * h
    k_nodes = eval_profile(kappa, s)
    t_nodes = eval_profile(tau, s)
    k_mids = eval_profile(kappa, mids)
    t_mids = eval_profile(tau, mids)

    sigma, rho = _MATRIX_SIGNS[case]
    n = s.size
    out = np.empty((n, 4, 3))
    state = np.array([start, frame0.T, frame0.N, frame0.B], dtype=float)
    out[0] = state
    for i in range(n - 1):
        k1 = _state_rhs(state, k_nodes[i], t_nodes[i], sigma, rho)
        k2 = _state_rhs(state + 0.5 * h * k1, k_mids[i], t_mids[i], sigma, rho)
        k3 = _state_rhs(state + 0.5 * h * k2, k_mids[i], t_mids[i], sigma, rho)
        k4 = _state_rhs(state + h * k3, k_nodes[i + 1], t_nodes[i + 1], sigma, rho)
        state = state + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        try:
            state[1], state[2], state[3] = reorthonormalize(
                state[1], state[2], state[3], case, drift_tolerance
            )
        except FrameDegeneracyError as exc:
            raise FrameDegeneracyError(f"{exc} at s={s[i + 1]!r}") from None
        out[i + 1] = state

    return SampledCurve(
        case=case,
        s=s,
        points=out[:, 0],
        T=out[:, 1],
        N=out[:, 2],
        B=out[:, 3],
        kappa=k_nodes,
        tau=t_nodes,
        step=h,
    )
