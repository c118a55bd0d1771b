"""Euler, logarithmic and generalized Euler spirals in Minkowski 3-space.

Curves are generated from curvature/torsion profiles (planar turning-angle
quadrature or Frenet integration), re-estimated from their points, and
classified into spiral families.  Offset curves, Darboux and U fields and
ruled surfaces built on a curve are checked numerically.
"""

from .characterizations import (
    ClassificationReport,
    OffsetCurve,
    RuledSurfaceSpec,
    Verdict,
    bertrand_coefficients,
    bertrand_mate,
    bertrand_offset,
    classify,
    darboux_curve,
    developability_residual,
    expected_normal_component,
    involute_normal_component,
    involute_offset_curve,
    normal_line_angles,
    parallel_to_normal_residual,
    u_curve,
)
from .curve import FrenetFrame, SampledCurve
from .errors import SpiralError
from .estimators import EstimatedData, estimate
from .expr import parse_profile, to_text
from .frenet import default_initial_frame, frenet_rhs, integrate
from .lorentz import (
    CausalCharacter,
    CurveCase,
    causal_character,
    lorentz_cross,
    lorentz_dot,
    lorentz_normalize,
    lvec,
    reorthonormalize,
)
from .planar import (
    PlanarKind,
    PlanarSpiralSpec,
    generate_spacelike_planar,
    generate_timelike_planar,
    turning_angle,
)
from .profiles import (
    CanonicalForm,
    FitResult,
    canonicalize,
    eval_profile,
    fit_linear,
    fit_ratio_rational_linear,
)

__version__ = "0.1.0"
