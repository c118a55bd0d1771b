"""Exception hierarchy.

Everything raised on purpose by this package derives from :class:`SpiralError`.
Syntax and format problems are also ``ValueError``; the CLI maps them to exit
code 2 and every other :class:`SpiralError` to exit code 3.
"""


class SpiralError(Exception):
    """Base class for all package errors."""


class UsageError(SpiralError, ValueError):
    """Malformed input: bad profile text, bad file, bad flag combination."""


class ProfileSyntaxError(UsageError):
    """Profile text does not match the grammar.

    ``offset`` is the byte offset of the offending token in the input.
    """

    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class UnknownIdentifierError(ProfileSyntaxError):
    pass


class CurveFormatError(UsageError):
    """A curve file violates the CurveFileV1 schema."""


class NumericError(SpiralError):
    """A computation failed for numerical or mathematical reasons."""


class ProfileDomainError(NumericError):
    """Profile evaluated outside its domain (pole, log of a nonpositive value, overflow)."""

    def __init__(self, message, expr, s):
        super().__init__(f"{message} in '{expr}' at s={s!r}")
        self.expr = expr
        self.s = s


class QuadratureError(NumericError):
    def __init__(self, message, point):
        super().__init__(f"{message} near s={point!r}")
        self.point = point


class CausalityError(NumericError):
    """Zero or lightlike vector where a non-null one is required."""


class NullCaseError(CausalityError):
    """Lightlike principal normal: curvature is not defined for this case."""


class FrameDegeneracyError(NumericError):
    """Frame drifted too far from orthonormal to be repaired."""


class GridError(NumericError):
    """Samples are not on a uniform, strictly increasing grid."""


class StraightSegmentError(NumericError):
    """Curvature vanishes so the normal and torsion are undefined."""


class ProportionalProfilesError(NumericError):
    """Linear curvature and torsion are proportional; Bertrand coefficients are not unique."""


class DegenerateError(NumericError):
    """Input makes the requested quantity vacuous (all-zero rows, vanishing differences)."""
