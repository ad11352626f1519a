"""Exception hierarchy for curvdec."""


class CurvdecError(Exception):
    """Base class for all curvdec errors."""


class DimensionTooSmall(CurvdecError):
    """Scalar products and curvature tensors require dimension n >= 3."""


class NotSymmetric(CurvdecError):
    """A matrix expected to be symmetric is not, beyond tolerance."""


class DegenerateMetric(CurvdecError):
    """A scalar product matrix has an eigenvalue too close to zero."""


class DimensionMismatch(CurvdecError):
    """Operands carry inconsistent dimensions."""


class UnknownSpace(CurvdecError):
    """Unrecognized curvature-space tag."""


class NotGeneralizedCurvature(CurvdecError):
    """Input fails the antisymmetry/first-Bianchi residual test."""


class NotAlgebraic(CurvdecError):
    """Input fails the last-pair antisymmetry residual test."""


class FormSymmetryViolation(CurvdecError):
    """A bilinear form fails its required (anti)symmetry."""


class EmptySpace(CurvdecError):
    """The requested subspace is zero-dimensional at this dimension."""


class InconclusiveRank(CurvdecError):
    """Singular-value gap too small to call a numerical rank."""


class SchemaError(CurvdecError):
    """Malformed input document; carries the offending path."""

    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}")


class LengthMismatch(SchemaError):
    """Array length inconsistent with the declared dimension."""


class DegenerateAtPoint(CurvdecError):
    """Chart metric is degenerate at the requested evaluation point."""
