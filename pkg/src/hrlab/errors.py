"""Exception types raised by hrlab."""


class HRLabError(ValueError):
    """Base class for all hrlab input errors."""


class DimensionError(HRLabError):
    """Ambient dimensions or bidegrees of two operands do not match."""


class DegreeError(HRLabError):
    """A form has the wrong bidegree for the requested operation."""


class NotKahlerError(HRLabError):
    """A reference form is not positive definite."""


class RangeError(HRLabError):
    """An integer parameter (k, m, ...) is outside its admissible range."""


class ConstraintError(HRLabError):
    """Instance data violates 0 <= p, q and p + q <= m <= n, or has the wrong number of forms."""


class HypothesisError(HRLabError):
    """A polarization is not semipositive with at least m positive eigenvalues."""
