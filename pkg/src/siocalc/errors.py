"""Exception types shared across the package."""


class SioError(Exception):
    """Base class for all siocalc errors."""


class InvalidCurveError(SioError):
    """Curve is degenerate (zero length, too few samples, ...)."""


class PointOffCurveError(SioError):
    """A query point does not lie on the curve within tolerance."""


class HypothesisViolatedError(SioError):
    """A boundedness/space hypothesis required by the operation fails,
    so the criterion is not applicable."""


class NumericFailureError(SioError):
    """An iterative numeric procedure failed to converge.  May carry a
    diagnostic report in ``args[1]``."""


class AlignmentError(SioError):
    """Two sampled functions do not share a node set."""


class SingularSymbolError(SioError):
    """Attempt to invert a symbol that is singular somewhere."""


class DegenerateSymbolError(SioError):
    """A one-sided limit (or the symbol itself) vanishes where the
    criterion requires it to be nonzero."""


class UnsupportedEntryError(SioError):
    """An operator-matrix entry is not affine in P, Q, I."""


class InsufficientTruncationError(SioError):
    """The Fourier window is too small for the requested mode margin."""


class SceneError(SioError):
    """Malformed scene document."""
