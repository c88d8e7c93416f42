"""Exception types shared across the package."""


class CobordiaError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(CobordiaError):
    """Matrix or vector shapes are incompatible."""


class NotDivisible(CobordiaError):
    """Exact division failed; usually a sign or precision bug upstream."""


class PrecisionExhausted(CobordiaError):
    """A series no longer carries enough valid precision for the request."""


class GramNotUnimodular(CobordiaError):
    """The pairing matrix is not invertible over the coefficient ring."""


class NotInSpan(CobordiaError):
    """A class is not a coefficient-linear combination of the basis."""


class HypothesisFailed(CobordiaError):
    """A stated precondition on the input group does not hold."""


class ConventionError(CobordiaError):
    """An operator convention failed its pinning invariant."""


class FGLFileError(CobordiaError):
    """A formal group law coefficient file is malformed."""


class CacheError(CobordiaError):
    """A cached artifact is corrupt or incompatible."""
