"""Exception types shared across the package."""


class CircleDynError(Exception):
    """Base class for all circledyn errors."""


class NonMonotoneLift(CircleDynError):
    """A candidate lift failed the strict-monotonicity certificate."""


class RootNotBracketed(CircleDynError):
    """Monotone-lift bracketing failed; the covering map is invalid."""


class DepthExceeded(CircleDynError):
    """A depth/degree resource bound was exceeded."""


class OutOfDomain(CircleDynError):
    """Chart input outside the interval / unit-interval domain."""


class InvalidElement(CircleDynError):
    """Operation applied to an element that fails validation."""


class NeighborhoodTooSmall(CircleDynError):
    """Local-power construction could not keep the orbit inside its charts."""


class NotExceptional(CircleDynError):
    """Operation requires an exceptional (non-minimal) map."""


class NoNiceIntervalFound(CircleDynError):
    """No nice interval within the requested size budget."""


class ChainNotDisjoint(CircleDynError):
    """Distortion chain has overlapping arcs."""


class BudgetExceeded(CircleDynError):
    """Node/iteration budget exhausted before the computation finished."""
