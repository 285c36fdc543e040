"""Exception types shared across the library."""


class ScaleDynError(ValueError):
    """Base class for all scaledyn domain errors."""


class NotInTimeScaleError(ScaleDynError):
    """A time point was queried that is not a member of the time-scale."""


class TooFewPointsError(ScaleDynError):
    """The time-scale does not carry enough points for the requested operation."""


class RefinementKindError(ScaleDynError):
    """An operation requiring a specific refinement arity (dyadic/triadic) received another."""


class PatternExhaustedError(ScaleDynError):
    """The requested depth exceeds the total count of a finite complexity pattern."""


class InsufficientDataError(ScaleDynError):
    """A finite observation window is too short for the requested horizon."""
