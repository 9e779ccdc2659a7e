"""Domain errors.

Everything derives from ``ValueError`` through ``GaleError`` so callers that
already guard configuration faults with ``except ValueError`` keep working.
"""


class GaleError(ValueError):
    """Base class of every domain error raised by the toolkit."""


class NonStochasticBetsError(GaleError):
    """A bet row has a negative entry or does not sum to exactly 1."""


class MaskWidthMismatchError(GaleError):
    """A transition emitted a move mask whose width is not heads - 1."""


class TotalityUnknownError(GaleError):
    """Reachable-state enumeration exceeded the configured cap."""


class TransitionUndefinedError(GaleError):
    """No transition row matches a (state, observation) pair."""


class SpecFormatError(GaleError):
    """A gambler spec file does not follow the documented grammar."""


class IndexOverflowError(GaleError):
    """An index or boundary does not fit the 64-bit index width, or lies past a finite sequence."""


class ZeroArgumentError(GaleError):
    """A valuation was requested for n = 0."""


class EmptyScheduleError(GaleError):
    """A checkpoint schedule expanded to no checkpoints."""


class DriftExceededError(GaleError):
    """Log-domain capital drifted from the exact rational capital beyond tolerance."""


class ScheduleInfeasibleError(GaleError):
    """The tracking oracle refutes every candidate movement schedule."""


class TraceTooShortError(GaleError):
    """A trace does not cover the step an index-set computation needs."""
