"""Shared exception types."""


class StreamsubError(Exception):
    """Base class for library errors."""


class InvalidParams(StreamsubError, ValueError):
    """Instance or algorithm parameters violate a documented precondition."""


class GroundSetTooLarge(StreamsubError, ValueError):
    """Exhaustive enumeration was requested beyond the configured limit."""


class PolicyViolation(StreamsubError, RuntimeError):
    """A value query was refused by the active access policy."""

    def __init__(self, subset, reason):
        super().__init__(f"query on {sorted(subset)} refused: {reason}")
        self.subset = frozenset(subset)
        self.reason = reason


class NotIndependent(StreamsubError, ValueError):
    """An operation required an independent set but received a dependent one."""


class IncompatibleDistribution(StreamsubError, ValueError):
    """Requested stream distribution does not apply to this instance kind."""


class WrongRank(StreamsubError, ValueError):
    """A closed form was requested for a rank it is not defined for."""
