"""Exception types shared across the package."""


class ParameterError(ValueError):
    """Invalid or infeasible construction parameters."""


class DisconnectedGraphError(RuntimeError):
    """Raised when an oracle needs a connected input and does not get one."""


class NoPathError(LookupError):
    """Target is unreachable from the source."""


class NotInPairsError(KeyError):
    """Query pair is not covered by a partial (pair-set) oracle."""


class GraphFormatError(ValueError):
    """Malformed graph, pair or spanner file."""
