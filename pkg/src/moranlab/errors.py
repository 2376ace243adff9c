"""Exception taxonomy shared across the toolkit.

Exit codes follow the CLI contract: 0 success, 2 parameter error,
3 structure/conditioning error, 4 capacity error.
"""


class MoranLabError(Exception):
    """Base class for all toolkit errors."""

    exit_code = 2


class ParameterError(MoranLabError):
    """An argument is outside its documented domain."""

    exit_code = 2


class DomainError(ParameterError):
    """A numeric input violates the domain a closed form requires."""


class SpecificationError(ParameterError):
    """A walk specification has invalid coefficients (escapes [0,1] or rows do not sum to 1)."""


class StateError(MoranLabError):
    """An operation was invoked on a state it does not accept (e.g. stepping an absorbed process)."""

    exit_code = 2


class StructureError(MoranLabError):
    """The graph lacks structure an operation requires (e.g. connectivity)."""

    exit_code = 3


class ConditioningError(StructureError):
    """A rejection-sampling conditioning event could not be satisfied within the retry budget."""

    exit_code = 3


class CapacityError(MoranLabError):
    """The instance exceeds a hard resource cap (e.g. exact-solver vertex limit)."""

    exit_code = 4
