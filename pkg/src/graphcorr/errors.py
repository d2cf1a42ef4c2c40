"""Exception hierarchy shared by the library and the CLI.

The CLI maps these onto exit codes: invalid parameters exit with 2,
infeasible searches (budget or combinatorial exhaustion) with 3, and
file/data problems with 4.
"""


class GraphCorrError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class InvalidParameterError(GraphCorrError, ValueError):
    """An argument violates an operation's precondition."""

    exit_code = 2


class InvalidMappingError(InvalidParameterError):
    """A partial injection references vertices outside its graphs."""


class SampleTooSmallError(InvalidParameterError):
    """The sampled subgraphs are too small for a meaningful mapping size."""


class InfeasibleError(GraphCorrError):
    """The requested search exceeds its budget or cannot be satisfied."""

    exit_code = 3


class DataFormatError(GraphCorrError, ValueError):
    """An input file is malformed or internally inconsistent."""

    exit_code = 4
