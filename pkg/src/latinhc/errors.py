"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes, so the split between a bad request
(:class:`ParameterError`), bad input data (:class:`DataError`) and an
exhausted budget (:class:`ResourceError`) matters.
"""


class LatinError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(LatinError, ValueError):
    """Arguments are outside an operation's domain."""


class DataError(LatinError, ValueError):
    """Input data is malformed or violates a stated precondition."""


class ConstructionError(DataError):
    """A construction's hypothesis failed; ``witness`` names the culprit."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ResourceError(LatinError, RuntimeError):
    """A node budget, size cap or orbit cap was exceeded."""

    def __init__(self, message, nodes=None):
        super().__init__(message)
        self.nodes = nodes
