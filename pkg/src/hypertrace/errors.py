"""Exception types shared across the package."""


class HypertraceError(Exception):
    """Base class for all errors raised by hypertrace."""


class InputError(HypertraceError, ValueError):
    """An argument violates the documented precondition of an operation."""


class ConstructionError(InputError):
    """A construction would produce a non-simple or otherwise invalid hypergraph."""


class UnsupportedTopologyError(HypertraceError):
    """The closed-form trace only covers hypertrees and linear unicyclic hypergraphs.

    The brute-force oracle (:func:`hypertrace.oracle.trace_bruteforce`) handles
    every hypergraph and is the fallback for such inputs.
    """


class ResourceLimitError(HypertraceError):
    """An exhaustive enumeration would exceed its configured budget."""

    def __init__(self, message: str, bound: int):
        super().__init__(message)
        self.bound = bound


class HypothesisError(HypertraceError):
    """A lemma instance fails a structural hypothesis of the lemma it targets."""
