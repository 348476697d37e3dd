"""Exception hierarchy.

Input problems (bad tables, bad documents, bad arguments) are kept apart from
mathematical outcomes: a failed axiom or a refuted identity is a report, not
an exception.
"""


class WemvError(Exception):
    """Base class for every error raised by the package."""


class InputError(WemvError):
    """Malformed input: bad arguments, preconditions not met."""


class TableError(InputError):
    """A Cayley table is malformed; ``locus`` is a JSON-pointer-like path."""

    def __init__(self, locus, message):
        super().__init__(f"{locus}: {message}")
        self.locus = locus


class DocumentError(InputError):
    """An algebra document does not follow the schema."""

    def __init__(self, locus, message):
        super().__init__(f"{locus or '/'}: {message}")
        self.locus = locus


class NotOminusDefinable(InputError):
    def __init__(self, z, x, reason):
        super().__init__(f"not ominus-definable at (z={z}, x={x}): {reason}")
        self.pair = (z, x)


class NotValidatedError(InputError):
    """A structural operation was requested on an algebra failing the axioms."""


class UnsupportedError(WemvError):
    """The operation is not available for this algebra shape."""


class NotEnumerableError(UnsupportedError):
    pass


class SizeCapError(UnsupportedError):
    pass


class EvaluationError(WemvError):
    """A term cannot be evaluated on the given algebra."""


class TermSyntaxError(InputError):
    def __init__(self, position, message):
        super().__init__(f"syntax error at position {position}: {message}")
        self.position = position


class TopologyError(InputError):
    pass


class ConsistencyError(WemvError):
    """Internal self-check failed; indicates a bug or a counterexample worth reporting."""
