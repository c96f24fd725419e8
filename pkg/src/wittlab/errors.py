"""Exception hierarchy.

The CLI maps these onto exit codes: schema problems exit 2, failed
mathematical preconditions exit 3, broken internal invariants exit 4.
"""


class WittLabError(Exception):
    exit_code = 1


class SchemaError(WittLabError, ValueError):
    """Malformed input record (wrong keys, unparsable values)."""

    exit_code = 2


class PreconditionError(WittLabError, ValueError):
    """A mathematical precondition of an operation does not hold."""

    exit_code = 3


class DescriptorMismatchError(PreconditionError):
    pass


class UnitSeriesError(PreconditionError):
    pass


class TruncationError(PreconditionError):
    pass


class ModulusError(PreconditionError):
    pass


class NonUFDError(PreconditionError):
    pass


class InvalidComplexError(PreconditionError):
    pass


class InvariantError(WittLabError, AssertionError):
    """Something that cannot happen for valid inputs happened anyway."""

    exit_code = 4
