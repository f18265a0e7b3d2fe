"""Exception hierarchy shared by all modules."""


class PlanarAlgebraError(Exception):
    """Base class for all library errors."""


class ModeMismatchError(PlanarAlgebraError):
    """Arithmetic attempted between scalars of different modes (or deltas)."""


class ColourMismatchError(PlanarAlgebraError):
    """Operation applied to elements/boxes of incompatible colours."""


class LevelMismatchError(PlanarAlgebraError):
    """Operation applied to graded elements of different levels."""


class PreconditionError(PlanarAlgebraError):
    """A documented precondition of an operation was violated."""


class ValidationError(PlanarAlgebraError):
    """A tangle failed structural, parity or planarity validation.

    Carries the first violated condition and the offending strand, if any.
    """

    def __init__(self, message, strand=None):
        super().__init__(message)
        self.strand = strand


class ParseError(PlanarAlgebraError):
    """Tangle DSL syntax error, with 1-based line/column position."""

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"line {line}, col {column}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column


class InternalError(PlanarAlgebraError):
    """An internal consistency assertion failed (indicates a library bug)."""
