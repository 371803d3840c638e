"""Exception hierarchy shared by the library and the CLI."""


class AtlasError(Exception):
    """Base class for all errors raised by hopfatlas."""


class MathPreconditionError(AtlasError, ValueError):
    """A mathematical precondition of an operation does not hold."""


class SingularMatrixError(MathPreconditionError):
    """The matrix has determinant zero."""


class NotSymmetricError(MathPreconditionError):
    """A symmetric matrix was required."""


class DomainError(MathPreconditionError):
    """An argument lies outside the domain of the operation."""


class DiagramFormatError(AtlasError, ValueError):
    """A diagram document does not match the expected schema."""
