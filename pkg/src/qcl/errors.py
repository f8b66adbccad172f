class QCLError(Exception):
    """Base class for all errors raised by qcl."""


class ArgumentError(QCLError, ValueError):
    """Inputs violate an operation's preconditions (level mismatch, non-interlacing pair, ...)."""


class DomainError(QCLError, ZeroDivisionError):
    """Evaluation at a point where the expression is undefined."""


class ResourceError(QCLError, RuntimeError):
    """A configured size cap (path count, block size, expansion size) was exceeded."""
