from __future__ import annotations


class QTFAError(Exception):
    """Base class for errors raised by qtfa."""


class DimensionError(QTFAError, ValueError):
    """Array shape does not match the modulus or the expected layout."""


class ParameterError(QTFAError, ValueError):
    """Invalid exponent, block size, lattice step or modulus."""


class InvalidWindowError(QTFAError, ValueError):
    """The window operator is zero."""


class NotAFrameError(QTFAError):
    """The frame operator is singular (or numerically so)."""

    def __init__(self, message: str, smallest_eigenvalue: float):
        super().__init__(message)
        self.smallest_eigenvalue = smallest_eigenvalue


class DecompositionError(QTFAError):
    """A matrix factorisation failed to converge."""


class FormatError(QTFAError, ValueError):
    """A matrix file is empty or malformed; ``line`` and ``field`` locate the problem."""

    def __init__(self, message: str, path=None, line: int | None = None, field: int | None = None):
        where = []
        if path is not None:
            where.append(str(path))
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field}")
        prefix = ", ".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)
        self.path = path
        self.line = line
        self.field = field
