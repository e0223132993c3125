"""
weylstar Exceptions
"""

from typing import Optional


class WeylStarError(RuntimeError):
    """
    Base class for every error raised by the library.
    """


class VariableMismatchError(WeylStarError, ValueError):
    """
    Raised when two polynomials taking part in one operation live in
    different variable spaces (different `n` or a different
    :class:`~weylstar.poly.VarKind`).
    """


class DomainError(WeylStarError, ValueError):
    """
    Raised when an argument lies outside the domain of an operation, for
    instance a closed form evaluated where it is not valid.
    """


class DegreeBoundError(DomainError):
    """
    Raised when an operator or a truncated series is queried beyond the
    degree it was built for.
    """

    def __init__(self, message: str, requested: int,
                 bound: Optional[int]) -> None:
        self.requested = requested
        self.bound = bound
        super().__init__(message)


class ExpressionError(WeylStarError, ValueError):
    """
    A syntax or vocabulary error in a textual polynomial.
    """

    def __init__(self, text: str, position: Optional[int],
                 message: str) -> None:
        self._text = text
        self._position = position
        self._message = message
        super().__init__(message)

    def __str__(self) -> str:
        if self._position is None:
            return f"{self._message}: {self._text!r}"

        caret = " " * self._position + "^"
        return f"{self._message} (column {self._position})\n" + \
            f"  {self._text}\n  {caret}"

    @property
    def text(self) -> str:
        """
        The expression that failed to parse.
        """
        return self._text

    @property
    def position(self) -> Optional[int]:
        """
        Zero-based column of the offending token, if known.
        """
        return self._position

    @property
    def message(self) -> str:
        """
        Error message without the caret rendering.
        """
        return self._message
