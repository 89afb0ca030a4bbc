"""Exception types shared across the package."""


class UsmError(ValueError):
    """Base class for all errors raised by this package."""


class AlphabetError(UsmError):
    """Invalid alphabet construction (empty input, duplicate symbols)."""


class UnknownSymbolError(UsmError):
    """A symbol outside the alphabet was encountered."""

    def __init__(self, symbol, position=None):
        self.symbol = symbol
        self.position = position
        at = "" if position is None else f" at position {position}"
        super().__init__(f"unknown symbol {symbol!r}{at}")


class UnusedCornerError(UsmError):
    """A corner index beyond the alphabet size was requested or decoded."""


class GridTooLargeError(UsmError):
    """A density grid would exceed the configured cell cap."""


class AlphabetMismatchError(UsmError):
    """Two maps built on different alphabets cannot be compared."""
