"""Exception types shared across the package."""


class DivisionByZero(ZeroDivisionError):
    """Inversion or evaluation hit a zero denominator."""


class ParseError(ValueError):
    """Bad input text; carries the offending position when known."""

    def __init__(self, message, pos=None):
        if pos is not None:
            message = f"{message} (at position {pos})"
        super().__init__(message)
        self.pos = pos


class InvalidGenerator(ValueError):
    """A generator index or letter is not valid for the given graph."""


class NotFcWord(ValueError):
    """The word contains a redex, so it is not a reduced word of a fully
    commutative element."""


class LengthLimitExceeded(RuntimeError):
    """A basis word grew past the configured hard cap."""


class RankMismatch(ValueError):
    """Operands live over different graphs, or over a graph of the wrong
    kind/size for the operation."""


class NotClassifiable(RuntimeError):
    """A rank-3 affine basis word matched neither rotation-orbit family.
    This must never happen; seeing it falsifies the orbit classification."""


class SingularSystem(ArithmeticError):
    """A linear slot equation has a vanishing leading coefficient."""


class CrossCheckFailed(AssertionError):
    """A built-in consistency check between two independent computation
    routes failed."""
