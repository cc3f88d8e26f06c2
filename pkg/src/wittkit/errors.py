"""Typed errors shared by every wittkit module.

Names match the error cases the CLI reports, so scripts can match on them.
"""


class WittError(Exception):
    """Base class for all mathematical failures (CLI exit code 1)."""


class AllZeroToPrecision(WittError):
    pass


class ZeroBasePoint(WittError):
    pass


class DomainError(WittError):
    pass


class ParseError(ValueError):
    """Malformed input text (CLI exit code 2)."""

    def __init__(self, position, expected, text=None):
        self.position = position
        self.expected = expected
        self.text = text
        super().__init__(f"at position {position}: expected {expected}")


class NotInFiltrationOne(WittError):
    pass


class ZeroScale(WittError):
    pass


class InconsistentHead(WittError):
    pass


class NotAutomorphism(WittError):
    def __init__(self, reason):
        self.reason = reason
        super().__init__(reason)


class ZeroElement(WittError):
    pass


class NotInnerAtPrecision(WittError):
    """Residual of ``D - ad w`` on the table entry ``D(L[index])``.

    ``residual`` is the offending VectorField; ``at`` is its first nonzero index.
    """

    def __init__(self, index, residual):
        self.index = index
        self.residual = residual
        self.at = residual.valuation
        super().__init__(
            f"D(L[{index}]) differs from ad w at L[{self.at}] by {residual[self.at]}"
        )


class PrecisionExhausted(WittError):
    pass


class WindowTooSmall(WittError):
    pass


class OutOfModel(WittError):
    pass
