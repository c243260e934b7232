"""Exception hierarchy.

Every domain failure raised by the library derives from :class:`SteinhausError`,
which is what the command-line front end catches to decide on exit status 1.
"""

from __future__ import annotations


class SteinhausError(ValueError):
    """Base class for all domain errors."""


class InvalidBase(SteinhausError):
    pass


class InvalidDigit(SteinhausError):
    def __init__(self, digit: object, base: int, position: int | None = None):
        self.digit = digit
        self.base = base
        self.position = position
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"invalid digit {digit!r} for base {base}{where}")


class BaseMismatch(SteinhausError):
    def __init__(self, left: int, right: int):
        super().__init__(f"base mismatch: {left} != {right}")
        self.left = left
        self.right = right


class WrongArity(SteinhausError):
    pass


class NegativeMass(SteinhausError):
    pass


class NonUnitMass(SteinhausError):
    pass


class ParseError(SteinhausError):
    pass


class OutOfRange(SteinhausError):
    pass


class EmptyInterval(SteinhausError):
    pass


class PerfectSquare(SteinhausError):
    pass


class NotANumber(SteinhausError):
    pass


class DegenerateDigit(SteinhausError):
    pass


class StreamExhausted(SteinhausError):
    def __init__(self, wanted: int, got: int):
        super().__init__(f"stream exhausted: wanted {wanted} digits, got {got}")
        self.wanted = wanted
        self.got = got


class ExplosiveK(SteinhausError):
    pass
