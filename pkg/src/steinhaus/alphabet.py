"""Digit alphabets, digit words and exact digit distributions.

An alphabet is ``{0, ..., b-1}`` for an integer base ``b``.  Probabilities are
:class:`fractions.Fraction` values throughout; nothing in this module ever
touches floating point.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from os import PathLike
from typing import Iterable, Iterator, Sequence, Union

from .errors import (
    BaseMismatch,
    InvalidBase,
    InvalidDigit,
    NegativeMass,
    NonUnitMass,
    ParseError,
    WrongArity,
)

__all__ = [
    "MAX_BASE",
    "Rational",
    "check_base",
    "DigitWord",
    "DigitDistribution",
    "make_distribution",
    "uniform_distribution",
    "degenerate_distribution",
    "word_probability",
    "parse_rational",
    "format_rational",
    "parse_distribution",
    "format_distribution",
    "load_distribution",
    "save_distribution",
]

MAX_BASE = 2**16

Rational = Fraction
RationalLike = Union[Fraction, int, str]

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def check_base(base: int) -> int:
    if isinstance(base, bool) or not isinstance(base, int):
        raise InvalidBase(f"base must be an integer, got {base!r}")
    if not 2 <= base <= MAX_BASE:
        raise InvalidBase(f"base must lie in [2, {MAX_BASE}], got {base}")
    return base


def parse_rational(text: str) -> Fraction:
    """Parse ``"n/d"`` or an integer literal exactly.

    Decimal literals such as ``"0.3"`` are refused on purpose: they would
    invite silent rounding of probabilities written by hand.
    """
    s = text.strip()
    if not _RATIONAL_RE.match(s):
        raise ParseError(f"not an exact rational (expected n/d or integer): {text!r}")
    try:
        return Fraction(s)
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in {text!r}") from None


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _as_fraction(value: RationalLike) -> Fraction:
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, float):
        raise TypeError("floats are not accepted as probabilities; use Fraction or 'n/d'")
    return Fraction(value)


@dataclass(frozen=True)
class DigitWord:
    """A finite, possibly empty, sequence of digits in a fixed base."""

    digits: tuple[int, ...]
    base: int = 10

    def __post_init__(self) -> None:
        check_base(self.base)
        digits = tuple(int(d) for d in self.digits)
        for pos, d in enumerate(digits, start=1):
            if not 0 <= d < self.base:
                raise InvalidDigit(d, self.base, pos)
        object.__setattr__(self, "digits", digits)

    @classmethod
    def from_string(cls, text: str, base: int = 10) -> DigitWord:
        """``"0379"`` for bases up to 36 (one character per digit), or
        whitespace separated integers when ``text`` contains spaces."""
        check_base(base)
        text = text.strip()
        if not text:
            return cls((), base)
        if any(c.isspace() for c in text):
            try:
                return cls(tuple(int(tok) for tok in text.split()), base)
            except ValueError:
                raise ParseError(f"bad digit word {text!r}") from None
        if base > 36:
            return cls((int(text),), base)
        digits = []
        for pos, ch in enumerate(text, start=1):
            try:
                d = int(ch, 36)
            except ValueError:
                raise InvalidDigit(ch, base, pos) from None
            digits.append(d)
        return cls(tuple(digits), base)

    def __len__(self) -> int:
        return len(self.digits)

    def __iter__(self) -> Iterator[int]:
        return iter(self.digits)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return DigitWord(self.digits[index], self.base)
        return self.digits[index]

    def __add__(self, other: DigitWord) -> DigitWord:
        if not isinstance(other, DigitWord):
            return NotImplemented
        if other.base != self.base:
            raise BaseMismatch(self.base, other.base)
        return DigitWord(self.digits + other.digits, self.base)

    def __str__(self) -> str:
        if self.base <= 10:
            return "".join(map(str, self.digits))
        return " ".join(map(str, self.digits))

    def code(self) -> int:
        """Big-endian integer code of the word, ``sum d_j b^(k-j)``."""
        return digits_to_int(self.digits, self.base)

    @classmethod
    def from_code(cls, code: int, length: int, base: int) -> DigitWord:
        if not 0 <= code < base**length:
            raise ValueError("code does not fit in the requested length")
        return cls(tuple(int_to_digits(code, base, length)), base)


_LEAF = 64


def digits_to_int(digits: Sequence[int], base: int) -> int:
    """Big-endian digits to an integer; divide and conquer for long inputs."""
    if len(digits) <= _LEAF:
        c = 0
        for d in digits:
            c = c * base + int(d)
        return c
    half = len(digits) // 2
    return digits_to_int(digits[:half], base) * base ** (len(digits) - half) \
        + digits_to_int(digits[half:], base)


def int_to_digits(value: int, base: int, length: int) -> list[int]:
    """The ``length`` low-order base-``base`` digits of ``value``, most significant first."""
    if length <= _LEAF:
        out = [0] * length
        for i in range(length - 1, -1, -1):
            value, out[i] = divmod(value, base)
        return out
    low = length // 2
    high_part, low_part = divmod(value, base**low)
    return int_to_digits(high_part, base, length - low) + int_to_digits(low_part, base, low)


def all_words(length: int, base: int) -> Iterator[DigitWord]:
    """All ``base**length`` words in lexicographic (= code) order."""
    for digits in product(range(base), repeat=length):
        yield DigitWord(digits, base)


@dataclass(frozen=True)
class DigitDistribution:
    """Probability vector ``(p_0, ..., p_{b-1})`` over the digits of one base."""

    base: int
    probabilities: tuple[Fraction, ...] = field(repr=False)

    def __post_init__(self) -> None:
        check_base(self.base)
        probs = tuple(_as_fraction(p) for p in self.probabilities)
        if len(probs) != self.base:
            raise WrongArity(f"expected {self.base} probabilities, got {len(probs)}")
        for r, p in enumerate(probs):
            if p < 0:
                raise NegativeMass(f"p_{r} = {format_rational(p)} is negative")
        total = sum(probs, Fraction(0))
        if total != 1:
            raise NonUnitMass(f"probabilities sum to {format_rational(total)}, not 1")
        object.__setattr__(self, "probabilities", probs)

    def __getitem__(self, digit: int) -> Fraction:
        return self.probabilities[digit]

    def __repr__(self) -> str:
        body = " ".join(format_rational(p) for p in self.probabilities)
        return f"DigitDistribution(base={self.base}, [{body}])"

    @property
    def is_uniform(self) -> bool:
        return all(p == self.probabilities[0] for p in self.probabilities)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(r for r, p in enumerate(self.probabilities) if p > 0)

    @cached_property
    def common_denominator(self) -> int:
        return math.lcm(*(p.denominator for p in self.probabilities))

    @cached_property
    def cumulative_numerators(self) -> tuple[int, ...]:
        """Integer CDF thresholds ``L * (p_0 + ... + p_r)`` with ``L`` the common denominator."""
        L = self.common_denominator
        acc, out = 0, []
        for p in self.probabilities:
            acc += p.numerator * (L // p.denominator)
            out.append(acc)
        return tuple(out)

    def word_probabilities(self, length: int) -> list[Fraction]:
        """Target products for every word of ``length``, indexed by word code."""
        probs = [Fraction(1)]
        for _ in range(length):
            probs = [q * p for q in probs for p in self.probabilities]
        return probs


def make_distribution(base: int, probabilities: Sequence[RationalLike]) -> DigitDistribution:
    return DigitDistribution(base, tuple(probabilities))


def uniform_distribution(base: int) -> DigitDistribution:
    check_base(base)
    return DigitDistribution(base, (Fraction(1, base),) * base)


def degenerate_distribution(base: int, digit: int) -> DigitDistribution:
    """All mass on ``digit``."""
    check_base(base)
    if not 0 <= digit < base:
        raise InvalidDigit(digit, base)
    return DigitDistribution(base, tuple(Fraction(int(r == digit)) for r in range(base)))


def word_probability(dist: DigitDistribution, word: DigitWord | Iterable[int]) -> Fraction:
    """Product of the digit probabilities along ``word``; the empty word has probability 1."""
    if isinstance(word, DigitWord):
        if word.base != dist.base:
            raise BaseMismatch(dist.base, word.base)
        digits: Iterable[int] = word.digits
    else:
        digits = DigitWord(tuple(word), dist.base).digits
    result = Fraction(1)
    for d in digits:
        result *= dist.probabilities[d]
        if not result:
            break
    return result


# -- text format ------------------------------------------------------------

def parse_distribution(text: str) -> DigitDistribution:
    """Parse the two-line distribution format::

        base 10
        3/10 7/90 7/90 7/90 7/90 7/90 7/90 7/90 7/90 7/90

    Probabilities are listed ``p_0`` first.  Blank lines and ``#`` comments are
    ignored; the probability list may wrap over several lines.
    """
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ParseError("empty distribution file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "base":
        raise ParseError(f"first line must be 'base <b>', got {lines[0]!r}")
    try:
        base = int(head[1])
    except ValueError:
        raise ParseError(f"bad base {head[1]!r}") from None
    tokens = " ".join(lines[1:]).split()
    probs = [parse_rational(tok) for tok in tokens]
    return make_distribution(base, probs)


def format_distribution(dist: DigitDistribution) -> str:
    probs = " ".join(format_rational(p) for p in dist.probabilities)
    return f"base {dist.base}\n{probs}\n"


def load_distribution(path: str | PathLike) -> DigitDistribution:
    with open(path, encoding="ascii") as fh:
        return parse_distribution(fh.read())


def save_distribution(dist: DigitDistribution, path: str | PathLike) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_distribution(dist))
