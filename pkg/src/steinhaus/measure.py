"""Product measures on digit sequences and their pushforward to ``[0, 1]``.

A digit sequence ``w = (a_1, a_2, ...)`` is sent to ``psi(w) = sum a_j b^-j``.
Under the i.i.d. product measure built from a :class:`DigitDistribution`, the
image measure of an interval is computed exactly by splitting the preimage of
the interval into finitely many prefix cylinders plus at most two single
sequences (the endpoint representations).  The only sequences that can carry
positive mass on their own are eventually periodic ones whose every digit has
probability one, so point masses are decidable for rational points.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .alphabet import (
    DigitDistribution,
    DigitWord,
    check_base,
    parse_rational,
    word_probability,
)
from .errors import BaseMismatch, EmptyInterval, OutOfRange, ParseError

__all__ = [
    "DigitSubset",
    "PrefixCylinder",
    "FiniteExpansion",
    "TailKind",
    "Expansion",
    "Decomposition",
    "cylinder_measure",
    "cylinders_disjoint",
    "psi_value",
    "dual_representations",
    "expansion_mass",
    "point_measure",
    "interval_to_cylinders",
    "interval_measure",
    "interval_enclosure",
    "parse_point",
]


# -- digit subsets and cylinders -------------------------------------------

@dataclass(frozen=True)
class DigitSubset:
    """A subset of the alphabet ``{0, ..., base-1}``; may be empty."""

    base: int
    members: frozenset[int]

    def __post_init__(self) -> None:
        check_base(self.base)
        members = frozenset(int(d) for d in self.members)
        if any(not 0 <= d < self.base for d in members):
            raise OutOfRange(f"subset {sorted(members)} leaves the alphabet of base {self.base}")
        object.__setattr__(self, "members", members)

    @classmethod
    def full(cls, base: int) -> DigitSubset:
        return cls(base, frozenset(range(base)))

    @classmethod
    def single(cls, base: int, digit: int) -> DigitSubset:
        return cls(base, frozenset((digit,)))

    @classmethod
    def greater(cls, base: int, a: int) -> DigitSubset:
        return cls(base, frozenset(range(a + 1, base)))

    @classmethod
    def less(cls, base: int, a: int) -> DigitSubset:
        return cls(base, frozenset(range(0, a)))

    @classmethod
    def at_least(cls, base: int, a: int) -> DigitSubset:
        return cls(base, frozenset(range(a, base)))

    @classmethod
    def at_most(cls, base: int, a: int) -> DigitSubset:
        return cls(base, frozenset(range(0, a + 1)))

    @classmethod
    def between(cls, base: int, a: int, b: int, *, closed_left: bool = False,
                closed_right: bool = False) -> DigitSubset:
        """``{>a, <b}`` by default; the closed variants give ``{>=a, <b}`` etc."""
        lo = a if closed_left else a + 1
        hi = b + 1 if closed_right else b
        return cls(base, frozenset(range(max(lo, 0), min(hi, base))))

    @property
    def is_full(self) -> bool:
        return len(self.members) == self.base

    @property
    def is_empty(self) -> bool:
        return not self.members

    def mass(self, dist: DigitDistribution) -> Fraction:
        if dist.base != self.base:
            raise BaseMismatch(self.base, dist.base)
        return sum((dist.probabilities[d] for d in self.members), Fraction(0))

    def __and__(self, other: DigitSubset) -> DigitSubset:
        if other.base != self.base:
            raise BaseMismatch(self.base, other.base)
        return DigitSubset(self.base, self.members & other.members)

    def __contains__(self, digit: int) -> bool:
        return digit in self.members

    def __str__(self) -> str:
        if self.is_full:
            return "Ω"
        return "{" + ",".join(map(str, sorted(self.members))) + "}"


@dataclass(frozen=True)
class PrefixCylinder:
    """Sequences whose ``j``-th digit lies in ``constraints[j-1]``; later digits are free.

    Trailing unconstrained positions are dropped at construction so that two
    cylinders describing the same set compare equal.
    """

    base: int
    constraints: tuple[DigitSubset, ...] = ()

    def __post_init__(self) -> None:
        check_base(self.base)
        cons = tuple(self.constraints)
        for c in cons:
            if c.base != self.base:
                raise BaseMismatch(self.base, c.base)
        while cons and cons[-1].is_full:
            cons = cons[:-1]
        object.__setattr__(self, "constraints", cons)

    @classmethod
    def from_word(cls, word: DigitWord, last: DigitSubset | None = None) -> PrefixCylinder:
        """Fix the digits of ``word``; optionally constrain the next position by ``last``."""
        cons = [DigitSubset.single(word.base, d) for d in word.digits]
        if last is not None:
            cons.append(last)
        return cls(word.base, tuple(cons))

    @property
    def depth(self) -> int:
        return len(self.constraints)

    @property
    def is_empty(self) -> bool:
        return any(c.is_empty for c in self.constraints)

    def contains(self, digits: Sequence[int]) -> bool:
        """Whether sequences starting with ``digits`` lie in the cylinder.

        ``digits`` must be at least as long as the cylinder's depth.
        """
        if len(digits) < self.depth:
            raise ValueError("prefix shorter than cylinder depth")
        return all(d in c for d, c in zip(digits, self.constraints))

    def __str__(self) -> str:
        parts = [str(c) for c in self.constraints] + ["Ω^∞"]
        return "×".join(parts)


def cylinder_measure(cyl: PrefixCylinder, dist: DigitDistribution) -> Fraction:
    if cyl.base != dist.base:
        raise BaseMismatch(cyl.base, dist.base)
    result = Fraction(1)
    for c in cyl.constraints:
        result *= c.mass(dist)
        if not result:
            break
    return result


def cylinders_disjoint(first: PrefixCylinder, second: PrefixCylinder) -> bool:
    if first.base != second.base:
        raise BaseMismatch(first.base, second.base)
    if first.is_empty or second.is_empty:
        return True
    return any(not (x.members & y.members) for x, y in zip(first.constraints, second.constraints))


# -- the evaluation map and its fibres ----------------------------------------

def psi_value(prefix: DigitWord) -> Fraction:
    """``sum a_j b^-j`` over the word, exactly."""
    return Fraction(prefix.code(), prefix.base ** len(prefix))


class TailKind(enum.Enum):
    ZEROS = "zeros"
    NINES = "nines"  # the top digit b-1 repeated; "nines" in base 10


@dataclass(frozen=True)
class Expansion:
    """An eventually periodic digit sequence: ``prefix`` then ``period`` forever."""

    prefix: DigitWord
    period: DigitWord

    def __post_init__(self) -> None:
        if self.prefix.base != self.period.base:
            raise BaseMismatch(self.prefix.base, self.period.base)
        if not len(self.period):
            raise ValueError("period must be non-empty")

    @classmethod
    def with_tail(cls, prefix: DigitWord, tail: TailKind) -> Expansion:
        top = 0 if tail is TailKind.ZEROS else prefix.base - 1
        return cls(prefix, DigitWord((top,), prefix.base))

    @property
    def base(self) -> int:
        return self.prefix.base

    @property
    def tail(self) -> TailKind | None:
        if self.period.digits == (0,):
            return TailKind.ZEROS
        if self.period.digits == (self.base - 1,):
            return TailKind.NINES
        return None

    def value(self) -> Fraction:
        b, k = self.base, len(self.period)
        period_value = Fraction(self.period.code(), b**k - 1)
        return psi_value(self.prefix) + period_value / b ** len(self.prefix)

    def digits(self, n: int) -> list[int]:
        out = list(self.prefix.digits[:n])
        per = self.period.digits
        i = 0
        while len(out) < n:
            out.append(per[i % len(per)])
            i += 1
        return out

    def __str__(self) -> str:
        return f"{self.prefix}({self.period})"


def _finite_digits(x: Fraction, base: int) -> tuple[int, ...] | None:
    """Digits of ``x`` in [0, 1) if its base expansion terminates, else ``None``."""
    d = x.denominator
    g = math.gcd(d, base)
    while g > 1:
        while d % g == 0:
            d //= g
        g = math.gcd(d, base)
    if d != 1:
        return None
    num, den, out = x.numerator, x.denominator, []
    while num:
        digit, num = divmod(num * base, den)
        out.append(digit)
    return tuple(out)


def _periodic_expansion(x: Fraction, base: int) -> Expansion:
    num, den = x.numerator, x.denominator
    seen: dict[int, int] = {}
    digits: list[int] = []
    while num not in seen:
        seen[num] = len(digits)
        digit, num = divmod(num * base, den)
        digits.append(digit)
    start = seen[num]
    return Expansion(DigitWord(tuple(digits[:start]), base), DigitWord(tuple(digits[start:]), base))


def dual_representations(x: Fraction, base: int) -> list[Expansion]:
    """Every digit sequence mapped to ``x``: two for terminating ``x`` in (0, 1), else one.

    The zeros-tail form is listed first.
    """
    check_base(base)
    x = Fraction(x)
    if not 0 <= x <= 1:
        raise OutOfRange(f"{x} is outside [0, 1]")
    empty = DigitWord((), base)
    if x == 0:
        return [Expansion.with_tail(empty, TailKind.ZEROS)]
    if x == 1:
        return [Expansion.with_tail(empty, TailKind.NINES)]
    finite = _finite_digits(x, base)
    if finite is None:
        return [_periodic_expansion(x, base)]
    lowered = finite[:-1] + (finite[-1] - 1,)
    return [
        Expansion.with_tail(DigitWord(finite, base), TailKind.ZEROS),
        Expansion.with_tail(DigitWord(lowered, base), TailKind.NINES),
    ]


def expansion_mass(rep: Expansion, dist: DigitDistribution) -> Fraction:
    """Product measure of the single sequence ``rep``.

    The infinite product over the period is 1 when every period digit has
    probability 1 and 0 otherwise.
    """
    if rep.base != dist.base:
        raise BaseMismatch(rep.base, dist.base)
    if any(dist.probabilities[d] != 1 for d in rep.period.digits):
        return Fraction(0)
    return word_probability(dist, rep.prefix)


# -- finite-expansion endpoints ----------------------------------------------

@dataclass(frozen=True)
class FiniteExpansion:
    """A point of ``[0, 1]`` with a terminating expansion, or the number 1."""

    digits: DigitWord
    is_one: bool = False

    def __post_init__(self) -> None:
        if self.is_one and len(self.digits):
            raise ValueError("the ONE marker carries no digits")

    @classmethod
    def one(cls, base: int) -> FiniteExpansion:
        return cls(DigitWord((), base), True)

    @classmethod
    def from_string(cls, text: str, base: int = 10) -> FiniteExpansion:
        return cls(DigitWord.from_string(text, base))

    @classmethod
    def from_rational(cls, x: Fraction | int, base: int = 10) -> FiniteExpansion:
        x = Fraction(x)
        if not 0 <= x <= 1:
            raise OutOfRange(f"{x} is outside [0, 1]")
        if x == 1:
            return cls.one(base)
        digits = _finite_digits(x, base)
        if digits is None:
            raise OutOfRange(f"{x} has no terminating base-{base} expansion; bound it with interval_enclosure")
        return cls(DigitWord(digits, base))

    @property
    def base(self) -> int:
        return self.digits.base

    def value(self) -> Fraction:
        return Fraction(1) if self.is_one else psi_value(self.digits)

    def padded(self, n: int) -> tuple[int, ...]:
        if self.is_one:
            raise ValueError("ONE cannot be padded")
        return self.digits.digits + (0,) * (n - len(self.digits))

    def __str__(self) -> str:
        return "1" if self.is_one else f"0.{self.digits}"


EndpointLike = Union[FiniteExpansion, Fraction, int, str]


def _endpoint(value: EndpointLike, base: int) -> FiniteExpansion:
    if isinstance(value, FiniteExpansion):
        return value
    if isinstance(value, str):
        return parse_point(value, base)
    return FiniteExpansion.from_rational(Fraction(value), base)


def parse_point(text: str, base: int = 10) -> FiniteExpansion:
    """``"0.<digits>"`` (digits in the given base), ``"n/d"`` or an integer."""
    s = text.strip()
    if s.startswith("0.") or s.startswith("."):
        return FiniteExpansion.from_string(s.split(".", 1)[1], base)
    if "." in s:
        raise ParseError(f"bad point {text!r}: digit strings must start with '0.'")
    return FiniteExpansion.from_rational(parse_rational(s), base)


@dataclass(frozen=True)
class Decomposition:
    """Disjoint cylinders covering the preimage of a closed interval.

    ``endpoint`` is the zeros-tail sequence of the right endpoint, which is not
    covered by any cylinder (``None`` when the right endpoint is 1, whose
    preimage already sits inside the last cylinder).  The nines-tail
    representation of the left endpoint is deliberately not included.
    """

    cylinders: tuple[PrefixCylinder, ...]
    endpoint: Expansion | None

    def measure(self, dist: DigitDistribution) -> Fraction:
        total = sum((cylinder_measure(c, dist) for c in self.cylinders), Fraction(0))
        if self.endpoint is not None:
            total += expansion_mass(self.endpoint, dist)
        return total


def _staircase(base: int, a: tuple[int, ...], b: tuple[int, ...]) -> list[PrefixCylinder]:
    """Cylinders for depth-n prefixes ``p`` with ``a <= p < b`` lexicographically."""
    n = len(a)
    n0 = next(i for i in range(n) if a[i] != b[i])  # 0-based first differing index
    pieces = [PrefixCylinder.from_word(DigitWord(a[:n0], base),
                                       DigitSubset.between(base, a[n0], b[n0]))]
    for k in range(n0 + 1, n):
        pieces.append(PrefixCylinder.from_word(DigitWord(a[:k], base),
                                               DigitSubset.greater(base, a[k])))
    pieces.append(PrefixCylinder.from_word(DigitWord(a, base)))
    for k in range(n0 + 1, n):
        pieces.append(PrefixCylinder.from_word(DigitWord(b[:k], base),
                                               DigitSubset.less(base, b[k])))
    return pieces


def interval_to_cylinders(a: EndpointLike, b: EndpointLike, base: int | None = None) -> Decomposition:
    """Split the preimage of ``[a, b]`` into disjoint prefix cylinders.

    With both endpoints padded to a common length ``n`` and ``n0`` the first
    position where they differ, the pieces are, in order: the middle cylinder
    ``a_1..a_{n0-1} x {>a_n0, <b_n0}``, the left staircase
    ``a_1..a_{k-1} x {>a_k}`` for ``k = n0+1..n``, the full ``a`` prefix, and
    the right staircase ``b_1..b_{k-1} x {<b_k}``.  Pieces whose last subset is
    empty are kept so the piece count depends only on ``n`` and ``n0``.
    """
    if base is None:
        base = next((e.base for e in (a, b) if isinstance(e, FiniteExpansion)), 10)
    lo, hi = _endpoint(a, base), _endpoint(b, base)
    if lo.base != hi.base:
        raise BaseMismatch(lo.base, hi.base)
    base = lo.base
    if lo.value() >= hi.value():
        raise EmptyInterval(f"[{lo}, {hi}] is empty or degenerate")
    if hi.is_one:
        n = max(len(lo.digits), 1)
        top = (base - 1,) * n
        a_digits = lo.padded(n)
        pieces = [] if a_digits == top else _staircase(base, a_digits, top)
        pieces.append(PrefixCylinder.from_word(DigitWord(top, base)))
        return Decomposition(tuple(pieces), None)
    n = max(len(lo.digits), len(hi.digits))
    a_digits, b_digits = lo.padded(n), hi.padded(n)
    endpoint = Expansion.with_tail(DigitWord(b_digits, base), TailKind.ZEROS)
    return Decomposition(tuple(_staircase(base, a_digits, b_digits)), endpoint)


def point_measure(x: EndpointLike | Expansion, dist: DigitDistribution) -> Fraction:
    """Mass the image measure puts on the single point ``x`` (summed over its representations).

    A single sequence has positive mass only when its digits eventually all
    have probability 1.  That forces a degenerate distribution on some digit
    ``r`` and the constant sequence ``r, r, ...``, whose value is ``r/(b-1)``.
    So the answer is 0 or 1 and needs no expansion of ``x``; the long route
    through :func:`dual_representations` and :func:`expansion_mass` agrees and
    is kept for callers that want the representations themselves.
    """
    if isinstance(x, (FiniteExpansion, Expansion)):
        if x.base != dist.base:
            raise BaseMismatch(x.base, dist.base)
        x = x.value()
    elif isinstance(x, str):
        x = parse_point(x, dist.base).value()
    x = Fraction(x)
    if not 0 <= x <= 1:
        raise OutOfRange(f"{x} is outside [0, 1]")
    support = dist.support
    if len(support) != 1:
        return Fraction(0)
    return Fraction(int(x == Fraction(support[0], dist.base - 1)))


def _left_point_mass(a: FiniteExpansion, dist: DigitDistribution) -> Fraction:
    """Mass of the nines-tail sequence of ``a``, which lies left of every decomposition cylinder."""
    if a.is_one or not a.value():
        return Fraction(0)
    reps = dual_representations(a.value(), a.base)
    return sum((expansion_mass(r, dist) for r in reps if r.tail is TailKind.NINES), Fraction(0))


def interval_measure(a: EndpointLike, b: EndpointLike, dist: DigitDistribution, *,
                     left_closed: bool = True, right_closed: bool = True) -> Fraction:
    """Exact image measure of the interval between two terminating endpoints.

    Closed intervals are primitive; open ends subtract the endpoint's point mass.
    """
    lo, hi = _endpoint(a, dist.base), _endpoint(b, dist.base)
    for e in (lo, hi):
        if e.base != dist.base:
            raise BaseMismatch(dist.base, e.base)
    if lo.value() > hi.value():
        raise EmptyInterval(f"[{lo}, {hi}] is empty")
    if lo.value() == hi.value():
        if left_closed and right_closed:
            return point_measure(lo, dist)
        return Fraction(0)
    total = interval_to_cylinders(lo, hi).measure(dist) + _left_point_mass(lo, dist)
    if not left_closed:
        total -= point_measure(lo, dist)
    if not right_closed:
        total -= point_measure(hi, dist)
    return total


def interval_enclosure(a: Fraction | int, b: Fraction | int, dist: DigitDistribution,
                       depth: int) -> tuple[Fraction, Fraction]:
    """Bounds ``lower <= measure([a, b]) <= upper`` for arbitrary rational endpoints.

    Each endpoint is rounded to the depth-``depth`` grid, inwards for the lower
    bound and outwards for the upper one.  The gap is at most the mass of the
    two depth-``depth`` cylinders containing the endpoints.
    """
    a, b = Fraction(a), Fraction(b)
    for x in (a, b):
        if not 0 <= x <= 1:
            raise OutOfRange(f"{x} is outside [0, 1]")
    if a > b:
        raise EmptyInterval(f"[{a}, {b}] is empty")
    if depth < 0:
        raise ValueError("depth must be non-negative")
    scale = dist.base**depth
    a_lo = Fraction(math.floor(a * scale), scale)
    a_hi = Fraction(math.ceil(a * scale), scale)
    b_lo = Fraction(math.floor(b * scale), scale)
    b_hi = Fraction(math.ceil(b * scale), scale)
    upper = interval_measure(a_lo, b_hi, dist)
    if a_hi <= b_lo:
        lower = interval_measure(a_hi, b_lo, dist)
    else:
        lower = point_measure(a, dist) if a == b else Fraction(0)
    return lower, upper

