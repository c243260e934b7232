"""Overlapping word counts and empirical-frequency reports.

For a digit sequence ``a_1 a_2 ...`` and a word ``B = b_1..b_k`` the count
``S(B, n)`` is the number of start positions ``i`` in ``1..n`` with
``a_{i+j-1} = b_j`` for all ``j``.  Occurrences may overlap, and windows that
start at ``i <= n`` may read up to ``a_{n+k-1}``.

A :class:`WordCounter` credits a start position to every word length
``1..K`` at once, as soon as the ``K`` digits beginning there are known.  So
after ``n + K - 1`` digits have been fed in, all lengths report counts over the
same ``n`` start positions, and ``count(u) == sum(count(u + d) for d)`` holds
exactly for every ``|u| < K``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

from .alphabet import DigitDistribution, DigitWord, format_rational, word_probability
from .errors import BaseMismatch, ExplosiveK, InvalidDigit, StreamExhausted
from .sources import DigitStream, SequenceDigits

__all__ = [
    "DEFAULT_TABLE_BOUND",
    "WordCounter",
    "ReportRow",
    "NormalityReport",
    "Verdict",
    "count_simple",
    "count_word",
    "count_split",
    "build_report",
    "is_eps_normal",
    "format_report",
]

DEFAULT_TABLE_BOUND = 10**7
_CHUNK = 1 << 16
_INT64_CODES = 2**62


class WordCounter:
    """Streaming counts of all words of length ``1..K``.

    ``storage`` is ``"dense"`` (one array of ``b**k`` counters per length),
    ``"sparse"`` (a :class:`collections.Counter` per length) or ``"auto"``,
    which picks dense while ``sum(b**k)`` stays within ``table_bound``.
    """

    def __init__(self, base: int, max_length: int, *, storage: str = "auto",
                 table_bound: int = DEFAULT_TABLE_BOUND):
        if max_length < 1:
            raise ValueError("max word length must be at least 1")
        if base**max_length > _INT64_CODES:
            raise ExplosiveK(f"{base}^{max_length} word codes overflow 64-bit counters")
        self.base = base
        self.max_length = max_length
        table = sum(base**k for k in range(1, max_length + 1))
        if storage == "auto":
            storage = "dense" if table <= table_bound else "sparse"
        if storage not in ("dense", "sparse"):
            raise ValueError(f"unknown storage {storage!r}")
        self.storage = storage
        if storage == "dense":
            self._counts: list = [np.zeros(base**k, dtype=np.int64)
                                  for k in range(1, max_length + 1)]
        else:
            self._counts = [Counter() for _ in range(max_length)]
        self._tail = np.empty(0, dtype=np.int64)
        self.n = 0
        self.digits_seen = 0

    def update(self, digits: Sequence[int] | np.ndarray) -> None:
        arr = np.asarray(digits, dtype=np.int64)
        if not len(arr):
            return
        bad = np.flatnonzero((arr < 0) | (arr >= self.base))
        if len(bad):
            raise InvalidDigit(int(arr[bad[0]]), self.base, self.digits_seen + int(bad[0]) + 1)
        self.digits_seen += len(arr)
        buf = np.concatenate((self._tail, arr)) if len(self._tail) else arr
        K, b = self.max_length, self.base
        starts = len(buf) - (K - 1)
        if starts <= 0:
            self._tail = buf
            return
        codes = buf[:starts].copy()
        for k in range(1, K + 1):
            if k > 1:
                codes *= b
                codes += buf[k - 1:k - 1 + starts]
            if self.storage == "dense":
                self._counts[k - 1] += np.bincount(codes, minlength=b**k)
            else:
                vals, cnts = np.unique(codes, return_counts=True)
                self._counts[k - 1].update(dict(zip(vals.tolist(), cnts.tolist())))
        self.n += starts
        self._tail = buf[starts:].copy()

    def count(self, word: DigitWord) -> int:
        if word.base != self.base:
            raise BaseMismatch(self.base, word.base)
        k = len(word)
        if not 1 <= k <= self.max_length:
            raise ValueError(f"word length {k} outside 1..{self.max_length}")
        return int(self._counts[k - 1][word.code()]) if self.storage == "dense" \
            else self._counts[k - 1].get(word.code(), 0)

    def nonzero(self, k: int) -> dict[int, int]:
        """Map word code to count for the length-``k`` words seen at least once."""
        table = self._counts[k - 1]
        if self.storage == "dense":
            idx = np.flatnonzero(table)
            return dict(zip(idx.tolist(), table[idx].tolist()))
        return {c: v for c, v in table.items() if v}

    def __iadd__(self, other: WordCounter) -> WordCounter:
        """Merge counts from a counter fed the next chunk of the same sequence.

        Chunks must overlap by ``K - 1`` digits; every start position is then
        credited by exactly one of the two counters.
        """
        if (other.base, other.max_length) != (self.base, self.max_length):
            raise ValueError("cannot merge counters of different shape")
        for k in range(self.max_length):
            if self.storage == "dense" and other.storage == "dense":
                self._counts[k] += other._counts[k]
            else:
                merged = Counter(self.nonzero(k + 1))
                merged.update(other.nonzero(k + 1))
                if self.storage == "dense":
                    for c, v in merged.items():
                        self._counts[k][c] = v
                else:
                    self._counts[k] = merged
        self.n += other.n
        self._tail = other._tail
        return self


def count_split(digits: Sequence[int] | np.ndarray, base: int, max_length: int,
                pieces: int) -> WordCounter:
    """Count ``digits`` in ``pieces`` independent chunks overlapping by ``K - 1`` and merge.

    The pieces are independent, so callers may run them in parallel; this
    helper runs them in order.
    """
    arr = np.asarray(digits, dtype=np.int64)
    starts = len(arr) - (max_length - 1)
    bounds = np.linspace(0, max(starts, 0), pieces + 1).astype(int)
    total = WordCounter(base, max_length)
    for lo, hi in zip(bounds[:-1], bounds[1:]):
        part = WordCounter(base, max_length)
        part.update(arr[lo:hi + max_length - 1])
        total += part
    return total


def _consume(stream: DigitStream, count: int) -> Iterator[np.ndarray]:
    got = 0
    while got < count:
        piece = stream.take(min(_CHUNK, count - got))
        if not len(piece):
            raise StreamExhausted(count, got)
        got += len(piece)
        yield piece


def count_simple(stream: DigitStream | Iterable[int], r: int, n: int) -> int:
    """``#{i <= n : a_i = r}``."""
    stream = _as_stream(stream)
    if not 0 <= r < stream.base:
        raise InvalidDigit(r, stream.base)
    return sum(int(np.count_nonzero(piece == r)) for piece in _consume(stream, n))


def count_word(stream: DigitStream | Iterable[int], word: DigitWord, n: int) -> int:
    """Occurrences of ``word`` starting at positions ``1..n`` (overlaps included)."""
    stream = _as_stream(stream, word.base)
    if word.base != stream.base:
        raise BaseMismatch(stream.base, word.base)
    k = len(word)
    if k == 0:
        raise ValueError("word must be non-empty")
    if n <= 0:
        return 0
    target = word.code()
    b = stream.base
    total = 0
    tail = np.empty(0, dtype=np.int64)
    for piece in _consume(stream, n + k - 1):
        buf = np.concatenate((tail, piece))
        starts = len(buf) - (k - 1)
        if starts > 0:
            codes = buf[:starts].copy()
            for j in range(1, k):
                codes *= b
                codes += buf[j:j + starts]
            total += int(np.count_nonzero(codes == target))
            tail = buf[starts:]
        else:
            tail = buf
    return total


def _as_stream(stream, base: int = 10) -> DigitStream:
    if isinstance(stream, DigitStream):
        return stream
    return SequenceDigits(stream, base)


@dataclass(frozen=True)
class ReportRow:
    word: DigitWord
    count: int
    frequency: Fraction
    target: Fraction
    deviation: Fraction


@dataclass(frozen=True)
class NormalityReport:
    """Empirical word frequencies over ``n`` start positions against ``target``.

    ``counts[k-1]`` maps word codes of length ``k`` to their nonzero counts;
    :attr:`rows` synthesizes the zero rows.
    """

    base: int
    max_length: int
    n: int
    target: DigitDistribution
    counts: tuple[dict[int, int], ...] = field(repr=False)
    description: str = ""

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("report needs n >= 1")

    def count(self, word: DigitWord) -> int:
        return self.counts[len(word) - 1].get(word.code(), 0)

    def rows_for(self, k: int) -> Iterator[ReportRow]:
        table = self.counts[k - 1]
        n = self.n
        for code, target in enumerate(self.target.word_probabilities(k)):
            c = table.get(code, 0)
            freq = Fraction(c, n)
            yield ReportRow(DigitWord.from_code(code, k, self.base), c, freq, target,
                            abs(freq - target))

    @property
    def rows(self) -> Iterator[ReportRow]:
        for k in range(1, self.max_length + 1):
            yield from self.rows_for(k)

    def _worst(self, k: int) -> tuple[Fraction, int]:
        table, n = self.counts[k - 1], self.n
        best, arg = Fraction(-1), 0
        for code, target in enumerate(self.target.word_probabilities(k)):
            dev = abs(Fraction(table.get(code, 0), n) - target)
            if dev > best:
                best, arg = dev, code
        return best, arg

    @property
    def max_deviation_by_length(self) -> tuple[Fraction, ...]:
        return tuple(self._worst(k)[0] for k in range(1, self.max_length + 1))

    @property
    def max_deviation(self) -> Fraction:
        return max(self.max_deviation_by_length)

    def worst_word(self) -> ReportRow:
        best = None
        for k in range(1, self.max_length + 1):
            dev, code = self._worst(k)
            if best is None or dev > best[0]:
                best = (dev, k, code)
        dev, k, code = best
        word = DigitWord.from_code(code, k, self.base)
        c = self.count(word)
        return ReportRow(word, c, Fraction(c, self.n), word_probability(self.target, word), dev)


def build_report(stream: DigitStream, n: int, max_length: int, target: DigitDistribution, *,
                 table_bound: int = DEFAULT_TABLE_BOUND, storage: str = "auto") -> NormalityReport:
    """Count every word of length ``1..K`` in one pass over ``n + K - 1`` digits."""
    if n < 1 or max_length < 1:
        raise ValueError("need n >= 1 and K >= 1")
    if stream.base != target.base:
        raise BaseMismatch(stream.base, target.base)
    if stream.base**max_length > table_bound:
        raise ExplosiveK(f"{stream.base}^{max_length} report rows exceed the bound {table_bound}")
    counter = WordCounter(stream.base, max_length, storage=storage, table_bound=table_bound)
    for piece in _consume(stream, n + max_length - 1):
        counter.update(piece)
    counts = tuple(counter.nonzero(k) for k in range(1, max_length + 1))
    return NormalityReport(stream.base, max_length, counter.n, target, counts,
                           getattr(stream, "description", ""))


@dataclass(frozen=True)
class Verdict:
    """Outcome of a finite-depth check; ``witness`` is the worst word when it fails."""

    normal: bool
    epsilon: Fraction
    n: int
    max_length: int
    max_deviation: Fraction
    witness: ReportRow | None = None

    def __bool__(self) -> bool:
        return self.normal


def is_eps_normal(report: NormalityReport, epsilon: Fraction) -> Verdict:
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    worst = report.worst_word()
    ok = worst.deviation <= epsilon
    return Verdict(ok, epsilon, report.n, report.max_length, worst.deviation,
                   None if ok else worst)


def format_report(report: NormalityReport, verdict: Verdict | None = None, *,
                  rows: bool = True) -> str:
    """Tab-separated rendering.

    Layout: a ``#`` header line with base, K, n (and epsilon when a verdict is
    given); a column line ``word count frequency target deviation``; one row
    per word, all lengths, in code order; then ``maxdev k=<k> <dev>`` per
    length, ``maxdev all <dev>``, and ``eps-normal: yes`` or
    ``eps-normal: no <word>``.  Every number is an exact rational.
    """
    head = f"# base={report.base} K={report.max_length} n={report.n}"
    if verdict is not None:
        head += f" epsilon={format_rational(verdict.epsilon)}"
    if report.description:
        head += f" source={report.description}"
    lines = [head]
    if rows:
        lines.append("word\tcount\tfrequency\ttarget\tdeviation")
        for row in report.rows:
            lines.append("\t".join((str(row.word), str(row.count), format_rational(row.frequency),
                                    format_rational(row.target), format_rational(row.deviation))))
    devs = report.max_deviation_by_length
    for k, dev in enumerate(devs, start=1):
        lines.append(f"maxdev k={k} {format_rational(dev)}")
    lines.append(f"maxdev all {format_rational(max(devs))}")
    if verdict is not None:
        if verdict.normal:
            lines.append("eps-normal: yes")
        else:
            lines.append(f"eps-normal: no {verdict.witness.word}")
    return "\n".join(lines) + "\n"
