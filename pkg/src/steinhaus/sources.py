"""Digit streams: expansions of rationals and square roots, i.i.d. samples,
the synthetic ``a0aa0aaa0...`` sequence, and files.

Every stream is a stateful, single-consumer iterator of ints.  Bulk consumers
should call :meth:`DigitStream.take`, which returns numpy ``int64`` arrays and
avoids per-digit Python overhead where the source allows it.

Sampling
--------
:func:`sample_stream` draws raw 64-bit words from the counter-based
Philox-4x64-10 generator (``numpy.random.Philox``) keyed by the seed, with the
counter starting at zero.  Each word is reduced to a uniform integer ``u`` in
``[0, L)`` by rejection, ``L`` being the least common denominator of the digit
probabilities, and mapped to the first digit ``r`` with
``u < L * (p_0 + ... + p_r)``.  Digit probabilities are therefore exact.  This
algorithm is part of the reproducibility contract; do not change it.
"""

from __future__ import annotations

import bisect
import math
import os
from fractions import Fraction
from typing import Iterable, Iterator

import numpy as np

from .alphabet import (
    DigitDistribution,
    check_base,
    int_to_digits,
    load_distribution,
    parse_rational,
)
from .errors import (
    BaseMismatch,
    DegenerateDigit,
    InvalidDigit,
    NotANumber,
    OutOfRange,
    ParseError,
    PerfectSquare,
    StreamExhausted,
)

__all__ = [
    "DigitStream",
    "SequenceDigits",
    "RationalDigits",
    "SqrtDigits",
    "SampledDigits",
    "SteinhausDigits",
    "FileDigits",
    "digits_of",
    "rational_digits",
    "sqrt_digits",
    "sample_stream",
    "steinhaus_example_stream",
    "file_stream",
    "open_source",
    "MAX_SEED",
]

MAX_SEED = 2**64 - 1
_EMPTY = np.empty(0, dtype=np.int64)


class DigitStream:
    """Base class.  Subclasses implement :meth:`_produce`.

    ``_produce(hint)`` returns a non-empty array of the next digits (any length,
    ideally about ``hint``) or an empty array once the source is exhausted.
    Surplus digits are buffered here, so the digits a caller sees never depend
    on how it slices its reads.
    """

    description = "digits"
    length: int | None = None

    def __init__(self, base: int):
        self.base = check_base(base)
        self._buf = _EMPTY
        self._consumed = 0
        self._done = False

    def _produce(self, hint: int) -> np.ndarray:
        raise NotImplementedError

    @property
    def consumed(self) -> int:
        """Number of digits handed out so far."""
        return self._consumed

    def take(self, n: int) -> np.ndarray:
        """Up to ``n`` further digits; fewer only if the stream ends."""
        if n < 0:
            raise ValueError("n must be non-negative")
        parts = []
        have = 0
        if len(self._buf):
            head = self._buf[:n]
            self._buf = self._buf[n:]
            parts.append(head)
            have = len(head)
        while have < n and not self._done:
            chunk = np.asarray(self._produce(n - have), dtype=np.int64)
            if not len(chunk):
                self._done = True
                break
            need = n - have
            if len(chunk) > need:
                self._buf = chunk[need:]
                chunk = chunk[:need]
            parts.append(chunk)
            have += len(chunk)
        out = np.concatenate(parts) if len(parts) > 1 else (parts[0] if parts else _EMPTY)
        self._consumed += len(out)
        return out

    def read(self, n: int) -> np.ndarray:
        """Exactly ``n`` digits or :class:`StreamExhausted`."""
        out = self.take(n)
        if len(out) < n:
            raise StreamExhausted(n, len(out))
        return out

    def chunks(self, n: int, chunk_size: int = 1 << 16) -> Iterator[np.ndarray]:
        """Yield exactly ``n`` digits in pieces of at most ``chunk_size``."""
        left = n
        while left > 0:
            piece = self.read(min(left, chunk_size))
            left -= len(piece)
            yield piece

    def __iter__(self) -> Iterator[int]:
        return self

    def __next__(self) -> int:
        if not len(self._buf):
            if self._done:
                raise StopIteration
            self._buf = np.asarray(self._produce(256), dtype=np.int64)
            if not len(self._buf):
                self._done = True
                raise StopIteration
        d = int(self._buf[0])
        self._buf = self._buf[1:]
        self._consumed += 1
        return d

    def __repr__(self) -> str:
        return f"<{type(self).__name__} base={self.base} {self.description}>"


class SequenceDigits(DigitStream):
    """A finite stream over an in-memory sequence."""

    def __init__(self, digits: Iterable[int], base: int = 10):
        super().__init__(base)
        arr = np.asarray(list(digits) if not isinstance(digits, np.ndarray) else digits,
                         dtype=np.int64).ravel()
        bad = np.flatnonzero((arr < 0) | (arr >= base))
        if len(bad):
            raise InvalidDigit(int(arr[bad[0]]), base, int(bad[0]) + 1)
        self._data = arr
        self.length = len(arr)
        self.description = f"sequence of {len(arr)} digits"

    def _produce(self, hint: int) -> np.ndarray:
        data, self._data = self._data, _EMPTY
        return data


class RationalDigits(DigitStream):
    """Canonical expansion of a rational in [0, 1) by long division.

    Terminating expansions continue with zeros, never with repeated ``base-1``.
    """

    def __init__(self, x: Fraction, base: int = 10):
        super().__init__(base)
        x = Fraction(x)
        if not 0 <= x < 1:
            raise OutOfRange(f"{x} is outside [0, 1)")
        self.value = x
        self._num = x.numerator
        self._den = x.denominator
        if x.denominator.bit_length() < 256:
            self.description = f"rational {x}"
        else:
            self.description = f"rational with a {x.denominator.bit_length()}-bit denominator"
        self._terminating = _terminating_length(x.denominator, base)

    def _produce(self, hint: int) -> np.ndarray:
        hint = max(hint, 1)
        if self._terminating is not None:
            # den divides b^L: the whole expansion is the L-digit word of num * b^L / den
            L, self._terminating = self._terminating, None
            if L:
                scaled = self._num * (self.base**L // self._den)
                self._num = 0
                return np.array(int_to_digits(scaled, self.base, L), dtype=np.int64)
        num, den, b = self._num, self._den, self.base
        out = np.zeros(hint, dtype=np.int64)
        for i in range(hint):
            if not num:
                break
            out[i], num = divmod(num * b, den)
        self._num = num
        return out


def _terminating_length(den: int, base: int) -> int | None:
    """Least ``L`` with ``den | base**L``, or ``None`` if there is none."""
    if den == 1:
        return 0
    hi = den.bit_length()  # each prime of den divides base, so L <= log2(den)
    if pow(base, hi, den):
        return None
    lo = 0
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if pow(base, mid, den):
            lo = mid
        else:
            hi = mid
    return hi


class SqrtDigits(DigitStream):
    """Fractional digits of ``sqrt(m)``.

    With ``s_k = isqrt(m * b^(2k))`` the ``k``-th digit is ``s_k mod b``.  The
    stream keeps ``s_k`` and the remainder ``m b^(2k) - s_k^2`` and extends
    ``s_k`` by one digit per step instead of recomputing the root.
    """

    def __init__(self, m: int, base: int = 10):
        super().__init__(base)
        if isinstance(m, bool) or not isinstance(m, int) or m < 2:
            raise NotANumber(f"need an integer m >= 2, got {m!r}")
        s = math.isqrt(m)
        if s * s == m:
            raise PerfectSquare(f"{m} = {s}^2 has no fractional digits")
        self.m = m
        self._root = s
        self._rem = m - s * s
        self.description = f"sqrt({m})"

    @property
    def root(self) -> int:
        """Current ``s_k`` (integer part followed by the digits produced so far)."""
        return self._root

    def _produce(self, hint: int) -> np.ndarray:
        hint = max(hint, 1)
        b = self.base
        b2 = b * b
        s, rem = self._root, self._rem
        out = np.empty(hint, dtype=np.int64)
        for i in range(hint):
            target = rem * b2
            twice = 2 * b * s
            d = min(b - 1, target // twice)
            while d * (twice + d) > target:
                d -= 1
            rem = target - d * (twice + d)
            s = s * b + d
            out[i] = d
        self._root, self._rem = s, rem
        return out


class SampledDigits(DigitStream):
    """I.i.d. digits with law ``dist``; see the module docstring for the algorithm."""

    _BLOCK = 1 << 14

    def __init__(self, dist: DigitDistribution, seed: int):
        super().__init__(dist.base)
        if isinstance(seed, bool) or not isinstance(seed, int) or not 0 <= seed <= MAX_SEED:
            raise OutOfRange(f"seed must be an integer in [0, 2^64), got {seed!r}")
        self.dist = dist
        self.seed = seed
        self.description = f"sample seed={seed}"
        self._range = dist.common_denominator
        self._cum = dist.cumulative_numerators
        self._bitgen = np.random.Philox(key=seed)
        if self._range == 1:
            self._constant = dist.support[0]
        else:
            self._constant = None
        self._words = -(-(self._range - 1).bit_length() // 64)

    def inverse_cdf(self, u: int) -> int:
        """Digit assigned to the uniform integer ``u`` in ``[0, L)``."""
        if not 0 <= u < self._range:
            raise OutOfRange(f"u = {u} outside [0, {self._range})")
        return bisect.bisect_right(self._cum, u)

    def _uniform(self, count: int) -> np.ndarray:
        L = self._range
        if self._words == 1:
            raw = self._bitgen.random_raw(count)
            span = 1 << 64
            limit = np.uint64(span - span % L) if span % L else None
            if limit is not None:
                raw = raw[raw < limit]
            return raw % np.uint64(L)
        # probabilities with denominators beyond 2^64: multi-word Python path
        span = 1 << (64 * self._words)
        limit = span - span % L
        raw = self._bitgen.random_raw(count * self._words).tolist()
        out = []
        for i in range(0, len(raw), self._words):
            v = 0
            for w in raw[i:i + self._words]:
                v = (v << 64) | w
            if v < limit:
                out.append(v % L)
        return np.array(out, dtype=object)

    def _produce(self, hint: int) -> np.ndarray:
        n = max(hint, 1)
        if self._constant is not None:
            return np.full(n, self._constant, dtype=np.int64)
        u = self._uniform(min(max(n, 64), self._BLOCK))
        if u.dtype == object:
            cum = np.array(self._cum, dtype=object)
        else:
            cum = np.array(self._cum, dtype=np.uint64)
        return np.searchsorted(cum, u, side="right").astype(np.int64)


class SteinhausDigits(DigitStream):
    """``a, 0, a, a, 0, a, a, a, 0, ...``: block ``i`` is ``i`` copies of ``a`` then a 0."""

    def __init__(self, a: int, base: int = 10):
        super().__init__(base)
        if not 0 <= a < base:
            raise InvalidDigit(a, base)
        if a == 0:
            raise DegenerateDigit("a = 0 collapses to the all-zeros sequence")
        self.a = a
        self._block = 1
        self.description = f"a0aa0aaa0 pattern, a={a}"

    def _produce(self, hint: int) -> np.ndarray:
        parts, have = [], 0
        while have < max(hint, 1):
            block = np.full(self._block + 1, self.a, dtype=np.int64)
            block[-1] = 0
            parts.append(block)
            have += len(block)
            self._block += 1
        return np.concatenate(parts)


class FileDigits(DigitStream):
    """Digits read from a text file.

    Bases up to 10 use one ASCII character per digit, whitespace ignored.
    Larger bases use whitespace-separated decimal integers.
    """

    _CHUNK = 1 << 16

    def __init__(self, path: str | os.PathLike, base: int = 10):
        super().__init__(base)
        self.path = os.fspath(path)
        self._fh = open(self.path, "rb")
        self._pending = b""
        self._position = 0
        self.description = f"file {self.path}"

    def close(self) -> None:
        self._fh.close()

    def __del__(self):
        fh = getattr(self, "_fh", None)
        if fh is not None:
            fh.close()

    def _check(self, arr: np.ndarray, raw: bytes | None = None) -> np.ndarray:
        bad = np.flatnonzero((arr < 0) | (arr >= self.base))
        if len(bad):
            i = int(bad[0])
            shown = chr(raw[i]) if raw is not None else int(arr[i])
            raise InvalidDigit(shown, self.base, self._position + i + 1)
        self._position += len(arr)
        return arr

    def _produce(self, hint: int) -> np.ndarray:
        while True:
            data = self._fh.read(self._CHUNK)
            at_eof = not data
            if self.base <= 10:
                if at_eof:
                    return _EMPTY
                raw = bytes(data).translate(None, b" \t\r\n\v\f")
                if not raw:
                    continue
                arr = np.frombuffer(raw, dtype=np.uint8).astype(np.int64) - ord("0")
                return self._check(arr, raw)
            text = self._pending + data
            if at_eof:
                tokens, self._pending = text.split(), b""
            else:
                cut = max(text.rfind(ws) for ws in (b" ", b"\t", b"\n", b"\r"))
                if cut < 0:
                    self._pending = text
                    continue
                tokens, self._pending = text[:cut].split(), text[cut:]
            if not tokens:
                if at_eof:
                    return _EMPTY
                continue
            try:
                arr = np.array([int(t) for t in tokens], dtype=np.int64)
            except ValueError:
                bad = next(i for i, t in enumerate(tokens) if not t.isdigit())
                raise InvalidDigit(tokens[bad].decode(errors="replace"), self.base,
                                   self._position + bad + 1) from None
            return self._check(arr)


# -- factories -----------------------------------------------------------------

def digits_of(digits: Iterable[int], base: int = 10) -> SequenceDigits:
    return SequenceDigits(digits, base)


def rational_digits(x: Fraction, base: int = 10) -> RationalDigits:
    return RationalDigits(x, base)


def sqrt_digits(m: int, base: int = 10) -> SqrtDigits:
    return SqrtDigits(m, base)


def sample_stream(dist: DigitDistribution, seed: int) -> SampledDigits:
    return SampledDigits(dist, seed)


def steinhaus_example_stream(a: int, base: int = 10) -> SteinhausDigits:
    return SteinhausDigits(a, base)


def file_stream(path: str | os.PathLike, base: int = 10) -> FileDigits:
    return FileDigits(path, base)


def open_source(source: str, base: int = 10) -> DigitStream:
    """Build a stream from a ``kind:args`` string.

    Recognised kinds: ``rational:<n/d>`` (reduced mod 1), ``sqrt:<m>``,
    ``sample:<distfile>:<seed>``, ``steinhaus:<a>``, ``file:<path>``.
    """
    kind, sep, arg = source.partition(":")
    if not sep:
        raise ParseError(f"source must look like kind:args, got {source!r}")
    if kind == "rational":
        x = parse_rational(arg)
        if x < 0:
            raise OutOfRange(f"{x} is negative")
        return RationalDigits(x - (x.numerator // x.denominator), base)
    if kind == "sqrt":
        return SqrtDigits(_parse_int(arg, "m"), base)
    if kind == "sample":
        path, sep, seed = arg.rpartition(":")
        if not sep:
            raise ParseError(f"sample source needs <distfile>:<seed>, got {arg!r}")
        dist = load_distribution(path)
        if dist.base != base:
            raise BaseMismatch(base, dist.base)
        return SampledDigits(dist, _parse_int(seed, "seed"))
    if kind == "steinhaus":
        return SteinhausDigits(_parse_int(arg, "a"), base)
    if kind == "file":
        return FileDigits(arg, base)
    raise ParseError(f"unknown source kind {kind!r}")


def _parse_int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {text!r}") from None
