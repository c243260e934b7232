"""Independent reference computations used to check the library.

Nothing here calls the code under test except for plain value types.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import product
from typing import Sequence


def prefix_masses(probs: Sequence[Fraction], depth: int) -> list[tuple[Fraction, Fraction]]:
    """``(left end, mass)`` for every depth-``depth`` prefix cylinder, in lexicographic order."""
    base = len(probs)
    scale = Fraction(1, base**depth)
    out = []
    for idx, digits in enumerate(product(range(base), repeat=depth)):
        mass = Fraction(1)
        for d in digits:
            mass *= probs[d]
        out.append((idx * scale, mass))
    return out


def sandwich(a: Fraction, b: Fraction, probs: Sequence[Fraction], depth: int):
    """Lower/upper bounds and the straddling mass for the image measure of ``[a, b]``.

    Each depth-``depth`` cylinder maps onto ``[left, left + base^-depth]``.  A
    cylinder whose image sits inside ``[a, b]`` contributes to both bounds; one
    whose image meets ``[a, b]`` without sitting inside only to the upper bound.
    """
    width = Fraction(1, len(probs) ** depth)
    inside = straddle = Fraction(0)
    for left, mass in prefix_masses(probs, depth):
        right = left + width
        if a <= left and right <= b:
            inside += mass
        elif right >= a and left <= b:
            straddle += mass
    return inside, inside + straddle, straddle


def grid_measure(a: Fraction, b: Fraction, probs: Sequence[Fraction], depth: int) -> Fraction:
    """Sum of masses of depth-``depth`` cylinders with left end in ``[a, b)``.

    Equals the image measure of ``[a, b]`` when both endpoints lie on the
    depth grid and no single sequence carries positive mass.
    """
    return sum((m for left, m in prefix_masses(probs, depth) if a <= left < b), Fraction(0))


def bisect_isqrt(n: int) -> int:
    lo, hi = 0, 1
    while hi * hi <= n:
        hi *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if mid * mid <= n:
            lo = mid
        else:
            hi = mid
    return lo


def naive_word_counts(digits: Sequence[int], max_length: int) -> list[Counter]:
    """Counts of words of each length over starts ``0 .. len - K`` (all lengths share them)."""
    n = len(digits) - max_length + 1
    out = [Counter() for _ in range(max_length)]
    for i in range(max(n, 0)):
        for k in range(1, max_length + 1):
            out[k - 1][tuple(digits[i:i + k])] += 1
    return out
