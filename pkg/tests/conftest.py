from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import strategies as st

from steinhaus import DigitDistribution, make_distribution, uniform_distribution
from steinhaus.measure import FiniteExpansion


def weighted_nine() -> DigitDistribution:
    """3/10 on digit 9, the rest split evenly."""
    return make_distribution(10, ["7/90"] * 9 + ["3/10"])


@pytest.fixture
def uniform10() -> DigitDistribution:
    return uniform_distribution(10)


@pytest.fixture
def w9() -> DigitDistribution:
    return weighted_nine()


@st.composite
def distributions(draw, base: int | None = None, allow_zero: bool = True):
    if base is None:
        base = draw(st.integers(2, 6))
    lo = 0 if allow_zero else 1
    weights = draw(st.lists(st.integers(lo, 12), min_size=base, max_size=base))
    if not any(weights):
        weights[draw(st.integers(0, base - 1))] = 1
    total = sum(weights)
    return make_distribution(base, [Fraction(w, total) for w in weights])


@st.composite
def expansions(draw, base: int, max_depth: int = 6):
    depth = draw(st.integers(0, max_depth))
    digits = draw(st.lists(st.integers(0, base - 1), min_size=depth, max_size=depth))
    return FiniteExpansion.from_string(" ".join(map(str, digits)), base) if digits \
        else FiniteExpansion.from_rational(0, base)
