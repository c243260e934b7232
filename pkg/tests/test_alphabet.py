from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from steinhaus.alphabet import (
    DigitWord,
    all_words,
    degenerate_distribution,
    digits_to_int,
    format_distribution,
    int_to_digits,
    load_distribution,
    make_distribution,
    parse_distribution,
    parse_rational,
    save_distribution,
    uniform_distribution,
    word_probability,
)
from steinhaus.errors import (
    BaseMismatch,
    InvalidBase,
    InvalidDigit,
    NegativeMass,
    NonUnitMass,
    ParseError,
    WrongArity,
)

from .conftest import distributions, weighted_nine


def test_make_distribution_examples():
    u = make_distribution(10, [Fraction(1, 10)] * 10)
    assert u == uniform_distribution(10)
    d = make_distribution(10, [0] * 9 + [1])
    assert d.support == (9,)
    w = weighted_nine()
    assert w[9] == Fraction(3, 10)
    assert w[0] == Fraction(7, 90)


@pytest.mark.parametrize(
    "probs, exc",
    [
        (["1/2", "1/2", "1/2"], NonUnitMass),
        (["3/2", "-1/2"], NegativeMass),
        (["1/2", "1/2"], WrongArity),
        (["1/3", "1/3", "1/2"], NonUnitMass),
    ],
)
def test_make_distribution_rejects(probs, exc):
    base = 3 if exc is not NegativeMass else 2
    with pytest.raises(exc):
        make_distribution(base, probs)


def test_floats_refused():
    with pytest.raises(TypeError):
        make_distribution(2, [0.5, 0.5])


@pytest.mark.parametrize("base", [2, 3, 10])
def test_uniform(base):
    dist = uniform_distribution(base)
    assert all(p == Fraction(1, base) for p in dist.probabilities)
    assert dist.is_uniform


@pytest.mark.parametrize("base", [0, 1, 2**16 + 1, 2.0, True])
def test_bad_base(base):
    with pytest.raises(InvalidBase):
        uniform_distribution(base)


def test_word_probability_examples():
    assert word_probability(uniform_distribution(10), DigitWord.from_string("37")) == Fraction(1, 100)
    assert word_probability(degenerate_distribution(10, 9), DigitWord.from_string("99")) == 1
    assert word_probability(weighted_nine(), DigitWord.from_string("90")) == Fraction(7, 300)
    assert word_probability(weighted_nine(), DigitWord((), 10)) == 1


def test_word_probability_base_mismatch():
    with pytest.raises(BaseMismatch):
        word_probability(uniform_distribution(10), DigitWord((1,), 2))


def test_digit_word_validation():
    with pytest.raises(InvalidDigit) as info:
        DigitWord((0, 1, 2), 2)
    assert info.value.position == 3
    assert str(DigitWord.from_string("10 3 7", 16)) == "10 3 7"
    assert DigitWord.from_string("a3", 16).digits == (10, 3)


@given(distributions())
def test_single_digit_probabilities_sum_to_one(dist):
    total = sum(word_probability(dist, DigitWord((r,), dist.base)) for r in range(dist.base))
    assert total == 1


@given(distributions(), st.data())
def test_word_probability_multiplicative(dist, data):
    digits = st.lists(st.integers(0, dist.base - 1), max_size=6)
    u = DigitWord(tuple(data.draw(digits)), dist.base)
    v = DigitWord(tuple(data.draw(digits)), dist.base)
    assert word_probability(dist, u + v) == word_probability(dist, u) * word_probability(dist, v)


@given(distributions(), st.integers(0, 3))
def test_word_probabilities_table_matches_products(dist, k):
    table = dist.word_probabilities(k)
    assert len(table) == dist.base**k
    for word, p in zip(all_words(k, dist.base), table):
        assert word_probability(dist, word) == p
    assert sum(table) == 1


@given(st.integers(2, 40), st.lists(st.integers(0, 39), max_size=300))
def test_digit_int_round_trip(base, raw):
    digits = [d % base for d in raw]
    value = digits_to_int(digits, base)
    assert value == sum(d * base ** (len(digits) - 1 - i) for i, d in enumerate(digits))
    assert int_to_digits(value, base, len(digits)) == digits


def test_cumulative_numerators():
    dist = make_distribution(3, ["1/2", "1/3", "1/6"])
    assert dist.common_denominator == 6
    assert dist.cumulative_numerators == (3, 5, 6)


class TestTextFormat:
    def test_parse_example(self):
        text = "base 10\n3/10 7/90 7/90 7/90 7/90 7/90 7/90 7/90 7/90 7/90\n"
        dist = parse_distribution(text)
        assert dist[0] == Fraction(3, 10)
        assert dist[5] == Fraction(7, 90)

    def test_round_trip(self, tmp_path):
        dist = weighted_nine()
        path = tmp_path / "w9.dist"
        save_distribution(dist, path)
        assert load_distribution(path) == dist
        assert parse_distribution(format_distribution(dist)) == dist

    @pytest.mark.parametrize(
        "text",
        [
            "base 2\n0.5 0.5\n",
            "base 2\n1/2 .5\n",
            "bass 2\n1/2 1/2\n",
            "",
            "base two\n1/2 1/2\n",
            "base 2\n1/0 1/2\n",
        ],
    )
    def test_rejects(self, text):
        with pytest.raises(ParseError):
            parse_distribution(text)

    def test_integer_literals(self):
        assert parse_distribution("base 2\n1 0").support == (0,)
        assert parse_rational("-3/6") == Fraction(-1, 2)
