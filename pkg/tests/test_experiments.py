from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from steinhaus.alphabet import degenerate_distribution, make_distribution, uniform_distribution
from steinhaus.errors import OutOfRange, ParseError
from steinhaus.experiments import (
    CampaignConfig,
    derive_seed,
    format_result,
    normal_number_demo,
    parse_result,
    run_campaign,
    run_sample,
)

from .conftest import weighted_nine

MASK = (1 << 64) - 1


def splitmix64_reference(state: int) -> int:
    """Textbook SplitMix64 step: advance the state, then mix it."""
    state = (state + 0x9E3779B97F4A7C15) & MASK
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
    return z ^ (z >> 31)


class TestSeeds:
    def test_matches_splitmix_sequence(self):
        # the i-th output of a SplitMix64 generator started at the base seed
        state, outputs = 1234, []
        for _ in range(5):
            outputs.append(splitmix64_reference(state))
            state = (state + 0x9E3779B97F4A7C15) & MASK
        assert [derive_seed(1234, i) for i in range(5)] == outputs

    def test_known_value(self):
        # first output of SplitMix64 seeded with 0
        assert derive_seed(0, 0) == 0xE220A8397B1DCDAF

    @given(st.integers(0, MASK), st.integers(0, 10**6), st.integers(0, 10**6))
    def test_injective_in_index(self, seed, i, j):
        if i != j:
            assert derive_seed(seed, i) != derive_seed(seed, j)

    def test_no_collisions_in_a_campaign(self):
        seeds = {derive_seed(42, i) for i in range(20000)}
        assert len(seeds) == 20000


def small_config(**kw):
    args = dict(dist=uniform_distribution(10), samples=6, length=2000, max_length=1,
                epsilon=Fraction(1, 20), seed=5)
    args.update(kw)
    return CampaignConfig(**args)


class TestCampaign:
    def test_reproducible(self):
        cfg = small_config()
        assert run_campaign(cfg) == run_campaign(cfg)
        assert format_result(run_campaign(cfg)) == format_result(run_campaign(cfg))

    def test_different_seed_changes_samples(self):
        a = run_campaign(small_config(seed=1))
        b = run_campaign(small_config(seed=2))
        assert [s.seed for s in a.samples] != [s.seed for s in b.samples]

    def test_sample_uses_derived_seed(self):
        cfg = small_config()
        v = run_sample(cfg, 3)
        assert v.seed == derive_seed(5, 3)
        assert run_campaign(cfg).samples[3] == v

    def test_workers_match_sequential(self):
        cfg = small_config(samples=7)
        assert run_campaign(cfg, workers=3) == run_campaign(cfg, workers=1)

    def test_aggregate_consistency(self):
        result = run_campaign(small_config(epsilon=Fraction(1, 200)))
        assert result.normal_count == sum(s.normal for s in result.samples)
        assert result.fraction == Fraction(result.normal_count, 6)
        for s in result.samples:
            assert s.normal == (s.max_deviation <= Fraction(1, 200))

    def test_degenerate_distribution_is_always_normal(self):
        result = run_campaign(small_config(dist=degenerate_distribution(10, 9), max_length=3))
        assert result.fraction == 1
        assert all(s.max_deviation == 0 for s in result.samples)

    @pytest.mark.parametrize("kw", [dict(samples=0), dict(length=0), dict(max_length=0),
                                    dict(epsilon=0), dict(seed=-1), dict(seed=2**64)])
    def test_config_rejects(self, kw):
        with pytest.raises(OutOfRange):
            small_config(**kw)


class TestResultFormat:
    def test_round_trip(self):
        result = run_campaign(small_config(dist=weighted_nine()))
        text = format_result(result)
        assert parse_result(text) == result
        assert text.splitlines()[0] == "# steinhaus montecarlo result v1"

    def test_fraction_line_is_unreduced(self):
        result = run_campaign(small_config(samples=4, dist=degenerate_distribution(10, 0)))
        assert "fraction: 4/4" in format_result(result).splitlines()

    def test_rejects_tampering(self):
        text = format_result(run_campaign(small_config()))
        with pytest.raises(ParseError):
            parse_result(text.replace("fraction: ", "fraction: 1"))
        with pytest.raises(ParseError):
            parse_result("\n".join(text.splitlines()[:-1]))
        with pytest.raises(ParseError):
            parse_result(text.replace("# steinhaus", "# other"))
        with pytest.raises(ParseError):
            parse_result(text.replace("seed: 5\n", ""))


class TestDemo:
    def test_case_a(self):
        result = normal_number_demo(degenerate_distribution(10, 9), 1000, 1, Fraction(1, 100))
        assert result.case == "a"
        assert result.normal is None
        assert result.verdict == ("normal-number demo: case (a), canonical representative excluded "
                                  "(expansions ending in repeated 9s are not canonical)")

    def test_case_b_weighted(self):
        result = normal_number_demo(weighted_nine(), 20000, 1, Fraction(1, 50), seed=3)
        assert result.case == "b"
        assert result.normal is True
        assert result.verdict == "normal-number demo: case (b), sample ε-normal: yes"

    def test_case_b_degenerate_zero(self):
        # p_0 = 1 samples the zero sequence, the canonical expansion of 0
        result = normal_number_demo(degenerate_distribution(10, 0), 500, 2, Fraction(1, 100))
        assert result.case == "b"
        assert result.normal is True

    def test_case_b_other_base(self):
        dist = make_distribution(3, ["1/2", "1/3", "1/6"])
        result = normal_number_demo(dist, 5000, 2, Fraction(1, 20), seed=9)
        assert result.case == "b"
        assert str(result).endswith("sample ε-normal: yes")
