"""Seeded Monte Carlo campaigns over sampled digit sequences.

Sample ``i`` of a campaign with base seed ``s`` uses the seed
``derive_seed(s, i)``: the SplitMix64 output function applied to
``s + (i + 1) * 0x9E3779B97F4A7C15 (mod 2^64)``.  The state update is
injective in ``i`` and the output function is a bijection on 64-bit words, so
distinct samples always get distinct seeds.  Changing this function changes
every published result; treat it as frozen.

Result files are plain text::

    # steinhaus montecarlo result v1
    base: 10
    dist: 1/10 1/10 ... 1/10
    m: 200
    n: 100000
    maxk: 1
    epsilon: 1/100
    seed: 42
    fraction: 200/200
    sample 0 seed 1234... normal yes maxdev 29/20000
    ...
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .alphabet import DigitDistribution, DigitWord, format_rational, make_distribution, parse_rational
from .errors import OutOfRange, ParseError
from .normality import build_report, is_eps_normal
from .sources import MAX_SEED, rational_digits, sample_stream
from .measure import point_measure, psi_value

__all__ = [
    "CampaignConfig",
    "SampleVerdict",
    "CampaignResult",
    "derive_seed",
    "run_sample",
    "run_campaign",
    "format_result",
    "parse_result",
    "DemoResult",
    "normal_number_demo",
]

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_HEADER = "# steinhaus montecarlo result v1"


def derive_seed(base_seed: int, index: int) -> int:
    z = (base_seed + (index + 1) * _GOLDEN) & _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


@dataclass(frozen=True)
class CampaignConfig:
    dist: DigitDistribution
    samples: int
    length: int
    max_length: int
    epsilon: Fraction
    seed: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "epsilon", Fraction(self.epsilon))
        if self.samples < 1 or self.length < 1 or self.max_length < 1:
            raise OutOfRange("samples, length and max word length must all be >= 1")
        if self.epsilon <= 0:
            raise OutOfRange("epsilon must be positive")
        if not 0 <= self.seed <= MAX_SEED:
            raise OutOfRange("seed must fit in 64 bits")


@dataclass(frozen=True)
class SampleVerdict:
    index: int
    seed: int
    normal: bool
    max_deviation: Fraction


@dataclass(frozen=True)
class CampaignResult:
    config: CampaignConfig
    samples: tuple[SampleVerdict, ...]

    @property
    def normal_count(self) -> int:
        return sum(s.normal for s in self.samples)

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.normal_count, len(self.samples))


def run_sample(config: CampaignConfig, index: int) -> SampleVerdict:
    seed = derive_seed(config.seed, index)
    report = build_report(sample_stream(config.dist, seed), config.length, config.max_length,
                          config.dist)
    verdict = is_eps_normal(report, config.epsilon)
    return SampleVerdict(index, seed, verdict.normal, verdict.max_deviation)


def _run_block(args: tuple[CampaignConfig, range]) -> list[SampleVerdict]:
    config, indices = args
    return [run_sample(config, i) for i in indices]


def run_campaign(config: CampaignConfig, workers: int | None = 1) -> CampaignResult:
    """Classify ``config.samples`` independent sampled sequences.

    ``workers > 1`` fans samples out to processes; the result is identical to
    the sequential run because every sample owns its seed.  ``workers=None``
    uses all CPUs.
    """
    m = config.samples
    if workers is None:
        workers = os.cpu_count() or 1
    if workers <= 1 or m == 1:
        verdicts = [run_sample(config, i) for i in range(m)]
    else:
        step = -(-m // workers)
        blocks = [(config, range(lo, min(lo + step, m))) for lo in range(0, m, step)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            verdicts = [v for block in pool.map(_run_block, blocks) for v in block]
    return CampaignResult(config, tuple(verdicts))


def format_result(result: CampaignResult) -> str:
    cfg = result.config
    lines = [
        _HEADER,
        f"base: {cfg.dist.base}",
        "dist: " + " ".join(format_rational(p) for p in cfg.dist.probabilities),
        f"m: {cfg.samples}",
        f"n: {cfg.length}",
        f"maxk: {cfg.max_length}",
        f"epsilon: {format_rational(cfg.epsilon)}",
        f"seed: {cfg.seed}",
        f"fraction: {result.normal_count}/{len(result.samples)}",
    ]
    for s in result.samples:
        lines.append(f"sample {s.index} seed {s.seed} normal {'yes' if s.normal else 'no'} "
                     f"maxdev {format_rational(s.max_deviation)}")
    return "\n".join(lines) + "\n"


def parse_result(text: str) -> CampaignResult:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != _HEADER:
        raise ParseError("not a montecarlo result file")
    header: dict[str, str] = {}
    samples = []
    for ln in lines[1:]:
        if ln.startswith("sample "):
            parts = ln.split()
            if len(parts) != 8 or parts[2::2] != ["seed", "normal", "maxdev"]:
                raise ParseError(f"bad sample line {ln!r}")
            if parts[5] not in ("yes", "no"):
                raise ParseError(f"bad verdict in {ln!r}")
            samples.append(SampleVerdict(int(parts[1]), int(parts[3]), parts[5] == "yes",
                                         parse_rational(parts[7])))
            continue
        key, sep, value = ln.partition(":")
        if not sep:
            raise ParseError(f"bad header line {ln!r}")
        header[key.strip()] = value.strip()
    try:
        dist = make_distribution(int(header["base"]), header["dist"].split())
        config = CampaignConfig(dist, int(header["m"]), int(header["n"]), int(header["maxk"]),
                                parse_rational(header["epsilon"]), int(header["seed"]))
        declared = header["fraction"]
    except KeyError as exc:
        raise ParseError(f"missing header field {exc}") from None
    result = CampaignResult(config, tuple(samples))
    if len(samples) != config.samples:
        raise ParseError(f"expected {config.samples} sample lines, found {len(samples)}")
    if declared != f"{result.normal_count}/{len(samples)}":
        raise ParseError(f"fraction {declared} disagrees with the sample lines")
    return result


# -- the two cases for the set of normal numbers ----------------------------

@dataclass(frozen=True)
class DemoResult:
    case: str
    normal: bool | None
    lines: tuple[str, ...]

    @property
    def verdict(self) -> str:
        return self.lines[-1]

    def __str__(self) -> str:
        return "\n".join(self.lines)


def normal_number_demo(dist: DigitDistribution, n: int, max_length: int, epsilon: Fraction,
                       seed: int = 0) -> DemoResult:
    """Illustrate which case the set of normal numbers of ``dist`` falls in.

    If the top digit carries all the mass, almost every sequence is the
    constant top-digit sequence, which maps to 1; the canonical expansion of a
    number may not end in repeated top digits, so no number has that
    expansion and the normal numbers form a null set.  Otherwise a sampled
    sequence is turned into a number, re-expanded canonically, and checked
    for finite-depth normality.
    """
    epsilon = Fraction(epsilon)
    b = dist.base
    top = b - 1
    lines = [f"distribution: {' '.join(format_rational(p) for p in dist.probabilities)}"]
    if dist.probabilities[top] == 1:
        lines += [
            f"p_{top} = 1: almost every sampled sequence is {top},{top},{top},...",
            "its image under the digit map is the number 1, carrying point mass "
            f"{format_rational(point_measure(1, dist))}",
            f"canonical expansions may not end in repeated {top}s, so that sequence is "
            "never the expansion of a number",
            "the set of normal numbers therefore has measure 0",
            "normal-number demo: case (a), canonical representative excluded "
            f"(expansions ending in repeated {top}s are not canonical)",
        ]
        return DemoResult("a", None, tuple(lines))
    total = n + max_length - 1
    sampled = sample_stream(dist, seed).read(total)
    x = psi_value(DigitWord(tuple(sampled.tolist()), b))
    canonical = rational_digits(x, b)
    report = build_report(canonical, n, max_length, dist)
    verdict = is_eps_normal(report, epsilon)
    lines += [
        f"p_{top} = {format_rational(dist.probabilities[top])} < 1: "
        "the set of normal numbers has measure 1",
        f"sampled {total} digits with seed {seed}, re-expanded canonically",
        f"n={report.n} K={max_length} epsilon={format_rational(epsilon)} "
        f"maxdev={format_rational(verdict.max_deviation)}",
        f"normal-number demo: case (b), sample ε-normal: {'yes' if verdict.normal else 'no'}",
    ]
    return DemoResult("b", verdict.normal, tuple(lines))
