"""Command-line front end: ``steinhaus <subcommand> ...``.

Exit status is 0 on success, 1 on a domain error (message on stderr) and 2 on
a usage error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Sequence

from .alphabet import DigitDistribution, format_rational, load_distribution, parse_rational
from .errors import BaseMismatch, OutOfRange, SteinhausError
from .experiments import CampaignConfig, format_result, normal_number_demo, run_campaign
from .measure import interval_enclosure, interval_measure, parse_point, point_measure
from .normality import build_report, format_report, is_eps_normal
from .sources import open_source

LINE_WIDTH = 80


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except SteinhausError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text}")
    return value


def _seed(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer seed: {text!r}") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must lie in [0, 2^64)")
    return value


def _approx(x: Fraction, places: int) -> str:
    """Round-half-up decimal string computed from the exact value."""
    scaled = (x * 10**places * 2 + 1) // 2
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), 10**places)
    return f"{sign}{whole}.{frac:0{places}d}" if places else f"{sign}{whole}"


def _load_dist(path: str, base: int) -> DigitDistribution:
    dist = load_distribution(path)
    if dist.base != base:
        raise BaseMismatch(base, dist.base)
    return dist


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--base", type=int, default=argparse.SUPPRESS,
                        help="alphabet size b (default 10)")
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS,
                        help="print only the essential result lines")

    parser = argparse.ArgumentParser(prog="steinhaus", parents=[common],
                                     description="Weighted digit measures and normality statistics.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measure", parents=[common], help="exact measure of an interval or point")
    p.add_argument("--dist", required=True, help="distribution file")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--interval", nargs=2, metavar=("A", "B"),
                       help="closed interval; endpoints n/d or 0.<digits>")
    group.add_argument("--point", metavar="X", help="point mass at X")
    p.add_argument("--depth", type=_positive_int,
                   help="for non-terminating endpoints: print lower/upper bounds at this depth")
    p.add_argument("--decimal", type=int, metavar="K", help="append a K-digit approximation")

    p = sub.add_parser("digits", parents=[common], help="print digits of a source")
    p.add_argument("--source", required=True,
                   help="rational:<n/d> | sqrt:<m> | sample:<distfile>:<seed> | "
                        "steinhaus:<a> | file:<path>")
    p.add_argument("--count", type=_positive_int, required=True)

    p = sub.add_parser("normality", parents=[common], help="word-frequency report for a source")
    p.add_argument("--source", required=True)
    p.add_argument("--dist", required=True, help="target distribution file")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--maxk", type=_positive_int, default=1)
    p.add_argument("--epsilon", type=_rational, default=Fraction(1, 100))

    p = sub.add_parser("montecarlo", parents=[common], help="seeded sampling campaign")
    p.add_argument("--dist", required=True)
    p.add_argument("--m", type=_positive_int, required=True, help="number of samples")
    p.add_argument("--n", type=_positive_int, required=True, help="positions per sample")
    p.add_argument("--maxk", type=_positive_int, default=1)
    p.add_argument("--epsilon", type=_rational, default=Fraction(1, 100))
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--workers", type=_positive_int, default=1)
    p.add_argument("--out", help="write the result file here")

    p = sub.add_parser("demo", parents=[common], help="which case the normal numbers fall in")
    p.add_argument("--dist", required=True)
    p.add_argument("--n", type=_positive_int, default=10**5)
    p.add_argument("--maxk", type=_positive_int, default=2)
    p.add_argument("--epsilon", type=_rational, default=Fraction(1, 100))
    p.add_argument("--seed", type=_seed, default=0)
    return parser


def _cmd_measure(args, out) -> None:
    dist = _load_dist(args.dist, args.base)
    if args.point is not None:
        s = args.point.strip()
        x = parse_point(s, args.base).value() if s.startswith(("0.", ".")) else parse_rational(s)
        value = point_measure(x, dist)
        out.write(_with_decimal(value, args.decimal) + "\n")
        return
    a_text, b_text = args.interval
    if args.depth is not None:
        a, b = (_endpoint_value(t, args.base) for t in (a_text, b_text))
        lower, upper = interval_enclosure(a, b, dist, args.depth)
        out.write(f"lower {_with_decimal(lower, args.decimal)}\n")
        out.write(f"upper {_with_decimal(upper, args.decimal)}\n")
        return
    value = interval_measure(parse_point(a_text, args.base), parse_point(b_text, args.base), dist)
    out.write(_with_decimal(value, args.decimal) + "\n")


def _endpoint_value(text: str, base: int) -> Fraction:
    s = text.strip()
    if s.startswith(("0.", ".")):
        return parse_point(s, base).value()
    x = parse_rational(s)
    if not 0 <= x <= 1:
        raise OutOfRange(f"{x} is outside [0, 1]")
    return x


def _with_decimal(value: Fraction, places: int | None) -> str:
    text = format_rational(value)
    if places is not None:
        text += f" (approx {_approx(value, max(places, 0))})"
    return text


def _cmd_digits(args, out) -> None:
    stream = open_source(args.source, args.base)
    digits = stream.read(args.count)
    if args.base <= 10:
        text = "".join(map(str, digits.tolist()))
        for i in range(0, len(text), LINE_WIDTH):
            out.write(text[i:i + LINE_WIDTH] + "\n")
        return
    line = ""
    for d in map(str, digits.tolist()):
        if line and len(line) + 1 + len(d) > LINE_WIDTH:
            out.write(line + "\n")
            line = d
        else:
            line = f"{line} {d}" if line else d
    if line:
        out.write(line + "\n")


def _cmd_normality(args, out) -> None:
    dist = _load_dist(args.dist, args.base)
    stream = open_source(args.source, args.base)
    report = build_report(stream, args.n, args.maxk, dist)
    verdict = is_eps_normal(report, args.epsilon)
    out.write(format_report(report, verdict, rows=not args.quiet))


def _cmd_montecarlo(args, out) -> None:
    dist = _load_dist(args.dist, args.base)
    config = CampaignConfig(dist, args.m, args.n, args.maxk, args.epsilon, args.seed)
    result = run_campaign(config, workers=args.workers)
    text = format_result(result)
    if args.out:
        with open(args.out, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
    if args.out or args.quiet:
        out.write(f"fraction: {result.normal_count}/{len(result.samples)}\n")
    else:
        out.write(text)


def _cmd_demo(args, out) -> None:
    dist = _load_dist(args.dist, args.base)
    result = normal_number_demo(dist, args.n, args.maxk, args.epsilon, seed=args.seed)
    lines = result.lines[-1:] if args.quiet else result.lines
    out.write("\n".join(lines) + "\n")


_COMMANDS = {
    "measure": _cmd_measure,
    "digits": _cmd_digits,
    "normality": _cmd_normality,
    "montecarlo": _cmd_montecarlo,
    "demo": _cmd_demo,
}


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.base = getattr(args, "base", 10)
    args.quiet = getattr(args, "quiet", False)
    try:
        _COMMANDS[args.command](args, out)
    except (SteinhausError, OSError) as exc:
        err.write(f"steinhaus {args.command}: error: {exc}\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
