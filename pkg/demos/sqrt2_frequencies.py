"""Digit and pair frequencies in the decimal expansion of sqrt(2)."""

from steinhaus import uniform_distribution
from steinhaus.normality import build_report, format_report, is_eps_normal
from steinhaus.sources import sqrt_digits

print("first digits:", "".join(map(str, sqrt_digits(2).read(40).tolist())))

# %% single digits and pairs over 20000 positions
report = build_report(sqrt_digits(2), 20000, 2, uniform_distribution(10))
verdict = is_eps_normal(report, "1/100")
print(format_report(report, verdict, rows=False))

# %% the digits furthest from 1/10
rows = sorted(report.rows_for(1), key=lambda r: r.deviation, reverse=True)
for row in rows[:3]:
    print(f"digit {row.word}: {row.count} times, frequency {float(row.frequency):.4f}")
