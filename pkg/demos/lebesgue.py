"""With equal digit weights the measure of an interval is its length."""

import random
from fractions import Fraction

from steinhaus import uniform_distribution
from steinhaus.measure import interval_enclosure, interval_measure

rng = random.Random(0)

# %% random terminating endpoints, several bases
for base in (2, 3, 10):
    dist = uniform_distribution(base)
    for _ in range(3):
        a, b = sorted(Fraction(rng.randrange(base**5), base**5) for _ in range(2))
        m = interval_measure(a, b, dist)
        print(f"base {base:2d}  [{a}, {b}]  measure {m}  length {b - a}  equal={m == b - a}")

# %% endpoints without a terminating expansion get nested bounds instead
dist = uniform_distribution(10)
for depth in (2, 4, 8):
    lo, hi = interval_enclosure(Fraction(1, 3), Fraction(2, 3), dist, depth)
    print(f"depth {depth}: {lo} <= measure([1/3, 2/3]) <= {hi}")
