"""Measuring intervals under a weighted digit distribution.

Digit 9 gets probability 3/10 and the other nine digits share the rest.
Every interval with terminating endpoints has an exact rational measure.
"""

from fractions import Fraction

from steinhaus import make_distribution
from steinhaus.measure import interval_measure, interval_to_cylinders, point_measure

# %% the distribution
dist = make_distribution(10, ["7/90"] * 9 + ["3/10"])
print("digit masses:", [str(p) for p in dist.probabilities])

# %% [9/10, 1] is hit exactly by sequences starting with a 9
print("measure of [9/10, 1]:", interval_measure(Fraction(9, 10), Fraction(1), dist))

# %% an interval splits into disjoint prefix cylinders
dec = interval_to_cylinders("0.12", "0.345")
for cyl in dec.cylinders:
    print(f"  {cyl}")
print("endpoint sequence:", dec.endpoint)
print("measure of [0.12, 0.345]:", interval_measure("0.12", "0.345", dist))

# %% no single number carries mass unless one digit has all of it
print("point mass at 1/3:", point_measure(Fraction(1, 3), dist))
