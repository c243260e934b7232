"""Are the normal numbers of a digit distribution a full or a null set?

If the top digit has probability 1, the measure sits on the single sequence
of top digits, which no canonical expansion uses.  Otherwise sampled
numbers are normal with probability 1.
"""

from fractions import Fraction

from steinhaus import degenerate_distribution, make_distribution, uniform_distribution
from steinhaus.experiments import normal_number_demo

for dist in (degenerate_distribution(10, 9), uniform_distribution(10),
             make_distribution(10, ["7/90"] * 9 + ["3/10"]), degenerate_distribution(10, 0)):
    print(normal_number_demo(dist, 20000, 2, Fraction(1, 50), seed=1))
    print()
