"""How often is a sampled digit sequence close to its expected frequencies?

Each sample draws 10^5 digits from the distribution and checks every word of
length up to K against its product probability within epsilon.
"""

from fractions import Fraction

from steinhaus import make_distribution, uniform_distribution
from steinhaus.experiments import CampaignConfig, format_result, run_campaign

# %% uniform digits, single letters and pairs
for K in (1, 2):
    cfg = CampaignConfig(uniform_distribution(10), samples=50, length=10**5, max_length=K,
                         epsilon=Fraction(1, 100), seed=42)
    result = run_campaign(cfg)
    worst = max(s.max_deviation for s in result.samples)
    print(f"uniform K={K}: {result.normal_count}/{len(result.samples)} close, worst {float(worst):.5f}")

# %% a weighted distribution
cfg = CampaignConfig(make_distribution(10, ["7/90"] * 9 + ["3/10"]), samples=20, length=10**5,
                     max_length=1, epsilon=Fraction(1, 100), seed=7)
text = format_result(run_campaign(cfg))
print("\n".join(text.splitlines()[:13]))

# %% a tight epsilon makes failures show up
cfg = CampaignConfig(uniform_distribution(10), samples=50, length=10**4, max_length=1,
                     epsilon=Fraction(1, 200), seed=42)
print("epsilon 1/200, n=10^4:", run_campaign(cfg).fraction)
