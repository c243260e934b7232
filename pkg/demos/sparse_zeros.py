"""A sequence whose zeros thin out: a,0,a,a,0,a,a,a,0,...

The m-th zero follows a run of m copies of a, so the frequency of a tends
to 1 and the sequence is normal for the distribution concentrated on a, even
though it is not eventually constant.
"""

from steinhaus import degenerate_distribution
from steinhaus.normality import build_report
from steinhaus.sources import steinhaus_example_stream

a = 5
print("prefix:", ",".join(map(str, steinhaus_example_stream(a).read(20).tolist())))

target = degenerate_distribution(10, a)
for n in (10**2, 10**3, 10**4, 10**5):
    report = build_report(steinhaus_example_stream(a), n, 1, target)
    dev = next(r.deviation for r in report.rows_for(1) if r.word.digits == (a,))
    print(f"n={n:>6}: deviation of digit {a} from 1 is {dev} ~ {float(dev):.5f}")
