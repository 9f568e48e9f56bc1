"""
Counting partitions directly
============================

The oracle counts partitions whose largest and smallest parts differ by at
most t, without using any generating function.  Tables from the oracle and
from the series side should coincide.
"""

# %%
from qpartlab import (PartitionFamily, count_odd_bounded_diff, count_overpartition,
                      gf_distinct, tabulate)
from qpartlab.oracle import windowed_partitions

print(sorted(windowed_partitions(6, 2, distinct=True)))

# %%
table = tabulate(PartitionFamily("distinct-bounded-diff", 2), 15)
series = gf_distinct(2, 15)
for n, count in table.flat_rows():
    assert series.coefficient(n) == count
print(table.flat_rows())

# %%
# Overpartitions are refined by the number m of overlined parts.
print(count_overpartition(5, 2))

# %%
# Odd parts: windows 2t and 2t+1 always give the same counts.
print([count_odd_bounded_diff(n, 4) for n in range(1, 21)])
print([count_odd_bounded_diff(n, 5) for n in range(1, 21)])
