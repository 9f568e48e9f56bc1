"""
The master sum and its closed form
==================================

S(alpha, beta; q^d; t) is summed term by term as a formal series and compared
with the closed form after clearing denominators.
"""

# %%
from qpartlab import (Monomial, SParams, closed_form_cleared, eval_S, first_mismatch,
                      gf_bounded_diff, monomial_grid, via_master)

p = SParams(Monomial.parse("-z*q"), Monomial.parse("1"), d=1, t=2)
print(eval_S(p, 6))

# %%
lhs, rhs = closed_form_cleared(p, 40)
print("cleared sides agree through q^40:", first_mismatch(lhs, rhs) is None)

# %%
# Every admissible monomial choice on the small grid, degenerate ones included.
grid = list(monomial_grid(t_values=range(1, 4)))
bad = [q for q in grid if first_mismatch(*closed_form_cleared(q, 30)) is not None]
print(len(grid), "parameter sets,", sum(q.degenerate for q in grid), "degenerate,",
      len(bad), "failures")

# %%
# Each named specialization reproduces one of the partition generating functions.
for name in ("bk", "cy", "pdt", "pot"):
    print(name, via_master(name, 3, 12))

# %%
print(first_mismatch(via_master("bk", 5, 100), gf_bounded_diff(5, 100)))
