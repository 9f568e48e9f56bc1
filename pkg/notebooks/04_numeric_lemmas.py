"""
Floating-point checks of the summation lemmas
=============================================

Basic hypergeometric series are evaluated in complex double precision with a
tail bound, then the two classical lemmas and the nine-line derivation are
checked on seeded random samples.
"""

# %%
import numpy as np

from qpartlab import check_chu_vandermonde, phi, pochhammer_num, proof_chain, run_trials

q = 0.4 + 0.1j
print(phi([0.3, 0.2], [0.6], q, 0.5))
print(pochhammer_num(q, q))

# %%
print("Chu-Vandermonde error:", check_chu_vandermonde(0.3, 0.7, 0.5, 4))

# %%
for kind in ("chu", "ktw", "chain"):
    summary = run_trials(kind, 100, seed=0)
    print(f"{kind:6s} max error {summary.max_error:.2e}  rejected {summary.rejections}")

# %%
report = proof_chain(0.7 - 0.2j, 1.3 + 0.4j, 0.35 + 0.2j, 4)
for label, value in zip(report.labels, report.values):
    print(f"{label:28s} {value:.12f}")
print("spread:", report.max_pairwise_deviation)

# %%
values = np.array(report.values)
print("all lines within 1e-12 of the first:", np.allclose(values, values[0], atol=1e-12))
