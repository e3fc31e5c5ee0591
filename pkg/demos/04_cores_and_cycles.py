"""
Core sizes and cycle counts of random mappings
==============================================

The core of a uniform mapping has size about sqrt(pi n / 2) and the number
of cycles is about (log n) / 2. Exact laws and tails, side by side with
simulation.
"""

import math

from endotree.analysis import core_size_distribution, cycle_tail_bound
from endotree.experiments import run_core_size_experiment, run_cycle_experiment
from endotree.oracle import exact_statistic_distribution

# %%
# Exhaustive check at n = 5: the exact pmf has (n-k)! in the denominator.
exact = exact_statistic_distribution(5, statistic="core_size")
print("n=5 core size law:", {j: str(p) for j, p in exact.items()})
print("matches closed form:", exact == core_size_distribution(5))

# %%
# Simulated core sizes at n = 400.
rep = run_core_size_experiment(400, trials=4000, seed=3)
mean = sum(j * p for j, p in rep.empirical.items())
print(f"\nn=400: mean core size {mean:.1f}, sqrt(pi n / 2) = {math.sqrt(math.pi * 400 / 2):.1f}")

# %%
# Cycle counts rarely exceed twice log n; restricted maps obey the same
# law with n - k in place of n.
n, k = 5000, 2500
plain = run_cycle_experiment(n, 2000, [0.5, 1.0], seed=4)
restricted = run_cycle_experiment(n, 2000, [0.5, 1.0], seed=4, restricted_k=k)
print(f"\nmean cycles: plain {plain.mean:.2f}, restricted {restricted.mean:.2f}")
for r_plain, r_restr in zip(plain.rows, restricted.rows):
    t = r_plain.s
    print(f"t={t}: P(C>(1+t)log m) plain {r_plain.emp_upper:.4f} <= {cycle_tail_bound(n, t):.3f}, "
          f"restricted {r_restr.emp_upper:.4f} <= {cycle_tail_bound(n, t, k):.3f}")
print("collapse keeps cycle counts in every trial:", restricted.extra["collapse_mismatches"] == 0)
