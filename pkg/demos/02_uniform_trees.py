"""
Sampling uniform labelled trees in linear time
==============================================

Draw a uniform mapping, keep its Rényi-Joyal tree, forget the roots.
Every tree has exactly n^2 preimages, so the tree is uniform.
"""

import time
from collections import Counter

from endotree import SeededRng, sample_tree

# %%
# On 4 vertices there are 4^2 = 16 trees; each should show up about 1/16 of the time.
gen = SeededRng(1).generator()
counts = Counter(sample_tree(4, gen).key for _ in range(32_000))
freqs = sorted(c / 32_000 for c in counts.values())
print(f"{len(counts)} distinct trees, frequencies {freqs[0]:.4f} .. {freqs[-1]:.4f} (1/16 = {1 / 16:.4f})")

# %%
# Cost grows linearly: a tenfold larger tree takes roughly ten times as long.
sample_tree(1000, SeededRng())  # compile the kernels first
for n in (10**4, 10**5, 10**6):
    t0 = time.perf_counter()
    tree = sample_tree(n, SeededRng(2))
    print(f"n={n:>8}: {1000 * (time.perf_counter() - t0):7.1f} ms, {len(tree.edges)} edges")

# %%
# Same seed and stream, same tree, on any machine.
a = sample_tree(10, SeededRng(42, 3))
b = sample_tree(10, SeededRng(42, 3))
print("reproducible:", a == b)
