"""Variation sums, the total variation and the exhaustive oracle.

The running example: f on [0, 1] with values (0,0), (1,-1), (0,0) at
0, 0.5 and 1, linear in between.
"""

import numpy as np

from bvorder import (
    BVFunction, Partition, Space, additivity_check, brute_force_variation,
    signed_variation_sums, total_variation, variation_sum,
)

R2 = Space.lattice(2)
f = BVFunction(R2, [0.0, 0.5, 1.0], [[0, 0], [1, -1], [0, 0]])

print("f(0.25) =", f(0.25).tolist())
print("sum over {0,1}       :", variation_sum(f, [0, 1]).tolist())
print("sum over {0,0.5,1}   :", variation_sum(f, [0, 0.5, 1]).tolist())
print("sum over {0,.2,.7,1} :", variation_sum(f, [0, 0.2, 0.7, 1]).tolist())
print("total variation      :", total_variation(f).tolist())
print("exhaustive oracle    :", brute_force_variation(f).tolist())

plus, minus = signed_variation_sums(f, [0, 0.5, 1])
print("signed sums          :", plus.tolist(), minus.tolist())

# Refining a partition never lowers the sum.
p = Partition((0.0, 1.0))
for extra in ([0.3], [0.5], [0.8], [0.1]):
    p = p.refine(extra)
    print(f"  {len(p)} points -> {variation_sum(f, p).tolist()}")

# Splitting the interval at any point adds up.
for z in (0.25, 0.5, 0.9):
    rep = additivity_check(f, z)
    left = total_variation(f, 0, z).tolist()
    right = total_variation(f, z, 1).tolist()
    print(f"split at {z}: {left} + {right}, deviation {rep.worst_margin}")

# The oracle agrees with the grid formula on random functions too.
rng = np.random.default_rng(0)
worst = 0.0
for _ in range(100):
    k = rng.integers(2, 11)
    bps = np.concatenate(([0], np.sort(rng.uniform(0, 1, k - 2)), [1]))
    g = BVFunction(Space.lattice(3), bps, rng.uniform(-1, 1, (k, 3)))
    worst = max(worst, np.abs(brute_force_variation(g).data - total_variation(g).data).max())
print("oracle vs total_variation on 100 random functions, worst deviation", worst)
