"""The sup norm, the BV norm and the two infimum norms with their certificate."""

import numpy as np

from bvorder import (
    BVFunction, Space, abs_V, bv_norm, in_BV0_plus, inf_norm_bv_objective,
    inf_norm_sup_objective, orderv_join, pointwise_abs, pointwise_join, sup_norm,
)

R2 = Space.lattice(2)
f = BVFunction(R2, [0.0, 0.5, 1.0], [[0, 0], [1, -1], [0, 0]])

print("sup norm :", sup_norm(f))
print("BV norm  :", bv_norm(f))
r15 = inf_norm_sup_objective(f)
r16 = inf_norm_bv_objective(f)
print("infimum with sup objective:", r15.value)
print("infimum with BV objective :", r16.value)
print("certificate g* = |f|_V    :", r15.certificate.data.tolist())

# g* is feasible, and any other feasible g sits above it.
g = r15.certificate
print("g*, g*+f, g*-f monotone and positive:", in_BV0_plus(g), in_BV0_plus(g + f), in_BV0_plus(g - f))
rng = np.random.default_rng(1)
bump = f.with_data(np.cumsum(rng.uniform(0, 1, (3, 2)), axis=0))
other = g + bump
print("a competitor:", other.data.round(3).tolist(), "sup norm", round(sup_norm(other), 3))

# Two different lattice structures on the same functions.
h = BVFunction(R2, [0.0, 0.5, 1.0], [[0.5, 0], [0, 0], [0, 1]])
print()
print("pointwise |f|       :", pointwise_abs(f).data.tolist())
pj = pointwise_join(f, h)
# a crossing point of f - h is inserted so the join stays exact between breakpoints
print("pointwise f v h     :", [(round(float(t), 4), v.round(4).tolist()) for t, v in zip(pj.breakpoints, pj.data)])
print("variation-order f v h:", orderv_join(f, h).data.tolist())
print("|f|_V               :", abs_V(f).data.tolist())
