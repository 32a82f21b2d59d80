"""Where the lattice results stop: symmetric matrices.

The spectral absolute value is not subadditive, so |A + B| <= |A| + |B| can
fail, and refining a partition can lower a variation sum.
"""

import numpy as np

from bvorder import BVFunction, Space, abs_val, find_nonlattice_witness, grid_variation, variation_sum

rep = find_nonlattice_witness("triangle", 10_000, np.random.default_rng(0))
w = rep.witness
a, b = np.array(w["a"]), np.array(w["b"])
S2 = Space.sym(2)
A, B = S2.element(a), S2.element(b)
gap = abs_val(A) + abs_val(B) - abs_val(A + B)
print("A =\n", a.round(4))
print("B =\n", b.round(4))
print("eigenvalues of |A|+|B|-|A+B|:", np.linalg.eigvalsh(gap.matrix()).round(4))
print("samples used:", rep.trials)

lat = find_nonlattice_witness("triangle", 10_000, np.random.default_rng(0), Space.lattice(2))
print("same search in R^2:", lat.note)

rep = find_nonlattice_witness("refinement", 10_000, np.random.default_rng(0))
f = BVFunction.from_json(rep.witness["f"])
coarse = variation_sum(f, [0, 1])
fine = variation_sum(f, [0, 0.5, 1])
print()
print("refinement witness found after", rep.trials, "samples")
print("eigenvalues of fine - coarse:", np.linalg.eigvalsh((fine - coarse).matrix()).round(4))
# The grid sum is still defined, it just is not a supremum any more.
print("grid variation:\n", grid_variation(f).matrix().round(4))
