"""Variation function and the split f = f(lo) + V+ - V-."""

import numpy as np

from bvorder import BVFunction, Space, is_monotone_increasing, jordan_variations, variation_function

R2 = Space.lattice(2)
f = BVFunction(R2, [0.0, 0.5, 1.0], [[0, 0], [1, -1], [0, 0]])

v = variation_function(f)
vp, vm = jordan_variations(f)
for t in f.breakpoints:
    print(f"t={t:.1f}  f={f(t).tolist()}  V={v(t).tolist()}  V+={vp(t).tolist()}  V-={vm(t).tolist()}")

recon = f.data[0] + vp.data - vm.data
print("reconstruction error:", np.abs(recon - f.data).max())
print("V+ and V- increasing:", is_monotone_increasing(vp), is_monotone_increasing(vm))

# A monotone function has no negative variation.
ramp = BVFunction(R2, [0, 1], [[0, 0], [1, 2]])
print("ramp V- :", jordan_variations(ramp).vminus.data.tolist())
print("ramp V  :", variation_function(ramp).data.tolist())

# Step functions (constant to the right of each breakpoint) work the same way.
step = BVFunction(Space.lattice(1), [0, 0.3, 0.6, 1], [[0], [2], [1], [3]], "constant_right")
vp, vm = jordan_variations(step)
print("step V+ :", vp.data.ravel().tolist())
print("step V- :", vm.data.ravel().tolist())
