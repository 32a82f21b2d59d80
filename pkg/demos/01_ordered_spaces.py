"""Two codomains side by side: R^n with the componentwise order, and
symmetric matrices ordered by positive semidefiniteness."""

import numpy as np

from bvorder import (
    Space, abs_val, check_abs_axioms, in_cone, join, leq, meet,
    neg_part, order_unit_norm, orthogonal, pos_part,
)

R2 = Space.lattice(2)
S2 = Space.sym(2)

# In R^2 everything is entrywise.
a = R2.element([3, -4])
print("a          =", a.tolist())
print("|a|        =", abs_val(a).tolist())
print("a+, a-     =", pos_part(a).tolist(), neg_part(a).tolist())
print("||a||      =", order_unit_norm(a))
print("(1,-2) v (0,3) =", join(R2.element([1, -2]), R2.element([0, 3])).tolist())
print("(1,-2) ^ (0,3) =", meet(R2.element([1, -2]), R2.element([0, 3])).tolist())
print("(1,0) <= (0,1)?", leq(R2.element([1, 0]), R2.element([0, 1])))

# The swap matrix has eigenvalues +1 and -1: not positive, absolute value I.
swap = S2.element([[0, 1], [1, 0]])
print()
print("swap in cone?", in_cone(swap))
print("|swap| =\n", np.round(abs_val(swap).matrix(), 12))
p, n = pos_part(swap), neg_part(swap)
print("swap+ =\n", np.round(p.matrix(), 12))
print("swap- =\n", np.round(n.matrix(), 12))
print("swap+ orthogonal to swap-?", orthogonal(p, n))
print("||swap|| =", order_unit_norm(swap))

# The absolute value axioms hold in both spaces even though only R^n is a lattice.
for space in (Space.lattice(4), Space.sym(3)):
    rep = check_abs_axioms(space, 200, rng=0)
    print(f"\naxioms on {space!r}: {rep.passed}/{rep.trials} trials, worst margin {rep.worst_margin:.1e}")
    for k, v in rep.details.items():
        print(f"  ({k}) passed {v['passed']}")
