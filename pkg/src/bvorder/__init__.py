"""Bounded variation functions with values in ordered vector spaces.

Two codomains are implemented: ``R^n`` with the componentwise order (a
vector lattice) and ``Sym(d)`` with the positive semidefinite order and the
spectral absolute value (not a lattice once ``d >= 2``).
"""

from .errors import (
    BVError,
    IntervalMismatch,
    InvalidArgument,
    InvalidElement,
    ModeMismatch,
    NonLatticeSpace,
    NotInCone,
    NumericalFailure,
    OutOfDomain,
    SpaceMismatch,
    TooManyBreakpoints,
)
from .report import CheckReport
from .ordered_core import (
    DEFAULT_TOL,
    Element,
    Space,
    SpaceKind,
    Tolerance,
    abs_val,
    check_abs_axioms,
    cone_deficit,
    in_cone,
    infty_orthogonal_sampled,
    jacobi_eigh,
    join,
    leq,
    meet,
    neg_part,
    order_unit_norm,
    orthogonal,
    pos_part,
    sym_eigendecomposition,
)
from .bv_calculus import (
    BVFunction,
    JordanPair,
    Mode,
    OrderedInterval,
    Partition,
    additivity_check,
    brute_force_variation,
    evaluate,
    grid_variation,
    is_constant,
    is_monotone_increasing,
    jordan_variations,
    signed_variation_sums,
    total_variation,
    variation_function,
    variation_sum,
)
from .bv_norms import (
    NormMethod,
    NormResult,
    abs_V,
    bv_norm,
    in_BV0_plus,
    in_BV_plus,
    inf_norm_bv_objective,
    inf_norm_sup_objective,
    leq0,
    leq_pointwise,
    orderv_join,
    orderv_meet,
    pointwise_abs,
    pointwise_bv_ops,
    pointwise_join,
    pointwise_meet,
    sup_norm,
)
from .property_harness import (
    GenConfig,
    WitnessKind,
    find_nonlattice_witness,
    gen_bvfunction,
    gen_element,
    replay_witness,
    run_check,
    run_suite,
    traceability,
)

__version__ = "0.1.0"
