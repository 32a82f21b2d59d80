"""Cones, absolute values and norms on the space of BV functions.

Two lattice-like structures live on BV and are kept apart by name:

* ``pointwise_*``: the order inherited pointwise from the codomain, cone BV+.
* ``orderv_*``: the variation order, cone BV0+ (monotone cone-valued
  functions) with absolute value ``|f|_V = |f(lo)| + V_f``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from .bv_calculus import (
    BVFunction,
    Mode,
    _require_lattice,
    eval_data,
    is_monotone_increasing,
    merged,
    total_variation,
    variation_function,
)
from .ordered_core import (
    DEFAULT_TOL,
    Element,
    Tolerance,
    abs_data,
    abs_val,
    deficit_data,
    norm_data,
    order_unit_norm,
)


class NormMethod(str, Enum):
    CLOSED_FORM = "closed_form"
    CERTIFIED_INFIMUM = "certified_infimum"


@dataclass(frozen=True)
class NormResult:
    value: float
    certificate: Optional[BVFunction] = None
    method: NormMethod = NormMethod.CLOSED_FORM

    def to_json(self) -> dict:
        out = {"value": self.value, "method": self.method.value}
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        return out

    @classmethod
    def from_json(cls, obj) -> "NormResult":
        if isinstance(obj, str):
            obj = json.loads(obj)
        cert = obj.get("certificate")
        return cls(
            float(obj["value"]),
            None if cert is None else BVFunction.from_json(cert),
            NormMethod(obj.get("method", "closed_form")),
        )


# ---------------------------------------------------------------------------
# cones

def _rows_in_cone(space, rows, tol: Tolerance) -> bool:
    deficit = np.atleast_1d(deficit_data(space, rows, tol.eps_eig))
    scale = np.maximum(1.0, np.atleast_1d(norm_data(space, rows, tol.eps_eig)))
    return bool(np.all(deficit <= tol.eps_cone * scale))


def in_BV_plus(f: BVFunction, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Cone-valued at every breakpoint, hence everywhere (segments are convex combinations)."""
    return _rows_in_cone(f.space, f.data, tol)


def in_BV0_plus(f: BVFunction, tol: Tolerance = DEFAULT_TOL) -> bool:
    return in_BV_plus(f, tol) and is_monotone_increasing(f, tol)


def leq0(f: BVFunction, g: BVFunction, tol: Tolerance = DEFAULT_TOL) -> bool:
    """The variation order: ``g - f`` in BV0+."""
    return in_BV0_plus(g - f, tol)


def leq_pointwise(f: BVFunction, g: BVFunction, tol: Tolerance = DEFAULT_TOL) -> bool:
    return in_BV_plus(g - f, tol)


# ---------------------------------------------------------------------------
# norms

def sup_norm(f: BVFunction, tol: Tolerance = DEFAULT_TOL) -> float:
    """Order-unit norm of BV under the pointwise cone, i.e. the sup norm.

    The maximum over breakpoints is the maximum over the interval: each
    segment is affine or constant and the norm is convex.
    """
    return float(np.max(norm_data(f.space, f.data, tol.eps_eig)))


def abs_V(f: BVFunction, tol: Tolerance = DEFAULT_TOL) -> BVFunction:
    """``z -> |f(lo)| + V_f(z)``; lands in BV0+."""
    _require_lattice(f.space, "abs_V")
    start = abs_data(f.space, f.data[0], tol.eps_eig)
    return f.with_data(variation_function(f, tol).data + start)


def bv_norm(f: BVFunction, tol: Tolerance = DEFAULT_TOL) -> float:
    """``|| |f(lo)| + V(f) ||`` in the codomain's order-unit norm."""
    _require_lattice(f.space, "bv_norm")
    start = abs_val(Element(f.space, f.data[0]), tol)
    return order_unit_norm(start + total_variation(f, tol=tol), tol)


def inf_norm_sup_objective(f: BVFunction, tol: Tolerance = DEFAULT_TOL) -> NormResult:
    """``inf { ||g||_inf : g in BV0+, g +- f in BV0+ }``, certified by ``g* = |f|_V``.

    Any feasible g has ``g >= |f|`` and increments ``>= |increments of f|``, so
    ``g >= |f(lo)| + V_f = g*`` pointwise; g* itself is feasible.
    """
    g = abs_V(f, tol)
    return NormResult(sup_norm(g, tol), g, NormMethod.CERTIFIED_INFIMUM)


def inf_norm_bv_objective(f: BVFunction, tol: Tolerance = DEFAULT_TOL) -> NormResult:
    """Same infimum with the BV norm as objective; for g in BV0+ it is ``||g(hi)||``."""
    g = abs_V(f, tol)
    return NormResult(bv_norm(g, tol), g, NormMethod.CERTIFIED_INFIMUM)


# ---------------------------------------------------------------------------
# variation-order lattice operations

def orderv_join(f: BVFunction, g: BVFunction, tol: Tolerance = DEFAULT_TOL) -> BVFunction:
    """``(f + g + |f - g|_V) / 2`` on the merged grid."""
    grid, a, b = merged(f, g)
    diff = f.with_data(a - b, grid)
    return diff.with_data(0.5 * (a + b + abs_V(diff, tol).data))


def orderv_meet(f: BVFunction, g: BVFunction, tol: Tolerance = DEFAULT_TOL) -> BVFunction:
    grid, a, b = merged(f, g)
    diff = f.with_data(a - b, grid)
    return diff.with_data(0.5 * (a + b - abs_V(diff, tol).data))


bv_join = orderv_join
bv_meet = orderv_meet


# ---------------------------------------------------------------------------
# pointwise operations

def _zero_crossings(bps: np.ndarray, data: np.ndarray) -> np.ndarray:
    """Interior points where some component of a linear function changes sign."""
    lo, hi = data[:-1], data[1:]
    seg, comp = np.nonzero(lo * hi < 0)
    if seg.size == 0:
        return np.empty(0)
    frac = lo[seg, comp] / (lo[seg, comp] - hi[seg, comp])
    t = bps[seg] + frac * (bps[seg + 1] - bps[seg])
    return t[(t > bps[seg]) & (t < bps[seg + 1])]


def _refined(f: BVFunction) -> BVFunction:
    # For a linear lattice function, |f| is linear between sign changes of
    # its components, so adding the crossings makes the representation exact.
    if f.mode is not Mode.LINEAR or not f.space.is_lattice:
        return f
    extra = _zero_crossings(f.breakpoints, f.data)
    if extra.size == 0:
        return f
    grid = np.union1d(f.breakpoints, extra)
    return f.with_data(eval_data(f, grid), grid)


def pointwise_abs(f: BVFunction, tol: Tolerance = DEFAULT_TOL) -> BVFunction:
    """``z -> |f(z)|``.

    Exact for lattice codomains (crossing points are inserted); for ``sym``
    linear functions the result interpolates ``|f|`` on the breakpoints.
    """
    r = _refined(f)
    return r.with_data(abs_data(r.space, r.data, tol.eps_eig))


def pointwise_join(f: BVFunction, g: BVFunction, tol: Tolerance = DEFAULT_TOL) -> BVFunction:
    grid, a, b = merged(f, g)
    d = _refined(f.with_data(a - b, grid))
    a, b = eval_data(f, d.breakpoints), eval_data(g, d.breakpoints)
    return d.with_data(0.5 * (a + b + abs_data(f.space, d.data, tol.eps_eig)))


def pointwise_meet(f: BVFunction, g: BVFunction, tol: Tolerance = DEFAULT_TOL) -> BVFunction:
    grid, a, b = merged(f, g)
    d = _refined(f.with_data(a - b, grid))
    a, b = eval_data(f, d.breakpoints), eval_data(g, d.breakpoints)
    return d.with_data(0.5 * (a + b - abs_data(f.space, d.data, tol.eps_eig)))


def pointwise_bv_ops(f: BVFunction, g: BVFunction, tol: Tolerance = DEFAULT_TOL) -> dict:
    """All three pointwise operations at once: ``abs`` of f, ``join`` and ``meet``."""
    return {
        "abs": pointwise_abs(f, tol),
        "join": pointwise_join(f, g, tol),
        "meet": pointwise_meet(f, g, tol),
    }
