"""Functions of bounded variation on a real interval with ordered-space values.

A :class:`BVFunction` is a finite breakpoint representation, either piecewise
linear or piecewise constant (right-continuous steps). On a lattice codomain
every component is monotone between breakpoints, so the supremum of variation
sums is attained on the breakpoint grid and is computed exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, NamedTuple, Union

import numpy as np

from .errors import (
    IntervalMismatch,
    InvalidArgument,
    InvalidElement,
    ModeMismatch,
    NonLatticeSpace,
    OutOfDomain,
    SpaceMismatch,
    TooManyBreakpoints,
)
from .ordered_core import (
    DEFAULT_TOL,
    Element,
    Space,
    Tolerance,
    abs_data,
    deficit_data,
    norm_data,
    order_unit_norm,
)
from .report import CheckReport

MAX_ORACLE_POINTS = 12


class Mode(str, Enum):
    LINEAR = "linear"
    CONSTANT_RIGHT = "constant_right"


@dataclass(frozen=True)
class OrderedInterval:
    lo: float
    hi: float

    def __post_init__(self):
        if not (np.isfinite(self.lo) and np.isfinite(self.hi)):
            raise InvalidArgument("interval endpoints must be finite")
        if not self.lo < self.hi:
            raise InvalidArgument(f"empty interval [{self.lo}, {self.hi}]")

    def __contains__(self, t) -> bool:
        return self.lo <= t <= self.hi


@dataclass(frozen=True)
class Partition:
    """Strictly increasing chain of points; first and last are the endpoints."""

    points: tuple

    def __post_init__(self):
        pts = tuple(float(p) for p in self.points)
        if len(pts) < 2:
            raise InvalidArgument("a partition needs at least two points")
        if not all(np.isfinite(pts)):
            raise InvalidArgument("partition points must be finite")
        if any(b <= a for a, b in zip(pts, pts[1:])):
            raise InvalidArgument("partition points must be strictly increasing")
        object.__setattr__(self, "points", pts)

    @property
    def lo(self) -> float:
        return self.points[0]

    @property
    def hi(self) -> float:
        return self.points[-1]

    def refine(self, extra: Iterable[float]) -> "Partition":
        """Union with extra interior points."""
        pts = set(self.points)
        pts.update(float(t) for t in extra if self.lo < t < self.hi)
        return Partition(tuple(sorted(pts)))

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


def _as_partition(p) -> Partition:
    return p if isinstance(p, Partition) else Partition(tuple(p))


class BVFunction:
    """Finitely represented function ``[lo, hi] -> Y``.

    ``values`` may be a sequence of :class:`Element`, a ``(k, size)`` array of
    packed data, or (for ``sym`` spaces) a sequence of square matrices.
    """

    __slots__ = ("space", "breakpoints", "data", "mode")

    def __init__(self, space: Space, breakpoints, values, mode: Union[Mode, str] = Mode.LINEAR):
        mode = Mode(mode)
        bps = np.array(breakpoints, dtype=float).reshape(-1)
        if bps.shape[0] < 2:
            raise InvalidArgument("need at least two breakpoints")
        if not np.all(np.isfinite(bps)) or np.any(np.diff(bps) <= 0):
            raise InvalidArgument("breakpoints must be finite and strictly increasing")
        data = _values_to_data(space, values)
        if data.shape[0] != bps.shape[0]:
            raise InvalidArgument(f"{bps.shape[0]} breakpoints but {data.shape[0]} values")
        bps.flags.writeable = False
        data.flags.writeable = False
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "mode", mode)

    def __setattr__(self, name, value):
        raise AttributeError("BVFunction is immutable")

    @classmethod
    def constant(cls, value: Element, lo: float = 0.0, hi: float = 1.0, mode=Mode.LINEAR):
        return cls(value.space, [lo, hi], [value, value], mode)

    @property
    def lo(self) -> float:
        return float(self.breakpoints[0])

    @property
    def hi(self) -> float:
        return float(self.breakpoints[-1])

    @property
    def interval(self) -> OrderedInterval:
        return OrderedInterval(self.lo, self.hi)

    @property
    def values(self) -> tuple:
        return tuple(Element(self.space, row) for row in self.data)

    def __len__(self):
        return self.breakpoints.shape[0]

    def __call__(self, t: float) -> Element:
        return evaluate(self, t)

    def with_data(self, data, breakpoints=None) -> "BVFunction":
        bps = self.breakpoints if breakpoints is None else breakpoints
        return BVFunction(self.space, bps, data, self.mode)

    def __add__(self, other):
        if not isinstance(other, BVFunction):
            return NotImplemented
        grid, a, b = merged(self, other)
        return self.with_data(a + b, grid)

    def __sub__(self, other):
        if not isinstance(other, BVFunction):
            return NotImplemented
        grid, a, b = merged(self, other)
        return self.with_data(a - b, grid)

    def __neg__(self):
        return self.with_data(-self.data)

    def __mul__(self, alpha):
        if not isinstance(alpha, (int, float, np.floating, np.integer)):
            return NotImplemented
        return self.with_data(float(alpha) * self.data)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, BVFunction):
            return NotImplemented
        return (
            self.space == other.space
            and self.mode == other.mode
            and np.array_equal(self.breakpoints, other.breakpoints)
            and np.array_equal(self.data, other.data)
        )

    __hash__ = None

    def __repr__(self):
        return (
            f"BVFunction({self.space!r}, mode={self.mode.value}, "
            f"breakpoints={self.breakpoints.tolist()})"
        )

    def to_json(self) -> dict:
        return {
            "interval": [self.lo, self.hi],
            "mode": self.mode.value,
            "breakpoints": self.breakpoints.tolist(),
            "values": [v.tolist() for v in self.values],
            "space": self.space.to_dict(),
        }

    @classmethod
    def from_json(cls, obj) -> "BVFunction":
        if not isinstance(obj, dict):
            raise InvalidArgument("BV function JSON must be an object")
        try:
            space = Space.from_dict(obj["space"])
            f = cls(space, obj["breakpoints"], obj["values"], obj.get("mode", "linear"))
        except KeyError as exc:
            raise InvalidArgument(f"missing field {exc}") from exc
        except (TypeError, ValueError) as exc:
            if isinstance(exc, (InvalidArgument, InvalidElement)):
                raise
            raise InvalidArgument(str(exc)) from exc
        if "interval" in obj:
            lo, hi = obj["interval"]
            if float(lo) != f.lo or float(hi) != f.hi:
                raise InvalidArgument("interval does not match the breakpoint endpoints")
        return f


def _values_to_data(space: Space, values) -> np.ndarray:
    if isinstance(values, np.ndarray) and values.ndim == 2 and values.shape[1] == space.size:
        data = np.array(values, dtype=float)
    else:
        rows = []
        for v in values:
            if isinstance(v, Element):
                if v.space != space:
                    raise SpaceMismatch(f"value in {v.space!r}, function in {space!r}")
                rows.append(v.data)
            else:
                rows.append(space.element(v).data)
        data = np.array(rows, dtype=float).reshape(len(rows), space.size)
    if not np.all(np.isfinite(data)):
        raise InvalidElement("non-finite value")
    return data


# ---------------------------------------------------------------------------
# evaluation and grids

def eval_data(f: BVFunction, ts) -> np.ndarray:
    """Packed values of ``f`` at each point of ``ts`` (no domain check)."""
    ts = np.asarray(ts, dtype=float)
    bps = f.breakpoints
    idx = np.searchsorted(bps, ts, side="right") - 1
    if f.mode is Mode.CONSTANT_RIGHT:
        return f.data[np.clip(idx, 0, len(bps) - 1)]
    idx = np.clip(idx, 0, len(bps) - 2)
    left, right = bps[idx], bps[idx + 1]
    w = ((ts - left) / (right - left))[..., None]
    a, b = f.data[idx], f.data[idx + 1]
    # exact at both breakpoints and on constant segments
    return np.where(w == 1.0, b, a + w * (b - a))


def _check_domain(f: BVFunction, *ts):
    for t in ts:
        if not (f.lo <= t <= f.hi):
            raise OutOfDomain(f"{t} outside [{f.lo}, {f.hi}]")


def evaluate(f: BVFunction, t: float) -> Element:
    _check_domain(f, t)
    return Element(f.space, eval_data(f, [t])[0])


def merged(f: BVFunction, g: BVFunction):
    """Sample two compatible functions on the union of their breakpoints."""
    if f.space != g.space:
        raise SpaceMismatch(f"{f.space!r} vs {g.space!r}")
    if f.lo != g.lo or f.hi != g.hi:
        raise IntervalMismatch(f"[{f.lo}, {f.hi}] vs [{g.lo}, {g.hi}]")
    if f.mode is not g.mode:
        raise ModeMismatch(f"{f.mode.value} vs {g.mode.value}")
    grid = np.union1d(f.breakpoints, g.breakpoints)
    return grid, eval_data(f, grid), eval_data(g, grid)


def _grid(f: BVFunction, a: float, b: float) -> np.ndarray:
    _check_domain(f, a, b)
    if not a < b:
        raise OutOfDomain(f"need a < b, got [{a}, {b}]")
    bps = f.breakpoints
    inner = bps[(bps > a) & (bps < b)]
    return np.concatenate(([a], inner, [b]))


def _require_lattice(space: Space, what: str):
    if not space.is_lattice:
        raise NonLatticeSpace(f"{what} needs a lattice codomain, got {space!r}")


# ---------------------------------------------------------------------------
# variation sums

def _increments(f: BVFunction, points) -> np.ndarray:
    return np.diff(eval_data(f, points), axis=0)


def variation_sum(f: BVFunction, partition, tol: Tolerance = DEFAULT_TOL) -> Element:
    """Sum of ``|f(x_i) - f(x_{i-1})|`` over a partition."""
    p = _as_partition(partition)
    _check_domain(f, p.lo, p.hi)
    inc = _increments(f, p.points)
    return Element(f.space, abs_data(f.space, inc, tol.eps_eig).sum(axis=0))


def signed_variation_sums(f: BVFunction, partition, tol: Tolerance = DEFAULT_TOL):
    """Sums of the positive and negative parts of the increments."""
    p = _as_partition(partition)
    _check_domain(f, p.lo, p.hi)
    inc = _increments(f, p.points)
    ab = abs_data(f.space, inc, tol.eps_eig)
    plus = 0.5 * (ab + inc)
    minus = 0.5 * (ab - inc)
    return Element(f.space, plus.sum(axis=0)), Element(f.space, minus.sum(axis=0))


def grid_variation(f: BVFunction, a: float = None, b: float = None, tol: Tolerance = DEFAULT_TOL) -> Element:
    """Variation sum over every breakpoint of ``f`` inside ``[a, b]``.

    Equal to :func:`total_variation` on lattice codomains; the only
    variation quantity defined for non-lattice ones.
    """
    a = f.lo if a is None else a
    b = f.hi if b is None else b
    return variation_sum(f, Partition(tuple(_grid(f, a, b))), tol)


def total_variation(f: BVFunction, a: float = None, b: float = None, tol: Tolerance = DEFAULT_TOL) -> Element:
    """Supremum of variation sums over all partitions of ``[a, b]``."""
    _require_lattice(f.space, "total_variation")
    return grid_variation(f, a, b, tol)


def brute_force_variation(f: BVFunction, a: float = None, b: float = None) -> Element:
    """Entrywise maximum of the variation sums of every sub-partition of the grid.

    Independent of :func:`total_variation`: it never assumes the full grid is
    maximal, it enumerates all ``2**(k-2)`` candidates.
    """
    _require_lattice(f.space, "brute_force_variation")
    a = f.lo if a is None else a
    b = f.hi if b is None else b
    grid = _grid(f, a, b)
    k = len(grid)
    if k > MAX_ORACLE_POINTS:
        raise TooManyBreakpoints(f"{k} grid points exceed the oracle cap {MAX_ORACLE_POINTS}")
    vals = eval_data(f, grid)
    best = None
    for mask in itertools.product((False, True), repeat=k - 2):
        keep = np.array((True,) + mask + (True,))
        s = np.abs(np.diff(vals[keep], axis=0)).sum(axis=0)
        best = s if best is None else np.maximum(best, s)
    return Element(f.space, best)


# ---------------------------------------------------------------------------
# variation function and Jordan variations

class JordanPair(NamedTuple):
    vplus: BVFunction
    vminus: BVFunction


def _running_variation(f: BVFunction, tol: Tolerance) -> np.ndarray:
    inc = np.diff(f.data, axis=0)
    steps = abs_data(f.space, inc, tol.eps_eig)
    return np.vstack([np.zeros((1, f.space.size)), np.cumsum(steps, axis=0)])


def variation_function(f: BVFunction, tol: Tolerance = DEFAULT_TOL) -> BVFunction:
    """``z -> V(f, lo, z)`` on the breakpoints of ``f``, in the same mode as ``f``."""
    _require_lattice(f.space, "variation_function")
    return f.with_data(_running_variation(f, tol))


def jordan_variations(f: BVFunction, tol: Tolerance = DEFAULT_TOL) -> JordanPair:
    _require_lattice(f.space, "jordan_variations")
    v = _running_variation(f, tol)
    drift = f.data - f.data[0]
    return JordanPair(f.with_data(0.5 * (v + drift)), f.with_data(0.5 * (v - drift)))


# ---------------------------------------------------------------------------
# predicates and checks

def additivity_check(f: BVFunction, z: float, tol: Tolerance = DEFAULT_TOL) -> CheckReport:
    """Compare ``V(f, lo, hi)`` with ``V(f, lo, z) + V(f, z, hi)``."""
    if not (f.lo < z < f.hi):
        raise OutOfDomain(f"split point {z} must lie strictly inside [{f.lo}, {f.hi}]")
    whole = total_variation(f, tol=tol)
    left = total_variation(f, f.lo, z, tol)
    right = total_variation(f, z, f.hi, tol)
    dev = order_unit_norm(whole - (left + right), tol)
    ok = dev <= tol.eps_cone
    witness = None if ok else {"z": z, "whole": whole.tolist(), "parts": (left + right).tolist()}
    return CheckReport("thm5.additivity", int(ok), int(not ok), dev, witness)


def is_constant(f: BVFunction, tol: Tolerance = DEFAULT_TOL) -> bool:
    return order_unit_norm(grid_variation(f, tol=tol), tol) <= tol.eps_cone


def is_monotone_increasing(f: BVFunction, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Every breakpoint-to-breakpoint increment lies in the cone."""
    inc = np.diff(f.data, axis=0)
    deficit = np.atleast_1d(deficit_data(f.space, inc, tol.eps_eig))
    scale = np.maximum(1.0, np.atleast_1d(norm_data(f.space, inc, tol.eps_eig)))
    return bool(np.all(deficit <= tol.eps_cone * scale))
