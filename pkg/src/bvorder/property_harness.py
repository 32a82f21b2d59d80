"""Randomized conformance suite for the BV calculus, plus non-lattice witness search.

Every check draws its own generator from ``(seed, crc32(check_id))`` so the
reports are deterministic and independent of execution order. A check
computes a *margin* per trial: the violation size, normalised by
``max(1, ||operands||)``. A trial passes when its margin is within the
check's bound.
"""

from __future__ import annotations

import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional

import numpy as np

from . import bv_calculus as bvc
from . import bv_norms as bvn
from .bv_calculus import BVFunction, Mode, eval_data
from .errors import InvalidArgument
from .ordered_core import (
    DEFAULT_TOL,
    Element,
    Space,
    SpaceKind,
    _orthogonal_triple,
    abs_data,
    abs_val,
    deficit_data,
    join,
    meet,
    neg_part,
    norm_data,
    order_unit_norm,
    pos_part,
    random_cone_element,
)
from .report import CheckReport

WITNESS_THRESHOLD = 1e-6
TOL = DEFAULT_TOL


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    dim_range: tuple = (1, 4)
    breakpoint_range: tuple = (2, 12)
    value_scale: float = 1.0
    trials: int = 500
    degenerate_rate: float = 0.1

    def __post_init__(self):
        lo, hi = self.dim_range
        if not (1 <= lo <= hi):
            raise InvalidArgument(f"bad dim_range {self.dim_range}")
        blo, bhi = self.breakpoint_range
        if not (2 <= blo <= bhi <= bvc.MAX_ORACLE_POINTS):
            raise InvalidArgument(f"bad breakpoint_range {self.breakpoint_range}")
        if self.trials < 1:
            raise InvalidArgument("trials must be >= 1")
        if not self.value_scale > 0:
            raise InvalidArgument("value_scale must be positive")
        object.__setattr__(self, "dim_range", (int(lo), int(hi)))
        object.__setattr__(self, "breakpoint_range", (int(blo), int(bhi)))


# ---------------------------------------------------------------------------
# generators

def gen_element(space: Space, rng: np.random.Generator, scale: float = 1.0) -> Element:
    """Entries i.i.d. uniform on [-scale, scale]; symmetric matrices as (M + M^T)/2."""
    if space.kind is SpaceKind.LATTICE:
        return Element(space, rng.uniform(-scale, scale, space.dim))
    m = rng.uniform(-scale, scale, (space.dim, space.dim))
    return space.element(0.5 * (m + m.T))


def _gen_breakpoints(rng, k: int) -> np.ndarray:
    while True:
        inner = np.sort(rng.uniform(0.0, 1.0, k - 2))
        bps = np.concatenate(([0.0], inner, [1.0]))
        if np.all(np.diff(bps) > 1e-9):
            return bps


def gen_bvfunction(space: Space, config: GenConfig, rng: np.random.Generator, mode=None, k=None) -> BVFunction:
    """Random function on [0, 1]; breakpoint count drawn from ``config.breakpoint_range``."""
    if k is None:
        k = int(rng.integers(config.breakpoint_range[0], config.breakpoint_range[1] + 1))
    if mode is None:
        mode = Mode.LINEAR if rng.random() < 0.5 else Mode.CONSTANT_RIGHT
    bps = _gen_breakpoints(rng, k)
    vals = [gen_element(space, rng, config.value_scale).data for _ in range(k)]
    return BVFunction(space, bps, np.array(vals), mode)


class Gen:
    """Draws spaces, functions and partitions for one check."""

    def __init__(self, config: GenConfig, rng: np.random.Generator, kind: SpaceKind = SpaceKind.LATTICE):
        self.config = config
        self.rng = rng
        self.kind = SpaceKind(kind)
        self.scale = config.value_scale

    def _degenerate(self) -> bool:
        return self.rng.random() < self.config.degenerate_rate

    def space(self) -> Space:
        lo, hi = self.config.dim_range
        if lo == 1 and self._degenerate():
            dim = 1
        else:
            dim = int(self.rng.integers(lo, hi + 1))
        return Space(self.kind, dim)

    def mode(self) -> Mode:
        return Mode.LINEAR if self.rng.random() < 0.5 else Mode.CONSTANT_RIGHT

    def k(self) -> int:
        lo, hi = self.config.breakpoint_range
        return int(self.rng.integers(lo, hi + 1))

    def element(self, space: Space) -> Element:
        return gen_element(space, self.rng, self.scale)

    def cone_element(self, space: Space, scale=None) -> Element:
        return random_cone_element(space, self.rng, self.scale if scale is None else scale)

    def function(self, space=None, mode=None, k=None) -> BVFunction:
        space = space or self.space()
        mode = mode or self.mode()
        if self._degenerate():
            if self.rng.random() < 0.5:
                c = self.element(space)
                bps = _gen_breakpoints(self.rng, k or self.k())
                return BVFunction(space, bps, np.tile(c.data, (len(bps), 1)), mode)
            k = 2
        return gen_bvfunction(space, self.config, self.rng, mode, k)

    def pair(self):
        space, mode = self.space(), self.mode()
        return self.function(space, mode), self.function(space, mode)

    def monotone(self, space=None, mode=None, k=None, start=None) -> BVFunction:
        """Increasing function: a start value plus cumulative cone increments."""
        space = space or self.space()
        mode = mode or self.mode()
        k = k or self.k()
        bps = _gen_breakpoints(self.rng, k)
        start = self.element(space) if start is None else start
        steps = [self.cone_element(space, self.scale / k).data for _ in range(k - 1)]
        data = np.vstack([start.data, start.data + np.cumsum(steps, axis=0)])
        return BVFunction(space, bps, data, mode)

    def bv0plus(self, space=None, mode=None, k=None) -> BVFunction:
        space = space or self.space()
        return self.monotone(space, mode, k, start=self.cone_element(space))

    def cone_function(self, space=None, mode=None) -> BVFunction:
        space = space or self.space()
        mode = mode or self.mode()
        k = self.k()
        bps = _gen_breakpoints(self.rng, k)
        data = np.array([self.cone_element(space).data for _ in range(k)])
        return BVFunction(space, bps, data, mode)

    def point(self, f: BVFunction) -> float:
        return float(self.rng.uniform(f.lo, f.hi))

    def interior(self, f: BVFunction) -> float:
        """Split point strictly inside; a breakpoint half of the time when one exists."""
        inner = f.breakpoints[1:-1]
        if inner.size and self.rng.random() < 0.5:
            return float(self.rng.choice(inner))
        while True:
            z = self.point(f)
            if f.lo < z < f.hi:
                return z

    def nested_partitions(self, f: BVFunction):
        """P1 subset of P2, both partitions of f's interval, mixing breakpoints and random points."""
        n_rand = int(self.rng.integers(0, 6))
        pts = set(self.rng.uniform(f.lo, f.hi, n_rand).tolist())
        inner = f.breakpoints[1:-1]
        pts.update(t for t in inner.tolist() if self.rng.random() < 0.5)
        pts.discard(f.lo)
        pts.discard(f.hi)
        fine = sorted(pts)
        coarse = [t for t in fine if self.rng.random() < 0.5]
        p2 = bvc.Partition(tuple([f.lo] + fine + [f.hi]))
        p1 = bvc.Partition(tuple([f.lo] + coarse + [f.hi]))
        return p1, p2

    def alpha(self, lo=-3.0, hi=3.0) -> float:
        return float(self.rng.uniform(lo, hi))


# ---------------------------------------------------------------------------
# margins

def _rows(x):
    if isinstance(x, Element):
        return x.data[None, :]
    if isinstance(x, BVFunction):
        return x.data
    x = np.asarray(x, dtype=float)
    return x[None, :] if x.ndim == 1 else x


def ineq(space: Space, small, big) -> float:
    """Worst normalised cone deficit of ``big - small`` over rows."""
    a, b = _rows(small), _rows(big)
    deficit = np.atleast_1d(deficit_data(space, b - a, TOL.eps_eig))
    scale = np.maximum(1.0, np.maximum(
        np.atleast_1d(norm_data(space, a, TOL.eps_eig)),
        np.atleast_1d(norm_data(space, b, TOL.eps_eig)),
    ))
    return float(np.max(deficit / scale))


def eq(space: Space, x, y) -> float:
    a, b = _rows(x), _rows(y)
    resid = np.atleast_1d(norm_data(space, a - b, TOL.eps_eig))
    scale = np.maximum(1.0, np.maximum(
        np.atleast_1d(norm_data(space, a, TOL.eps_eig)),
        np.atleast_1d(norm_data(space, b, TOL.eps_eig)),
    ))
    return float(np.max(resid / scale))


def eq_scalar(x: float, y: float) -> float:
    return abs(x - y) / max(1.0, abs(x), abs(y))


def in_cone_margin(space: Space, rows) -> float:
    return ineq(space, np.zeros_like(_rows(rows)), rows)


def bv0_margin(f: BVFunction) -> float:
    """Distance of f from BV0+: cone deficit of its values and of its increments."""
    m = in_cone_margin(f.space, f.data)
    if len(f) > 1:
        m = max(m, ineq(f.space, f.data[:-1], f.data[1:]))
    return m


def _at(f: BVFunction, ts) -> np.ndarray:
    return eval_data(f, np.asarray(ts, dtype=float))


def _union(*fs) -> np.ndarray:
    out = fs[0].breakpoints
    for f in fs[1:]:
        out = np.union1d(out, f.breakpoints)
    return out


# ---------------------------------------------------------------------------
# the checks: each returns (margin, inputs)

def c_prop_refine(g: Gen):
    f = g.function()
    p1, p2 = g.nested_partitions(f)
    m = ineq(f.space, bvc.variation_sum(f, p1), bvc.variation_sum(f, p2))
    return m, {"f": f, "p1": p1.points, "p2": p2.points}


def c_cor8(g: Gen):
    f = g.function()
    inc = abs_val(f(f.hi) - f(f.lo))
    return ineq(f.space, inc, bvc.total_variation(f)), {"f": f}


def c_thm6_1(g: Gen):
    f = g.function()
    ts = np.concatenate([f.breakpoints, g.rng.uniform(f.lo, f.hi, 4)])
    bound = bvc.total_variation(f) + abs_val(f(f.lo))
    vals = abs_data(f.space, _at(f, ts))
    return ineq(f.space, vals, np.tile(bound.data, (len(ts), 1))), {"f": f}


def c_thm6_2(g: Gen):
    f = g.function()
    a = g.alpha()
    return eq(f.space, bvc.total_variation(a * f), abs(a) * bvc.total_variation(f)), {"f": f, "alpha": a}


def c_thm6_3(g: Gen):
    f, h = g.pair()
    bound = bvc.total_variation(f) + bvc.total_variation(h)
    m = max(
        ineq(f.space, bvc.total_variation(f + h), bound),
        ineq(f.space, bvc.total_variation(f - h), bound),
    )
    return m, {"f": f, "g": h}


def c_thm6_4(g: Gen):
    f = g.function()
    return ineq(f.space, bvc.total_variation(bvn.pointwise_abs(f)), bvc.total_variation(f)), {"f": f}


def c_prop1(g: Gen):
    f = g.monotone()
    if g.rng.random() < 0.5:
        f = -f
    target = abs_val(f(f.hi) - f(f.lo))
    _, p2 = g.nested_partitions(f)
    m = max(
        eq(f.space, bvc.grid_variation(f), target),
        eq(f.space, bvc.variation_sum(f, p2), target),
    )
    if f.space.is_lattice:
        m = max(m, eq(f.space, bvc.total_variation(f), target))
    return m, {"f": f}


def c_thm5(g: Gen):
    f = g.function()
    z = g.interior(f)
    rep = bvc.additivity_check(f, z)
    whole = bvc.total_variation(f)
    return rep.worst_margin / max(1.0, order_unit_norm(whole)), {"f": f, "z": z}


def c_lemma4(g: Gen):
    f = g.function()
    if g.rng.random() < 0.5:
        c = f(f.lo)
        f = f.with_data(np.tile(c.data, (len(f), 1)))
    truly_constant = bool(np.all(f.data == f.data[0]))
    v = order_unit_norm(bvc.grid_variation(f))
    ok = (bvc.is_constant(f) == truly_constant) and ((v == 0.0) == truly_constant)
    return (0.0 if ok else 1.0), {"f": f}


def c_prop9_1(g: Gen):
    f = g.function()
    _, p = g.nested_partitions(f)
    plus, minus = bvc.signed_variation_sums(f, p)
    m = max(
        eq(f.space, plus + minus, bvc.variation_sum(f, p)),
        eq(f.space, plus - minus, f(f.hi) - f(f.lo)),
    )
    return m, {"f": f, "p": p.points}


def c_prop9_2(g: Gen):
    f = g.function()
    p1, p2 = g.nested_partitions(f)
    a1, b1 = bvc.signed_variation_sums(f, p1)
    a2, b2 = bvc.signed_variation_sums(f, p2)
    return max(ineq(f.space, a1, a2), ineq(f.space, b1, b2)), {"f": f, "p1": p1.points, "p2": p2.points}


def c_prop9_3(g: Gen):
    # V+ and V- as suprema of signed sums (attained on the breakpoint grid)
    # against the closed form (V_f +- (f - f(lo))) / 2 at hi.
    f = g.function()
    grid = bvc.Partition(tuple(f.breakpoints))
    sup_plus, sup_minus = bvc.signed_variation_sums(f, grid)
    _, p = g.nested_partitions(f)
    any_plus, any_minus = bvc.signed_variation_sums(f, p)
    pair = bvc.jordan_variations(f)
    m = max(
        eq(f.space, sup_plus + sup_minus, bvc.total_variation(f)),
        eq(f.space, sup_plus, pair.vplus.data[-1]),
        eq(f.space, sup_minus, pair.vminus.data[-1]),
        ineq(f.space, any_plus, sup_plus),
        ineq(f.space, any_minus, sup_minus),
    )
    return m, {"f": f}


def c_thm13_1(g: Gen):
    f = g.function()
    v = bvc.variation_function(f)
    ts = np.sort(np.concatenate([v.breakpoints, g.rng.uniform(f.lo, f.hi, 4)]))
    vals = _at(v, ts)
    m = max(order_unit_norm(v(f.lo)), ineq(f.space, vals[:-1], vals[1:]))
    return m, {"f": f}


def c_thm13_2(g: Gen):
    f = g.function()
    v = bvc.variation_function(f)
    ts = np.concatenate([f.breakpoints[1:], g.rng.uniform(f.lo, f.hi, 3)])
    drift = abs_data(f.space, _at(f, ts) - f.data[0])
    m = ineq(f.space, drift, _at(v, ts))
    # the represented variation function agrees with the supremum on [lo, z]
    for t in ts:
        if t > f.lo:
            m = max(m, eq(f.space, v(t), bvc.total_variation(f, f.lo, t)))
    return m, {"f": f}


def c_thm13_3(g: Gen):
    space = g.space()
    f = g.monotone(space, start=space.zero())
    return eq(space, bvc.variation_function(f).data, f.data), {"f": f}


def c_thm13_4(g: Gen):
    f = g.function()
    pair = bvc.jordan_variations(f)
    return max(in_cone_margin(f.space, pair.vplus.data), in_cone_margin(f.space, pair.vminus.data)), {"f": f}


def c_thm13_5(g: Gen):
    f = g.function()
    pair = bvc.jordan_variations(f)
    m = 0.0
    for h in pair:
        m = max(m, ineq(f.space, h.data[:-1], h.data[1:]))
    return m, {"f": f}


def c_thm13_6(g: Gen):
    f = g.function()
    pair = bvc.jordan_variations(f)
    return eq(f.space, pair.vplus.data + pair.vminus.data, bvc.variation_function(f).data), {"f": f}


def c_thm13_7(g: Gen):
    f = g.function()
    pair = bvc.jordan_variations(f)
    return eq(f.space, f.data[0] + pair.vplus.data - pair.vminus.data, f.data), {"f": f}


def _chain_margin(space, vf, vg, vsum_fn, grid) -> float:
    a, b = _at(vf, grid), _at(vg, grid)
    d = a - b
    ad = abs_data(space, d)
    m = max(ineq(space, d, ad), ineq(space, -d, ad))
    for s in (1.0, -1.0):
        vs = _at(vsum_fn(s), grid)
        m = max(m, ineq(space, ad, vs), ineq(space, vs, a + b))
    return m


def c_cor14(g: Gen):
    f, h = g.pair()
    vf, vh = bvc.variation_function(f), bvc.variation_function(h)
    grid = _union(f, h)
    m = _chain_margin(f.space, vf, vh, lambda s: bvc.variation_function(f + s * h), grid)
    # second form, with the variation functions themselves as inputs
    m = max(m, _chain_margin(f.space, vf, vh, lambda s: bvc.variation_function(vf + s * vh), grid))
    return m, {"f": f, "g": h}


def c_thm7_1(g: Gen):
    space, mode = g.space(), g.mode()
    f, h = g.cone_function(space, mode), g.cone_function(space, mode)
    a = g.alpha(0.0, 3.0)
    m = max(in_cone_margin(space, (f + h).data), in_cone_margin(space, (a * f).data))
    # properness: a nonzero cone-valued function has -f outside BV+
    if order_unit_norm(Element(space, f.data[0])) > 1e-6 and bvn.in_BV_plus(-f):
        m = max(m, 1.0)
    return m, {"f": f, "g": h, "alpha": a}


def c_thm7_2(g: Gen):
    f = g.function()
    s = bvn.sup_norm(f)
    e = np.tile(f.space.unit.data, (len(f), 1))
    m = max(in_cone_margin(f.space, s * e + f.data), in_cone_margin(f.space, s * e - f.data))
    if s > 1e-6:
        # nothing smaller works: the order-unit norm is the sup norm
        t = s * (1 - 1e-6)
        if bvn.in_BV_plus(f.with_data(t * e + f.data)) and bvn.in_BV_plus(f.with_data(t * e - f.data)):
            m = max(m, 1.0)
    return m, {"f": f}


def _fn_eq(f: BVFunction, h: BVFunction) -> float:
    grid = _union(f, h)
    return eq(f.space, _at(f, grid), _at(h, grid))


def c_thm7_3(g: Gen):
    space, mode = g.space(), g.mode()
    f = g.function(space, mode)
    pa = bvn.pointwise_abs
    c = g.cone_function(space, mode)
    a = g.alpha()
    m = _fn_eq(pa(c), c)
    m = max(m, in_cone_margin(space, (pa(f) + f).data), in_cone_margin(space, (pa(f) - f).data))
    m = max(m, _fn_eq(pa(a * f), abs(a) * pa(f)))
    # (d), (e) with orthogonal triples built at every breakpoint; step functions
    # so the pointwise hypotheses hold on the whole interval
    k = g.k()
    bps = _gen_breakpoints(g.rng, k)
    triples = [_orthogonal_triple(space, g.rng, g.scale, TOL) for _ in range(k)]
    x, y, z, z2 = (
        BVFunction(space, bps, [t[i] for t in triples], Mode.CONSTANT_RIGHT) for i in range(4)
    )
    m = max(m, _fn_eq(pa(x - y), x + y), _fn_eq(pa(x - z2), x + z2))
    for s in (1.0, -1.0):
        w = pa(y + s * z)
        m = max(m, _fn_eq(pa(x - w), x + w))
    return m, {"f": f, "alpha": a}


def c_thm7_4(g: Gen):
    space, mode = g.space(), g.mode()
    h = g.function(space, mode)
    c = g.rng.uniform(-1.0, 1.0, space.size)
    f = h.with_data(h.data * c)  # |f| <= |h| everywhere
    m = max(0.0, bvn.sup_norm(f) - bvn.sup_norm(h)) / max(1.0, bvn.sup_norm(h))
    m = max(m, eq_scalar(bvn.sup_norm(bvn.pointwise_abs(h)), bvn.sup_norm(h)))
    p, q = g.cone_function(space, mode), g.cone_function(space, mode)
    j = bvn.pointwise_join(p, q)
    m = max(m, eq_scalar(bvn.sup_norm(j), max(bvn.sup_norm(p), bvn.sup_norm(q))))
    return m, {"f": f, "g": h, "p": p, "q": q}


def c_thm12_1(g: Gen):
    space, mode = g.space(), g.mode()
    f, h = g.bv0plus(space, mode), g.bv0plus(space, mode)
    a = g.alpha(0.0, 3.0)
    return max(bv0_margin(f + h), bv0_margin(a * f)), {"f": f, "g": h}


def c_thm12_2(g: Gen):
    f = g.bv0plus()
    return eq(f.space, bvn.abs_V(f).data, f.data), {"f": f}


def c_thm12_3(g: Gen):
    f = g.function()
    av = bvn.abs_V(f)
    return max(bv0_margin(av), bv0_margin(av + f), bv0_margin(av - f)), {"f": f}


def c_thm12_4(g: Gen):
    f = g.function()
    a = g.alpha()
    return eq(f.space, bvn.abs_V(a * f).data, abs(a) * bvn.abs_V(f).data), {"f": f, "alpha": a}


def c_thm12_5(g: Gen):
    # f, g in BV0+ with disjoint supports (so |f - g|_V = f + g) and
    # 0 <=_0 h <=_0 g built from fractions of g's increments.
    space, mode = g.space(), g.mode()
    k = g.k()
    bps = _gen_breakpoints(g.rng, k)
    mask = g.rng.random(space.size) < 0.5
    if space.kind is SpaceKind.SYM and space.dim > 1:
        raise InvalidArgument("thm12.5 is a lattice check")
    fd = np.cumsum(g.rng.uniform(0, g.scale / k, (k, space.size)), axis=0) * mask
    gd = np.cumsum(g.rng.uniform(0, g.scale / k, (k, space.size)), axis=0) * ~mask
    steps = np.diff(np.vstack([np.zeros(space.size), gd]), axis=0)
    hd = np.cumsum(steps * g.rng.uniform(0, 1, steps.shape), axis=0)
    f_, g_, h_ = (BVFunction(space, bps, d, mode) for d in (fd, gd, hd))
    hyp = max(
        eq(space, bvn.abs_V(f_ - g_).data, (f_ + g_).data),
        bv0_margin(g_ - h_), bv0_margin(h_), bv0_margin(f_), bv0_margin(g_),
    )
    return max(hyp, eq(space, bvn.abs_V(f_ - h_).data, (f_ + h_).data)), {"f": f_, "g": g_, "h": h_}


def c_thm12_6(g: Gen):
    f, h = g.pair()
    grid = _union(f, h)
    bound = _at(bvn.abs_V(f), grid) + _at(bvn.abs_V(h), grid)
    m = 0.0
    for s in (1.0, -1.0):
        m = max(m, ineq(f.space, _at(bvn.abs_V(f + s * h), grid), bound))
    return m, {"f": f, "g": h}


def c_thm12_7(g: Gen):
    f, h = g.pair()
    j, mt = bvn.orderv_join(f, h), bvn.orderv_meet(f, h)
    m = max(bv0_margin(f - mt), bv0_margin(h - mt), bv0_margin(j - f), bv0_margin(j - h))
    m = max(m, _fn_eq(j, bvn.orderv_join(h, f)))
    return m, {"f": f, "g": h}


def c_thm3_norm(g: Gen):
    f, h = g.pair()
    if g.rng.random() < 0.1:
        f = f * 0.0
    a = g.alpha()
    nf, nh = bvn.bv_norm(f), bvn.bv_norm(h)
    m = eq_scalar(bvn.bv_norm(a * f), abs(a) * nf)
    m = max(m, max(0.0, bvn.bv_norm(f + h) - nf - nh) / max(1.0, nf + nh))
    is_zero = bool(np.all(f.data == 0.0))
    if (nf == 0.0) != is_zero or (nf == 0.0) != (bvc.is_constant(f) and not np.any(f.data[0])):
        m = max(m, 1.0)
    return m, {"f": f, "g": h, "alpha": a}


def c_thm3_1(g: Gen):
    f = g.function()
    return eq_scalar(bvn.bv_norm(f), bvn.sup_norm(bvn.abs_V(f))), {"f": f}


def c_thm3_2(g: Gen):
    f = g.function()
    s, b = bvn.sup_norm(f), bvn.bv_norm(f)
    return max(0.0, s - b) / max(1.0, b), {"f": f}


COMPLETENESS_TERMS = 25
COMPLETENESS_BOUND = 1e-6


def geometric_partial_sums(h: BVFunction, n: int = COMPLETENESS_TERMS):
    """``f_n = sum_{k=1..n} 2^-k h``; Cauchy in the BV norm with limit ``h``."""
    out, acc = [], h * 0.0
    for k in range(1, n + 1):
        acc = acc + (2.0 ** -k) * h
        out.append(acc)
    return out


def c_thm3_3(g: Gen):
    h = g.function()
    seq = geometric_partial_sums(h)
    nh = bvn.bv_norm(h)
    # Cauchy: ||f_{n+1} - f_n|| = 2^-(n+1) ||h||
    m = 0.0
    for n in range(len(seq) - 1):
        step = bvn.bv_norm(seq[n + 1] - seq[n])
        m = max(m, abs(step - 2.0 ** -(n + 2) * nh))
    m = max(m, bvn.bv_norm(seq[-1] - h))
    return m, {"h": h}


def c_thm3_4(g: Gen):
    f = g.function()
    if g.rng.random() < 0.5:
        a = g.alpha(1.0, 3.0) * (1 if g.rng.random() < 0.5 else -1)
        h = a * f
    else:
        h = bvn.abs_V(f) + g.bv0plus(f.space, f.mode)
    grid = _union(f, h)
    hyp = ineq(f.space, _at(bvn.abs_V(f), grid), _at(bvn.abs_V(h), grid))
    nf, nh = bvn.bv_norm(f), bvn.bv_norm(h)
    return max(hyp, max(0.0, nf - nh) / max(1.0, nh)), {"f": f, "g": h}


def c_thm3_5(g: Gen):
    space, mode = g.space(), g.mode()
    f, h = g.cone_function(space, mode), g.cone_function(space, mode)
    s = bvn.sup_norm(bvn.orderv_join(f, h))
    b = bvn.bv_norm(f) + bvn.bv_norm(h)
    return max(0.0, s - b) / max(1.0, b), {"f": f, "g": h}


def _cor_check(g: Gen, objective: Callable, result_fn: Callable):
    f = g.function()
    res = result_fn(f)
    cert = res.certificate
    m = max(bv0_margin(cert), bv0_margin(cert + f), bv0_margin(cert - f))
    m = max(m, eq_scalar(res.value, bvn.bv_norm(f)), eq_scalar(res.value, objective(cert)))
    # a random feasible competitor dominates the certificate
    other = cert + g.bv0plus(f.space, f.mode)
    m = max(m, bv0_margin(other), bv0_margin(other + f), bv0_margin(other - f))
    grid = _union(cert, other)
    m = max(m, ineq(f.space, _at(cert, grid), _at(other, grid)))
    m = max(m, max(0.0, res.value - objective(other)) / max(1.0, res.value))
    return m, {"f": f}


def c_cor15(g: Gen):
    return _cor_check(g, bvn.sup_norm, bvn.inf_norm_sup_objective)


def c_cor16(g: Gen):
    return _cor_check(g, bvn.bv_norm, bvn.inf_norm_bv_objective)


def c_def3_4(g: Gen):
    from .ordered_core import check_abs_axioms

    space = g.space()
    rep = check_abs_axioms(space, 1, TOL, g.rng, g.scale)
    return rep.worst_margin, {"space": space.to_dict()}


def c_thm2(g: Gen):
    space = g.space()
    a, b, c = g.element(space), g.element(space), g.element(space)
    j = join(a, b)
    m = max(ineq(space, a, j), ineq(space, b, j))
    # any upper bound dominates the join
    ub = Element(space, np.maximum(a.data, b.data)) + g.cone_element(space)
    m = max(m, ineq(space, j, ub))
    mt = meet(a, b)
    m = max(m, ineq(space, mt, a), ineq(space, mt, b))
    m = max(m, eq(space, join(join(a, b), c), join(a, join(b, c))))
    x = abs_val(a) + g.cone_element(space)  # +-a <= x
    m = max(m, ineq(space, abs_val(a), x))
    m = max(m, ineq(space, abs_val(a + b), abs_val(a) + abs_val(b)))
    return m, {"a": a, "b": b, "c": c}


def c_sec2_order_unit(g: Gen):
    space = g.space()
    a = g.element(space)
    n = order_unit_norm(a)
    e = space.unit
    m = max(in_cone_margin(space, n * e + a), in_cone_margin(space, n * e - a))
    m = max(m, eq_scalar(order_unit_norm(abs_val(a)), n), eq_scalar(order_unit_norm(e), 1.0))
    # Archimedean: eps e + c in the cone for eps down to 2^-20 forces c into the cone
    c = g.cone_element(space) - 1e-7 * g.rng.random() * e
    if all(in_cone_margin(space, 2.0 ** -i * e + c) == 0.0 for i in range(21)):
        m = max(m, in_cone_margin(space, c) - 4 * TOL.eps_cone)
    return m, {"a": a}


def c_sec2_orthogonal(g: Gen):
    space = g.space()
    a = g.element(space)
    p, q = pos_part(a), neg_part(a)
    m = max(eq(space, p - q, a), eq(space, p + q, abs_val(a)))
    m = max(m, eq(space, abs_val(p - q), p + q))
    m = max(m, in_cone_margin(space, p), in_cone_margin(space, q))
    return m, {"a": a}


def c_sec2_infty(g: Gen):
    # orthogonal cone elements, and any smaller pair, are infinity-orthogonal
    space = g.space()
    x, y, _, y1 = _orthogonal_triple(space, g.rng, g.scale, TOL)
    m = 0.0
    for u, v in ((x, y), (x, y1)):
        al, be = g.rng.uniform(-10, 10, 2)
        lhs = order_unit_norm(al * u + be * v)
        rhs = max(abs(al) * order_unit_norm(u), abs(be) * order_unit_norm(v))
        m = max(m, eq_scalar(lhs, rhs))
    return m, {"x": x, "y": y}


@dataclass(frozen=True)
class Check:
    check_id: str
    anchor: str
    run: Callable
    lattice_free: bool = False
    bound: float = TOL.eps_cone


CHECKS = (
    Check("sec2.order_unit", "norm determined by e", c_sec2_order_unit, True),
    Check("sec2.orthogonal", "owns a unique orthogonal decomposition", c_sec2_orthogonal, True),
    Check("sec2.infty_orthogonal", "x is orthogonal to y", c_sec2_infty, True),
    Check("def3.4", "satisfying the following conditions", c_def3_4, True),
    Check("thm2", "is associative in", c_thm2),
    Check("prop.refine", "Σ_{𝒫₁}[f] ≤ Σ_{𝒫₂}[f]", c_prop_refine),
    Check("cor8", "|f(y)−f(x)| ≤ 𝒱(f)", c_cor8),
    Check("thm6.1", "is also of bounded variation with", c_thm6_1),
    Check("thm6.2", "is also of bounded variation with", c_thm6_2, bound=1e-12),
    Check("thm6.3", "is also of bounded variation with", c_thm6_3),
    Check("thm6.4", "is also of bounded variation with", c_thm6_4),
    Check("prop1", "𝒱(f)=|f(y)−f(x)|", c_prop1, True),
    Check("thm5", "𝒱(f,x,y)=𝒱(f,x,z)+𝒱(f,z,y)", c_thm5),
    Check("lemma4", "constant if and only if", c_lemma4, True),
    Check("prop9.1", "𝒱(f)=𝒱⁺(f) + 𝒱⁻(f)", c_prop9_1, True),
    Check("prop9.2", "𝒱(f)=𝒱⁺(f) + 𝒱⁻(f)", c_prop9_2),
    Check("prop9.3", "𝒱(f)=𝒱⁺(f) + 𝒱⁻(f)", c_prop9_3),
    Check("thm13.1", "is monotonically increasing such that", c_thm13_1),
    Check("thm13.2", "is monotonically increasing such that", c_thm13_2),
    Check("thm13.3", "is monotonically increasing such that", c_thm13_3),
    Check("thm13.4", "is monotonically increasing such that", c_thm13_4),
    Check("thm13.5", "is monotonically increasing such that", c_thm13_5),
    Check("thm13.6", "is monotonically increasing such that", c_thm13_6),
    Check("thm13.7", "is monotonically increasing such that", c_thm13_7),
    Check("cor14", "≤ 𝒱_{f±g} ≤ 𝒱_f+𝒱_g", c_cor14),
    Check("thm7.1", "forms an order unit space", c_thm7_1, True),
    Check("thm7.2", "forms an order unit space", c_thm7_2, True),
    Check("thm7.3", "forms an absolutely ordered space", c_thm7_3, True),
    Check("thm7.4", "also forms an AM-space", c_thm7_4, bound=1e-12),
    Check("thm12.1", "|f|_V ± f ∈ BV₀⁺", c_thm12_1, True),
    Check("thm12.2", "|f|_V ± f ∈ BV₀⁺", c_thm12_2),
    Check("thm12.3", "|f|_V ± f ∈ BV₀⁺", c_thm12_3),
    Check("thm12.4", "|f|_V ± f ∈ BV₀⁺", c_thm12_4),
    Check("thm12.5", "|f|_V ± f ∈ BV₀⁺", c_thm12_5),
    Check("thm12.6", "|f|_V ± f ∈ BV₀⁺", c_thm12_6),
    Check("thm12.7", "|f|_V ± f ∈ BV₀⁺", c_thm12_7),
    Check("thm3.norm", "‖f‖_BV = ‖|f(x)|+𝒱(f)‖", c_thm3_norm),
    Check("thm3.1", "‖f‖_BV = ‖|f(x)|+𝒱(f)‖", c_thm3_1, bound=1e-12),
    Check("thm3.2", "‖f‖_BV = ‖|f(x)|+𝒱(f)‖", c_thm3_2),
    Check("thm3.3", "‖f‖_BV = ‖|f(x)|+𝒱(f)‖", c_thm3_3, bound=COMPLETENESS_BOUND),
    Check("thm3.4", "‖f‖_BV = ‖|f(x)|+𝒱(f)‖", c_thm3_4),
    Check("thm3.5", "‖f‖_BV = ‖|f(x)|+𝒱(f)‖", c_thm3_5),
    Check("cor15", "inf_{g∈BV₀⁺}", c_cor15, bound=1e-12),
    Check("cor16", "inf_{g∈BV₀⁺}", c_cor16, bound=1e-12),
)

_BY_ID = {c.check_id: c for c in CHECKS}


def traceability() -> dict:
    """check_id -> quoted anchor of the statement it verifies."""
    return {c.check_id: c.anchor for c in CHECKS}


def _serialize(inputs: dict) -> dict:
    out = {}
    for k, v in inputs.items():
        if isinstance(v, BVFunction):
            out[k] = v.to_json()
        elif isinstance(v, Element):
            out[k] = {"space": v.space.to_dict(), "data": v.tolist()}
        elif isinstance(v, (tuple, list)):
            out[k] = [float(t) for t in v]
        elif isinstance(v, (float, np.floating)):
            out[k] = float(v)
        else:
            out[k] = v
    return out


def check_rng(seed: int, check_id: str) -> np.random.Generator:
    return np.random.default_rng([int(seed) & 0xFFFFFFFFFFFFFFFF, zlib.crc32(check_id.encode())])


def run_check(check_id: str, config: GenConfig, kind=SpaceKind.LATTICE) -> CheckReport:
    check = _BY_ID[check_id]
    gen = Gen(config, check_rng(config.seed, check_id), kind)
    passed = failed = 0
    worst = 0.0
    witness = None
    for _ in range(config.trials):
        margin, inputs = check.run(gen)
        worst = max(worst, margin)
        if margin <= check.bound:
            passed += 1
        else:
            failed += 1
            if witness is None:
                witness = {"margin": margin, "inputs": _serialize(inputs)}
    return CheckReport(check_id, passed, failed, worst, witness)


def _applicable(check: Check, config: GenConfig, kind: SpaceKind) -> bool:
    return kind is SpaceKind.LATTICE or check.lattice_free or config.dim_range[1] == 1


def _run_check_args(args):
    return run_check(*args)


def run_suite(config: GenConfig = GenConfig(), kind=SpaceKind.LATTICE, workers: int = 1) -> list:
    """Run every applicable check ``config.trials`` times; reports in registry order.

    For ``kind="sym"`` only the checks that hold in any absolutely ordered
    space run, unless ``dim_range`` is ``(1, 1)`` where Sym(1) is just R.
    """
    kind = SpaceKind(kind)
    todo = [(c.check_id, config, kind) for c in CHECKS if _applicable(c, config, kind)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_run_check_args, todo))
    return [run_check(*args) for args in todo]


# ---------------------------------------------------------------------------
# witness search

class WitnessKind(str, Enum):
    TRIANGLE = "triangle"
    REFINEMENT = "refinement"


def triangle_margin(a: Element, b: Element) -> float:
    """How far ``|a| + |b| - |a + b|`` is from the cone (positive = violated)."""
    return float(deficit_data(a.space, (abs_val(a) + abs_val(b) - abs_val(a + b)).data))


def refinement_margin(f: BVFunction) -> float:
    """Deficit of (sum over {lo, mid, hi}) - (sum over {lo, hi}) for a 3-breakpoint f."""
    coarse = bvc.variation_sum(f, (f.lo, f.hi))
    fine = bvc.variation_sum(f, tuple(f.breakpoints))
    return float(deficit_data(f.space, (fine - coarse).data))


def find_nonlattice_witness(
    kind,
    budget: int,
    rng=None,
    space: Optional[Space] = None,
    scale: float = 1.0,
) -> CheckReport:
    """Search for a violated triangle inequality or refinement monotonicity.

    Samples until a violation larger than ``WITNESS_THRESHOLD`` is found or
    ``budget`` samples are spent. Defaults to Sym(2).
    """
    kind = WitnessKind(kind)
    if budget < 1:
        raise InvalidArgument("budget must be >= 1")
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(0 if rng is None else rng)
    space = space or Space.sym(2)
    check_id = f"witness.{kind.value}"
    worst = 0.0
    for i in range(budget):
        if kind is WitnessKind.TRIANGLE:
            a, b = gen_element(space, rng, scale), gen_element(space, rng, scale)
            m = triangle_margin(a, b)
            wit = {"kind": kind.value, "space": space.to_dict(), "a": a.tolist(), "b": b.tolist()}
        else:
            vals = np.array([gen_element(space, rng, scale).data for _ in range(3)])
            f = BVFunction(space, [0.0, 0.5, 1.0], vals, Mode.LINEAR)
            m = refinement_margin(f)
            wit = {"kind": kind.value, "space": space.to_dict(), "f": f.to_json()}
        worst = max(worst, m)
        if m > WITNESS_THRESHOLD:
            wit["margin"] = m
            return CheckReport(check_id, i, 1, m, wit, note="found")
    return CheckReport(check_id, budget, 0, worst, None, note="not found")


def replay_witness(witness: dict) -> float:
    """Recompute the violation margin of a serialized witness."""
    space = Space.from_dict(witness["space"])
    if witness["kind"] == WitnessKind.TRIANGLE.value:
        return triangle_margin(space.element(witness["a"]), space.element(witness["b"]))
    return refinement_margin(BVFunction.from_json(witness["f"]))
