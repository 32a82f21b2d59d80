import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bvorder import (
    BVFunction,
    Mode,
    NonLatticeSpace,
    NormResult,
    Space,
    abs_V,
    bv_norm,
    in_BV0_plus,
    in_BV_plus,
    inf_norm_bv_objective,
    inf_norm_sup_objective,
    leq0,
    leq_pointwise,
    order_unit_norm,
    orderv_join,
    orderv_meet,
    pointwise_abs,
    pointwise_bv_ops,
    pointwise_join,
    pointwise_meet,
    sup_norm,
    total_variation,
)

from conftest import R2, e1, lattice_functions, lattice_pairs, ramp

ZERO = BVFunction(R2, [0, 1], [[0, 0], [0, 0]])


def vals(f):
    return f.data.tolist()


# frozen examples

def test_cone_examples(E1):
    assert in_BV_plus(ramp())
    assert not in_BV_plus(E1)
    assert in_BV_plus(ZERO)
    assert in_BV0_plus(ramp())
    assert not in_BV0_plus(BVFunction(R2, [0, 1], [[1, 1], [0, 1]]))
    assert in_BV0_plus(BVFunction.constant(R2.element([0.5, 2])))


def test_sup_norm_examples(E1):
    assert sup_norm(E1) == 1.0
    c = R2.element([-3, 2])
    assert sup_norm(BVFunction.constant(c)) == order_unit_norm(c)
    assert sup_norm(-2.5 * E1) == 2.5


def test_abs_V_examples(E1):
    assert vals(abs_V(E1)) == [[0, 0], [1, 1], [2, 2]]
    r = ramp()
    assert abs_V(r) == r
    assert vals(abs_V(-3 * E1)) == vals(3 * abs_V(E1))


def test_bv_norm_examples(E1):
    assert bv_norm(E1) == 2.0
    c = R2.element([-3, 2])
    assert bv_norm(BVFunction.constant(c)) == 3.0
    assert bv_norm(ramp()) == 2.0


def test_infimum_norm_examples(E1):
    for fn in (inf_norm_sup_objective, inf_norm_bv_objective):
        res = fn(E1)
        assert res.value == 2.0
        assert vals(res.certificate) == [[0, 0], [1, 1], [2, 2]]
        assert fn(ramp()).value == order_unit_norm(ramp()(1.0))
        assert fn(ZERO).value == 0.0


def test_norm_result_json(E1):
    res = inf_norm_sup_objective(E1)
    back = NormResult.from_json(res.to_json())
    assert back.value == res.value and back.certificate == res.certificate
    assert back.method == res.method


def test_orderv_examples():
    f = BVFunction(R2, [0, 0.4, 1], [[1, 2], [1.5, 2], [3, 2.5]])
    assert orderv_join(f, f) == f
    assert orderv_meet(f, f) == f
    g = ramp()
    assert orderv_join(g, -g) == g
    assert orderv_meet(g, -g) == -g


def test_pointwise_examples(E1):
    assert vals(pointwise_abs(E1)) == [[0, 0], [1, 1], [0, 0]]
    r = ramp()
    assert pointwise_abs(r) == r
    ops = pointwise_bv_ops(E1, ZERO.with_data(np.zeros((3, 2)), E1.breakpoints))
    assert vals(ops["join"]) == [[0, 0], [1, 0], [0, 0]]
    assert vals(ops["meet"]) == [[0, 0], [0, -1], [0, 0]]


def test_pointwise_abs_inserts_crossings():
    f = BVFunction(Space.lattice(1), [0, 1], [[-1.0], [1.0]])
    a = pointwise_abs(f)
    assert a.breakpoints.tolist() == [0.0, 0.5, 1.0]
    assert vals(a) == [[1.0], [0.0], [1.0]]
    for t in np.linspace(0, 1, 11):
        assert a(t).data[0] == pytest.approx(abs(2 * t - 1), abs=1e-15)


def test_am_law_example():
    f = BVFunction(R2, [0, 1], [[0.2, 1.0], [0.5, 0.1]])
    g = BVFunction(R2, [0, 1], [[0.9, 0.0], [0.3, 0.3]])
    assert sup_norm(pointwise_join(f, g)) == max(sup_norm(f), sup_norm(g))


def test_nonlattice_rejected():
    s2 = Space.sym(2)
    f = BVFunction(s2, [0, 1], [np.eye(2), np.diag([1.0, -1.0])])
    for fn in (abs_V, bv_norm, inf_norm_sup_objective, inf_norm_bv_objective):
        with pytest.raises(NonLatticeSpace):
            fn(f)
    assert sup_norm(f) == pytest.approx(1.0)


# properties

@given(lattice_functions())
def test_abs_V_in_cone_and_dominates(f):
    av = abs_V(f)
    assert in_BV0_plus(av)
    assert in_BV0_plus(av + f) and in_BV0_plus(av - f)
    assert bv_norm(f) == pytest.approx(sup_norm(av), rel=1e-12, abs=1e-12)


@given(lattice_functions())
def test_sup_below_bv(f):
    assert sup_norm(f) <= bv_norm(f) * (1 + 1e-12) + 1e-12


@given(lattice_pairs(), st.floats(-3, 3))
def test_bv_norm_is_a_norm(pair, alpha):
    f, g = pair
    assert bv_norm(alpha * f) == pytest.approx(abs(alpha) * bv_norm(f), rel=1e-12, abs=1e-12)
    assert bv_norm(f + g) <= bv_norm(f) + bv_norm(g) + 1e-9
    assert (bv_norm(f) == 0) == (not np.any(f.data))


@given(lattice_functions(), st.integers(0, 2**31))
def test_certificate_is_minimal(f, seed):
    rng = np.random.default_rng(seed)
    res = inf_norm_sup_objective(f)
    cert = res.certificate
    assert res.value == pytest.approx(bv_norm(f), rel=1e-12, abs=1e-12)
    assert inf_norm_bv_objective(f).value == pytest.approx(bv_norm(f), rel=1e-12, abs=1e-12)
    steps = rng.uniform(0, 1, (len(f), f.space.size))
    g = cert + f.with_data(np.cumsum(steps, axis=0))
    assert in_BV0_plus(g + f) and in_BV0_plus(g - f)
    assert leq_pointwise(cert, g)
    assert res.value <= sup_norm(g) + 1e-12


@given(lattice_pairs())
def test_orderv_bounds(pair):
    f, g = pair
    j, m = orderv_join(f, g), orderv_meet(f, g)
    assert leq0(f, j) and leq0(g, j)
    assert leq0(m, f) and leq0(m, g)


@given(lattice_pairs())
def test_pointwise_lattice_ops(pair):
    f, g = pair
    j, m = pointwise_join(f, g), pointwise_meet(f, g)
    for t in np.linspace(0, 1, 17):
        a, b = f(t).data, g(t).data
        np.testing.assert_allclose(j(t).data, np.maximum(a, b), atol=1e-9)
        np.testing.assert_allclose(m(t).data, np.minimum(a, b), atol=1e-9)
        np.testing.assert_allclose(pointwise_abs(f)(t).data, np.abs(a), atol=1e-9)


@given(lattice_functions())
def test_variation_of_abs(f):
    assert np.all(total_variation(pointwise_abs(f)).data <= total_variation(f).data + 1e-9)


def test_constant_right_pointwise():
    f = e1(Mode.CONSTANT_RIGHT)
    a = pointwise_abs(f)
    assert a.breakpoints.tolist() == f.breakpoints.tolist()
    assert vals(a) == [[0, 0], [1, 1], [0, 0]]
