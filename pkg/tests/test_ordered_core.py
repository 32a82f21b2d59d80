import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bvorder import (
    DEFAULT_TOL,
    InvalidArgument,
    InvalidElement,
    NotInCone,
    Space,
    SpaceMismatch,
    Tolerance,
    abs_val,
    check_abs_axioms,
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
from bvorder.ordered_core import element_from_json, element_to_json, pack, unpack

from conftest import finite, sym_matrices

R2 = Space.lattice(2)
S2 = Space.sym(2)
SWAP = [[0.0, 1.0], [1.0, 0.0]]


def r2(*xs):
    return R2.element(list(xs))


# frozen examples

def test_cone_membership():
    assert in_cone(r2(0, 1))
    assert not in_cone(r2(-1, 2))
    assert not in_cone(S2.element(SWAP))
    assert in_cone(S2.element([[2, 1], [1, 2]]))


def test_leq_examples(rng):
    assert leq(r2(0, 1), r2(1, 1))
    assert not leq(r2(1, 0), r2(0, 1))
    a = R2.element(rng.normal(size=2))
    assert leq(a, a)


def test_abs_examples():
    assert abs_val(r2(-2, 3)) == r2(2, 3)
    np.testing.assert_allclose(abs_val(S2.element(SWAP)).matrix(), np.eye(2), atol=1e-14)


def test_parts_examples():
    assert pos_part(r2(3, -4)) == r2(3, 0)
    assert neg_part(r2(3, -4)) == r2(0, 4)
    a = S2.element(SWAP)
    np.testing.assert_allclose(pos_part(a).matrix(), [[0.5, 0.5], [0.5, 0.5]], atol=1e-14)
    np.testing.assert_allclose(neg_part(a).matrix(), [[0.5, -0.5], [-0.5, 0.5]], atol=1e-14)
    c = r2(1, 2)
    assert pos_part(c) == c and neg_part(c) == R2.zero()


def test_join_meet_examples():
    assert join(r2(1, -2), r2(0, 3)) == r2(1, 3)
    assert meet(r2(1, -2), r2(0, 3)) == r2(0, -2)
    a = r2(0.3, -7)
    assert join(a, a) == a


def test_norm_examples():
    assert order_unit_norm(r2(-2, 3)) == 3.0
    assert order_unit_norm(R2.unit) == 1.0
    assert order_unit_norm(S2.unit) == 1.0
    assert order_unit_norm(S2.element(SWAP)) == pytest.approx(1.0, abs=1e-14)


def test_orthogonal_examples(rng):
    assert orthogonal(r2(1, 0), r2(0, 2))
    assert not orthogonal(r2(1, 1), r2(0, 2))
    for space in (Space.lattice(3), Space.sym(3)):
        m = rng.normal(size=(3, 3))
        a = space.element(m + m.T) if space.kind.value == "sym" else space.element(m[0])
        assert orthogonal(pos_part(a), neg_part(a))
    with pytest.raises(NotInCone):
        orthogonal(r2(-1, 0), r2(0, 1))


def test_infty_orthogonal_examples():
    rep = infty_orthogonal_sampled(r2(1, 0), r2(0, 2), 200, rng=0)
    assert rep.ok and rep.worst_margin == 0.0
    rep = infty_orthogonal_sampled(r2(1, 1), r2(1, 1), 1, coefficients=[(1.0, 1.0)])
    assert rep.failed == 1 and rep.worst_margin == pytest.approx(1.0)
    assert infty_orthogonal_sampled(r2(0.4, 3), R2.zero(), 50, rng=1).ok
    with pytest.raises(InvalidArgument):
        infty_orthogonal_sampled(r2(1, 0), r2(0, 1), 0)


def test_eigen_examples():
    q, lam = sym_eigendecomposition(S2.element([[2, 0], [0, 5]]))
    np.testing.assert_allclose(sorted(lam), [2, 5])
    np.testing.assert_allclose(np.abs(q), np.eye(2))
    _, lam = sym_eigendecomposition(S2.element(SWAP))
    np.testing.assert_allclose(sorted(lam), [-1, 1], atol=1e-15)
    q, lam = sym_eigendecomposition(S2.unit)
    np.testing.assert_allclose(lam, [1, 1])
    np.testing.assert_allclose(q @ q.T, np.eye(2), atol=1e-15)


def test_axiom_examples():
    rep = check_abs_axioms(Space.lattice(4), 500, rng=0)
    assert rep.ok and rep.trials == 500
    assert all(v["failed"] == 0 for v in rep.details.values())
    rep = check_abs_axioms(S2, 200, rng=0)
    assert rep.ok
    with pytest.raises(InvalidArgument):
        check_abs_axioms(R2, 0)


# validation

def test_element_validation():
    with pytest.raises(InvalidElement):
        R2.element([1.0, np.nan])
    with pytest.raises(InvalidElement):
        R2.element([1.0, 2.0, 3.0])
    with pytest.raises(InvalidElement):
        S2.element([[0, 1], [2, 0]])
    with pytest.raises(SpaceMismatch):
        r2(1, 2) + Space.lattice(3).zero()
    with pytest.raises(SpaceMismatch):
        leq(r2(1, 2), Space.lattice(3).zero())


def test_tolerance_validation():
    with pytest.raises(InvalidArgument):
        Tolerance(eps_cone=1e-12, eps_eig=1e-9)
    with pytest.raises(InvalidArgument):
        Tolerance(eps_cone=0.1)


def test_element_immutable():
    a = r2(1, 2)
    with pytest.raises((AttributeError, ValueError)):
        a.data[0] = 5.0
    with pytest.raises(AttributeError):
        a.space = S2


def test_json_round_trip(rng):
    for space in (Space.lattice(3), Space.sym(3)):
        m = rng.normal(size=(3, 3))
        a = space.element(m + m.T) if space.kind.value == "sym" else space.element(m[0])
        back = element_from_json(json.loads(json.dumps(element_to_json(a))))
        assert back == a


def test_pack_unpack(rng):
    m = rng.normal(size=(4, 4))
    m = m + m.T
    np.testing.assert_array_equal(unpack(pack(m), 4), m)


def test_sym1_agrees_with_reals():
    s1, r1 = Space.sym(1), Space.lattice(1)
    for v in (-2.5, 0.0, 3.0):
        assert abs_val(s1.element([v])).data[0] == abs_val(r1.element([v])).data[0]
        assert order_unit_norm(s1.element([v])) == order_unit_norm(r1.element([v]))
    assert s1.is_lattice


# eigensolver oracle: numpy.linalg.eigh

@given(sym_matrices())
def test_jacobi_matches_eigh(m):
    q, lam = jacobi_eigh(m, DEFAULT_TOL.eps_eig)
    ref = np.linalg.eigvalsh(m)
    scale = max(1.0, np.linalg.norm(m))
    np.testing.assert_allclose(np.sort(lam), ref, atol=1e-11 * scale)
    fro = np.linalg.norm(m)
    assert np.linalg.norm(q @ np.diag(lam) @ q.T - m) <= 10 * DEFAULT_TOL.eps_eig * max(fro, 1e-300) + 1e-300
    np.testing.assert_allclose(q.T @ q, np.eye(len(m)), atol=1e-12)


def test_jacobi_larger_random(rng):
    for d in (5, 8, 12):
        m = rng.normal(size=(d, d))
        m = m + m.T
        q, lam = jacobi_eigh(m)
        np.testing.assert_allclose(np.sort(lam), np.linalg.eigvalsh(m), atol=1e-11 * np.linalg.norm(m))
        assert np.linalg.norm(q @ np.diag(lam) @ q.T - m) <= 10 * 1e-12 * np.linalg.norm(m)


@given(sym_matrices())
def test_abs_matches_eigh_oracle(m):
    d = len(m)
    lam, v = np.linalg.eigh(m)
    ref = (v * np.abs(lam)) @ v.T
    got = abs_val(Space.sym(d).element(m)).matrix()
    np.testing.assert_allclose(got, ref, atol=1e-10 * max(1.0, np.abs(lam).max()))


# invariants

def _elem(space, vals):
    if space.kind.value == "lattice":
        return space.element(vals[: space.dim])
    d = space.dim
    m = np.array(vals[: d * d]).reshape(d, d)
    return space.element(0.5 * (m + m.T))


spaces = st.sampled_from([Space.lattice(1), Space.lattice(3), Space.sym(1), Space.sym(2), Space.sym(3)])
vecs = st.lists(finite, min_size=9, max_size=9)


@given(spaces, vecs, vecs)
def test_abs_and_parts_invariants(space, u, v):
    a = _elem(space, u)
    p, n = pos_part(a), neg_part(a)
    ab = abs_val(a)
    assert in_cone(ab) and in_cone(p) and in_cone(n)
    assert order_unit_norm(p - n - a) <= 1e-9 * max(1.0, order_unit_norm(a))
    assert order_unit_norm(p + n - ab) <= 1e-9 * max(1.0, order_unit_norm(a))
    assert in_cone(ab + a) and in_cone(ab - a)
    assert order_unit_norm(ab) == pytest.approx(order_unit_norm(a), rel=1e-9, abs=1e-12)
    b = _elem(space, v)
    assert leq(meet(a, b), a) and leq(meet(a, b), b)
    assert leq(a, join(a, b)) and leq(b, join(a, b))


@given(st.sampled_from([1, 2, 4]), vecs, vecs)
def test_lattice_triangle(n, u, v):
    space = Space.lattice(n)
    a, b = space.element(u[:n]), space.element(v[:n])
    assert leq(abs_val(a + b), abs_val(a) + abs_val(b))


@given(spaces, vecs, st.floats(-4, 4))
def test_norm_is_a_norm(space, u, alpha):
    a = _elem(space, u)
    assert order_unit_norm(alpha * a) == pytest.approx(abs(alpha) * order_unit_norm(a), rel=1e-9, abs=1e-12)
    assert order_unit_norm(a) >= 0
