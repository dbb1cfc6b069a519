"""Linear relations: parts, calculus, adjoints and point spectrum."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from kreinrel.errors import DimensionMismatchError, PreconditionError
from kreinrel.generators import random_krein, random_relation, rng_stream
from kreinrel.relations import (
    LinearRelation,
    classify_point,
    compose,
    cw_sum,
    full_relation,
    hilbert_adjoint,
    identity_relation,
    image_of,
    in_resolvent,
    is_selfadjoint,
    is_symmetric,
    krein_adjoint,
    op_sum,
    point_spectrum,
    rel_contains,
    rel_equal,
    rel_from_operator,
    shmulyan,
    sigma_p_contains,
    zero_relation,
)
from kreinrel.spaces import hilbert_space, make_krein
from kreinrel.subspaces import (
    DEFAULT_TOL,
    Subspace,
    contains as sub_contains,
    intersect,
    subspace_equal,
)

TOL = DEFAULT_TOL


# ----------------------------------------------------------- structure

def test_parts_of_an_operator():
    A = np.array([[1.0, 2.0], [0.0, 1.0]])
    T = rel_from_operator(A)
    assert T.is_operator()
    assert T.dom().dim == 2 and T.ran().dim == 2
    assert T.ker().dim == 0 and T.mul().dim == 0
    assert np.allclose(T.to_matrix(), A)


def test_parts_of_a_pure_mul_relation():
    # graph {0} x C: dom and ker must come out exactly zero even
    # though the stored basis carries floating point noise
    g = Subspace(2, np.array([[0.0], [1.0]]))
    T = LinearRelation(1, 1, g)
    assert T.dom().dim == 0
    assert T.mul().dim == 1
    assert not T.is_operator()


def test_inverse_swaps_parts():
    rng = rng_stream(11)
    T = random_relation(rng, 3, 2)
    Ti = T.inverse()
    assert subspace_equal(T.dom(), Ti.ran())
    assert subspace_equal(T.ker(), Ti.mul())


def test_apply_and_resolvent_matrix():
    A = np.array([[2.0, 0.0], [0.0, 3.0]])
    T = rel_from_operator(A)
    assert np.allclose(T.apply([1.0, 1.0]), [2.0, 3.0])
    R = T.resolvent_matrix(1.0)
    assert np.allclose(R, np.diag([1.0, 0.5]))
    with pytest.raises(PreconditionError):
        T.resolvent_matrix(2.0)  # eigenvalue: not in the resolvent set


def test_zero_and_full_relations():
    Z = zero_relation(2)   # the trivial relation {(0, 0)}
    F = full_relation(2)
    assert Z.graph.dim == 0 and Z.dom().dim == 0 and Z.ran().dim == 0
    assert F.graph.dim == 4
    assert rel_contains(F, Z)


# ------------------------------------------------------------ calculus

def test_compose_matches_matrix_product():
    rng = rng_stream(5)
    A = rng.standard_normal((2, 3)) + 1j * rng.standard_normal((2, 3))
    B = rng.standard_normal((3, 4)) + 1j * rng.standard_normal((3, 4))
    lhs = compose(rel_from_operator(A), rel_from_operator(B))
    assert rel_equal(lhs, rel_from_operator(A @ B))


def test_compose_dimension_check():
    with pytest.raises(DimensionMismatchError):
        compose(rel_from_operator(np.eye(2)), rel_from_operator(np.eye(3)))


def test_op_sum_matches_matrix_sum():
    rng = rng_stream(6)
    A = rng.standard_normal((3, 3))
    B = rng.standard_normal((3, 3))
    S = op_sum(rel_from_operator(A), rel_from_operator(B))
    assert rel_equal(S, rel_from_operator(A + B))


def test_shmulyan_image_of_operator_graph():
    # for an operator V and a subspace S of dom V, V(S) restricted to
    # graph arguments reproduces the matrix image
    A = np.array([[1.0, 0.0], [1.0, 1.0]])
    V = rel_from_operator(A)
    S = Subspace(2, np.array([[1.0], [0.0]]))
    img = image_of(V, S)
    assert img.dim == 1
    assert sub_contains(img, Subspace(2, np.array([[1.0], [1.0]]) / np.sqrt(2)))


# ------------------------------------------------------------ adjoints

def test_hilbert_adjoint_matches_conjugate_transpose():
    rng = rng_stream(8)
    A = rng.standard_normal((3, 2)) + 1j * rng.standard_normal((3, 2))
    assert rel_equal(hilbert_adjoint(rel_from_operator(A)),
                     rel_from_operator(A.conj().T))


def test_krein_adjoint_involution_random():
    rng = rng_stream(9)
    for _ in range(20):
        n, m = int(rng.integers(1, 5)), int(rng.integers(1, 5))
        Kf = random_krein(rng, n, int(rng.integers(0, n + 1)))
        Kt = random_krein(rng, m, int(rng.integers(0, m + 1)))
        T = random_relation(rng, n, m)
        Tpp = krein_adjoint(krein_adjoint(T, Kf, Kt, TOL), Kt, Kf, TOL)
        assert rel_equal(T, Tpp, TOL)


def test_adjoint_of_componentwise_sum():
    # (V + W)+ = V+ cap W+ where + on the left is the componentwise sum
    rng = rng_stream(10)
    for _ in range(20):
        n, m = int(rng.integers(1, 5)), int(rng.integers(1, 5))
        Kf = random_krein(rng, n, int(rng.integers(0, n + 1)))
        Kt = random_krein(rng, m, int(rng.integers(0, m + 1)))
        V = random_relation(rng, n, m)
        W = random_relation(rng, n, m)
        lhs = krein_adjoint(cw_sum(V, W, TOL), Kf, Kt, TOL)
        vp = krein_adjoint(V, Kf, Kt, TOL)
        wp = krein_adjoint(W, Kf, Kt, TOL)
        inter = LinearRelation(m, n, intersect(vp.graph, wp.graph, TOL))
        assert rel_equal(lhs, inter, TOL)


def test_adjoint_product_containment():
    # X+ R+ is contained in (RX)+ unconditionally; equality needs
    # ran X inside dom R (regression for a rank-cutoff bug that
    # produced spurious directions violating even the containment)
    rng = rng_stream(7, 3)
    p, n, q = 2, 4, 2
    K0 = random_krein(rng, p, 1)
    K1 = random_krein(rng, n, 2)
    K2 = random_krein(rng, q, 0)
    for _ in range(10):
        R = random_relation(rng, n, q)
        X = random_relation(rng, p, n)
        lhs = krein_adjoint(compose(R, X, TOL), K0, K2, TOL)
        rhs = compose(krein_adjoint(X, K0, K1, TOL),
                      krein_adjoint(R, K1, K2, TOL), TOL)
        assert rel_contains(lhs, rhs, TOL)


def test_symmetry_and_selfadjointness():
    K = make_krein(np.diag([1.0, -1.0]))
    # J-selfadjoint means A+ = J A* J = A
    A = np.array([[1.0, 2.0], [-2.0, 5.0]])
    T = rel_from_operator(A)
    assert is_symmetric(T, K)
    assert is_selfadjoint(T, K)
    B = np.array([[1.0, 2.0], [3.0, 5.0]])
    assert not is_symmetric(rel_from_operator(B), K)


# ------------------------------------------------------ point spectrum

def test_point_spectrum_of_a_matrix():
    A = np.diag([1.0, 2.0, 2.0])
    rep = point_spectrum(rel_from_operator(A))
    found = {}
    for z, d in rep.eigenvalues:
        for target in (1.0, 2.0):
            if abs(complex(z) - target) < 1e-8:
                found[target] = d
    assert found == {1.0: 1, 2.0: 2}
    assert not rep.all_flag


def test_point_spectrum_singular_pencil():
    # dom T = {0} with mul: the eigenvalue problem is degenerate and
    # every z is an eigenvalue of the relation T = C x C
    rep = point_spectrum(full_relation(1))
    assert rep.all_flag
    assert sigma_p_contains(full_relation(1), 0.123 + 4.5j)


def test_in_resolvent_and_classification():
    A = np.diag([1.0, 2.0])
    T = rel_from_operator(A)
    assert in_resolvent(T, 0.0)
    assert not in_resolvent(T, 1.0)
    assert classify_point(T, 1.0) != classify_point(T, 0.0)


def test_pure_mul_relation_has_empty_point_spectrum():
    g = Subspace(2, np.array([[0.0], [1.0]]))
    T = LinearRelation(1, 1, g)
    rep = point_spectrum(T)
    assert rep.eigenvalues == ()
    assert not rep.all_flag
    assert in_resolvent(T, 0.5)


# ------------------------------------------------------ property tests

@settings(max_examples=40, deadline=None)
@given(seed=st.integers(min_value=0, max_value=10_000))
def test_prop_graph_dim_bookkeeping(seed):
    rng = rng_stream(seed)
    n, m = int(rng.integers(1, 5)), int(rng.integers(1, 5))
    T = random_relation(rng, n, m)
    assert T.dom().dim + T.mul().dim == T.graph.dim
    assert T.ran().dim + T.ker().dim == T.graph.dim


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(min_value=0, max_value=10_000))
def test_prop_adjoint_reverses_containment(seed):
    rng = rng_stream(seed)
    n, m = int(rng.integers(1, 4)), int(rng.integers(1, 4))
    Kf = random_krein(rng, n, int(rng.integers(0, n + 1)))
    Kt = random_krein(rng, m, int(rng.integers(0, m + 1)))
    T = random_relation(rng, n, m)
    k = int(rng.integers(0, T.graph.dim + 1))
    sub = LinearRelation(n, m, Subspace(n + m, T.graph.basis[:, :k]))
    Tp = krein_adjoint(T, Kf, Kt, TOL)
    Sp = krein_adjoint(sub, Kf, Kt, TOL)
    assert rel_contains(Sp, Tp, TOL)
