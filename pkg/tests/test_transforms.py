"""Both transformation schemes for boundary pairs, linear fractional
transforms, scalings and the quasi-boundary-triple map."""

import numpy as np
import pytest

from kreinrel.boundary import BoundaryPair, identity_obt, weyl
from kreinrel.errors import (
    DimensionMismatchError,
    PreconditionError,
    ValidationError,
)
from kreinrel.generators import (
    InstanceSpec,
    gen_obt,
    gen_qbt_map,
    gen_std_unitary,
    gen_unitary_boundary_pair,
    rng_stream,
)
from kreinrel.relations import (
    image_of,
    rel_equal,
    rel_from_operator,
)
from kreinrel.spaces import doubled_boundary, hilbert_space, make_krein
from kreinrel.subspaces import DEFAULT_TOL, contains as sub_contains
from kreinrel.transforms import (
    QbtMap,
    delta_correction,
    in_rho_v,
    lft,
    make_commuting_unitary,
    make_std_unitary,
    p_poly,
    qbt_relation,
    qbt_transform,
    rotation_op,
    scale_eps,
    scaled_obt,
    std_unitary_relation,
    symplectic_flip,
    transform_left,
    transform_right,
    u_j,
    v_star,
)

TOL = DEFAULT_TOL
Z = 0.7 + 1.1j


# -------------------------------------------------- standard unitaries

def test_make_std_unitary_rejects_bad_blocks():
    H = hilbert_space(1)
    with pytest.raises(ValidationError):
        make_std_unitary([[1.0]], [[1.0]], [[1.0]], [[1.0]], H, H)


def test_make_std_unitary_accepts_triangular_symplectic():
    # (1, 1; 0, 1) preserves the doubled symmetry (an SL(2, R) shear)
    H = hilbert_space(1)
    V = make_std_unitary([[1.0]], [[1.0]], [[0.0]], [[1.0]], H, H)
    assert np.allclose(V.block_matrix(), [[1.0, 1.0], [0.0, 1.0]])


def test_builtin_operators_validate():
    K = make_krein(np.diag([1.0, -1.0]))
    for V in (u_j(K), symplectic_flip(2), rotation_op(0.7, 2)):
        M = V.block_matrix()
        assert np.allclose(M @ V.inverse_block_matrix(), np.eye(M.shape[0]))


def test_u_j_block_structure():
    K = make_krein(np.diag([1.0, -1.0]))
    V = u_j(K)
    assert np.allclose(V.A, np.eye(2))
    assert np.allclose(V.D, K.J)
    assert np.allclose(V.B, 0) and np.allclose(V.C, 0)


def test_std_unitary_relation_is_the_graph():
    V = rotation_op(0.3)
    R = std_unitary_relation(V)
    assert R.is_operator()
    assert np.allclose(R.to_matrix(), V.block_matrix())


def test_make_commuting_unitary_rejects_unbalanced_blocks():
    H = hilbert_space(1)
    with pytest.raises(ValidationError):
        make_commuting_unitary([[0.9]], [[0.9]], H, H)


# --------------------------------------------- linear fractional maps

def test_lft_rotation_on_scalar():
    th = 0.3
    V = rotation_op(th)
    c, s = np.cos(th), np.sin(th)
    r = lft(V, rel_from_operator(np.array([[Z]])))
    assert r.invertible
    expect = (-s + c * Z) / (c + s * Z)
    assert np.allclose(r.T_prime.to_matrix(), [[expect]])
    assert rel_equal(r.T_prime, r.composition)


def test_lft_noninvertible_branch_still_defined():
    # the symplectic flip sends the zero operator to the purely
    # multivalued relation {0} x C: the Shmul'yan form handles it
    V = symplectic_flip(1)
    r = lft(V, rel_from_operator(np.zeros((1, 1))))
    assert r.T_prime.mul(TOL).dim == 1
    assert r.T_prime.dom(TOL).dim == 0


def test_p_poly_values():
    V = symplectic_flip(1)
    # p(z) = z^2 B + z (A - D) - C = z^2 + 1 for the flip
    assert np.allclose(p_poly(V, 2.0), [[5.0]])
    assert np.allclose(p_poly(V, 1j), [[0.0]])


# ----------------------------------------------------- left scheme

def test_left_rotation_transforms_weyl_fractionally():
    bp = identity_obt()
    th = 0.3
    V = rotation_op(th)
    bp2, info = transform_left(bp, rel_from_operator(V.block_matrix()))
    assert info["bundle"] == "dom_v_covers_ran_gamma"
    c, s = np.cos(th), np.sin(th)
    expect = (-s + c * Z) / (c + s * Z)
    assert np.allclose(weyl(bp2, Z).M.to_matrix(), [[expect]])
    assert bp2.classification == "unitary"


def test_left_scheme_preserves_state_space():
    from kreinrel.generators import gen_boundary_unitary_relation
    rng = rng_stream(31)
    bp = gen_obt(InstanceSpec(2, 2, 1), rng, TOL)
    v_rel = gen_boundary_unitary_relation(rng, 2, tol=TOL)
    bp2, _ = transform_left(bp, v_rel)
    assert bp2.H == bp.H
    assert rel_equal(bp2.underlying_T(), bp.underlying_T(), TOL)


# ------------------------------------------------------- scalings

def test_scaled_obt_law():
    bp = identity_obt()
    for kappa in (2.0, np.sqrt(3.0), -2.0):
        bp2 = scaled_obt(bp, kappa)
        assert np.allclose(weyl(bp2, Z).M.to_matrix(), [[kappa ** 2 * Z]])


def test_scaled_obt_rejects_trivial_kappa():
    for kappa in (1.0, -1.0, 0.0):
        with pytest.raises(PreconditionError):
            scaled_obt(identity_obt(), kappa)


def test_scale_eps_law():
    bp = identity_obt()
    for eps in (0.25, 2.0):
        bp2 = scale_eps(bp, eps)
        assert np.allclose(weyl(bp2, Z).M.to_matrix(), [[eps * Z]])
    with pytest.raises(PreconditionError):
        scale_eps(bp, -1.0)


# ----------------------------------------------------------- QBT map

def test_qbt_map_validation():
    with pytest.raises(ValidationError):
        QbtMap(G=np.zeros((1, 1)), E=np.zeros((1, 1)))
    with pytest.raises(ValidationError):
        QbtMap(G=np.eye(2), E=np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_qbt_transform_law_scalar():
    bp = identity_obt()
    q = QbtMap(G=np.array([[2.0 + 1.0j]]), E=np.array([[0.5]]))
    bp2, _ = qbt_transform(bp, q)
    expect = 0.5 + abs(2.0 + 1.0j) ** 2 * Z
    assert np.allclose(weyl(bp2, Z).M.to_matrix(), [[expect]])
    assert rel_equal(bp2.T0(), bp.T0(), TOL)


def test_qbt_transform_random_instances():
    for trial in range(10):
        rng = rng_stream(32, trial)
        bp = gen_obt(InstanceSpec(2 + trial % 2, 1 + trial % 2, trial % 2),
                     rng, TOL)
        q = gen_qbt_map(rng, bp.m)
        bp2, _ = qbt_transform(bp, q)
        M = weyl(bp, Z).M.to_matrix(TOL)
        M2 = weyl(bp2, Z).M.to_matrix(TOL)
        expect = q.E + q.G.conj().T @ M @ q.G
        assert np.linalg.norm(M2 - expect) < 1e-8 * max(
            1.0, np.linalg.norm(expect))
        assert rel_equal(bp2.T0(), bp.T0(), TOL)
        assert rel_equal(bp2.underlying_T(), bp.underlying_T(), TOL)


def test_v_star_of_qbt_relation():
    rng = rng_stream(33)
    q = gen_qbt_map(rng, 2)
    vs = v_star(qbt_relation(q), TOL)
    assert vs.dom(TOL).dim == 0
    assert vs.mul(TOL).dim == 2


# -------------------------------------------------------- right scheme

def test_right_scheme_with_state_rotation_and_delta():
    bp = identity_obt()
    V = rotation_op(0.4, 1)
    assert in_rho_v(bp, V, Z)
    bp2 = transform_right(bp, V)
    assert bp2.classification == "unitary"
    delta = delta_correction(bp, V, Z)
    expect = weyl(bp, Z).M.to_matrix() + delta
    assert np.allclose(weyl(bp2, Z).M.to_matrix(), expect)


def test_right_scheme_with_u_j_preserves_classification():
    flip = rel_from_operator(np.array([[0.0, 1.0], [1.0, 0.0]]))
    bp = BoundaryPair(make_krein(np.array([[-1.0]])), 1, flip)
    bp2 = transform_right(bp, u_j(bp.H))
    assert bp2.classification == "unitary"
    assert bp2.H == hilbert_space(1)


def test_right_scheme_rejects_wrong_space():
    bp = identity_obt()
    V = u_j(make_krein(np.array([[-1.0]])))
    with pytest.raises(PreconditionError):
        transform_right(bp, V)


def test_delta_correction_requires_rho_v():
    bp = identity_obt()
    V = symplectic_flip(1)
    # p_V(z) = z^2 + 1 vanishes at z = i: i is outside rho_V
    if not in_rho_v(bp, V, 1j):
        with pytest.raises(PreconditionError):
            delta_correction(bp, V, 1j)
