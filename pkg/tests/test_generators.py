"""Random instance generators: soundness, conditioning, determinism."""

import numpy as np
import pytest

from kreinrel.errors import GenerationError, PreconditionError
from kreinrel.generators import (
    RETRY_CAP,
    InstanceSpec,
    conditioned_matrix,
    gen_boundary_unitary_relation,
    gen_isometric_boundary_pair,
    gen_obt,
    gen_qbt_map,
    gen_std_unitary,
    gen_unitary_boundary_pair,
    gen_unitary_pair_with_T,
    random_hermitian,
    random_krein,
    random_relation,
    random_symmetric_relation,
    random_unitary,
    rng_stream,
)
from kreinrel.relations import is_symmetric, rel_equal
from kreinrel.spaces import doubled_boundary, doubled_krein, hilbert_space
from kreinrel.subspaces import DEFAULT_TOL, subspace_equal

TOL = DEFAULT_TOL


def test_rng_stream_substreams_are_independent_and_reproducible():
    a = rng_stream(42, 0).standard_normal(4)
    b = rng_stream(42, 0).standard_normal(4)
    c = rng_stream(42, 1).standard_normal(4)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_conditioned_matrix_singular_values_clipped():
    rng = rng_stream(1)
    A = conditioned_matrix(rng, 4, 4)
    s = np.linalg.svd(A, compute_uv=False)
    assert s.min() >= 0.1 - 1e-12
    assert s.max() <= 10.0 + 1e-12


def test_random_unitary_is_unitary():
    rng = rng_stream(2)
    U = random_unitary(rng, 4)
    assert np.allclose(U.conj().T @ U, np.eye(4))


def test_random_hermitian_is_hermitian():
    rng = rng_stream(3)
    A = random_hermitian(rng, 3)
    assert np.allclose(A, A.conj().T)


def test_random_krein_has_requested_signature():
    rng = rng_stream(4)
    K = random_krein(rng, 4, 3)
    assert K.dim == 4 and K.neg_index == 3


def test_random_relation_graph_dim():
    rng = rng_stream(5)
    T = random_relation(rng, 3, 2, graph_dim=4)
    assert T.graph.dim == 4


def test_random_symmetric_relation_is_symmetric():
    for trial in range(10):
        rng = rng_stream(6, trial)
        K = random_krein(rng, 3, trial % 4)
        T = random_symmetric_relation(rng, K)
        assert is_symmetric(T, K, TOL)


def test_gen_unitary_pairs_classify_unitary():
    for trial in range(10):
        rng = rng_stream(7, trial)
        n, m = 1 + trial % 4, 1 + trial % 3
        bp = gen_unitary_boundary_pair(
            InstanceSpec(n, m, trial % (n + 1)), rng, TOL)
        assert bp.classification == "unitary"
        assert is_symmetric(bp.underlying_T(), bp.H, TOL)
        assert bp.H.neg_index == trial % (n + 1)


def test_gen_isometric_pair_is_at_least_isometric():
    for trial in range(10):
        rng = rng_stream(8, trial)
        bp = gen_isometric_boundary_pair(InstanceSpec(3, 2, 1), rng, tol=TOL)
        assert bp.classification in ("isometric", "unitary")


def test_gen_obt_all_flags():
    for trial in range(10):
        rng = rng_stream(9, trial)
        bp = gen_obt(InstanceSpec(2 + trial % 3, 1 + trial % 2, 0), rng, TOL)
        assert bp.is_obt()
        assert all(bp.flags.values())


def test_gen_obt_fully_negative_signature():
    # valid pairs still exist and are found when J = -I
    for trial in range(5):
        rng = rng_stream(10, trial)
        n = 2 + trial % 2
        bp = gen_obt(InstanceSpec(n, 1, n), rng, TOL)
        assert bp.is_obt()
        assert bp.H.neg_index == n


def test_gen_unitary_pair_with_prescribed_t():
    # ker Gamma has dimension at least n - m, so only relations of at
    # least that dimension are realizable
    n, m = 3, 2
    for trial in range(12):
        rng = rng_stream(11, trial)
        K = random_krein(rng, n, trial % (n + 1))
        T = random_symmetric_relation(rng, K)
        if T.graph.dim < n - m:
            continue
        try:
            bp = gen_unitary_pair_with_T(T, K, m, rng, TOL)
        except GenerationError:
            # infeasible draws below the kernel bound are reported
            assert T.graph.dim < n - m + 1
            continue
        assert bp.classification == "unitary"
        assert rel_equal(bp.underlying_T(), T, TOL)


def test_gen_unitary_pair_with_t_reports_infeasible_dims():
    # the trivial T cannot be ker Gamma when n > m
    from kreinrel.relations import zero_relation
    rng = rng_stream(15)
    K = random_krein(rng, 3, 1)
    with pytest.raises(GenerationError):
        gen_unitary_pair_with_T(zero_relation(3), K, 1, rng, TOL)


def test_gen_boundary_unitary_relation_is_unitary():
    from kreinrel.relations import krein_adjoint
    for trial in range(8):
        rng = rng_stream(12, trial)
        m, m2 = 1 + trial % 3, 1 + (trial + 1) % 3
        V = gen_boundary_unitary_relation(rng, m, m2, TOL)
        Vp = krein_adjoint(V, doubled_boundary(m), doubled_boundary(m2), TOL)
        assert rel_equal(V, Vp.inverse(), TOL)


def test_gen_std_unitary_blocks_validate():
    rng = rng_stream(13)
    K = random_krein(rng, 2, 1)
    V = gen_std_unitary(rng, K, K, TOL)
    M = V.block_matrix()
    hat = doubled_krein(K).J
    assert np.linalg.norm(M.conj().T @ hat @ M - hat) < 1e-8


def test_gen_qbt_map_shapes():
    rng = rng_stream(14)
    q = gen_qbt_map(rng, 3)
    assert q.m == 3
    assert np.allclose(q.E, q.E.conj().T)


def test_instance_spec_validation():
    with pytest.raises(PreconditionError):
        InstanceSpec(2, 1, kappa_minus=3)


def test_generation_is_deterministic():
    bp1 = gen_obt(InstanceSpec(3, 2, 1), rng_stream(99), TOL)
    bp2 = gen_obt(InstanceSpec(3, 2, 1), rng_stream(99), TOL)
    assert np.array_equal(bp1.gamma.graph.basis, bp2.gamma.graph.basis)
    assert np.array_equal(bp1.H.J, bp2.H.J)
