"""Finite-dimensional calculus for linear relations between Krein
spaces: subspace arithmetic, relation calculus, boundary pairs and
triples, Weyl families, the main transform, boundary transformations,
Nevanlinna-type diagnostics and a property-check harness.
"""

from .errors import (
    DimensionMismatchError,
    GenerationError,
    KreinRelError,
    PreconditionError,
    ValidationError,
)
from .subspaces import (
    DEFAULT_TOL,
    Subspace,
    Tolerance,
    column_space,
    contains,
    full_space,
    intersect,
    null_space,
    orth_complement,
    principal_angles,
    subspace_equal,
    subspace_sum,
    zero_subspace,
)
from .spaces import (
    KreinSpace,
    doubled_boundary,
    doubled_krein,
    hat_symmetry,
    hat_symmetry_boundary,
    hilbert_space,
    indef_inner,
    krein_adjoint_matrix,
    make_krein,
)
from .relations import (
    LinearRelation,
    RelationParts,
    SpectrumReport,
    classify_point,
    compose,
    cw_sum,
    domain_restriction,
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
from .boundary import (
    BoundaryPair,
    SpectralSets,
    WeylSample,
    defect_numbers,
    delta_excluded_points,
    gamma_sharp,
    green_pairing_ok,
    identity_obt,
    in_delta,
    inverse_main_transform,
    m_plus_z,
    main_transform,
    main_transform_space,
    spectral_sets,
    theta_extension,
    weyl,
    weyl_invariants_ok,
    weyl_of_gamma,
)
from .transforms import (
    LftResult,
    QbtMap,
    StdUnitaryOp,
    delta_correction,
    in_rho_v,
    lft,
    make_commuting_unitary,
    make_std_unitary,
    n_hat_v,
    p_poly,
    p_rel,
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
    w_rel,
)
from .generators import (
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
from .nevanlinna import (
    KernelSampleGrid,
    NegSquaresReport,
    block_gram,
    gen_nevanlinna_probe,
    nev_kernel,
    neg_squares_estimate,
    weyl_symmetry_check,
)
from .checks import (
    SWEEP_COLUMNS,
    THEOREM_IDS,
    CheckReport,
    check_theorem,
    weyl_sweep,
)
from .serialize import dump, load

__version__ = "0.1.0"
