"""Transformations of boundary pairs.

Two schemes are implemented:

* right scheme Gamma -> Gamma V^{-1} with a standard unitary block
  operator V = (A, B; C, D) between doubled Krein spaces, including
  linear fractional transformations phi_V and the Weyl-function
  correction term Delta;
* left scheme Gamma -> V Gamma with isometric/unitary relations V on
  the boundary side, including the eps-scaling V_eps, the kappa-scaled
  triple, and the quasi-boundary-triple map V = (G^{-1}, 0; EG^{-1}, G*).
"""

from dataclasses import dataclass

import numpy as np

from .boundary import BoundaryPair, weyl
from .errors import DimensionMismatchError, PreconditionError, ValidationError
from .relations import (
    LinearRelation,
    compose,
    in_resolvent,
    krein_adjoint,
    rel_from_operator,
    shmulyan,
)
from .spaces import (
    KreinSpace,
    doubled_boundary,
    doubled_krein,
    hilbert_space,
    krein_adjoint_matrix,
)
from .subspaces import (
    DEFAULT_TOL,
    Subspace,
    column_space,
    intersect,
    contains as sub_contains,
)

__all__ = [
    "StdUnitaryOp",
    "QbtMap",
    "LftResult",
    "make_std_unitary",
    "make_commuting_unitary",
    "u_j",
    "symplectic_flip",
    "rotation_op",
    "std_unitary_relation",
    "transform_right",
    "n_hat_v",
    "w_rel",
    "lft",
    "p_poly",
    "p_rel",
    "in_rho_v",
    "delta_correction",
    "transform_left",
    "scale_eps",
    "scaled_obt",
    "qbt_transform",
    "qbt_relation",
    "v_star",
]

_BLOCK_ATOL = 1e-10


@dataclass(frozen=True)
class StdUnitaryOp:
    """Validated standard unitary block operator (A, B; C, D).

    Maps the doubled space of K_from to the doubled space of K_to:
    (f, f') -> (Af + Bf', Cf + Df').
    """

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray
    K_from: KreinSpace
    K_to: KreinSpace

    @property
    def n_from(self):
        return self.K_from.dim

    @property
    def n_to(self):
        return self.K_to.dim

    def block_matrix(self):
        return np.block([[self.A, self.B], [self.C, self.D]])

    def inverse_block_matrix(self):
        """V^{-1} = V^+ = (D+, -B+; -C+, A+)."""
        plus = lambda X: krein_adjoint_matrix(X, self.K_from, self.K_to)
        return np.block([[plus(self.D), -plus(self.B)],
                         [-plus(self.C), plus(self.A)]])


def _selfadj_defect(X, K):
    return np.linalg.norm(X - krein_adjoint_matrix(X, K, K))


def make_std_unitary(A, B, C, D, K_from: KreinSpace, K_to: KreinSpace,
                     atol=_BLOCK_ATOL) -> StdUnitaryOp:
    """Validate the six block conditions of a standard unitary operator.

    A+D - C+B = I and AD+ - BC+ = I, while A+C, AB+, B+D, CD+ are
    self-adjoint in the indicated Krein spaces.  The graph of the
    block matrix is additionally checked to be a unitary relation
    between the hat-symmetry spaces.
    """
    A, B, C, D = (np.asarray(X, dtype=complex) for X in (A, B, C, D))
    n, n2 = K_from.dim, K_to.dim
    for X in (A, B, C, D):
        if X.shape != (n2, n):
            raise DimensionMismatchError("all blocks must map K_from -> K_to")
    plus = lambda X: krein_adjoint_matrix(X, K_from, K_to)
    failures = []
    if np.linalg.norm(plus(A) @ D - plus(C) @ B - np.eye(n)) > atol:
        failures.append("A+D - C+B != I")
    if np.linalg.norm(A @ plus(D) - B @ plus(C) - np.eye(n2)) > atol:
        failures.append("AD+ - BC+ != I")
    if _selfadj_defect(plus(A) @ C, K_from) > atol:
        failures.append("A+C not self-adjoint in K_from")
    if _selfadj_defect(A @ plus(B), K_to) > atol:
        failures.append("AB+ not self-adjoint in K_to")
    if _selfadj_defect(plus(B) @ D, K_from) > atol:
        failures.append("B+D not self-adjoint in K_from")
    if _selfadj_defect(C @ plus(D), K_to) > atol:
        failures.append("CD+ not self-adjoint in K_to")
    if failures:
        raise ValidationError("standard-unitary conditions violated: "
                              + "; ".join(failures))
    V = StdUnitaryOp(A=A, B=B, C=C, D=D, K_from=K_from, K_to=K_to)
    rel = std_unitary_relation(V)
    sharp = krein_adjoint(rel, doubled_krein(K_from), doubled_krein(K_to))
    from .relations import rel_equal
    if not rel_equal(sharp.inverse(), rel):
        raise ValidationError("block matrix is not a unitary relation "
                              "between the hat-symmetry spaces")
    return V


def make_commuting_unitary(A, B, K_from: KreinSpace,
                           K_to: KreinSpace) -> StdUnitaryOp:
    """The family V(A, B; J_from, J_to) = (A, B; -J_to B J_from,
    J_to A J_from), which commutes with the symmetries and is
    simultaneously Hilbert-unitary.  Requires
    A*A + J_from B*B J_from = I and AA* + BB* = I."""
    A = np.asarray(A, dtype=complex)
    B = np.asarray(B, dtype=complex)
    Jf, Jt = K_from.J, K_to.J
    n, n2 = K_from.dim, K_to.dim
    if A.shape != (n2, n) or B.shape != (n2, n):
        raise DimensionMismatchError("blocks must map K_from -> K_to")
    if np.linalg.norm(A.conj().T @ A + Jf @ B.conj().T @ B @ Jf
                      - np.eye(n)) > _BLOCK_ATOL:
        raise ValidationError("A*A + J B*B J != I")
    if np.linalg.norm(A @ A.conj().T + B @ B.conj().T
                      - np.eye(n2)) > _BLOCK_ATOL:
        raise ValidationError("AA* + BB* != I")
    C = -Jt @ B @ Jf
    D = Jt @ A @ Jf
    return make_std_unitary(A, B, C, D, K_from, K_to)


def u_j(K: KreinSpace) -> StdUnitaryOp:
    """U_J: (f, f') -> (f, Jf'), from (C^n, J) to the Hilbert C^n."""
    n = K.dim
    return make_commuting_unitary(np.eye(n), np.zeros((n, n)),
                                  K, hilbert_space(n))


def symplectic_flip(n) -> StdUnitaryOp:
    """(0, I; -I, 0) on the Hilbert space C^n."""
    H = hilbert_space(n)
    Z, I = np.zeros((n, n)), np.eye(n)
    return make_std_unitary(Z, I, -I, Z, H, H)


def rotation_op(theta, n=1) -> StdUnitaryOp:
    """The rotation family (cos t·I, sin t·I; ...) on Hilbert C^n."""
    H = hilbert_space(n)
    A = np.cos(theta) * np.eye(n)
    B = np.sin(theta) * np.eye(n)
    return make_commuting_unitary(A, B, H, H)


def std_unitary_relation(V: StdUnitaryOp) -> LinearRelation:
    """The graph of the block matrix as a relation C^{2n} -> C^{2n'}."""
    return rel_from_operator(V.block_matrix())


# ---------------------------------------------------------------------
# right scheme: Gamma -> Gamma V^{-1}
# ---------------------------------------------------------------------

def transform_right(bp: BoundaryPair, V, K_to=None) -> BoundaryPair:
    """The pair with Gamma' = Gamma V^{-1} over the codomain space.

    ``V`` is a StdUnitaryOp, or a unitary relation C^{2n} -> C^{2n'}
    together with the codomain Krein space ``K_to``.  The domain of V
    must cover A_*.
    """
    if isinstance(V, StdUnitaryOp):
        v_rel, K_new = std_unitary_relation(V), V.K_to
        if V.K_from != bp.H:
            raise PreconditionError("V does not start at the state space")
    else:
        if K_to is None:
            raise PreconditionError("a raw relation V needs its codomain "
                                    "Krein space")
        v_rel, K_new = V, K_to
    if v_rel.from_dim != 2 * bp.n:
        raise DimensionMismatchError("V must act on the doubled state space")
    if not sub_contains(v_rel.dom(bp.tol), bp.a_star().graph, bp.tol):
        raise PreconditionError("dom V does not cover A_*")
    gamma_new = compose(bp.gamma, v_rel.inverse(), bp.tol)
    return BoundaryPair(K_new, bp.m, gamma_new, bp.tol)


def n_hat_v(v_rel: LinearRelation, a_star: LinearRelation, z,
            tol=DEFAULT_TOL) -> Subspace:
    """N^V_z(A_*) = dom(V ∩ (A_* × zI)) - the z-eigen-slice pulled
    through V, a subspace of the doubled domain space."""
    two_n = v_rel.from_dim
    two_n2 = v_rel.to_dim
    half = two_n2 // 2
    zgraph = column_space(
        np.vstack([np.eye(half), z * np.eye(half)]), tol)
    window = column_space(np.block([
        [a_star.graph.basis, np.zeros((two_n, zgraph.dim))],
        [np.zeros((two_n2, a_star.graph.dim)), zgraph.basis],
    ]), tol)
    inter = intersect(v_rel.graph, window, tol)
    return column_space(inter.basis[:two_n], tol)


# -- linear fractional transformations --------------------------------

def w_rel(A, B, T: LinearRelation, tol=DEFAULT_TOL) -> LinearRelation:
    """W(A, B; T) = {(f, Af + Bf') : (f, f') in T}."""
    A = np.asarray(A, dtype=complex)
    B = np.asarray(B, dtype=complex)
    if A.shape[1] != T.from_dim or B.shape[1] != T.to_dim:
        raise DimensionMismatchError("blocks do not match the relation")
    basis = np.vstack([T.F, A @ T.F + B @ T.G])
    return LinearRelation(T.from_dim, A.shape[0], column_space(basis, tol))


@dataclass(frozen=True)
class LftResult:
    T_prime: LinearRelation
    W_forward: LinearRelation
    invertible: bool
    composition: LinearRelation | None


def lft(V: StdUnitaryOp, T: LinearRelation, tol=DEFAULT_TOL) -> LftResult:
    """phi_V(T) = W(C,D;T) W(A,B;T)^{-1}, alongside the Shmul'yan form.

    The Shmul'yan transform V(T) is always returned as ``T_prime``;
    the explicit composition is provided when 0 is not an eigenvalue
    of W(A, B; T).
    """
    t_prime = shmulyan(std_unitary_relation(V), T.graph, tol)
    w_fwd = w_rel(V.A, V.B, T, tol)
    invertible = w_fwd.ker(tol).dim == 0
    comp = None
    if invertible:
        w_cd = w_rel(V.C, V.D, T, tol)
        comp = compose(w_cd, w_fwd.inverse(), tol)
    return LftResult(T_prime=t_prime, W_forward=w_fwd,
                     invertible=invertible, composition=comp)


def p_poly(V: StdUnitaryOp, z):
    """p_V(z) = z^2 B + z(A - D) - C."""
    return z * z * V.B + z * (V.A - V.D) - V.C


def p_rel(V: StdUnitaryOp, z, T: LinearRelation,
          tol=DEFAULT_TOL) -> LinearRelation:
    """p_V(z; T) = z W(A,B;T) - W(C,D;T) as a relation."""
    return w_rel(z * V.A - V.C, z * V.B - V.D, T, tol)


def _p_pencil(V: StdUnitaryOp, z, T0: LinearRelation):
    """The coefficient-space matrix of p_V(z; T0) on the graph basis."""
    F0, G0 = T0.F, T0.G
    return (z * V.A - V.C) @ F0 + (z * V.B - V.D) @ G0


def in_rho_v(bp: BoundaryPair, V: StdUnitaryOp, z, tol=None):
    """z in rho_V = res T0 ∩ res T0', the latter via the criterion
    '0 in res p_V(z; T0)'."""
    tol = bp.tol if tol is None else tol
    T0 = bp.T0()
    if not in_resolvent(T0, z, tol):
        return False
    P = _p_pencil(V, z, T0)
    if P.shape[0] != P.shape[1]:
        return False
    s = np.linalg.svd(P, compute_uv=False)
    return bool(s.size == 0 or s[-1] > 1e-8 * max(1.0, s[0]))


def delta_correction(bp: BoundaryPair, V: StdUnitaryOp, z, tol=None):
    """The Weyl correction Delta(z) = -Gamma_1 p_V(z;T0)^{-1} p_V(z)
    gamma(z), an m x m matrix, so that the transformed triple
    Gamma' = Gamma V^{-1} has M'(z) = M(z) + Delta(z)."""
    tol = bp.tol if tol is None else tol
    if not bp.is_obt():
        raise PreconditionError("Delta correction requires an ordinary "
                                "boundary triple")
    T = bp.underlying_T()
    if T.mul(tol).dim != 0:
        raise PreconditionError("underlying T must be an operator")
    if not in_rho_v(bp, V, z, tol):
        raise PreconditionError(f"z={z} is not in rho_V")
    T0 = bp.T0()
    gamma_mat = weyl(bp, z).gamma_field.to_matrix(tol)   # m -> n
    P = _p_pencil(V, z, T0)                              # solve on T0 coeffs
    rhs = p_poly(V, z) @ gamma_mat                       # n' x m
    coeff = np.linalg.solve(P, rhs)
    hats = T0.graph.basis @ coeff                        # columns in T0
    _, g1 = bp.projections()
    m = bp.m
    delta = np.zeros((m, m), dtype=complex)
    for j in range(m):
        delta[:, j] = -g1.apply(hats[:, j], tol)
    return delta


# ---------------------------------------------------------------------
# left scheme: Gamma -> V Gamma
# ---------------------------------------------------------------------

def boundary_v_classification(v_rel: LinearRelation, tol=DEFAULT_TOL):
    """Classification of a relation between doubled boundary spaces."""
    if v_rel.from_dim % 2 or v_rel.to_dim % 2:
        raise DimensionMismatchError("V must act between doubled spaces")
    m, m2 = v_rel.from_dim // 2, v_rel.to_dim // 2
    plus = krein_adjoint(v_rel, doubled_boundary(m), doubled_boundary(m2), tol)
    sharp = plus.inverse()
    from .relations import rel_contains, rel_equal
    if rel_equal(v_rel, sharp, tol):
        return "unitary"
    if rel_contains(sharp, v_rel, tol):
        return "isometric"
    return "not_isometric"


def transform_left(bp: BoundaryPair, v_rel: LinearRelation,
                   require_bundle=True):
    """The pair with Gamma' = V Gamma for a boundary-side relation V.

    One of two hypothesis bundles must hold: (i) dom V covers ran
    Gamma (then the underlying T is unchanged), or (ii) dom V is
    contained in ran Gamma (then T grows to Gamma^{-1}(mul V+)).
    Returns ``(pair, info)`` where info records the V classification,
    which bundle held, and T' for bundle (ii).
    """
    tol = bp.tol
    if v_rel.from_dim != 2 * bp.m:
        raise DimensionMismatchError("V must act on the doubled boundary space")
    m2 = v_rel.to_dim // 2
    cls = boundary_v_classification(v_rel, tol)
    if cls == "not_isometric":
        raise PreconditionError("V is not an isometric boundary-side relation")
    ran_gamma = bp.gamma.ran(tol)
    dom_v = v_rel.dom(tol)
    bundle = None
    info = {"v_classification": cls}
    if sub_contains(dom_v, ran_gamma, tol):
        bundle = "dom_v_covers_ran_gamma"
    elif sub_contains(ran_gamma, dom_v, tol):
        bundle = "dom_v_within_ran_gamma"
        v_plus = krein_adjoint(v_rel, doubled_boundary(bp.m),
                               doubled_boundary(m2), tol)
        t_new = shmulyan(bp.gamma.inverse(), v_plus.mul(tol), tol)
        info["T_prime"] = t_new
    elif require_bundle:
        raise PreconditionError(
            "neither hypothesis bundle holds: dom V and ran Gamma are "
            "incomparable")
    info["bundle"] = bundle
    gamma_new = compose(v_rel, bp.gamma, tol)
    return BoundaryPair(bp.H, m2, gamma_new, tol), info


def scale_eps(bp: BoundaryPair, eps) -> BoundaryPair:
    """Gamma_eps = V_eps Gamma, V_eps = (eps^{-1/2} I, 0; 0, eps^{1/2} I).

    The operator part of the Weyl family scales by eps, its multivalued
    part by eps^{1/2}."""
    if not eps > 0:
        raise PreconditionError("eps must be positive")
    m = bp.m
    v = np.block([
        [eps ** -0.5 * np.eye(m), np.zeros((m, m))],
        [np.zeros((m, m)), eps ** 0.5 * np.eye(m)],
    ])
    pair, _ = transform_left(bp, rel_from_operator(v))
    return pair


def scaled_obt(bp: BoundaryPair, kappa) -> BoundaryPair:
    """The scaled triple Gamma'_0 = kappa^{-1} Gamma_0, Gamma'_1 =
    kappa Gamma_1, with Weyl function kappa^2 M(z)."""
    kappa = float(kappa)
    if min(abs(kappa - v) for v in (-1.0, 0.0, 1.0)) < 1e-12:
        raise PreconditionError("kappa in {-1, 0, 1} gives a trivial scaling")
    if not bp.is_obt():
        raise PreconditionError("scaling is defined for ordinary boundary "
                                "triples")
    m = bp.m
    v = np.block([
        [np.eye(m) / kappa, np.zeros((m, m))],
        [np.zeros((m, m)), kappa * np.eye(m)],
    ])
    pair, _ = transform_left(bp, rel_from_operator(v))
    return pair


@dataclass(frozen=True)
class QbtMap:
    """The quasi-boundary-triple map V = (G^{-1}, 0; EG^{-1}, G*)."""

    G: np.ndarray
    E: np.ndarray

    def __post_init__(self):
        G = np.asarray(self.G, dtype=complex)
        E = np.asarray(self.E, dtype=complex)
        m = G.shape[0]
        if G.shape != (m, m) or E.shape != (m, m):
            raise DimensionMismatchError("G and E must be square of equal size")
        s = np.linalg.svd(G, compute_uv=False)
        if s.size and s[-1] <= 1e-10 * s[0] * m:
            raise ValidationError("G must be invertible")
        if np.linalg.norm(E - E.conj().T) > _BLOCK_ATOL:
            raise ValidationError("E must be Hermitian")
        object.__setattr__(self, "G", G)
        object.__setattr__(self, "E", E)

    @property
    def m(self):
        return self.G.shape[0]


def qbt_relation(q: QbtMap) -> LinearRelation:
    """The boundary-side relation of a QbtMap as a block operator."""
    Ginv = np.linalg.inv(q.G)
    m = q.m
    v = np.block([
        [Ginv, np.zeros((m, m))],
        [q.E @ Ginv, q.G.conj().T],
    ])
    return rel_from_operator(v)


def qbt_transform(bp: BoundaryPair, q: QbtMap):
    """Gamma' = V Gamma for the QBT map; M'(z) = E + G* M(z) G.

    Requires an ordinary boundary triple, or an isometric triple with
    ker Gamma = T and self-adjoint T0 (the construction hypotheses);
    hypothesis failures are reported individually.
    """
    tol = bp.tol
    if q.m != bp.m:
        raise DimensionMismatchError("QbtMap size does not match the pair")
    if not bp.is_obt():
        problems = []
        ker_gamma = LinearRelation(bp.n, bp.n, bp.gamma.ker(tol))
        from .relations import rel_equal
        if not rel_equal(ker_gamma, bp.underlying_T(), tol):
            problems.append("ker Gamma != T")
        if not bp.flags["T0_selfadjoint"]:
            problems.append("T0 is not self-adjoint")
        if problems:
            raise PreconditionError("QBT hypotheses fail: "
                                    + "; ".join(problems))
    pair, info = transform_left(bp, qbt_relation(q))
    return pair, info


def v_star(v_rel: LinearRelation, tol=DEFAULT_TOL) -> LinearRelation:
    """V_* = dom(V ∩ (L^2 × ({0} × cH))), read as a relation in the
    boundary space; dom V_* = {0} together with Gamma_1(T0) ⊆ mul V_*
    forces T'_0 = T0."""
    two_m, two_m2 = v_rel.from_dim, v_rel.to_dim
    m2 = two_m2 // 2
    window = column_space(np.block([
        [np.eye(two_m), np.zeros((two_m, m2))],
        [np.zeros((m2, two_m)), np.zeros((m2, m2))],
        [np.zeros((m2, two_m)), np.eye(m2)],
    ]), tol)
    inter = intersect(v_rel.graph, window, tol)
    dom = column_space(inter.basis[:two_m], tol)
    return LinearRelation(two_m // 2, two_m // 2, dom)
