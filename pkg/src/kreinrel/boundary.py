"""Boundary pairs over a symmetric relation, Weyl families and the
main transform.

A boundary pair consists of a Krein state space H = C^n (symmetry J),
a boundary space C^m, and a relation Gamma from the doubled space
C^{2n} to the doubled space C^{2m}.  With Gamma+ the Krein adjoint
between the hat symmetries and Gamma_# = (Gamma+)^{-1}, the pair is
isometric when Gamma is contained in Gamma_# and unitary when they are
equal.  The symmetric relation underneath is T = ker Gamma_#, and
A_* = dom Gamma spans T+.

The Weyl family is M(z) = Gamma(A_* ∩ zI), read as a relation in the
boundary space, and the gamma-field collects the defect vectors behind
admissible boundary data.
"""

from dataclasses import dataclass

import numpy as np

from .errors import PreconditionError, ValidationError
from .relations import (
    LinearRelation,
    domain_restriction,
    image_of,
    in_resolvent,
    is_selfadjoint,
    is_symmetric,
    krein_adjoint,
    point_spectrum,
    rel_contains,
    rel_equal,
    shmulyan,
)
from .spaces import (
    KreinSpace,
    doubled_boundary,
    doubled_krein,
    hilbert_space,
    indef_inner,
    make_krein,
)
from .subspaces import DEFAULT_TOL, column_space, subspace_equal

__all__ = [
    "BoundaryPair",
    "WeylSample",
    "SpectralSets",
    "gamma_sharp",
    "identity_obt",
    "weyl",
    "weyl_of_gamma",
    "in_delta",
    "m_plus_z",
    "delta_excluded_points",
    "weyl_invariants_ok",
    "main_transform",
    "inverse_main_transform",
    "main_transform_space",
    "theta_extension",
    "spectral_sets",
    "defect_numbers",
    "green_pairing_ok",
]


def gamma_sharp(gamma: LinearRelation, H: KreinSpace, L_dim, tol=DEFAULT_TOL):
    """Gamma_# = (Gamma+)^{-1} between the doubled symmetries."""
    plus = krein_adjoint(gamma, doubled_krein(H), doubled_boundary(L_dim), tol)
    return plus.inverse()


class BoundaryPair:
    """State space, boundary dimension and boundary relation Gamma.

    Classification and the structural flags are computed eagerly:

    classification
        'unitary' (Gamma = Gamma_#), 'isometric' (strict containment)
        or 'not_isometric'.
    flags
        gamma_is_operator, gamma_surjective, T0_selfadjoint,
        ran_gamma0_full - the decidable sub-classification predicates
        (operator + surjective unitary pair = ordinary boundary
        triple).
    """

    def __init__(self, H: KreinSpace, L_dim, gamma: LinearRelation,
                 tol=DEFAULT_TOL):
        if gamma.from_dim != 2 * H.dim or gamma.to_dim != 2 * L_dim:
            raise PreconditionError(
                "gamma must map the doubled state space to the doubled "
                "boundary space")
        self.H = H
        self.L_dim = int(L_dim)
        self.gamma = gamma
        self.tol = tol
        self.gamma_sharp = gamma_sharp(gamma, H, L_dim, tol)
        if rel_equal(gamma, self.gamma_sharp, tol):
            self.classification = "unitary"
        elif rel_contains(self.gamma_sharp, gamma, tol):
            self.classification = "isometric"
        else:
            self.classification = "not_isometric"
        parts = gamma.parts(tol)
        g0, g1 = self.projections()
        self.flags = {
            "gamma_is_operator": parts.mul.dim == 0,
            "gamma_surjective": parts.ran.dim == 2 * L_dim,
            "T0_selfadjoint": is_selfadjoint(self.T0(), H, tol),
            "ran_gamma0_full": g0.ran(tol).dim == L_dim,
        }

    # -- derived objects ----------------------------------------------
    @property
    def n(self):
        return self.H.dim

    @property
    def m(self):
        return self.L_dim

    def is_obt(self):
        return (self.classification == "unitary"
                and self.flags["gamma_is_operator"]
                and self.flags["gamma_surjective"])

    def underlying_T(self) -> LinearRelation:
        """T = ker Gamma_#, verified symmetric in H."""
        if self.classification == "not_isometric":
            raise PreconditionError("pair is not isometric; T is undefined")
        T = LinearRelation(self.n, self.n, self.gamma_sharp.ker(self.tol))
        if not is_symmetric(T, self.H, self.tol):
            raise ValidationError("ker Gamma_# is not symmetric - invalid pair")
        return T

    def a_star(self) -> LinearRelation:
        """A_* = dom Gamma as a relation in H (spans T+ here)."""
        return LinearRelation(self.n, self.n, self.gamma.dom(self.tol))

    def t_plus(self) -> LinearRelation:
        return krein_adjoint(self.underlying_T(), self.H, self.H, self.tol)

    def projections(self):
        """The components Gamma_0, Gamma_1 as relations C^{2n} -> C^m."""
        n, m = self.n, self.m
        sel0 = np.zeros((2 * n + m, 2 * n + 2 * m))
        sel0[: 2 * n, : 2 * n] = np.eye(2 * n)
        sel0[2 * n :, 2 * n : 2 * n + m] = np.eye(m)
        sel1 = np.zeros((2 * n + m, 2 * n + 2 * m))
        sel1[: 2 * n, : 2 * n] = np.eye(2 * n)
        sel1[2 * n :, 2 * n + m :] = np.eye(m)
        g0 = self.gamma.mapped_graph(sel0, 2 * n, m, self.tol)
        g1 = self.gamma.mapped_graph(sel1, 2 * n, m, self.tol)
        return g0, g1

    def T0(self) -> LinearRelation:
        g0, _ = self.projections()
        return LinearRelation(self.n, self.n, g0.ker(self.tol))

    def T1(self) -> LinearRelation:
        _, g1 = self.projections()
        return LinearRelation(self.n, self.n, g1.ker(self.tol))


def identity_obt() -> BoundaryPair:
    """The canonical triple: n = m = 1, J = 1, Gamma the identity on C^2.

    Its underlying T is the trivial relation and M(z) = z.
    """
    from .relations import identity_relation
    return BoundaryPair(hilbert_space(1), 1, identity_relation(2))


# ---------------------------------------------------------------------
# Weyl family
# ---------------------------------------------------------------------

@dataclass(frozen=True)
class WeylSample:
    z: complex
    M: LinearRelation          # relation in C^m
    gamma_field: LinearRelation  # relation from C^m to C^n


def _require_nonreal(z):
    if abs(complex(z).imag) == 0.0:
        raise PreconditionError("spectral parameter must be nonreal")


def weyl_of_gamma(gamma: LinearRelation, n, m, z, tol=DEFAULT_TOL):
    """M(z) = Gamma(N_hat_z(dom Gamma)) for a raw boundary relation."""
    a_star = LinearRelation(n, n, gamma.dom(tol))
    n_hat = a_star.graph_restriction(z, tol)
    return shmulyan(gamma, n_hat.graph, tol)


def weyl(bp: BoundaryPair, z) -> WeylSample:
    """Weyl family M(z) and gamma-field at a nonreal point."""
    _require_nonreal(z)
    tol = bp.tol
    n, m = bp.n, bp.m
    n_hat = bp.a_star().graph_restriction(z, tol)
    M = shmulyan(bp.gamma, n_hat.graph, tol)
    g0, _ = bp.projections()
    restricted = domain_restriction(g0, n_hat.graph, tol)
    # graph rows of `restricted` are (f, f', l) with f' = z f; the
    # gamma-field pairs (l, f)
    sel = np.zeros((m + n, 2 * n + m))
    sel[:m, 2 * n :] = np.eye(m)
    sel[m :, : n] = np.eye(n)
    gamma_field = restricted.mapped_graph(sel, m, n, tol)
    return WeylSample(z=complex(z), M=M, gamma_field=gamma_field)


def _strict_component(bp: BoundaryPair, which):
    """Gamma_1 as the relation {(fhat, l') : (fhat, (0, l')) in Gamma}
    (``which=1``), or Gamma_0 via (fhat, (l, 0)) (``which=0``).

    For a multivalued Gamma this is smaller than the composition
    P_i Gamma: the other boundary component must vanish within the
    same graph element, not merely be forgettable.
    """
    from .subspaces import null_space
    n, m = bp.n, bp.m
    B = bp.gamma.graph.basis
    if which == 1:
        zero_rows, keep = slice(2 * n, 2 * n + m), slice(2 * n + m, None)
    else:
        zero_rows, keep = slice(2 * n + m, None), slice(2 * n, 2 * n + m)
    N = null_space(B[zero_rows, :], bp.tol)
    C = B @ N.basis if N.dim else np.zeros((B.shape[0], 0))
    g = column_space(np.vstack([C[: 2 * n], C[keep]]), bp.tol)
    return LinearRelation(2 * n, m, g)


def weyl_invariants_ok(bp: BoundaryPair, sample: WeylSample):
    """mul M = Gamma_1(N_hat_z(T0)) and ker M = Gamma_0(N_hat_z(T1)),
    with the components read strictly (the other component vanishes
    within the same graph element)."""
    tol = bp.tol
    z = sample.z
    lhs_mul = sample.M.mul(tol)
    rhs_mul = image_of(_strict_component(bp, 1),
                       bp.T0().graph_restriction(z, tol).graph, tol)
    lhs_ker = sample.M.ker(tol)
    rhs_ker = image_of(_strict_component(bp, 0),
                       bp.T1().graph_restriction(z, tol).graph, tol)
    return (subspace_equal(lhs_mul, rhs_mul, tol)
            and subspace_equal(lhs_ker, rhs_ker, tol))


# ---------------------------------------------------------------------
# main transform
# ---------------------------------------------------------------------

def _main_transform_matrix(n, m):
    """Coordinate map (f, f', l, l') -> ((f, l), (f', -l'))."""
    P = np.zeros((2 * (n + m), 2 * n + 2 * m))
    P[:n, :n] = np.eye(n)                              # f
    P[n : n + m, 2 * n : 2 * n + m] = np.eye(m)        # l
    P[n + m : 2 * n + m, n : 2 * n] = np.eye(n)        # f'
    P[2 * n + m :, 2 * n + m :] = -np.eye(m)           # -l'
    return P


def main_transform(bp: BoundaryPair) -> LinearRelation:
    """The exit-space relation {((f,l), (f',-l')) : (f^, l^) in Gamma}.

    Self-adjoint in (C^{n+m}, J ⊕ I) exactly when Gamma is unitary.
    """
    n, m = bp.n, bp.m
    P = _main_transform_matrix(n, m)
    return bp.gamma.mapped_graph(P, n + m, n + m, bp.tol)


def main_transform_space(bp_or_H, L_dim=None) -> KreinSpace:
    """The Krein space (C^{n+m}, J ⊕ I) the main transform lives in."""
    if isinstance(bp_or_H, BoundaryPair):
        H, m = bp_or_H.H, bp_or_H.m
    else:
        H, m = bp_or_H, L_dim
    J = np.block([
        [H.J, np.zeros((H.dim, m))],
        [np.zeros((m, H.dim)), np.eye(m)],
    ])
    return make_krein(J)


def inverse_main_transform(A: LinearRelation, H: KreinSpace, L_dim,
                           tol=DEFAULT_TOL) -> BoundaryPair:
    """Recover the boundary pair whose main transform is A."""
    n, m = H.dim, L_dim
    if A.from_dim != n + m or A.to_dim != n + m:
        raise PreconditionError("relation does not live in C^{n+m}")
    # A-graph rows are (f, l, f', -l'); undo the reshuffle and the sign
    Q = np.zeros((2 * n + 2 * m, 2 * (n + m)))
    Q[:n, :n] = np.eye(n)                              # f
    Q[n : 2 * n, n + m : 2 * n + m] = np.eye(n)        # f'
    Q[2 * n : 2 * n + m, n : n + m] = np.eye(m)        # l
    Q[2 * n + m :, 2 * n + m :] = -np.eye(m)           # l'
    gamma = A.mapped_graph(Q, 2 * n, 2 * m, tol)
    return BoundaryPair(H, m, gamma, tol)


# ---------------------------------------------------------------------
# extensions and spectral bookkeeping
# ---------------------------------------------------------------------

def theta_extension(bp: BoundaryPair, theta: LinearRelation,
                    tol=None) -> LinearRelation:
    """The extension T_Theta = Gamma^{-1}(Theta), a relation in H."""
    tol = bp.tol if tol is None else tol
    if theta.from_dim != bp.m or theta.to_dim != bp.m:
        raise PreconditionError("Theta must be a relation in the boundary space")
    if bp.classification == "not_isometric":
        raise PreconditionError("Theta-extensions need an isometric pair")
    return shmulyan(bp.gamma.inverse(), theta.graph, tol)


@dataclass(frozen=True)
class SpectralSets:
    excluded_points: tuple       # sigma0_p(T) with conjugates
    delta_is_all_nonreal: bool
    sigma_p_all: bool            # T has sigma_p = C (degenerate)
    samples: tuple               # per-z membership dicts


def sigma0_points(bp: BoundaryPair):
    """sigma0_p(T) = the nonreal point spectrum of T, or None when
    sigma_p(T) covers the whole plane."""
    rep = point_spectrum(bp.underlying_T(), bp.tol)
    if rep.all_flag:
        return None
    return tuple(complex(z) for z, _ in rep.eigenvalues
                 if complex(z).imag != 0.0)


def delta_excluded_points(bp: BoundaryPair):
    """The symmetric closure of sigma0_p(T); None when delta is empty."""
    pts = sigma0_points(bp)
    if pts is None:
        return None
    sym = list(pts) + [p.conjugate() for p in pts]
    out = []
    for p in sym:
        if not any(abs(p - q) <= 1e-8 * (1 + abs(q)) for q in out):
            out.append(p)
    return tuple(sorted(out, key=lambda w: (w.real, w.imag)))


def in_delta(bp: BoundaryPair, z, excluded=None):
    """z in delta_Gamma: nonreal, away from sigma0_p(T) and conjugates."""
    if excluded is None:
        excluded = delta_excluded_points(bp)
    if excluded is None or complex(z).imag == 0.0:
        return False
    return all(abs(z - w) > 1e-8 * (1 + abs(w)) for w in excluded)


def m_plus_z(M: LinearRelation, z, tol=DEFAULT_TOL):
    """The relation M(z) + zI from a Weyl sample value."""
    basis = np.vstack([M.F, M.G + z * M.F])
    return LinearRelation(M.from_dim, M.to_dim,
                          column_space(basis, tol))


def spectral_sets(bp: BoundaryPair, eps, samples) -> SpectralSets:
    """Membership bookkeeping for Omega, delta, O, Sigma and B^eps.

    In finite dimensions Omega_Gamma is all of C_* (every range is
    closed); delta_Gamma is C_* minus the symmetric closure of
    sigma0_p(T); O requires ran(A_* - z) = H; Sigma additionally
    0 in res(M(z) + z); B^eps is the |z| > eps part of delta.
    """
    if eps <= 0:
        raise PreconditionError("eps must be positive")
    tol = bp.tol
    sigma0 = sigma0_points(bp)
    excluded = delta_excluded_points(bp)
    sigma_all = excluded is None
    a_star = bp.a_star()
    notes = []
    for z in samples:
        z = complex(z)
        in_omega = z.imag != 0.0
        d = in_delta(bp, z, excluded)
        in_O = (in_omega and not sigma_all
                and all(abs(z - w) > 1e-8 * (1 + abs(w)) for w in sigma0)
                and a_star.ran_shifted(z, tol).dim == bp.n)
        in_sigma = False
        if in_O:
            M = weyl(bp, z).M
            in_sigma = in_resolvent(m_plus_z(M, z, tol), 0.0, tol)
        notes.append({
            "z": z,
            "in_Omega": in_omega,
            "in_delta": d,
            "in_O": in_O,
            "in_Sigma": in_sigma,
            "in_B_eps": d and abs(z) > eps,
        })
    return SpectralSets(
        excluded_points=() if sigma_all else excluded,
        delta_is_all_nonreal=(not sigma_all and len(excluded) == 0),
        sigma_p_all=sigma_all,
        samples=tuple(notes),
    )


def defect_numbers(bp: BoundaryPair, z):
    """(n_z, n_zbar) = eigenspace dimensions of T+ at zbar and z."""
    _require_nonreal(z)
    tp = bp.t_plus()
    z = complex(z)
    return (tp.eigenspace(z.conjugate(), bp.tol).dim,
            tp.eigenspace(z, bp.tol).dim)


def green_pairing_ok(bp: BoundaryPair, atol=1e-8):
    """The abstract Green identity on the graph basis of Gamma:
    [f', g] - [f, g'] = <l', k> - <l, k'> for all basis pairs."""
    n, m = bp.n, bp.m
    B = bp.gamma.graph.basis
    H = bp.H
    Lsp = hilbert_space(m)
    for i in range(B.shape[1]):
        f, fp = B[:n, i], B[n : 2 * n, i]
        l, lp = B[2 * n : 2 * n + m, i], B[2 * n + m :, i]
        for j in range(B.shape[1]):
            g, gp = B[:n, j], B[n : 2 * n, j]
            k, kp = B[2 * n : 2 * n + m, j], B[2 * n + m :, j]
            lhs = indef_inner(fp, g, H) - indef_inner(f, gp, H)
            rhs = indef_inner(lp, k, Lsp) - indef_inner(l, kp, Lsp)
            if abs(lhs - rhs) > atol:
                return False
    return True
