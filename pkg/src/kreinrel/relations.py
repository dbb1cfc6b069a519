"""Linear relations as graph subspaces.

A linear relation from C^n to C^m is a subspace of C^{n+m}; the first
n coordinates are the input, the last m the output.  Operators are
relations via their graphs.  All calculus (sums, compositions,
adjoints, eigenspaces, Shmul'yan transforms, spectra) is subspace
arithmetic on graphs.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import DimensionMismatchError, PreconditionError
from .spaces import KreinSpace
from .subspaces import (
    DEFAULT_TOL,
    Subspace,
    column_space,
    contains,
    full_space,
    intersect,
    null_space,
    subspace_equal,
    subspace_sum,
    zero_subspace,
)

__all__ = [
    "LinearRelation",
    "RelationParts",
    "SpectrumReport",
    "rel_from_operator",
    "identity_relation",
    "zero_relation",
    "full_relation",
    "rel_equal",
    "compose",
    "cw_sum",
    "op_sum",
    "hilbert_adjoint",
    "krein_adjoint",
    "domain_restriction",
    "shmulyan",
    "image_of",
    "point_spectrum",
    "in_resolvent",
    "sigma_p_contains",
    "classify_point",
    "is_symmetric",
    "is_selfadjoint",
]


@dataclass(frozen=True)
class RelationParts:
    dom: Subspace
    ran: Subspace
    ker: Subspace
    mul: Subspace


class LinearRelation:
    """A relation from C^{from_dim} to C^{to_dim} held by its graph."""

    __slots__ = ("from_dim", "to_dim", "graph")

    def __init__(self, from_dim, to_dim, graph: Subspace):
        if graph.ambient_dim != from_dim + to_dim:
            raise DimensionMismatchError(
                f"graph ambient {graph.ambient_dim} != {from_dim} + {to_dim}"
            )
        object.__setattr__(self, "from_dim", int(from_dim))
        object.__setattr__(self, "to_dim", int(to_dim))
        object.__setattr__(self, "graph", graph)

    def __setattr__(self, *a):  # pragma: no cover - immutability guard
        raise AttributeError("LinearRelation is immutable")

    # -- raw blocks ----------------------------------------------------
    @property
    def F(self):
        """Input rows of the graph basis."""
        return self.graph.basis[: self.from_dim]

    @property
    def G(self):
        """Output rows of the graph basis."""
        return self.graph.basis[self.from_dim :]

    @property
    def dim(self):
        return self.graph.dim

    def __repr__(self):
        return (
            f"LinearRelation({self.from_dim}->{self.to_dim}, "
            f"graph dim {self.dim})"
        )

    # -- parts ---------------------------------------------------------
    def parts(self, tol=DEFAULT_TOL) -> RelationParts:
        n, m = self.from_dim, self.to_dim
        dom = column_space(self.F, tol)
        ran = column_space(self.G, tol)
        ker_coeff = null_space(self.G, tol)
        ker = column_space(self.F @ ker_coeff.basis, tol)
        mul_coeff = null_space(self.F, tol)
        mul = column_space(self.G @ mul_coeff.basis, tol)
        if dom.ambient_dim != n or ran.ambient_dim != m:  # pragma: no cover
            raise DimensionMismatchError("internal shape error")
        return RelationParts(dom=dom, ran=ran, ker=ker, mul=mul)

    def dom(self, tol=DEFAULT_TOL):
        return column_space(self.F, tol)

    def ran(self, tol=DEFAULT_TOL):
        return column_space(self.G, tol)

    def ker(self, tol=DEFAULT_TOL):
        return column_space(self.F @ null_space(self.G, tol).basis, tol)

    def mul(self, tol=DEFAULT_TOL):
        return column_space(self.G @ null_space(self.F, tol).basis, tol)

    def is_operator(self, tol=DEFAULT_TOL):
        return self.mul(tol).dim == 0

    # -- elementary transforms -----------------------------------------
    def inverse(self):
        basis = np.vstack([self.G, self.F])
        return LinearRelation(self.to_dim, self.from_dim, Subspace(
            self.to_dim + self.from_dim, basis))

    def mapped_graph(self, L, new_from, new_to, tol=DEFAULT_TOL):
        """Relation whose graph is the image of this graph under L."""
        L = np.asarray(L, dtype=complex)
        return LinearRelation(
            new_from, new_to, column_space(L @ self.graph.basis, tol))

    def shifted(self, z, tol=DEFAULT_TOL):
        """The relation T - zI (square relations only)."""
        _require_square(self)
        n = self.from_dim
        basis = np.vstack([self.F, self.G - z * self.F])
        return LinearRelation(n, n, column_space(basis, tol))

    def ran_shifted(self, z, tol=DEFAULT_TOL):
        """ran(T - zI) as a subspace, without forming the relation."""
        _require_square(self)
        return column_space(self.G - z * self.F, tol)

    def eigenspace(self, z, tol=DEFAULT_TOL) -> Subspace:
        """N_z(T) = ker(T - zI) = {f : (f, zf) in T}."""
        _require_square(self)
        coeff = null_space(self.G - z * self.F, tol)
        return column_space(self.F @ coeff.basis, tol)

    def graph_restriction(self, z, tol=DEFAULT_TOL):
        """T ∩ zI = {(f, zf) : f in N_z(T)} as a relation."""
        _require_square(self)
        coeff = null_space(self.G - z * self.F, tol)
        vectors = self.graph.basis @ coeff.basis
        return LinearRelation(
            self.from_dim, self.to_dim, column_space(vectors, tol))

    def restrict_domain(self, S: Subspace, tol=DEFAULT_TOL):
        """The restriction {(f, f') in T : f in S}."""
        if S.ambient_dim != self.from_dim:
            raise DimensionMismatchError("restricting subspace has wrong ambient")
        m = self.to_dim
        span = np.block([
            [S.basis, np.zeros((S.ambient_dim, m))],
            [np.zeros((m, S.dim)), np.eye(m)],
        ])
        window = column_space(span, tol)
        return LinearRelation(
            self.from_dim, m, intersect(self.graph, window, tol))

    # -- matrix views --------------------------------------------------
    def to_matrix(self, tol=DEFAULT_TOL):
        """Matrix of an everywhere-defined operator relation."""
        n = self.from_dim
        if self.dim != n:
            raise PreconditionError("relation is not an everywhere-defined operator")
        F = self.F
        s = np.linalg.svd(F, compute_uv=False) if n else np.zeros(0)
        if n and s[-1] <= tol.rank_rel * max(1.0, s[0]) * n:
            raise PreconditionError("domain is not all of the input space")
        return self.G @ np.linalg.inv(F) if n else np.zeros((self.to_dim, 0))

    def apply(self, x, tol=DEFAULT_TOL):
        """One image vector of ``x`` under the relation.

        Requires ``x`` to lie in the domain; if the relation is
        multivalued the returned representative is the one of minimal
        coefficient norm.
        """
        x = np.asarray(x, dtype=complex).reshape(-1)
        if len(x) != self.from_dim:
            raise DimensionMismatchError("vector length != from_dim")
        if self.dim == 0:
            if np.linalg.norm(x) > tol.angle_tol:
                raise PreconditionError("vector is not in the domain")
            return np.zeros(self.to_dim, dtype=complex)
        c, *_ = np.linalg.lstsq(self.F, x, rcond=None)
        if np.linalg.norm(self.F @ c - x) > 1e-8 * (1.0 + np.linalg.norm(x)):
            raise PreconditionError("vector is not in the domain")
        return self.G @ c

    def resolvent_matrix(self, z, tol=DEFAULT_TOL):
        """The matrix of (T - z)^{-1} for z in the resolvent set."""
        _require_square(self)
        n = self.from_dim
        if self.dim != n:
            raise PreconditionError("graph dimension != n: resolvent set is empty")
        X = self.G - z * self.F
        s = np.linalg.svd(X, compute_uv=False) if n else np.zeros(0)
        if n and s[-1] <= tol.rank_rel * max(1.0, s[0]) * n:
            raise PreconditionError(f"z={z} is not in the resolvent set")
        return self.F @ np.linalg.inv(X) if n else np.zeros((0, 0))


def _require_square(T):
    if T.from_dim != T.to_dim:
        raise PreconditionError("operation requires a square relation")


# ---------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------

def rel_from_operator(M, tol=DEFAULT_TOL) -> LinearRelation:
    """The graph of a matrix as a relation."""
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2:
        raise DimensionMismatchError("expected a matrix")
    m, n = M.shape
    return LinearRelation(n, m, column_space(np.vstack([np.eye(n), M]), tol))


def identity_relation(n) -> LinearRelation:
    return rel_from_operator(np.eye(n, dtype=complex))


def zero_relation(n, m=None) -> LinearRelation:
    """The trivial relation {(0, 0)}."""
    m = n if m is None else m
    return LinearRelation(n, m, zero_subspace(n + m))


def full_relation(n, m=None) -> LinearRelation:
    """The everything relation C^n x C^m."""
    m = n if m is None else m
    return LinearRelation(n, m, full_space(n + m))


def rel_from_graph_subspace(from_dim, to_dim, S: Subspace) -> LinearRelation:
    return LinearRelation(from_dim, to_dim, S)


def rel_equal(T: LinearRelation, S: LinearRelation, tol=DEFAULT_TOL):
    if (T.from_dim, T.to_dim) != (S.from_dim, S.to_dim):
        return False
    return subspace_equal(T.graph, S.graph, tol)


def rel_contains(T: LinearRelation, S: LinearRelation, tol=DEFAULT_TOL):
    """True iff S is a subrelation of T (graph containment)."""
    if (T.from_dim, T.to_dim) != (S.from_dim, S.to_dim):
        return False
    return contains(T.graph, S.graph, tol)


# ---------------------------------------------------------------------
# sums and composition
# ---------------------------------------------------------------------

def cw_sum(V: LinearRelation, W: LinearRelation, tol=DEFAULT_TOL):
    """Componentwise sum: the subspace sum of the graphs."""
    if (V.from_dim, V.to_dim) != (W.from_dim, W.to_dim):
        raise DimensionMismatchError("componentwise sum needs matching spaces")
    return LinearRelation(
        V.from_dim, V.to_dim, subspace_sum(V.graph, W.graph, tol))


def op_sum(T: LinearRelation, R: LinearRelation, tol=DEFAULT_TOL):
    """Operatorwise sum {(f, a + b) : (f, a) in T, (f, b) in R}."""
    if (T.from_dim, T.to_dim) != (R.from_dim, R.to_dim):
        raise DimensionMismatchError("operatorwise sum needs matching spaces")
    n, m = T.from_dim, T.to_dim
    # triples (f, a, b) with (f, a) in T and (f, b) in R
    s1 = column_space(np.block([
        [T.F, np.zeros((n, m))],
        [T.G, np.zeros((m, m))],
        [np.zeros((m, T.dim)), np.eye(m)],
    ]), tol)
    s2 = column_space(np.block([
        [R.F, np.zeros((n, m))],
        [np.zeros((m, R.dim)), np.eye(m)],
        [R.G, np.zeros((m, m))],
    ]), tol)
    inter = intersect(s1, s2, tol)
    L = np.block([
        [np.eye(n), np.zeros((n, 2 * m))],
        [np.zeros((m, n)), np.eye(m), np.eye(m)],
    ])
    return LinearRelation(n, m, column_space(L @ inter.basis, tol))


def compose(R: LinearRelation, X: LinearRelation, tol=DEFAULT_TOL):
    """The composition R X = {(f, h) : exists g, (f,g) in X, (g,h) in R}."""
    if X.to_dim != R.from_dim:
        raise DimensionMismatchError("inner dimensions of the composition differ")
    a, b, c = X.from_dim, X.to_dim, R.to_dim
    s1 = column_space(np.block([
        [X.F, np.zeros((a, c))],
        [X.G, np.zeros((b, c))],
        [np.zeros((c, X.dim)), np.eye(c)],
    ]), tol)
    s2 = column_space(np.block([
        [np.eye(a), np.zeros((a, R.dim))],
        [np.zeros((b, a)), R.F],
        [np.zeros((c, a)), R.G],
    ]), tol)
    inter = intersect(s1, s2, tol)
    keep = np.vstack([inter.basis[:a], inter.basis[a + b :]])
    return LinearRelation(a, c, column_space(keep, tol))


# ---------------------------------------------------------------------
# adjoints
# ---------------------------------------------------------------------

def hilbert_adjoint(T: LinearRelation, tol=DEFAULT_TOL):
    """T* = {(k, h) : <f', k> = <f, h> for all (f, f') in T}."""
    constraint = np.hstack([T.G.conj().T, -T.F.conj().T])
    ns = null_space(constraint, tol)
    return LinearRelation(T.to_dim, T.from_dim, ns)


def krein_adjoint(T: LinearRelation, K_from: KreinSpace, K_to: KreinSpace,
                  tol=DEFAULT_TOL):
    """T+ = {(k, h) : [f', k]_to = [f, h]_from for all (f, f') in T}.

    Solved as a single null-space problem from the graph basis; equal
    to J_from T* J_to as a relation composition (used as a test
    oracle, not here).
    """
    if K_from.dim != T.from_dim or K_to.dim != T.to_dim:
        raise DimensionMismatchError("Krein spaces do not match the relation")
    constraint = np.hstack([
        T.G.conj().T @ K_to.J, -T.F.conj().T @ K_from.J
    ])
    ns = null_space(constraint, tol)
    return LinearRelation(T.to_dim, T.from_dim, ns)


def is_symmetric(T: LinearRelation, K: KreinSpace, tol=DEFAULT_TOL):
    """T ⊆ T+ with respect to the Krein space K."""
    _require_square(T)
    return rel_contains(krein_adjoint(T, K, K, tol), T, tol)


def is_selfadjoint(T: LinearRelation, K: KreinSpace, tol=DEFAULT_TOL):
    _require_square(T)
    return rel_equal(krein_adjoint(T, K, K, tol), T, tol)


# ---------------------------------------------------------------------
# Shmul'yan transform
# ---------------------------------------------------------------------

def _as_domain_subspace(V, T):
    S = T.graph if isinstance(T, LinearRelation) else T
    if S.ambient_dim != V.from_dim:
        raise DimensionMismatchError(
            "restriction argument does not live in the domain space of V")
    return S


def domain_restriction(V: LinearRelation, T, tol=DEFAULT_TOL):
    """V|_T = V ∩ (T x full codomain).

    ``T`` may be a relation living in the doubled space V maps from, or
    a plain subspace of that space.
    """
    S = _as_domain_subspace(V, T)
    return V.restrict_domain(S, tol)


def image_of(V: LinearRelation, T, tol=DEFAULT_TOL) -> Subspace:
    """ran(V|_T): the image of a subspace (or relation graph) under V."""
    restricted = domain_restriction(V, T, tol)
    return restricted.ran(tol)


def shmulyan(V: LinearRelation, T, tol=DEFAULT_TOL) -> LinearRelation:
    """The Shmul'yan transform V(T) = ran(V|_T) as a relation.

    The codomain of V must be a doubled space C^{2m'}; the image
    subspace is read as a graph there.
    """
    if V.to_dim % 2:
        raise PreconditionError(
            "Shmul'yan transform needs an even (doubled) codomain")
    half = V.to_dim // 2
    return LinearRelation(half, half, image_of(V, T, tol))


# ---------------------------------------------------------------------
# spectra
# ---------------------------------------------------------------------

@dataclass(frozen=True)
class SpectrumReport:
    eigenvalues: tuple  # ((z, eigenspace_dim), ...)
    all_flag: bool      # sigma_p = C (singular pencil)
    has_full_graph_dim: bool
    approximate: bool = False


# Fixed generic probe points for the singular-pencil test.  A nonzero
# pencil determinant cannot vanish at all three.
_PROBE_POINTS = (0.73462815 + 1.12904873j,
                 -1.31175062 + 0.41923571j,
                 0.20893117 - 0.87341209j)

_EIG_RTOL = 1e-7


def _nullity(A, rtol):
    if min(A.shape) == 0:
        return A.shape[1]
    s = np.linalg.svd(A, compute_uv=False)
    if s[0] == 0.0:
        return A.shape[1]
    small = np.sum(s <= rtol * s[0] * max(A.shape))
    return int(small + max(0, A.shape[1] - len(s)))


def sigma_p_contains(T: LinearRelation, z, rtol=_EIG_RTOL):
    """True iff z is an eigenvalue (N_z(T) nontrivial), with a relaxed
    rank test suitable for eigenvalues found by a pencil solver."""
    _require_square(T)
    if T.dim == 0:
        return False
    return _nullity(T.G - z * T.F, rtol) > 0


def point_spectrum(T: LinearRelation, tol=DEFAULT_TOL) -> SpectrumReport:
    """Finite point spectrum of a square relation.

    Eigenvalue candidates come from the generalized eigenvalues of the
    pencil (G, F) built from the graph basis (after a unitary
    compression when the pencil is rectangular); each candidate is
    verified by a rank test of G - zF.  Infinite generalized
    eigenvalues (pencil null vectors with Fc = 0) belong to mul T and
    are discarded.  If the pencil is singular - rank deficient at
    three generic probe points - every z is an eigenvalue and the
    all-of-C flag is set.
    """
    _require_square(T)
    n, k = T.from_dim, T.dim
    full = (k == n)
    if k == 0:
        return SpectrumReport((), False, full)
    F, G = T.F, T.G
    singular = all(_nullity(G - z * F, tol.rank_rel * 1e3) > 0
                   for z in _PROBE_POINTS)
    if k > n or singular:
        return SpectrumReport((), True, full)
    if k == n:
        Fc, Gc = F, G
    else:
        rng = np.random.Generator(np.random.Philox(key=0x9E3779B97F4A7C15))
        U = rng.normal(size=(n, k)) + 1j * rng.normal(size=(n, k))
        U, _ = np.linalg.qr(U)
        Fc, Gc = U.conj().T @ F, U.conj().T @ G
    with np.errstate(all="ignore"):
        candidates = scipy.linalg.eigvals(Gc, Fc)
    finite = [complex(z) for z in candidates if np.isfinite(z)]
    found = []
    for z in finite:
        if any(abs(z - w) <= 1e-8 * (1.0 + abs(w)) for w, _ in found):
            continue
        d = _nullity(G - z * F, _EIG_RTOL)
        if d > 0:
            found.append((z, d))
    found.sort(key=lambda p: (round(p[0].real, 10), round(p[0].imag, 10)))
    return SpectrumReport(tuple(found), False, full)


def in_resolvent(T: LinearRelation, z, tol=DEFAULT_TOL):
    """Finite-dimensional resolvent test: dim graph = n and trivial N_z."""
    _require_square(T)
    if T.dim != T.from_dim:
        return False
    if T.from_dim == 0:
        return True
    return _nullity(T.G - z * T.F, tol.rank_rel * 1e3) == 0


def classify_point(T: LinearRelation, z, tol=DEFAULT_TOL):
    """Classify z for T as one of 'p1', 'p2', 'r', 'resolvent'.

    'p1'/'p2': eigenvalue with deficient/full range of T - z;
    'r': residual-type point (trivial eigenspace, deficient range);
    'resolvent': trivial eigenspace and full range.
    """
    _require_square(T)
    eig = T.eigenspace(z, tol).dim > 0
    full_range = T.ran_shifted(z, tol).dim == T.from_dim
    if eig:
        return "p2" if full_range else "p1"
    return "resolvent" if full_range else "r"


def regularity_domain_contains(T: LinearRelation, z, tol=DEFAULT_TOL):
    """z is a point of regular type: ker(T - z) = {0}.

    Exposed as a predicate only; no theorem in scope consumes it.
    """
    _require_square(T)
    return T.eigenspace(z, tol).dim == 0
