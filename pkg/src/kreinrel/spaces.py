"""Krein spaces and their doubled-space symmetries.

A Krein space is C^n with a fundamental symmetry J (Hermitian
involution) inducing the indefinite metric [x, y] = <x, Jy>.  The
doubled space C^{2n} of graph pairs carries the symmetry

    hat(J) = [[0, -iJ], [iJ, 0]],

and a boundary (Hilbert) space C^m carries the analogous symmetry with
J = I.  Krein adjoints of plain matrices are X+ = J_from X* J_to.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, ValidationError
from .subspaces import _as_matrix

__all__ = [
    "KreinSpace",
    "make_krein",
    "hilbert_space",
    "indef_inner",
    "hat_symmetry",
    "hat_symmetry_boundary",
    "doubled_krein",
    "doubled_boundary",
    "krein_adjoint_matrix",
]

_SNAP_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class KreinSpace:
    """Dimension, fundamental symmetry and negative index."""

    dim: int
    J: np.ndarray
    neg_index: int

    def __eq__(self, other):
        if not isinstance(other, KreinSpace):
            return NotImplemented
        return self.dim == other.dim and np.allclose(self.J, other.J)


def make_krein(J) -> KreinSpace:
    """Validate a fundamental symmetry and compute the negative index.

    J must be Hermitian with J^2 = I; its eigenvalues are snapped to
    +-1 and the count of -1's is the negative index kappa_minus.
    """
    J = _as_matrix(J)
    n = J.shape[0]
    if J.shape != (n, n):
        raise ValidationError("fundamental symmetry must be square")
    if np.linalg.norm(J - J.conj().T) > _SNAP_TOL:
        raise ValidationError("fundamental symmetry is not Hermitian")
    if np.linalg.norm(J @ J - np.eye(n)) > _SNAP_TOL:
        raise ValidationError("fundamental symmetry is not involutive")
    eigs = np.linalg.eigvalsh(J) if n else np.zeros(0)
    if n and np.max(np.abs(np.abs(eigs) - 1.0)) > _SNAP_TOL:
        raise ValidationError("eigenvalues of J are not within tolerance of +-1")
    neg = int(np.sum(eigs < 0))
    return KreinSpace(dim=n, J=J, neg_index=neg)


def hilbert_space(n) -> KreinSpace:
    """The standard Hilbert space C^n (J = I, negative index 0)."""
    return KreinSpace(dim=n, J=np.eye(n, dtype=complex), neg_index=0)


def indef_inner(x, y, K: KreinSpace):
    """The indefinite metric [x, y] = <x, Jy>, linear in ``x``."""
    x = np.asarray(x, dtype=complex).reshape(-1)
    y = np.asarray(y, dtype=complex).reshape(-1)
    if len(x) != K.dim or len(y) != K.dim:
        raise DimensionMismatchError("vector length does not match the space")
    return complex(np.vdot(K.J @ y, x))


def _hat_from_J(J):
    n = J.shape[0]
    top = np.hstack([np.zeros((n, n)), -1j * J])
    bot = np.hstack([1j * J, np.zeros((n, n))])
    return np.vstack([top, bot])


def hat_symmetry(K: KreinSpace):
    """The 2n x 2n symmetry [[0, -iJ], [iJ, 0]] of the doubled space."""
    hat = _hat_from_J(K.J)
    if np.linalg.norm(hat @ hat - np.eye(2 * K.dim)) > _SNAP_TOL:
        raise ValidationError("doubled symmetry failed the involution check")
    return hat


def hat_symmetry_boundary(m):
    """The doubled symmetry of the boundary space C^m (J = I there)."""
    return _hat_from_J(np.eye(m, dtype=complex))


def doubled_krein(K: KreinSpace) -> KreinSpace:
    """The doubled space C^{2n} as a Krein space with symmetry hat(J)."""
    return make_krein(hat_symmetry(K))


def doubled_boundary(m) -> KreinSpace:
    """The doubled boundary space C^{2m} with its standard symmetry."""
    return make_krein(hat_symmetry_boundary(m))


def krein_adjoint_matrix(X, K_from: KreinSpace, K_to: KreinSpace):
    """Krein adjoint of a matrix: X+ = J_from X* J_to.

    X maps K_from -> K_to and X+ maps K_to -> K_from; the pairing
    identity [Xf, h]_to = [f, X+ h]_from holds for all f, h.
    """
    X = _as_matrix(X)
    if X.shape != (K_to.dim, K_from.dim):
        raise DimensionMismatchError(
            f"matrix shape {X.shape} does not map C^{K_from.dim} -> C^{K_to.dim}"
        )
    return K_from.J @ X.conj().T @ K_to.J
