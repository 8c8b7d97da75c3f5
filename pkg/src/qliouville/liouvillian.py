"""Liouvillian superoperators in matrix-action and Kronecker form.

For a Hamiltonian ``H`` the Liouvillian acts on operators as

    L_H(A) = H A - A H^dag          (the commutator [H, A] when H = H^dag)

and through the row-major vectorizer this is the N^2 x N^2 matrix

    kron(H, I) - kron(I, conj(H)),

where ``conj(H)`` is the distinguished conjugation applied to ``H``
(equal to ``H`` itself for the real model Hamiltonians).  The adjoint with
respect to the Hilbert-Schmidt inner product is

    L_H^adj(A) = H^dag A - A H,

whose Kronecker form equals the matrix adjoint of the Kronecker form of
``L_H`` entry by entry; at finite dimension there is no domain gap between
"adjoint of the sum" and "sum of the adjoints", so the symmetric
construction below is an identity rather than an inclusion.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import DimensionMismatchError
from .linalg import as_matrix, conj_matrix, frob, kron
from .rigging import matricize, vectorize

# Kronecker forms are materialized only up to this Hilbert-space dimension
# (N^2 <= 4096 rows); beyond it only the action form is allowed.
KRON_LIMIT = 64

# Dense cross-checks (N^2 x N^2 eigensolves and sums) stay below this.
DENSE_CHECK_LIMIT = 12


@dataclass(frozen=True, eq=False)
class SuperOperator:
    """Linear map on operator space.

    Carries the matrix-action rule (always) and optionally the Kronecker
    matrix; when both exist they agree through the vectorizer, which
    :meth:`kron_action_defect` measures.  Instances are immutable and all
    evaluation is pure.
    """

    dim: int
    apply_fn: Callable[[np.ndarray], np.ndarray]
    adjoint_fn: Callable[[np.ndarray], np.ndarray]
    matrix: Optional[np.ndarray] = None

    def _check(self, A) -> np.ndarray:
        A = as_matrix(A)
        if A.shape[0] != self.dim:
            raise DimensionMismatchError(
                f"operand dim {A.shape[0]} vs superoperator dim {self.dim}"
            )
        return A

    def apply(self, A) -> np.ndarray:
        return self.apply_fn(self._check(A))

    def adjoint_apply(self, A) -> np.ndarray:
        return self.adjoint_fn(self._check(A))

    def apply_vec(self, u) -> np.ndarray:
        """Action in vectorized coordinates (uses the matrix when present)."""
        if self.matrix is not None:
            return self.matrix @ np.asarray(u, dtype=complex).reshape(-1)
        return vectorize(self.apply(matricize(u, self.dim)))

    def kron_action_defect(self) -> float:
        """Relative disagreement of the two forms over the dyad basis.

        Returns 0.0 when no matrix form is stored.
        """
        if self.matrix is None:
            return 0.0
        n = self.dim
        # Column i*n+j of the matrix is the vectorized action on E_ij.
        defect = 0.0
        scale = max(frob(self.matrix), 1e-300)
        for i in range(n):
            for j in range(n):
                E = np.zeros((n, n), dtype=complex)
                E[i, j] = 1.0
                col = self.matrix[:, i * n + j]
                defect = max(defect, frob(vectorize(self.apply(E)) - col))
        return defect / scale


def identity_superoperator(dim: int) -> SuperOperator:
    """The identity map on operator space."""
    return SuperOperator(
        dim=dim,
        apply_fn=lambda A: A.copy(),
        adjoint_fn=lambda A: A.copy(),
        matrix=np.eye(dim * dim, dtype=complex),
    )


def apply_liouvillian(H, A) -> np.ndarray:
    """Matrix action H A - A H^dag."""
    H = as_matrix(H)
    A = as_matrix(A)
    if H.shape != A.shape:
        raise DimensionMismatchError(f"shapes {H.shape} and {A.shape} differ")
    return H @ A - A @ H.conj().T


def adjoint_liouvillian(H, A) -> np.ndarray:
    """Hilbert-Schmidt adjoint action H^dag A - A H.

    Satisfies <adjoint(A), B> = <A, apply(B)> for all A, B.
    """
    H = as_matrix(H)
    A = as_matrix(A)
    if H.shape != A.shape:
        raise DimensionMismatchError(f"shapes {H.shape} and {A.shape} differ")
    return H.conj().T @ A - A @ H


def liouville_matrix(H) -> np.ndarray:
    """Kronecker form kron(H, I) - kron(I, conj(H)).

    The second factor is the conjugation sandwich of ``H``, which for the
    entrywise conjugation is the entrywise conjugate.
    """
    H = as_matrix(H)
    n = H.shape[0]
    if n > KRON_LIMIT:
        raise DimensionMismatchError(
            f"Kronecker form limited to dim <= {KRON_LIMIT}, got {n}"
        )
    eye = np.eye(n, dtype=complex)
    return kron(H, eye) - kron(eye, conj_matrix(H))


def adjoint_liouville_matrix(H) -> np.ndarray:
    """Kronecker form of the adjoint, built symmetrically from H^dag.

    Equals the matrix adjoint of :func:`liouville_matrix` entrywise; the
    construction from ``H^dag`` and the adjoint of the construction from
    ``H`` coincide at finite dimension.
    """
    H = as_matrix(H)
    return liouville_matrix(H.conj().T)


def build_liouvillian(H, materialize: Optional[bool] = None) -> SuperOperator:
    """Bundle both Liouvillian forms for ``H``.

    ``materialize=None`` stores the Kronecker matrix only for
    dim <= DENSE_CHECK_LIMIT; pass True to force it (up to KRON_LIMIT).
    """
    H = as_matrix(H)
    n = H.shape[0]
    if materialize is None:
        materialize = n <= DENSE_CHECK_LIMIT
    matrix = liouville_matrix(H) if materialize else None
    return SuperOperator(
        dim=n,
        apply_fn=lambda A: apply_liouvillian(H, A),
        adjoint_fn=lambda A: adjoint_liouvillian(H, A),
        matrix=matrix,
    )


def unitary_equivalence_residual(H) -> float:
    """Worst-case disagreement between action and Kronecker forms.

    Maximum over all basis dyads E_ij of
    ``||L_H(E_ij) - matricize(L_kron vec(E_ij))||_F``; contract is
    <= 1e-12 * ||H||_F.
    """
    H = as_matrix(H)
    n = H.shape[0]
    L = liouville_matrix(H)
    worst = 0.0
    for i in range(n):
        for j in range(n):
            E = np.zeros((n, n), dtype=complex)
            E[i, j] = 1.0
            direct = apply_liouvillian(H, E)
            via_kron = matricize(L[:, i * n + j], n)
            worst = max(worst, frob(direct - via_kron))
    return worst
