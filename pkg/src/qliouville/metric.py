"""Metric operators and the induced inner products.

A metric here is a real symmetric positive-definite matrix ``eta``.
Realness in the storage basis is exactly commutation with the
distinguished conjugation, so it is checked directly as a realness
condition.  The validated object caches the principal square root ``rho``
and both inverses, all computed from one eigendecomposition so they
commute to machine precision.

On operator space the metric lifts to

    zeta(A) = eta A eta,

whose Kronecker form is ``kron(eta, eta)`` (the transpose that the
row-major vectorizer would insert is absorbed by symmetry of ``eta``).
It intertwines the Liouvillian with its adjoint exactly when ``eta``
intertwines ``H`` with ``H^dag``:

    H^dag eta = eta H   implies   L_H^adj o zeta = zeta o L_H,

and :func:`liouville_intertwining_residual` measures the lifted identity
over the dyad basis.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    NotPositiveDefiniteError,
    NotRealEntriesError,
    NotSymmetricError,
)
from .linalg import TOL_PD, TOL_SYM, as_matrix, as_vector, frob, hs_inner
from .liouvillian import DENSE_CHECK_LIMIT, SuperOperator, apply_liouvillian, adjoint_liouvillian
from .linalg import kron

# Expansions are declared trustworthy only below this condition number;
# biorthogonal normalization error scales with cond(rho).
COND_TRUST_LIMIT = 1e6


@dataclass(frozen=True, eq=False)
class MetricOperator:
    """Validated metric with cached square root and inverses."""

    eta: np.ndarray
    rho: np.ndarray
    eta_inv: np.ndarray
    rho_inv: np.ndarray
    condition_number: float

    @property
    def dim(self) -> int:
        return self.eta.shape[0]

    @property
    def trusted(self) -> bool:
        """Whether spectral expansions built on this metric are trustworthy."""
        return self.condition_number <= COND_TRUST_LIMIT

    def inner(self, phi, psi) -> complex:
        """Metric inner product phi^dag eta psi; positive definite."""
        phi = as_vector(phi)
        psi = as_vector(psi)
        if phi.size != self.dim or psi.size != self.dim:
            raise DimensionMismatchError(
                f"vectors of dim {phi.size}, {psi.size} vs metric dim {self.dim}"
            )
        return complex(phi.conj() @ (self.eta @ psi))

    def lifted_apply(self, A) -> np.ndarray:
        """Operator-space metric action eta A eta."""
        A = as_matrix(A)
        if A.shape[0] != self.dim:
            raise DimensionMismatchError(
                f"operand dim {A.shape[0]} vs metric dim {self.dim}"
            )
        return self.eta @ A @ self.eta

    def lifted_inverse_apply(self, A) -> np.ndarray:
        """Inverse of the lifted metric: eta^-1 A eta^-1."""
        A = as_matrix(A)
        if A.shape[0] != self.dim:
            raise DimensionMismatchError(
                f"operand dim {A.shape[0]} vs metric dim {self.dim}"
            )
        return self.eta_inv @ A @ self.eta_inv

    def lifted_inner(self, A, B) -> complex:
        """Weighted Hilbert-Schmidt inner product <A, eta B eta>."""
        return hs_inner(A, self.lifted_apply(B))

    def lift(self, materialize=None) -> SuperOperator:
        """The lifted metric as a :class:`SuperOperator`.

        Self-adjoint for the Hilbert-Schmidt pairing, so action and
        adjoint action coincide.  The Kronecker matrix ``kron(eta, eta)``
        is stored only for dense cross-checks at small dimension.
        """
        if materialize is None:
            materialize = self.dim <= DENSE_CHECK_LIMIT
        matrix = kron(self.eta, self.eta) if materialize else None
        return SuperOperator(
            dim=self.dim,
            apply_fn=self.lifted_apply,
            adjoint_fn=self.lifted_apply,
            matrix=matrix,
        )


def identity_metric(dim: int) -> MetricOperator:
    """Metric of the ordinary (Hermitian) inner product."""
    eye = np.eye(dim)
    return MetricOperator(eye, eye.copy(), eye.copy(), eye.copy(), 1.0)


def validate_metric(M, tol_sym=None, tol_pd=None) -> MetricOperator:
    """Validate a candidate metric and cache its derived operators.

    Checks, in order, each named hypothesis:

    * real entries (commutation with the distinguished conjugation),
    * symmetry within ``tol_sym * ||M||_F``,
    * positive definiteness within ``tol_pd * ||M||_2``.
    """
    M = as_matrix(M, "metric")
    scale = max(frob(M), 1e-300)
    imag_norm = float(np.linalg.norm(M.imag))
    if imag_norm > (TOL_SYM if tol_sym is None else tol_sym) * scale:
        raise NotRealEntriesError(
            f"metric has imaginary part of norm {imag_norm:.3e}"
        )
    R = M.real
    defect = float(np.linalg.norm(R - R.T))
    if defect > (TOL_SYM if tol_sym is None else tol_sym) * scale:
        raise NotSymmetricError(f"metric asymmetry {defect:.3e} exceeds tolerance")
    R = 0.5 * (R + R.T)
    w, V = np.linalg.eigh(R)
    limit = (TOL_PD if tol_pd is None else tol_pd) * max(abs(w[-1]), 1e-300)
    if w[0] <= limit:
        raise NotPositiveDefiniteError(
            f"metric minimum eigenvalue {w[0]:.3e} below tolerance {limit:.3e}"
        )
    sq = np.sqrt(w)
    rho = (V * sq) @ V.T
    rho_inv = (V / sq) @ V.T
    eta_inv = (V / w) @ V.T
    return MetricOperator(
        eta=R,
        rho=0.5 * (rho + rho.T),
        eta_inv=0.5 * (eta_inv + eta_inv.T),
        rho_inv=0.5 * (rho_inv + rho_inv.T),
        condition_number=float(w[-1] / w[0]),
    )


def quasi_hermiticity_residual(H, metric: MetricOperator, interior=None) -> float:
    """Relative intertwining defect ||H^dag eta - eta H|| / ||eta H||.

    ``interior`` restricts both norms to the leading k x k block, which
    isolates truncation drift living at the basis boundary from genuine
    failure of the relation.
    """
    H = as_matrix(H)
    if H.shape[0] != metric.dim:
        raise DimensionMismatchError(
            f"Hamiltonian dim {H.shape[0]} vs metric dim {metric.dim}"
        )
    D = H.conj().T @ metric.eta - metric.eta @ H
    S = metric.eta @ H
    if interior is not None:
        k = int(interior)
        D = D[:k, :k]
        S = S[:k, :k]
    return frob(D) / max(frob(S), 1e-300)


def liouville_intertwining_residual(H, metric: MetricOperator) -> float:
    """Relative defect of the lifted relation L^adj o zeta = zeta o L.

    Evaluated over the full dyad basis: the Frobenius norm of the
    difference superoperator divided by that of ``zeta o L``.
    """
    H = as_matrix(H)
    n = H.shape[0]
    if n != metric.dim:
        raise DimensionMismatchError(
            f"Hamiltonian dim {n} vs metric dim {metric.dim}"
        )
    num = 0.0
    den = 0.0
    for i in range(n):
        for j in range(n):
            E = np.zeros((n, n), dtype=complex)
            E[i, j] = 1.0
            lhs = adjoint_liouvillian(H, metric.lifted_apply(E))
            rhs = metric.lifted_apply(apply_liouvillian(H, E))
            num += frob(lhs - rhs) ** 2
            den += frob(rhs) ** 2
    return float(np.sqrt(num / max(den, 1e-300)))
