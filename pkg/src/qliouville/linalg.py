"""Dense complex linear-algebra kernel.

Conventions used throughout the toolkit:

* All operators are dense complex square matrices stored row-major
  (numpy C order).  The row-major layout is load-bearing: the vectorizer
  in :mod:`qliouville.rigging` is a plain C-order reshape, and every
  Kronecker-form superoperator in :mod:`qliouville.liouvillian` assumes it.
* The distinguished conjugation is entrywise complex conjugation in the
  storage basis (``conj_vector`` / ``conj_matrix``).  It is antilinear,
  involutive and isometric, and it fixes every real vector, so commuting
  with it is equivalent to having real entries.
* Hermiticity is checked relative to the Frobenius norm
  (``TOL_SYM`` factor) and positive definiteness relative to the spectral
  norm (``TOL_PD`` factor).
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatchError, NotHermitianError, NotPositiveDefiniteError

# Relative tolerance factors; two orders above eps accumulation at dim <= 128.
TOL_SYM = 1e-10  # times ||M||_F, Hermiticity checks
TOL_PD = 1e-12   # times ||M||_2, positive-definiteness checks


def frob(A) -> float:
    """Frobenius norm."""
    return float(np.linalg.norm(A))


def as_matrix(A, name="matrix") -> np.ndarray:
    """Coerce to a finite complex square matrix."""
    M = np.asarray(A, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionMismatchError(f"{name} must be square, got shape {M.shape}")
    if not (np.all(np.isfinite(M.real)) and np.all(np.isfinite(M.imag))):
        raise ValueError(f"{name} contains non-finite entries")
    return M


def as_vector(v, name="vector") -> np.ndarray:
    """Coerce to a finite complex vector."""
    u = np.asarray(v, dtype=complex).reshape(-1)
    if u.size == 0:
        raise DimensionMismatchError(f"{name} is empty")
    if not (np.all(np.isfinite(u.real)) and np.all(np.isfinite(u.imag))):
        raise ValueError(f"{name} contains non-finite entries")
    return u


def conj_vector(v) -> np.ndarray:
    """Apply the distinguished conjugation to a vector (entrywise conjugate)."""
    return np.conj(as_vector(v))


def conj_matrix(A) -> np.ndarray:
    """Conjugate an operator by the distinguished conjugation: A -> conj(A)."""
    return np.conj(as_matrix(A))


def kron(A, B) -> np.ndarray:
    """Kronecker product with row-major block convention.

    Index (i, j) of the factors maps to row ``i * dim(B) + j`` of the
    product, matching the vectorizer layout.
    """
    return np.kron(as_matrix(A), as_matrix(B))


def hs_inner(A, B) -> complex:
    """Hilbert-Schmidt inner product Tr(A^dag B).

    Conjugate-linear in ``A``, linear in ``B``.
    """
    A = as_matrix(A)
    B = as_matrix(B)
    if A.shape != B.shape:
        raise DimensionMismatchError(f"shapes {A.shape} and {B.shape} differ")
    # vdot conjugates its flattened first argument: sum conj(A_ij) B_ij.
    return complex(np.vdot(A, B))


def hermiticity_defect(M) -> float:
    """Frobenius norm of the anti-Hermitian part ||M - M^dag||_F."""
    M = as_matrix(M)
    return frob(M - M.conj().T)


def require_hermitian(M, tol=None, name="matrix") -> np.ndarray:
    """Return ``M`` coerced, raising ``NotHermitianError`` beyond tolerance."""
    M = as_matrix(M, name)
    limit = (TOL_SYM if tol is None else tol) * max(frob(M), 1e-300)
    defect = hermiticity_defect(M)
    if defect > limit:
        raise NotHermitianError(
            f"{name} is not Hermitian: defect {defect:.3e} > {limit:.3e}"
        )
    return M


def eig_hermitian(M, tol=None):
    """Eigendecomposition of a Hermitian matrix.

    Returns ``(w, V)`` with eigenvalues ``w`` real ascending and
    orthonormal eigenvector columns ``V``.  The input is Hermitized
    (average with its adjoint) before calling LAPACK so the decomposition
    is exactly of a Hermitian matrix.
    """
    M = require_hermitian(M, tol)
    w, V = np.linalg.eigh(0.5 * (M + M.conj().T))
    return w, V


def expm_hermitian(S, tol=None) -> np.ndarray:
    """Principal exponential of a Hermitian matrix via eigendecomposition.

    Restricted to Hermitian arguments by design; the only exponentials in
    scope are of real symmetric quadratic forms. For real symmetric input
    the result is real symmetric positive definite.
    """
    w, V = eig_hermitian(S, tol)
    E = (V * np.exp(w)) @ V.conj().T
    E = 0.5 * (E + E.conj().T)
    if np.allclose(np.asarray(S, dtype=complex).imag, 0.0, atol=0.0):
        E = E.real.astype(complex)
    return E


def sqrtm_spd(M, tol_sym=None, tol_pd=None) -> np.ndarray:
    """Principal square root of a Hermitian positive-definite matrix.

    Raises ``NotPositiveDefiniteError`` when the smallest eigenvalue does
    not clear ``tol_pd * ||M||_2``.
    """
    w, V = eig_hermitian(M, tol_sym)
    limit = (TOL_PD if tol_pd is None else tol_pd) * max(abs(w[-1]), 1e-300)
    if w[0] <= limit:
        raise NotPositiveDefiniteError(
            f"minimum eigenvalue {w[0]:.3e} below tolerance {limit:.3e}"
        )
    R = (V * np.sqrt(w)) @ V.conj().T
    return 0.5 * (R + R.conj().T)
