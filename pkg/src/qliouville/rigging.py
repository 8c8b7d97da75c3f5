"""Identification of operator space with the tensor-product space.

The operator space of N x N complex matrices with the Hilbert-Schmidt
inner product is unitarily equivalent to C^(N^2) with the standard inner
product.  With the distinguished (entrywise) conjugation ``C`` the unitary
is fixed by

    phi (x) C psi  |->  dyad(phi, psi) = phi psi^dag,

which in coordinates is exactly the row-major reshape: component
``i*N + j`` of the vector is entry ``(i, j)`` of the matrix.  Any layout
other than row-major would need an explicit permutation here.

Linear functionals on operator space are represented by matrices through
the Hilbert-Schmidt pairing (:class:`SuperFunctional`).  Superoperators
act on such functionals by the adjoint acting on representatives:

    (S^ f)(B) = f(S(B)) = <S(B), F> = <B, S^dag(F)>     (ket polarity)

so ``dual_apply`` maps the representative ``F`` to ``S^dag(F)`` for either
polarity.  This single rule is what makes the dual eigenvector families in
:mod:`qliouville.spectral` eigen-functionals of the lifted operator while
their representatives are eigen-matrices of its adjoint.  It is the most
error-prone convention in the toolkit; tests pin it from both sides.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError
from .linalg import as_matrix, as_vector, hs_inner


def dyad(phi, psi) -> np.ndarray:
    """Rank-one operator ``phi psi^dag``; applied to chi gives <psi, chi> phi."""
    phi = as_vector(phi)
    psi = as_vector(psi)
    if phi.size != psi.size:
        raise DimensionMismatchError(f"dyad factors differ: {phi.size} vs {psi.size}")
    return np.outer(phi, psi.conj())


def vectorize(A) -> np.ndarray:
    """Row-major vector of an operator; isometric for the HS inner product."""
    return as_matrix(A).reshape(-1)


def matricize(u, dim=None) -> np.ndarray:
    """Inverse of :func:`vectorize`; the length of ``u`` must be a square."""
    u = as_vector(u)
    if dim is None:
        dim = int(round(np.sqrt(u.size)))
    if dim * dim != u.size:
        raise DimensionMismatchError(f"length {u.size} is not a perfect square")
    return u.reshape(dim, dim)


@dataclass(frozen=True, eq=False)
class SuperFunctional:
    """Linear or antilinear functional on operator space.

    Stored by its matrix representative so functional equality is decidable
    and the object serializes.  Evaluation rules:

    * ``ket``:  B -> <B, F>   (antilinear in B)
    * ``bra``:  B -> <F, B>   (linear in B)

    and ``ket(B) == conj(bra(B))`` for the same representative.
    """

    representative: np.ndarray
    polarity: str  # "ket" | "bra"

    def __post_init__(self):
        object.__setattr__(self, "representative", as_matrix(self.representative))
        if self.polarity not in ("ket", "bra"):
            raise ValueError(f"polarity must be 'ket' or 'bra', got {self.polarity!r}")

    @property
    def dim(self) -> int:
        return self.representative.shape[0]

    def __call__(self, B) -> complex:
        if self.polarity == "ket":
            return hs_inner(B, self.representative)
        return hs_inner(self.representative, B)

    def conjugate(self) -> "SuperFunctional":
        """Swap polarity; the complex-conjugate functional."""
        other = "bra" if self.polarity == "ket" else "ket"
        return SuperFunctional(self.representative, other)

    def isclose(self, other: "SuperFunctional", tol=1e-12) -> bool:
        """Equality of functionals, decided on representatives."""
        return (
            self.polarity == other.polarity
            and self.dim == other.dim
            and np.linalg.norm(self.representative - other.representative)
            <= tol * max(np.linalg.norm(self.representative), 1.0)
        )


def super_ket(A) -> SuperFunctional:
    """Ket functional of an operator: B -> <B, A>."""
    return SuperFunctional(A, "ket")


def super_bra(A) -> SuperFunctional:
    """Bra functional of an operator: B -> <A, B>."""
    return SuperFunctional(A, "bra")


def double_ket(phi, psi) -> SuperFunctional:
    """Ket functional of the dyad ``phi psi^dag``.

    Against basis dyads it factorizes into vector inner products:
    evaluating the bra of ``dyad(e_m, e_n)`` on ``dyad(phi, psi)`` yields
    ``<e_m, phi> * conj(<e_n, psi>)``.
    """
    return super_ket(dyad(phi, psi))


def dual_apply(op, f: SuperFunctional) -> SuperFunctional:
    """Extend a superoperator to functionals: new representative S^dag(F).

    ``op`` must expose ``adjoint_apply(matrix) -> matrix`` and ``dim``
    (see :class:`qliouville.liouvillian.SuperOperator`).  Both polarities
    transform by the adjoint on the representative; see the module
    docstring for the one-line derivation.
    """
    if getattr(op, "dim", f.dim) != f.dim:
        raise DimensionMismatchError(
            f"superoperator dim {op.dim} vs functional dim {f.dim}"
        )
    return SuperFunctional(op.adjoint_apply(f.representative), f.polarity)
