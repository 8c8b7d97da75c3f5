"""Concrete oscillator models on a truncated number-state basis.

Two systems are constructed:

* the ordinary harmonic oscillator, exactly diagonal in its own basis
  (so truncation introduces no error at all), and
* the Swanson-type anharmonic oscillator

      H = omega (adag a + 1/2) + alpha a^2 + beta adag^2,

  a real non-symmetric matrix whenever alpha != beta, with real spectrum
  in the regime omega^2 - 4 alpha beta > 0.

Conventions
-----------

The reference basis is the number basis of the ordinary oscillator with
length scale ell = sqrt(hbar / (mass * omega)); position and momentum are
x = (ell/sqrt 2)(a + adag) and p = (i hbar / (sqrt 2 ell))(adag - a).
Squares of x and p are built in normal-ordered form, i.e. as truncations
of the exact operators

    x^2 / ell^2 = (a^2 + adag^2 + 2 adag a + 1) / 2,
    p^2 ell^2 / hbar^2 = (2 adag a + 1 - a^2 - adag^2) / 2,

not as squares of the truncated factors.  The normal-ordered form keeps
the Hermitian reference Hamiltonian exactly equal to the diagonal
oscillator when alpha = beta = 0 (the squared-truncated form picks up an
O(N) defect in the corner entry), at the cost of an O(1/N) drift in the
last rows that every truncated quantity shares anyway.

Two construction paths for the Swanson system:

* ``analytic``: truncate H and the metric independently.  The
  intertwining relation then holds only approximately (the defect lives
  at the basis boundary and is measured, never asserted away), and the
  spectrum must come from a direct eigensolve (``swanson_spectrum``).
* ``exact``: build the Hermitian reference ``h_ref`` first and define
  H = rho^-1 h_ref rho with rho from the truncated metric.  All metric
  identities then hold exactly at finite truncation, which is what the
  strict verification suite runs on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatchError, EtaPoleError, NonRealRegimeError
from .linalg import as_matrix, expm_hermitian
from .metric import MetricOperator, validate_metric

PATH_ANALYTIC = "analytic"
PATH_EXACT = "exact"


@dataclass(frozen=True)
class OscillatorSpec:
    """Harmonic oscillator parameters on an N-dimensional number basis."""

    n_dim: int
    omega: float = 1.0
    mass: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if self.n_dim < 2:
            raise DimensionMismatchError("oscillator truncation needs n_dim >= 2")
        for name in ("omega", "mass", "hbar"):
            v = getattr(self, name)
            if not (v > 0 and math.isfinite(v)):
                raise ValueError(f"{name} must be positive and finite, got {v}")


@dataclass(frozen=True)
class SwansonSpec:
    """Swanson oscillator parameters.

    ``ell`` defaults to the reference oscillator length
    sqrt(hbar / (mass * omega)).  The free parameter ``z`` enters only the
    reported mass scalar of the Hermitian reference; the constructed
    metric is always the position-quadratic one.
    """

    n_dim: int
    omega: float
    alpha: float
    beta: float
    z: float = 0.0
    mass: float = 1.0
    hbar: float = 1.0
    ell: float = field(default=0.0)
    path: str = PATH_EXACT

    def __post_init__(self):
        if self.n_dim < 4:
            raise DimensionMismatchError("Swanson truncation needs n_dim >= 4")
        for name in ("mass", "hbar"):
            v = getattr(self, name)
            if not (v > 0 and math.isfinite(v)):
                raise ValueError(f"{name} must be positive and finite, got {v}")
        if self.ell == 0.0:
            object.__setattr__(
                self, "ell", math.sqrt(self.hbar / (self.mass * self.omega))
            )
        if not (self.ell > 0 and math.isfinite(self.ell)):
            raise ValueError(f"ell must be positive and finite, got {self.ell}")
        if self.path not in (PATH_ANALYTIC, PATH_EXACT):
            raise ValueError(f"path must be 'analytic' or 'exact', got {self.path!r}")
        if not -1.0 < self.z <= 1.0:
            # z = -1 is a pole of the mass display.
            raise ValueError(f"z must lie in (-1, 1], got {self.z}")
        if self.omega ** 2 - 4.0 * self.alpha * self.beta <= 0:
            raise NonRealRegimeError(
                f"omega^2 - 4 alpha beta = "
                f"{self.omega ** 2 - 4 * self.alpha * self.beta:.6g} <= 0"
            )
        if self.omega - self.alpha - self.beta == 0:
            raise EtaPoleError("metric exponent pole: omega = alpha + beta")


def build_ladder(n_dim: int):
    """Lowering and raising operators on the truncated number basis.

    ``a`` carries sqrt(n) on the (n-1, n) positions and ``adag`` is its
    transpose.  The truncated commutator [a, adag] equals the identity
    except for the corner entry (N-1, N-1), which is 1 - N.
    """
    if n_dim < 2:
        raise DimensionMismatchError("ladder operators need n_dim >= 2")
    a = np.zeros((n_dim, n_dim))
    for n in range(1, n_dim):
        a[n - 1, n] = math.sqrt(n)
    return a, a.T.copy()


def build_ho(spec: OscillatorSpec) -> np.ndarray:
    """Oscillator Hamiltonian, exactly diagonal: entries hbar omega (n + 1/2)."""
    n = np.arange(spec.n_dim)
    return np.diag(spec.hbar * spec.omega * (n + 0.5)).astype(complex)


def swanson_scalars(spec: SwansonSpec):
    """Closed-form scalars (Omega, Minv, c) of the Swanson system.

    Omega is the frequency of the Hermitian reference, Minv its inverse
    mass at the given z, and c the coefficient of x^2/ell^2 in the metric
    exponent:

        Omega^2 = omega^2 - 4 alpha beta
        c       = -(alpha - beta) / (omega - alpha - beta)

    The mass display contains a nested radical; it is evaluated in the
    rearranged form

        Minv = [-z(a+b) + omega - sign(t) sqrt(t^2 - (1-z^2)(a-b)^2)]
               / ((1+z) hbar / ell^2),      t = a + b - z omega,

    which is algebraically identical for t != 0 and extends continuously
    through the removable point t = 0 of the Hermitian limit.  The
    principal (positive) branch is taken and M > 0 is asserted.
    """
    w, al, be, z = spec.omega, spec.alpha, spec.beta, spec.z
    disc = w * w - 4.0 * al * be
    if disc <= 0:
        raise NonRealRegimeError(f"omega^2 - 4 alpha beta = {disc:.6g} <= 0")
    if w - al - be == 0:
        raise EtaPoleError("metric exponent pole: omega = alpha + beta")
    omega_ref = math.sqrt(disc)
    c = -(al - be) / (w - al - be)
    t = al + be - z * w
    radicand = t * t - (1.0 - z * z) * (al - be) ** 2
    if radicand < 0:
        raise ValueError(
            f"mass radicand {radicand:.6g} negative at z = {z}; "
            "no positive-mass branch here"
        )
    minv = (-z * (al + be) + w - math.copysign(1.0, t) * math.sqrt(radicand)) \
        if t != 0 else (-z * (al + be) + w)
    minv /= (1.0 + z) * spec.hbar / spec.ell ** 2
    if minv <= 0:
        raise ValueError(f"inverse mass {minv:.6g} not positive at z = {z}")
    return omega_ref, minv, c


def build_swanson(spec: SwansonSpec) -> np.ndarray:
    """Truncated Swanson Hamiltonian.

    Real, with the diagonal of the ordinary oscillator and couplings on
    the second off-diagonals; symmetric iff alpha = beta.  The ladder
    products a^2, adag^2 and adag a are exact truncations, so this matrix
    carries no convention ambiguity.
    """
    a, adag = build_ladder(spec.n_dim)
    eye = np.eye(spec.n_dim)
    H = (
        spec.omega * (adag @ a + 0.5 * eye)
        + spec.alpha * (a @ a)
        + spec.beta * (adag @ adag)
    )
    return (spec.hbar * H).astype(complex)


def _x2_over_ell2(n_dim: int) -> np.ndarray:
    """Normal-ordered truncation of x^2 / ell^2."""
    a, adag = build_ladder(n_dim)
    return 0.5 * (a @ a + adag @ adag + 2.0 * adag @ a + np.eye(n_dim))


def _p2_ell2_over_hbar2(n_dim: int) -> np.ndarray:
    """Normal-ordered truncation of p^2 ell^2 / hbar^2."""
    a, adag = build_ladder(n_dim)
    return 0.5 * (2.0 * adag @ a + np.eye(n_dim) - a @ a - adag @ adag)


def build_analytic_metric(spec: SwansonSpec) -> MetricOperator:
    """Truncation of the position-quadratic metric exp(c x^2 / ell^2).

    Positive definite by construction (exponential of a real symmetric
    matrix); the condition number grows like exp(|c| lambda_max(x^2)) and
    is reported by the validator, which will eventually refuse at large
    truncation.  alpha = beta gives the identity exactly.
    """
    _, _, c = swanson_scalars(spec)
    exponent = c * _x2_over_ell2(spec.n_dim)
    return validate_metric(expm_hermitian(exponent))


def build_hermitian_reference(spec: SwansonSpec) -> np.ndarray:
    """Truncated Hermitian reference p^2 / 2M + M Omega^2 x^2 / 2.

    Reduces exactly to :func:`build_ho` when alpha = beta = 0 thanks to
    the normal-ordered squares.
    """
    omega_ref, minv, _ = swanson_scalars(spec)
    mass_ref = 1.0 / minv
    x2 = spec.ell ** 2 * _x2_over_ell2(spec.n_dim)
    p2 = (spec.hbar / spec.ell) ** 2 * _p2_ell2_over_hbar2(spec.n_dim)
    return (0.5 * minv * p2 + 0.5 * mass_ref * omega_ref ** 2 * x2).astype(complex)


def build_similarity_exact(spec: SwansonSpec):
    """Swanson-family Hamiltonian with exact finite-truncation identities.

    Returns ``(H, metric, h_ref)`` where H = rho^-1 h_ref rho.  Because H
    is defined through the truncated similarity transform rather than
    truncated independently, the intertwining relation
    H^dag eta = eta H holds to rounding at any truncation, and
    Sp(H) = Sp(h_ref) exactly.
    """
    metric = build_analytic_metric(spec)
    h_ref = build_hermitian_reference(spec)
    H = metric.rho_inv @ h_ref @ metric.rho
    return H.astype(complex), metric, h_ref


def swanson_model(spec: SwansonSpec):
    """Dispatch on the construction path; returns ``(H, metric)``."""
    if spec.path == PATH_EXACT:
        H, metric, _ = build_similarity_exact(spec)
        return H, metric
    return build_swanson(spec), build_analytic_metric(spec)


def swanson_spectrum(spec: SwansonSpec, imag_tol=1e-9) -> np.ndarray:
    """Sorted real spectrum of the chosen construction.

    The exact path diagonalizes the Hermitian reference (whose spectrum
    the similarity transform preserves identically).  The analytic path
    runs a direct dense eigensolve of the non-symmetric H: in the real
    regime the truncated spectrum comes out real, and this route does not
    touch the (possibly ill-conditioned) metric at all, which makes it
    the honest oracle for large truncations.
    """
    if spec.path == PATH_EXACT:
        return np.linalg.eigvalsh(as_matrix(build_hermitian_reference(spec)))
    values = np.linalg.eigvals(build_swanson(spec))
    scale = max(float(np.max(np.abs(values))), 1e-300)
    worst = float(np.max(np.abs(values.imag)))
    if worst > imag_tol * scale:
        raise NonRealRegimeError(
            f"truncated spectrum has imaginary parts up to {worst:.3e}"
        )
    return np.sort(values.real)


def classify_spacing(eigenvalues, spec: SwansonSpec, max_index: int):
    """Decide which frequency the level differences follow.

    Compares E_m - E_n over all interior pairs m, n <= max_index (m != n)
    against candidate spacings hbar*omega*(m-n) and hbar*Omega*(m-n) and
    returns ``(flag, dev_omega_ref, dev_omega)`` where flag is "Omega"
    or "omega" for the smaller worst-case relative deviation.
    """
    omega_ref, _, _ = swanson_scalars(spec)
    E = np.asarray(eigenvalues, dtype=float)
    if max_index >= E.size:
        raise DimensionMismatchError(
            f"max_index {max_index} outside spectrum of size {E.size}"
        )
    dev_ref = 0.0
    dev_bare = 0.0
    for m in range(max_index + 1):
        for n in range(max_index + 1):
            if m == n:
                continue
            diff = E[m] - E[n]
            dev_ref = max(
                dev_ref,
                abs(diff - spec.hbar * omega_ref * (m - n))
                / abs(spec.hbar * omega_ref * (m - n)),
            )
            dev_bare = max(
                dev_bare,
                abs(diff - spec.hbar * spec.omega * (m - n))
                / abs(spec.hbar * spec.omega * (m - n)),
            )
    flag = "Omega" if dev_ref <= dev_bare else "omega"
    return flag, dev_ref, dev_bare


def interior_drift(spec: SwansonSpec, window=None) -> float:
    """Largest gap between the two paths' interior eigenvalues.

    Emitted as a measurement (the bound shrinks with truncation size);
    nothing is asserted here.
    """
    window = spec.n_dim // 4 if window is None else window
    exact = swanson_spectrum(
        SwansonSpec(
            n_dim=spec.n_dim, omega=spec.omega, alpha=spec.alpha, beta=spec.beta,
            z=spec.z, mass=spec.mass, hbar=spec.hbar, path=PATH_EXACT,
        )
    )
    analytic = swanson_spectrum(
        SwansonSpec(
            n_dim=spec.n_dim, omega=spec.omega, alpha=spec.alpha, beta=spec.beta,
            z=spec.z, mass=spec.mass, hbar=spec.hbar, path=PATH_ANALYTIC,
        )
    )
    k = max(1, window)
    return float(np.max(np.abs(exact[:k] - analytic[:k])))
