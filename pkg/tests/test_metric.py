import numpy as np
import pytest

from qliouville.errors import (
    NotPositiveDefiniteError,
    NotRealEntriesError,
    NotSymmetricError,
)
from qliouville.linalg import hs_inner
from qliouville.liouvillian import apply_liouvillian
from qliouville.metric import (
    identity_metric,
    liouville_intertwining_residual,
    quasi_hermiticity_residual,
    validate_metric,
)
from qliouville.models import SwansonSpec, build_analytic_metric, build_similarity_exact, build_swanson
from qliouville.rigging import matricize, vectorize


def _rng(seed=0):
    return np.random.default_rng(seed)


def _rc(rng, n):
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


SWANSON = dict(omega=2.0, alpha=0.5, beta=0.25)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

def test_validate_identity():
    m = validate_metric(np.eye(4))
    assert np.allclose(m.rho, np.eye(4))
    assert m.condition_number == pytest.approx(1.0)


def test_validate_diagonal():
    m = validate_metric(np.diag([1.0, 4.0]))
    assert np.allclose(m.rho, np.diag([1.0, 2.0]), atol=1e-14)
    assert np.allclose(m.eta_inv, np.diag([1.0, 0.25]), atol=1e-14)
    assert m.condition_number == pytest.approx(4.0)


def test_validate_swanson_analytic_n32():
    spec = SwansonSpec(n_dim=32, **SWANSON)
    m = build_analytic_metric(spec)
    w = np.linalg.eigvalsh(m.eta)
    assert w[0] > 0
    assert np.linalg.norm(m.rho @ m.rho - m.eta) <= 1e-12 * np.linalg.norm(m.eta)


def test_validate_rejects_asymmetric():
    with pytest.raises(NotSymmetricError):
        validate_metric(np.array([[1.0, 0.5], [0.0, 1.0]]))


def test_validate_rejects_complex():
    with pytest.raises(NotRealEntriesError):
        validate_metric(np.array([[1.0, 0.1j], [-0.1j, 1.0]]))


def test_validate_rejects_indefinite():
    with pytest.raises(NotPositiveDefiniteError):
        validate_metric(np.diag([1.0, -2.0]))


def test_cached_operators_commute():
    # functions of one SPD matrix commute pairwise
    rng = _rng(1)
    X = rng.standard_normal((6, 6))
    m = validate_metric(X @ X.T + 6 * np.eye(6))
    mats = [m.eta, m.eta_inv, m.rho, m.rho_inv]
    for A in mats:
        for B in mats:
            comm = A @ B - B @ A
            assert np.linalg.norm(comm) <= 1e-12 * (
                np.linalg.norm(A) * np.linalg.norm(B)
            )


# ---------------------------------------------------------------------------
# metric inner product
# ---------------------------------------------------------------------------

def test_inner_identity_metric_is_standard():
    rng = _rng(2)
    m = identity_metric(4)
    u = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    v = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    assert m.inner(u, v) == pytest.approx(np.vdot(u, v))


def test_inner_weighted_basis_vector():
    m = validate_metric(np.diag([1.0, 4.0]))
    e1 = np.array([0.0, 1.0])
    assert m.inner(e1, e1) == pytest.approx(4.0)


def test_inner_positive_definite():
    rng = _rng(3)
    X = rng.standard_normal((5, 5))
    m = validate_metric(X @ X.T + 5 * np.eye(5))
    for _ in range(100):
        v = rng.standard_normal(5) + 1j * rng.standard_normal(5)
        value = m.inner(v, v)
        assert value.real > 0
        assert abs(value.imag) <= 1e-12 * value.real


# ---------------------------------------------------------------------------
# lifted metric
# ---------------------------------------------------------------------------

def test_lift_identity_metric():
    rng = _rng(4)
    m = identity_metric(3)
    A = _rc(rng, 3)
    assert np.array_equal(m.lifted_apply(A), A)


def test_lift_hand_value():
    m = validate_metric(np.diag([1.0, 2.0]))
    E01 = np.zeros((2, 2), dtype=complex)
    E01[0, 1] = 1.0
    assert np.allclose(m.lifted_apply(E01), 2.0 * E01, atol=1e-14)


def test_lift_kron_path_agreement():
    rng = _rng(5)
    X = rng.standard_normal((4, 4))
    m = validate_metric(X @ X.T + 4 * np.eye(4))
    K = np.kron(m.eta, m.eta)
    for _ in range(10):
        A = _rc(rng, 4)
        via_kron = matricize(K @ vectorize(A), 4)
        direct = m.lifted_apply(A)
        assert np.linalg.norm(via_kron - direct) <= 1e-13 * np.linalg.norm(direct)


def test_lift_superoperator_forms_agree():
    X = _rng(6).standard_normal((3, 3))
    m = validate_metric(X @ X.T + 3 * np.eye(3))
    assert m.lift(materialize=True).kron_action_defect() <= 1e-13


def test_lifted_inner_reduces_to_hs():
    rng = _rng(7)
    m = identity_metric(4)
    A, B = _rc(rng, 4), _rc(rng, 4)
    assert m.lifted_inner(A, B) == pytest.approx(hs_inner(A, B))


def test_lifted_inner_hand_value():
    m = validate_metric(np.diag([2.0, 1.0]))
    E00 = np.zeros((2, 2), dtype=complex)
    E00[0, 0] = 1.0
    assert m.lifted_inner(E00, E00) == pytest.approx(4.0)


def test_lifted_inner_positive():
    rng = _rng(8)
    X = rng.standard_normal((4, 4))
    m = validate_metric(X @ X.T + 4 * np.eye(4))
    for _ in range(100):
        A = _rc(rng, 4)
        value = m.lifted_inner(A, A)
        assert value.real > 0
        assert abs(value.imag) <= 1e-12 * value.real


# ---------------------------------------------------------------------------
# intertwining residuals
# ---------------------------------------------------------------------------

def test_residual_hermitian_identity_metric():
    rng = _rng(9)
    H = _rc(rng, 4)
    H = H + H.conj().T
    assert quasi_hermiticity_residual(H, identity_metric(4)) <= 1e-14


def test_residual_similarity_exact_n16():
    spec = SwansonSpec(n_dim=16, **SWANSON)
    H, metric, _ = build_similarity_exact(spec)
    assert quasi_hermiticity_residual(H, metric) <= 1e-12


def test_residual_analytic_truncation_measured():
    # drift measured, not asserted small; interior block is clean
    spec = SwansonSpec(n_dim=64, **SWANSON, path="analytic")
    H = build_swanson(spec)
    metric = build_analytic_metric(spec)
    full = quasi_hermiticity_residual(H, metric)
    interior = quasi_hermiticity_residual(H, metric, interior=16)
    assert np.isfinite(full) and full > 0
    assert interior < full


def test_lifted_intertwining_residual_exact():
    spec = SwansonSpec(n_dim=8, **SWANSON)
    H, metric, _ = build_similarity_exact(spec)
    assert liouville_intertwining_residual(H, metric) <= 1e-11


def test_intertwining_transport_bound():
    # lifted residual <= 4 cond(eta) times the Hamiltonian-level residual
    # (plus the floor the Hamiltonian residual itself sits on)
    spec = SwansonSpec(n_dim=12, **SWANSON)
    H, metric, _ = build_similarity_exact(spec)
    eps = quasi_hermiticity_residual(H, metric)
    lifted = liouville_intertwining_residual(H, metric)
    assert lifted <= 4.0 * metric.condition_number * max(eps, 1e-16)


def test_hermitian_limit_lift_is_trivial():
    rng = _rng(10)
    m = identity_metric(5)
    H = _rc(rng, 5)
    H = H + H.conj().T
    A = _rc(rng, 5)
    assert np.array_equal(m.lifted_apply(A), A)
    assert np.allclose(
        apply_liouvillian(H, A),
        m.lifted_apply(apply_liouvillian(H, m.lifted_apply(A))),
        atol=1e-13,
    )
