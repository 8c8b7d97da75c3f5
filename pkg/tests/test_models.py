import math

import numpy as np
import pytest

from qliouville.errors import (
    DimensionMismatchError,
    EtaPoleError,
    NonRealRegimeError,
)
from qliouville.liouvillian import liouville_matrix
from qliouville.models import (
    OscillatorSpec,
    SwansonSpec,
    build_analytic_metric,
    build_hermitian_reference,
    build_ho,
    build_ladder,
    build_similarity_exact,
    build_swanson,
    classify_spacing,
    interior_drift,
    swanson_scalars,
    swanson_spectrum,
)

SWANSON = dict(omega=2.0, alpha=0.5, beta=0.25)
OMEGA_REF = math.sqrt(3.5)


# ---------------------------------------------------------------------------
# ladder operators
# ---------------------------------------------------------------------------

def test_ladder_lowers_and_raises():
    a, adag = build_ladder(5)
    e0 = np.zeros(5); e0[0] = 1.0
    e1 = np.zeros(5); e1[1] = 1.0
    assert np.allclose(a @ e1, e0)
    assert np.allclose(adag @ e0, e1)


def test_ladder_commutator_corner():
    a, adag = build_ladder(4)
    comm = a @ adag - adag @ a
    expected = np.eye(4)
    expected[3, 3] = 1.0 - 4.0
    assert np.allclose(comm, expected, atol=1e-14)
    assert comm[3, 3] == pytest.approx(-3.0)


def test_ladder_guards_dimension():
    with pytest.raises(DimensionMismatchError):
        build_ladder(1)


# ---------------------------------------------------------------------------
# harmonic oscillator
# ---------------------------------------------------------------------------

def test_ho_diagonal_levels():
    H = build_ho(OscillatorSpec(n_dim=3, omega=1.0))
    assert np.allclose(H, np.diag([0.5, 1.5, 2.5]), atol=0)


def test_ho_liouvillian_spectrum_is_level_differences():
    n = 6
    H = build_ho(OscillatorSpec(n_dim=n, omega=1.0))
    values = np.sort(np.linalg.eigvals(liouville_matrix(H)).real)
    expected = np.sort(
        [(m - k) * 1.0 for m in range(n) for k in range(n)]
    )
    assert np.max(np.abs(values - expected)) <= 1e-12


def test_ho_liouvillian_multiplicities():
    n = 6
    H = build_ho(OscillatorSpec(n_dim=n, omega=1.0))
    values = np.round(np.linalg.eigvals(liouville_matrix(H)).real, 9)
    for k in range(-(n - 1), n):
        assert int(np.sum(values == k)) == n - abs(k)


def test_ho_spec_guards():
    with pytest.raises(ValueError):
        OscillatorSpec(n_dim=4, omega=-1.0)
    with pytest.raises(DimensionMismatchError):
        OscillatorSpec(n_dim=1)


# ---------------------------------------------------------------------------
# closed-form scalars
# ---------------------------------------------------------------------------

def test_scalars_reference_values():
    spec = SwansonSpec(n_dim=8, **SWANSON)
    omega_ref, minv, c = swanson_scalars(spec)
    assert omega_ref == pytest.approx(1.8708286933869707, abs=1e-12)
    assert c == pytest.approx(-0.2, abs=1e-15)
    # independent arithmetic route through the raw nested-radical display
    apb = 0.75
    raw = (2.0 - apb * math.sqrt(1.0 - (0.25 / apb) ** 2)) / (1.0 / 0.5)
    assert minv == pytest.approx(raw, abs=1e-13)
    assert minv == pytest.approx(0.6464466094067264, abs=1e-12)


def test_scalars_hermitian_limit():
    spec = SwansonSpec(n_dim=8, omega=2.0, alpha=0.0, beta=0.0)
    omega_ref, minv, c = swanson_scalars(spec)
    assert omega_ref == pytest.approx(2.0)
    assert c == 0.0
    assert minv == pytest.approx(1.0, abs=1e-12)  # unit mass


def test_scalars_z_one_branch():
    spec = SwansonSpec(n_dim=8, z=1.0, **SWANSON)
    _, minv, _ = swanson_scalars(spec)
    # at z = 1 the display collapses to (omega - alpha - beta) ell^2 / hbar
    assert minv == pytest.approx(1.25 * 0.5, abs=1e-13)


def test_non_real_regime_guard():
    with pytest.raises(NonRealRegimeError):
        SwansonSpec(n_dim=8, omega=1.0, alpha=1.0, beta=1.0)


def test_metric_pole_guard():
    with pytest.raises(EtaPoleError):
        SwansonSpec(n_dim=8, omega=2.0, alpha=1.5, beta=0.5)


def test_z_pole_guard():
    with pytest.raises(ValueError):
        SwansonSpec(n_dim=8, z=-1.0, **SWANSON)


def test_swanson_spec_needs_four_levels():
    with pytest.raises(DimensionMismatchError):
        SwansonSpec(n_dim=3, **SWANSON)


# ---------------------------------------------------------------------------
# Swanson Hamiltonian
# ---------------------------------------------------------------------------

def test_swanson_reduces_to_ho():
    spec = SwansonSpec(n_dim=6, omega=1.5, alpha=0.0, beta=0.0)
    H = build_swanson(spec)
    assert np.allclose(H, build_ho(OscillatorSpec(n_dim=6, omega=1.5)), atol=0)


def test_swanson_coupling_entry():
    for n in (4, 6, 9):
        H = build_swanson(SwansonSpec(n_dim=n, **SWANSON))
        assert H[0, 2] == pytest.approx(0.5 * math.sqrt(2.0))
        assert H[2, 0] == pytest.approx(0.25 * math.sqrt(2.0))


def test_swanson_asymmetry():
    H = build_swanson(SwansonSpec(n_dim=4, **SWANSON))
    defect = H - H.conj().T
    # the (0,2)/(2,0) defect is (alpha - beta) sqrt(2); deeper couplings
    # grow like sqrt(n(n-1)), so asymmetry is everywhere on the band
    assert defect[0, 2] == pytest.approx(0.25 * math.sqrt(2.0))
    assert np.linalg.norm(defect) > 0
    sym = build_swanson(SwansonSpec(n_dim=4, omega=2.0, alpha=0.4, beta=0.4))
    assert np.allclose(sym, sym.conj().T, atol=0)


def test_swanson_is_real_and_banded():
    H = build_swanson(SwansonSpec(n_dim=8, **SWANSON))
    assert np.allclose(H.imag, 0.0, atol=0)
    for i in range(8):
        for j in range(8):
            if abs(i - j) not in (0, 2):
                assert H[i, j] == 0.0


# ---------------------------------------------------------------------------
# analytic metric
# ---------------------------------------------------------------------------

def test_analytic_metric_identity_at_equal_couplings():
    spec = SwansonSpec(n_dim=6, omega=2.0, alpha=0.3, beta=0.3)
    m = build_analytic_metric(spec)
    assert np.allclose(m.eta, np.eye(6), atol=1e-14)


def _exp_sym_2x2(a, b, d):
    # closed-form exponential of [[a, b], [b, d]]
    mean = 0.5 * (a + d)
    r = math.hypot(0.5 * (a - d), b)
    if r == 0:
        return np.array([[math.exp(mean), 0.0], [0.0, math.exp(mean)]])
    cosh_term = math.exp(mean) * math.cosh(r)
    sinh_term = math.exp(mean) * math.sinh(r) / r
    return np.array([
        [cosh_term + 0.5 * (a - d) * sinh_term, b * sinh_term],
        [b * sinh_term, cosh_term - 0.5 * (a - d) * sinh_term],
    ])


def test_analytic_metric_block_oracle_n4():
    # at four levels the position-squared matrix splits into parity blocks,
    # each exponentiated in closed form
    spec = SwansonSpec(n_dim=4, **SWANSON)
    m = build_analytic_metric(spec)
    c = -0.2
    even = _exp_sym_2x2(c * 0.5, c * 0.5 * math.sqrt(2.0), c * 2.5)
    odd = _exp_sym_2x2(c * 1.5, c * 0.5 * math.sqrt(6.0), c * 3.5)
    expected = np.zeros((4, 4))
    expected[np.ix_([0, 2], [0, 2])] = even
    expected[np.ix_([1, 3], [1, 3])] = odd
    assert np.allclose(m.eta, expected, atol=1e-13)


def test_analytic_metric_condition_growth_recorded():
    small = build_analytic_metric(SwansonSpec(n_dim=16, **SWANSON))
    large = build_analytic_metric(SwansonSpec(n_dim=64, **SWANSON))
    assert small.condition_number < 1e6
    assert large.condition_number > 1e6  # reported, refused by strict solves


def test_hermitian_limit_continuity():
    # fixed alpha + beta, shrinking alpha - beta: metric converges to identity
    diffs = [0.3, 0.2, 0.1, 0.0]
    norms = []
    for d in diffs:
        spec = SwansonSpec(
            n_dim=16, omega=2.0, alpha=(0.5 + d) / 2, beta=(0.5 - d) / 2
        )
        m = build_analytic_metric(spec)
        norms.append(np.linalg.norm(m.eta - np.eye(16)))
    assert all(norms[i] > norms[i + 1] for i in range(len(norms) - 1))
    assert norms[-1] <= 1e-13


# ---------------------------------------------------------------------------
# similarity-exact construction
# ---------------------------------------------------------------------------

def test_similarity_exact_collapses_to_ho():
    spec = SwansonSpec(n_dim=16, omega=2.0, alpha=0.0, beta=0.0)
    H, metric, h_ref = build_similarity_exact(spec)
    ho = build_ho(OscillatorSpec(n_dim=16, omega=2.0))
    assert np.allclose(metric.eta, np.eye(16), atol=1e-14)
    assert np.allclose(h_ref, ho, atol=1e-12)
    assert np.allclose(H, ho, atol=1e-12)


def test_similarity_exact_intertwining():
    spec = SwansonSpec(n_dim=16, **SWANSON)
    H, metric, _ = build_similarity_exact(spec)
    defect = H.conj().T @ metric.eta - metric.eta @ H
    assert np.linalg.norm(defect) <= 1e-12 * np.linalg.norm(metric.eta @ H)


def test_similarity_exact_spectrum_is_reference_spectrum():
    spec = SwansonSpec(n_dim=12, **SWANSON)
    H, _, h_ref = build_similarity_exact(spec)
    oracle = np.linalg.eigvalsh(h_ref)
    diffs_oracle = np.sort((oracle[:, None] - oracle[None, :]).ravel())
    got = np.sort(np.linalg.eigvals(liouville_matrix(H)).real)
    assert np.max(np.abs(got - diffs_oracle)) <= 1e-10


def test_spectrum_paths():
    exact = swanson_spectrum(SwansonSpec(n_dim=24, **SWANSON, path="exact"))
    analytic = swanson_spectrum(SwansonSpec(n_dim=24, **SWANSON, path="analytic"))
    assert exact.shape == analytic.shape == (24,)
    assert np.all(np.diff(exact) > 0)
    # interior levels agree between the two constructions
    assert np.max(np.abs(exact[:6] - analytic[:6])) <= 1e-6


def test_spacing_flag_reports_reference_frequency():
    spec = SwansonSpec(n_dim=32, **SWANSON, path="analytic")
    values = swanson_spectrum(spec)
    flag, dev_ref, dev_bare = classify_spacing(values, spec, 8)
    assert flag == "Omega"
    assert dev_ref < 1e-6 < dev_bare


def test_interior_drift_shrinks_with_truncation():
    spec8 = SwansonSpec(n_dim=8, **SWANSON)
    spec16 = SwansonSpec(n_dim=16, **SWANSON)
    spec32 = SwansonSpec(n_dim=32, **SWANSON)
    drifts = [interior_drift(s) for s in (spec8, spec16, spec32)]
    assert drifts[0] > drifts[1] > drifts[2]


def test_reference_hamiltonian_matches_scalar_frequency():
    spec = SwansonSpec(n_dim=48, **SWANSON)
    levels = np.linalg.eigvalsh(build_hermitian_reference(spec))
    expected = OMEGA_REF * (np.arange(12) + 0.5)
    assert np.max(np.abs(levels[:12] - expected)) <= 1e-9
