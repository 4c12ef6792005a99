import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dkt.floquet import dkt
from dkt.qubits import (
    A3_SCALAR_PHASE,
    GAMMA,
    SX,
    SY,
    SZ,
    a3_expected,
    a3_operator,
    a3_spectrum_residual,
    build_singlet_paired_state,
    c_algebra_residuals,
    collective,
    cube_residuals,
    exp_quadratic,
    full_space_floquet,
    kron_all,
    o_operator,
    projective_residual,
    singlet_residuals,
    symmetric_isometry,
    symmetric_restriction_residual,
    tensor_power,
    u12_closed_form,
    u12_residuals,
    verification_report,
    verify_c_algebra,
    verify_cube_identity,
    verify_gamma_relations,
    verify_O_commutes_with_Jx2,
    verify_u12_closed_form,
)


def maxabs(a):
    return float(np.max(np.abs(a)))


def test_gamma_single_qubit():
    assert maxabs(GAMMA @ SZ - SX @ GAMMA) < 1e-15
    assert maxabs(SZ @ GAMMA + GAMMA @ SX) < 1e-15
    assert verify_gamma_relations(1) < 1e-15


def test_gamma_swap_rule():
    assert verify_gamma_relations(4, 0.9) < 1e-12
    assert verify_gamma_relations(5, 0.0) < 1e-15


def test_collective_spin_algebra():
    Jx, Jy, Jz = (collective(a, 4) for a in "xyz")
    assert maxabs(Jx @ Jy - Jy @ Jx - 1j * Jz) < 1e-13
    assert abs(np.linalg.eigvalsh(Jz).max() - 2) < 1e-13


def test_symmetric_isometry_is_orthonormal():
    W = symmetric_isometry(5)
    np.testing.assert_allclose(W.T @ W, np.eye(6), atol=1e-14)


@pytest.mark.parametrize("n", [2, 4])
def test_c_algebra(n):
    res = c_algebra_residuals(n)
    assert max(res.values()) < 1e-13
    assert verify_c_algebra(n) < 1e-13


@pytest.mark.parametrize("n", [3, 5])
def test_c_algebra_rejects_odd(n):
    with pytest.raises(ValueError):
        verify_c_algebra(n)


@pytest.mark.parametrize("n", [3, 5])
def test_cube_projective(n):
    assert verify_cube_identity(n) < 1e-12
    for residual, phase in cube_residuals(n).values():
        # the leftover global phase is -+pi/4, never 0
        assert residual < 1e-12 and abs(abs(phase) - np.pi / 4) < 1e-12


def test_cube_parity_dependence():
    assert max(r for r, _ in cube_residuals(2).values()) > 0.1
    with pytest.raises(ValueError):
        verify_cube_identity(4)


def test_cube_scalar_origin():
    # each exp(-i pi/2 J^2) on odd n carries a scalar e^{-i pi/8}, six factors give e^{-3i pi/4}
    n = 3
    M = exp_quadratic(collective("z", n), np.pi / 2) @ exp_quadratic(collective("x", n), np.pi / 2)
    C = np.linalg.matrix_power(M, 3)
    assert maxabs(C - np.exp(-3j * np.pi / 4) * np.eye(8)) < 1e-12


@pytest.mark.parametrize("n", [2, 4, 6])
def test_u12_independence_and_corrected_form(n):
    r = u12_residuals(n, form="corrected")
    assert r["independence"] < 1e-11
    assert r["closed_form"] < 1e-11
    assert r["U24~sy^n"] < 1e-11


@pytest.mark.parametrize("n", [2, 4])
def test_u24_sign_alternates(n):
    P = np.linalg.matrix_power(full_space_floquet(n, n / 2 * np.pi / 4, 0.3), 24)
    Y = tensor_power(SY, n)
    assert maxabs(P - (-1) ** (n // 2) * Y) < 1e-11


def test_printed_u12_form_is_not_a_phase_away():
    # the printed closed form differs from the true 12th power by more than a global phase
    P = np.linalg.matrix_power(full_space_floquet(2, np.pi / 4, 0.0), 12)
    residual, _ = projective_residual(P, u12_closed_form(2, "printed"))
    assert residual > 0.1
    assert verify_u12_closed_form(2, form="corrected") < 1e-11


def test_u12_rejects_odd():
    with pytest.raises(ValueError):
        u12_residuals(3)


@pytest.mark.parametrize("n", [2, 4, 6])
def test_O_commutes(n):
    assert verify_O_commutes_with_Jx2(n) < 1e-12


def test_O_special_angle():
    assert verify_O_commutes_with_Jx2(4, np.pi / 5) > 1e-3
    with pytest.raises(ValueError):
        verify_O_commutes_with_Jx2(3)
    assert o_operator(2).shape == (4, 4)


def test_singlet_three_qubits_is_triple():
    chi = np.arange(8) + 1j
    chi = chi / np.linalg.norm(chi)
    st_ = build_singlet_paired_state(3, chi)
    np.testing.assert_allclose(st_.amplitudes, chi)
    assert st_.pairs == ()


@given(st.lists(st.floats(-1, 1), min_size=16, max_size=16).filter(lambda v: np.linalg.norm(v) > 0.1))
@settings(max_examples=20, deadline=None)
def test_singlet_five_qubits(v):
    chi = np.array(v[:8]) + 1j * np.array(v[8:])
    chi = chi / np.linalg.norm(chi)
    st_ = build_singlet_paired_state(5, chi)
    assert max(singlet_residuals(st_, chi).values()) < 1e-12


def test_singlet_validation():
    with pytest.raises(ValueError):
        build_singlet_paired_state(4)
    with pytest.raises(ValueError):
        build_singlet_paired_state(5, np.ones(8))


def test_kron_all_vectors():
    a, b = np.array([1, 0]), np.array([0, 1])
    np.testing.assert_array_equal(kron_all([a, b]), [0, 1, 0, 0])


def test_a3_spectrum():
    assert a3_spectrum_residual() < 1e-10
    raw = np.linalg.eigvals(a3_operator())
    assert np.max(np.abs(np.abs(raw) - 1)) < 1e-12
    # before removing the scalar, the spectrum is the expected one times e^{-3i pi/8}
    shifted = sorted(np.angle(v * A3_SCALAR_PHASE) for v, m in a3_expected() for _ in range(m))
    np.testing.assert_allclose(sorted(np.angle(raw)), shifted, atol=1e-10)


def test_a3_nontrivial_eigenvalues_never_return():
    m = np.arange(1, 1001)
    for v, _ in a3_expected()[1:]:
        w = v / np.exp(1j * np.pi / 4)
        assert np.min(np.abs(w ** m - 1)) > 1e-6


@pytest.mark.parametrize("n", range(1, 9))
def test_symmetric_restriction(n):
    assert symmetric_restriction_residual(n, 1.3, 0.4) < 1e-10
    assert symmetric_restriction_residual(n, n / 2 * np.pi / 2, n / 2 * np.pi / 2, 0.7) < 1e-10


def test_report_corrected_passes():
    rows = verification_report(6, closed_form="corrected")
    assert all(r["pass"] for r in rows), [r for r in rows if not r["pass"]]


def test_report_fault_fails():
    rows = verification_report(6, closed_form="corrected", fault=1e-3)
    assert not all(r["pass"] for r in rows)


def test_report_printed_form_flagged():
    rows = verification_report(4, closed_form="printed")
    bad = {r["identity"] for r in rows if not r["pass"]}
    assert bad == {"u12_closed_form_printed"}


def test_spin_half_dkt_is_pure_rotation():
    U = dkt(0.5, 0.37, 1.2)
    assert maxabs(projective_residual(U.matrix, full_space_floquet(1, 0.0, 0.0))[0]) < 1e-12
