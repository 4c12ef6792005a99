import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings, strategies as st

from dkt.spin import (
    SpinSystem,
    SphericalPoint,
    build_angular_momentum,
    coherent_state,
    exp_quadratic_x,
    exp_quadratic_z,
    rotation_about_y,
)

SPINS = [0.5, 1, 1.5, 2, 3.5, 7, 20.5]
two_j = st.integers(min_value=1, max_value=60)


def maxabs(a):
    return float(np.max(np.abs(a)))


def test_system_validation():
    s = SpinSystem(2.5)
    assert (s.twoj, s.d, s.integer) == (5, 6, False)
    assert SpinSystem(3).integer
    np.testing.assert_array_equal(SpinSystem(1).m, [1, 0, -1])
    for bad in (0, -1, 0.3, np.inf):
        with pytest.raises(ValueError):
            SpinSystem(bad)


def test_spin_half_jz():
    ops = build_angular_momentum(SpinSystem(0.5))
    np.testing.assert_allclose(ops.Jz, np.diag([0.5, -0.5]))


@pytest.mark.parametrize("j", SPINS)
def test_algebra(j):
    Jx, Jy, Jz = build_angular_momentum(SpinSystem(j))
    for A in (Jx, Jy, Jz):
        assert maxabs(A - A.conj().T) < 1e-12
    assert maxabs(Jx @ Jy - Jy @ Jx - 1j * Jz) < 1e-10
    assert maxabs(Jy @ Jz - Jz @ Jy - 1j * Jx) < 1e-10
    assert maxabs(Jz @ Jx - Jx @ Jz - 1j * Jy) < 1e-10
    assert maxabs(Jx @ Jx + Jy @ Jy + Jz @ Jz - j * (j + 1) * np.eye(int(2 * j + 1))) < 1e-10


def test_casimir_seven_halves():
    Jx, Jy, Jz = build_angular_momentum(SpinSystem(3.5))
    assert maxabs(Jx @ Jx + Jy @ Jy + Jz @ Jz - 63 / 4 * np.eye(8)) < 1e-10


def test_operators_are_read_only():
    ops = build_angular_momentum(SpinSystem(2))
    with pytest.raises(ValueError):
        ops.Jx[0, 0] = 1.0


def test_rotation_closed_forms():
    s = SpinSystem(0.5)
    np.testing.assert_allclose(rotation_about_y(s, 0.0), np.eye(2), atol=1e-14)
    np.testing.assert_allclose(rotation_about_y(s, np.pi / 2), np.array([[1, -1], [1, 1]]) / np.sqrt(2), atol=1e-14)


@given(two_j)
@settings(max_examples=25, deadline=None)
def test_full_turn_sign(tj):
    s = SpinSystem(tj / 2)
    assert maxabs(rotation_about_y(s, 2 * np.pi) - (-1) ** tj * np.eye(s.d)) < 1e-10


@given(two_j, st.floats(-7, 7))
@settings(max_examples=25, deadline=None)
def test_rotation_matches_expm(tj, angle):
    s = SpinSystem(tj / 2)
    Jy = build_angular_momentum(s).Jy
    assert maxabs(rotation_about_y(s, angle) - scipy.linalg.expm(-1j * angle * Jy)) < 1e-9


def test_quadratic_z():
    s = SpinSystem(1)
    np.testing.assert_allclose(exp_quadratic_z(s, 0.0), np.eye(3))
    np.testing.assert_allclose(exp_quadratic_z(s, np.pi), np.diag(np.exp(-1j * np.pi * np.array([1, 0, 1]))), atol=1e-15)


@pytest.mark.parametrize("j", SPINS)
def test_quadratic_unitary(j):
    s = SpinSystem(j)
    for f in (exp_quadratic_z, exp_quadratic_x):
        M = f(s, 0.83)
        assert maxabs(M.conj().T @ M - np.eye(s.d)) < 1e-12


def test_quadratic_x_against_eigensolver():
    s = SpinSystem(1.5)
    Jx = build_angular_momentum(s).Jx
    w, V = np.linalg.eigh(Jx @ Jx)
    oracle = V @ np.diag(np.exp(-0.7j * w)) @ V.conj().T
    assert maxabs(exp_quadratic_x(s, 0.7) - oracle) < 1e-10
    np.testing.assert_allclose(exp_quadratic_x(s, 0.0), np.eye(4), atol=1e-14)


@pytest.mark.parametrize("j", SPINS)
def test_quadratic_x_commutes_with_jx(j):
    s = SpinSystem(j)
    Jx = build_angular_momentum(s).Jx
    M = exp_quadratic_x(s, 1.9)
    assert maxabs(M @ Jx - Jx @ M) < 1e-10


def test_coherent_poles():
    s = SpinSystem(3)
    north = coherent_state(s, SphericalPoint(0.0, 0.4))
    np.testing.assert_allclose(north, np.eye(7)[0], atol=1e-15)
    south = coherent_state(s, SphericalPoint(np.pi, 0.4))
    assert abs(abs(south[-1]) - 1) < 1e-12


def test_coherent_norm_large_j():
    psi = coherent_state(SpinSystem(76), SphericalPoint(2.25, 2.0))
    assert abs(np.linalg.norm(psi) - 1) < 1e-12


@given(two_j, st.floats(0, np.pi), st.floats(-np.pi, np.pi))
@settings(max_examples=40, deadline=None)
def test_coherent_matches_rotated_top_state(tj, theta, phi):
    # |theta, phi> equals exp(+i phi Jz) exp(-i theta Jy)|j, j> in this package's convention
    s = SpinSystem(tj / 2)
    Jz = np.diag(s.m)
    top = np.eye(s.d)[0]
    oracle = scipy.linalg.expm(1j * phi * Jz) @ rotation_about_y(s, theta) @ top
    psi = coherent_state(s, (theta, phi))
    assert abs(np.vdot(oracle, psi)) ** 2 > 1 - 1e-10
    assert abs(np.linalg.norm(psi) - 1) < 1e-12


@given(two_j, st.floats(0, np.pi), st.floats(-np.pi, np.pi))
@settings(max_examples=40, deadline=None)
def test_coherent_mean_spin_direction(tj, theta, phi):
    s = SpinSystem(tj / 2)
    Jx, Jy, Jz = build_angular_momentum(s)
    psi = coherent_state(s, (theta, phi))
    mean = [np.vdot(psi, A @ psi).real for A in (Jx, Jy, Jz)]
    # phi mirrored relative to exp(-i phi Jz)
    expect = s.j * np.array([np.sin(theta) * np.cos(phi), -np.sin(theta) * np.sin(phi), np.cos(theta)])
    np.testing.assert_allclose(mean, expect, atol=1e-9)


def test_spherical_point_wraps():
    p = SphericalPoint(1.0, 3 * np.pi / 2)
    assert -np.pi <= p.phi < np.pi and np.isclose(p.phi, -np.pi / 2)
