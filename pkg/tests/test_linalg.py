import math

import numpy as np
import pytest
from scipy.linalg import eigh

from ioncavity import linalg
from ioncavity.errors import DimensionMismatch, NoConvergence, NonHermitianInput
from ioncavity.linalg import hermitian_eigensystem, hermitian_eigvals, hermitian_expm, is_hermitian

from conftest import random_hermitian


def _bisect_roots(m, count):
    """Roots of det(M - x I) by scanning for sign changes and bisecting."""
    bound = np.linalg.norm(m)
    xs = np.linspace(-bound - 1.0, bound + 1.0, 4001)
    eye = np.eye(m.shape[0])

    def char(x):
        return np.linalg.det(m - x * eye).real

    values = np.array([char(x) for x in xs])
    roots = []
    for i in np.nonzero(np.sign(values[:-1]) != np.sign(values[1:]))[0]:
        lo, hi = xs[i], xs[i + 1]
        f_lo = values[i]
        for _ in range(100):
            mid = 0.5 * (lo + hi)
            f_mid = char(mid)
            if np.sign(f_mid) == np.sign(f_lo):
                lo, f_lo = mid, f_mid
            else:
                hi = mid
        roots.append(0.5 * (lo + hi))
    assert len(roots) == count
    return np.array(roots)


def test_identity_has_unit_eigenvalues():
    eig = hermitian_eigensystem(np.eye(2))
    np.testing.assert_allclose(eig.values, [1.0, 1.0], atol=1e-15)
    np.testing.assert_allclose(eig.vectors.conj().T @ eig.vectors, np.eye(2), atol=1e-15)


def test_pauli_x():
    eig = hermitian_eigensystem(np.array([[0, 1], [1, 0]]))
    np.testing.assert_allclose(eig.values, [-1.0, 1.0], atol=1e-14)


def test_model_hamiltonian_spectrum():
    omega, two_a = math.sqrt(15.0), 2.0
    h = np.array(
        [[0, omega, 0, 0], [omega, 0, two_a, 0], [0, two_a, 0, omega], [0, 0, omega, 0]],
        dtype=complex,
    )
    np.testing.assert_allclose(hermitian_eigvals(h), [-5.0, -3.0, 3.0, 5.0], atol=1e-10)


def test_random_4x4_matches_characteristic_polynomial(rng):
    m = random_hermitian(rng, 4)
    roots = _bisect_roots(m, 4)
    np.testing.assert_allclose(hermitian_eigvals(m), np.sort(roots), atol=1e-8)


@pytest.mark.parametrize("n", [3, 8, 16])
def test_eigensystem_properties(rng, n):
    m = random_hermitian(rng, n)
    eig = hermitian_eigensystem(m)
    scale = np.linalg.norm(m)

    assert np.all(np.diff(eig.values) >= 0)
    np.testing.assert_allclose(eig.vectors.conj().T @ eig.vectors, np.eye(n), atol=1e-12)
    assert np.linalg.norm(eig.reconstruct() - m) <= 1e-12 * scale
    for k in range(n):
        residual = m @ eig.vectors[:, k] - eig.values[k] * eig.vectors[:, k]
        assert np.linalg.norm(residual) <= 1e-10 * scale
    assert abs(eig.values.sum() - np.trace(m).real) <= 1e-12 * scale


def test_agrees_with_lapack(rng):
    m = random_hermitian(rng, 12)
    np.testing.assert_allclose(hermitian_eigvals(m), eigh(m, eigvals_only=True), atol=1e-10)


def test_degenerate_spectrum(rng):
    u, _ = np.linalg.qr(rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5)))
    m = (u * np.array([1.0, 1.0, 1.0, -2.0, 3.0])) @ u.conj().T
    eig = hermitian_eigensystem(m)
    np.testing.assert_allclose(eig.values, [-2.0, 1.0, 1.0, 1.0, 3.0], atol=1e-12)
    np.testing.assert_allclose(eig.vectors.conj().T @ eig.vectors, np.eye(5), atol=1e-12)


def test_zero_matrix():
    eig = hermitian_eigensystem(np.zeros((3, 3)))
    np.testing.assert_array_equal(eig.values, np.zeros(3))


def test_non_hermitian_rejected():
    with pytest.raises(NonHermitianInput):
        hermitian_eigensystem(np.array([[0, 1], [0, 0]]))


def test_non_square_rejected():
    with pytest.raises(DimensionMismatch):
        hermitian_eigvals(np.zeros((2, 3)))


def test_no_convergence(monkeypatch):
    monkeypatch.setattr(linalg, "MAX_SWEEPS", 0)
    with pytest.raises(NoConvergence):
        hermitian_eigensystem(np.array([[1.0, 0.5], [0.5, -1.0]]))


def _with_subnormal_couplings():
    """One ordinary coupling plus two subnormal ones, as heavy dephasing leaves behind."""
    upper = np.zeros((4, 4), dtype=complex)
    upper[1, 2] = 0.05
    upper[0, 3] = 2.5e-323j
    upper[0, 1] = 3e-323j
    return np.diag([0.1875, 0.2, 0.25, 0.3625]) + upper + upper.conj().T


def test_subnormal_off_diagonals_are_finite():
    m = _with_subnormal_couplings()
    values = hermitian_eigvals(m)
    assert np.isfinite(values).all()
    np.testing.assert_allclose(values, np.linalg.eigvalsh(m), atol=1e-14)
    eig = hermitian_eigensystem(m)
    np.testing.assert_allclose(eig.reconstruct(), m, atol=1e-14)
    np.testing.assert_allclose(eig.vectors.conj().T @ eig.vectors, np.eye(4), atol=1e-13)


@pytest.mark.parametrize("coupling", [5e-324, 1e-310, 1e-300, 1e-200])
def test_tiny_coupling_on_degenerate_diagonal(coupling):
    m = np.array([[0.25, coupling * 1j], [-coupling * 1j, 0.25]])
    values = hermitian_eigvals(m)
    assert np.isfinite(values).all()
    np.testing.assert_allclose(values, [0.25, 0.25], atol=1e-15)


def test_non_finite_rotation_raises(monkeypatch):
    def broken(a, p, q):
        nan = np.full(p.shape, np.nan + 0j)
        return nan, nan, nan, nan

    monkeypatch.setattr(linalg, "_rotation", broken)
    with pytest.raises(NoConvergence):
        hermitian_eigvals(np.array([[1.0, 0.5], [0.5, -1.0]]))


def test_is_hermitian():
    assert is_hermitian(np.array([[1, 2j], [-2j, 3]]))
    assert not is_hermitian(np.array([[1, 2j], [2j, 3]]))


def test_expm_of_zero_is_identity():
    np.testing.assert_allclose(hermitian_expm(np.zeros((4, 4)), 1.7), np.eye(4), atol=1e-15)


def test_expm_half_turn():
    u = hermitian_expm(np.diag([1.0, -1.0]), math.pi)
    np.testing.assert_allclose(u, -np.eye(2), atol=1e-12)


def test_expm_matches_taylor_series(rng):
    m = random_hermitian(rng, 6)
    scale = 0.5 / np.linalg.norm(m, 2)
    x = 1j * scale * m
    series = np.eye(6, dtype=complex)
    term = np.eye(6, dtype=complex)
    for k in range(1, 21):
        term = term @ x / k
        series = series + term
    u = hermitian_expm(m, scale)
    np.testing.assert_allclose(u, series, atol=1e-10)
    np.testing.assert_allclose(u @ u.conj().T, np.eye(6), atol=1e-12)
