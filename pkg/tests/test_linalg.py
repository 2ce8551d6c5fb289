import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from spincap.linalg import hermitian_eigensystem, hermitian_eigenvalues, jacobi_eigh


def random_hermitian(seed, dim):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return a + a.conj().T


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 12))
def test_jacobi_reconstructs(seed, dim):
    m = random_hermitian(seed, dim)
    w, v = jacobi_eigh(m)
    assert np.allclose(v.conj().T @ v, np.eye(dim), atol=1e-12)
    assert np.abs(v @ np.diag(w) @ v.conj().T - m).max() <= 1e-12 * max(1.0, np.abs(m).max())


@pytest.mark.parametrize("dim", [2, 5, 16, 64, 80])
def test_eigensystem_matches_lapack(dim):
    m = random_hermitian(dim, dim)
    w, v = hermitian_eigensystem(m)
    assert np.all(np.diff(w) <= 0)
    assert np.allclose(w, np.sort(np.linalg.eigvalsh(m))[::-1], atol=1e-11)
    assert np.allclose(m @ v, v * w, atol=1e-10)


def test_degenerate_and_diagonal():
    w = hermitian_eigenvalues(np.diag([3.0, 1.0, 3.0]))
    assert np.array_equal(w, [3.0, 3.0, 1.0])
    w, v = hermitian_eigensystem(np.eye(4))
    assert np.allclose(w, 1) and np.allclose(v @ v.conj().T, np.eye(4))


def test_rejects_non_hermitian():
    with pytest.raises(ValueError):
        hermitian_eigensystem(np.array([[0, 1], [0, 0]], dtype=float))
    with pytest.raises(ValueError):
        hermitian_eigensystem(np.ones((2, 3)))
