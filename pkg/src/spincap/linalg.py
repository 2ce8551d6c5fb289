"""Hermitian eigensolver for the small matrices this package works with."""
from __future__ import annotations

import math

import numpy as np

HERMITIAN_TOL = 1e-10
OFFDIAG_TOL = 1e-13
MAX_SWEEPS = 100
#: Above this dimension the cyclic Jacobi sweep is replaced by LAPACK.
JACOBI_MAX_DIM = 64


def _offdiag_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def jacobi_eigh(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi diagonalization of a complex Hermitian matrix.

    Returns unsorted real eigenvalues and the unitary whose columns are the
    matching eigenvectors.
    """
    a = np.array(m, dtype=complex)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = np.linalg.norm(a)
    if n < 2 or scale == 0.0:
        return np.real(np.diag(a)).copy(), v
    threshold = OFFDIAG_TOL * scale
    for _ in range(MAX_SWEEPS + 1):
        if _offdiag_norm(a) <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag <= 1e-300:
                    continue
                phase = apq / mag
                app = a[p, p].real
                aqq = a[q, q].real
                theta = 0.5 * math.atan2(2.0 * mag, app - aqq)
                c = math.cos(theta)
                s = math.sin(theta)
                # G acts on the (p, q) plane: columns (c, s e^{-i phi}) and (-s e^{i phi}, c)
                gpq = -s * phase
                gqp = s * phase.conjugate()
                col_p = a[:, p].copy()
                col_q = a[:, q]
                a[:, p] = c * col_p + gqp * col_q
                a[:, q] = gpq * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :]
                a[p, :] = c * row_p + gqp.conjugate() * row_q
                a[q, :] = gpq.conjugate() * row_p + c * row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                vp = v[:, p].copy()
                vq = v[:, q]
                v[:, p] = c * vp + gqp * vq
                v[:, q] = gpq * vp + c * vq
    else:
        raise np.linalg.LinAlgError("Jacobi sweeps did not converge")
    return np.real(np.diag(a)).copy(), v


def hermitian_eigensystem(m) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and eigenvectors (columns) of a Hermitian matrix.

    Matrices up to ``JACOBI_MAX_DIM`` use cyclic Jacobi rotations; larger ones
    (big two-excitation sectors) go through ``numpy.linalg.eigh``.
    """
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    scale = max(np.linalg.norm(m), 1.0)
    if np.linalg.norm(m - m.conj().T) > HERMITIAN_TOL * scale:
        raise ValueError("matrix is not Hermitian")
    herm = 0.5 * (m + m.conj().T)
    if m.shape[0] <= JACOBI_MAX_DIM:
        values, vectors = jacobi_eigh(herm)
    else:
        values, vectors = np.linalg.eigh(herm)
    order = np.argsort(-values, kind="stable")
    return values[order], vectors[:, order]


def hermitian_eigenvalues(m) -> np.ndarray:
    return hermitian_eigensystem(m)[0]
