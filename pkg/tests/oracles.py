"""Independent reference implementations used by the tests.

Nothing here imports spincap: Hamiltonians come from Kronecker products of
Pauli matrices, evolution from scipy's matrix exponential, entropies from
LAPACK eigenvalues.
"""
from __future__ import annotations

from functools import reduce

import numpy as np
from scipy.linalg import eigvalsh, expm

X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
I2 = np.eye(2, dtype=complex)


def site_operator(op, site: int, n: int) -> np.ndarray:
    """``op`` on chain site ``site`` (1-based, site 1 leftmost factor)."""
    return reduce(np.kron, [op if i == site else I2 for i in range(1, n + 1)])


def brute_hamiltonian(n, couplings, fields, gamma_z) -> np.ndarray:
    """-sum J (XX + YY + gamma_z ZZ) - sum B Z on the full 2^n space."""
    h = np.zeros((2 ** n, 2 ** n), dtype=complex)
    for i, j in enumerate(couplings, start=1):
        for op, w in ((X, 1.0), (Y, 1.0), (Z, gamma_z)):
            h -= j * w * site_operator(op, i, n) @ site_operator(op, i + 1, n)
    for i, b in enumerate(fields, start=1):
        h -= b * site_operator(Z, i, n)
    return h


def basis_index(n: int, up) -> int:
    # textbook Pauli Z: |0> is spin up (Z = +1); site 1 is the most significant bit
    return (2 ** n - 1) - sum(1 << (n - s) for s in up)


def flip_labels(m: np.ndarray) -> np.ndarray:
    """Re-index a matrix from "bit 0 = up" to "bit 1 = up" (bitwise complement)."""
    return m[::-1, ::-1]


def evolve_full(h: np.ndarray, psi: np.ndarray, t: float) -> np.ndarray:
    return expm(-1j * t * h) @ psi


def reduce_to_tail(psi: np.ndarray, n: int, k: int) -> np.ndarray:
    """Density matrix of the last ``k`` sites of the pure state ``psi``."""
    m = psi.reshape(2 ** (n - k), 2 ** k)
    return m.T @ m.conj()


def entropy_bits(rho) -> float:
    w = eigvalsh(np.asarray(rho))
    w = w[w > 1e-15]
    return float(-np.sum(w * np.log2(w)))


def h2(x: float) -> float:
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return float(-x * np.log2(x) - (1 - x) * np.log2(1 - x))


def ad_kraus(eta: float):
    return [np.array([[1, 0], [0, np.sqrt(eta)]], dtype=complex),
            np.array([[0, np.sqrt(1 - eta)], [0, 0]], dtype=complex)]


def t_kraus(eta1: float, eta2: float, zeta):
    r = len(zeta)
    d = 2 + r
    eta3 = 1.0 - eta1 - eta2
    a0 = np.eye(d, dtype=complex)
    a0[1, 1] = np.sqrt(eta1)
    a1 = np.zeros((d, d), dtype=complex)
    a1[0, 1] = np.sqrt(eta2)
    ops = [a0, a1]
    for i, z in enumerate(zeta):
        a = np.zeros((d, d), dtype=complex)
        a[2 + i, 1] = np.sqrt(eta3 * z)
        ops.append(a)
    return ops


def apply_kraus(ops, rho):
    return sum(a @ rho @ a.conj().T for a in ops)


def qubit_purification(p: float, gamma: complex) -> np.ndarray:
    """Pure state on qubit (x) ancilla whose first marginal is [[1-p, g*], [g, p]].

    Built from the square root R of rho: |psi> = sum_i (R|i>) (x) |i>.
    """
    rho = np.array([[1 - p, np.conj(gamma)], [gamma, p]], dtype=complex)
    w, v = np.linalg.eigh(rho)
    root = v @ np.diag(np.sqrt(np.clip(w, 0, None))) @ v.conj().T
    psi = sum(np.kron(root[:, i], np.eye(2)[i]) for i in range(2))
    return np.outer(psi, psi.conj())


def coherent_information(ops, p: float, gamma: complex, dim: int) -> float:
    """S(N(rho)) - S((N (x) id)(|psi><psi|)) for a qubit input embedded in ``dim`` levels."""
    joint = qubit_purification(p, gamma)
    # qubit (x) ancilla  ->  (dim levels) (x) ancilla
    iso = np.zeros((dim * 2, 4), dtype=complex)
    for a in range(2):
        for b in range(2):
            iso[a * 2 + b, a * 2 + b] = 1.0
    joint = iso @ joint @ iso.conj().T
    ext = [np.kron(a, np.eye(2)) for a in ops]
    out_joint = apply_kraus(ext, joint)
    marg = out_joint.reshape(dim, 2, dim, 2).trace(axis1=1, axis2=3)
    return entropy_bits(marg) - entropy_bits(out_joint)


def exchange_matrix(eta: float, p: float, gamma: complex) -> np.ndarray:
    """Joint output of D_eta on the purification, written out entry by entry.

    Basis |00>, |01>, |10>, |11> (system, ancilla) with the ancilla in the
    eigenbasis of the input, for real gamma = 0.
    """
    assert gamma == 0
    m = np.zeros((4, 4))
    s = np.sqrt(p * (1 - p))
    # |psi> = sqrt(1-p)|00> + sqrt(p)|11>; damping sends |11> to sqrt(eta)|11> + sqrt(1-eta)|01>
    m[0, 0] = 1 - p
    m[0, 3] = m[3, 0] = np.sqrt(eta) * s
    m[3, 3] = eta * p
    m[1, 1] = (1 - eta) * p
    return m
