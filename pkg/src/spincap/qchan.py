"""Density matrices, Kraus channels and their dilations.

The concrete channels are the qubit amplitude damping map ``D_eta`` and the
two-parameter map ``T_{eta1,eta2}`` produced by two-excitation spin-chain
encodings.  ``T`` acts on ``2 + r`` levels: the logical qubit ``|0>, |1>``
followed by the ``r`` eigenvectors of the leaked one-excitation state.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .linalg import hermitian_eigensystem

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10
TP_TOL = 1e-10
UNITARY_TOL = 1e-10


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, positive semidefinite, unit-trace matrix."""

    data: np.ndarray

    def __post_init__(self):
        a = np.array(self.data, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
            raise ValueError(f"density matrix must be square, got shape {a.shape}")
        if np.max(np.abs(a - a.conj().T)) > HERMITIAN_TOL:
            raise ValueError("density matrix is not Hermitian")
        tr = np.trace(a)
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValueError(f"density matrix trace {tr.real:.3g} != 1")
        if np.linalg.eigvalsh(0.5 * (a + a.conj().T))[0] < -PSD_TOL:
            raise ValueError("density matrix is not positive semidefinite")
        object.__setattr__(self, "data", _frozen(a))

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.data, dtype=dtype)


@dataclass(frozen=True)
class QubitParams:
    """Population ``p`` of ``|1>`` and coherence ``gamma = rho[1, 0]``."""

    p: float
    gamma: complex = 0.0

    def __post_init__(self):
        p = float(self.p)
        if not (-TRACE_TOL <= p <= 1.0 + TRACE_TOL):
            raise ValueError(f"population p={p!r} outside [0, 1]")
        p = min(max(p, 0.0), 1.0)
        gamma = complex(self.gamma)
        if abs(gamma) ** 2 > p * (1.0 - p) + 1e-12:
            raise ValueError(f"|gamma|^2={abs(gamma) ** 2:.3g} exceeds p(1-p)={p * (1 - p):.3g}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "gamma", gamma)


@dataclass(frozen=True)
class KrausChannel:
    """CPT map rho -> sum_k A_k rho A_k^dagger."""

    operators: tuple
    in_dim: int = field(init=False)
    out_dim: int = field(init=False)

    def __post_init__(self):
        ops = tuple(_frozen(op) for op in self.operators)
        if not ops:
            raise ValueError("a channel needs at least one Kraus operator")
        shape = ops[0].shape
        if any(op.shape != shape or op.ndim != 2 for op in ops):
            raise ValueError("Kraus operators must share one 2-D shape")
        total = sum(op.conj().T @ op for op in ops)
        if np.linalg.norm(total - np.eye(shape[1])) > TP_TOL:
            raise ValueError("Kraus operators are not trace preserving")
        object.__setattr__(self, "operators", ops)
        object.__setattr__(self, "out_dim", shape[0])
        object.__setattr__(self, "in_dim", shape[1])

    def __call__(self, rho: DensityMatrix) -> DensityMatrix:
        return apply(self, rho)


@dataclass(frozen=True)
class ChannelParamsAD:
    eta: float

    def __post_init__(self):
        eta = float(self.eta)
        if not (0.0 <= eta <= 1.0):
            raise ValueError(f"eta={eta!r} outside [0, 1]")
        object.__setattr__(self, "eta", eta)


@dataclass(frozen=True)
class ChannelParamsT:
    """``eta1`` faithful, ``eta2`` damped, ``eta3`` leaked into the state with
    spectrum ``zeta``."""

    eta1: float
    eta2: float
    zeta: tuple = (1.0,)

    def __post_init__(self):
        eta1, eta2 = float(self.eta1), float(self.eta2)
        if eta1 < 0.0 or eta2 < 0.0 or eta1 + eta2 > 1.0 + 1e-12:
            raise ValueError(f"need eta1, eta2 >= 0 and eta1 + eta2 <= 1, got {eta1!r}, {eta2!r}")
        zeta = tuple(float(z) for z in self.zeta)
        if not zeta or any(z <= 0.0 for z in zeta):
            raise ValueError("zeta must be a non-empty list of positive reals")
        if abs(sum(zeta) - 1.0) > 1e-12:
            raise ValueError(f"zeta sums to {sum(zeta)!r}, not 1")
        object.__setattr__(self, "eta1", eta1)
        object.__setattr__(self, "eta2", eta2)
        object.__setattr__(self, "zeta", zeta)

    @property
    def eta3(self) -> float:
        return max(1.0 - self.eta1 - self.eta2, 0.0)

    @property
    def dim(self) -> int:
        return 2 + len(self.zeta)


@dataclass(frozen=True)
class DilationUnitary:
    data: np.ndarray

    def __post_init__(self):
        u = np.array(self.data, dtype=complex)
        if u.ndim != 2 or u.shape[0] != u.shape[1]:
            raise ValueError("dilation must be a square matrix")
        if np.linalg.norm(u.conj().T @ u - np.eye(u.shape[0])) > UNITARY_TOL:
            raise ValueError("dilation is not unitary")
        object.__setattr__(self, "data", _frozen(u))

    @property
    def dim(self) -> int:
        return self.data.shape[0]


def _as_array(rho) -> np.ndarray:
    return rho.data if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)


def _as_ad(eta) -> ChannelParamsAD:
    return eta if isinstance(eta, ChannelParamsAD) else ChannelParamsAD(eta)


def make_qubit_state(params: QubitParams) -> DensityMatrix:
    """The qubit state [[1 - p, gamma*], [gamma, p]]."""
    p, g = params.p, params.gamma
    return DensityMatrix(np.array([[1.0 - p, g.conjugate()], [g, p]]))


def embed(rho: DensityMatrix, dim: int) -> DensityMatrix:
    """Pad ``rho`` with zeros so it lives on the first levels of a ``dim``-level space."""
    a = _as_array(rho)
    if a.shape[0] > dim:
        raise ValueError(f"cannot embed a {a.shape[0]}-level state into {dim} levels")
    out = np.zeros((dim, dim), dtype=complex)
    out[: a.shape[0], : a.shape[0]] = a
    return DensityMatrix(out)


def amplitude_damping(eta) -> KrausChannel:
    eta = _as_ad(eta).eta
    a0 = np.array([[1.0, 0.0], [0.0, math.sqrt(eta)]])
    a1 = np.array([[0.0, math.sqrt(1.0 - eta)], [0.0, 0.0]])
    return KrausChannel((a0, a1))


def t_channel(params: ChannelParamsT) -> KrausChannel:
    """Kraus form of T_{eta1,eta2} on ``2 + len(zeta)`` levels.

    Levels ``2..`` carry the leaked-state eigenvectors; the channel leaves
    them untouched, which keeps the map trace preserving on the whole space
    and lets two T maps with the same spectrum compose.
    """
    d = params.dim
    a0 = np.zeros((d, d))
    a0[0, 0] = 1.0
    a0[1, 1] = math.sqrt(params.eta1)
    for i in range(2, d):
        a0[i, i] = 1.0
    a1 = np.zeros((d, d))
    a1[0, 1] = math.sqrt(params.eta2)
    ops = [a0, a1]
    for i, z in enumerate(params.zeta):
        a = np.zeros((d, d))
        a[2 + i, 1] = math.sqrt(params.eta3 * z)
        ops.append(a)
    return KrausChannel(tuple(ops))


def apply(channel: KrausChannel, rho) -> DensityMatrix:
    a = _as_array(rho)
    if a.shape != (channel.in_dim, channel.in_dim):
        raise ValueError(f"state of shape {a.shape} does not fit channel input dim {channel.in_dim}")
    out = sum(op @ a @ op.conj().T for op in channel.operators)
    return DensityMatrix(0.5 * (out + out.conj().T))


def apply_extended(channel: KrausChannel, joint, anc_dim: int) -> DensityMatrix:
    """Apply ``channel (x) identity`` to a system-first joint state."""
    a = _as_array(joint)
    if a.shape != (channel.in_dim * anc_dim,) * 2:
        raise ValueError(
            f"joint state of shape {a.shape} does not match {channel.in_dim} x {anc_dim}")
    eye = np.eye(anc_dim)
    out = sum(np.kron(op, eye) @ a @ np.kron(op, eye).conj().T for op in channel.operators)
    return DensityMatrix(0.5 * (out + out.conj().T))


def purify(rho: DensityMatrix) -> DensityMatrix:
    """Spectral purification sum_i sqrt(lambda_i) |e_i> (x) |i> on ``dim x dim``."""
    values, vectors = hermitian_eigensystem(_as_array(rho))
    d = len(values)
    psi = np.zeros(d * d, dtype=complex)
    for i, lam in enumerate(values):
        psi += math.sqrt(max(lam, 0.0)) * np.kron(vectors[:, i], np.eye(d)[i])
    psi /= np.linalg.norm(psi)
    return DensityMatrix(np.outer(psi, psi.conj()))


def partial_trace(joint, dims: tuple[int, int], keep: str = "first") -> DensityMatrix:
    d1, d2 = dims
    a = _as_array(joint)
    if a.shape != (d1 * d2, d1 * d2):
        raise ValueError(f"joint state of shape {a.shape} does not factor as {d1} x {d2}")
    t = a.reshape(d1, d2, d1, d2)
    if keep == "first":
        out = np.einsum("ajbj->ab", t)
    elif keep == "second":
        out = np.einsum("jajb->ab", t)
    else:
        raise ValueError(f"keep must be 'first' or 'second', got {keep!r}")
    return DensityMatrix(out)


def von_neumann_entropy(rho) -> float:
    """-Tr rho log2 rho in bits."""
    values, _ = hermitian_eigensystem(_as_array(rho))
    if values[-1] < -PSD_TOL:
        raise ValueError(f"state has eigenvalue {values[-1]:.3g} below zero")
    total = 0.0
    for lam in values:
        if lam > 0.0:
            total -= lam * math.log2(lam)
    return total


# -- Stinespring dilations -------------------------------------------------

def dilation_ad(eta) -> DilationUnitary:
    """4x4 unitary on system (x) environment realizing D_eta."""
    eta = _as_ad(eta).eta
    s, c = math.sqrt(eta), math.sqrt(1.0 - eta)
    return DilationUnitary(np.array([
        [1.0, 0.0, 0.0, 0.0],
        [0.0, s, c, 0.0],
        [0.0, -c, s, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ]))


def dilation_t(params: ChannelParamsT) -> DilationUnitary:
    """Unitary on (3 levels) (x) (3 levels) realizing a rank-1 T_{eta1,eta2}.

    It is the identity except on the block spanned by |01>, |10> and
    |Phi_sigma> = |2>|2>, where it takes the 3x3 form below; |00> is fixed.
    """
    if len(params.zeta) != 1:
        raise NotImplementedError("dilation_t is only available for a rank-1 leaked state")
    e1, e2, e3 = params.eta1, params.eta2, params.eta3
    d = 3
    u = np.eye(d * d)
    if e1 < 1.0:
        s = math.sqrt(e1)
        block = np.array([
            [(1.0 + s - e2) / (1.0 + s), math.sqrt(e2), -math.sqrt(e2 * e3) / (1.0 + s)],
            [-math.sqrt(e2), s, -math.sqrt(e3)],
            [-math.sqrt(e2 * e3) / (1.0 + s), math.sqrt(e3), (e2 + e3 * s) / (1.0 - e1)],
        ])
        idx = [0 * d + 1, 1 * d + 0, 2 * d + 2]
        u[np.ix_(idx, idx)] = block
    return DilationUnitary(u)


def stinespring_output(v: DilationUnitary, rho, env_dim: int, keep: str = "system") -> DensityMatrix:
    """Tr_env (or Tr_sys when ``keep='environment'``) of V (rho (x) |0><0|) V^dagger."""
    a = _as_array(rho)
    d = a.shape[0]
    if d * env_dim != v.dim:
        raise ValueError(f"dilation of dim {v.dim} does not fit {d} x {env_dim}")
    env0 = np.zeros((env_dim, env_dim))
    env0[0, 0] = 1.0
    out = v.data @ np.kron(a, env0) @ v.data.conj().T
    return partial_trace(out, (d, env_dim), "first" if keep == "system" else "second")


# -- channel algebra -------------------------------------------------------

def complementary(channel: KrausChannel) -> KrausChannel:
    """Channel onto the environment: rho -> sum_{k,l} Tr(A_k rho A_l^dagger) |k><l|.

    Environment basis vector ``|k>`` belongs to the k-th Kraus operator.
    """
    ops = np.array(channel.operators)  # (K, out, in)
    k = ops.shape[0]
    comp = [ops[:, j, :].reshape(k, channel.in_dim) for j in range(channel.out_dim)]
    return KrausChannel(tuple(comp))


def compose(outer: KrausChannel, inner: KrausChannel) -> KrausChannel:
    """outer after inner."""
    if inner.out_dim != outer.in_dim:
        raise ValueError(f"cannot compose: inner outputs {inner.out_dim} levels, outer takes {outer.in_dim}")
    return KrausChannel(tuple(b @ a for b in outer.operators for a in inner.operators))


def identity_channel(dim: int) -> KrausChannel:
    return KrausChannel((np.eye(dim),))


def extend(channel: KrausChannel, dim: int) -> KrausChannel:
    """Act as ``channel`` on the leading levels and as the identity on the rest."""
    if dim < channel.in_dim or channel.in_dim != channel.out_dim:
        raise ValueError("can only extend square channels to a larger space")
    extra = dim - channel.in_dim
    ops = []
    for i, op in enumerate(channel.operators):
        big = np.zeros((dim, dim), dtype=complex)
        big[: op.shape[0], : op.shape[1]] = op
        if i == 0:
            big[channel.in_dim:, channel.in_dim:] = np.eye(extra)
        ops.append(big)
    return KrausChannel(tuple(ops))


def swap_relabel(env_state, mapping: Sequence[int] | None = None, dim: int | None = None) -> DensityMatrix:
    """Carry an environment state onto the system space.

    Environment basis vector ``|k>`` goes to system basis vector
    ``|mapping[k]>`` (identity labelling by default).
    """
    a = _as_array(env_state)
    k = a.shape[0]
    mapping = list(range(k)) if mapping is None else list(mapping)
    dim = max(mapping) + 1 if dim is None else dim
    s = np.zeros((dim, k))
    for src, dst in enumerate(mapping):
        s[dst, src] = 1.0
    return DensityMatrix(s @ a @ s.T)


# -- degradability ---------------------------------------------------------

class LCG:
    """32-bit linear congruential stream (Numerical Recipes constants).

    x_{n+1} = (1664525 x_n + 1013904223) mod 2^32, output x / 2^32.
    """

    A = 1664525
    C = 1013904223
    M = 2 ** 32

    def __init__(self, seed: int = 20050101):
        self.state = seed % self.M

    def uniform(self) -> float:
        self.state = (self.A * self.state + self.C) % self.M
        return self.state / self.M


def probe_states(count: int = 20, seed: int = 20050101) -> list[DensityMatrix]:
    """Deterministic qubit states: p uniform, |gamma| a uniform fraction of
    its bound, uniform phase."""
    rng = LCG(seed)
    states = []
    for _ in range(count):
        p = rng.uniform()
        mag = rng.uniform() * math.sqrt(p * (1.0 - p))
        phase = 2.0 * math.pi * rng.uniform()
        states.append(make_qubit_state(QubitParams(p, mag * complex(math.cos(phase), math.sin(phase)))))
    return states


DEGRADABLE_TOL = 1e-9


def degradability_check(params, states: Sequence[DensityMatrix] | None = None) -> tuple[bool, float]:
    """Check that the complementary output equals a CPT post-processing of the
    direct output.

    D_eta is degraded by D_{(1-eta)/eta} when eta >= 1/2; T_{eta1,eta2} by
    D_{eta2/eta1} (acting on the qubit levels) when eta1 >= eta2.  Outside
    those regions the candidate map is not CPT and ``(False, nan)`` is
    returned without a numeric check.
    """
    states = probe_states() if states is None else states
    if isinstance(params, ChannelParamsT):
        if params.eta1 < params.eta2:
            return False, math.nan
        channel = t_channel(params)
        ratio = params.eta2 / params.eta1 if params.eta1 > 0.0 else 1.0
        degrader = extend(amplitude_damping(min(ratio, 1.0)), params.dim)
        dim = params.dim
    else:
        params = _as_ad(params)
        if params.eta < 0.5:
            return False, math.nan
        channel = amplitude_damping(params.eta)
        degrader = amplitude_damping((1.0 - params.eta) / params.eta)
        dim = 2
    comp = complementary(channel)
    worst = 0.0
    for rho in states:
        rho = embed(rho, dim)
        env = swap_relabel(apply(comp, rho), dim=dim)
        sim = apply(degrader, apply(channel, rho))
        worst = max(worst, float(np.linalg.norm(env.data - sim.data)))
    return worst <= DEGRADABLE_TOL, worst
