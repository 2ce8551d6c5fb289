"""Heisenberg spin chains in the one- and two-excitation sectors.

The open chain of ``n`` spins has Hamiltonian (hbar = 1)

    H = -sum_i J_i (X_i X_{i+1} + Y_i Y_{i+1} + gamma_z Z_i Z_{i+1}) - sum_i B_i Z_i

with Z|up> = +|up>.  It conserves the number of up spins, so one- and
two-excitation dynamics live in small sectors.  Register A is spins
``1..k`` and register B is spins ``n-k+1..n``; the excitation placed in A
is read out of B as an amplitude damping channel (one excitation) or a
T_{eta1,eta2} channel (two excitations).

Sites are 1-based throughout.  Sector-2 basis labels are pairs ``(j, l)``
with ``j > l``, ordered by ``j`` then ``l``, so the pairs inside A come
first.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from pathlib import Path

import numpy as np

from .linalg import hermitian_eigensystem
from .optimize import maximize_interval
from .qchan import ChannelParamsAD, ChannelParamsT, DensityMatrix

ZETA_CUTOFF = 1e-12


@dataclass(frozen=True)
class ChainSpec:
    n: int
    couplings: tuple
    fields: tuple
    gamma_z: float = 0.0
    k: int = 1

    def __post_init__(self):
        n, k = int(self.n), int(self.k)
        if n < 2:
            raise ValueError(f"a chain needs n >= 2 spins, got {self.n!r}")
        couplings = tuple(float(j) for j in self.couplings)
        fields = tuple(float(b) for b in self.fields)
        if len(couplings) != n - 1:
            raise ValueError(f"expected {n - 1} couplings, got {len(couplings)}")
        if any(j < 0.0 for j in couplings):
            raise ValueError("couplings must be non-negative")
        if len(fields) != n:
            raise ValueError(f"expected {n} fields, got {len(fields)}")
        if not (1 <= k and 2 * k <= n):
            raise ValueError(f"register size k={k} must satisfy 1 <= k <= n/2")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "couplings", couplings)
        object.__setattr__(self, "fields", fields)
        object.__setattr__(self, "gamma_z", float(self.gamma_z))

    @classmethod
    def uniform(cls, n: int, k: int = 1, coupling: float = 1.0, field: float = 0.0,
                gamma_z: float = 0.0) -> "ChainSpec":
        return cls(n, (coupling,) * (n - 1), (field,) * n, gamma_z, k)

    @property
    def j_ref(self) -> float:
        return max(self.couplings)

    @property
    def register_a(self) -> range:
        return range(1, self.k + 1)

    @property
    def register_b(self) -> range:
        return range(self.n - self.k + 1, self.n + 1)

    # -- JSON ------------------------------------------------------------

    _KEYS = {"n", "k", "gamma_z", "couplings", "fields"}

    @classmethod
    def from_dict(cls, doc: dict) -> "ChainSpec":
        if not isinstance(doc, dict):
            raise ValueError("chain spec must be a JSON object")
        unknown = set(doc) - cls._KEYS
        if unknown:
            raise ValueError(f"unknown chain spec keys: {sorted(unknown)}")
        for key in ("n", "k", "couplings"):
            if key not in doc:
                raise ValueError(f"chain spec is missing {key!r}")
        n = doc["n"]
        if not isinstance(n, int) or isinstance(n, bool):
            raise ValueError("'n' must be an integer")
        if not isinstance(doc["k"], int) or isinstance(doc["k"], bool):
            raise ValueError("'k' must be an integer")
        couplings = _table(doc["couplings"], n - 1, "couplings")
        fields = _table(doc.get("fields", {"uniform": 0.0}), n, "fields")
        return cls(n, couplings, fields, float(doc.get("gamma_z", 0.0)), doc["k"])

    @classmethod
    def from_json(cls, text: str) -> "ChainSpec":
        return cls.from_dict(json.loads(text))

    @classmethod
    def load(cls, path) -> "ChainSpec":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))

    def to_dict(self) -> dict:
        def table(values):
            if len(set(values)) == 1:
                return {"uniform": values[0]}
            return {"list": list(values)}

        return {"n": self.n, "k": self.k, "gamma_z": self.gamma_z,
                "couplings": table(self.couplings), "fields": table(self.fields)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _table(entry, length: int, name: str) -> tuple:
    if not isinstance(entry, dict) or len(entry) != 1:
        raise ValueError(f"{name!r} must be {{'uniform': x}} or {{'list': [...]}}")
    (kind, value), = entry.items()
    if kind == "uniform":
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise ValueError(f"{name!r} uniform value must be a number")
        return (float(value),) * length
    if kind == "list":
        if not isinstance(value, list) or len(value) != length:
            raise ValueError(f"{name!r} list must have {length} entries")
        return tuple(float(v) for v in value)
    raise ValueError(f"unknown {name!r} table kind {kind!r}")


# -- sector Hamiltonians --------------------------------------------------------

def sector_labels(n: int, sector: int) -> tuple:
    if sector == 1:
        return tuple((j,) for j in range(1, n + 1))
    if sector == 2:
        return tuple((j, l) for j in range(2, n + 1) for l in range(1, j))
    raise ValueError(f"sector must be 1 or 2, got {sector!r}")


def configuration_energy(spec: ChainSpec, up: frozenset) -> float:
    """Diagonal energy of a Z-basis configuration, relative to all spins down."""
    s = [1.0 if i in up else -1.0 for i in range(1, spec.n + 1)]
    e = 0.0
    for i, j in enumerate(spec.couplings):
        e -= j * spec.gamma_z * (s[i] * s[i + 1] - 1.0)
    for i, b in enumerate(spec.fields):
        e -= b * (s[i] + 1.0)
    return e


@dataclass(frozen=True)
class SectorHamiltonian:
    sector: int
    labels: tuple
    matrix: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.labels)

    @cached_property
    def index(self) -> dict:
        return {label: i for i, label in enumerate(self.labels)}

    @cached_property
    def eigensystem(self) -> tuple[np.ndarray, np.ndarray]:
        return hermitian_eigensystem(self.matrix)

    def propagate(self, vector, t: float) -> np.ndarray:
        """exp(-i H t) applied to an amplitude vector of the sector."""
        values, vectors = self.eigensystem
        return vectors @ (np.exp(-1j * values * t) * (vectors.conj().T @ np.asarray(vector, dtype=complex)))


@lru_cache(maxsize=64)
def build_sector_hamiltonian(spec: ChainSpec, sector: int) -> SectorHamiltonian:
    """Restriction of the chain Hamiltonian to the ``sector``-excitation subspace."""
    labels = sector_labels(spec.n, sector)
    index = {frozenset(label): i for i, label in enumerate(labels)}
    h = np.zeros((len(labels), len(labels)))
    for label, i in index.items():
        h[i, i] = configuration_energy(spec, label)
        for bond, coupling in enumerate(spec.couplings, start=1):
            a, b = bond, bond + 1
            if (a in label) != (b in label):
                moved = (label - {a, b}) | ({b} if a in label else {a})
                h[index[moved], i] = -2.0 * coupling
    h.setflags(write=False)
    return SectorHamiltonian(sector, labels, h)


def full_hamiltonian(spec: ChainSpec) -> np.ndarray:
    """Dense 2^n Hamiltonian in the Z basis; bit ``n - i`` of the index is spin i (1 = up).

    Reference builder for small chains.
    """
    n = spec.n
    dim = 2 ** n
    h = np.zeros((dim, dim))
    for state in range(dim):
        up = frozenset(i for i in range(1, n + 1) if state >> (n - i) & 1)
        h[state, state] = configuration_energy(spec, up)
        for bond, coupling in enumerate(spec.couplings, start=1):
            ba, bb = n - bond, n - bond - 1
            if (state >> ba & 1) != (state >> bb & 1):
                h[state ^ (1 << ba) ^ (1 << bb), state] = -2.0 * coupling
    return h


def configuration_index(n: int, up) -> int:
    """Index of a Z-basis configuration in the 2^n space used by ``full_hamiltonian``."""
    return sum(1 << (n - i) for i in up)


@dataclass(frozen=True)
class TransferAmplitudes:
    sector: int
    time: float
    labels: tuple
    matrix: np.ndarray = field(repr=False)

    def amplitude(self, to_label, from_label) -> complex:
        index = {label: i for i, label in enumerate(self.labels)}
        return complex(self.matrix[index[tuple(to_label)], index[tuple(from_label)]])


def transfer_amplitudes(h: SectorHamiltonian, t: float) -> TransferAmplitudes:
    """Matrix of <r| exp(-i H t) |s> over the sector basis."""
    values, vectors = h.eigensystem
    f = (vectors * np.exp(-1j * values * t)) @ vectors.conj().T
    return TransferAmplitudes(h.sector, float(t), h.labels, f)


# -- encodings -------------------------------------------------------------------

@dataclass(frozen=True)
class InputProfile:
    """Normalized superposition placed in register A.

    Sector 1: ``k`` coefficients c_j, j = 1..k.  Sector 2: ``k(k-1)/2``
    coefficients d_{j,l}, j > l, in ``sector_labels`` order.
    """

    sector: int
    coefficients: tuple

    def __post_init__(self):
        if self.sector not in (1, 2):
            raise ValueError(f"sector must be 1 or 2, got {self.sector!r}")
        c = tuple(complex(x) for x in self.coefficients)
        if not c:
            raise ValueError("input profile needs at least one coefficient")
        norm = sum(abs(x) ** 2 for x in c)
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"coefficients have squared norm {norm!r}, not 1")
        object.__setattr__(self, "coefficients", c)

    @classmethod
    def uniform(cls, sector: int, k: int) -> "InputProfile":
        size = k if sector == 1 else k * (k - 1) // 2
        if size == 0:
            raise ValueError(f"register of size {k} holds no {sector}-excitation states")
        return cls(sector, (1.0 / math.sqrt(size),) * size)

    @classmethod
    def normalized(cls, sector: int, coefficients) -> "InputProfile":
        c = np.asarray(coefficients, dtype=complex)
        return cls(sector, tuple(c / np.linalg.norm(c)))

    def labels(self, k: int) -> tuple:
        return sector_labels(k, self.sector)


def _initial_vector(spec: ChainSpec, profile: InputProfile, h: SectorHamiltonian) -> np.ndarray:
    labels = profile.labels(spec.k)
    if len(profile.coefficients) != len(labels):
        raise ValueError(
            f"profile has {len(profile.coefficients)} coefficients, register of size {spec.k} "
            f"needs {len(labels)}")
    vec = np.zeros(h.dim, dtype=complex)
    for label, c in zip(labels, profile.coefficients):
        vec[h.index[label]] = c
    return vec


def evolve(spec: ChainSpec, profile: InputProfile, t: float) -> tuple[SectorHamiltonian, np.ndarray]:
    """Sector amplitudes of the encoded excitation(s) at time ``t``."""
    h = build_sector_hamiltonian(spec, profile.sector)
    return h, h.propagate(_initial_vector(spec, profile, h), t)


# -- one excitation --------------------------------------------------------------

def _one_excitation(spec, profile, t):
    if profile.sector != 1:
        raise ValueError("one-excitation channel needs a sector-1 profile")
    h, amp = evolve(spec, profile, t)
    b_amp = np.array([amp[h.index[(j,)]] for j in spec.register_b])
    eta = float(np.sum(np.abs(b_amp) ** 2))
    return min(max(eta, 0.0), 1.0), b_amp


def channel_params_one_excitation(spec: ChainSpec, profile: InputProfile, t: float) -> ChannelParamsAD:
    """Efficiency of the amplitude damping channel from A to B at time ``t``."""
    return ChannelParamsAD(_one_excitation(spec, profile, t)[0])


def output_superposition_one(spec: ChainSpec, profile: InputProfile, t: float) -> np.ndarray:
    """Normalized coefficients of the received one-excitation state over the B sites.

    When nothing reaches B the first B site is returned as a placeholder.
    """
    eta, b_amp = _one_excitation(spec, profile, t)
    if eta <= 0.0:
        out = np.zeros(spec.k, dtype=complex)
        out[0] = 1.0
        return out
    return b_amp / math.sqrt(eta)


# -- register B states -----------------------------------------------------------

def register_labels(k: int) -> tuple:
    """Labels of register-B configurations with at most two up spins, as
    tuples of positions 1..k inside B."""
    return ((),) + sector_labels(k, 1) + sector_labels(k, 2)


def register_vector(k: int, amplitudes: dict) -> np.ndarray:
    """Vector on the 2^k register space from {positions-up: amplitude}.

    Position 1 of B (chain site n-k+1) is the most significant bit.
    """
    vec = np.zeros(2 ** k, dtype=complex)
    for up, a in amplitudes.items():
        vec[configuration_index(k, up)] += a
    return vec


@dataclass(frozen=True)
class ReducedState:
    """State of B in a logical basis, with that basis written on the 2^k register."""

    state: DensityMatrix
    basis: np.ndarray = field(repr=False)  # columns are 2^k register vectors

    def register_matrix(self) -> np.ndarray:
        return self.basis @ self.state.data @ self.basis.conj().T


def _logical_amplitudes(alpha: complex, beta: complex) -> tuple[complex, complex]:
    alpha, beta = complex(alpha), complex(beta)
    if abs(abs(alpha) ** 2 + abs(beta) ** 2 - 1.0) > 1e-12:
        raise ValueError("logical amplitudes must satisfy |alpha|^2 + |beta|^2 = 1")
    return alpha, beta


def _project(rho_register: np.ndarray, basis: np.ndarray) -> DensityMatrix:
    out = basis.conj().T @ rho_register @ basis
    return DensityMatrix(0.5 * (out + out.conj().T))


def reduced_state_one_excitation(spec: ChainSpec, profile: InputProfile, t: float,
                                 alpha: complex, beta: complex) -> ReducedState:
    """State of B for the input alpha|all down> + beta|phi_1>, in the basis
    {|all down>_B, |phi_1'>_B}."""
    alpha, beta = _logical_amplitudes(alpha, beta)
    h, amp = evolve(spec, profile, t)
    k, offset = spec.k, spec.n - spec.k
    inside = alpha * register_vector(k, {(): 1.0})
    inside = inside + beta * register_vector(k, {(j - offset,): amp[h.index[(j,)]] for j in spec.register_b})
    outside = sum(abs(amp[h.index[(j,)]]) ** 2 for j in range(1, offset + 1))
    down = register_vector(k, {(): 1.0})
    rho = np.outer(inside, inside.conj()) + abs(beta) ** 2 * outside * np.outer(down, down)
    phi = output_superposition_one(spec, profile, t)
    basis = np.column_stack([down, register_vector(k, {(i + 1,): c for i, c in enumerate(phi)})])
    return ReducedState(_project(rho, basis), basis)


# -- two excitations -------------------------------------------------------------

@dataclass(frozen=True)
class TwoExcitationTransfer:
    params: ChannelParamsT
    eta1: float
    eta2: float
    eta3: float
    phi_prime: np.ndarray = field(repr=False)     # over B pairs, sector_labels(k, 2) order
    sigma: np.ndarray = field(repr=False)         # k x k leaked state over B sites
    zeta_vectors: np.ndarray = field(repr=False)  # columns over B sites


def analyze_two_excitation(spec: ChainSpec, profile: InputProfile, t: float) -> TwoExcitationTransfer:
    if profile.sector != 2:
        raise ValueError("two-excitation channel needs a sector-2 profile")
    if spec.k < 2:
        raise ValueError("two-excitation encodings need a register of size k >= 2")
    h, amp = evolve(spec, profile, t)
    n, k = spec.n, spec.k
    offset = n - k
    pairs_b = sector_labels(k, 2)
    both_in = np.array([amp[h.index[(j + offset, l + offset)]] for j, l in pairs_b])
    eta1 = float(np.sum(np.abs(both_in) ** 2))
    eta2 = float(sum(abs(amp[h.index[(j, l)]]) ** 2
                     for j in range(2, offset + 1) for l in range(1, j)))
    split = np.array([[amp[h.index[(j, l)]] for l in range(1, offset + 1)] for j in spec.register_b])
    sigma_unnorm = split @ split.conj().T  # sum over outside l of |w_l><w_l|
    eta3 = float(np.real(np.trace(sigma_unnorm)))
    if eta1 > 0.0:
        phi_prime = both_in / math.sqrt(eta1)
    else:
        phi_prime = np.zeros(len(pairs_b), dtype=complex)
        phi_prime[0] = 1.0
    if eta3 > ZETA_CUTOFF:
        sigma = sigma_unnorm / eta3
        values, vectors = hermitian_eigensystem(sigma)
        keep = values > ZETA_CUTOFF
        zeta = values[keep] / np.sum(values[keep])
        zeta_vectors = vectors[:, keep]
    else:
        sigma = np.zeros((k, k), dtype=complex)
        sigma[0, 0] = 1.0
        zeta = np.array([1.0])
        zeta_vectors = np.eye(k, 1, dtype=complex)
    total = eta1 + eta2 + eta3
    eta1, eta2 = eta1 / total, eta2 / total
    params = ChannelParamsT(min(eta1, 1.0), min(eta2, 1.0 - min(eta1, 1.0)), tuple(zeta))
    return TwoExcitationTransfer(params, eta1, eta2, max(1.0 - eta1 - eta2, 0.0),
                                 phi_prime, sigma, zeta_vectors)


def channel_params_two_excitation(spec: ChainSpec, profile: InputProfile, t: float) -> ChannelParamsT:
    """Branch probabilities eta1 (both in B), eta2 (both outside B) and the
    leaked-state spectrum zeta at time ``t``."""
    return analyze_two_excitation(spec, profile, t).params


def reduced_state_two_excitation(spec: ChainSpec, profile: InputProfile, t: float,
                                 alpha: complex, beta: complex) -> ReducedState:
    """State of B for alpha|all down> + beta|phi_2>, in the basis
    {|all down>_B, |phi_2'>_B, leaked-state eigenvectors}."""
    alpha, beta = _logical_amplitudes(alpha, beta)
    h, amp = evolve(spec, profile, t)
    info = analyze_two_excitation(spec, profile, t)
    n, k = spec.n, spec.k
    offset = n - k
    down = register_vector(k, {(): 1.0})
    # outside all down: coherent with the all-down component
    inside = alpha * down + beta * register_vector(
        k, {(j, l): amp[h.index[(j + offset, l + offset)]] for j, l in sector_labels(k, 2)})
    rho = np.outer(inside, inside.conj())
    # one excitation outside at site l: incoherent mixture over l
    for l in range(1, offset + 1):
        w = beta * register_vector(k, {(j - offset,): amp[h.index[(j, l)]] for j in spec.register_b})
        rho += np.outer(w, w.conj())
    # both outside
    both_out = sum(abs(amp[h.index[(j, l)]]) ** 2 for j in range(2, offset + 1) for l in range(1, j))
    rho += abs(beta) ** 2 * both_out * np.outer(down, down)
    columns = [down, register_vector(k, dict(zip(sector_labels(k, 2), info.phi_prime)))]
    for i in range(info.zeta_vectors.shape[1]):
        columns.append(register_vector(k, {(j + 1,): c for j, c in enumerate(info.zeta_vectors[:, i])}))
    basis = np.column_stack(columns)
    return ReducedState(_project(rho, basis), basis)


# -- time scans ------------------------------------------------------------------

def transfer_efficiency(spec: ChainSpec, profile: InputProfile, t: float) -> float:
    """eta (one excitation) or eta1 (two excitations) at time ``t``."""
    if profile.sector == 1:
        return _one_excitation(spec, profile, t)[0]
    return analyze_two_excitation(spec, profile, t).eta1


def eta_max_over_time(spec: ChainSpec, profile: InputProfile, t_max: float, steps: int,
                      tol: float = 1e-10) -> tuple[float, float]:
    """Best transfer time in [0, t_max]: uniform scan, then golden-section refinement."""
    if t_max <= 0.0:
        raise ValueError(f"t_max must be positive, got {t_max!r}")
    if steps < 2:
        raise ValueError(f"need at least 2 scan points, got {steps!r}")
    t, eta, _ = maximize_interval(lambda s: transfer_efficiency(spec, profile, s),
                                  0.0, t_max, tol=tol, grid_points=steps)
    return t, eta
