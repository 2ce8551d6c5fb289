"""Closed-form capacities of the amplitude damping channel D_eta and of T_{eta1,eta2}.

Every capacity is a maximization over the input population ``p`` with the
input coherence set to zero, which is optimal for these channels.  Values are
in bits (or qubits) per channel use.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .entropy import binary_entropy, bosonic_g
from .optimize import maximize_unit_interval
from .qchan import QubitParams

CERTIFY_TOL = 1e-10


@dataclass(frozen=True)
class CapacityResult:
    value: float
    argmax_p: float
    evaluations: int = 0

    def __post_init__(self):
        value = float(self.value)
        if value < -1e-12:
            raise ValueError(f"negative capacity {value!r}")
        p = float(self.argmax_p)
        if not (0.0 <= p <= 1.0):
            raise ValueError(f"argmax_p={p!r} outside [0, 1]")
        object.__setattr__(self, "value", max(value, 0.0))
        object.__setattr__(self, "argmax_p", p)


def _maximize(integrand) -> CapacityResult:
    p, value, evals = maximize_unit_interval(integrand, vectorized=True)
    return CapacityResult(value, p, evals)


def _check_eta(eta: float) -> float:
    eta = float(eta)
    if not (0.0 <= eta <= 1.0):
        raise ValueError(f"eta={eta!r} outside [0, 1]")
    return eta


def _check_t(eta1: float, eta2: float) -> tuple[float, float, float]:
    eta1, eta2 = float(eta1), float(eta2)
    if eta1 < 0.0 or eta2 < 0.0 or eta1 + eta2 > 1.0 + 1e-12:
        raise ValueError(f"need eta1, eta2 >= 0 and eta1 + eta2 <= 1, got {eta1!r}, {eta2!r}")
    return eta1, eta2, max(1.0 - eta1 - eta2, 0.0)


def _check_input(p: float, gamma_sq: float) -> tuple[float, float]:
    p, gamma_sq = float(p), float(gamma_sq)
    if not (0.0 <= p <= 1.0):
        raise ValueError(f"p={p!r} outside [0, 1]")
    if gamma_sq < 0.0 or gamma_sq > p * (1.0 - p) + 1e-12:
        raise ValueError(f"|gamma|^2={gamma_sq!r} outside [0, p(1-p)]")
    return p, min(gamma_sq, p * (1.0 - p))


def _radical_entropy(u):
    """H2((1 + sqrt(u)) / 2) for u in [0, 1]."""
    return binary_entropy(0.5 * (1.0 + np.sqrt(np.clip(u, 0.0, 1.0))))


def output_eigenvalue(eta: float, p: float, gamma_sq: float) -> float:
    """Larger eigenvalue of D_eta applied to the qubit state (p, gamma)."""
    return 0.5 * (1.0 + math.sqrt(max((1.0 - 2.0 * eta * p) ** 2 + 4.0 * eta * gamma_sq, 0.0)))


# -- amplitude damping --------------------------------------------------------

def coherent_information_ad(eta: float, p: float, gamma_sq: float) -> float:
    """Output entropy minus exchange entropy of D_eta for input (p, |gamma|^2)."""
    eta = _check_eta(eta)
    p, gamma_sq = _check_input(p, gamma_sq)
    return float(binary_entropy(output_eigenvalue(eta, p, gamma_sq))
                 - binary_entropy(output_eigenvalue(1.0 - eta, p, gamma_sq)))


def mutual_information_ad(eta: float, p: float, gamma_sq: float) -> float:
    """Quantum mutual information of D_eta: coherent information plus input entropy."""
    p, gamma_sq = _check_input(p, gamma_sq)
    return coherent_information_ad(eta, p, gamma_sq) + float(
        _radical_entropy((1.0 - 2.0 * p) ** 2 + 4.0 * gamma_sq))


def _q_ad_integrand(eta):
    return lambda p: binary_entropy(eta * p) - binary_entropy((1.0 - eta) * p)


def quantum_capacity_ad(eta: float) -> CapacityResult:
    """Q(D_eta); zero below eta = 1/2 by the no-cloning argument."""
    eta = _check_eta(eta)
    if eta < 0.5:
        return CapacityResult(0.0, 0.0, 0)
    return _maximize(_q_ad_integrand(eta))


def ea_capacity_ad(eta: float) -> CapacityResult:
    """Entanglement-assisted classical capacity C_E(D_eta)."""
    eta = _check_eta(eta)
    q = _q_ad_integrand(eta)
    return _maximize(lambda p: binary_entropy(p) + q(p))


def ea_quantum_capacity_ad(eta: float) -> CapacityResult:
    """Q_E = C_E / 2 (teleportation plus superdense coding)."""
    ce = ea_capacity_ad(eta)
    return CapacityResult(ce.value / 2.0, ce.argmax_p, ce.evaluations)


def _c1_ad_integrand(eta):
    return lambda p: binary_entropy(eta * p) - _radical_entropy(1.0 - 4.0 * eta * (1.0 - eta) * p * p)


@dataclass(frozen=True)
class EncodingProfile:
    """``d`` equiprobable states of population ``p`` and maximal coherence,
    with phases spread uniformly on the circle so their average is diagonal."""

    d: int
    p: float

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 2:
            raise ValueError(f"need an integer d >= 2, got {self.d!r}")
        if not (0.0 <= self.p <= 1.0):
            raise ValueError(f"p={self.p!r} outside [0, 1]")

    @property
    def symbols(self) -> list[tuple[float, float, complex]]:
        mag = math.sqrt((1.0 - self.p) * self.p)
        return [(1.0 / self.d, self.p, cmath.exp(2j * math.pi * k / self.d) * mag)
                for k in range(1, self.d + 1)]


def _validate_ensemble(ensemble) -> list[tuple[float, QubitParams]]:
    items = []
    for xi, p, gamma in ensemble:
        xi = float(xi)
        if xi < 0.0:
            raise ValueError(f"negative ensemble weight {xi!r}")
        items.append((xi, QubitParams(p, gamma)))
    if not items or abs(sum(xi for xi, _ in items) - 1.0) > 1e-12:
        raise ValueError("ensemble weights must sum to 1")
    return items


def holevo_chi_ad(eta: float, ensemble: Sequence[tuple[float, float, complex]]) -> float:
    """Holevo information of an ensemble of qubit states (xi_k, p_k, gamma_k)
    sent through D_eta."""
    eta = _check_eta(eta)
    items = _validate_ensemble(ensemble)
    p = sum(xi * q.p for xi, q in items)
    gamma = sum(xi * q.gamma for xi, q in items)
    chi = float(binary_entropy(output_eigenvalue(eta, min(p, 1.0), abs(gamma) ** 2)))
    for xi, q in items:
        chi -= xi * float(binary_entropy(output_eigenvalue(eta, q.p, abs(q.gamma) ** 2)))
    return chi


def output_entropy_bounds(eta: float, ensemble) -> tuple[float, float, float]:
    """The averaged output entropy of an ensemble and its two lower bounds.

    Returns ``(actual, coherence_maximized, population_averaged)``: the
    ensemble average of the output entropies, the same average with every
    ``|gamma_k|^2`` raised to ``p_k(1 - p_k)``, and the entropy of that
    expression evaluated at the mean population.  They are non-increasing in
    that order.
    """
    eta = _check_eta(eta)
    items = _validate_ensemble(ensemble)
    actual = sum(xi * float(binary_entropy(output_eigenvalue(eta, q.p, abs(q.gamma) ** 2)))
                 for xi, q in items)
    collapsed = sum(xi * float(_radical_entropy(1.0 - 4.0 * eta * (1.0 - eta) * q.p ** 2))
                    for xi, q in items)
    p = sum(xi * q.p for xi, q in items)
    averaged = float(_radical_entropy(1.0 - 4.0 * eta * (1.0 - eta) * p ** 2))
    return actual, collapsed, averaged


def classical_capacity_c1_ad(eta: float) -> CapacityResult:
    """Product-state classical capacity C_1(D_eta).

    The maximizing population is checked to be achieved by the phase
    encodings with d = 2..5 symbols.
    """
    eta = _check_eta(eta)
    result = _maximize(_c1_ad_integrand(eta))
    for d in range(2, 6):
        chi = holevo_chi_ad(eta, EncodingProfile(d, result.argmax_p).symbols)
        if abs(chi - result.value) > CERTIFY_TOL:
            raise ArithmeticError(
                f"encoding with d={d} reaches {chi!r}, not the bound {result.value!r}")
    return result


def classical_capacity_interval_ad(eta: float) -> tuple[float, float]:
    """Bracket [C_1, min(1, C_E)] for the full classical capacity."""
    return classical_capacity_c1_ad(eta).value, min(1.0, ea_capacity_ad(eta).value)


def bosonic_ea_capacity(eta: float, p: float) -> float:
    """C_E of the lossy bosonic channel with mean input photon number ``p``."""
    eta = _check_eta(eta)
    if p < 0.0:
        raise ValueError(f"p={p!r} must be >= 0")
    return float(bosonic_g(p) + bosonic_g(eta * p) - bosonic_g((1.0 - eta) * p))


# -- T_{eta1,eta2} -------------------------------------------------------------

def _branch_entropy_difference(eta1, eta2, eta3, p):
    """(1 - eta3 p) [H2((1-(1-eta2)p)/(1-eta3 p)) - H2((1-(1-eta1)p)/(1-eta3 p))]."""
    p = np.asarray(p, dtype=float)
    q = 1.0 - eta3 * p
    safe = np.where(q > 0.0, q, 1.0)
    val = q * (binary_entropy(np.clip((1.0 - (1.0 - eta2) * p) / safe, 0.0, 1.0))
               - binary_entropy(np.clip((1.0 - (1.0 - eta1) * p) / safe, 0.0, 1.0)))
    val = np.where(q > 0.0, val, 0.0)
    return float(val) if val.ndim == 0 else val


def coherent_information_t(eta1: float, eta2: float, p: float, gamma_sq: float) -> float:
    """Coherent information of T_{eta1,eta2} for input (p, |gamma|^2).

    The leaked part of the output and of the environment carry the same
    spectrum, so the result does not depend on it.
    """
    eta1, eta2, eta3 = _check_t(eta1, eta2)
    p, gamma_sq = _check_input(p, gamma_sq)
    q = 1.0 - eta3 * p
    if q <= 0.0:
        return 0.0

    def normalized_top(a, b):
        # top eigenvalue of the qubit block divided by its trace q
        return 0.5 * (1.0 + math.sqrt(max((1.0 - 2.0 * a * p / q) ** 2 + 4.0 * b * gamma_sq / q ** 2, 0.0)))

    return q * float(binary_entropy(normalized_top(eta1, eta1)) - binary_entropy(normalized_top(eta2, eta2)))


def quantum_capacity_t(eta1: float, eta2: float) -> CapacityResult:
    """Q(T_{eta1,eta2}); zero when eta1 <= eta2."""
    eta1, eta2, eta3 = _check_t(eta1, eta2)
    if eta1 <= eta2:
        return CapacityResult(0.0, 0.0, 0)
    return _maximize(lambda p: _branch_entropy_difference(eta1, eta2, eta3, p))


def ea_capacity_t(eta1: float, eta2: float) -> CapacityResult:
    eta1, eta2, eta3 = _check_t(eta1, eta2)
    return _maximize(lambda p: binary_entropy(p) + _branch_entropy_difference(eta1, eta2, eta3, p))


def ea_quantum_capacity_t(eta1: float, eta2: float) -> CapacityResult:
    ce = ea_capacity_t(eta1, eta2)
    return CapacityResult(ce.value / 2.0, ce.argmax_p, ce.evaluations)


def c1_lower_t_integrand(eta1: float, eta2: float, p):
    """Holevo information of the phase encoding at population ``p`` through T."""
    eta1, eta2, eta3 = _check_t(eta1, eta2)
    p = np.asarray(p, dtype=float)
    q = 1.0 - eta3 * p
    safe = np.where(q > 0.0, q, 1.0)
    val = q * (binary_entropy(np.clip((1.0 - (1.0 - eta2) * p) / safe, 0.0, 1.0))
               - _radical_entropy(1.0 - 4.0 * eta1 * eta2 * p * p / safe ** 2))
    val = np.where(q > 0.0, val, 0.0)
    return float(val) if val.ndim == 0 else val


def classical_capacity_c1_lower_t(eta1: float, eta2: float) -> CapacityResult:
    """Lower bound on C_1(T_{eta1,eta2}) from the phase encoding."""
    _check_t(eta1, eta2)
    return _maximize(lambda p: c1_lower_t_integrand(eta1, eta2, p))
