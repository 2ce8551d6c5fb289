"""Property suite behind ``spincap verify``.

Each check returns the largest deviation it observed; a check passes when
that deviation is within its tolerance.  For inequalities the deviation is
the largest violation (zero when the inequality holds everywhere).
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import capacity as cap
from . import chain
from . import qchan as qc
from .entropy import binary_entropy, bosonic_g, monotone_f

SEED = 20050101


@dataclass(frozen=True)
class Check:
    name: str
    tolerance: float
    run: Callable[[], float]


@dataclass(frozen=True)
class CheckResult:
    name: str
    deviation: float
    tolerance: float
    passed: bool
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name:<48s} max_dev={self.deviation:.3e}  tol={self.tolerance:.1e}"


def _rng():
    return np.random.default_rng(SEED)


def _random_qubit(rng) -> qc.DensityMatrix:
    p = rng.uniform()
    g = rng.uniform() * math.sqrt(p * (1 - p)) * np.exp(2j * math.pi * rng.uniform())
    return qc.make_qubit_state(qc.QubitParams(p, g))


def _random_state(rng, dim: int) -> qc.DensityMatrix:
    x = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = x @ x.conj().T
    return qc.DensityMatrix(rho / np.trace(rho))


def _oracle_coherent_information(channel, rho) -> float:
    out = qc.apply(channel, rho)
    joint = qc.apply_extended(channel, qc.purify(rho), rho.dim)
    return qc.von_neumann_entropy(out) - qc.von_neumann_entropy(joint)


# -- entropy ---------------------------------------------------------------

def _h2_symmetry():
    x = np.linspace(0.0, 1.0, 10001)
    return float(np.max(np.abs(binary_entropy(x) - binary_entropy(1.0 - x))))


def _h2_distance_order():
    # on [0, 1/2] distance from 1/2 shrinks as x grows, so H2 must strictly rise;
    # the deviation counts grid steps where it does not
    h = binary_entropy(np.linspace(0.0, 0.5, 5001))
    return float(np.count_nonzero(np.diff(h) <= 0.0))


def _h2_concurrence_convexity():
    rng = _rng()
    z1, z2, lam = rng.uniform(size=(3, 20000))

    def h(z):
        return binary_entropy(0.5 * (1.0 + np.sqrt(1.0 - z * z)))

    gap = h(lam * z1 + (1 - lam) * z2) - (lam * h(z1) + (1 - lam) * h(z2))
    return float(max(np.max(gap), 0.0))


def _monotone_f():
    worst = 0.0
    for y in np.linspace(0.0, 1.0, 50):
        vals = [monotone_f(y, x) for x in np.linspace(0.0, 1.0 - y, 200)]
        worst = max(worst, float(np.max(np.diff(vals), initial=0.0)))
    return worst


def _bosonic_shape():
    x = np.linspace(0.0, 20.0, 4001)
    g = bosonic_g(x)
    return float(max(-np.min(np.diff(g)), np.max(np.diff(g, 2)), 0.0))


# -- channels --------------------------------------------------------------

def _stinespring():
    rng = _rng()
    worst = 0.0
    for _ in range(20):
        eta = rng.uniform()
        rho = _random_qubit(rng)
        worst = max(worst, np.abs(qc.stinespring_output(qc.dilation_ad(eta), rho, 2).data
                                  - qc.apply(qc.amplitude_damping(eta), rho).data).max())
        e1 = rng.uniform()
        e2 = rng.uniform() * (1 - e1)
        p = qc.ChannelParamsT(e1, e2)
        rho3 = _random_state(rng, 3)
        worst = max(worst, np.abs(qc.stinespring_output(qc.dilation_t(p), rho3, 3).data
                                  - qc.apply(qc.t_channel(p), rho3).data).max())
    return float(worst)


def _composition():
    rng = _rng()
    worst = 0.0
    for _ in range(50):
        a, b = rng.uniform(size=2)
        rho = _random_qubit(rng)
        lhs = qc.apply(qc.compose(qc.amplitude_damping(b), qc.amplitude_damping(a)), rho)
        worst = max(worst, np.abs(lhs.data - qc.apply(qc.amplitude_damping(a * b), rho).data).max())
        e1, f1 = rng.uniform(size=2)
        e2, f2 = rng.uniform() * (1 - e1), rng.uniform() * (1 - f1)
        inner = qc.t_channel(qc.ChannelParamsT(e1, e2))
        outer = qc.t_channel(qc.ChannelParamsT(f1, f2))
        both = qc.t_channel(qc.ChannelParamsT(e1 * f1, e2 + e1 * f2))
        r3 = qc.embed(rho, 3)
        worst = max(worst, np.abs(qc.apply(qc.compose(outer, inner), r3).data - qc.apply(both, r3).data).max())
    return float(worst)


def _complementary_swap():
    rng = _rng()
    worst = 0.0
    for eta in np.linspace(0.0, 1.0, 21):
        comp = qc.complementary(qc.amplitude_damping(eta))
        for _ in range(5):
            rho = _random_qubit(rng)
            env = qc.swap_relabel(qc.apply(comp, rho))
            worst = max(worst, np.abs(env.data - qc.apply(qc.amplitude_damping(1 - eta), rho).data).max())
    return float(worst)


def _damped_state_closed_form():
    rng = _rng()
    worst = 0.0
    for _ in range(50):
        eta, p = rng.uniform(size=2)
        g = rng.uniform() * math.sqrt(p * (1 - p)) * np.exp(2j * math.pi * rng.uniform())
        out = qc.apply(qc.amplitude_damping(eta), qc.make_qubit_state(qc.QubitParams(p, g))).data
        expect = np.array([[1 - eta * p, math.sqrt(eta) * np.conj(g)], [math.sqrt(eta) * g, eta * p]])
        worst = max(worst, np.abs(out - expect).max())
    return float(worst)


def _eigenvalue_closed_forms():
    rng = _rng()
    worst = 0.0
    for _ in range(30):
        eta, p = rng.uniform(size=2)
        g2 = rng.uniform() * p * (1 - p)
        rho = qc.make_qubit_state(qc.QubitParams(p, math.sqrt(g2)))
        lam = cap.output_eigenvalue(eta, p, g2)
        vals = qc.hermitian_eigensystem(qc.apply(qc.amplitude_damping(eta), rho).data)[0]
        worst = max(worst, abs(vals[0] - lam), abs(vals[1] - (1 - lam)))
        joint = qc.apply_extended(qc.amplitude_damping(eta), qc.purify(rho), 2)
        vals = qc.hermitian_eigensystem(joint.data)[0]
        big = cap.output_eigenvalue(1 - eta, p, g2)
        worst = max(worst, abs(vals[0] - big), abs(vals[1] - (1 - big)), abs(vals[2]), abs(vals[3]))
    return float(worst)


def _purify_roundtrip():
    rng = _rng()
    worst = 0.0
    for d in (2, 3, 4):
        for _ in range(10):
            rho = _random_state(rng, d)
            back = qc.partial_trace(qc.purify(rho), (d, d), "first")
            worst = max(worst, np.abs(back.data - rho.data).max())
    return float(worst)


def _degradability():
    worst = 0.0
    for eta in np.linspace(0.5, 1.0, 6):
        ok, dev = qc.degradability_check(qc.ChannelParamsAD(eta))
        worst = max(worst, dev if ok else math.inf)
    rng = _rng()
    for _ in range(20):
        e1 = rng.uniform()
        e2 = rng.uniform() * min(e1, 1 - e1)
        ok, dev = qc.degradability_check(qc.ChannelParamsT(e1, e2))
        worst = max(worst, dev if ok else math.inf)
    return worst


# -- capacities ------------------------------------------------------------

def _gamma_optimality():
    worst = -math.inf
    for eta in np.linspace(0.5, 1.0, 11):
        for p in np.linspace(0.0, 1.0, 21):
            base_j = cap.coherent_information_ad(eta, p, 0.0)
            base_i = cap.mutual_information_ad(eta, p, 0.0)
            for g2 in np.linspace(0.0, p * (1 - p), 6)[1:]:
                worst = max(worst, cap.coherent_information_ad(eta, p, g2) - base_j,
                            cap.mutual_information_ad(eta, p, g2) - base_i)
    return max(worst, 0.0)


def _formula_vs_oracle():
    rng = _rng()
    worst = 0.0
    for _ in range(20):
        eta, p = rng.uniform(size=2)
        g = rng.uniform() * math.sqrt(p * (1 - p)) * np.exp(2j * math.pi * rng.uniform())
        rho = qc.make_qubit_state(qc.QubitParams(p, g))
        worst = max(worst, abs(cap.coherent_information_ad(eta, p, abs(g) ** 2)
                               - _oracle_coherent_information(qc.amplitude_damping(eta), rho)))
        e1 = rng.uniform()
        e2 = rng.uniform() * (1 - e1)
        z = rng.uniform(0.1, 0.9)
        for zeta in ((1.0,), (z, 1 - z)):
            params = qc.ChannelParamsT(e1, e2, zeta)
            oracle = _oracle_coherent_information(qc.t_channel(params), qc.embed(rho, params.dim))
            worst = max(worst, abs(cap.coherent_information_t(e1, e2, p, abs(g) ** 2) - oracle))
    return float(worst)


def _q_monotone():
    values = [cap.quantum_capacity_ad(eta).value for eta in np.linspace(0.0, 1.0, 51)]
    return float(max(0.0, -np.min(np.diff(values))))


def _capacity_ordering():
    worst = 0.0
    for eta in np.linspace(0.0, 1.0, 21):
        q = cap.quantum_capacity_ad(eta).value
        ce = cap.ea_capacity_ad(eta).value
        c1 = cap.classical_capacity_c1_ad(eta).value
        worst = max(worst, q - ce, c1 - ce, ce - 2.0, c1 - 1.0)
    return worst


def _argmax_ordering():
    worst = 0.0
    for eta in np.linspace(0.55, 0.95, 9):
        pc1 = cap.classical_capacity_c1_ad(eta).argmax_p
        pq = cap.quantum_capacity_ad(eta).argmax_p
        pce = cap.ea_capacity_ad(eta).argmax_p
        worst = max(worst, pc1 - pq, pq - pce)
    return worst


def _encoding_achievability():
    worst = 0.0
    for eta in (0.3, 0.5, 0.7, 0.9):
        c1 = cap.classical_capacity_c1_ad(eta)
        for d in range(2, 6):
            worst = max(worst, abs(cap.holevo_chi_ad(eta, cap.EncodingProfile(d, c1.argmax_p).symbols) - c1.value))
    return worst


def _holevo_chain():
    rng = _rng()
    worst = 0.0
    for _ in range(200):
        m = int(rng.integers(1, 6))
        xi = rng.dirichlet(np.ones(m))
        ps = rng.uniform(size=m)
        gs = rng.uniform(size=m) * np.sqrt(ps * (1 - ps)) * np.exp(2j * np.pi * rng.uniform(size=m))
        actual, collapsed, averaged = cap.output_entropy_bounds(rng.uniform(), list(zip(xi, ps, gs)))
        worst = max(worst, collapsed - actual, averaged - collapsed)
    return worst


def _t_spectrum_independence():
    rng = _rng()
    worst = 0.0
    for _ in range(20):
        e1 = rng.uniform()
        e2 = rng.uniform() * (1 - e1)
        p = rng.uniform()
        g = rng.uniform() * math.sqrt(p * (1 - p))
        rho = qc.make_qubit_state(qc.QubitParams(p, g))
        values = []
        for zeta in ((1.0,), (0.5, 0.5), (0.7, 0.2, 0.1)):
            params = qc.ChannelParamsT(e1, e2, zeta)
            values.append(_oracle_coherent_information(qc.t_channel(params), qc.embed(rho, params.dim)))
        worst = max(worst, max(values) - min(values))
    return worst


def _qe_half_ce():
    return max(abs(cap.ea_quantum_capacity_ad(eta).value - cap.ea_capacity_ad(eta).value / 2)
               for eta in np.linspace(0.0, 1.0, 11))


def _c1_regression():
    return abs(cap.classical_capacity_c1_ad(0.5).value - 0.4717)


def _bosonic_exceeds_qubit():
    worst = -math.inf
    for eta in np.linspace(0.5, 1.0, 6):
        ce = cap.ea_capacity_ad(eta)
        worst = max(worst, ce.value - cap.bosonic_ea_capacity(eta, ce.argmax_p))
    # strict: the margin must be positive
    return 0.0 if worst < 0.0 else worst + 1.0


# -- spin chain -------------------------------------------------------------

def _random_chain(rng, n, k):
    return chain.ChainSpec(n, tuple(rng.uniform(0.2, 1.5, n - 1)), tuple(rng.uniform(-0.5, 0.5, n)),
                           float(rng.uniform(-1, 1)), k)


def _sector_projection():
    rng = _rng()
    worst = 0.0
    for n in range(2, 9):
        spec = _random_chain(rng, n, 1)
        full = chain.full_hamiltonian(spec)
        for sector in (1, 2):
            if sector == 2 and n < 2:
                continue
            h = chain.build_sector_hamiltonian(spec, sector)
            idx = [chain.configuration_index(n, label) for label in h.labels]
            worst = max(worst, np.abs(full[np.ix_(idx, idx)] - h.matrix).max())
    return float(worst)


def _unitarity_and_bookkeeping():
    rng = _rng()
    worst = 0.0
    for n in (4, 6, 8):
        spec = _random_chain(rng, n, 2)
        for sector in (1, 2):
            h = chain.build_sector_hamiltonian(spec, sector)
            for t in rng.uniform(0, 10, 3):
                f = chain.transfer_amplitudes(h, t).matrix
                worst = max(worst, np.linalg.norm(f @ f.conj().T - np.eye(h.dim)))
        for t in rng.uniform(0, 10, 3):
            info = chain.analyze_two_excitation(spec, chain.InputProfile.uniform(2, 2), t)
            worst = max(worst, abs(info.eta1 + info.eta2 + info.eta3 - 1.0))
            eta = chain.channel_params_one_excitation(spec, chain.InputProfile.uniform(1, 2), t).eta
            worst = max(worst, -eta, eta - 1.0)
    return float(worst)


def _channel_consistency():
    rng = _rng()
    worst = 0.0
    for n in (4, 5, 6):
        spec = _random_chain(rng, n, 2)
        for _ in range(3):
            t = rng.uniform(0, 8)
            a = rng.uniform()
            alpha, beta = math.sqrt(a), math.sqrt(1 - a) * np.exp(1j * rng.uniform(0, 6))
            psi = np.array([alpha, beta])
            rho_in = qc.DensityMatrix(np.outer(psi, psi.conj()))
            one = chain.InputProfile.normalized(1, rng.normal(size=2) + 1j * rng.normal(size=2))
            red = chain.reduced_state_one_excitation(spec, one, t, alpha, beta)
            ad = qc.apply(qc.amplitude_damping(chain.channel_params_one_excitation(spec, one, t)), rho_in)
            worst = max(worst, np.abs(red.state.data - ad.data).max())
            two = chain.InputProfile.uniform(2, 2)
            red = chain.reduced_state_two_excitation(spec, two, t, alpha, beta)
            params = chain.channel_params_two_excitation(spec, two, t)
            tout = qc.apply(qc.t_channel(params), qc.embed(rho_in, params.dim))
            worst = max(worst, np.abs(red.state.data - tout.data).max())
    return float(worst)


def _sigma_support():
    rng = _rng()
    worst = 0.0
    for n in (4, 6, 7):
        spec = _random_chain(rng, n, 3 if n >= 6 else 2)
        prof = chain.InputProfile.uniform(2, spec.k)
        red = chain.reduced_state_two_excitation(spec, prof, rng.uniform(0, 6), 0.6, 0.8)
        gram = red.basis.conj().T @ red.basis
        worst = max(worst, np.abs(gram - np.eye(gram.shape[0])).max())
    return float(worst)


def _mirror_symmetry():
    worst = 0.0
    for n in (3, 5, 8):
        spec = chain.ChainSpec.uniform(n, 1, coupling=0.9, gamma_z=0.3)
        f = chain.transfer_amplitudes(chain.build_sector_hamiltonian(spec, 1), 2.7).matrix
        worst = max(worst, np.abs(f - f[::-1, ::-1]).max())
    return float(worst)


CHECKS = [
    Check("entropy: H2 symmetry", 1e-15, _h2_symmetry),
    Check("entropy: H2 decreasing away from 1/2", 0.0, _h2_distance_order),
    Check("entropy: H2 convex in concurrence", 1e-12, _h2_concurrence_convexity),
    Check("entropy: f_y(x) non-increasing", 1e-12, _monotone_f),
    Check("entropy: g increasing and concave", 1e-12, _bosonic_shape),
    Check("qchan: Stinespring dilations reproduce channels", 1e-10, _stinespring),
    Check("qchan: composition semigroups (AD, T)", 1e-12, _composition),
    Check("qchan: complementary of D_eta is D_(1-eta)", 1e-12, _complementary_swap),
    Check("qchan: damped state closed form", 1e-14, _damped_state_closed_form),
    Check("qchan: eigenvalue closed forms", 1e-12, _eigenvalue_closed_forms),
    Check("qchan: purification round trip", 1e-10, _purify_roundtrip),
    Check("qchan: degradability (AD, T)", 1e-9, _degradability),
    Check("capacity: gamma = 0 optimal (J and I)", 1e-12, _gamma_optimality),
    Check("capacity: closed forms match oracle", 1e-10, _formula_vs_oracle),
    Check("capacity: Q(eta) non-decreasing", 1e-12, _q_monotone),
    Check("capacity: Q, C1 <= C_E <= 2, C1 <= 1", 1e-12, _capacity_ordering),
    Check("capacity: p*(C1) <= p*(Q) <= p*(C_E)", 1e-6, _argmax_ordering),
    Check("capacity: phase encodings achieve C1", 1e-10, _encoding_achievability),
    Check("capacity: Holevo entropy bound chain", 1e-12, _holevo_chain),
    Check("capacity: T independent of leaked spectrum", 1e-10, _t_spectrum_independence),
    Check("capacity: Q_E = C_E / 2", 0.0, _qe_half_ce),
    Check("capacity: C1(0.5) = 0.4717 regression", 5e-4, _c1_regression),
    Check("capacity: bosonic C_E exceeds qubit C_E", 0.0, _bosonic_exceeds_qubit),
    Check("chain: sectors match 2^n Hamiltonian", 1e-12, _sector_projection),
    Check("chain: unitarity and probability bookkeeping", 1e-10, _unitarity_and_bookkeeping),
    Check("chain: reduced states match channel action", 1e-10, _channel_consistency),
    Check("chain: logical basis orthonormal", 1e-10, _sigma_support),
    Check("chain: mirror symmetry of uniform chains", 1e-10, _mirror_symmetry),
]


def run_checks(tol_scale: float = 1.0, checks=None) -> list[CheckResult]:
    results = []
    for check in CHECKS if checks is None else checks:
        start = time.perf_counter()
        try:
            dev = float(check.run())
        except Exception:  # a crashing check is a failing check
            dev = math.inf
        tol = check.tolerance * tol_scale
        results.append(CheckResult(check.name, dev, tol, dev <= tol, time.perf_counter() - start))
    return results


def report(results: list[CheckResult]) -> str:
    lines = [r.line() for r in results]
    failed = sum(not r.passed for r in results)
    lines.append(f"{len(results) - failed}/{len(results)} checks passed")
    return "\n".join(lines) + "\n"
