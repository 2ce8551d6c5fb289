"""The twelve acceptance criteria, each under its runtime budget."""
import math
import time
from contextlib import contextmanager

import numpy as np
import pytest

from spincap import capacity as cap
from spincap import chain
from spincap import qchan as qc
from spincap.entropy import binary_entropy, bosonic_g, monotone_f

import oracles


@contextmanager
def budget(seconds):
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    assert elapsed < seconds, f"took {elapsed:.2f}s, budget {seconds}s"


def rng(seed=20050101):
    return np.random.default_rng(seed)


def random_qubit(r):
    p = r.uniform()
    g = r.uniform() * math.sqrt(p * (1 - p)) * np.exp(2j * math.pi * r.uniform())
    return p, g


def test_criterion_01_reference_values():
    with budget(1.0):
        assert abs(cap.quantum_capacity_ad(0.5).value) <= 1e-9
        assert abs(cap.ea_capacity_ad(0.5).value - 1.0) <= 1e-6
        assert abs(cap.classical_capacity_c1_ad(0.5).value - 0.4717) <= 5e-4
        assert abs(cap.quantum_capacity_ad(1.0).value - 1.0) <= 1e-9
        assert abs(cap.classical_capacity_c1_ad(1.0).value - 1.0) <= 1e-9
        assert abs(cap.ea_capacity_ad(1.0).value - 2.0) <= 1e-9


def test_criterion_02_non_cloning_region():
    with budget(1.0):
        for i in range(10):
            assert cap.quantum_capacity_ad(0.05 * i).value == 0.0
        grid = np.round(np.arange(0, 21) * 0.05, 12)
        for e1 in grid:
            for e2 in grid:
                if e2 >= e1 and e1 + e2 <= 1.0 + 1e-12:
                    assert cap.quantum_capacity_t(e1, min(e2, 1.0 - e1)).value == 0.0


def test_criterion_03_degradability():
    with budget(5.0):
        states = qc.probe_states(20)
        for eta in np.linspace(0.5, 1.0, 6):
            ok, dev = qc.degradability_check(qc.ChannelParamsAD(eta), states)
            assert ok and dev <= 1e-9
        lcg = qc.LCG(7)
        for i in range(20):
            e1 = lcg.uniform()
            e2 = lcg.uniform() * min(e1, 1 - e1)
            zeta = (1.0,) if i % 2 == 0 else (0.3, 0.7)
            ok, dev = qc.degradability_check(qc.ChannelParamsT(e1, e2, zeta))
            assert ok and dev <= 1e-9


def test_criterion_04_composition():
    r = rng()
    with budget(2.0):
        for _ in range(100):
            a, b = r.uniform(size=2)
            rho = qc.make_qubit_state(qc.QubitParams(*random_qubit(r)))
            lhs = qc.apply(qc.compose(qc.amplitude_damping(b), qc.amplitude_damping(a)), rho)
            assert np.abs(lhs.data - qc.apply(qc.amplitude_damping(a * b), rho).data).max() <= 1e-12
        for _ in range(100):
            e1, f1 = r.uniform(size=2)
            e2, f2 = r.uniform() * (1 - e1), r.uniform() * (1 - f1)
            rho = qc.embed(qc.make_qubit_state(qc.QubitParams(*random_qubit(r))), 3)
            lhs = qc.apply(qc.compose(qc.t_channel(qc.ChannelParamsT(f1, f2)),
                                      qc.t_channel(qc.ChannelParamsT(e1, e2))), rho)
            rhs = qc.apply(qc.t_channel(qc.ChannelParamsT(e1 * f1, e2 + e1 * f2)), rho)
            assert np.abs(lhs.data - rhs.data).max() <= 1e-12


def test_criterion_05_formula_vs_oracle():
    r = rng()
    with budget(10.0):
        for _ in range(100):
            eta = r.uniform()
            p, g = random_qubit(r)
            ref = oracles.coherent_information(oracles.ad_kraus(eta), p, g, 2)
            assert abs(cap.coherent_information_ad(eta, p, abs(g) ** 2) - ref) <= 1e-10
        for i in range(100):
            e1 = r.uniform()
            e2 = r.uniform() * (1 - e1)
            p, g = random_qubit(r)
            z = r.uniform(0.05, 0.95)
            zeta = (1.0,) if i % 2 == 0 else (z, 1 - z)
            ref = oracles.coherent_information(oracles.t_kraus(e1, e2, zeta), p, g, 2 + len(zeta))
            assert abs(cap.coherent_information_t(e1, e2, p, abs(g) ** 2) - ref) <= 1e-10


def test_criterion_06_encoding_achievability():
    with budget(2.0):
        for eta in (0.3, 0.5, 0.7, 0.9):
            c1 = cap.classical_capacity_c1_ad(eta)
            for d in (2, 3, 4, 5):
                chi = cap.holevo_chi_ad(eta, cap.EncodingProfile(d, c1.argmax_p).symbols)
                assert abs(chi - c1.value) <= 1e-10


def test_criterion_07_gamma_optimality():
    with budget(5.0):
        for eta in np.linspace(0.5, 1.0, 50):
            for p in np.linspace(0.0, 1.0, 50):
                base = cap.coherent_information_ad(eta, p, 0.0)
                for g2 in np.linspace(0.0, p * (1 - p), 11)[1:]:
                    assert cap.coherent_information_ad(eta, p, g2) <= base + 1e-12


def test_criterion_08_entropy_properties():
    with budget(2.0):
        # property 1: strictly decreasing in the distance from 1/2; a dyadic
        # grid keeps |x - 1/2| exact so mirrored points tie exactly
        x = np.arange(2 ** 14 + 1) / 2 ** 14
        h = binary_entropy(x)
        order = np.argsort(np.abs(x - 0.5), kind="stable")
        dist, hs = np.abs(x - 0.5)[order], h[order]
        farther = np.diff(dist) > 0
        assert np.all(np.diff(hs)[farther] < 0)
        # property 2: convexity of the concurrence form
        r = rng()
        z1, z2, lam = r.uniform(size=(3, 20000))

        def hz(z):
            return binary_entropy(0.5 * (1 + np.sqrt(1 - z * z)))

        assert np.all(hz(lam * z1 + (1 - lam) * z2) <= lam * hz(z1) + (1 - lam) * hz(z2) + 1e-12)
        # f_y(x) non-increasing
        for y in np.linspace(0.0, 1.0, 50):
            vals = [monotone_f(y, xv) for xv in np.linspace(0.0, 1.0 - y, 200)]
            assert np.all(np.diff(vals) <= 1e-12)
        g = bosonic_g(np.linspace(0.0, 20.0, 2001))
        assert np.all(np.diff(g) > 0) and np.all(np.diff(g, 2) <= 1e-12)


def test_criterion_09_population_ordering():
    with budget(2.0):
        for eta in np.round(np.arange(0.55, 0.951, 0.05), 12):
            pc1 = cap.classical_capacity_c1_ad(eta).argmax_p
            pq = cap.quantum_capacity_ad(eta).argmax_p
            pce = cap.ea_capacity_ad(eta).argmax_p
            assert pc1 <= pq + 1e-6 and pq <= pce + 1e-6
            assert all(0.0 <= v <= 1.0 for v in (pc1, pq, pce))
        curve = [cap.ea_capacity_ad(eta).argmax_p for eta in (0.9, 0.95, 0.99, 1.0)]
        assert np.all(np.diff(np.abs(np.array(curve) - 0.5)) < 0)
        assert abs(curve[-1] - 0.5) <= 1e-6


def test_criterion_10_bosonic_comparison():
    with budget(1.0):
        for eta in np.linspace(0.5, 1.0, 6):
            ce = cap.ea_capacity_ad(eta)
            p = ce.argmax_p
            bosonic = bosonic_g(p) + bosonic_g(eta * p) - bosonic_g((1 - eta) * p)
            assert bosonic - ce.value > 0.0


def _full_state_register(spec, profile, alpha, beta, t):
    n = spec.n
    psi = np.zeros(2 ** n, dtype=complex)
    psi[oracles.basis_index(n, ())] = alpha
    for label, c in zip(profile.labels(spec.k), profile.coefficients):
        psi[oracles.basis_index(n, label)] += beta * c
    h = oracles.brute_hamiltonian(n, spec.couplings, spec.fields, spec.gamma_z)
    return oracles.flip_labels(oracles.reduce_to_tail(oracles.evolve_full(h, psi, t), n, spec.k))


def test_criterion_11_spin_chain_reductions():
    r = rng()
    with budget(30.0):
        # (a) sector blocks of the brute-force Hamiltonian
        for n in range(2, 9):
            spec = chain.ChainSpec(n, tuple(r.uniform(0.2, 1.5, n - 1)), tuple(r.uniform(-0.5, 0.5, n)),
                                   float(r.uniform(-1, 1)), 1)
            full = oracles.brute_hamiltonian(n, spec.couplings, spec.fields, spec.gamma_z)
            e0 = full[-1, -1].real
            for sector in (1, 2):
                h = chain.build_sector_hamiltonian(spec, sector)
                idx = [oracles.basis_index(n, label) for label in h.labels]
                assert np.abs(full[np.ix_(idx, idx)] - e0 * np.eye(h.dim) - h.matrix).max() <= 1e-12
        # (b) two sites: eta(t) = sin^2(2Jt)
        spec = chain.ChainSpec.uniform(2, 1, coupling=1.0)
        prof = chain.InputProfile.uniform(1, 1)
        for t in np.linspace(0.0, 10.0, 201):
            eta = chain.channel_params_one_excitation(spec, prof, t).eta
            assert abs(eta - math.sin(2 * t) ** 2) <= 1e-9
        # (c) two-excitation reduced state vs full-state partial trace
        for n in (4, 6):
            spec = chain.ChainSpec(n, tuple(r.uniform(0.2, 1.5, n - 1)), tuple(r.uniform(-0.5, 0.5, n)),
                                   float(r.uniform(-1, 1)), 2)
            prof = chain.InputProfile.uniform(2, 2)
            for t in r.uniform(0.0, 10.0, 5):
                a = r.uniform()
                alpha, beta = math.sqrt(a), math.sqrt(1 - a) * np.exp(1j * r.uniform(0, 2 * math.pi))
                red = chain.reduced_state_two_excitation(spec, prof, t, alpha, beta)
                ref = _full_state_register(spec, prof, alpha, beta, t)
                assert np.abs(red.register_matrix() - ref).max() <= 1e-10
        # (d) branch probabilities
        for n in range(4, 11):
            spec = chain.ChainSpec(n, tuple(r.uniform(0.2, 1.5, n - 1)), tuple(r.uniform(-0.5, 0.5, n)),
                                   float(r.uniform(-1, 1)), int(r.integers(2, n // 2 + 1)))
            prof = chain.InputProfile.uniform(2, spec.k)
            for t in r.uniform(0.0, 30.0, 10):
                info = chain.analyze_two_excitation(spec, prof, t)
                assert abs(info.eta1 + info.eta2 + info.eta3 - 1.0) <= 1e-12


# sweep grid: eta1 in {0, 0.1, ..., 1}, eta2 over [0, 1 - eta1] in steps of 0.01
SWEEP_ETA1 = np.round(np.arange(0, 11) * 0.1, 12)


def test_criterion_12_t_channel_upper_bound():
    with budget(30.0):
        for e1 in SWEEP_ETA1:
            steps = int(round((1 - e1) / 0.01))
            for i in range(steps + 1):
                e2 = min(round(i * 0.01, 12), 1.0 - e1)
                q_ad = cap.quantum_capacity_ad(1 - e2).value
                ce_ad = cap.ea_capacity_ad(1 - e2).value
                assert cap.quantum_capacity_t(e1, e2).value <= q_ad + 1e-9
                assert cap.ea_capacity_t(e1, e2).value <= ce_ad + 1e-9
