"""Qubit channel capacities of excitation-conserving spin chains."""

from .capacity import (
    CapacityResult,
    EncodingProfile,
    bosonic_ea_capacity,
    classical_capacity_c1_ad,
    classical_capacity_c1_lower_t,
    classical_capacity_interval_ad,
    coherent_information_ad,
    coherent_information_t,
    ea_capacity_ad,
    ea_capacity_t,
    ea_quantum_capacity_ad,
    ea_quantum_capacity_t,
    holevo_chi_ad,
    mutual_information_ad,
    quantum_capacity_ad,
    quantum_capacity_t,
)
from .chain import (
    ChainSpec,
    InputProfile,
    analyze_two_excitation,
    build_sector_hamiltonian,
    channel_params_one_excitation,
    channel_params_two_excitation,
    eta_max_over_time,
    reduced_state_one_excitation,
    reduced_state_two_excitation,
    transfer_amplitudes,
)
from .entropy import binary_entropy, bosonic_g, monotone_f
from .qchan import (
    ChannelParamsAD,
    ChannelParamsT,
    DensityMatrix,
    KrausChannel,
    QubitParams,
    amplitude_damping,
    apply,
    complementary,
    compose,
    degradability_check,
    dilation_ad,
    dilation_t,
    make_qubit_state,
    purify,
    t_channel,
    von_neumann_entropy,
)

__version__ = "0.1.0"
