"""Simulation of multi-photon interference through noisy linear-optical
meshes, with coherent averaging of redundant interferometers as an error
mitigation strategy, plus the naive distribution-averaging baseline, exact
total-variation distances, distance bounds, and Monte Carlo sweeps.
"""

from .cmatrix import (
    dagger,
    dft,
    direct_sum,
    eig_hermitian,
    haar_random,
    load_matrix,
    matmul,
    operator_norm,
    save_matrix,
    sub_matrix,
)
from .fock import (
    FockBasis,
    build_submatrix,
    enumerate_basis,
    permanent_naive,
    permanent_ryser,
    phi_matrix,
    transition_amplitude,
)
from .mesh import (
    BeamSplitter,
    Coupler,
    Mesh,
    NoiseModel,
    PhaseShifter,
    clements_decompose,
    mean_unitary_prediction,
    mesh_to_unitary,
    perturb,
    sample_noisy_unitary,
    uniform_depth_pad,
)
from .sampling import (
    Distribution,
    ZeroHeraldError,
    arkhipov_bound,
    default_input,
    herald_probability,
    heralded_distribution,
    heralded_tvd_bound,
    ideal_distribution,
    tvd,
    uniform_depth_success,
)
from .averaging import (
    AveragingNetwork,
    LCUSpec,
    build_global_unitary,
    decompose_into_unitaries,
    distribution_average,
    lcu_encoders,
    lcu_network,
    repeatability_witness,
    ua_distribution,
    ua_network,
    unitary_average,
)
from .experiments import (
    ConfigError,
    ExperimentConfig,
    RunRecord,
    repeatability_noise_study,
    run_repeatability,
    success_probability_grid,
    sweep_copies,
    sweep_noise,
    theta_offset_copy,
)

__version__ = "0.1.0"
