"""Simulator and fitting tool for polarization-entangled photon pairs from a
quantum dot with a nuclear-field-perturbed exciton fine structure."""

from ._kernels import BACKEND as kernel_backend
from .cascade import CascadeParams, Populations, populations_after_x, \
    populations_after_xx, steady_state
from .config import Config, ConfigError, load_reference_config, \
    parse_config, write_config
from .emission import CorrelationSet, EmissionParams, FidelityTrace, \
    convolve_correlations, convolve_irf, default_tau_grid, \
    degree_of_correlation, fidelity_trace, g2_traces, \
    nuclear_averaged_density, pair_density_unnormalized, scenario
from .fitting import FitResult, FitSpec, fit, synth_histogram
from .finestructure import FineStructure, NuclearFieldParams, \
    eigenstate_weights, field_to_circular_splitting, hamiltonian, splitting, \
    splitting_pdf
from .pairstate import PairState, pair_state, pure_density
from .polarization import BELL_PHI_PLUS, MIXED_STATE, basis_vectors, \
    fidelity_to_bell, normalize, project

__version__ = "0.1.0"
