"""Two-photon state emitted by the biexciton-exciton cascade.

The state depends on the exciton eigenstate weights (alpha, beta) and the
phase phi = S*tau/hbar accumulated while the system sits in the intermediate
exciton level. Combining the two decay paths gives the closed-form
amplitudes over (HH, HV, VH, VV), XX photon first:

    HH: (alpha^2 + e^{i phi} beta^2) / sqrt(2)
    HV: i alpha beta (1 - e^{i phi}) / sqrt(2)
    VH: -i alpha beta (1 - e^{i phi}) / sqrt(2)
    VV: (beta^2 + e^{i phi} alpha^2) / sqrt(2)
"""

from dataclasses import dataclass

import numpy as np

from .constants import HBAR_UEV_NS
from .finestructure import eigenstate_weights, splitting


@dataclass(frozen=True)
class PairState:
    """Normalized two-photon amplitudes at delay tau."""

    amplitudes: np.ndarray
    tau: float
    phase: float


def pair_amplitudes(alpha, beta, phase):
    """Amplitude 4-vector for given eigenstate weights and phase phi."""
    e = np.exp(1.0j * phase)
    ab = alpha * beta
    inv_sqrt2 = 1.0 / np.sqrt(2.0)
    return np.array([
        (alpha * alpha + e * beta * beta) * inv_sqrt2,
        1.0j * ab * (1.0 - e) * inv_sqrt2,
        -1.0j * ab * (1.0 - e) * inv_sqrt2,
        (beta * beta + e * alpha * alpha) * inv_sqrt2,
    ])


def pair_state(s_r, s_c, tau):
    """Emitted two-photon state for splitting components (s_r, s_c) at delay tau (ns)."""
    alpha, beta, _ = eigenstate_weights(s_r, s_c)
    phase = splitting(s_r, s_c) * tau / HBAR_UEV_NS
    return PairState(amplitudes=pair_amplitudes(alpha, beta, phase),
                     tau=tau, phase=phase)


def pure_density(psi):
    """Rank-1 density matrix |psi><psi| of a normalized PairState."""
    a = psi.amplitudes
    return np.outer(a, a.conj())
