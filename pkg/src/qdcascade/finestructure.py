"""Exciton fine structure under a fluctuating normal nuclear field.

The two optically active exciton levels are split by S = sqrt(S_r^2 + S_c^2),
where S_r is the intrinsic rectilinear component and S_c the circular
component induced by the normal magnetic field. The eigenstates are
elliptically polarized with H/V weights (alpha, beta).

All energies are in ueV, magnetic fields in T.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class FineStructure:
    """Splitting components and derived eigenstate weights."""

    s_r: float
    s_c: float
    s: float
    alpha: float
    beta: float
    degenerate: bool = False

    @classmethod
    def from_components(cls, s_r, s_c):
        s = splitting(s_r, s_c)
        alpha, beta, degenerate = eigenstate_weights(s_r, s_c)
        return cls(s_r=s_r, s_c=s_c, s=s, alpha=alpha, beta=beta,
                   degenerate=degenerate)


@dataclass(frozen=True)
class NuclearFieldParams:
    """Gaussian statistics of the circular splitting component.

    sigma is the standard deviation of s_c (ueV); zeeman_slope converts a
    normal magnetic field to s_c (ueV/T).
    """

    sigma: float
    zeeman_slope: float | None = None

    def __post_init__(self):
        if self.sigma < 0.0:
            raise ValueError(f"sigma must be >= 0, got {self.sigma}")


def hamiltonian(s_r, s_c):
    """2x2 exciton Hamiltonian in the {X_H, X_V} basis.

    (1/2) * [[-s_r, i s_c], [-i s_c, s_r]]; eigenvalues are +-S/2.
    """
    return 0.5 * np.array([[-s_r, 1.0j * s_c], [-1.0j * s_c, s_r]], dtype=complex)


def splitting(s_r, s_c):
    """Total fine-structure splitting S = sqrt(s_r^2 + s_c^2)."""
    return float(np.hypot(s_r, s_c))


def eigenstate_weights(s_r, s_c):
    """H/V weights (alpha, beta) of the exciton eigenstates.

    alpha > 0, alpha^2 + beta^2 = 1, beta/alpha = s_c / (s_r + S). The
    lower-energy eigenvector of ``hamiltonian`` is (alpha, i beta) up to a
    global phase.

    Returns (alpha, beta, degenerate); the degenerate point s_r = s_c = 0
    yields (1, 0, True), the continuous limit along s_c = 0.
    """
    if s_r == 0.0 and s_c == 0.0:
        return 1.0, 0.0, True
    s = splitting(s_r, s_c)
    # unnormalized (s_r + s, s_c) is never the zero vector for s > 0
    norm = np.hypot(s_r + s, s_c)
    if norm == 0.0:
        # s_r < 0 with s_c == 0: eigenstates swap, weights (0, 1) limit;
        # keep alpha positive by an infinitesimal rotation convention
        return 0.0, 1.0, False
    return float((s_r + s) / norm), float(s_c / norm), False


def field_to_circular_splitting(b_z, slope):
    """Circular splitting component induced by a normal field: s_c = slope * b_z."""
    if slope <= 0.0:
        raise ValueError(f"slope must be > 0, got {slope}")
    return slope * b_z


def splitting_pdf(s_r, sigma, s):
    """Probability density of |S| when s_c ~ Normal(0, sigma).

    Zero for s <= s_r; otherwise
    sqrt(2/(pi sigma^2)) * s/sqrt(s^2 - s_r^2) * exp(-(s^2 - s_r^2)/(2 sigma^2)).
    The density has an integrable singularity at s -> s_r+ (for s_r > 0);
    callers sampling a grid should exclude s = s_r exactly.
    """
    if sigma <= 0.0:
        raise ValueError(f"sigma must be > 0, got {sigma}")
    scalar = np.isscalar(s) or np.ndim(s) == 0
    s = np.atleast_1d(np.asarray(s, dtype=float))
    out = np.zeros_like(s)
    if s_r == 0.0:
        # half-normal, including the s = 0 limit sqrt(2/pi)/sigma
        nonneg = s >= 0.0
        out[nonneg] = (np.sqrt(2.0 / (np.pi * sigma * sigma))
                       * np.exp(-s[nonneg] ** 2 / (2.0 * sigma * sigma)))
        return float(out[0]) if scalar else out
    above = s > s_r
    sa = s[above]
    arg = sa * sa - s_r * s_r
    out[above] = (np.sqrt(2.0 / (np.pi * sigma * sigma))
                  * sa / np.sqrt(arg)
                  * np.exp(-arg / (2.0 * sigma * sigma)))
    if scalar:
        return float(out[0])
    return out
