"""Four-level rate equations of the d.c.-driven dot.

Levels: coherent exciton X_C (phase-referenced to the detected XX photon),
incoherent exciton X_S, biexciton XX, ground G. Couplings: re-excitation at
rate p out of G and both exciton levels, radiative decay at Gamma_XX and
Gamma_X, spin scattering at Gamma_S (X_C -> X_S). Re-excitation and XX decay
feed only the incoherent exciton: coherence with the already-detected photon
cannot be re-created.

State vector order is (x_c, x_s, xx, g). Rates are 1/ns, times ns.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg


@dataclass(frozen=True)
class CascadeParams:
    gamma_xx: float
    gamma_x: float
    gamma_s: float = 0.0
    p: float = 0.0

    def __post_init__(self):
        if self.gamma_x <= 0.0 or self.gamma_xx <= 0.0:
            raise ValueError("gamma_x and gamma_xx must be > 0")
        if self.gamma_s < 0.0 or self.p < 0.0:
            raise ValueError("gamma_s and p must be >= 0")


@dataclass(frozen=True)
class Populations:
    x_c: float
    x_s: float
    xx: float
    g: float

    def as_array(self):
        return np.array([self.x_c, self.x_s, self.xx, self.g])


INITIAL_AFTER_XX = np.array([1.0, 0.0, 0.0, 0.0])
INITIAL_AFTER_X = np.array([0.0, 0.0, 0.0, 1.0])


def rate_matrix(params):
    """Generator A with d(populations)/dtau = A @ populations."""
    gx, gxx, gs, p = params.gamma_x, params.gamma_xx, params.gamma_s, params.p
    return np.array([
        [-(gx + gs + p), 0.0, 0.0, 0.0],
        [gs, -(gx + p), gxx, p],
        [p, p, -gxx, 0.0],
        [gx, gx, 0.0, -p],
    ])


def _propagate(params, tau, n0):
    """Populations at each tau (array) from initial vector n0.

    Eigendecomposition when the spectrum is well separated, otherwise
    scaling-and-squaring matrix exponentials per grid point.
    """
    tau = np.atleast_1d(np.asarray(tau, dtype=float))
    if np.any(tau < 0.0):
        raise ValueError("tau must be >= 0")
    a = rate_matrix(params)
    evals, vecs = np.linalg.eig(a)
    scale = np.abs(evals).max() + 1e-30
    gaps = np.abs(evals[:, None] - evals[None, :])
    np.fill_diagonal(gaps, np.inf)
    if gaps.min() / scale > 1e-8:
        coeff = np.linalg.solve(vecs, n0.astype(complex))
        out = np.real(vecs @ (coeff[:, None] * np.exp(np.outer(evals, tau))))
        return out.T  # (n_tau, 4)
    return np.array([scipy.linalg.expm(a * t) @ n0 for t in tau])


def populations_after_xx(params, tau):
    """Populations at delay tau >= 0 after detection of a coherent XX photon."""
    out = _propagate(params, tau, INITIAL_AFTER_XX)
    return out if np.ndim(tau) else Populations(*out[0])


def populations_after_x(params, tau):
    """Populations at delay tau >= 0 after detection of an X photon.

    Starts from the ground state; x_c stays 0 (no coherent channel is
    re-populated).
    """
    out = _propagate(params, tau, INITIAL_AFTER_X)
    return out if np.ndim(tau) else Populations(*out[0])


def steady_state(params):
    """Long-delay limit: normalized null vector of the rate matrix, x_c = 0.

    Raises for p = 0, where the ground state is absorbing and no pumped
    steady state exists.
    """
    if params.p <= 0.0:
        raise ValueError("steady state undefined for p = 0 (ground state is absorbing)")
    a = rate_matrix(params)
    # replace one balance equation by the normalization constraint
    m = np.vstack([a[:3], np.ones(4)])
    n = np.linalg.solve(m, np.array([0.0, 0.0, 0.0, 1.0]))
    n[np.abs(n) < 1e-15] = 0.0
    return Populations(*n)
