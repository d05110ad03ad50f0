"""Photon polarization states, two-photon projectors and Bell-state fidelity.

Two-photon objects live in the product basis (HH, HV, VH, VV) with the
biexciton (first-emitted) photon as the first tensor factor.
"""

import numpy as np

# Single-photon Jones vectors over {H, V}
H = np.array([1.0, 0.0], dtype=complex)
V = np.array([0.0, 1.0], dtype=complex)
D = np.array([1.0, 1.0], dtype=complex) / np.sqrt(2.0)
A = np.array([1.0, -1.0], dtype=complex) / np.sqrt(2.0)
L = np.array([1.0, 1.0j], dtype=complex) / np.sqrt(2.0)
R = np.array([1.0, -1.0j], dtype=complex) / np.sqrt(2.0)

#: |Phi+> = (|HH> + |VV>)/sqrt(2) in the product basis
BELL_PHI_PLUS = np.array([1.0, 0.0, 0.0, 1.0], dtype=complex) / np.sqrt(2.0)

#: Maximally mixed two-photon density matrix, I/4
MIXED_STATE = np.eye(4, dtype=complex) / 4.0

BASES = ("rectilinear", "diagonal", "circular")

_BASIS_PAIRS = {
    "rectilinear": (H, V),
    "diagonal": (D, A),
    "circular": (L, R),
}


def basis_vectors(basis):
    """Return the orthonormal Jones-vector pair of a named basis.

    ``rectilinear`` -> (H, V); ``diagonal`` -> (D, A); ``circular`` -> (L, R)
    with L = (H + iV)/sqrt(2) and R = (H - iV)/sqrt(2).
    """
    try:
        return _BASIS_PAIRS[basis]
    except KeyError:
        raise ValueError(f"unknown basis {basis!r}; expected one of {BASES}") from None


def product_ket(ket_xx, ket_x):
    """Tensor product of two Jones vectors, XX photon first."""
    return np.kron(np.asarray(ket_xx, dtype=complex), np.asarray(ket_x, dtype=complex))


def project(rho, ket_xx, ket_x):
    """Expectation <ket_xx (x) ket_x | rho | ket_xx (x) ket_x>, returned as real."""
    k4 = product_ket(ket_xx, ket_x)
    return float(np.real(np.conj(k4) @ rho @ k4))


def normalize(rho):
    """Scale a density matrix to unit trace."""
    tr = np.trace(rho).real
    if tr <= 0.0:
        raise ValueError(f"non-positive trace {tr}")
    return rho / tr


def fidelity_to_bell(rho):
    """Overlap <Phi+| rho |Phi+> of a trace-1 density matrix with the Bell state.

    Equals (rho_HH,HH + rho_VV,VV + 2 Re rho_HH,VV) / 2.
    """
    tr = np.trace(rho).real
    if abs(tr - 1.0) > 1e-6:
        raise ValueError(f"density matrix not normalized: trace = {tr}")
    return float((rho[0, 0].real + rho[3, 3].real + 2.0 * rho[0, 3].real) / 2.0)


def check_density_matrix(rho, *, atol_herm=1e-12, eig_floor=-1e-10):
    """Raise if rho is not Hermitian or has an eigenvalue below the PSD floor."""
    rho = np.asarray(rho)
    if rho.shape != (4, 4):
        raise ValueError(f"expected 4x4 matrix, got {rho.shape}")
    if not np.allclose(rho, rho.conj().T, atol=atol_herm, rtol=0.0):
        raise ValueError("density matrix is not Hermitian")
    evals = np.linalg.eigvalsh(rho)
    if evals.min() < eig_floor:
        raise ValueError(f"density matrix has negative eigenvalue {evals.min()}")
