"""Pure-numpy implementation of the hot averaging kernel.

Used when the compiled extension is unavailable; results are bitwise
reproducible (fixed summation order over quadrature nodes).
"""

import numpy as np

BACKEND = "python"


def averaged_entangled_density(s_r, s_c_nodes, node_weights, phases_scale, hbar):
    """Quadrature-averaged pure-state density matrices.

    Parameters
    ----------
    s_r : float
        Rectilinear splitting component (ueV).
    s_c_nodes : (n_nodes,) array
        Circular splitting values at the quadrature nodes (ueV).
    node_weights : (n_nodes,) array
        Normalized quadrature weights (sum to 1).
    phases_scale : (n_tau,) array
        tau/hbar for each grid point (1/ueV), so phi = S * phases_scale.
    hbar : float
        Unused here (phases_scale already carries it); kept for signature
        parity with the compiled kernel.

    Returns
    -------
    (n_tau, 4, 4) complex array: sum_j w_j |psi(s_r, s_c_j, tau)><psi|.
    """
    s_c_nodes = np.asarray(s_c_nodes, dtype=float)
    node_weights = np.asarray(node_weights, dtype=float)
    phases_scale = np.asarray(phases_scale, dtype=float)
    n_tau = phases_scale.size

    s = np.hypot(s_r, s_c_nodes)  # (n,)
    degenerate = s == 0.0
    denom = np.hypot(s_r + s, s_c_nodes)
    alpha = np.where(degenerate, 1.0, np.divide(s_r + s, denom, where=denom > 0))
    beta = np.where(degenerate, 0.0, np.divide(s_c_nodes, denom, where=denom > 0))

    e = np.exp(1.0j * np.outer(s, phases_scale))  # (n, n_tau)
    a2 = (alpha * alpha)[:, None]
    b2 = (beta * beta)[:, None]
    ab = (alpha * beta)[:, None]
    inv_sqrt2 = 1.0 / np.sqrt(2.0)
    amps = np.empty((4, s.size, n_tau), dtype=complex)
    amps[0] = (a2 + e * b2) * inv_sqrt2
    amps[1] = 1.0j * ab * (1.0 - e) * inv_sqrt2
    amps[2] = -amps[1]
    amps[3] = (b2 + e * a2) * inv_sqrt2

    # outer products, then weighted node sum in fixed order
    rho = np.einsum("jnt,knt,n->tjk", amps, amps.conj(), node_weights,
                    optimize=True)
    return rho
