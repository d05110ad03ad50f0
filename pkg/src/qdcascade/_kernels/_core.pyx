# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled averaging kernel: quadrature-weighted pure-state density matrices."""

import numpy as np

cimport numpy as cnp
from libc.math cimport sqrt, hypot, cos, sin

cnp.import_array()

BACKEND = "cython"


def averaged_entangled_density(double s_r,
                               cnp.ndarray[cnp.float64_t, ndim=1] s_c_nodes,
                               cnp.ndarray[cnp.float64_t, ndim=1] node_weights,
                               cnp.ndarray[cnp.float64_t, ndim=1] phases_scale,
                               double hbar):
    """See the pure-python twin for the contract; summation order over nodes
    is fixed (ascending node index) for bitwise determinism."""
    cdef Py_ssize_t n_nodes = s_c_nodes.shape[0]
    cdef Py_ssize_t n_tau = phases_scale.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=3] rho = np.zeros(
        (n_tau, 4, 4), dtype=np.complex128)
    cdef double complex[:, :, :] out = rho
    cdef double[:] nodes = s_c_nodes
    cdef double[:] weights = node_weights
    cdef double[:] ps = phases_scale

    cdef Py_ssize_t t, j, r, c
    cdef double sc, s, denom, alpha, beta, a2, b2, ab, w, phi
    cdef double inv_sqrt2 = 1.0 / sqrt(2.0)
    cdef double complex e, one_m_e
    cdef double complex amp[4]

    for t in range(n_tau):
        for j in range(n_nodes):
            sc = nodes[j]
            w = weights[j]
            s = hypot(s_r, sc)
            if s == 0.0:
                alpha = 1.0
                beta = 0.0
            else:
                denom = hypot(s_r + s, sc)
                alpha = (s_r + s) / denom
                beta = sc / denom
            a2 = alpha * alpha
            b2 = beta * beta
            ab = alpha * beta
            phi = s * ps[t]
            e = cos(phi) + 1j * sin(phi)
            one_m_e = 1.0 - e
            amp[0] = (a2 + e * b2) * inv_sqrt2
            amp[1] = 1j * ab * one_m_e * inv_sqrt2
            amp[2] = -amp[1]
            amp[3] = (b2 + e * a2) * inv_sqrt2
            for r in range(4):
                for c in range(4):
                    out[t, r, c] = out[t, r, c] + w * amp[r] * amp[c].conjugate()
    return rho
