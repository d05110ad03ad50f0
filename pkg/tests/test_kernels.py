import numpy as np

from qdcascade._kernels import _purepy
from qdcascade.constants import HBAR_UEV_NS
from qdcascade.emission import quadrature_rule

try:
    from qdcascade._kernels import _core
except ImportError:
    _core = None

import pytest

needs_ext = pytest.mark.skipif(_core is None,
                               reason="compiled kernel not built")


def kernel_args(s_r=0.4, sigma=2.47, n_nodes=64, n_tau=200):
    nodes, weights = quadrature_rule(sigma, n_nodes)
    phases = np.linspace(0.0, 5.0, n_tau) / HBAR_UEV_NS
    return s_r, nodes, weights, phases, HBAR_UEV_NS


@needs_ext
def test_backends_agree():
    args = kernel_args()
    a = _core.averaged_entangled_density(*args)
    b = _purepy.averaged_entangled_density(*args)
    assert np.max(np.abs(a - b)) < 1e-13


@needs_ext
def test_backends_agree_degenerate_node():
    # sigma = 0 collapses to a single node at s_c = 0
    args = (0.0, np.array([0.0]), np.array([1.0]),
            np.linspace(0, 3, 50) / HBAR_UEV_NS, HBAR_UEV_NS)
    a = _core.averaged_entangled_density(*args)
    b = _purepy.averaged_entangled_density(*args)
    assert np.max(np.abs(a - b)) < 1e-15


def test_purepy_output_properties():
    _, nodes, weights, phases, _ = kernel_args()
    rho = _purepy.averaged_entangled_density(0.4, nodes, weights, phases,
                                             HBAR_UEV_NS)
    assert rho.shape == (200, 4, 4)
    # each slice is an average of pure-state projectors: Hermitian, trace 1
    assert np.max(np.abs(rho - rho.conj().transpose(0, 2, 1))) < 1e-13
    assert np.max(np.abs(np.trace(rho, axis1=1, axis2=2) - 1)) < 1e-12
    for slice_ in rho[::40]:
        assert np.linalg.eigvalsh(slice_).min() > -1e-12


def test_deterministic_repeat():
    args = kernel_args()
    from qdcascade import _kernels
    a = _kernels.averaged_entangled_density(*args)
    b = _kernels.averaged_entangled_density(*args)
    assert np.array_equal(a, b)
