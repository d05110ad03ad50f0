import numpy as np
import pytest

from qdcascade.cascade import (CascadeParams, Populations, rate_matrix,
                               populations_after_x, populations_after_xx,
                               steady_state)

REF = CascadeParams(gamma_xx=2.0, gamma_x=1.0, gamma_s=0.3, p=0.5)


def rk4(params, n0, tau, step=1e-3):
    """Independent fixed-step integrator used as an oracle."""
    a = rate_matrix(params)
    n = np.array(n0, dtype=float)
    steps = int(round(tau / step))
    h = tau / steps if steps else 0.0
    for _ in range(steps):
        k1 = a @ n
        k2 = a @ (n + h / 2 * k1)
        k3 = a @ (n + h / 2 * k2)
        k4 = a @ (n + h * k3)
        n = n + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
    return n


def test_params_validation():
    with pytest.raises(ValueError):
        CascadeParams(gamma_xx=0.0, gamma_x=1.0)
    with pytest.raises(ValueError):
        CascadeParams(gamma_xx=1.0, gamma_x=1.0, p=-0.1)


def test_initial_conditions():
    assert np.allclose(populations_after_xx(REF, 0.0).as_array(),
                       [1, 0, 0, 0], atol=1e-12)
    assert np.allclose(populations_after_x(REF, 0.0).as_array(),
                       [0, 0, 0, 1], atol=1e-12)


def test_negative_tau_rejected():
    with pytest.raises(ValueError):
        populations_after_xx(REF, -0.1)
    with pytest.raises(ValueError):
        populations_after_x(REF, np.array([0.0, -1.0]))


def test_single_exponential_limit():
    params = CascadeParams(gamma_xx=2.0, gamma_x=0.8, gamma_s=0.0, p=0.0)
    for tau in (0.1, 0.7, 2.5):
        pops = populations_after_xx(params, tau)
        assert pops.x_c == pytest.approx(np.exp(-0.8 * tau), abs=1e-10)
        assert pops.g == pytest.approx(1 - np.exp(-0.8 * tau), abs=1e-10)
        assert pops.x_s == pytest.approx(0.0, abs=1e-12)
        assert pops.xx == pytest.approx(0.0, abs=1e-12)


def test_after_x_without_pumping_stays_ground():
    params = CascadeParams(gamma_xx=2.0, gamma_x=1.0, gamma_s=0.0, p=0.0)
    pops = populations_after_x(params, np.array([0.5, 3.0, 10.0]))
    assert np.allclose(pops, np.tile([0, 0, 0, 1], (3, 1)), atol=1e-12)


def test_after_x_no_coherent_channel():
    taus = np.linspace(0.0, 20.0, 50)
    pops = populations_after_x(REF, taus)
    assert np.max(np.abs(pops[:, 0])) < 1e-12


def test_after_x_short_time_quadratic():
    # xx(tau) = p^2 tau^2 / 2 + O(tau^3)
    params = CascadeParams(gamma_xx=1.5, gamma_x=1.0, gamma_s=0.0, p=0.7)
    ratios = []
    for tau in (1e-2, 1e-3, 1e-4):
        pops = populations_after_x(params, tau)
        ratios.append(pops.xx / (params.p**2 * tau**2 / 2))
    assert abs(ratios[-1] - 1) < 1e-3
    assert abs(ratios[-1] - 1) < abs(ratios[0] - 1)


class TestSteadyState:
    def test_hand_solved_case(self):
        ss = steady_state(CascadeParams(gamma_xx=2.0, gamma_x=1.0,
                                        gamma_s=0.0, p=1.0))
        assert ss.x_c == pytest.approx(0.0, abs=1e-12)
        assert ss.x_s == pytest.approx(0.4)
        assert ss.xx == pytest.approx(0.2)
        assert ss.g == pytest.approx(0.4)

    def test_strong_pumping_fills_biexciton(self):
        ss = steady_state(CascadeParams(gamma_xx=1.0, gamma_x=1.0, p=1e4))
        assert ss.xx > 0.99

    def test_independent_of_gamma_s(self):
        a = steady_state(CascadeParams(gamma_xx=2.0, gamma_x=1.0,
                                       gamma_s=0.0, p=0.5))
        b = steady_state(CascadeParams(gamma_xx=2.0, gamma_x=1.0,
                                       gamma_s=3.0, p=0.5))
        assert np.allclose(a.as_array(), b.as_array(), atol=1e-12)

    def test_p_zero_rejected(self):
        with pytest.raises(ValueError):
            steady_state(CascadeParams(gamma_xx=1.0, gamma_x=1.0, p=0.0))

    def test_both_branches_converge_to_it(self):
        ss = steady_state(REF).as_array()
        tau_long = 50.0 / min(REF.gamma_x, REF.gamma_xx, REF.gamma_s, REF.p)
        for branch in (populations_after_xx, populations_after_x):
            pops = branch(REF, tau_long)
            assert np.allclose(pops.as_array(), ss, atol=1e-6)


def test_conservation_and_nonnegativity():
    min_rate = min(REF.gamma_x, REF.gamma_xx, REF.gamma_s, REF.p)
    taus = np.concatenate([[0.0], np.logspace(-3, np.log10(100 / min_rate), 60)])
    for branch in (populations_after_xx, populations_after_x):
        pops = branch(REF, taus)
        assert np.max(np.abs(pops.sum(axis=1) - 1)) < 1e-9
        assert pops.min() > -1e-9
        assert pops.max() < 1 + 1e-9


def test_matches_rk4_oracle():
    rng = np.random.default_rng(31)
    taus = rng.uniform(0.0, 5.0, size=50)
    from qdcascade.cascade import INITIAL_AFTER_X, INITIAL_AFTER_XX
    for n0, branch in [(INITIAL_AFTER_XX, populations_after_xx),
                       (INITIAL_AFTER_X, populations_after_x)]:
        got = branch(REF, taus)
        for i, tau in enumerate(taus):
            expected = rk4(REF, n0, tau)
            assert np.allclose(got[i], expected, atol=1e-6)


def test_degenerate_eigenvalues_fall_back():
    # gamma_x = gamma_xx with p = gamma_s = 0 gives a repeated eigenvalue
    params = CascadeParams(gamma_xx=1.0, gamma_x=1.0, gamma_s=0.0, p=0.0)
    pops = populations_after_xx(params, 1.3)
    assert pops.x_c == pytest.approx(np.exp(-1.3), abs=1e-9)
    assert sum(pops.as_array()) == pytest.approx(1.0, abs=1e-9)
