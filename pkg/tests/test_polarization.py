import numpy as np
import pytest

from qdcascade import polarization as pol


def random_density(rng):
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def test_basis_vectors_definitions():
    h, v = pol.basis_vectors("rectilinear")
    assert np.allclose(h, [1, 0]) and np.allclose(v, [0, 1])
    d, a = pol.basis_vectors("diagonal")
    assert np.allclose(d, np.array([1, 1]) / np.sqrt(2))
    assert np.allclose(a, np.array([1, -1]) / np.sqrt(2))
    l, r = pol.basis_vectors("circular")
    assert np.allclose(l, np.array([1, 1j]) / np.sqrt(2))
    assert np.allclose(r, np.array([1, -1j]) / np.sqrt(2))


@pytest.mark.parametrize("basis", pol.BASES)
def test_basis_vectors_orthonormal(basis):
    b1, b2 = pol.basis_vectors(basis)
    assert abs(np.vdot(b1, b1) - 1) < 1e-12
    assert abs(np.vdot(b2, b2) - 1) < 1e-12
    assert abs(np.vdot(b1, b2)) < 1e-12


def test_basis_vectors_unknown():
    with pytest.raises(ValueError):
        pol.basis_vectors("elliptical")


def test_project_mixed_state():
    for basis in pol.BASES:
        b1, b2 = pol.basis_vectors(basis)
        assert pol.project(pol.MIXED_STATE, b1, b2) == pytest.approx(0.25)


def test_project_bell_state():
    bell = np.outer(pol.BELL_PHI_PLUS, pol.BELL_PHI_PLUS.conj())
    assert pol.project(bell, pol.H, pol.H) == pytest.approx(0.5)
    # Phi+ = (|DD> + |AA>)/sqrt(2)
    assert pol.project(bell, pol.D, pol.D) == pytest.approx(0.5)
    assert pol.project(bell, pol.D, pol.A) == pytest.approx(0.0, abs=1e-12)


def test_project_linear_and_phase_invariant():
    rng = np.random.default_rng(7)
    r1, r2 = random_density(rng), random_density(rng)
    k1, k2 = pol.L, pol.D
    a, b = 0.3, 0.7
    lhs = pol.project(a * r1 + b * r2, k1, k2)
    assert lhs == pytest.approx(a * pol.project(r1, k1, k2)
                                + b * pol.project(r2, k1, k2))
    phased = pol.project(r1, np.exp(0.37j) * k1, np.exp(-1.2j) * k2)
    assert phased == pytest.approx(pol.project(r1, k1, k2), abs=1e-12)


@pytest.mark.parametrize("basis", pol.BASES)
def test_projection_completeness(basis):
    rng = np.random.default_rng(11)
    rho = random_density(rng)
    b1, b2 = pol.basis_vectors(basis)
    total = sum(pol.project(rho, x, y) for x in (b1, b2) for y in (b1, b2))
    assert total == pytest.approx(np.trace(rho).real, abs=1e-10)


def test_fidelity_to_bell_values():
    assert pol.fidelity_to_bell(pol.MIXED_STATE) == pytest.approx(0.25)
    bell = np.outer(pol.BELL_PHI_PLUS, pol.BELL_PHI_PLUS.conj())
    assert pol.fidelity_to_bell(bell) == pytest.approx(1.0)
    mix = 0.866 * bell + 0.134 * pol.MIXED_STATE
    assert pol.fidelity_to_bell(mix) == pytest.approx(0.8995)


def test_fidelity_to_bell_rejects_unnormalized():
    with pytest.raises(ValueError):
        pol.fidelity_to_bell(2.0 * pol.MIXED_STATE)


def test_fidelity_from_correlation_identity():
    # f = (1 + C_rect + C_diag - C_circ)/4 from projections of the same rho
    rng = np.random.default_rng(3)
    for _ in range(1000):
        rho = random_density(rng)
        cs = {}
        for basis in pol.BASES:
            b1, b2 = pol.basis_vectors(basis)
            co = (pol.project(rho, b1, b1) + pol.project(rho, b2, b2)) / 2
            cross = (pol.project(rho, b1, b2) + pol.project(rho, b2, b1)) / 2
            cs[basis] = (co - cross) / (co + cross)
        f = (1 + cs["rectilinear"] + cs["diagonal"] - cs["circular"]) / 4
        assert abs(f - pol.fidelity_to_bell(rho)) < 1e-10


def test_check_density_matrix():
    pol.check_density_matrix(pol.MIXED_STATE)
    bad = np.eye(4, dtype=complex) / 4
    bad[0, 1] = 0.2
    with pytest.raises(ValueError):
        pol.check_density_matrix(bad)
    neg = np.diag([0.6, 0.5, -0.1, 0.0]).astype(complex)
    with pytest.raises(ValueError):
        pol.check_density_matrix(neg)
