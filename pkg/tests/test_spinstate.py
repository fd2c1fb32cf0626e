"""Reduced spin states: Bloch vectors, entropy, mixtures, frame dependence."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wigner_entropy.exceptions import NotNormalizedError
from wigner_entropy.kinematics import LorentzElement
from wigner_entropy.spinstate import (
    SpinDensity,
    eigen_entropy_crosscheck,
    ensemble_reduced,
    entropy,
    reduced_density,
)
from wigner_entropy.transform import boost_state
from wigner_entropy.wavepacket import Ensemble, SpinorPacket, gaussian_packet

bloch_vectors = st.lists(
    st.floats(min_value=-1.0, max_value=1.0, allow_nan=False), min_size=3, max_size=3
).filter(lambda n: np.linalg.norm(n) <= 1.0)


def spin_up_tau():
    return SpinDensity(np.diag([1.0, 0.0]).astype(complex))


# -- SpinDensity type ----------------------------------------------------


def test_bloch_round_trip():
    n = np.array([0.3, -0.4, 0.5])
    tau = SpinDensity.from_bloch(n)
    np.testing.assert_allclose(tau.bloch, n, atol=1e-15)
    np.testing.assert_allclose(
        tau.matrix,
        0.5 * (np.eye(2) + n[0] * np.array([[0, 1], [1, 0]])
               + n[1] * np.array([[0, -1j], [1j, 0]]) + n[2] * np.diag([1, -1])),
        atol=1e-15,
    )


def test_spin_density_validation():
    with pytest.raises(ValueError):
        SpinDensity(np.array([[0.5, 0.1], [0.3, 0.5]]))  # not Hermitian
    with pytest.raises(ValueError):
        SpinDensity(np.diag([0.8, 0.8]))  # trace 1.6
    with pytest.raises(ValueError):
        SpinDensity(np.diag([1.5, -0.5]))  # not PSD
    with pytest.raises(ValueError):
        SpinDensity.from_bloch([1.0, 1.0, 1.0])  # |n| > 1


# -- reduced_density -----------------------------------------------------


def test_spin_up_gaussian_is_pure_up():
    tau = reduced_density(gaussian_packet(1.0, 0.1))
    np.testing.assert_allclose(tau.bloch, [0.0, 0.0, 1.0], atol=1e-14)
    np.testing.assert_allclose(tau.matrix, np.diag([1.0, 0.0]), atol=1e-14)


def test_equal_mixture_is_maximally_mixed():
    up = gaussian_packet(1.0, 0.1, chi=(1.0, 0.0))
    down = gaussian_packet(1.0, 0.1, chi=(0.0, 1.0))
    tau = ensemble_reduced(Ensemble(((0.5, up), (0.5, down))))
    np.testing.assert_allclose(tau.matrix, 0.5 * np.eye(2), atol=1e-12)
    assert entropy(tau).entropy == pytest.approx(np.log(2.0), abs=1e-12)


def test_boosted_gaussian_bloch_vector():
    """beta = 0.6 gives tanh(alpha/2) = 1/3 exactly; w = 0.1 sits close to leading order."""
    alpha = np.arctanh(0.6)
    psi = gaussian_packet(1.0, 0.1)
    tau = reduced_density(boost_state(LorentzElement.boost("x", alpha), psi))
    n = tau.bloch
    assert abs(n[0]) <= 1e-10 and abs(n[1]) <= 1e-10
    assert n[2] == pytest.approx(1.0 - (0.1 / 3.0 / 2.0) ** 2, abs=1e-5)


def test_renormalization_removes_scale_bias():
    psi = gaussian_packet(1.0, 0.1)
    perturbed = SpinorPacket(
        m=1.0,
        amplitude=lambda p: (1.0 + 3e-5) * psi.amplitude(p),
        center_hint=psi.center_hint,
        scale_hint=psi.scale_hint,
    )
    tau = reduced_density(perturbed)
    np.testing.assert_allclose(tau.bloch, [0.0, 0.0, 1.0], atol=1e-12)


def test_badly_normalized_packet_is_rejected():
    psi = gaussian_packet(1.0, 0.1)
    off = SpinorPacket(
        m=1.0,
        amplitude=lambda p: 1.01 * psi.amplitude(p),
        center_hint=psi.center_hint,
        scale_hint=psi.scale_hint,
    )
    with pytest.raises(NotNormalizedError):
        reduced_density(off)


# -- entropy -------------------------------------------------------------


def test_pure_state_entropy_zero():
    report = entropy(spin_up_tau())
    assert report.entropy == 0.0
    assert report.eigenvalues == (1.0, 0.0)


def test_maximally_mixed_entropy():
    report = entropy(SpinDensity(0.5 * np.eye(2, dtype=complex)))
    assert report.entropy == pytest.approx(np.log(2.0), abs=1e-15)
    assert report.bloch_norm == 0.0


def test_entropy_near_leading_order_value():
    t = 1.38889e-4
    report = entropy(SpinDensity.from_bloch([0.0, 0.0, 1.0 - 2 * t]))
    assert report.eigenvalues[1] == pytest.approx(t, rel=1e-10)
    assert report.entropy == pytest.approx(t * (1 - np.log(t)), rel=1e-3)


@given(bloch_vectors)
@settings(max_examples=200, deadline=None)
def test_eigen_crosscheck_matches_closed_form(n):
    tau = SpinDensity.from_bloch(n)
    assert abs(eigen_entropy_crosscheck(tau) - entropy(tau).entropy) <= 1e-12


def test_eigen_crosscheck_trivials():
    assert eigen_entropy_crosscheck(spin_up_tau()) == 0.0
    assert eigen_entropy_crosscheck(
        SpinDensity(0.5 * np.eye(2, dtype=complex))
    ) == pytest.approx(np.log(2.0), abs=1e-15)


def test_entropy_bounds():
    rng = np.random.default_rng(31)
    for _ in range(100):
        n = rng.normal(size=3)
        n *= rng.uniform(0, 1) / max(np.linalg.norm(n), 1e-12)
        s = entropy(SpinDensity.from_bloch(n)).entropy
        assert 0.0 <= s <= np.log(2.0) + 1e-12


# -- invariance properties ----------------------------------------------


def su2_from_params(a, b):
    norm = np.sqrt(abs(a) ** 2 + abs(b) ** 2)
    a, b = a / norm, b / norm
    return np.array([[a, -np.conj(b)], [b, np.conj(a)]])


def test_constant_spin_rotation_preserves_entropy_and_rotates_bloch():
    rng = np.random.default_rng(6)
    base = gaussian_packet(1.0, 0.1, chi=(0.6, 0.8))
    tau_base = reduced_density(base)
    s_base = entropy(tau_base).entropy
    for _ in range(5):
        u = su2_from_params(
            complex(rng.normal(), rng.normal()), complex(rng.normal(), rng.normal())
        )
        rotated = SpinorPacket(
            m=1.0,
            amplitude=lambda p, u=u: base.amplitude(p) @ u.T,
            center_hint=base.center_hint,
            scale_hint=base.scale_hint,
        )
        tau_rot = reduced_density(rotated)
        assert entropy(tau_rot).entropy == pytest.approx(s_base, abs=1e-12)
        # Bloch vector rotates by the SO(3) image of u
        r = np.zeros((3, 3))
        paulis = [np.array([[0, 1], [1, 0]]), np.array([[0, -1j], [1j, 0]]), np.diag([1, -1])]
        for i in range(3):
            for j in range(3):
                r[i, j] = 0.5 * np.trace(paulis[i] @ u @ paulis[j] @ u.conj().T).real
        np.testing.assert_allclose(tau_rot.bloch, r @ tau_base.bloch, atol=1e-10)


def test_boost_axis_isotropy():
    psi = gaussian_packet(1.0, 0.1)
    s_x = entropy(reduced_density(boost_state(LorentzElement.boost("x", 1.0), psi))).entropy
    s_y = entropy(reduced_density(boost_state(LorentzElement.boost("y", 1.0), psi))).entropy
    assert abs(s_x - s_y) <= 1e-10


def test_non_covariance_witness():
    """Same reduced state, same boost, different outcomes.

    Two spin-up packets share tau = diag(1, 0); after one common boost their
    Bloch z-components differ by more than half the width-difference scale,
    so no map of tau alone can reproduce the transformation.
    """
    m, alpha = 1.0, 1.0
    w1, w2 = 0.05, 0.10
    el = LorentzElement.boost("x", alpha)
    nz = []
    for w in (w1, w2):
        psi = gaussian_packet(m, w)
        np.testing.assert_allclose(reduced_density(psi).matrix, np.diag([1.0, 0.0]), atol=1e-14)
        nz.append(reduced_density(boost_state(el, psi)).bloch[2])
    bound = 0.5 * abs(w1**2 - w2**2) * np.tanh(alpha / 2) ** 2 / (4 * m**2)
    assert abs(nz[0] - nz[1]) > bound


# -- ensembles -----------------------------------------------------------


def test_singleton_ensemble_matches_reduced_density():
    psi = gaussian_packet(1.0, 0.1, chi=(0.6, 0.8j))
    tau_single = reduced_density(psi)
    tau_ens = ensemble_reduced(Ensemble(((1.0, psi),)))
    np.testing.assert_allclose(tau_ens.matrix, tau_single.matrix, atol=1e-15)


def test_convexity_fixed_point():
    psi = gaussian_packet(1.0, 0.1, chi=(0.6, 0.8))
    tau = ensemble_reduced(Ensemble(((0.4, psi), (0.6, psi))))
    np.testing.assert_allclose(tau.matrix, reduced_density(psi).matrix, atol=1e-14)


def test_mixing_never_decreases_entropy():
    """Concavity: S(sum c tau) >= sum c S(tau)."""
    rng = np.random.default_rng(9)
    for _ in range(10):
        chi1 = rng.normal(size=2) + 1j * rng.normal(size=2)
        chi2 = rng.normal(size=2) + 1j * rng.normal(size=2)
        chi1, chi2 = chi1 / np.linalg.norm(chi1), chi2 / np.linalg.norm(chi2)
        c = rng.uniform(0.1, 0.9)
        p1 = gaussian_packet(1.0, 0.1, chi=chi1)
        p2 = gaussian_packet(1.0, 0.15, chi=chi2)
        mixture = ensemble_reduced(Ensemble(((c, p1), (1 - c, p2))))
        s_mix = entropy(mixture).entropy
        s_members = c * entropy(reduced_density(p1)).entropy + (1 - c) * entropy(
            reduced_density(p2)
        ).entropy
        assert s_mix >= s_members - 1e-12
