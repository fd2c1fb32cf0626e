"""Reduced spin density matrices, Bloch vectors and von Neumann entropy.

The reduced 2x2 spin state of a packet is the momentum integral of the spin
outer product, tau_rs = int a_r a_s* d^3p, so in Bloch form
tau = (I + n.sigma)/2 with::

    n_z         = int (|a1|^2 - |a2|^2) d^3p
    n_x - i n_y = 2 int a1 a2* d^3p

The factor 2 on the off-diagonal moment is forced by tr(tau) = 1 together
with purity of product states: without it a pure constant spinor with two
non-zero components would come out mixed.  Entropy is reported in nats.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import NotNormalizedError
from .quadrature import QuadratureSpec, default_spec, integrate_components
from .wavepacket import Ensemble, SpinorPacket

__all__ = [
    "SpinDensity",
    "EntropyReport",
    "reduced_density",
    "entropy",
    "ensemble_reduced",
    "eigen_entropy_crosscheck",
]

_HERMITICITY_TOL = 1e-12
_TRACE_TOL = 1e-12
_PSD_TOL = 1e-12
_BLOCH_TOL = 1e-10
_NORM_DRIFT_LIMIT = 1e-4

_PAULI_Z = np.diag([1.0, -1.0])


@dataclass(frozen=True, eq=False)
class SpinDensity:
    """2x2 Hermitian, unit-trace, positive semidefinite spin state."""

    matrix: np.ndarray
    quadrature_error: float = 0.0

    def __post_init__(self):
        t = np.asarray(self.matrix, dtype=complex).reshape(2, 2)
        object.__setattr__(self, "matrix", t)
        herm = np.max(np.abs(t - t.conj().T))
        if herm > _HERMITICITY_TOL:
            raise ValueError(f"matrix is not Hermitian: max |tau - tau^H| = {herm:.3e}")
        tr_dev = abs(t[0, 0].real + t[1, 1].real - 1.0)
        if tr_dev > _TRACE_TOL:
            raise ValueError(f"trace must be 1, deviation {tr_dev:.3e}")
        eigs = np.linalg.eigvalsh(t)
        if eigs[0] < -_PSD_TOL:
            raise ValueError(f"matrix is not positive semidefinite: min eigenvalue {eigs[0]:.3e}")
        n = self.bloch
        if np.linalg.norm(n) > 1.0 + _BLOCH_TOL:
            raise ValueError(f"Bloch vector norm {np.linalg.norm(n)!r} exceeds 1")

    @property
    def bloch(self) -> np.ndarray:
        """Bloch vector n with tau = (I + n.sigma)/2."""
        t = self.matrix
        return np.array(
            [2 * t[0, 1].real, -2 * t[0, 1].imag, (t[0, 0] - t[1, 1]).real]
        )

    @classmethod
    def from_bloch(cls, n, quadrature_error: float = 0.0) -> "SpinDensity":
        n = np.asarray(n, dtype=float).reshape(3)
        t = 0.5 * np.array(
            [
                [1.0 + n[2], n[0] - 1j * n[1]],
                [n[0] + 1j * n[1], 1.0 - n[2]],
            ]
        )
        return cls(t, quadrature_error=quadrature_error)


@dataclass(frozen=True)
class EntropyReport:
    """Entropy (nats) with the eigenvalues and Bloch norm it came from."""

    entropy: float
    eigenvalues: tuple[float, float]
    bloch_norm: float
    quadrature_error: float


def reduced_density(psi: SpinorPacket, spec: QuadratureSpec | None = None) -> SpinDensity:
    """Integrate the spin components of a packet into its 2x2 reduced state.

    All moments come from a single pass over the quadrature grid.  The Bloch
    vector is divided by the measured norm, so residual quadrature drift in
    the normalization does not bias it; a norm off by more than
    ``1e-4`` raises :class:`NotNormalizedError` instead.
    """
    if spec is None:
        spec = default_spec(psi)

    def components(p):
        a = psi.amplitude(p)
        d1 = (a[:, 0] * a[:, 0].conj()).real
        d2 = (a[:, 1] * a[:, 1].conj()).real
        cross = a[:, 0] * a[:, 1].conj()
        return np.stack([d1 + d2, d1 - d2, cross], axis=1)

    values, errors = integrate_components(components, spec)
    total = values[0].real
    if abs(total - 1.0) > _NORM_DRIFT_LIMIT:
        raise NotNormalizedError(
            f"packet norm is {total!r}; expected 1 within {_NORM_DRIFT_LIMIT}"
        )
    nz = values[1].real / total
    cross = 2.0 * values[2] / total  # n_x - i n_y = 2 tau_01
    n = np.array([cross.real, -cross.imag, nz])
    return SpinDensity.from_bloch(n, quadrature_error=float(np.max(errors)) / total)


def _entropy_from_eigenvalues(lam: np.ndarray) -> float:
    # 0 ln 0 := 0 by continuity; eigenvalues clamped to [0, 1] after validation
    lam = np.clip(lam, 0.0, 1.0)
    positive = lam[lam > 0.0]
    return float(-np.sum(positive * np.log(positive)))


def entropy(tau: SpinDensity) -> EntropyReport:
    """von Neumann entropy from the closed-form qubit eigenvalues (1 +- |n|)/2."""
    r = float(np.linalg.norm(tau.bloch))
    r = min(r, 1.0)
    lam = np.array([(1.0 + r) / 2.0, (1.0 - r) / 2.0])
    return EntropyReport(
        entropy=_entropy_from_eigenvalues(lam),
        eigenvalues=(float(lam[0]), float(lam[1])),
        bloch_norm=r,
        quadrature_error=tau.quadrature_error,
    )


def eigen_entropy_crosscheck(tau: SpinDensity) -> float:
    """Entropy via explicit eigendecomposition; independent of the Bloch route."""
    lam = np.linalg.eigvalsh(tau.matrix)
    return _entropy_from_eigenvalues(lam)


def ensemble_reduced(ensemble: Ensemble, spec: QuadratureSpec | None = None) -> SpinDensity:
    """Reduced state of a mixture: the weight-averaged member reduced states."""
    matrix = np.zeros((2, 2), dtype=complex)
    err = 0.0
    for c, psi in ensemble.members:
        tau = reduced_density(psi, spec)
        matrix += c * tau.matrix
        err += c * tau.quadrature_error
    return SpinDensity(matrix, quadrature_error=err)
