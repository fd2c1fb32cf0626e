"""Normalizable two-component momentum-space spinor wave packets."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .quadrature import QuadratureSpec, default_spec, integrate_components

__all__ = ["SpinorPacket", "Ensemble", "gaussian_packet", "norm", "mean_momentum"]


@dataclass(frozen=True, eq=False)
class SpinorPacket:
    """A spin-1/2 momentum-space state: an evaluable map p -> (a1, a2).

    ``amplitude`` must accept an ``(N, 3)`` array of momenta and return an
    ``(N, 2)`` complex array; it must be total on R^3, decay fast enough for
    the norm integral to converge, and be safe to call concurrently.
    ``center_hint``/``scale_hint`` only steer quadrature node placement
    (approximate mean momentum and per-axis spread); they carry no
    correctness weight.
    """

    m: float
    amplitude: Callable[[np.ndarray], np.ndarray]
    center_hint: np.ndarray = (0.0, 0.0, 0.0)
    scale_hint: np.ndarray = 1.0

    def __post_init__(self):
        if not self.m > 0:
            raise ValueError(f"mass must be positive, got {self.m}")
        center = np.asarray(self.center_hint, dtype=float).reshape(3)
        scale = np.broadcast_to(np.asarray(self.scale_hint, dtype=float), (3,)).copy()
        if np.any(scale <= 0):
            raise ValueError("scale_hint must be positive")
        object.__setattr__(self, "center_hint", center)
        object.__setattr__(self, "scale_hint", scale)

    def evaluate(self, p) -> np.ndarray:
        """Amplitude at a single momentum (3,) -> (2,) or a batch (N,3) -> (N,2)."""
        p = np.asarray(p, dtype=float)
        if p.ndim == 1:
            return self.amplitude(p.reshape(1, 3))[0]
        return self.amplitude(p)


@dataclass(frozen=True, eq=False)
class Ensemble:
    """Finite convex mixture of packets: pairs (weight, packet), weights sum to 1."""

    members: tuple[tuple[float, SpinorPacket], ...]

    def __post_init__(self):
        members = tuple((float(c), psi) for c, psi in self.members)
        if not members:
            raise ValueError("ensemble needs at least one member")
        if any(c < 0 for c, _ in members):
            raise ValueError("ensemble weights must be non-negative")
        total = sum(c for c, _ in members)
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"ensemble weights must sum to 1, got {total!r}")
        object.__setattr__(self, "members", members)


def gaussian_packet(m: float, w: float, chi=(1.0, 0.0)) -> SpinorPacket:
    """Isotropic Gaussian packet of momentum width ``w`` with constant spinor ``chi``.

    The amplitude is ``(pi w^2)^(-3/4) exp(-|p|^2 / 2w^2) chi``; the prefactor
    is the unique positive constant giving unit L2 norm on R^3.  ``chi`` must
    be a unit 2-spinor.
    """
    if not w > 0:
        raise ValueError(f"width must be positive, got {w}")
    if not m > 0:
        raise ValueError(f"mass must be positive, got {m}")
    chi = np.asarray(chi, dtype=complex).reshape(2)
    if abs(np.linalg.norm(chi) - 1.0) > 1e-8:
        raise ValueError(f"spinor must have unit norm, got |chi| = {np.linalg.norm(chi)!r}")
    prefactor = (np.pi * w * w) ** -0.75

    def amplitude(p: np.ndarray) -> np.ndarray:
        envelope = prefactor * np.exp(-np.einsum("ni,ni->n", p, p) / (2 * w * w))
        return envelope[:, None] * chi[None, :]

    return SpinorPacket(m=m, amplitude=amplitude, center_hint=(0.0, 0.0, 0.0), scale_hint=w)


def norm(psi: SpinorPacket, spec: QuadratureSpec | None = None) -> tuple[float, float]:
    """Total probability sum_r int |a_r|^2 d^3p, with its quadrature error estimate."""
    if spec is None:
        spec = default_spec(psi)

    def density(p):
        a = psi.amplitude(p)
        return np.einsum("ni,ni->n", a, a.conj()).real

    values, errors = integrate_components(density, spec)
    return float(values[0].real), float(errors[0])


def mean_momentum(psi: SpinorPacket, spec: QuadratureSpec | None = None) -> tuple[np.ndarray, float]:
    """Mean momentum sum_r int p |a_r|^2 d^3p of a normalized packet."""
    if spec is None:
        spec = default_spec(psi)

    def weighted(p):
        a = psi.amplitude(p)
        dens = np.einsum("ni,ni->n", a, a.conj()).real
        return dens[:, None] * p

    values, errors = integrate_components(weighted, spec)
    return values.real, float(np.max(errors))
