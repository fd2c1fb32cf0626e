"""Closed-form small-width predictions and convergence-order verification.

For a spin-up Gaussian of momentum width ``w`` boosted with rapidity
``alpha``, the leading behaviour in ``w/m << 1`` is::

    n'_z = 1 - (w tanh(alpha/2) / 2m)^2
    S    = t (1 - ln t),   t = w^2 tanh^2(alpha/2) / 8 m^2

These are the analytic targets the full numerical pipeline is checked
against.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .kinematics import LorentzElement
from .quadrature import default_spec
from .spinstate import reduced_density
from .transform import boost_state
from .wavepacket import gaussian_packet

__all__ = ["LeadingOrder", "leading_order", "convergence_order"]


@dataclass(frozen=True)
class LeadingOrder:
    """Leading-order Bloch z-component and entropy for a boosted Gaussian."""

    w: float
    m: float
    alpha: float

    @property
    def t(self) -> float:
        """Smaller spin eigenvalue to leading order: w^2 tanh^2(alpha/2) / 8m^2."""
        th = np.tanh(self.alpha / 2.0)
        return float((self.w * th) ** 2 / (8.0 * self.m * self.m))

    @property
    def n_z_lead(self) -> float:
        return 1.0 - 2.0 * self.t

    @property
    def s_lead(self) -> float:
        """Entropy t (1 - ln t), with the t -> 0 limit taken by continuity."""
        t = self.t
        if t == 0.0:
            return 0.0
        return float(t * (1.0 - np.log(t)))


def leading_order(w: float, m: float, alpha: float) -> LeadingOrder:
    if not w > 0:
        raise ValueError(f"width must be positive, got {w}")
    if not m > 0:
        raise ValueError(f"mass must be positive, got {m}")
    return LeadingOrder(w=float(w), m=float(m), alpha=float(alpha))


def pipeline_bloch_z(
    w: float, m: float, alpha: float, axis="x", nodes_per_axis: int | None = None
) -> float:
    """n'_z of a boosted spin-up Gaussian from the full numerical pipeline."""
    boosted = boost_state(LorentzElement.boost(axis, alpha), gaussian_packet(m, w))
    tau = reduced_density(boosted, default_spec(boosted, nodes_per_axis=nodes_per_axis))
    return float(tau.bloch[2])


def convergence_order(
    m: float,
    alpha: float,
    widths: Sequence[float],
    nodes_per_axis: int | None = None,
) -> float:
    """Fitted slope of log(1 - n'_z) against log(w) over a width sweep.

    Widths must be strictly decreasing and no larger than 0.1 m, with at
    least three points, so the fit sits in the leading-order regime; the
    expected slope is 2.
    """
    widths = [float(w) for w in widths]
    if len(widths) < 3:
        raise ValueError("need at least three widths for a slope fit")
    if any(b >= a for a, b in zip(widths, widths[1:])):
        raise ValueError("widths must be strictly decreasing")
    if any(w > 0.1 * m for w in widths):
        raise ValueError("widths must satisfy w <= 0.1 m for the leading-order fit")
    deficits = [1.0 - pipeline_bloch_z(w, m, alpha, nodes_per_axis=nodes_per_axis) for w in widths]
    slope, _ = np.polyfit(np.log(widths), np.log(deficits), 1)
    return float(slope)
