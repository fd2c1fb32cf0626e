"""Relativistic transformation of packets and ensembles.

A boosted packet's amplitude at a new-frame momentum ``p`` is obtained by
pulling back to the original-frame momentum ``q``, applying the Wigner spin
rotation and the measure factor::

    b(p) = sqrt(q0 / p0) D(L, q) a(q),      q = L^-1 p

Evaluation is lazy and exact: the amplitude is wrapped, never resampled, so
no interpolation error enters.  Repeated boosts nest wrappers up to a depth
limit, after which the accumulated element is pre-multiplied into a single
wrapper around the original amplitude (mathematically identical, bounded
evaluation cost).
"""

from __future__ import annotations

import numpy as np

from .kinematics import FourMomentum, LorentzElement, _wigner_components
from .wavepacket import Ensemble, SpinorPacket

__all__ = ["boost_state", "boost_ensemble", "FLATTEN_DEPTH"]

FLATTEN_DEPTH = 8


class _BoostedAmplitude:
    """Callable amplitude of a boosted packet: a lazy Wigner-rotated pullback."""

    __slots__ = ("inner", "element", "m", "depth", "base", "total")

    def __init__(self, inner, element, m, depth, base, total):
        self.inner = inner          # amplitude evaluated at pulled-back momenta
        self.element = element      # element applied on top of `inner`
        self.m = m
        self.depth = depth          # nesting depth of _BoostedAmplitude wrappers
        self.base = base            # the original, un-boosted packet
        self.total = total          # composition of every element since `base`

    def __call__(self, p3: np.ndarray) -> np.ndarray:
        q3, q0, p0, d00, d01, d10, d11 = _wigner_components(self.element, self.m, p3)
        a = self.inner(q3)
        a0, a1 = a[:, 0], a[:, 1]
        jac = np.sqrt(q0 / p0)
        out = np.empty_like(a)
        out[:, 0] = jac * (d00 * a0 + d01 * a1)
        out[:, 1] = jac * (d10 * a0 + d11 * a1)
        return out


def _transformed_hints(element: LorentzElement, m, center, scale):
    """Push the node-placement hints through the transformation.

    The center rides along with the on-shell four-momentum; the per-axis
    spread is stretched by the linearization of the on-shell momentum map at
    the center (a pure x-boost maps spread (s,s,s) to (gamma*s, s, s)).
    """
    c4 = FourMomentum(m, center).four
    new_c4 = element.matrix4 @ c4
    jac = element.matrix4[1:, 1:] + np.outer(element.matrix4[1:, 0], center / c4[0])
    new_scale = np.sqrt((jac * jac) @ (scale * scale))
    return new_c4[1:], new_scale


def boost_state(element: LorentzElement, psi: SpinorPacket) -> SpinorPacket:
    """Packet seen from the frame reached by ``element`` (active convention)."""
    amp = psi.amplitude
    if isinstance(amp, _BoostedAmplitude):
        total = LorentzElement.compose(element, amp.total)
        depth = amp.depth + 1
        if depth > FLATTEN_DEPTH:
            return _flattened_boost(total, amp.base)
        new_amp = _BoostedAmplitude(amp, element, psi.m, depth, amp.base, total)
    else:
        new_amp = _BoostedAmplitude(amp, element, psi.m, 1, psi, element)
    center, scale = _transformed_hints(element, psi.m, psi.center_hint, psi.scale_hint)
    return SpinorPacket(m=psi.m, amplitude=new_amp, center_hint=center, scale_hint=scale)


def _flattened_boost(element: LorentzElement, base: SpinorPacket) -> SpinorPacket:
    """Single-wrapper boost of an un-boosted packet by a (composite) element."""
    new_amp = _BoostedAmplitude(base.amplitude, element, base.m, 1, base, element)
    center, scale = _transformed_hints(element, base.m, base.center_hint, base.scale_hint)
    return SpinorPacket(m=base.m, amplitude=new_amp, center_hint=center, scale_hint=scale)


def rebase_boost(element: LorentzElement, psi: SpinorPacket) -> SpinorPacket:
    """Like :func:`boost_state` but pre-multiplies into a single wrapper.

    Identical result up to rounding (the transformation law composes as a
    group action); evaluation cost stays that of one pullback no matter how
    ``psi`` was built.  Used by searches that boost the same packet hundreds
    of times.
    """
    amp = psi.amplitude
    if isinstance(amp, _BoostedAmplitude):
        return _flattened_boost(LorentzElement.compose(element, amp.total), amp.base)
    return _flattened_boost(element, psi)


def boost_ensemble(element: LorentzElement, ensemble: Ensemble) -> Ensemble:
    """Boost every member; weights are untouched."""
    return Ensemble(tuple((c, boost_state(element, psi)) for c, psi in ensemble.members))
