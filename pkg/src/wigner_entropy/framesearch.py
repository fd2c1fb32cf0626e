"""Searches over Lorentz frames: the packet rest frame and the entropy minimum.

Both searches range over pure boosts only, parametrized by a rapidity
3-vector.  Rotations are excluded deliberately: they conjugate the reduced
spin state unitarily, leaving its eigenvalues and entropy fixed, so they
cannot improve either objective.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .kinematics import LorentzElement
from .quadrature import default_spec
from .spinstate import entropy, reduced_density
from .transform import rebase_boost
from .wavepacket import SpinorPacket, mean_momentum

__all__ = ["FrameSearchResult", "rest_frame", "min_entropy_frame"]


@dataclass(frozen=True, eq=False)
class FrameSearchResult:
    """Outcome of a frame search; ``converged`` means the termination criterion was met."""

    boost: LorentzElement
    rapidity: np.ndarray
    s_min: float
    residual_mean_momentum: np.ndarray
    evaluations: int
    converged: bool


def _entropy_at(v: np.ndarray, psi: SpinorPacket, nodes_per_axis) -> float:
    boosted = rebase_boost(LorentzElement.boost_from_vector(v), psi)
    tau = reduced_density(boosted, default_spec(boosted, nodes_per_axis=nodes_per_axis))
    return entropy(tau).entropy


def rest_frame(
    psi: SpinorPacket,
    nodes_per_axis: int | None = None,
    tolerance_factor: float = 1e-6,
    max_iterations: int = 50,
) -> FrameSearchResult:
    """Find the pure boost after which the packet's mean momentum vanishes.

    Damped fixed-point iteration on the rapidity vector: each step boosts by
    ``-arcsinh(|<p>| / m)`` along the current mean momentum, with the step
    halved whenever the residual fails to shrink.  Converged when
    ``|<p>|`` drops below ``tolerance_factor`` times the smallest component
    of the packet's spread hint.
    """
    reference = tolerance_factor * float(np.min(psi.scale_hint))
    v = np.zeros(3)
    damping = 1.0
    evaluations = 0
    converged = False

    def residual(vec):
        boosted = rebase_boost(LorentzElement.boost_from_vector(vec), psi)
        mp, _ = mean_momentum(boosted, default_spec(boosted, nodes_per_axis=nodes_per_axis))
        return mp

    mp = residual(v)
    evaluations += 1
    for _ in range(max_iterations):
        r = np.linalg.norm(mp)
        if r <= reference:
            converged = True
            break
        step = -np.arcsinh(r / psi.m) * (mp / r)
        trial = v + damping * step
        mp_trial = residual(trial)
        evaluations += 1
        if np.linalg.norm(mp_trial) < r:
            v, mp = trial, mp_trial
            damping = min(1.0, damping * 1.5)
        else:
            damping *= 0.5
    else:
        converged = np.linalg.norm(mp) <= reference

    element = LorentzElement.boost_from_vector(v)
    s_here = _entropy_at(v, psi, nodes_per_axis)
    return FrameSearchResult(
        boost=element,
        rapidity=v,
        s_min=s_here,
        residual_mean_momentum=mp,
        evaluations=evaluations,
        converged=converged,
    )


def _nelder_mead(f, x0, step, xatol, fatol, budget):
    """Minimal simplex search; returns (x_best, f_best, evaluations, converged).

    Terminates when the simplex diameter drops below ``xatol`` or the value
    spread below ``fatol`` (whichever first), or runs out of budget.  The
    best point never worsens.
    """
    n = len(x0)
    simplex = [np.asarray(x0, dtype=float)]
    for i in range(n):
        vertex = simplex[0].copy()
        vertex[i] += step
        simplex.append(vertex)
    evaluations = 0

    def call(x):
        nonlocal evaluations
        evaluations += 1
        return f(x)

    values = []
    for vertex in simplex:
        if evaluations >= budget:
            return simplex[int(np.argmin(values))] if values else simplex[0], (
                min(values) if values else np.inf
            ), evaluations, False
        values.append(call(vertex))
    values = np.asarray(values, dtype=float)
    simplex = np.asarray(simplex, dtype=float)

    while True:
        order = np.argsort(values, kind="stable")
        simplex, values = simplex[order], values[order]
        diameter = np.max(np.linalg.norm(simplex[1:] - simplex[0], axis=1))
        spread = values[-1] - values[0]
        if diameter < xatol or spread < fatol:
            return simplex[0], float(values[0]), evaluations, True
        if evaluations >= budget:
            return simplex[0], float(values[0]), evaluations, False

        centroid = simplex[:-1].mean(axis=0)
        reflected = centroid + (centroid - simplex[-1])
        f_r = call(reflected)
        if f_r < values[0]:
            if evaluations < budget:
                expanded = centroid + 2.0 * (centroid - simplex[-1])
                f_e = call(expanded)
                if f_e < f_r:
                    simplex[-1], values[-1] = expanded, f_e
                    continue
            simplex[-1], values[-1] = reflected, f_r
        elif f_r < values[-2]:
            simplex[-1], values[-1] = reflected, f_r
        else:
            contracted = centroid + 0.5 * (simplex[-1] - centroid)
            if evaluations >= budget:
                return simplex[0], float(values[0]), evaluations, False
            f_c = call(contracted)
            if f_c < values[-1]:
                simplex[-1], values[-1] = contracted, f_c
            else:
                # shrink toward the best vertex
                for i in range(1, len(simplex)):
                    simplex[i] = simplex[0] + 0.5 * (simplex[i] - simplex[0])
                    if evaluations >= budget:
                        return simplex[0], float(values[0]), evaluations, False
                    values[i] = call(simplex[i])


def min_entropy_frame(
    psi: SpinorPacket,
    nodes_per_axis: int | None = None,
    max_evaluations: int = 500,
    xatol: float = 1e-4,
    fatol: float = 1e-10,
    initial_step: float = 0.25,
) -> FrameSearchResult:
    """Minimize the spin entropy over pure boosts.

    Runs a derivative-free simplex search from two starting points, the
    rest-frame solution and the zero boost, each with its own evaluation
    budget, and keeps the better optimum.  ``converged`` reflects the run
    that produced the returned point.
    """

    def objective(v):
        return _entropy_at(v, psi, nodes_per_axis)

    rest = rest_frame(psi, nodes_per_axis=nodes_per_axis)
    starts = [(rest.rapidity, max(10 * xatol, 0.05))]
    if np.linalg.norm(rest.rapidity) > xatol:
        starts.append((np.zeros(3), initial_step))

    best = None
    total_evals = 0
    for x0, step in starts:
        x, fx, used, ok = _nelder_mead(
            objective, x0, step, xatol=xatol, fatol=fatol, budget=max_evaluations
        )
        total_evals += used
        if best is None or fx < best[1]:
            best = (x, fx, ok)

    v, s_min, converged = best
    element = LorentzElement.boost_from_vector(v)
    boosted = rebase_boost(element, psi)
    mp, _ = mean_momentum(boosted, default_spec(boosted, nodes_per_axis=nodes_per_axis))
    return FrameSearchResult(
        boost=element,
        rapidity=np.asarray(v, dtype=float),
        s_min=float(s_min),
        residual_mean_momentum=mp,
        evaluations=total_evals,
        converged=converged,
    )
