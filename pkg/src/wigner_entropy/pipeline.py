"""Orchestration behind the HTTP service and the CLI.

Plain-dict in, plain-dict out: construct a packet, optionally boost it,
reduce, compare against the leading-order prediction, search frames.  All
heavy lifting lives in the core modules; this layer only wires them
together and shapes reports.
"""

from __future__ import annotations

from .analytics import leading_order
from .framesearch import min_entropy_frame, rest_frame
from .kinematics import LorentzElement
from .quadrature import DEFAULT_NODES, default_spec
from .spinstate import entropy, reduced_density
from .transform import boost_state
from .wavepacket import gaussian_packet

__all__ = ["entropy_point", "scan_rows", "frame_search", "SCAN_COLUMNS"]

SCAN_COLUMNS = (
    "w", "m", "alpha", "t",
    "S_numeric", "S_leading", "nz_numeric", "nz_leading", "quad_error",
)


def _prepare(mass, width, alpha, axis, chi, nodes):
    psi = gaussian_packet(mass, width, chi=(1.0, 0.0) if chi is None else chi)
    boosted = boost_state(LorentzElement.boost(axis, alpha), psi)
    spec = default_spec(boosted, nodes_per_axis=nodes)
    return boosted, spec


def entropy_point(
    mass: float,
    width: float,
    alpha: float,
    axis: str = "x",
    chi=None,
    nodes: int | None = None,
) -> dict:
    """Entropy of a boosted Gaussian packet plus its leading-order comparison."""
    boosted, spec = _prepare(mass, width, alpha, axis, chi, nodes)
    tau = reduced_density(boosted, spec)
    report = entropy(tau)
    lo = leading_order(width, mass, alpha)
    s_leading = lo.s_lead
    deviation = (report.entropy - s_leading) / s_leading if s_leading > 0 else 0.0
    return {
        "w": width,
        "m": mass,
        "alpha": alpha,
        "axis": axis,
        "t": lo.t,
        "s_numeric": report.entropy,
        "s_leading": s_leading,
        "nz_numeric": float(tau.bloch[2]),
        "nz_leading": lo.n_z_lead,
        "relative_deviation": deviation,
        "n": [float(x) for x in tau.bloch],
        "eigenvalues": list(report.eigenvalues),
        "bloch_norm": report.bloch_norm,
        "quadrature": {
            "nodes_per_axis": spec.nodes_per_axis,
            "error_estimate": report.quadrature_error,
            "tolerance": spec.tolerance,
        },
    }


def scan_rows(
    mass: float,
    widths: list[float],
    alphas: list[float],
    axis: str = "x",
    nodes: int | None = None,
) -> list[dict]:
    """Grid sweep; row order is deterministic (widths outer, alphas inner)."""
    rows = []
    for w in widths:
        for alpha in alphas:
            point = entropy_point(mass, w, alpha, axis=axis, nodes=nodes)
            rows.append(
                {
                    "w": w,
                    "m": mass,
                    "alpha": alpha,
                    "t": point["t"],
                    "s_numeric": point["s_numeric"],
                    "s_leading": point["s_leading"],
                    "nz_numeric": point["nz_numeric"],
                    "nz_leading": point["nz_leading"],
                    "quad_error": point["quadrature"]["error_estimate"],
                }
            )
    return rows


def frame_search(
    kind: str,
    mass: float,
    width: float,
    boost_alpha: float = 0.0,
    boost_axis: str = "x",
    chi=None,
    nodes: int | None = None,
    max_evaluations: int = 500,
    max_iterations: int = 50,
) -> dict:
    """Run a rest-frame or minimum-entropy frame search on a (boosted) packet."""
    psi = gaussian_packet(mass, width, chi=(1.0, 0.0) if chi is None else chi)
    state = boost_state(LorentzElement.boost(boost_axis, boost_alpha), psi)
    if kind == "rest":
        result = rest_frame(state, nodes_per_axis=nodes, max_iterations=max_iterations)
    elif kind == "min-entropy":
        result = min_entropy_frame(state, nodes_per_axis=nodes, max_evaluations=max_evaluations)
    else:
        raise ValueError(f"unknown frame search kind {kind!r}")
    return {
        "rapidity": [float(x) for x in result.rapidity],
        "s_min": float(result.s_min),
        "residual_mean_momentum": [float(x) for x in result.residual_mean_momentum],
        "evaluations": int(result.evaluations),
        "converged": bool(result.converged),
    }


def resolve_nodes(explicit: int | None, env_value: str | None) -> int:
    """Node count precedence: explicit request, then environment, then default."""
    if explicit is not None:
        return explicit
    if env_value:
        return int(env_value)
    return DEFAULT_NODES
