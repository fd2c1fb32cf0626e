"""Deterministic 3-D momentum integration on tensor-product Gauss-Hermite grids.

Integrands are evaluated in batch: an integrand ``f`` receives an ``(N, 3)``
array of momenta (one row per node) and must return an ``(N,)`` or ``(N, k)``
complex array.  Node placement is controlled by a per-axis affine map
``p = center + scale * x``; the error estimate compares the full grid against
the grid with half the nodes per axis.  Summation order is fixed by node
index, so results are bit-identical across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .exceptions import NonConvergentError

__all__ = ["QuadratureSpec", "integrate", "integrate_components", "default_spec"]

SCHEMES = ("gauss-hermite-tensor", "adaptive-refinement")

DEFAULT_NODES = 48
DEFAULT_TOLERANCE = 1e-10

_MIN_NODES = 8
_ADAPTIVE_MAX_DOUBLINGS = 3
_EVAL_CHUNK = 1 << 18


@dataclass(frozen=True, eq=False)
class QuadratureSpec:
    """Node counts and affine node placement for one 3-D integral."""

    nodes_per_axis: int = DEFAULT_NODES
    center: np.ndarray = (0.0, 0.0, 0.0)
    scale: np.ndarray = 1.0
    scheme: str = "gauss-hermite-tensor"
    tolerance: float = DEFAULT_TOLERANCE

    def __post_init__(self):
        if self.nodes_per_axis < _MIN_NODES:
            raise ValueError(f"nodes_per_axis must be >= {_MIN_NODES}, got {self.nodes_per_axis}")
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown scheme {self.scheme!r}; choose from {SCHEMES}")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        center = np.asarray(self.center, dtype=float).reshape(3)
        scale = np.broadcast_to(np.asarray(self.scale, dtype=float), (3,)).copy()
        if np.any(scale <= 0):
            raise ValueError(f"scale must be positive, got {scale.tolist()}")
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "scale", scale)


@lru_cache(maxsize=32)
def _hermite_rule(n: int) -> tuple[np.ndarray, np.ndarray]:
    """1-D Gauss-Hermite nodes and log-weights with the e^{-x^2} factor removed."""
    x, w = np.polynomial.hermite.hermgauss(n)
    return x, np.log(w) + x * x


@lru_cache(maxsize=16)
def _unit_grid(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Unscaled n^3 tensor nodes (M, 3) and weights (M,); cached, treat as read-only."""
    x, lw = _hermite_rule(n)
    pts = np.stack(np.meshgrid(x, x, x, indexing="ij"), axis=-1).reshape(-1, 3)
    logw = (lw[:, None, None] + lw[None, :, None] + lw[None, None, :]).reshape(-1)
    return pts, np.exp(logw)


def _tensor_grid(spec: QuadratureSpec, n: int) -> tuple[np.ndarray, np.ndarray]:
    """All nodes (M, 3) and weights (M,) for an n^3 grid under spec's affine map."""
    pts, weights = _unit_grid(n)
    return spec.center + pts * spec.scale, weights * np.prod(spec.scale)


def _grid_sum(f: Callable, spec: QuadratureSpec, n: int) -> np.ndarray:
    points, weights = _tensor_grid(spec, n)
    if len(points) <= _EVAL_CHUNK:
        values = np.asarray(f(points))
        if values.ndim == 1:
            values = values[:, None]
        return np.einsum("n,nk->k", weights, values)
    total = None
    for start in range(0, len(points), _EVAL_CHUNK):
        chunk = np.asarray(f(points[start : start + _EVAL_CHUNK]))
        if chunk.ndim == 1:
            chunk = chunk[:, None]
        part = np.einsum("n,nk->k", weights[start : start + _EVAL_CHUNK], chunk)
        total = part if total is None else total + part
    return total


def integrate_components(
    f: Callable[[np.ndarray], np.ndarray], spec: QuadratureSpec
) -> tuple[np.ndarray, np.ndarray]:
    """Integrate a vector-valued integrand in one pass over the grid.

    Returns ``(values, error_estimates)`` with one entry per component.
    Raises :class:`NonConvergentError` if any component's estimate exceeds
    ``spec.tolerance * max(1, |value|)``.
    """
    if spec.scheme == "gauss-hermite-tensor":
        value = _grid_sum(f, spec, spec.nodes_per_axis)
        coarse = _grid_sum(f, spec, spec.nodes_per_axis // 2)
        error = np.abs(value - coarse)
    else:
        value, error = _adaptive(f, spec)
    bound = spec.tolerance * np.maximum(1.0, np.abs(value))
    if np.any(error > bound):
        worst = int(np.argmax(error / bound))
        raise NonConvergentError(
            f"integral component {worst} did not converge: "
            f"error estimate {error[worst]:.3e} exceeds "
            f"{spec.tolerance:.1e} * max(1, |value|)",
            value=value,
            error_estimate=error,
            tolerance=spec.tolerance,
        )
    return value, error


def _adaptive(f: Callable, spec: QuadratureSpec) -> tuple[np.ndarray, np.ndarray]:
    """Fallback: double nodes per axis until the increment is below tolerance."""
    n = spec.nodes_per_axis
    value = _grid_sum(f, spec, n)
    for _ in range(_ADAPTIVE_MAX_DOUBLINGS):
        n *= 2
        refined = _grid_sum(f, spec, n)
        error = np.abs(refined - value)
        value = refined
        if np.all(error <= spec.tolerance * np.maximum(1.0, np.abs(value))):
            return value, error
    return value, error


def integrate(
    f: Callable[[np.ndarray], np.ndarray], spec: QuadratureSpec
) -> tuple[complex, float]:
    """Integrate a scalar integrand over R^3; returns (value, error_estimate)."""
    values, errors = integrate_components(f, spec)
    return complex(values[0]), float(errors[0])


def default_spec(packet, nodes_per_axis: int | None = None, tolerance: float | None = None) -> QuadratureSpec:
    """Quadrature spec matched to a packet's center and spread hints."""
    return QuadratureSpec(
        nodes_per_axis=DEFAULT_NODES if nodes_per_axis is None else nodes_per_axis,
        center=packet.center_hint,
        scale=packet.scale_hint,
        tolerance=DEFAULT_TOLERANCE if tolerance is None else tolerance,
    )
