"""Four-vector algebra, Lorentz boosts/rotations and exact spin-1/2 Wigner rotations.

Sign convention, fixed here and used everywhere in the package: a
``LorentzElement`` acts *actively* on momenta.  ``LorentzElement.boost(e, a)``
maps the rest four-momentum ``(m, 0)`` to ``(m cosh a, m sinh a * e)``, its
SL(2,C) spinor image is ``exp(+a sigma.e / 2)``, and a rotation by ``theta``
about ``e`` maps to ``exp(-i theta sigma.e / 2)``.  With the Wigner matrix
built as ``D(L, q) = H(Lq)^-1 A(L) H(q)`` (``H`` the standard boost taking the
rest momentum to ``q``), this choice reproduces the closed-form x-boost
amplitudes of :func:`explicit_boost_x` with positive ``cosh(a/2)`` and
``sinh(a/2)`` coefficients, which is the positivity structure the rest of the
code and the tests rely on.

Natural units (c = 1) throughout; masses, momenta and widths share one unit.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "PAULI",
    "AXIS_VECTORS",
    "FourMomentum",
    "LorentzElement",
    "WignerMatrix",
    "boost_momentum",
    "standard_boost_sl2",
    "wigner_rotation",
    "wigner_rotation_batch",
    "explicit_boost_x",
]

PAULI = np.array(
    [
        [[0.0, 1.0], [1.0, 0.0]],
        [[0.0, -1.0j], [1.0j, 0.0]],
        [[1.0, 0.0], [0.0, -1.0]],
    ],
    dtype=complex,
)

AXIS_VECTORS = {
    "x": np.array([1.0, 0.0, 0.0]),
    "y": np.array([0.0, 1.0, 0.0]),
    "z": np.array([0.0, 0.0, 1.0]),
}

def _unit_axis(axis) -> np.ndarray:
    if isinstance(axis, str):
        try:
            return AXIS_VECTORS[axis].copy()
        except KeyError:
            raise ValueError(f"unknown axis name {axis!r}; use 'x', 'y' or 'z'") from None
    e = np.asarray(axis, dtype=float).reshape(3)
    n = np.linalg.norm(e)
    if n < 1e-12:
        raise ValueError("axis vector must be non-zero")
    return e / n


def _sigma_dot(v: np.ndarray) -> np.ndarray:
    """sigma . v for a batch of 3-vectors, shape (N, 3) -> (N, 2, 2)."""
    v = np.asarray(v, dtype=float)
    out = np.empty(v.shape[:-1] + (2, 2), dtype=complex)
    out[..., 0, 0] = v[..., 2]
    out[..., 0, 1] = v[..., 0] - 1j * v[..., 1]
    out[..., 1, 0] = v[..., 0] + 1j * v[..., 1]
    out[..., 1, 1] = -v[..., 2]
    return out


@dataclass(frozen=True, eq=False)
class FourMomentum:
    """On-shell four-momentum: energy is always derived from the mass shell."""

    m: float
    p: np.ndarray

    def __post_init__(self):
        if not self.m > 0:
            raise ValueError(f"mass must be positive, got {self.m}")
        object.__setattr__(self, "p", np.asarray(self.p, dtype=float).reshape(3))

    @property
    def p0(self) -> float:
        return float(np.sqrt(self.m * self.m + self.p @ self.p))

    @property
    def four(self) -> np.ndarray:
        """(p0, px, py, pz) as a plain array."""
        return np.concatenate(([self.p0], self.p))

    def __repr__(self) -> str:
        return f"FourMomentum(m={self.m!r}, p={self.p.tolist()!r})"


@dataclass(frozen=True, eq=False)
class LorentzElement:
    """A proper orthochronous Lorentz transformation: boost, rotation or composite.

    Instances are immutable; the 4x4 vector representation and the 2x2
    SL(2,C) spinor representation are computed at construction.  Use the
    classmethod constructors rather than ``__init__``.
    """

    kind: str
    axis: np.ndarray | None = None
    parameter: float = 0.0
    factors: tuple["LorentzElement", ...] = ()
    matrix4: np.ndarray = field(init=False, repr=False)
    sl2c: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.kind == "identity":
            m4, a = np.eye(4), np.eye(2, dtype=complex)
        elif self.kind == "boost":
            e, alpha = self.axis, self.parameter
            ch, sh = np.cosh(alpha), np.sinh(alpha)
            m4 = np.eye(4)
            m4[0, 0] = ch
            m4[0, 1:] = sh * e
            m4[1:, 0] = sh * e
            m4[1:, 1:] += (ch - 1.0) * np.outer(e, e)
            se = _sigma_dot(e)
            a = np.cosh(alpha / 2) * np.eye(2) + np.sinh(alpha / 2) * se
        elif self.kind == "rotation":
            e, theta = self.axis, self.parameter
            k = np.array([[0, -e[2], e[1]], [e[2], 0, -e[0]], [-e[1], e[0], 0]])
            m4 = np.eye(4)
            m4[1:, 1:] += np.sin(theta) * k + (1 - np.cos(theta)) * (k @ k)
            se = _sigma_dot(e)
            a = np.cos(theta / 2) * np.eye(2) - 1j * np.sin(theta / 2) * se
        elif self.kind == "composite":
            if len(self.factors) < 2:
                raise ValueError("composite needs at least two factors")
            m4, a = np.eye(4), np.eye(2, dtype=complex)
            for f in self.factors:
                m4 = m4 @ f.matrix4
                a = a @ f.sl2c
        else:
            raise ValueError(f"unknown LorentzElement kind {self.kind!r}")
        object.__setattr__(self, "matrix4", m4)
        object.__setattr__(self, "sl2c", a)

    # -- constructors ------------------------------------------------------

    @classmethod
    def identity(cls) -> "LorentzElement":
        return cls(kind="identity")

    @classmethod
    def boost(cls, axis, rapidity: float) -> "LorentzElement":
        """Pure boost with the given rapidity along ``axis`` ('x'/'y'/'z' or 3-vector)."""
        if rapidity == 0.0:
            return cls.identity()
        return cls(kind="boost", axis=_unit_axis(axis), parameter=float(rapidity))

    @classmethod
    def boost_from_vector(cls, v) -> "LorentzElement":
        """Pure boost whose rapidity vector is ``v`` (identity for ``v = 0``)."""
        v = np.asarray(v, dtype=float).reshape(3)
        r = np.linalg.norm(v)
        if r < 1e-15:
            return cls.identity()
        return cls.boost(v / r, r)

    @classmethod
    def rotation(cls, axis, angle: float) -> "LorentzElement":
        """Spatial rotation by ``angle`` (radians, right-handed) about ``axis``."""
        if angle == 0.0:
            return cls.identity()
        return cls(kind="rotation", axis=_unit_axis(axis), parameter=float(angle))

    @classmethod
    def compose(cls, *elements: "LorentzElement") -> "LorentzElement":
        """Composite applying the right-most element first (matrix order)."""
        flat: list[LorentzElement] = []
        for el in elements:
            if el.kind == "identity":
                continue
            if el.kind == "composite":
                flat.extend(el.factors)
            else:
                flat.append(el)
        if not flat:
            return cls.identity()
        if len(flat) == 1:
            return flat[0]
        return cls(kind="composite", factors=tuple(flat))

    def __matmul__(self, other: "LorentzElement") -> "LorentzElement":
        return LorentzElement.compose(self, other)

    # -- accessors ---------------------------------------------------------

    @property
    def rapidity(self) -> float:
        if self.kind == "boost":
            return self.parameter
        if self.kind == "identity":
            return 0.0
        raise ValueError(f"rapidity undefined for kind {self.kind!r}")

    @property
    def beta(self) -> float:
        return float(np.tanh(self.rapidity))

    @property
    def gamma(self) -> float:
        return float(np.cosh(self.rapidity))

    @property
    def rapidity_vector(self) -> np.ndarray:
        if self.kind == "identity":
            return np.zeros(3)
        if self.kind == "boost":
            return self.parameter * self.axis
        raise ValueError(f"rapidity vector undefined for kind {self.kind!r}")

    def inverse(self) -> "LorentzElement":
        if self.kind == "identity":
            return self
        if self.kind in ("boost", "rotation"):
            return LorentzElement(kind=self.kind, axis=self.axis, parameter=-self.parameter)
        return LorentzElement.compose(*(f.inverse() for f in reversed(self.factors)))


@dataclass(frozen=True, eq=False)
class WignerMatrix:
    """A 2x2 special-unitary spin rotation; validated at construction."""

    matrix: np.ndarray

    _TOL = 1e-12

    def __post_init__(self):
        d = np.asarray(self.matrix, dtype=complex).reshape(2, 2)
        object.__setattr__(self, "matrix", d)
        unitarity = np.max(np.abs(d.conj().T @ d - np.eye(2)))
        det_dev = abs(np.linalg.det(d) - 1.0)
        if unitarity > self._TOL or det_dev > self._TOL:
            raise ValueError(
                f"matrix is not special-unitary: |D^H D - I| = {unitarity:.3e}, "
                f"|det - 1| = {det_dev:.3e}"
            )

    def __matmul__(self, other):
        rhs = other.matrix if isinstance(other, WignerMatrix) else other
        return WignerMatrix(self.matrix @ rhs)


def boost_momentum(element: LorentzElement, q: FourMomentum) -> FourMomentum:
    """Apply a Lorentz element to an on-shell momentum.

    The result is re-projected onto the mass shell (same mass); the
    recomputed energy agrees with the matrix-transformed one to rounding.
    """
    transformed = element.matrix4 @ q.four
    return FourMomentum(q.m, transformed[1:])


def standard_boost_sl2(q: FourMomentum) -> np.ndarray:
    """Hermitian positive SL(2,C) boost taking the rest momentum to ``q``.

    Closed form ``(q0 + m + sigma.q) / sqrt(2 m (q0 + m))``; unit determinant.
    """
    q0, m = q.p0, q.m
    return ((q0 + m) * np.eye(2) + _sigma_dot(q.p)) / np.sqrt(2 * m * (q0 + m))


def wigner_rotation(element: LorentzElement, q: FourMomentum) -> WignerMatrix:
    """Spin-1/2 Wigner rotation accompanying ``element`` acting on momentum ``q``.

    Built as the little-group element ``H(Lq)^-1 A(L) H(q)``: special-unitary
    for any proper element, the identity when ``q`` is at rest and ``element``
    a pure boost, and equal to the spin-1/2 rotation matrix (independent of
    ``q``) when ``element`` is a pure rotation.
    """
    p = boost_momentum(element, q)
    hq = standard_boost_sl2(q)
    hp_inv = ((p.p0 + q.m) * np.eye(2) - _sigma_dot(p.p)) / np.sqrt(2 * q.m * (p.p0 + q.m))
    return WignerMatrix(hp_inv @ element.sl2c @ hq)


def _wigner_components(element: LorentzElement, m: float, p3: np.ndarray):
    """Hot path behind :func:`wigner_rotation_batch`: 2x2 algebra unrolled.

    Returns ``(q3, q0, p0, d00, d01, d10, d11)`` with the Wigner matrix given
    componentwise; avoids stacked-matrix temporaries on large node batches.
    """
    p3 = np.asarray(p3, dtype=float).reshape(-1, 3)
    p0 = np.sqrt(m * m + np.einsum("ni,ni->n", p3, p3))
    minv = element.inverse().matrix4
    q3 = p0[:, None] * minv[1:, 0] + p3 @ minv[1:, 1:].T
    # energy recomputed on-shell; the matrix product drifts at rounding level
    q0 = np.sqrt(m * m + np.einsum("ni,ni->n", q3, q3))

    a00, a01 = element.sl2c[0]
    a10, a11 = element.sl2c[1]
    qx, qy, qz = q3[:, 0], q3[:, 1], q3[:, 2]
    px, py, pz = p3[:, 0], p3[:, 1], p3[:, 2]
    q_up, q_dn = qx + 1j * qy, qx - 1j * qy
    p_up, p_dn = px + 1j * py, px - 1j * py
    eq, ep = q0 + m, p0 + m

    # X = A ((q0 + m) I + sigma.q)
    x00 = eq * a00 + a00 * qz + a01 * q_up
    x01 = eq * a01 + a00 * q_dn - a01 * qz
    x10 = eq * a10 + a10 * qz + a11 * q_up
    x11 = eq * a11 + a10 * q_dn - a11 * qz
    # D = ((p0 + m) I - sigma.p) X / sqrt(4 m^2 (q0 + m)(p0 + m))
    inv_denom = 1.0 / (2.0 * m * np.sqrt(eq * ep))
    d00 = (ep * x00 - (pz * x00 + p_dn * x10)) * inv_denom
    d01 = (ep * x01 - (pz * x01 + p_dn * x11)) * inv_denom
    d10 = (ep * x10 - (p_up * x00 - pz * x10)) * inv_denom
    d11 = (ep * x11 - (p_up * x01 - pz * x11)) * inv_denom
    return q3, q0, p0, d00, d01, d10, d11


def wigner_rotation_batch(
    element: LorentzElement, m: float, p3: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized Wigner data for amplitudes evaluated at new-frame momenta.

    For each row of ``p3`` (shape ``(N, 3)``) returns the original-frame
    momentum ``q3``, its energy ``q0``, the new-frame energy ``p0`` and the
    Wigner matrix ``D(element, q)``, shapes ``(N,3), (N,), (N,), (N,2,2)``.
    """
    q3, q0, p0, d00, d01, d10, d11 = _wigner_components(element, m, p3)
    d = np.empty(q0.shape + (2, 2), dtype=complex)
    d[:, 0, 0], d[:, 0, 1] = d00, d01
    d[:, 1, 0], d[:, 1, 1] = d10, d11
    return q3, q0, p0, d


def explicit_boost_x(
    alpha: float, q: FourMomentum, a1: complex
) -> tuple[complex, complex, float]:
    """Closed-form amplitudes for an x-boost of a spin-up state, plus Jacobian.

    For a state with upper amplitude ``a1`` at original-frame momentum ``q``
    (lower amplitude zero), a boost of rapidity ``alpha`` along x produces, at
    the transformed momentum ``p``::

        b1 = K [C (q0 + m) + S (qx + i qy)] a1
        b2 = K  S  qz  a1

    with ``C = cosh(alpha/2)``, ``S = sinh(alpha/2)`` and
    ``K = [q0 / (p0 (q0 + m)(p0 + m))]^(1/2)``.  The measure factor
    ``sqrt(q0/p0)`` is returned separately so callers can split the result
    into Jacobian x spin-rotation factors.  Serves as the independent oracle
    for :func:`wigner_rotation`.
    """
    m, q0 = q.m, q.p0
    p = boost_momentum(LorentzElement.boost("x", alpha), q)
    p0 = p.p0
    c, s = np.cosh(alpha / 2), np.sinh(alpha / 2)
    k = np.sqrt(q0 / (p0 * (q0 + m) * (p0 + m)))
    b1 = k * (c * (q0 + m) + s * (q.p[0] + 1j * q.p[1])) * a1
    b2 = k * s * q.p[2] * a1
    return complex(b1), complex(b2), float(np.sqrt(q0 / p0))
