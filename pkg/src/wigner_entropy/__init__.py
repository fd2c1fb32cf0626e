"""Spin entropy of relativistic wave packets.

Represents a free spin-1/2 particle as a normalizable momentum-space spinor
packet, boosts it between Lorentz frames with exact spin-1/2 Wigner
rotations, and reduces it to a 2x2 spin density matrix whose von Neumann
entropy turns out to depend on the frame: the reduced spin state has no
transformation law of its own.
"""

from .analytics import LeadingOrder, convergence_order, leading_order
from .exceptions import NonConvergentError, NotNormalizedError
from .framesearch import FrameSearchResult, min_entropy_frame, rest_frame
from .kinematics import (
    FourMomentum,
    LorentzElement,
    WignerMatrix,
    boost_momentum,
    explicit_boost_x,
    standard_boost_sl2,
    wigner_rotation,
)
from .quadrature import QuadratureSpec, default_spec, integrate
from .spinstate import (
    EntropyReport,
    SpinDensity,
    eigen_entropy_crosscheck,
    ensemble_reduced,
    entropy,
    reduced_density,
)
from .transform import boost_ensemble, boost_state
from .wavepacket import Ensemble, SpinorPacket, gaussian_packet, mean_momentum, norm

__version__ = "0.1.0"

__all__ = [
    "FourMomentum",
    "LorentzElement",
    "WignerMatrix",
    "boost_momentum",
    "standard_boost_sl2",
    "wigner_rotation",
    "explicit_boost_x",
    "SpinorPacket",
    "Ensemble",
    "gaussian_packet",
    "norm",
    "mean_momentum",
    "boost_state",
    "boost_ensemble",
    "QuadratureSpec",
    "integrate",
    "default_spec",
    "SpinDensity",
    "EntropyReport",
    "reduced_density",
    "entropy",
    "ensemble_reduced",
    "eigen_entropy_crosscheck",
    "LeadingOrder",
    "leading_order",
    "convergence_order",
    "FrameSearchResult",
    "rest_frame",
    "min_entropy_frame",
    "NonConvergentError",
    "NotNormalizedError",
    "__version__",
]
