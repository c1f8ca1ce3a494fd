"""Higher-order amplitude squeezing of fan states.

Fan states are phase-locked superpositions of 2k multi-quantum nonlinear
coherent states.  This package evaluates their ladder moments by direct
series summation, cross-checks them against an explicit truncated Fock-space
reference, and analyses power-N amplitude squeezing: degree, directions,
variances and critical amplitudes, for the ideal field and for trapped-ion,
q-deformed and photon-added nonlinearities.
"""

from .errors import (
    BracketError,
    CutoffTooSmallError,
    FansqueezeError,
    GuardBandError,
    LaguerreZeroError,
    NonConvergenceError,
    NonlinearitySingularError,
)
from .fock import TruncatedFockState, build_fan_state, ladder_moment
from .moments import (
    FanStateSpec,
    MomentValue,
    SeriesControl,
    moment,
    moment_unity,
    norm_constant,
    phase_sum,
)
from .nonlinearity import (
    UNITY,
    DriveAmplitude,
    IonTrap,
    IonTrapDrive,
    NonlinearityModel,
    PhotonAdded,
    QDeformed,
    Unity,
    drive_amplitude,
    f_chain,
    f_value,
    laguerre,
)
from .squeezing import (
    NO_FAMILY,
    PHI1_FAMILY,
    PHI2_FAMILY,
    CriticalAmplitude,
    QuadratureSpec,
    SqueezingReport,
    VarianceValue,
    classify_directions,
    closed_form_squeezing,
    closed_form_threshold,
    commutator_expectation,
    critical_amplitude,
    direction_sets,
    quadrature_variance,
    squeezing_degree,
    squeezing_profile,
)

__version__ = "0.1.0"

__all__ = [
    "BracketError",
    "CriticalAmplitude",
    "CutoffTooSmallError",
    "DriveAmplitude",
    "FanStateSpec",
    "FansqueezeError",
    "GuardBandError",
    "IonTrap",
    "IonTrapDrive",
    "LaguerreZeroError",
    "MomentValue",
    "NO_FAMILY",
    "NonConvergenceError",
    "NonlinearityModel",
    "NonlinearitySingularError",
    "PHI1_FAMILY",
    "PHI2_FAMILY",
    "PhotonAdded",
    "QDeformed",
    "QuadratureSpec",
    "SeriesControl",
    "SqueezingReport",
    "TruncatedFockState",
    "UNITY",
    "Unity",
    "VarianceValue",
    "build_fan_state",
    "classify_directions",
    "closed_form_squeezing",
    "closed_form_threshold",
    "commutator_expectation",
    "critical_amplitude",
    "direction_sets",
    "drive_amplitude",
    "f_chain",
    "f_value",
    "ladder_moment",
    "laguerre",
    "moment",
    "moment_unity",
    "norm_constant",
    "phase_sum",
    "quadrature_variance",
    "squeezing_degree",
    "squeezing_profile",
]
