"""adzeta: zeta-determinants of Dirac Laplacians on stretched product cylinders, mode by mode.

Submodules:
    specfun    Gamma, erfc/erfcx, Hurwitz zeta, incomplete Gamma
    spectrum   tangential spectra, their heat traces and zeta functions
    modes      one-dimensional boundary problems per mode, closed forms and root oracles
    regsum     zeta-regularized aggregation over the tangential spectrum
    cylinder   half-line heat kernels and the cut-off cylinder integrals
    adiabatic  stretching experiments on the circle model
    cli        command line front end
"""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    AdzetaError,
    BracketingFailure,
    ConfigError,
    ContinuationUnavailable,
    NonPositiveEigenvalue,
    OutsideConvergenceStrip,
    PoleAt,
    QuadratureFailure,
    TruncationInsufficient,
    UnsupportedBC,
)
from .kernels import BACKEND  # noqa: E402
from .spectrum import TangentialSpectrum, make_spectrum, preset  # noqa: E402

__all__ = [
    "__version__",
    "BACKEND",
    "TangentialSpectrum",
    "make_spectrum",
    "preset",
    "AdzetaError",
    "BracketingFailure",
    "ConfigError",
    "ContinuationUnavailable",
    "NonPositiveEigenvalue",
    "OutsideConvergenceStrip",
    "PoleAt",
    "QuadratureFailure",
    "TruncationInsufficient",
    "UnsupportedBC",
]
