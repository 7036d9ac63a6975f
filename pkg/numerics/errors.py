# numerics/errors.py
# Exception taxonomy shared by the numerical and physical layers.

from __future__ import annotations

from typing import Optional


class RMScatError(Exception):
    """Base class for every error raised by the toolbox."""


class ParameterError(RMScatError, ValueError):
    """A parameter violates a type invariant (alpha <= -1/2, beta < 0, bad tolerances...)."""


class ConfigError(RMScatError):
    """Command-line or settings value rejected before any computation."""


class DomainError(RMScatError, ValueError):
    """Argument outside the open interval an operation is defined on."""


class PoleError(RMScatError):
    """A gamma argument (or hypergeometric c-parameter) sits on the pole lattice.

    `factor` names the offending term, e.g. "Gamma(-mu+eta)"; `argument` is its value.
    """

    def __init__(self, argument: complex, factor: Optional[str] = None) -> None:
        self.argument = complex(argument)
        self.factor = factor or "Gamma(z)"
        super().__init__(f"{self.factor} has a pole at argument {self.argument:.6g}")


class GammaOverflowError(RMScatError, OverflowError):
    """Gamma value not representable in double precision."""


class DegenerateTransformError(RMScatError):
    """c-a-b is (near) an integer, so the 1-z linear transformation is singular."""


class NonConvergenceError(RMScatError):
    """Power series did not reach its tolerance within max_terms."""


class ThresholdError(RMScatError, ValueError):
    """|k| lies inside the exclusion band around the barrier threshold 2*sqrt(beta)."""


class ZeroMomentumError(RMScatError, ValueError):
    """|k| below k_min."""


class PrefactorSingularError(RMScatError, ValueError):
    """Orthogonality window requested at p = +-k where 1/(k^2-p^2) is singular."""


class QuadratureError(RMScatError):
    """Adaptive quadrature failed to reach the requested tolerance."""


class NonDecayingInputError(RMScatError, ValueError):
    """Sampled input does not decay at its grid edges."""


class StepResolutionError(RMScatError, ValueError):
    """Integration step too coarse for the local wavelength."""


class FitConditioningError(RMScatError):
    """Plane-wave amplitude fit is ill conditioned."""
