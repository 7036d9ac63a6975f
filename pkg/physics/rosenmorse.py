# physics/rosenmorse.py
# Potential, wavenumber -> channel parameter maps, scattering states and the bound spectrum.

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Union

import numpy as np

from numerics.errors import DomainError, ParameterError, ThresholdError, ZeroMomentumError
from numerics.genleg import X_SWITCH, ChannelParams, Regime, eval_D_tanh, eval_D_tanh_dx
from numerics.specfun import SeriesControl
from utils.logger import get_logger

logger = get_logger(__name__)

ArrayLike = Union[float, np.ndarray]

# ====== CONSTANTS ======
K_MIN = 1e-6            # |k| below this is rejected
THRESHOLD_BAND = 1e-6   # half-width of the exclusion band around |k| = 2 sqrt(beta)


@dataclass(frozen=True)
class RMParams:
    """V(x) = -alpha(alpha+1) sech^2 x + 2 beta tanh x (hbar = 2m = 1).

    beta < 0 is the mirror image x -> -x, k -> -k of |beta| and is not accepted here.
    """
    alpha: float
    beta: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "beta", float(self.beta))
        if not self.alpha > -0.5:
            raise ParameterError(f"alpha must be > -1/2, got {self.alpha}")
        if not self.beta >= 0.0:
            raise ParameterError(
                f"beta must be >= 0, got {self.beta}; mirror the problem with x -> -x, k -> -k"
            )

    @property
    def threshold(self) -> float:
        """|k| at which E = 2 beta."""
        return 2.0 * math.sqrt(self.beta)


@dataclass(frozen=True)
class BoundState:
    n: int
    energy: float
    mu: float
    eta: float

    def channel(self, alpha: float) -> ChannelParams:
        return ChannelParams(self.mu, self.eta, alpha, Regime.BOUND)


# ====== POTENTIAL AND ENERGY ======
def potential(p: RMParams, x: ArrayLike):
    x = np.asarray(x, dtype=float)
    sech = 1.0 / np.cosh(x)
    v = -p.alpha * (p.alpha + 1.0) * sech * sech + 2.0 * p.beta * np.tanh(x)
    return float(v) if v.ndim == 0 else v


def energy_of_k(beta: float, k: float) -> float:
    if k == 0:
        raise DomainError("energy_of_k is undefined at k = 0")
    return -2.0 * beta + k * k


def regime_of_energy(beta: float, energy: float) -> Regime:
    if energy < -2.0 * beta:
        return Regime.BOUND
    if energy < 2.0 * beta:
        return Regime.BELOW_BARRIER
    return Regime.ABOVE_BARRIER


def check_wavenumber(p: RMParams, k: float, *, k_min: float = K_MIN, band: float = THRESHOLD_BAND) -> None:
    """Raise when k falls in an excluded band (zero momentum or threshold)."""
    if abs(k) <= k_min:
        raise ZeroMomentumError(f"|k| = {abs(k):.3g} <= k_min = {k_min:g}")
    if abs(abs(k) - p.threshold) <= band:
        raise ThresholdError(f"|k| = {abs(k):.9g} within {band:g} of the threshold {p.threshold:.9g}")


def params_from_k(p: RMParams, k: float) -> ChannelParams:
    """Channel parameters of the scattering state with wavenumber k.

    The +inf mode is e^{(mu+eta)x}: decaying below the barrier and
    e^{i sgn(k) sqrt(k^2-4 beta) x} above it; mu - eta = ik always.
    """
    k = float(k)
    check_wavenumber(p, k)
    k2, four_beta = k * k, 4.0 * p.beta
    if k2 < four_beta:
        r = math.sqrt(four_beta - k2)
        mu = complex(-r / 2.0, k / 2.0)
        return ChannelParams(mu, mu.conjugate(), p.alpha, Regime.BELOW_BARRIER)

    q = math.copysign(math.sqrt(k2 - four_beta), k)
    mu = complex(0.0, (q + k) / 2.0)
    eta = complex(0.0, (q - k) / 2.0)
    return ChannelParams(mu, eta, p.alpha, Regime.ABOVE_BARRIER)


# ====== WAVEFUNCTIONS ======
def scattering_state(p: RMParams, k: float, x: ArrayLike, ctl: Optional[SeriesControl] = None,
                     *, x_switch: float = X_SWITCH):
    """psi_k(x) = D^{mu,eta}_alpha(tanh x)."""
    return eval_D_tanh(params_from_k(p, k), x, ctl, x_switch=x_switch)


def bound_state_wavefunction(p: RMParams, state: BoundState, x: ArrayLike,
                             ctl: Optional[SeriesControl] = None, *, x_switch: float = X_SWITCH):
    """Unnormalized bound-state eigenfunction."""
    return eval_D_tanh(state.channel(p.alpha), x, ctl, x_switch=x_switch)


def schrodinger_residual(p: RMParams, k: float, x: ArrayLike, *, h: float = 1e-4,
                         ctl: Optional[SeriesControl] = None, x_switch: float = X_SWITCH) -> np.ndarray:
    """Scaled residual |psi'' + Q psi| / (|psi''| + |Q psi| + sqrt|Q| |psi'|), Q = E - V.

    psi'' is a central difference of the analytic first derivative. The
    sqrt|Q| |psi'| term keeps the scale finite at nodes of standing waves.
    """
    xx = np.atleast_1d(np.asarray(x, dtype=float))
    ch = params_from_k(p, k)
    psi = eval_D_tanh(ch, xx, ctl, x_switch=x_switch)
    dpsi = eval_D_tanh_dx(ch, xx, ctl, x_switch=x_switch)
    d2 = (eval_D_tanh_dx(ch, xx + h, ctl, x_switch=x_switch)
          - eval_D_tanh_dx(ch, xx - h, ctl, x_switch=x_switch)) / (2.0 * h)
    q = energy_of_k(p.beta, k) - potential(p, xx)
    num = np.abs(d2 + q * psi)
    den = np.abs(d2) + np.abs(q * psi) + np.sqrt(np.abs(q)) * np.abs(dpsi)
    return num / np.where(den > 0.0, den, 1.0)


# ====== BOUND SPECTRUM ======
def bound_spectrum(p: RMParams) -> List[BoundState]:
    """States from the pole condition eta = n - alpha, mu = -beta/(alpha - n).

    Kept when n < alpha and (alpha - n)^2 > beta; ascending n.
    """
    states: List[BoundState] = []
    n = 0
    while n < p.alpha:
        d = p.alpha - n
        if d * d > p.beta:
            mu = -p.beta / d
            eta = float(n) - p.alpha
            states.append(BoundState(n=n, energy=-(d * d) - (p.beta * p.beta) / (d * d), mu=mu, eta=eta))
        n += 1
    logger.info("Bound spectrum: alpha=%.6g beta=%.6g -> %d state(s)", p.alpha, p.beta, len(states))
    return states
