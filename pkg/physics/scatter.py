# physics/scatter.py
# Closed-form reflection/transmission coefficients and asymptotic amplitude ratios.

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from numerics.genleg import Regime
from numerics.specfun import gamma_ratio
from physics.rosenmorse import RMParams, check_wavenumber, params_from_k
from utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class ScatterResult:
    k: float
    R: float
    T: float
    B_over_A: complex
    C_over_A: complex

    @property
    def unitarity_residual(self) -> float:
        return abs(self.R + self.T - 1.0)


# ====== AMPLITUDE RATIOS ======
def amplitude_ratios(p: RMParams, k: float) -> Tuple[complex, complex]:
    """(B/A, C/A) as gamma ratios, in log space.

    B/A = G(mu-eta) G(1-mu+nu) G(-mu-nu) / (G(-nu-eta) G(nu+1-eta) G(-mu+eta))
    C/A = G(1-mu+nu) G(-mu-nu) / (G(1-mu-eta) G(-mu+eta))
    """
    ch = params_from_k(p, k)
    mu, eta, nu = ch.mu, ch.eta, ch.nu
    b_over_a = gamma_ratio(
        [mu - eta, 1 - mu + nu, -mu - nu],
        [-nu - eta, nu + 1 - eta, -mu + eta],
        cancel=((2, 2),),
        num_labels=("Gamma(mu-eta)", "Gamma(1-mu+nu)", "Gamma(-mu-nu)"),
    )
    c_over_a = gamma_ratio(
        [1 - mu + nu, -mu - nu],
        [1 - mu - eta, -mu + eta],
        cancel=((0, 0), (1, 1)),
        num_labels=("Gamma(1-mu+nu)", "Gamma(-mu-nu)"),
    )
    return b_over_a, c_over_a


# ====== COEFFICIENTS ======
def scaled_terms(p: RMParams, k: float):
    """Shared pieces of R and T with the common e^{pi(|k|+q)} growth divided out.

    Returns (q, numerator of R, numerator of T, common denominator).
    """
    ak = abs(k)
    q = math.sqrt(ak * ak - 4.0 * p.beta)
    s2 = math.sin(math.pi * p.alpha) ** 2
    b = math.pi * (ak + q) / 2.0
    a = math.pi * (ak - q) / 2.0
    em2b = math.exp(-2.0 * b)
    den = 4.0 * s2 * em2b + math.expm1(-2.0 * b) ** 2
    r_num = 4.0 * s2 * em2b + math.exp(2.0 * (a - b)) * math.expm1(-2.0 * a) ** 2
    t_num = math.expm1(-2.0 * math.pi * ak) * math.expm1(-2.0 * math.pi * q)
    return q, r_num, t_num, den


def reflection(p: RMParams, k: float) -> float:
    """R = [sin^2 pi alpha + sinh^2(pi(|k|-q)/2)] / [sin^2 pi alpha + sinh^2(pi(|k|+q)/2)]; 1 below barrier."""
    check_wavenumber(p, k)
    if k * k < 4.0 * p.beta:
        return 1.0
    _, r_num, _, den = scaled_terms(p, k)
    return r_num / den


def transmission(p: RMParams, k: float) -> float:
    """T = sinh(pi|k|) sinh(pi q) / [sin^2 pi alpha + sinh^2(pi(|k|+q)/2)]; 0 below barrier."""
    check_wavenumber(p, k)
    if k * k < 4.0 * p.beta:
        return 0.0
    _, _, t_num, den = scaled_terms(p, k)
    return t_num / den


def flux_factor(p: RMParams, k: float) -> float:
    """q/|k|, the ratio of outgoing to incoming group velocities (0 below barrier)."""
    if k * k < 4.0 * p.beta:
        return 0.0
    return math.sqrt(k * k - 4.0 * p.beta) / abs(k)


def scatter(p: RMParams, k: float) -> ScatterResult:
    """R, T and amplitude ratios at one wavenumber."""
    b_over_a, c_over_a = amplitude_ratios(p, k)
    res = ScatterResult(k=float(k), R=reflection(p, k), T=transmission(p, k),
                        B_over_A=b_over_a, C_over_A=c_over_a)
    regime = params_from_k(p, k).regime
    if regime is Regime.ABOVE_BARRIER and res.unitarity_residual > 1e-10:
        logger.warning("Scatter: k=%.6g unitarity residual %.3e", k, res.unitarity_residual)
    logger.debug("Scatter: k=%.6g R=%.6e T=%.6e |B/A|=%.6e", k, res.R, res.T, float(np.abs(b_over_a)))
    return res
