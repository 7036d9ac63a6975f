# oracle/observables.py
# Reflection/transmission, spectral weight and bound energies read off oracle integrations.

from __future__ import annotations

import math
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import brentq

from numerics.errors import FitConditioningError, ParameterError
from oracle.integrator import (
    IntegratorSpec,
    Method,
    Seed,
    check_resolution,
    discrete_wavenumber,
    march,
    match_values,
    oracle_potential,
)
from physics.rosenmorse import RMParams
from utils.logger import get_logger

logger = get_logger(__name__)

MAX_FIT_CONDITION = 1e8
FLUX_GATE = 1e-7
_LN2 = math.log(2.0)


# ====== PLANE-WAVE PROJECTION ======
def fit_plane_waves(x: np.ndarray, psi: np.ndarray, lam: complex) -> Tuple[complex, complex]:
    """Least-squares (A, B) in psi = A e^{lam x} + B e^{-lam x}."""
    M = np.column_stack([np.exp(lam * x), np.exp(-lam * x)])
    cond = float(np.linalg.cond(M))
    if not cond <= MAX_FIT_CONDITION:
        raise FitConditioningError(f"plane-wave fit condition number {cond:.3e} > {MAX_FIT_CONDITION:g}")
    coef, *_ = np.linalg.lstsq(M, psi, rcond=None)
    return complex(coef[0]), complex(coef[1])


def _left_amplitudes(x: np.ndarray, psi: np.ndarray, k: float, spec: IntegratorSpec,
                     fit_wavelengths: float) -> Tuple[complex, complex, complex]:
    """(A, B, lam) on a window of `fit_wavelengths` wavelengths at the left edge."""
    lam = discrete_wavenumber(k * k, spec.step) if spec.method is Method.NUMEROV else 1j * k
    span = fit_wavelengths * 2.0 * math.pi / k
    win = x <= x[0] + span
    if np.count_nonzero(win) < 4:
        raise FitConditioningError(f"fit window [{x[0]:g}, {x[0] + span:g}] holds fewer than 4 nodes")
    A, B = fit_plane_waves(x[win], psi[win], lam)
    return A, B, lam


def _require_above_barrier(p: RMParams, k: float) -> float:
    ak = abs(float(k))
    if not ak * ak > 4.0 * p.beta:
        raise ParameterError(f"k = {k:.6g} is below the barrier (|k| <= {2.0 * math.sqrt(p.beta):.6g})")
    return ak


# ====== REFLECTION / TRANSMISSION ======
def extract_RT(p: RMParams, k: float, spec: Optional[IntegratorSpec] = None,
               fit_wavelengths: float = 4.0) -> Tuple[float, float]:
    """(R, T) from an outgoing seed e^{iqx} at x_max integrated to x_min.

    Numerov amplitudes are converted with the flux the recurrence conserves,
    Im(u_n* u_{n+1}) with u = (1 + h^2 Q/12) psi.
    """
    spec = spec or IntegratorSpec()
    ak = _require_above_barrier(p, k)
    E = ak * ak - 2.0 * p.beta
    check_resolution(p, E, spec)

    x, psi, _, info = march(p, E, spec, Seed.RIGHT_OUTGOING)
    A, B, lam = _left_amplitudes(x, psi, ak, spec, fit_wavelengths)
    q = info["q"]
    a2 = abs(A) ** 2

    R = abs(B) ** 2 / a2
    if spec.method is Method.NUMEROV:
        h = spec.step
        lam_q = discrete_wavenumber(q * q, h)
        flux_out = (1.0 + h * h * q * q / 12.0) ** 2 * math.sin(lam_q.imag * h)
        flux_in = (1.0 + h * h * ak * ak / 12.0) ** 2 * math.sin(lam.imag * h)
        T = flux_out / (flux_in * a2)
    else:
        T = (q / ak) / a2

    gate = abs(R + T - 1.0)
    if gate > FLUX_GATE:
        raise FitConditioningError(f"oracle flux gate failed: |R+T-1| = {gate:.3e} at k={k:.6g}")
    logger.info("Oracle RT: alpha=%.6g beta=%.6g k=%.6g R=%.9e T=%.9e (%s)",
                p.alpha, p.beta, k, R, T, spec.method.value)
    return R, T


# ====== SPECTRAL WEIGHT ======
def estimate_measure(p: RMParams, k: float, spec: Optional[IntegratorSpec] = None,
                     fit_wavelengths: float = 4.0) -> float:
    """pi (|A|^2 + |B|^2 + (q/|k|) |C|^2) for the state normalized as 2^{-eta} e^{(mu+eta)x} at +inf.

    Above the barrier |2^{-eta}| = 1; below it the decaying tail carries |2^{-eta}|^2 = 2^r.
    """
    spec = spec or IntegratorSpec()
    ak = abs(float(k))
    if ak == 0.0:
        raise ParameterError("estimate_measure is undefined at k = 0")
    E = ak * ak - 2.0 * p.beta
    check_resolution(p, E, spec)

    if ak * ak > 4.0 * p.beta:
        x, psi, _, info = march(p, E, spec, Seed.RIGHT_OUTGOING)
        A, B, _ = _left_amplitudes(x, psi, ak, spec, fit_wavelengths)
        return math.pi * (abs(A) ** 2 + abs(B) ** 2 + info["q"] / ak)

    x, psi, _, info = march(p, E, spec, Seed.RIGHT_DECAYING)
    A, B, _ = _left_amplitudes(x, psi, ak, spec, fit_wavelengths)
    r = info["kappa"]
    log_w = math.log(math.pi * (abs(A) ** 2 + abs(B) ** 2)) + r * _LN2 - 2.0 * r * info["x_seed"]
    return math.exp(log_w)


# ====== BOUND STATES ======
def matching_wronskian(p: RMParams, E: float, spec: IntegratorSpec) -> float:
    """Wronskian of the left- and right-decaying solutions at x = 0, each normalized by sqrt(psi^2 + psi'^2)."""
    yl, dl = match_values(p, E, spec, Seed.LEFT_DECAYING)
    yr, dr = match_values(p, E, spec, Seed.RIGHT_DECAYING)
    nl = math.hypot(yl.real, dl.real)
    nr = math.hypot(yr.real, dr.real)
    return (yl.real * dr.real - yr.real * dl.real) / (nl * nr)


def default_energy_window(p: RMParams, spec: IntegratorSpec, margin: float = 0.5,
                          gap: float = 1e-3) -> Tuple[float, float]:
    v_min = float(np.min(oracle_potential(p, spec.lattice())))
    return v_min - margin, -2.0 * p.beta - gap


def shoot_bound_states(p: RMParams, E_range: Optional[Sequence[float]] = None,
                       spec: Optional[IntegratorSpec] = None, scan_points: int = 160,
                       tol: float = 1e-12) -> List[float]:
    """Eigenvalues from sign changes of the matching Wronskian, refined by brentq.

    E_range must lie below -2 beta; an empty list is a valid answer.
    """
    spec = spec or IntegratorSpec(step=0.0025)
    lo, hi = default_energy_window(p, spec) if E_range is None else (float(E_range[0]), float(E_range[1]))
    if not hi < -2.0 * p.beta:
        raise ParameterError(f"energy window must lie below -2 beta = {-2.0 * p.beta:g}, got upper end {hi:g}")
    if lo >= hi:
        return []
    check_resolution(p, lo, spec)
    check_resolution(p, hi, spec)

    grid = np.linspace(lo, hi, int(scan_points))
    vals = [matching_wronskian(p, float(E), spec) for E in grid]

    roots: List[float] = []
    for (e0, w0), (e1, w1) in zip(zip(grid, vals), zip(grid[1:], vals[1:])):
        if w0 == 0.0:
            roots.append(float(e0))
        elif w0 * w1 < 0.0:
            roots.append(float(brentq(lambda e: matching_wronskian(p, e, spec), e0, e1, xtol=tol)))
    if vals and vals[-1] == 0.0:
        roots.append(float(grid[-1]))

    logger.info("Oracle shooting: alpha=%.6g beta=%.6g window=[%.4g, %.4g] -> %d level(s)",
                p.alpha, p.beta, lo, hi, len(roots))
    return roots
