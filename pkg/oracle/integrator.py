# oracle/integrator.py
# Direct Numerov / RK4 integration of psi'' = -(E - V) psi from asymptotic seeds.

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

import numpy as np

from numerics.errors import ParameterError, StepResolutionError, ThresholdError
from numerics.grid import GridFunction
from physics.rosenmorse import RMParams
from utils.logger import get_logger

logger = get_logger(__name__)

"""
Independent of the closed forms: only the potential and the energy enter.
All grids are lattices i*step through x = 0, so matching at the origin needs
no interpolation. Numerov seeds use the discrete-exact wavenumber of the
recurrence for a constant potential,
    cos(k~ h) = (1 - 5 h^2 Q / 12) / (1 + h^2 Q / 12),     Q = E - V,
so a flat tail propagates without phase error.
"""

POINTS_PER_WAVELENGTH = 40
THRESHOLD_GAP = 1e-6
_SEED_EXPONENT = 300.0      # decaying seeds start where kappa*|x| <= this


class Method(enum.Enum):
    NUMEROV = "numerov"
    RK4 = "rk4"


class Seed(enum.Enum):
    RIGHT_OUTGOING = "right_outgoing"      # e^{iqx} at x_max, E > 2 beta
    RIGHT_DECAYING = "right_decaying"      # e^{-kappa x} at x_max, E < 2 beta
    LEFT_DECAYING = "left_decaying"        # e^{kappa x} at x_min, E < -2 beta


@dataclass(frozen=True)
class IntegratorSpec:
    x_min: float = -35.0
    x_max: float = 35.0
    step: float = 0.004
    method: Method = Method.NUMEROV

    def __post_init__(self) -> None:
        object.__setattr__(self, "method", Method(self.method))
        if not self.step > 0.0:
            raise ParameterError(f"integration step must be > 0, got {self.step}")
        if not self.x_min < self.x_max:
            raise ParameterError(f"need x_min < x_max, got [{self.x_min}, {self.x_max}]")

    @classmethod
    def from_config(cls, section: Dict[str, Any], **overrides: Any) -> "IntegratorSpec":
        """Build from the CONFIG['oracle'] section."""
        off = float(section.get("SEED_OFFSET", 35.0))
        kw = dict(x_min=-off, x_max=off, step=float(section.get("STEP", 0.004)),
                  method=Method(str(section.get("METHOD", "numerov")).lower()))
        kw.update(overrides)
        return cls(**kw)

    def lattice(self) -> np.ndarray:
        i0 = int(math.floor(self.x_min / self.step + 1e-9))
        i1 = int(math.ceil(self.x_max / self.step - 1e-9))
        return self.step * np.arange(i0, i1 + 1, dtype=float)


# ====== POTENTIAL ======
def oracle_potential(p: RMParams, x):
    """V(x) = -alpha(alpha+1) sech^2 x + 2 beta tanh x."""
    x = np.asarray(x, dtype=float)
    sech = 1.0 / np.cosh(x)
    return -p.alpha * (p.alpha + 1.0) * sech * sech + 2.0 * p.beta * np.tanh(x)


def q_profile(p: RMParams, E: float, x) -> np.ndarray:
    """Q(x) = E - V(x)."""
    return E - oracle_potential(p, x)


def discrete_wavenumber(Q: float, h: float) -> complex:
    """Exponent lambda with psi_n = e^{lambda n h} solving Numerov for constant Q.

    Q > 0 gives lambda = i k~; Q < 0 gives lambda = kappa~ (the growing branch).
    """
    g = h * h * Q / 12.0
    c = (1.0 - 5.0 * g) / (1.0 + g)
    if Q > 0.0:
        return 1j * math.acos(c) / h
    return complex(math.acosh(c) / h)


def check_resolution(p: RMParams, E: float, spec: IntegratorSpec) -> None:
    """Reject energies near +-2 beta and steps coarser than 1/40 of the shortest local wavelength."""
    for edge in (-2.0 * p.beta, 2.0 * p.beta):
        if abs(E - edge) <= THRESHOLD_GAP:
            raise ThresholdError(f"E = {E:.9g} within {THRESHOLD_GAP:g} of the threshold {edge:.9g}")
    x = spec.lattice()
    k_loc = math.sqrt(float(np.max(np.abs(q_profile(p, E, x)))))
    if k_loc > 0.0 and spec.step > 2.0 * math.pi / (POINTS_PER_WAVELENGTH * k_loc):
        raise StepResolutionError(
            f"step {spec.step:g} resolves wavenumber {k_loc:.4g} by fewer than {POINTS_PER_WAVELENGTH} points"
        )


# ====== SEEDS ======
def _seed_setup(p: RMParams, E: float, x: np.ndarray, seed: Seed, h: float, method: Method):
    """Seed index, march direction and the closed-form tail on the seeded side.

    Returns (j0, direction, psi_tail, dpsi_tail, seed_info).
    """
    n = x.size
    psi = np.zeros(n, dtype=complex)
    dpsi = np.zeros(n, dtype=complex)

    if seed is Seed.RIGHT_OUTGOING:
        if not E > 2.0 * p.beta:
            raise ParameterError("outgoing seed needs E > 2 beta")
        q = math.sqrt(E - 2.0 * p.beta)
        lam = discrete_wavenumber(q * q, h) if method is Method.NUMEROV else 1j * q
        j0 = n - 1
        tail = slice(j0 - 1, n)
        psi[tail] = np.exp(lam * x[tail])
        dpsi[tail] = 1j * q * psi[tail]
        return j0, -1, psi, dpsi, {"q": q, "x_seed": float(x[j0])}

    if seed is Seed.RIGHT_DECAYING:
        if not E < 2.0 * p.beta:
            raise ParameterError("decaying right seed needs E < 2 beta")
        kappa = math.sqrt(2.0 * p.beta - E)
        lam = discrete_wavenumber(-kappa * kappa, h).real if method is Method.NUMEROV else kappa
        cap = min(float(x[-1]), _SEED_EXPONENT / kappa)
        j0 = int(np.searchsorted(x, cap, side="right")) - 1
        tail = slice(j0 - 1, n)
        psi[tail] = np.exp(-lam * (x[tail] - x[j0]))
        dpsi[tail] = -kappa * psi[tail]
        return j0, -1, psi, dpsi, {"kappa": kappa, "x_seed": float(x[j0])}

    if not E < -2.0 * p.beta:
        raise ParameterError("decaying left seed needs E < -2 beta")
    kappa = math.sqrt(-2.0 * p.beta - E)
    lam = discrete_wavenumber(-kappa * kappa, h).real if method is Method.NUMEROV else kappa
    cap = max(float(x[0]), -_SEED_EXPONENT / kappa)
    j0 = int(np.searchsorted(x, cap, side="left"))
    tail = slice(0, j0 + 2)
    psi[tail] = np.exp(lam * (x[tail] - x[j0]))
    dpsi[tail] = kappa * psi[tail]
    return j0, 1, psi, dpsi, {"kappa": kappa, "x_seed": float(x[j0])}


# ====== MARCHING ======
def _numerov_march(Q: np.ndarray, h: float, psi: np.ndarray, j0: int, direction: int, stop: int) -> None:
    """Fill psi in place from j0 + direction toward `stop` (inclusive)."""
    f = 1.0 + (h * h / 12.0) * Q
    g = 2.0 * (1.0 - (5.0 * h * h / 12.0) * Q)
    f_l, g_l, psi_l = f.tolist(), g.tolist(), psi.tolist()
    i = j0 + direction
    while (i - stop) * direction < 0:
        nxt = i + direction
        psi_l[nxt] = (g_l[i] * psi_l[i] - f_l[i - direction] * psi_l[i - direction]) / f_l[nxt]
        i = nxt
    psi[:] = psi_l


def _rk4_march(p: RMParams, E: float, x: np.ndarray, h: float, psi: np.ndarray, dpsi: np.ndarray,
               j0: int, direction: int, stop: int) -> None:
    s = direction * h
    lo, hi = (stop, j0) if direction < 0 else (j0, stop)
    xs = x[lo:hi + 1]
    q_node = q_profile(p, E, xs).tolist()
    q_mid = q_profile(p, E, xs + s / 2.0).tolist()
    y, dy = complex(psi[j0]), complex(dpsi[j0])
    i = j0
    while i != stop:
        a, m = q_node[i - lo], q_mid[i - lo]
        b = q_node[i + direction - lo]
        k1y, k1d = dy, -a * y
        k2y, k2d = dy + 0.5 * s * k1d, -m * (y + 0.5 * s * k1y)
        k3y, k3d = dy + 0.5 * s * k2d, -m * (y + 0.5 * s * k2y)
        k4y, k4d = dy + s * k3d, -b * (y + s * k3y)
        y = y + s * (k1y + 2.0 * k2y + 2.0 * k3y + k4y) / 6.0
        dy = dy + s * (k1d + 2.0 * k2d + 2.0 * k3d + k4d) / 6.0
        i += direction
        psi[i], dpsi[i] = y, dy


def march(p: RMParams, E: float, spec: IntegratorSpec, seed: Seed, stop_x: Optional[float] = None):
    """Integrate on the IntegratorSpec lattice from the seed toward `stop_x` (default: the far edge).

    Returns (x, psi, dpsi, info); dpsi is exact for RK4 and filled by
    numerov_derivative for Numerov. Nodes not reached hold zeros.
    """
    x = spec.lattice()
    h = spec.step
    j0, direction, psi, dpsi, info = _seed_setup(p, E, x, seed, h, spec.method)

    if stop_x is None:
        stop = 0 if direction < 0 else x.size - 1
    else:
        stop = int(np.argmin(np.abs(x - stop_x))) + direction
        stop = min(max(stop, 0), x.size - 1)

    if spec.method is Method.NUMEROV:
        Q = q_profile(p, E, x)
        _numerov_march(Q, h, psi, j0, direction, stop)
        dpsi = _numerov_dpsi(Q, h, psi)
    else:
        _rk4_march(p, E, x, h, psi, dpsi, j0, direction, stop)

    info.update({"seed": seed.value, "method": spec.method.value, "step": h, "E": E})
    return x, psi, dpsi, info


def integrate_state(p: RMParams, E: float, spec: IntegratorSpec, seed: Seed) -> GridFunction:
    """Oracle solution of the Schrodinger equation on the full IntegratorSpec lattice."""
    check_resolution(p, E, spec)
    x, psi, _, info = march(p, E, spec, seed)
    info.update({"alpha": p.alpha, "beta": p.beta})
    logger.debug("Oracle: E=%.9g seed=%s method=%s nodes=%d", E, seed.value, spec.method.value, x.size)
    return GridFunction(x, psi, info)


# ====== DERIVATIVE AND WRONSKIAN ======
def _numerov_dpsi(Q: np.ndarray, h: float, psi: np.ndarray) -> np.ndarray:
    """psi'_n = [(1 + h^2 Q_{n+1}/6) psi_{n+1} - (1 + h^2 Q_{n-1}/6) psi_{n-1}] / 2h; ends left at 0."""
    out = np.zeros_like(psi)
    u = (1.0 + (h * h / 6.0) * Q) * psi
    out[1:-1] = (u[2:] - u[:-2]) / (2.0 * h)
    return out


def numerov_derivative(p: RMParams, E: float, f: GridFunction) -> np.ndarray:
    """Fourth-order psi' on the interior nodes f.nodes[1:-1] of a uniform grid."""
    h = f.dx
    if h is None:
        raise ParameterError("numerov_derivative needs a uniform grid")
    return _numerov_dpsi(q_profile(p, E, f.nodes), h, f.values)[1:-1]


def wronskian(p: RMParams, E: float, psi1: GridFunction, psi2: GridFunction) -> np.ndarray:
    """psi1 psi2' - psi2 psi1' on the interior nodes; constant for two solutions at the same E."""
    if psi1.nodes.shape != psi2.nodes.shape or not np.allclose(psi1.nodes, psi2.nodes):
        raise ParameterError("wronskian needs both solutions on the same nodes")
    d1 = numerov_derivative(p, E, psi1)
    d2 = numerov_derivative(p, E, psi2)
    return psi1.values[1:-1] * d2 - psi2.values[1:-1] * d1


def match_values(p: RMParams, E: float, spec: IntegratorSpec, seed: Seed, x_match: float = 0.0) -> Tuple[complex, complex]:
    """(psi, psi') at x_match from a march that stops one node past it."""
    x, psi, dpsi, _ = march(p, E, spec, seed, stop_x=x_match)
    j = int(np.argmin(np.abs(x - x_match)))
    return complex(psi[j]), complex(dpsi[j])
