# numerics/quadrature.py
# Adaptive quadrature of complex integrands and Simpson integration of sampled data.

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import quad_vec, simpson

from numerics.errors import ParameterError, QuadratureError
from utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class QuadratureControl:
    epsabs: float = 1e-10
    epsrel: float = 1e-9
    limit: int = 4000

    def __post_init__(self) -> None:
        if self.epsabs < 0.0 or self.epsrel < 0.0 or (self.epsabs == 0.0 and self.epsrel == 0.0):
            raise ParameterError("quadrature tolerances must be >= 0 and not both zero")
        if int(self.limit) < 1:
            raise ParameterError("quadrature limit must be >= 1")


DEFAULT_QUADRATURE = QuadratureControl()


def wavelength_breakpoints(a: float, b: float, *wavenumbers: float) -> Sequence[float]:
    """Interior points spaced by the shortest asymptotic wavelength 2 pi / max|k|."""
    kmax = max((abs(k) for k in wavenumbers), default=0.0)
    if kmax <= 0.0:
        return []
    step = 2.0 * math.pi / kmax
    n = int(math.floor((b - a) / step))
    return [a + i * step for i in range(1, n + 1) if a + i * step < b]


def integrate_complex(
    func: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    ctl: Optional[QuadratureControl] = None,
    points: Optional[Sequence[float]] = None,
) -> Tuple[complex, float]:
    """Integral of a vectorized complex function over [a, b].

    [a, b] is split at `points` into panels; every panel is mapped onto
    t in [0, 1] and all of them go to scipy's adaptive Gauss-Kronrod rule
    as one real vector (re and im per panel), so each rule node costs a
    single vectorized call of `func`. Raises QuadratureError on failure.
    """
    ctl = ctl or DEFAULT_QUADRATURE
    if not b > a:
        raise ParameterError(f"need a < b, got [{a:g}, {b:g}]")
    inner = sorted(float(x) for x in (points if points is not None else ()) if a < x < b)
    edges = np.array([a, *inner, b], dtype=float)
    left, width = edges[:-1], np.diff(edges)
    n_panels = left.size

    def _panels(t: float) -> np.ndarray:
        v = np.asarray(func(left + t * width), dtype=complex) * width
        return np.concatenate([v.real, v.imag])

    res, err, info = quad_vec(
        _panels, 0.0, 1.0,
        epsabs=ctl.epsabs / n_panels, epsrel=ctl.epsrel, limit=int(ctl.limit),
        norm="max", full_output=True,
    )
    if not info.success:
        raise QuadratureError(f"quad_vec on [{a:g}, {b:g}] failed: {info.message} (err={err:.3e})")
    total = complex(np.sum(res[:n_panels]), np.sum(res[n_panels:]))
    return total, float(err) * n_panels


def integrate_samples(values: np.ndarray, nodes: np.ndarray, axis: int = -1):
    """Composite Simpson rule over sampled complex values."""
    values = np.asarray(values)
    re = simpson(values.real, x=nodes, axis=axis)
    if not np.iscomplexobj(values):
        return re
    return re + 1j * simpson(values.imag, x=nodes, axis=axis)
