# physics/spectral.py
# Spectral measure, integral identity, windowed orthogonality and the scattering-state transform pair.

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from numerics.errors import NonDecayingInputError, ParameterError, PrefactorSingularError
from numerics.genleg import (
    X_SWITCH,
    ChannelParams,
    asymptotic_amplitudes,
    eval_D,
    eval_D_dx,
    eval_D_tanh,
    eval_D_tanh_dx,
)
from numerics.grid import GridFunction
from numerics.quadrature import (
    DEFAULT_QUADRATURE,
    QuadratureControl,
    integrate_complex,
    integrate_samples,
    wavelength_breakpoints,
)
from numerics.specfun import SeriesControl, log_gamma
from physics.rosenmorse import K_MIN, THRESHOLD_BAND, RMParams, check_wavenumber, params_from_k
from physics.scatter import scaled_terms
from utils.helpers import parallel_map
from utils.logger import get_logger

logger = get_logger(__name__)

"""
Normalization convention
    <psi_p, psi_k> = w(k) delta(k - p) + (degenerate term at p = -k)
with psi_k = D^{mu,eta}_alpha(tanh x) normalized by its +inf amplitude 2^{-eta}.
Flux conservation makes w(k) = 2 pi |A(k)|^2 in both regimes:
    above:  w = 2 pi (q/|k|) / T
    below:  w = 2 pi^2 2^r Gamma(1+r)^2 / (|k| sinh(pi|k|) |G(1+alpha+r/2+ik/2)|^2 |G(-alpha+r/2+ik/2)|^2)
where q = sqrt(k^2 - 4 beta) and r = sqrt(4 beta - k^2).
"""

_LN2 = math.log(2.0)
_LOG_2PI2 = math.log(2.0 * math.pi * math.pi)

EDGE_DECAY_TOL = 1e-10      # relative edge magnitude accepted by the transforms
_IDENTITY_QUADRATURE = QuadratureControl(epsabs=1e-12, epsrel=1e-11, limit=4000)


@dataclass(frozen=True)
class SpectralDensity:
    params: RMParams
    k_grid: np.ndarray
    w_values: np.ndarray

    def __post_init__(self) -> None:
        k = np.asarray(self.k_grid, dtype=float).ravel()
        w = np.asarray(self.w_values, dtype=float).ravel()
        if k.shape != w.shape:
            raise ParameterError("k_grid and w_values differ in length")
        if k.size > 1 and np.any(np.diff(k) <= 0.0):
            raise ParameterError("k_grid must be strictly ascending")
        if not np.all(w > 0.0):
            raise ParameterError("spectral weights must be positive")
        object.__setattr__(self, "k_grid", k)
        object.__setattr__(self, "w_values", w)


# ====== MEASURE ======
def _log_sinh(t: float) -> float:
    """log sinh(t) for t > 0 without overflow."""
    return t + math.log(-math.expm1(-2.0 * t)) - _LN2


def measure(p: RMParams, k: float) -> float:
    """w_{alpha,beta}(k), even in k; raises like params_from_k on excluded k."""
    k = float(k)
    check_wavenumber(p, k)
    ak = abs(k)

    if k * k > 4.0 * p.beta:
        q, _, t_num, den = scaled_terms(p, k)
        return 2.0 * math.pi * (q / ak) * den / t_num

    r = math.sqrt(4.0 * p.beta - k * k)
    lg = log_gamma(np.array([1.0 + r, 1.0 + p.alpha + r / 2.0 + 0.5j * ak, -p.alpha + r / 2.0 + 0.5j * ak]))
    log_w = (
        _LOG_2PI2 + r * _LN2 + 2.0 * lg[0].real
        - math.log(ak) - _log_sinh(math.pi * ak)
        - 2.0 * lg[1].real - 2.0 * lg[2].real
    )
    return math.exp(log_w)


def legendre_measure(alpha: float, k: float) -> float:
    """beta = 0 weight 2 pi (1 + sin^2(pi alpha) / sinh^2(pi k))."""
    ak = abs(float(k))
    if ak == 0.0:
        raise ParameterError("legendre_measure is singular at k = 0")
    e = math.exp(-2.0 * math.pi * ak)
    inv_sinh2 = 4.0 * e / math.expm1(-2.0 * math.pi * ak) ** 2
    return 2.0 * math.pi * (1.0 + math.sin(math.pi * alpha) ** 2 * inv_sinh2)


def threshold_limit(p: RMParams) -> float:
    """Common limit of the measure at |k| -> 2 sqrt(beta) from either side."""
    if p.beta <= 0.0:
        raise ParameterError("threshold_limit needs beta > 0")
    sb = math.sqrt(p.beta)
    num = math.sin(math.pi * p.alpha) ** 2 + math.sinh(math.pi * sb) ** 2
    return 2.0 * num / (2.0 * sb * math.sinh(2.0 * math.pi * sb))


def spectral_density(p: RMParams, k_grid: Sequence[float], workers: int = 1) -> SpectralDensity:
    k = np.asarray(k_grid, dtype=float).ravel()
    w = np.array(parallel_map(lambda kk: measure(p, kk), k, workers), dtype=float)
    logger.info("Measure: alpha=%.6g beta=%.6g rows=%d w in [%.6e, %.6e]",
                p.alpha, p.beta, k.size, float(w.min(initial=np.inf)), float(w.max(initial=0.0)))
    return SpectralDensity(p, k, w)


# ====== INTEGRAL IDENTITY ======
def integral_identity_residual(
    p1: ChannelParams,
    p2: ChannelParams,
    a: float,
    b: float,
    ctl: Optional[QuadratureControl] = None,
    series: Optional[SeriesControl] = None,
) -> float:
    """|integral of the cross term - (1-x^2)(D1 D2' - D2 D1') bracket| on [a, b].

    The cross term is [(rho^2+gamma^2-mu^2-eta^2 + 2x(rho gamma - mu eta))/(1-x^2)
    - sigma(sigma+1) + nu(nu+1)] D1 D2 with p1 = (mu, eta, nu), p2 = (rho, gamma, sigma).
    """
    if not -1.0 < a < b < 1.0:
        raise ParameterError(f"need -1 < a < b < 1, got a={a}, b={b}")
    ctl = ctl or _IDENTITY_QUADRATURE
    mu, eta, nu = p1.mu, p1.eta, p1.nu
    rho, gam, sig = p2.mu, p2.eta, p2.nu
    c0 = rho * rho + gam * gam - mu * mu - eta * eta
    c1 = 2.0 * (rho * gam - mu * eta)
    c2 = nu * (nu + 1.0) - sig * (sig + 1.0)

    def integrand(x: np.ndarray) -> np.ndarray:
        weight = (c0 + c1 * x) / ((1.0 - x) * (1.0 + x)) + c2
        return weight * eval_D(p1, x, series) * eval_D(p2, x, series)

    def bracket(x: float) -> complex:
        d1, d2 = eval_D(p1, x, series), eval_D(p2, x, series)
        return (1.0 - x) * (1.0 + x) * (d1 * eval_D_dx(p2, x, series) - d2 * eval_D_dx(p1, x, series))

    lhs, err = integrate_complex(integrand, a, b, ctl, points=np.linspace(a, b, 9)[1:-1])
    rhs = bracket(b) - bracket(a)
    res = abs(lhs - rhs)
    logger.debug("Identity: [%.4g, %.4g] residual=%.3e (quad err %.1e)", a, b, res, err)
    return res


# ====== WINDOWED ORTHOGONALITY ======
def _check_pair(pk: float, k: float, L: float) -> None:
    if not L > 0.0:
        raise ParameterError(f"window half-width must be > 0, got {L}")
    if abs(pk * pk - k * k) <= 1e-12 * max(1.0, k * k):
        raise PrefactorSingularError(f"p = {pk:.9g} equals +-k = +-{abs(k):.9g}")


def _outgoing_wavenumber(p: RMParams, k: float) -> float:
    d = k * k - 4.0 * p.beta
    return math.sqrt(d) if d > 0.0 else 0.0


def windowed_inner_product(
    p: RMParams,
    pk: float,
    k: float,
    L: float,
    ctl: Optional[QuadratureControl] = None,
    series: Optional[SeriesControl] = None,
    x_switch: float = X_SWITCH,
) -> complex:
    """Integral of conj(psi_p) psi_k over [-L, L] by adaptive quadrature."""
    _check_pair(pk, k, L)
    ch_p, ch_k = params_from_k(p, pk), params_from_k(p, k)
    points = wavelength_breakpoints(-L, L, pk, k, _outgoing_wavenumber(p, pk), _outgoing_wavenumber(p, k))

    def integrand(x: np.ndarray) -> np.ndarray:
        sp = eval_D_tanh(ch_p, x, series, x_switch=x_switch)
        return np.conj(sp) * eval_D_tanh(ch_k, x, series, x_switch=x_switch)

    val, err = integrate_complex(integrand, -L, L, ctl or DEFAULT_QUADRATURE, points)
    logger.debug("Overlap: p=%.6g k=%.6g L=%.3g -> %.6e%+.6ej (err %.1e)", pk, k, L, val.real, val.imag, err)
    return val


def boundary_term(p: RMParams, pk: float, k: float, L: float, series: Optional[SeriesControl] = None,
                  x_switch: float = X_SWITCH) -> complex:
    """[conj(psi_p) psi_k' - psi_k conj(psi_p)']_{-L}^{L} / (p^2 - k^2)."""
    _check_pair(pk, k, L)
    ch_p, ch_k = params_from_k(p, pk), params_from_k(p, k)
    x = np.array([-L, L])

    def edge(ch: ChannelParams):
        return eval_D_tanh(ch, x, series, x_switch=x_switch), eval_D_tanh_dx(ch, x, series, x_switch=x_switch)

    sp, dsp = (np.conj(v) for v in edge(ch_p))
    sk, dsk = edge(ch_k)
    w = sp * dsk - sk * dsp
    return complex((w[1] - w[0]) / (pk * pk - k * k))


def degenerate_overlap(p: RMParams, k: float, L: float, ctl: Optional[QuadratureControl] = None) -> complex:
    """Integral of conj(psi_{-k}) psi_k = psi_k^2 over [-L, L]."""
    if not L > 0.0:
        raise ParameterError(f"window half-width must be > 0, got {L}")
    ch = params_from_k(p, k)
    points = wavelength_breakpoints(-L, L, 2.0 * k, 2.0 * _outgoing_wavenumber(p, k))
    val, _ = integrate_complex(lambda x: eval_D_tanh(ch, x) ** 2, -L, L, ctl or DEFAULT_QUADRATURE, points)
    return val


def degenerate_coupling(p: RMParams, k: float) -> complex:
    """2 A B: growth rate in L of degenerate_overlap, zero iff psi_k and psi_{-k} are orthogonal."""
    amp = asymptotic_amplitudes(params_from_k(p, k))
    return 2.0 * amp.A * amp.B


# ====== TRANSFORM PAIR ======
def _check_decay(g: GridFunction, what: str) -> None:
    peak = float(np.max(np.abs(g.values)))
    if peak == 0.0:
        return
    edge = max(abs(g.values[0]), abs(g.values[-1])) / peak
    if edge > EDGE_DECAY_TOL:
        raise NonDecayingInputError(f"{what} edge magnitude {edge:.3e} of peak exceeds {EDGE_DECAY_TOL:g}")


def state_matrix(p: RMParams, k_nodes: Sequence[float], x_nodes: Sequence[float], workers: int = 1,
                 ctl: Optional[SeriesControl] = None, x_switch: float = X_SWITCH) -> np.ndarray:
    """psi_k(x) with one row per k."""
    x = np.asarray(x_nodes, dtype=float)
    rows = parallel_map(lambda kk: eval_D_tanh(params_from_k(p, float(kk)), x, ctl, x_switch=x_switch),
                        list(k_nodes), workers)
    return np.vstack(rows)


def forward_transform(
    p: RMParams,
    f: GridFunction,
    k_grid: Sequence[float],
    workers: int = 1,
    ctl: Optional[SeriesControl] = None,
    x_switch: float = X_SWITCH,
) -> GridFunction:
    """F(k) = (1/w(k)) * integral f(x) conj(psi_k(x)) dx, Simpson over the nodes of f.

    There is no adaptive error estimate here: accuracy is set by the x grid,
    which must resolve the shortest wavelength 2 pi / max|k| (default_x_grid
    puts 20 nodes on it) and reach far enough for f to have decayed.
    """
    _check_decay(f, "f(x)")
    k = np.asarray(k_grid, dtype=float).ravel()
    if not np.any(f.values):
        return GridFunction(k, np.zeros(k.size, dtype=complex), {"transform": "forward"})

    psi = state_matrix(p, k, f.nodes, workers, ctl, x_switch)
    w = np.array([measure(p, kk) for kk in k])
    vals = integrate_samples(np.conj(psi) * f.values[None, :], f.nodes, axis=1) / w
    logger.info("Forward: alpha=%.6g beta=%.6g nx=%d nk=%d", p.alpha, p.beta, len(f), k.size)
    return GridFunction(k, vals, {"transform": "forward", "alpha": p.alpha, "beta": p.beta})


def inverse_transform(
    p: RMParams,
    F: GridFunction,
    x_grid: Sequence[float],
    workers: int = 1,
    ctl: Optional[SeriesControl] = None,
    x_switch: float = X_SWITCH,
) -> GridFunction:
    """f(x) = integral F(k) psi_k(x) dk, Simpson over the k nodes of F.

    Bound-state components are not represented: only the continuum projection is rebuilt.
    """
    _check_decay(F, "F(k)")
    x = np.asarray(x_grid, dtype=float).ravel()
    if not np.any(F.values):
        return GridFunction(x, np.zeros(x.size, dtype=complex), {"transform": "inverse"})

    psi = state_matrix(p, F.nodes, x, workers, ctl, x_switch)
    vals = integrate_samples(F.values[:, None] * psi, F.nodes, axis=0)
    logger.info("Inverse: alpha=%.6g beta=%.6g nk=%d nx=%d", p.alpha, p.beta, len(F), x.size)
    return GridFunction(x, vals, {"transform": "inverse", "alpha": p.alpha, "beta": p.beta})


# ====== DEFAULT GRIDS AND TEST PACKETS ======
def default_x_grid(k_max: float, x_min: float = -30.0, x_max: float = 30.0,
                   points_per_wavelength: int = 20) -> np.ndarray:
    """Odd-length uniform grid with at least `points_per_wavelength` per 2 pi / k_max."""
    dx_max = 2.0 * math.pi / (points_per_wavelength * abs(k_max))
    n = int(math.ceil((x_max - x_min) / dx_max)) + 1
    n += 1 - n % 2
    return np.linspace(x_min, x_max, n)


def default_k_grid(center: float = 5.0, width: float = 0.3, span_widths: float = 8.0, n: int = 241) -> np.ndarray:
    return np.linspace(center - span_widths * width, center + span_widths * width, n)


def gaussian_packet(k_grid: Sequence[float], center: float, width: float) -> GridFunction:
    k = np.asarray(k_grid, dtype=float)
    if not width > 0.0:
        raise ParameterError(f"packet width must be > 0, got {width}")
    vals = np.exp(-0.5 * ((k - center) / width) ** 2)
    return GridFunction(k, vals, {"packet": "gaussian", "center": center, "width": width})


def relative_l2_error(F: GridFunction, F_ref: GridFunction) -> float:
    """||F - F_ref|| / ||F_ref|| in L2 over the nodes of F_ref."""
    diff = GridFunction(F_ref.nodes, F.values - F_ref.values)
    return diff.l2_norm() / F_ref.l2_norm()


def round_trip_error(
    p: RMParams,
    F0: GridFunction,
    x_grid: Sequence[float],
    workers: int = 1,
    ctl: Optional[SeriesControl] = None,
    *,
    x_switch: float = X_SWITCH,
    k_min: float = K_MIN,
    band: float = THRESHOLD_BAND,
) -> float:
    """Relative L2 error of forward(inverse(F0)) against F0 on the nodes of F0."""
    for kk in F0.nodes:
        check_wavenumber(p, float(kk), k_min=k_min, band=band)
    f = inverse_transform(p, F0, x_grid, workers, ctl, x_switch)
    F1 = forward_transform(p, f, F0.nodes, workers, ctl, x_switch)
    err = relative_l2_error(F1, F0)
    logger.info("Round trip: alpha=%.6g beta=%.6g relative L2 error %.3e", p.alpha, p.beta, err)
    return err
