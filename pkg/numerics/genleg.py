# numerics/genleg.py
# Generalized Legendre functions D^{mu,eta}_nu on the cut, in tanh coordinates, and their asymptotics.

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
from scipy.special import expit

from numerics.errors import DomainError, ParameterError, PoleError
from numerics.specfun import (
    SeriesControl,
    _as_array,
    _restore,
    gamma_ratio,
    hyp2f1,
    hyp2f1_derivative,
    is_pole,
    rgamma,
)

"""
D^{mu,eta}_nu(x) = (1-x^2)^(-eta/2) ((1+x)/(1-x))^(mu/2) F(-nu-eta, nu+1-eta; 1-mu-eta; (1-x)/2)

solves (1-x^2)D'' - 2xD' + [nu(nu+1) - (mu^2 + 2 mu eta x + eta^2)/(1-x^2)] D = 0.

In tanh coordinates (x -> tanh x) the prefactor is exp(eta*log cosh x + mu*x) and
the hypergeometric argument is expit(-2x), with its complement expit(2x) kept
exact, so accuracy holds all the way to |x| = X_SWITCH.
"""

ArrayLike = Union[float, np.ndarray]

X_SWITCH = 20.0
_LN2 = float(np.log(2.0))
_REGIME_TOL = 1e-12


class Regime(enum.Enum):
    BOUND = "bound"
    BELOW_BARRIER = "below_barrier"
    ABOVE_BARRIER = "above_barrier"
    GENERIC = "generic"


@dataclass(frozen=True)
class ChannelParams:
    """Orders (mu, eta), degree nu and the regime they were built for."""
    mu: complex
    eta: complex
    nu: float
    regime: Regime = Regime.GENERIC

    def __post_init__(self) -> None:
        object.__setattr__(self, "mu", complex(self.mu))
        object.__setattr__(self, "eta", complex(self.eta))
        object.__setattr__(self, "nu", float(self.nu))
        if not (np.isfinite(self.mu) and np.isfinite(self.eta) and np.isfinite(self.nu)):
            raise ParameterError("ChannelParams must be finite")

        mu, eta = self.mu, self.eta
        tol = _REGIME_TOL * max(1.0, abs(mu), abs(eta))
        if self.regime is Regime.BOUND:
            ok = (abs(mu.imag) <= tol and abs(eta.imag) <= tol and mu.real <= tol
                  and eta.real < 0.0 and (mu + eta).real < 0.0 and (mu - eta).real > 0.0)
        elif self.regime is Regime.BELOW_BARRIER:
            ok = abs(eta - mu.conjugate()) <= tol and mu.real < 0.0
        elif self.regime is Regime.ABOVE_BARRIER:
            ok = abs(mu.real) <= tol and abs(eta.real) <= tol
        else:
            ok = True
        if not ok:
            raise ParameterError(f"mu={mu}, eta={eta} violate the {self.regime.value} invariants")

    # Hypergeometric parameters of the defining formula.
    @property
    def abc(self):
        return -self.nu - self.eta, self.nu + 1.0 - self.eta, 1.0 - self.mu - self.eta

    def conjugate(self) -> "ChannelParams":
        return ChannelParams(self.mu.conjugate(), self.eta.conjugate(), self.nu, self.regime)


@dataclass(frozen=True)
class AsymptoticAmplitudes:
    """D(tanh x) ~ A e^{(mu-eta)x} + B e^{-(mu-eta)x} at -inf and C e^{(mu+eta)x} at +inf."""
    A: complex
    B: complex
    C: complex


# ====== CORE EVALUATION ======
def _check_c(p: ChannelParams) -> None:
    c = p.abc[2]
    if is_pole(c):
        raise PoleError(c, "Gamma(1-mu-eta)")


def _d_and_dx(p: ChannelParams, z, w, log_pref, slope, jac, ctl, want_dx: bool):
    """Shared evaluation of D and, optionally, dD/dx.

    slope: log-derivative of the prefactor; jac: dz/dx.
    """
    a, b, c = p.abc
    pref = np.exp(log_pref)
    f = hyp2f1(a, b, c, z, ctl, w=w)
    d = pref * f
    if not want_dx:
        return d, None
    fp = hyp2f1_derivative(a, b, c, z, ctl, w=w)
    return d, pref * (slope * f + jac * fp)


def _cut_coords(x: np.ndarray):
    if np.any(x <= -1.0) or np.any(x >= 1.0):
        raise DomainError("D is defined on the open interval (-1, 1)")
    l_plus, l_minus = np.log1p(x), np.log1p(-x)
    return (1.0 - x) / 2.0, (1.0 + x) / 2.0, l_plus, l_minus


def eval_D(p: ChannelParams, x: ArrayLike, ctl: Optional[SeriesControl] = None):
    """D^{mu,eta}_nu(x) on (-1, 1); prefactor from real logs."""
    _check_c(p)
    xx, shape, scalar = _as_array(x, float)
    z, w, lp, lm = _cut_coords(xx)
    log_pref = -(p.eta / 2.0) * (lp + lm) + (p.mu / 2.0) * (lp - lm)
    d, _ = _d_and_dx(p, z, w, log_pref, None, None, ctl, want_dx=False)
    return _restore(d, shape, scalar)


def eval_D_dx(p: ChannelParams, x: ArrayLike, ctl: Optional[SeriesControl] = None):
    """Analytic x-derivative of D on (-1, 1)."""
    _check_c(p)
    xx, shape, scalar = _as_array(x, float)
    z, w, lp, lm = _cut_coords(xx)
    log_pref = -(p.eta / 2.0) * (lp + lm) + (p.mu / 2.0) * (lp - lm)
    slope = (p.mu + p.eta * xx) / ((1.0 - xx) * (1.0 + xx))
    _, dd = _d_and_dx(p, z, w, log_pref, slope, -0.5, ctl, want_dx=True)
    return _restore(dd, shape, scalar)


def eval_D_shifted(p: ChannelParams, x: ArrayLike, ctl: Optional[SeriesControl] = None):
    """Two-term representation of D with hypergeometric argument (1+x)/2."""
    xx, shape, scalar = _as_array(x, float)
    z, w, lp, lm = _cut_coords(xx)
    mu, eta, nu = p.mu, p.eta, p.nu
    log_pref = -(eta / 2.0) * (lp + lm) + (mu / 2.0) * (lp - lm)

    c_a = gamma_ratio([1 - mu - eta, -mu + eta], [1 - mu + nu, -mu - nu], cancel=((0, 0), (1, 1)))
    c_b = gamma_ratio([1 - mu - eta, mu - eta], [-nu - eta, nu + 1 - eta])
    out = np.zeros(xx.shape, dtype=complex)
    if c_a != 0:
        out += c_a * hyp2f1(-nu - eta, nu + 1 - eta, 1 + mu - eta, w, ctl, w=z)
    if c_b != 0:
        out += c_b * np.exp((-mu + eta) * np.log(w)) * hyp2f1(1 - mu + nu, -mu - nu, 1 - mu + eta, w, ctl, w=z)
    return _restore(np.exp(log_pref) * out, shape, scalar)


# ====== TANH COORDINATES ======
def _tanh_coords(p: ChannelParams, x: np.ndarray):
    z, w = expit(-2.0 * x), expit(2.0 * x)           # (1 - tanh x)/2, (1 + tanh x)/2
    log_cosh = np.logaddexp(x, -x) - _LN2
    return z, w, p.eta * log_cosh + p.mu * x


def _tanh_direct(p: ChannelParams, x: np.ndarray, ctl, want_dx: bool):
    z, w, log_pref = _tanh_coords(p, x)
    slope = p.mu + p.eta * (w - z)                     # mu + eta tanh x
    return _d_and_dx(p, z, w, log_pref, slope, -2.0 * z * w, ctl, want_dx)


def eval_D_tanh(p: ChannelParams, x: ArrayLike, ctl: Optional[SeriesControl] = None,
                *, x_switch: float = X_SWITCH):
    """D^{mu,eta}_nu(tanh x) for any real x; exponential forms beyond |x| > x_switch."""
    _check_c(p)
    xx, shape, scalar = _as_array(x, float)
    out = np.empty(xx.shape, dtype=complex)
    right, left = xx > x_switch, xx < -x_switch
    mid = ~(right | left)

    if mid.any():
        out[mid], _ = _tanh_direct(p, xx[mid], ctl, want_dx=False)
    if right.any():
        out[right] = np.exp(-p.eta * _LN2 + (p.mu + p.eta) * xx[right])
    if left.any():
        xl = xx[left]
        try:
            amp = asymptotic_amplitudes(p)
            out[left] = amp.A * np.exp((p.mu - p.eta) * xl) + amp.B * np.exp(-(p.mu - p.eta) * xl)
        except PoleError:
            # Coinciding exponents (degenerate amplitudes): the direct form stays exact here.
            out[left], _ = _tanh_direct(p, xl, ctl, want_dx=False)
    return _restore(out, shape, scalar)


def eval_D_tanh_dx(p: ChannelParams, x: ArrayLike, ctl: Optional[SeriesControl] = None,
                   *, x_switch: float = X_SWITCH):
    """d/dx of D^{mu,eta}_nu(tanh x)."""
    _check_c(p)
    xx, shape, scalar = _as_array(x, float)
    out = np.empty(xx.shape, dtype=complex)
    right, left = xx > x_switch, xx < -x_switch
    mid = ~(right | left)

    if mid.any():
        _, out[mid] = _tanh_direct(p, xx[mid], ctl, want_dx=True)
    if right.any():
        s = p.mu + p.eta
        out[right] = s * np.exp(-p.eta * _LN2 + s * xx[right])
    if left.any():
        xl = xx[left]
        d = p.mu - p.eta
        try:
            amp = asymptotic_amplitudes(p)
            out[left] = d * (amp.A * np.exp(d * xl) - amp.B * np.exp(-d * xl))
        except PoleError:
            _, out[left] = _tanh_direct(p, xl, ctl, want_dx=True)
    return _restore(out, shape, scalar)


# ====== ASYMPTOTICS ======
def asymptotic_amplitudes(p: ChannelParams) -> AsymptoticAmplitudes:
    """A, B at -inf and C = 2^{-eta} at +inf.

    A = 2^{-eta} G(1-mu-eta) G(-mu+eta) / (G(1-mu+nu) G(-mu-nu))
    B = 2^{-eta} G(1-mu-eta) G(mu-eta) / (G(-nu-eta) G(nu+1-eta))
    A reciprocal-gamma pole in B's denominator (the bound-state condition) gives B = 0.
    """
    mu, eta, nu = p.mu, p.eta, p.nu
    c = complex(np.exp(-eta * _LN2))
    a_ratio = gamma_ratio(
        [1 - mu - eta, -mu + eta], [1 - mu + nu, -mu - nu],
        cancel=((0, 0), (1, 1)),
        num_labels=("Gamma(1-mu-eta)", "Gamma(-mu+eta)"),
    )
    b_ratio = gamma_ratio(
        [1 - mu - eta, mu - eta], [-nu - eta, nu + 1 - eta],
        num_labels=("Gamma(1-mu-eta)", "Gamma(mu-eta)"),
    )
    return AsymptoticAmplitudes(A=c * a_ratio, B=c * b_ratio, C=c)


# ====== ASSOCIATED LEGENDRE (eta = 0) ======
def legendre_P(mu: complex, nu: float, x: ArrayLike, ctl: Optional[SeriesControl] = None):
    """Ferrers function P^mu_nu(x) on the cut."""
    mu = complex(mu)
    if is_pole(1.0 - mu):
        raise PoleError(1.0 - mu, "Gamma(1-mu)")
    xx, shape, scalar = _as_array(x, float)
    z, w, lp, lm = _cut_coords(xx)
    f = hyp2f1(-nu, nu + 1.0, 1.0 - mu, z, ctl, w=w)
    out = rgamma(1.0 - mu) * np.exp((mu / 2.0) * (lp - lm)) * f
    return _restore(out, shape, scalar)
