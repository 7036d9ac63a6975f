# numerics/specfun.py
# Complex log-gamma / gamma (Lanczos) and the Gauss hypergeometric function on [0, 1).

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple, Union

import numpy as np

from numerics.errors import (
    DegenerateTransformError,
    DomainError,
    GammaOverflowError,
    NonConvergenceError,
    ParameterError,
    PoleError,
)

ArrayLike = Union[float, complex, np.ndarray]

# ====== CONSTANTS ======
POLE_TOL = 1e-12             # distance to the nonpositive-integer lattice treated as a pole
DEGENERATE_TOL = 1e-9        # c-a-b closer than this to an integer blocks the 1-z transformation
_LOG_PI = float(np.log(np.pi))
_LOG_MAX = 709.78            # log(DBL_MAX)

# Lanczos approximation, g = 6.024680040776729583740234375, 13 terms
# (cephes lanczos.c). Gamma(z) = S(z) * ((z + g - 1/2) / e)^(z - 1/2) with
# S = num/den, both polynomials listed from the highest power down.
LANCZOS_G = 6.024680040776729583740234375
_LANCZOS_NUM = np.array([
    0.006061842346248906525783753964555936883222,
    0.5098416655656676188125178644804694509993,
    19.51992788247617482847860966235652136208,
    449.9445569063168119446858607650988409623,
    6955.999602515376140356310115515198987526,
    75999.29304014542649875303443598909137092,
    601859.6171681098786670226533699352302507,
    3481712.15498064590882071018964774556468,
    14605578.08768506808414169982791359218571,
    43338889.32467613834773723740590533316085,
    86363131.28813859145546927288977868422342,
    103794043.1163445451906271053616070238554,
    56906521.91347156388090791033559122686859,
])
_LANCZOS_DEN = np.array([
    1.0, 66.0, 1925.0, 32670.0, 357423.0, 2637558.0, 13339535.0,
    45995730.0, 105258076.0, 150917976.0, 120543840.0, 39916800.0, 0.0,
])


@dataclass(frozen=True)
class SeriesControl:
    """Truncation policy for the 2F1 power series.

    `split` is the argument above which the 1-z transformation is used.
    """
    rel_tol: float = 1e-15
    max_terms: int = 20000
    split: float = 0.5

    def __post_init__(self) -> None:
        if not self.rel_tol > 0.0:
            raise ParameterError(f"rel_tol must be > 0, got {self.rel_tol}")
        if int(self.max_terms) < 1:
            raise ParameterError(f"max_terms must be >= 1, got {self.max_terms}")
        if not 0.0 < self.split < 1.0:
            raise ParameterError(f"split must lie in (0, 1), got {self.split}")


DEFAULT_SERIES = SeriesControl()


# ====== ARRAY PLUMBING ======
def _as_array(z: ArrayLike, dtype) -> Tuple[np.ndarray, Tuple[int, ...], bool]:
    arr = np.asarray(z, dtype=dtype)
    return np.atleast_1d(arr).ravel(), arr.shape, arr.ndim == 0


def _restore(out: np.ndarray, shape: Tuple[int, ...], scalar: bool):
    if scalar:
        return complex(out[0])
    return out.reshape(shape)


def _nearest_nonpositive_int(z: complex) -> Optional[int]:
    """Return n <= 0 when z is within POLE_TOL of n, else None."""
    n = round(z.real)
    if n <= 0 and abs(z - n) <= POLE_TOL:
        return int(n)
    return None


def is_pole(z: complex) -> bool:
    """True when Gamma(z) has a pole at z (within POLE_TOL)."""
    return _nearest_nonpositive_int(complex(z)) is not None


# ====== LOG-GAMMA ======
def _ratevl(z: np.ndarray, num: np.ndarray, den: np.ndarray) -> np.ndarray:
    """Rational function num(z)/den(z); evaluated in 1/z when |z| > 1."""
    out = np.empty_like(z)
    big = np.abs(z) > 1.0
    if (~big).any():
        zs = z[~big]
        out[~big] = np.polyval(num, zs) / np.polyval(den, zs)
    if big.any():
        zi = 1.0 / z[big]
        out[big] = np.polyval(num[::-1], zi) / np.polyval(den[::-1], zi)
    return out


def _log_gamma_right(z: np.ndarray) -> np.ndarray:
    # Valid for Re z >= 1/2.
    s = _ratevl(z, _LANCZOS_NUM, _LANCZOS_DEN)
    zgh = z + (LANCZOS_G - 0.5)
    return np.log(s) + (z - 0.5) * (np.log(zgh) - 1.0)


def _log_sin_pi(z: np.ndarray) -> np.ndarray:
    """log(sin(pi z)) modulo 2*pi*i, without overflow for large |Im z|."""
    n = np.round(z.real)
    t = z - n                       # |Re t| <= 1/2
    out = np.empty_like(z)
    upper = t.imag > 20.0
    lower = t.imag < -20.0
    mid = ~(upper | lower)
    if mid.any():
        out[mid] = np.log(np.sin(np.pi * t[mid]))
    if upper.any():
        tu = t[upper]
        out[upper] = -1j * np.pi * tu - np.log(2.0) + 0.5j * np.pi + np.log1p(-np.exp(2j * np.pi * tu))
    if lower.any():
        tl = t[lower]
        out[lower] = 1j * np.pi * tl - np.log(2.0) - 0.5j * np.pi + np.log1p(-np.exp(-2j * np.pi * tl))
    return out + 1j * np.pi * n     # (-1)^n


def log_gamma(z: ArrayLike):
    """Complex log-gamma.

    Right half-plane by the Lanczos sum, Re z < 1/2 by reflection. The real
    part is exact; the imaginary part is the principal branch for Re z >= 1/2
    and is determined modulo 2*pi in the left half-plane.
    """
    zz, shape, scalar = _as_array(z, complex)
    for v in zz:
        if is_pole(v):
            raise PoleError(v)

    out = np.empty_like(zz)
    left = zz.real < 0.5
    if (~left).any():
        out[~left] = _log_gamma_right(zz[~left])
    if left.any():
        zl = zz[left]
        out[left] = _LOG_PI - _log_sin_pi(zl) - _log_gamma_right(1.0 - zl)
    return _restore(out, shape, scalar)


def gamma(z: ArrayLike):
    """Complex gamma function; GammaOverflowError beyond double range."""
    lg = np.asarray(log_gamma(z))
    if np.any(np.abs(lg.real) > _LOG_MAX):
        raise GammaOverflowError(f"|Re log Gamma| exceeds {_LOG_MAX}")
    out = np.exp(lg)
    return complex(out) if out.ndim == 0 else out


def rgamma(z: complex) -> complex:
    """Reciprocal gamma 1/Gamma(z); exactly 0 on the pole lattice."""
    z = complex(z)
    if is_pole(z):
        return 0j
    return complex(np.exp(-log_gamma(z)))


def gamma_ratio(
    num: Sequence[complex],
    den: Sequence[complex],
    *,
    cancel: Iterable[Tuple[int, int]] = (),
    num_labels: Optional[Sequence[str]] = None,
) -> complex:
    """prod Gamma(num) / prod Gamma(den), assembled in log space.

    Pole rules:
        - (i, j) pairs in `cancel` are dropped when num[i] == den[j]; such
          pairs are factors whose arguments move together, so their ratio is 1.
        - remaining poles pair up in order, numerator with denominator, as
          residue ratios Gamma(-m)/Gamma(-n) = (-1)^(n-m) n!/m!;
        - unpaired denominator poles make the ratio exactly 0;
        - an unpaired numerator pole raises PoleError naming the factor.
    """
    num_c = [complex(v) for v in num]
    den_c = [complex(v) for v in den]
    skip_n, skip_d = set(), set()
    for i, j in cancel:
        if abs(num_c[i] - den_c[j]) <= POLE_TOL:
            skip_n.add(i)
            skip_d.add(j)

    num_keep = [(i, v) for i, v in enumerate(num_c) if i not in skip_n]
    den_keep = [v for j, v in enumerate(den_c) if j not in skip_d]

    num_poles = [(i, _nearest_nonpositive_int(v)) for i, v in num_keep if is_pole(v)]
    den_poles = [_nearest_nonpositive_int(v) for v in den_keep if is_pole(v)]
    if len(den_poles) > len(num_poles):
        return 0j
    if len(num_poles) > len(den_poles):
        i = num_poles[len(den_poles)][0]
        label = num_labels[i] if num_labels is not None else None
        raise PoleError(num_c[i], label)

    total = 0j
    for (_, m), n in zip(num_poles, den_poles):
        total += math.lgamma(1 - n) - math.lgamma(1 - m)
        if (m - n) % 2:
            total += 1j * np.pi
    num_vals = [v for _, v in num_keep if not is_pole(v)]
    den_vals = [v for v in den_keep if not is_pole(v)]
    if num_vals:
        total += complex(np.sum(log_gamma(np.array(num_vals))))
    if den_vals:
        total -= complex(np.sum(log_gamma(np.array(den_vals))))
    return complex(np.exp(total))


# ====== GAUSS HYPERGEOMETRIC 2F1 ======
def _ordered(a: complex, b: complex) -> Tuple[complex, complex]:
    lo, hi = sorted((a, b), key=lambda v: (v.real, v.imag))
    return lo, hi


def _canonical(a: complex, b: complex, c: complex) -> Tuple[complex, complex, complex, bool]:
    """One representative for (a, b, c), (b, a, c) and their conjugates; True when conjugated.

    F is symmetric in a, b and F(a*, b*; c*; z) = F(a, b; c; z)* for real z, so
    evaluating the representative makes both identities exact in floating point.
    """
    a, b = _ordered(a, b)
    keys = (c.imag, a.imag + b.imag, a.imag)
    flip = next((t < 0.0 for t in keys if t != 0.0), False)
    if flip:
        a, b = _ordered(a.conjugate(), b.conjugate())
        c = c.conjugate()
    return a, b, c, flip


def _snap(v: complex) -> complex:
    """Snap a parameter to its nonpositive integer so the series terminates exactly."""
    n = _nearest_nonpositive_int(v)
    return complex(n) if n is not None else v


def _series(a: complex, b: complex, c: complex, z: np.ndarray, ctl: SeriesControl) -> np.ndarray:
    term = np.ones(z.shape, dtype=complex)
    total = term.copy()
    small_prev = np.zeros(z.shape, dtype=bool)
    for n in range(int(ctl.max_terms)):
        term = term * ((a + n) * (b + n) / ((c + n) * (n + 1.0))) * z
        total = total + term
        small = np.abs(term) <= ctl.rel_tol * np.abs(total)
        if np.all(small & small_prev):
            return total
        small_prev = small
    raise NonConvergenceError(
        f"2F1({a:.4g}, {b:.4g}; {c:.4g}; z) did not converge in {ctl.max_terms} terms"
    )


def _transformed(a: complex, b: complex, c: complex, w: np.ndarray, ctl: SeriesControl) -> np.ndarray:
    """F(a,b;c;1-w) through the linear transformation to argument w."""
    s = c - a - b
    if abs(s.imag) <= DEGENERATE_TOL and abs(s.real - round(s.real)) <= DEGENERATE_TOL:
        raise DegenerateTransformError(f"c-a-b = {s:.6g} is (near) an integer")

    g1 = gamma_ratio([c, s], [c - a, c - b])
    g2 = gamma_ratio([c, -s], [a, b])
    out = np.zeros(w.shape, dtype=complex)
    if g1 != 0:
        out += g1 * _series(a, b, 1.0 - s, w, ctl)
    if g2 != 0:
        out += g2 * np.exp(s * np.log(w)) * _series(c - a, c - b, 1.0 + s, w, ctl)
    return out


def hyp2f1(
    a: complex,
    b: complex,
    c: complex,
    z: ArrayLike,
    ctl: Optional[SeriesControl] = None,
    *,
    w: Optional[ArrayLike] = None,
):
    """Gauss hypergeometric F(a, b; c; z) for real 0 <= z < 1.

    z may be an array; `w` optionally supplies 1 - z computed without
    cancellation (used when z is within rounding of 1). Series for
    z <= ctl.split, 1-z transformation above, direct finite sum whenever
    a or b is a nonpositive integer.
    """
    ctl = ctl or DEFAULT_SERIES
    a, b, c = _snap(complex(a)), _snap(complex(b)), complex(c)
    if is_pole(c):
        raise PoleError(c, "c")
    a, b, c, flip = _canonical(a, b, c)

    zz, shape, scalar = _as_array(z, float)
    ww = 1.0 - zz if w is None else np.atleast_1d(np.asarray(w, dtype=float)).ravel()
    if np.any(zz < 0.0) or np.any(ww <= 0.0):
        raise DomainError("hyp2f1 requires 0 <= z < 1")

    terminating = _nearest_nonpositive_int(a) is not None or _nearest_nonpositive_int(b) is not None
    direct = np.ones(zz.shape, dtype=bool) if terminating else zz <= ctl.split

    out = np.empty(zz.shape, dtype=complex)
    if direct.any():
        out[direct] = _series(a, b, c, zz[direct], ctl)
    if (~direct).any():
        out[~direct] = _transformed(a, b, c, ww[~direct], ctl)
    if flip:
        out = np.conj(out)
    return _restore(out, shape, scalar)


def hyp2f1_derivative(
    a: complex,
    b: complex,
    c: complex,
    z: ArrayLike,
    ctl: Optional[SeriesControl] = None,
    *,
    w: Optional[ArrayLike] = None,
):
    """dF/dz = (ab/c) F(a+1, b+1; c+1; z)."""
    a, b, c = _snap(complex(a)), _snap(complex(b)), complex(c)
    if is_pole(c):
        raise PoleError(c, "c")
    scale = a * b / c
    if scale == 0:
        zz, shape, scalar = _as_array(z, float)
        return _restore(np.zeros(zz.shape, dtype=complex), shape, scalar)
    f = hyp2f1(a + 1.0, b + 1.0, c + 1.0, z, ctl, w=w)
    return scale * f
