# cli/run_config.py
# Flag overrides and the validated per-command run configuration.

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

import numpy as np

from numerics.errors import ConfigError, RMScatError
from numerics.genleg import X_SWITCH
from numerics.quadrature import QuadratureControl
from numerics.specfun import SeriesControl
from physics.rosenmorse import K_MIN, THRESHOLD_BAND, RMParams, check_wavenumber
from utils.helpers import linspace_excluding, wavenumber_bands

# argparse dest -> (config section, key); x-range flags depend on the command
_FLAG_MAP = {
    "alpha": ("defaults", "ALPHA"),
    "beta": ("defaults", "BETA"),
    "k": ("defaults", "K"),
    "k_min": ("defaults", "K_MIN"),
    "k_max": ("defaults", "K_MAX"),
    "n": ("defaults", "N"),
    "k_center": ("transform", "K_CENTER"),
    "k_width": ("transform", "K_WIDTH"),
    "n_k": ("transform", "N_K"),
    "format": ("export", "FORMAT"),
    "preset": ("validate", "PRESET"),
    "seed": ("validate", "SEED"),
    "workers": ("parallel", "WORKERS"),
}


@dataclass(frozen=True)
class NumericsControls:
    """Series, quadrature and wavenumber-exclusion settings handed to the library.

    The same object fills the output header, so a header only lists values that were applied.
    """
    series: SeriesControl = field(default_factory=SeriesControl)
    quadrature: QuadratureControl = field(default_factory=QuadratureControl)
    x_switch: float = X_SWITCH
    k_min: float = K_MIN
    threshold_band: float = THRESHOLD_BAND
    fit_wavelengths: float = 4.0

    @classmethod
    def from_config(cls, config: Dict[str, Any]) -> "NumericsControls":
        num, q = config["numerics"], config["quadrature"]
        try:
            controls = cls(
                series=SeriesControl(rel_tol=float(num["SERIES_REL_TOL"]), max_terms=int(num["SERIES_MAX_TERMS"])),
                quadrature=QuadratureControl(epsabs=float(q["EPSABS"]), epsrel=float(q["EPSREL"]), limit=int(q["LIMIT"])),
                x_switch=float(num["X_SWITCH"]),
                k_min=float(num["K_MIN"]),
                threshold_band=float(num["THRESHOLD_BAND"]),
                fit_wavelengths=float(config["oracle"]["FIT_WAVELENGTHS"]),
            )
        except RMScatError as e:
            raise ConfigError(f"numerics settings: {e}") from e
        for name in ("x_switch", "k_min", "threshold_band", "fit_wavelengths"):
            if not getattr(controls, name) > 0.0:
                raise ConfigError(f"{name} must be > 0, got {getattr(controls, name):g}")
        return controls

    def meta(self) -> Dict[str, Any]:
        """Tolerances recorded in every output header."""
        return {
            "series_rel_tol": self.series.rel_tol,
            "series_max_terms": int(self.series.max_terms),
            "x_switch": self.x_switch,
            "k_min_exclusion": self.k_min,
            "threshold_band": self.threshold_band,
            "quad_epsabs": self.quadrature.epsabs,
            "quad_epsrel": self.quadrature.epsrel,
            "quad_limit": int(self.quadrature.limit),
            "fit_wavelengths": self.fit_wavelengths,
        }


def flag_overrides(args: Any) -> Dict[str, Dict[str, Any]]:
    """Nested override dict from the flags that were actually given."""
    out: Dict[str, Dict[str, Any]] = {}
    for dest, (section, key) in _FLAG_MAP.items():
        v = getattr(args, dest, None)
        if v is not None:
            out.setdefault(section, {})[key] = v
    x_section = "transform" if getattr(args, "command", None) == "transform" else "defaults"
    for dest, key in (("x_min", "X_MIN"), ("x_max", "X_MAX")):
        v = getattr(args, dest, None)
        if v is not None:
            out.setdefault(x_section, {})[key] = v
    return out


@dataclass(frozen=True)
class RunConfig:
    """Everything one command needs, checked against the library preconditions."""
    command: str
    params: RMParams
    out_path: str
    fmt: str
    workers: int = 1
    sig_digits: int = 17
    k: Optional[float] = None
    k_grid: Optional[np.ndarray] = None
    x_min: float = -20.0
    x_max: float = 20.0
    n: int = 200
    k_center: float = 5.0
    k_width: float = 0.3
    k_span_widths: float = 8.0
    n_k: int = 241
    points_per_wavelength: int = 20
    preset: str = "fast"
    seed: int = 0
    controls: NumericsControls = field(default_factory=NumericsControls)
    meta: Dict[str, Any] = field(default_factory=dict)


def _out_path(config: Dict[str, Any], command: str, out: Optional[str], fmt: str) -> str:
    if out:
        stem, _ = os.path.splitext(out)
        return f"{stem}.{fmt}"
    return os.path.join(str(config["export"]["OUT_DIR"]), f"{command}.{fmt}")


def build_run_config(command: str, config: Dict[str, Any], out: Optional[str] = None) -> RunConfig:
    """Validate the merged configuration for `command`; ConfigError names the failed precondition."""
    d, tr, ex = config["defaults"], config["transform"], config["export"]
    controls = NumericsControls.from_config(config)

    fmt = str(ex["FORMAT"]).lower()
    if fmt not in ("csv", "json"):
        raise ConfigError(f"format must be csv or json, got '{fmt}'")
    workers = int(config["parallel"]["WORKERS"])
    if workers < 1:
        raise ConfigError(f"workers must be >= 1, got {workers}")

    try:
        params = RMParams(float(d["ALPHA"]), float(d["BETA"]))
    except RMScatError as e:
        raise ConfigError(f"potential parameters: {e}") from e

    base = dict(command=command, params=params, out_path=_out_path(config, command, out, fmt),
                fmt=fmt, workers=workers, sig_digits=int(ex["SIG_DIGITS"]), controls=controls)
    meta: Dict[str, Any] = {"command": command, "alpha": params.alpha, "beta": params.beta}

    if command in ("coefficients", "measure"):
        k_min, k_max, n = float(d["K_MIN"]), float(d["K_MAX"]), int(d["N"])
        if n < 1:
            raise ConfigError(f"--n must be >= 1, got {n}")
        if not k_min < k_max and n > 1:
            raise ConfigError(f"need k_min < k_max, got [{k_min:g}, {k_max:g}]")
        bands = wavenumber_bands(params.threshold, controls.k_min, controls.threshold_band)
        try:
            grid = linspace_excluding(k_min, k_max, n, bands)
        except ValueError as e:
            raise ConfigError(f"k range: {e}") from e
        meta.update(k_min=k_min, k_max=k_max, n=n)
        return RunConfig(k_grid=grid, n=n, meta=meta, **base)

    if command == "state":
        k, x_min, x_max, n = float(d["K"]), float(d["X_MIN"]), float(d["X_MAX"]), int(d["N"])
        try:
            check_wavenumber(params, k, k_min=controls.k_min, band=controls.threshold_band)
        except RMScatError as e:
            raise ConfigError(f"--k: {e}") from e
        if not x_min < x_max:
            raise ConfigError(f"need x_min < x_max, got [{x_min:g}, {x_max:g}]")
        if n < 2:
            raise ConfigError(f"--n must be >= 2, got {n}")
        meta.update(k=k, x_min=x_min, x_max=x_max, n=n)
        return RunConfig(k=k, x_min=x_min, x_max=x_max, n=n, meta=meta, **base)

    if command == "spectrum":
        return RunConfig(meta=meta, **base)

    if command == "transform":
        center, width = float(tr["K_CENTER"]), float(tr["K_WIDTH"])
        span, n_k = float(tr["K_SPAN_WIDTHS"]), int(tr["N_K"])
        x_min, x_max = float(tr["X_MIN"]), float(tr["X_MAX"])
        if not width > 0.0:
            raise ConfigError(f"--k-width must be > 0, got {width:g}")
        if n_k < 3:
            raise ConfigError(f"--n-k must be >= 3, got {n_k}")
        if not x_min < x_max:
            raise ConfigError(f"need x_min < x_max, got [{x_min:g}, {x_max:g}]")
        k_lo = center - span * width
        edge = params.threshold + controls.threshold_band
        if not k_lo > max(edge, controls.k_min):
            raise ConfigError(
                f"packet support starts at k={k_lo:.6g}; it must lie above the barrier threshold {params.threshold:.6g}"
            )
        meta.update(k_center=center, k_width=width, k_span_widths=span, n_k=n_k, x_min=x_min, x_max=x_max,
                    points_per_wavelength=int(tr["POINTS_PER_WAVELENGTH"]))
        return RunConfig(k_center=center, k_width=width, k_span_widths=span, n_k=n_k, x_min=x_min, x_max=x_max,
                         points_per_wavelength=int(tr["POINTS_PER_WAVELENGTH"]), meta=meta, **base)

    if command == "validate":
        preset = str(config["validate"]["PRESET"]).lower()
        if preset not in ("fast", "full"):
            raise ConfigError(f"preset must be fast or full, got '{preset}'")
        seed = int(config["validate"]["SEED"])
        meta.update(preset=preset, seed=seed)
        return RunConfig(preset=preset, seed=seed, meta=meta, **base)

    raise ConfigError(f"unknown command '{command}'")
