# utils/config.py
# Centralized configuration dictionary with user overrides from settings.py.

from __future__ import annotations

import copy
import importlib.util
from pathlib import Path
from typing import Any, Dict, Optional

from utils.logger import get_logger

logger = get_logger(__name__)

# ====== DEFAULT (SAFE) CONFIG ======
# NOTE: Fallback values. Overrides come from settings.py (top-level dict named
# SETTINGS) or from a file passed with --config; command-line flags win last.

_DEFAULT_CONFIG: Dict[str, Any] = {
    "system": {
        "CHECK_DEPENDENCIES": False,  # Report missing packages at startup
    },

    # +––––––––––––––––––––––––––––––––––––––+
    # | Special functions and channel limits |
    # +––––––––––––––––––––––––––––––––––––––+
    "numerics": {
        "SERIES_REL_TOL": 1e-15,    # 2F1 power-series truncation
        "SERIES_MAX_TERMS": 20000,
        "X_SWITCH": 20.0,           # |x| beyond which D(tanh x) uses its exponential forms
        "K_MIN": 1e-6,              # Zero-momentum exclusion
        "THRESHOLD_BAND": 1e-6,     # Exclusion around |k| = 2*sqrt(beta)
    },

    "quadrature": {
        "EPSABS": 1e-12,            # Adaptive quad_vec rules (identity, windowed overlaps)
        "EPSREL": 1e-11,
        "LIMIT": 4000,              # Max subintervals for adaptive rules
        "WINDOW_L": 15.0,           # Default orthogonality window
    },

    # +–––––––––––––––––––––––––––––––+
    # | Integral transform grids      |
    # +–––––––––––––––––––––––––––––––+
    "transform": {
        "X_MIN": -30.0,
        "X_MAX": 30.0,
        "POINTS_PER_WAVELENGTH": 20,
        "K_CENTER": 5.0,            # Gaussian test packet F0; support [2.6, 7.4] clears 2*sqrt(beta) for beta <= 1.6
        "K_WIDTH": 0.3,
        "K_SPAN_WIDTHS": 8.0,       # F0 grid covers center +- span*width
        "N_K": 241,
    },

    # +–––––––––––––––––––––––––––––––+
    # | ODE oracle                    |
    # +–––––––––––––––––––––––––––––––+
    "oracle": {
        "METHOD": "numerov",        # numerov | rk4
        "STEP": 0.004,
        "SEED_OFFSET": 35.0,        # |x| of the asymptotic seed
        "FIT_WAVELENGTHS": 4,       # Window length of the A/B projection
        "SHOOT_STEP": 0.0025,
        "SHOOT_SCAN_POINTS": 160,
        "SHOOT_TOL": 1e-12,
    },

    # +–––––––––––––––––––––––––––––––+
    # | Output files                  |
    # +–––––––––––––––––––––––––––––––+
    "export": {
        "OUT_DIR": "data",
        "FORMAT": "csv",            # csv | json
        "SIG_DIGITS": 17,
    },

    # Parameter defaults for subcommands when flags are omitted.
    "defaults": {
        "ALPHA": 2.5,
        "BETA": 1.0,
        "K": 3.0,
        "K_MIN": 0.1,
        "K_MAX": 8.0,
        "N": 200,
        "X_MIN": -20.0,
        "X_MAX": 20.0,
    },

    "validate": {
        "PRESET": "fast",           # fast | full
        "SEED": 20240611,           # Random parameter draws
    },

    "parallel": {
        "WORKERS": 4,               # Row-level thread pool; 1 = serial
    },
}


# ====== MERGE (SETTINGS OVERRIDE DEFAULTS) ======
def _merge(defaults: Any, overrides: Any) -> Any:
    """Recursively merge overrides into defaults.

    - Dict nodes merge key by key; extra user keys are kept.
    - Non-dict nodes: override wins if provided (None keeps the default).
    """
    if not isinstance(defaults, dict) or not isinstance(overrides, dict):
        return overrides if overrides is not None else defaults

    out: Dict[str, Any] = {}
    for k in list(defaults.keys()) + [k for k in overrides.keys() if k not in defaults]:
        dv = defaults.get(k)
        if k in overrides:
            ov = overrides[k]
            if isinstance(dv, dict) and isinstance(ov, dict):
                out[k] = _merge(dv, ov)
            else:
                out[k] = ov if ov is not None else copy.deepcopy(dv)
        else:
            out[k] = copy.deepcopy(dv)
    return out


def _load_settings_file(path: Path) -> Dict[str, Any]:
    """Import SETTINGS from an arbitrary python file; exit 2 when malformed."""
    try:
        spec = importlib.util.spec_from_file_location("_rmscat_user_settings", path)
        if spec is None or spec.loader is None:
            raise ImportError(f"cannot load {path}")
        module = importlib.util.module_from_spec(spec)
        spec.loader.exec_module(module)
        settings = getattr(module, "SETTINGS")
    except Exception as e:
        logger.error("Failed to import SETTINGS from %s: %s", path, e)
        raise SystemExit(2)

    if not isinstance(settings, dict):
        logger.error("Invalid SETTINGS in %s: expected dict, got %s", path, type(settings).__name__)
        raise SystemExit(2)
    return settings


def load_config(path: Optional[str] = None) -> Dict[str, Any]:
    """Return defaults overlaid with a settings file.

    Without `path`, settings.py at the project root is used when present.
    """
    if path is not None:
        return _merge(_DEFAULT_CONFIG, _load_settings_file(Path(path)))

    root_settings = Path(__file__).resolve().parents[1] / "settings.py"
    if not root_settings.exists():
        logger.info("settings.py not found; using built-in defaults")
        return copy.deepcopy(_DEFAULT_CONFIG)
    return _merge(_DEFAULT_CONFIG, _load_settings_file(root_settings))


def default_config() -> Dict[str, Any]:
    """Built-in defaults only (tests use this to stay independent of settings.py)."""
    return copy.deepcopy(_DEFAULT_CONFIG)


def apply_overrides(config: Dict[str, Any], overrides: Dict[str, Any]) -> Dict[str, Any]:
    """Overlay flag-derived overrides (same nested shape) on a loaded config."""
    return _merge(config, overrides)


CONFIG: Dict[str, Any] = load_config()

logger.debug("CONFIG loaded with user overrides from settings.py")
