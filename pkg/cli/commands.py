# cli/commands.py
# Table-producing subcommands: coefficients, state, spectrum, measure, transform.

from __future__ import annotations

import os
from typing import Any, Dict, List

import numpy as np

from cli.run_config import RunConfig
from export.export_sink import Table, TableSink
from physics.rosenmorse import bound_spectrum, params_from_k, scattering_state
from physics.scatter import scatter
from physics.spectral import (
    default_x_grid,
    forward_transform,
    gaussian_packet,
    inverse_transform,
    measure,
    relative_l2_error,
)
from utils.helpers import parallel_map
from utils.logger import get_logger

logger = get_logger(__name__)


def _meta(run: RunConfig, config: Dict[str, Any]) -> Dict[str, Any]:
    return {**run.meta, **run.controls.meta()}


# ====== COMMANDS ======
def cmd_coefficients(run: RunConfig, sink: TableSink, config: Dict[str, Any]) -> List[str]:
    p = run.params
    rows = parallel_map(lambda k: scatter(p, float(k)), run.k_grid, run.workers)
    table = Table("coefficients", {
        "k": [r.k for r in rows],
        "R": [r.R for r in rows],
        "T": [r.T for r in rows],
        "re_B_over_A": [r.B_over_A.real for r in rows],
        "im_B_over_A": [r.B_over_A.imag for r in rows],
        "re_C_over_A": [r.C_over_A.real for r in rows],
        "im_C_over_A": [r.C_over_A.imag for r in rows],
        "unitarity_residual": [r.unitarity_residual if r.T > 0.0 else abs(r.R - 1.0) for r in rows],
    }, _meta(run, config))
    logger.info("Coefficients: alpha=%.6g beta=%.6g rows=%d", p.alpha, p.beta, len(rows))
    return [sink.write(table, run.out_path)]


def cmd_state(run: RunConfig, sink: TableSink, config: Dict[str, Any]) -> List[str]:
    p = run.params
    x = np.linspace(run.x_min, run.x_max, run.n)
    ctl = run.controls
    psi = np.asarray(scattering_state(p, run.k, x, ctl.series, x_switch=ctl.x_switch))
    ch = params_from_k(p, run.k)
    meta = {**_meta(run, config), "regime": ch.regime.value,
            "mu": f"{ch.mu.real:.17g}{ch.mu.imag:+.17g}j", "eta": f"{ch.eta.real:.17g}{ch.eta.imag:+.17g}j"}
    table = Table("state", {"x": x, "re_psi": psi.real, "im_psi": psi.imag, "abs_psi": np.abs(psi)}, meta)
    logger.info("State: k=%.6g regime=%s samples=%d", run.k, ch.regime.value, x.size)
    return [sink.write(table, run.out_path)]


def cmd_spectrum(run: RunConfig, sink: TableSink, config: Dict[str, Any]) -> List[str]:
    states = bound_spectrum(run.params)
    table = Table("spectrum", {
        "n": [s.n for s in states],
        "energy": [s.energy for s in states],
        "mu": [s.mu for s in states],
        "eta": [s.eta for s in states],
    }, _meta(run, config))
    return [sink.write(table, run.out_path)]


def cmd_measure(run: RunConfig, sink: TableSink, config: Dict[str, Any]) -> List[str]:
    p = run.params
    w = parallel_map(lambda k: measure(p, float(k)), run.k_grid, run.workers)
    above = (run.k_grid ** 2 > 4.0 * p.beta).astype(float)
    table = Table("measure", {"k": run.k_grid, "w": w, "above_barrier": above}, _meta(run, config))
    logger.info("Measure table: alpha=%.6g beta=%.6g rows=%d", p.alpha, p.beta, len(w))
    return [sink.write(table, run.out_path)]


def cmd_transform(run: RunConfig, sink: TableSink, config: Dict[str, Any]) -> List[str]:
    """Synthesize f from a Gaussian F0, analyze it back; writes a k-space and an x-space table."""
    p = run.params
    half = run.k_span_widths * run.k_width
    k_grid = np.linspace(run.k_center - half, run.k_center + half, run.n_k)
    x_grid = default_x_grid(k_grid[-1], run.x_min, run.x_max, run.points_per_wavelength)

    F0 = gaussian_packet(k_grid, run.k_center, run.k_width)
    ctl = run.controls
    f = inverse_transform(p, F0, x_grid, run.workers, ctl.series, ctl.x_switch)
    F1 = forward_transform(p, f, k_grid, run.workers, ctl.series, ctl.x_switch)
    err = relative_l2_error(F1, F0)

    meta = {**_meta(run, config), "n_x": int(x_grid.size), "round_trip_rel_l2": err}
    stem, ext = os.path.splitext(run.out_path)
    k_table = Table("transform_k", {
        "k": k_grid, "re_F0": F0.values.real, "im_F0": F0.values.imag,
        "re_F": F1.values.real, "im_F": F1.values.imag,
    }, meta)
    x_table = Table("transform_x", {
        "x": x_grid, "re_f": f.values.real, "im_f": f.values.imag, "abs_f": np.abs(f.values),
    }, meta)
    logger.info("Transform: alpha=%.6g beta=%.6g nk=%d nx=%d round-trip error %.3e",
                p.alpha, p.beta, k_grid.size, x_grid.size, err)
    return [sink.write(k_table, f"{stem}_k{ext}"), sink.write(x_table, f"{stem}_x{ext}")]


COMMAND_MAP = {
    "coefficients": cmd_coefficients,
    "state": cmd_state,
    "spectrum": cmd_spectrum,
    "measure": cmd_measure,
    "transform": cmd_transform,
}
