# cli/validate.py
# Acceptance suite: closed-form identities (fast) plus oracle cross-checks (full).

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Sequence, Tuple

import mpmath
import numpy as np

from cli.run_config import NumericsControls, RunConfig
from export.export_sink import Table, TableSink
from numerics.errors import RMScatError
from numerics.genleg import ChannelParams, eval_D
from oracle.integrator import IntegratorSpec
from oracle.observables import estimate_measure, extract_RT, shoot_bound_states
from physics.rosenmorse import RMParams, bound_spectrum, params_from_k, scattering_state, schrodinger_residual
from physics.scatter import scatter
from physics.spectral import (
    boundary_term,
    default_k_grid,
    default_x_grid,
    gaussian_packet,
    integral_identity_residual,
    legendre_measure,
    measure,
    round_trip_error,
    threshold_limit,
    windowed_inner_product,
)
from utils.dependencies import package_versions
from utils.helpers import stop_requested
from utils.logger import get_logger

logger = get_logger(__name__)

Metric = Tuple[float, str]


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str          # pass | fail | not_run
    value: float
    tolerance: float
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"


@dataclass(frozen=True)
class Check:
    name: str
    tolerance: float
    run: Callable[["SuiteContext"], Metric]
    full_only: bool = False


@dataclass
class SuiteContext:
    rng: np.random.Generator
    config: Dict[str, Any]
    controls: NumericsControls
    workers: int = 1

    def oracle_spec(self, **overrides: Any) -> IntegratorSpec:
        return IntegratorSpec.from_config(self.config["oracle"], **overrides)

    def state(self, p: RMParams, k: float, x: Any):
        return scattering_state(p, k, x, self.controls.series, x_switch=self.controls.x_switch)


def _random_k(rng: np.random.Generator, beta: float, lo: float = 0.3, hi: float = 5.0) -> float:
    """Uniform k away from the threshold by at least 0.05."""
    k = float(rng.uniform(lo, hi))
    if abs(k - 2.0 * math.sqrt(beta)) < 0.05:
        k += 0.1
    return k


# ====== FAST CHECKS ======
def check_unitarity(ctx: SuiteContext) -> Metric:
    worst = 0.0
    for a in (0.3, 1.0, 2.5):
        for b in (0.25, 1.0):
            p = RMParams(a, b)
            for k in np.linspace(2.0 * math.sqrt(b) + 0.01, 8.0, 50):
                worst = max(worst, scatter(p, float(k)).unitarity_residual)
    return worst, "max |R+T-1| over 300 above-barrier rows"


def check_total_reflection(ctx: SuiteContext) -> Metric:
    worst = 0.0
    for a in (0.3, 1.0, 2.5, 3.7):
        p = RMParams(a, 1.0)
        for k in np.linspace(0.05, 1.95, 25):
            r = scatter(p, float(k))
            worst = max(worst, abs(r.R - 1.0), math.inf if r.T != 0.0 else 0.0)
    return worst, "max |R-1| over 100 below-barrier rows (T must be exactly 0)"


def check_ode_residual(ctx: SuiteContext) -> Metric:
    x = np.linspace(-10.0, 10.0, 81)
    worst = 0.0
    for _ in range(12):
        a, b = float(ctx.rng.uniform(0.0, 3.0)), float(ctx.rng.uniform(0.0, 2.0))
        k = _random_k(ctx.rng, b)
        c = ctx.controls
        res = schrodinger_residual(RMParams(a, b), k, x, ctl=c.series, x_switch=c.x_switch)
        worst = max(worst, float(np.max(res)))
    return worst, "max scaled residual, 12 random (alpha, beta, k), x in [-10, 10]"


def check_legendre_reduction(ctx: SuiteContext) -> Metric:
    worst = 0.0
    for _ in range(200):
        v = float(ctx.rng.uniform(0.2, 2.0)) * (1.0 if ctx.rng.uniform() < 0.5 else -1.0)
        mu = complex(float(ctx.rng.uniform(-1.5, 0.5)), v)
        nu = float(ctx.rng.uniform(0.0, 4.0))
        x = float(ctx.rng.uniform(-0.95, 0.95))
        ours = complex(eval_D(ChannelParams(mu, 0.0, nu), x, ctx.controls.series))
        ref = complex(mpmath.gamma(1 - mpmath.mpc(mu)) * mpmath.legenp(nu, mpmath.mpc(mu), x, type=2))
        worst = max(worst, abs(ours - ref) / abs(ref))
    return worst, "max relative error of D^{mu,0}_nu vs Gamma(1-mu) P^mu_nu (mpmath), 200 samples"


def check_measure_limit(ctx: SuiteContext) -> Metric:
    worst = 0.0
    for a in (0.5, 1.0, 1.7, 2.0):
        for k in (0.5, 1.0, 2.0):
            w = measure(RMParams(a, 1e-10), k)
            ref = 2.0 * math.pi if float(a).is_integer() else legendre_measure(a, k)
            worst = max(worst, abs(w / ref - 1.0))
    return worst, "beta = 1e-10 measure vs the beta = 0 closed form"


def check_measure_parity(ctx: SuiteContext) -> Metric:
    worst = 0.0
    for a, b in ((0.7, 1.0), (2.5, 0.25), (1.0, 0.0)):
        p = RMParams(a, b)
        for k in np.linspace(0.1, 6.0, 40):
            if abs(k - p.threshold) < 1e-3:
                continue
            wp, wm = measure(p, float(k)), measure(p, -float(k))
            if not (wp > 0.0 and wm > 0.0):
                return math.inf, f"non-positive weight at alpha={a}, beta={b}, k={k:.6g}"
            worst = max(worst, abs(wp - wm) / wp)
    return worst, "max relative |w(k) - w(-k)|, all weights positive"


def check_threshold_continuity(ctx: SuiteContext) -> Metric:
    p = RMParams(0.7, 1.0)
    lim = threshold_limit(p)
    below = measure(p, p.threshold - 1e-5)
    above = measure(p, p.threshold + 1e-5)
    worst = max(abs(below / lim - 1.0), abs(above / lim - 1.0))
    return worst, f"w(2-1e-5)={below:.6g}, w(2+1e-5)={above:.6g}, limit={lim:.6g}"


def check_spectrum_counts(ctx: SuiteContext) -> Metric:
    expected = {(1.0, 0.0): 1, (2.5, 1.0): 2, (3.2, 0.5): 3, (0.4, 1.0): 0}
    bad = [ab for ab, n in expected.items() if len(bound_spectrum(RMParams(*ab))) != n]
    e0 = bound_spectrum(RMParams(1.0, 0.0))[0].energy
    return float(len(bad)) + abs(e0 + 1.0), f"count mismatches: {bad or 'none'}; alpha=1 ground state {e0:.17g}"


def check_figure_below(ctx: SuiteContext) -> Metric:
    v = abs(complex(ctx.state(RMParams(2.5, 1.0), 1.5, 25.0)))
    return v, "|psi(25)| below the barrier (alpha=2.5, beta=1, k=1.5)"


def check_figure_above(ctx: SuiteContext) -> Metric:
    p = RMParams(2.5, 1.0)
    right = float(np.mean(np.abs(ctx.state(p, 3.0, np.linspace(10.0, 20.0, 401)))))
    left = float(np.mean(np.abs(ctx.state(p, 3.0, np.linspace(-20.0, -10.0, 401)))))
    return left / right, f"mean|psi| left {left:.6g} / right {right:.6g} (must be < 1)"


def check_free_particle(ctx: SuiteContext) -> Metric:
    psi = ctx.state(RMParams(0.0, 0.0), 1.3, np.linspace(-20.0, 20.0, 201))
    return float(np.max(np.abs(np.abs(psi) - 1.0))), "max ||psi| - 1| for alpha = beta = 0"


# ====== FULL CHECKS ======
def check_oracle_rt(ctx: SuiteContext) -> Metric:
    spec = ctx.oracle_spec()
    worst, where = 0.0, ""
    for a in (0.3, 0.5, 1.5, 2.5, 3.3):
        for b in (0.25, 1.0):
            p = RMParams(a, b)
            for k in (2.0 * math.sqrt(b) + 0.05, 6.0):
                r = scatter(p, k)
                R, T = extract_RT(p, k, spec, ctx.controls.fit_wavelengths)
                d = max(abs(r.R - R), abs(r.T - T))
                if d > worst:
                    worst, where = d, f"alpha={a}, beta={b}, k={k:.6g}"
    return worst, f"max |closed - oracle| over 20 triples (worst at {where})"


def check_bound_oracle(ctx: SuiteContext) -> Metric:
    spec = ctx.oracle_spec(step=float(ctx.config["oracle"]["SHOOT_STEP"]))
    scan = int(ctx.config["oracle"]["SHOOT_SCAN_POINTS"])
    tol = float(ctx.config["oracle"]["SHOOT_TOL"])
    worst = 0.0
    for ab in ((1.0, 0.0), (2.5, 1.0), (3.2, 0.5), (0.4, 1.0)):
        p = RMParams(*ab)
        closed = sorted(s.energy for s in bound_spectrum(p))
        shot = sorted(shoot_bound_states(p, None, spec, scan, tol))
        if len(closed) != len(shot):
            return math.inf, f"level count {len(shot)} != {len(closed)} at alpha={ab[0]}, beta={ab[1]}"
        worst = max([worst] + [abs(c - s) for c, s in zip(closed, shot)])
    return worst, "max |E_closed - E_shooting|"


def check_integral_identity(ctx: SuiteContext) -> Metric:
    pairs: List[Tuple[ChannelParams, ChannelParams]] = [
        (ChannelParams(0.2j, 0.0, 1.3), ChannelParams(0.5j, 0.0, 1.3)),
    ]
    while len(pairs) < 20:
        b = float(ctx.rng.uniform(0.0, 1.5))
        a1, a2 = float(ctx.rng.uniform(0.0, 3.0)), float(ctx.rng.uniform(0.0, 3.0))
        ch1 = params_from_k(RMParams(a1, b), _random_k(ctx.rng, b))
        ch2 = params_from_k(RMParams(a2, b), _random_k(ctx.rng, b))
        pairs.append((ch1, ch2))
    q, series = ctx.controls.quadrature, ctx.controls.series
    worst = max(integral_identity_residual(c1, c2, -0.95, 0.95, q, series) for c1, c2 in pairs)
    return worst, "max identity residual on [-0.95, 0.95], 20 pairs incl. eta = gamma = 0"


def check_windowed_orthogonality(ctx: SuiteContext) -> Metric:
    L = float(ctx.config["quadrature"]["WINDOW_L"])
    p = RMParams(1.5, 0.5)
    worst = 0.0
    for _ in range(10):
        k = _random_k(ctx.rng, p.beta, 0.5, 4.0)
        pk = _random_k(ctx.rng, p.beta, 0.5, 4.0)
        if abs(abs(pk) - abs(k)) < 0.05:
            pk += 0.2
        c = ctx.controls
        inner = windowed_inner_product(p, pk, k, L, c.quadrature, c.series, c.x_switch)
        worst = max(worst, abs(inner - boundary_term(p, pk, k, L, c.series, c.x_switch)))
    return worst, f"max |windowed - boundary| at L = {L:g}, 10 pairs"


def check_measure_oracle(ctx: SuiteContext) -> Metric:
    p = RMParams(0.7, 1.0)
    spec = ctx.oracle_spec()
    worst = 0.0
    for k in (1.5, 3.0):
        worst = max(worst, abs(estimate_measure(p, k, spec, ctx.controls.fit_wavelengths) / measure(p, k) - 1.0))
    return worst, "relative |w_oracle / w_closed - 1| at k = 1.5 (below) and 3 (above)"


def check_round_trip(ctx: SuiteContext) -> Metric:
    tr = ctx.config["transform"]
    k_grid = default_k_grid(float(tr["K_CENTER"]), float(tr["K_WIDTH"]), float(tr["K_SPAN_WIDTHS"]), int(tr["N_K"]))
    x_grid = default_x_grid(k_grid[-1], float(tr["X_MIN"]), float(tr["X_MAX"]), int(tr["POINTS_PER_WAVELENGTH"]))
    F0 = gaussian_packet(k_grid, float(tr["K_CENTER"]), float(tr["K_WIDTH"]))
    c = ctx.controls
    err = round_trip_error(RMParams(1.5, 1.0), F0, x_grid, ctx.workers, c.series,
                           x_switch=c.x_switch, k_min=c.k_min, band=c.threshold_band)
    return err, "relative L2 error of forward(inverse(F0)), alpha=1.5, beta=1"


CHECKS: Sequence[Check] = (
    Check("unitarity", 1e-10, check_unitarity),
    Check("total_reflection", 1e-10, check_total_reflection),
    Check("ode_residual", 1e-6, check_ode_residual),
    Check("legendre_reduction", 1e-12, check_legendre_reduction),
    Check("measure_beta0_limit", 1e-6, check_measure_limit),
    Check("measure_parity", 1e-12, check_measure_parity),
    Check("measure_threshold", 0.05, check_threshold_continuity),
    Check("spectrum_counts", 1e-12, check_spectrum_counts),
    Check("state_below_decay", 1e-9, check_figure_below),
    Check("state_above_amplitude", 1.0, check_figure_above),
    Check("state_free_particle", 1e-12, check_free_particle),
    Check("oracle_rt", 1e-6, check_oracle_rt, full_only=True),
    Check("oracle_bound_states", 1e-8, check_bound_oracle, full_only=True),
    Check("integral_identity", 1e-8, check_integral_identity, full_only=True),
    Check("windowed_orthogonality", 1e-6, check_windowed_orthogonality, full_only=True),
    Check("oracle_measure", 1e-4, check_measure_oracle, full_only=True),
    Check("transform_round_trip", 1e-3, check_round_trip, full_only=True),
)


# ====== RUNNER ======
def run_suite(preset: str, seed: int, config: Dict[str, Any], workers: int = 1) -> List[CheckResult]:
    """Run the preset's checks in order; a stop request marks the rest as not run."""
    ctx = SuiteContext(np.random.default_rng(seed), config, NumericsControls.from_config(config), workers)
    selected = [c for c in CHECKS if preset == "full" or not c.full_only]
    results: List[CheckResult] = []

    for chk in selected:
        if stop_requested():
            results.append(CheckResult(chk.name, "not_run", math.nan, chk.tolerance, "stop requested"))
            continue
        t0 = time.perf_counter()
        try:
            value, detail = chk.run(ctx)
            status = "pass" if value <= chk.tolerance else "fail"
        except RMScatError as e:
            value, detail, status = math.nan, f"{type(e).__name__}: {e}", "fail"
        dt = time.perf_counter() - t0
        log = logger.info if status == "pass" else logger.error
        log("Validate: %-24s %s value=%.3e tol=%.1e (%.2f s)", chk.name, status, value, chk.tolerance, dt)
        results.append(CheckResult(chk.name, status, float(value), chk.tolerance, detail))
    return results


def cmd_validate(run: RunConfig, sink: TableSink, config: Dict[str, Any]) -> Tuple[List[str], bool]:
    """Write the report; returns (paths, all_passed)."""
    results = run_suite(run.preset, run.seed, config, run.workers)
    ok = all(r.passed for r in results)
    meta = {**run.meta, **run.controls.meta(),
            **{f"pkg_{k}": v for k, v in package_versions().items()},
            "passed": sum(r.passed for r in results), "total": len(results)}
    table = Table("validate", {
        "check": [r.name for r in results],
        "status": [r.status for r in results],
        "value": [r.value for r in results],
        "tolerance": [r.tolerance for r in results],
        "detail": [r.detail for r in results],
    }, meta)
    logger.info("Validate: preset=%s %d/%d checks passed", run.preset, meta["passed"], meta["total"])
    return [sink.write(table, run.out_path)], ok
