import math

import numpy as np
import pytest

from numerics.errors import ParameterError, StepResolutionError, ThresholdError
from numerics.grid import GridFunction
from oracle.integrator import (
    IntegratorSpec,
    Method,
    Seed,
    check_resolution,
    discrete_wavenumber,
    integrate_state,
    wronskian,
)
from oracle.observables import estimate_measure, extract_RT, fit_plane_waves, shoot_bound_states
from physics.rosenmorse import RMParams, bound_spectrum, scattering_state
from physics.scatter import scatter
from physics.spectral import measure


def test_spec_from_config(config):
    spec = IntegratorSpec.from_config(config["oracle"], step=0.01)
    assert spec.x_min == -35.0 and spec.x_max == 35.0
    assert spec.step == 0.01 and spec.method is Method.NUMEROV
    lattice = spec.lattice()
    assert np.any(lattice == 0.0)
    assert lattice[0] <= -35.0 and lattice[-1] >= 35.0


def test_spec_validation():
    with pytest.raises(ParameterError):
        IntegratorSpec(step=0.0)
    with pytest.raises(ParameterError):
        IntegratorSpec(x_min=1.0, x_max=-1.0)
    with pytest.raises(ValueError):
        IntegratorSpec(method="euler")


def test_discrete_wavenumber_tends_to_continuum():
    assert discrete_wavenumber(4.0, 1e-3).imag == pytest.approx(2.0, rel=1e-10)
    assert discrete_wavenumber(-4.0, 1e-3).real == pytest.approx(2.0, rel=1e-10)


def test_resolution_checks(well):
    with pytest.raises(StepResolutionError):
        check_resolution(well, 30.0, IntegratorSpec(step=0.5))
    with pytest.raises(ThresholdError):
        check_resolution(well, 2.0, IntegratorSpec())


def test_plane_wave_fit_recovers_amplitudes():
    x = np.linspace(-30.0, -25.0, 400)
    lam = 1.7j
    psi = (0.3 - 0.2j) * np.exp(lam * x) + (1.1 + 0.4j) * np.exp(-lam * x)
    A, B = fit_plane_waves(x, psi, lam)
    assert A == pytest.approx(0.3 - 0.2j, abs=1e-12)
    assert B == pytest.approx(1.1 + 0.4j, abs=1e-12)


@pytest.mark.slow
def test_wronskian_is_constant(well):
    spec = IntegratorSpec(step=0.005)
    E = 3.0 ** 2 - 2.0
    psi = integrate_state(well, E, spec, Seed.RIGHT_OUTGOING)
    conj = GridFunction(psi.nodes, np.conj(psi.values))
    w = wronskian(well, E, psi, conj)
    assert np.ptp(np.abs(w)) <= 1e-4 * np.mean(np.abs(w))


@pytest.mark.slow
@pytest.mark.parametrize("alpha,beta,k", [(0.5, 0.25, 2.0), (2.5, 1.0, 3.0), (1.5, 1.0, 6.0)])
def test_oracle_reproduces_closed_form_coefficients(alpha, beta, k):
    p = RMParams(alpha, beta)
    R, T = extract_RT(p, k)
    exact = scatter(p, k)
    assert R == pytest.approx(exact.R, abs=1e-6)
    assert T == pytest.approx(exact.T, abs=1e-6)


@pytest.mark.slow
def test_rk4_oracle_agrees():
    p = RMParams(2.5, 1.0)
    R, T = extract_RT(p, 3.0, IntegratorSpec(step=0.002, method=Method.RK4))
    assert R == pytest.approx(scatter(p, 3.0).R, abs=1e-6)


@pytest.mark.slow
@pytest.mark.parametrize("k", [1.5, 3.0])
def test_oracle_spectral_weight(k):
    p = RMParams(0.7, 1.0)
    assert estimate_measure(p, k) == pytest.approx(measure(p, k), rel=1e-4)


@pytest.mark.slow
@pytest.mark.parametrize("alpha,beta", [(2.5, 1.0), (0.4, 1.0), (1.0, 0.0)])
def test_shooting_finds_closed_form_levels(alpha, beta):
    p = RMParams(alpha, beta)
    closed = [s.energy for s in bound_spectrum(p)]
    shot = shoot_bound_states(p)
    assert len(shot) == len(closed)
    for e_closed, e_shot in zip(closed, sorted(shot)):
        assert e_shot == pytest.approx(e_closed, abs=1e-8)


def test_shooting_window_must_lie_below_continuum(well):
    with pytest.raises(ParameterError):
        shoot_bound_states(well, E_range=(-5.0, 0.0))
    assert math.isfinite(well.threshold)


@pytest.mark.slow
def test_reflectionless_well_through_oracle():
    R, T = extract_RT(RMParams(1.0, 0.0), 1.5)
    assert R <= 1e-7
    assert T == pytest.approx(1.0, abs=1e-7)


def test_oracle_rejects_below_barrier_request(well):
    with pytest.raises(ParameterError):
        extract_RT(well, 1.5)


@pytest.mark.slow
def test_oracle_state_matches_closed_form_shape(well):
    k = 3.0
    spec = IntegratorSpec(step=0.002)
    psi = integrate_state(well, k * k - 2.0 * well.beta, spec, Seed.RIGHT_OUTGOING)
    inner = (psi.nodes >= -10.0) & (psi.nodes <= 10.0)
    x = psi.nodes[inner]
    exact = scattering_state(well, k, x)
    j = int(np.argmin(np.abs(x)))
    scaled = psi.values[inner] * (exact[j] / psi.values[inner][j])
    assert np.max(np.abs(scaled - exact)) <= 1e-6 * np.max(np.abs(exact))
