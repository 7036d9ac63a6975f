import math

import numpy as np
import pytest

from numerics.errors import DomainError, ParameterError, ThresholdError, ZeroMomentumError
from numerics.genleg import Regime, asymptotic_amplitudes, eval_D, eval_D_shifted, eval_D_tanh
from physics.rosenmorse import (
    RMParams,
    bound_spectrum,
    bound_state_wavefunction,
    energy_of_k,
    params_from_k,
    potential,
    regime_of_energy,
    scattering_state,
    schrodinger_residual,
)


def test_params_validation():
    with pytest.raises(ParameterError):
        RMParams(-0.5, 1.0)
    with pytest.raises(ParameterError):
        RMParams(1.0, -0.1)
    assert RMParams(0.0, 0.0).threshold == 0.0
    assert RMParams(1.0, 2.25).threshold == pytest.approx(3.0)


def test_potential_values():
    p = RMParams(1.0, 0.5)
    assert potential(p, 0.0) == pytest.approx(-2.0)
    assert potential(p, 40.0) == pytest.approx(1.0)
    assert potential(p, -40.0) == pytest.approx(-1.0)


def test_energy_and_regime():
    assert energy_of_k(1.0, 3.0) == pytest.approx(7.0)
    with pytest.raises(DomainError):
        energy_of_k(1.0, 0.0)
    assert regime_of_energy(1.0, -3.0) is Regime.BOUND
    assert regime_of_energy(1.0, 0.0) is Regime.BELOW_BARRIER
    assert regime_of_energy(1.0, 2.0) is Regime.ABOVE_BARRIER


@pytest.mark.parametrize("k", [0.5, -1.5, 2.5, -6.0])
def test_channel_parameters(well, k):
    ch = params_from_k(well, k)
    assert ch.mu - ch.eta == pytest.approx(1j * k)
    assert ch.nu == well.alpha
    if k * k < 4.0 * well.beta:
        assert ch.regime is Regime.BELOW_BARRIER
        assert ch.eta == pytest.approx(ch.mu.conjugate())
        assert (ch.mu + ch.eta).real < 0.0
    else:
        q = math.copysign(math.sqrt(k * k - 4.0 * well.beta), k)
        assert ch.regime is Regime.ABOVE_BARRIER
        assert ch.mu + ch.eta == pytest.approx(1j * q)


def test_excluded_wavenumbers(well):
    with pytest.raises(ZeroMomentumError):
        params_from_k(well, 1e-7)
    with pytest.raises(ThresholdError):
        params_from_k(well, 2.0 + 5e-7)
    with pytest.raises(ThresholdError):
        params_from_k(well, -2.0)


@pytest.mark.parametrize("alpha,beta,k", [(2.5, 1.0, 1.5), (2.5, 1.0, 3.0), (0.3, 0.25, 4.2), (1.7, 0.0, 0.8)])
def test_states_solve_schrodinger_equation(alpha, beta, k):
    res = schrodinger_residual(RMParams(alpha, beta), k, np.linspace(-10.0, 10.0, 41))
    assert float(np.max(res)) < 1e-6


def test_free_particle_is_plane_wave():
    x = np.linspace(-20.0, 20.0, 101)
    psi = scattering_state(RMParams(0.0, 0.0), 1.3, x)
    np.testing.assert_allclose(psi, np.exp(1.3j * x), rtol=1e-12, atol=1e-12)


def test_below_barrier_state_decays_to_the_right(well):
    assert abs(scattering_state(well, 1.5, 25.0)) < 1e-9


def test_above_barrier_state_is_larger_on_the_transmitted_side(well):
    right = np.mean(np.abs(scattering_state(well, 3.0, np.linspace(10.0, 20.0, 201))))
    left = np.mean(np.abs(scattering_state(well, 3.0, np.linspace(-20.0, -10.0, 201))))
    assert left < right


@pytest.mark.parametrize("alpha,beta,count", [(2.5, 1.0, 2), (3.2, 0.5, 3), (0.4, 1.0, 0), (1.0, 0.0, 1)])
def test_bound_state_counts(alpha, beta, count):
    assert len(bound_spectrum(RMParams(alpha, beta))) == count


def test_bound_energies_closed_form():
    states = bound_spectrum(RMParams(2.5, 1.0))
    assert [s.n for s in states] == [0, 1]
    for s in states:
        d = 2.5 - s.n
        assert s.energy == pytest.approx(-d * d - 1.0 / (d * d), rel=1e-15)
        assert s.mu == pytest.approx(-1.0 / d)
        assert s.eta == pytest.approx(s.n - 2.5)
    assert bound_spectrum(RMParams(1.0, 0.0))[0].energy == -1.0


def test_bound_states_lie_below_the_continuum():
    p = RMParams(3.2, 0.5)
    energies = [s.energy for s in bound_spectrum(p)]
    assert energies == sorted(energies)
    assert all(e < -2.0 * p.beta for e in energies)


def test_bound_wavefunction_is_normalizable(well):
    s = bound_spectrum(well)[0]
    peak = np.max(np.abs(bound_state_wavefunction(well, s, np.linspace(-3.0, 3.0, 61))))
    tails = np.abs(bound_state_wavefunction(well, s, np.array([-15.0, 15.0])))
    assert np.all(tails < 1e-6 * peak)


@pytest.mark.parametrize("k", [1.2, 3.5])
def test_negative_wavenumber_is_complex_conjugate(well, k):
    x = np.linspace(-8.0, 8.0, 17)
    np.testing.assert_allclose(scattering_state(well, -k, x), np.conj(scattering_state(well, k, x)),
                               rtol=1e-10, atol=1e-14)


def test_bound_state_B_amplitude_vanishes(well):
    for state in bound_spectrum(well):
        amp = asymptotic_amplitudes(state.channel(well.alpha))
        assert amp.B == 0
        assert abs(amp.A) > 0


def test_bound_state_with_pole_pair_in_A():
    # alpha = 3, beta = 0, n = 1: A = 4 Gamma(3) Gamma(-2) / (Gamma(4) Gamma(-3)) = -4
    p = RMParams(3.0, 0.0)
    state = bound_spectrum(p)[1]
    ch = state.channel(p.alpha)
    amp = asymptotic_amplitudes(ch)
    assert amp.A == pytest.approx(-4.0, rel=1e-14)
    assert amp.B == 0

    for x in (-21.0, -25.0):
        direct = eval_D_tanh(ch, x, x_switch=30.0)
        assert direct == pytest.approx(-4.0 * math.exp(2.0 * x), rel=1e-12)
        assert bound_state_wavefunction(p, state, x) == pytest.approx(direct, rel=1e-9)

    x = np.linspace(-0.9, 0.9, 12)
    np.testing.assert_allclose(eval_D_shifted(ch, x), eval_D(ch, x), rtol=1e-12, atol=1e-15)
