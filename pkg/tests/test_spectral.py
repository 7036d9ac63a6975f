import math

import numpy as np
import pytest

from numerics.errors import NonDecayingInputError, ParameterError, PrefactorSingularError
from numerics.genleg import ChannelParams, asymptotic_amplitudes
from numerics.grid import GridFunction
from physics.rosenmorse import (
    RMParams,
    bound_spectrum,
    bound_state_wavefunction,
    check_wavenumber,
    params_from_k,
    scattering_state,
)
from physics.scatter import flux_factor, transmission
from physics.spectral import (
    SpectralDensity,
    boundary_term,
    default_k_grid,
    default_x_grid,
    degenerate_coupling,
    degenerate_overlap,
    forward_transform,
    gaussian_packet,
    integral_identity_residual,
    inverse_transform,
    legendre_measure,
    measure,
    relative_l2_error,
    round_trip_error,
    spectral_density,
    threshold_limit,
    windowed_inner_product,
)


@pytest.mark.parametrize("k", [0.4, 1.5, 2.5, 6.0])
def test_measure_is_twice_pi_amplitude_squared(well, k):
    A = asymptotic_amplitudes(params_from_k(well, k)).A
    assert measure(well, k) == pytest.approx(2.0 * math.pi * abs(A) ** 2, rel=1e-9)


def test_measure_above_barrier_from_transmission():
    p = RMParams(0.7, 0.5)
    for k in (1.6, 3.0, 7.5):
        expected = 2.0 * math.pi * flux_factor(p, k) / transmission(p, k)
        assert measure(p, k) == pytest.approx(expected, rel=1e-12)


def test_measure_positive_and_even(well):
    for k in np.linspace(0.1, 6.0, 25):
        if abs(k - 2.0) < 1e-3:
            continue
        w = measure(well, float(k))
        assert w > 0.0
        assert measure(well, -float(k)) == pytest.approx(w, rel=1e-12)


@pytest.mark.parametrize("alpha", [0.5, 1.7])
def test_measure_vanishing_step_limit(alpha):
    for k in (0.5, 1.0, 2.0):
        assert measure(RMParams(alpha, 1e-10), k) == pytest.approx(legendre_measure(alpha, k), rel=1e-6)


def test_integer_alpha_measure_is_flat():
    for k in (0.3, 1.0, 3.0):
        assert legendre_measure(2.0, k) == pytest.approx(2.0 * math.pi, rel=1e-12)
        assert measure(RMParams(2.0, 0.0), k) == pytest.approx(2.0 * math.pi, rel=1e-9)


def test_measure_continuous_across_threshold():
    p = RMParams(0.7, 1.0)
    lim = threshold_limit(p)
    assert measure(p, 2.0 - 1e-5) == pytest.approx(lim, rel=0.05)
    assert measure(p, 2.0 + 1e-5) == pytest.approx(lim, rel=0.05)


def test_threshold_limit_needs_a_step():
    with pytest.raises(ParameterError):
        threshold_limit(RMParams(0.7, 0.0))


def test_spectral_density_table(well):
    k = np.array([0.5, 1.0, 3.0, 4.0])
    dens = spectral_density(well, k, workers=2)
    np.testing.assert_allclose(dens.w_values, [measure(well, kk) for kk in k])
    with pytest.raises(ParameterError):
        SpectralDensity(well, np.array([1.0, 0.5]), np.array([1.0, 1.0]))
    with pytest.raises(ParameterError):
        SpectralDensity(well, np.array([0.5, 1.0]), np.array([1.0, 0.0]))


def test_integral_identity_for_legendre_pair():
    p1 = ChannelParams(0.2j, 0.0, 1.3)
    p2 = ChannelParams(0.5j, 0.0, 1.3)
    assert integral_identity_residual(p1, p2, -0.95, 0.95) < 1e-8


def test_integral_identity_for_scattering_channels(well):
    p1, p2 = params_from_k(well, 1.2), params_from_k(RMParams(0.8, 1.0), 3.4)
    assert integral_identity_residual(p1, p2, -0.9, 0.8) < 1e-8


def test_integral_identity_interval():
    ch = ChannelParams(0.2j, 0.0, 1.3)
    with pytest.raises(ParameterError):
        integral_identity_residual(ch, ch, 0.5, -0.5)


def test_windowed_overlap_reduces_to_boundary_term():
    p = RMParams(1.5, 0.5)
    for pk, k in ((1.1, 2.3), (-0.6, 3.1)):
        overlap = windowed_inner_product(p, pk, k, 15.0)
        assert abs(overlap - boundary_term(p, pk, k, 15.0)) < 1e-6


def test_boundary_term_singular_at_equal_momenta(well):
    with pytest.raises(PrefactorSingularError):
        boundary_term(well, 3.0, -3.0, 10.0)
    with pytest.raises(PrefactorSingularError):
        windowed_inner_product(well, 1.0, 1.0, 10.0)
    with pytest.raises(ParameterError):
        boundary_term(well, 1.0, 3.0, 0.0)


def test_degenerate_states_grow_linearly_with_window(well):
    k = 1.5
    L1 = 10.0
    L2 = L1 + 2.0 * math.pi / k
    slope = (degenerate_overlap(well, k, L2) - degenerate_overlap(well, k, L1)) / (L2 - L1)
    coupling = degenerate_coupling(well, k)
    assert abs(slope - coupling) <= 1e-6 * abs(coupling)


def test_default_grids():
    x = default_x_grid(6.4)
    assert x.size % 2 == 1
    assert x[1] - x[0] <= 2.0 * math.pi / (20 * 6.4)
    k = default_k_grid()
    assert k.size == 241
    assert k[0] == pytest.approx(2.6) and k[-1] == pytest.approx(7.4)


def test_default_packet_clears_threshold(config, well):
    tr = config["transform"]
    k = default_k_grid(tr["K_CENTER"], tr["K_WIDTH"], tr["K_SPAN_WIDTHS"], tr["N_K"])
    assert k[0] > well.threshold + 0.5
    for kk in k:
        check_wavenumber(well, float(kk))


def test_gaussian_packet():
    F = gaussian_packet(default_k_grid(), 5.0, 0.3)
    assert abs(F.values[120]) == pytest.approx(1.0)
    assert abs(F.values[0]) < 1e-10
    with pytest.raises(ParameterError):
        gaussian_packet([1.0, 2.0], 1.5, 0.0)


def test_transforms_of_zero_are_zero(well):
    x = np.linspace(-10.0, 10.0, 21)
    k = np.linspace(2.5, 4.0, 5)
    f = forward_transform(well, GridFunction(x, np.zeros(x.size)), k)
    F = inverse_transform(well, GridFunction(k, np.zeros(k.size)), x)
    assert not np.any(f.values) and not np.any(F.values)


def test_transform_rejects_non_decaying_input(well):
    x = np.linspace(-10.0, 10.0, 21)
    with pytest.raises(NonDecayingInputError):
        forward_transform(well, GridFunction(x, np.ones(x.size)), [3.0, 3.5])


@pytest.mark.slow
def test_transform_round_trip(config):
    tr = config["transform"]
    k_grid = default_k_grid(tr["K_CENTER"], tr["K_WIDTH"], tr["K_SPAN_WIDTHS"], tr["N_K"])
    x_grid = default_x_grid(k_grid[-1], tr["X_MIN"], tr["X_MAX"], tr["POINTS_PER_WAVELENGTH"])
    F0 = gaussian_packet(k_grid, tr["K_CENTER"], tr["K_WIDTH"])
    assert round_trip_error(RMParams(1.5, 1.0), F0, x_grid, workers=4) <= 1e-3


def test_bound_states_have_no_continuum_component(well):
    x = np.linspace(-40.0, 20.0, 6001)
    dx = x[1] - x[0]
    ks = [0.8, 2.6, 3.5, 5.0]
    for state in bound_spectrum(well):
        f = GridFunction(x, bound_state_wavefunction(well, state, x))
        F = forward_transform(well, f, ks)
        for k, Fk in zip(ks, F.values):
            scale = np.sum(np.abs(f.values * scattering_state(well, k, x))) * dx
            assert abs(Fk * measure(well, k)) <= 1e-10 * scale


def test_relative_l2_error():
    k = np.linspace(-3.0, 3.0, 601)
    F0 = gaussian_packet(k, 0.0, 0.5)
    assert relative_l2_error(F0, F0) == 0.0
    assert relative_l2_error(GridFunction(k, 1.1 * F0.values), F0) == pytest.approx(0.1, rel=1e-12)
