import mpmath
import numpy as np
import pytest

from numerics.errors import DomainError, ParameterError, PoleError
from numerics.genleg import (
    ChannelParams,
    Regime,
    asymptotic_amplitudes,
    eval_D,
    eval_D_dx,
    eval_D_shifted,
    eval_D_tanh,
    eval_D_tanh_dx,
    legendre_P,
)

GENERIC = ChannelParams(0.3 + 0.4j, -0.2 + 0.1j, 1.3)
ABOVE = ChannelParams(1.1j, -0.4j, 1.5, Regime.ABOVE_BARRIER)


@pytest.mark.parametrize("mu,nu,x", [(0.5j, 1.3, 0.2), (-0.7 + 1.1j, 2.6, -0.8), (0.3 - 0.4j, 0.4, 0.93)])
def test_eta_zero_reduces_to_ferrers_function(mu, nu, x):
    ref = complex(mpmath.gamma(1 - mpmath.mpc(mu)) * mpmath.legenp(nu, mpmath.mpc(mu), x, type=2))
    ours = complex(eval_D(ChannelParams(mu, 0.0, nu), x))
    assert abs(ours - ref) <= 1e-12 * abs(ref)


def test_legendre_P_matches_mpmath():
    mu, nu, x = 0.25 + 0.5j, 1.75, 0.35
    ref = complex(mpmath.legenp(nu, mpmath.mpc(mu), x, type=2))
    assert abs(legendre_P(mu, nu, x) - ref) <= 1e-12 * abs(ref)


def test_shifted_representation_agrees():
    x = np.linspace(-0.9, 0.9, 13)
    np.testing.assert_allclose(eval_D_shifted(GENERIC, x), eval_D(GENERIC, x), rtol=1e-10)


def test_tanh_form_agrees_with_direct_argument():
    x = np.array([-3.0, -1.0, 0.0, 0.7, 3.0])
    np.testing.assert_allclose(eval_D_tanh(GENERIC, x), eval_D(GENERIC, np.tanh(x)), rtol=1e-10)


@pytest.mark.parametrize("x", [-22.0, 22.0])
def test_exponential_tails_continue_direct_form(x):
    asym = eval_D_tanh(ABOVE, x)
    direct = eval_D_tanh(ABOVE, x, x_switch=30.0)
    assert abs(asym - direct) <= 1e-9 * abs(direct)


def test_right_tail_amplitude_is_two_to_minus_eta():
    x = 25.0
    expected = np.exp(-ABOVE.eta * np.log(2.0) + (ABOVE.mu + ABOVE.eta) * x)
    assert eval_D_tanh(ABOVE, x) == pytest.approx(expected, rel=1e-14)
    assert asymptotic_amplitudes(ABOVE).C == pytest.approx(np.exp(-ABOVE.eta * np.log(2.0)))


@pytest.mark.parametrize("ch", [GENERIC, ABOVE])
def test_tanh_derivative_matches_central_difference(ch):
    x, h = np.array([-4.0, -0.3, 1.2, 5.0]), 1e-6
    fd = (eval_D_tanh(ch, x + h) - eval_D_tanh(ch, x - h)) / (2.0 * h)
    np.testing.assert_allclose(eval_D_tanh_dx(ch, x), fd, rtol=1e-7)


def test_cut_derivative_matches_central_difference():
    x, h = 0.37, 1e-6
    fd = (eval_D(GENERIC, x + h) - eval_D(GENERIC, x - h)) / (2.0 * h)
    assert abs(eval_D_dx(GENERIC, x) - fd) <= 1e-7 * abs(fd)


def test_scalar_in_scalar_out():
    assert isinstance(eval_D_tanh(GENERIC, 0.5), complex)
    assert eval_D_tanh(GENERIC, np.zeros((2, 3))).shape == (2, 3)


def test_cut_domain():
    with pytest.raises(DomainError):
        eval_D(GENERIC, 1.0)
    with pytest.raises(DomainError):
        eval_D(GENERIC, np.array([0.0, -1.2]))


def test_pole_in_c_parameter():
    with pytest.raises(PoleError):
        eval_D_tanh(ChannelParams(1.0, 1.0, 0.5), 0.0)


def test_regime_invariants_enforced():
    with pytest.raises(ParameterError):
        ChannelParams(0.5j, 0.2, 1.0, Regime.ABOVE_BARRIER)
    with pytest.raises(ParameterError):
        ChannelParams(-0.5 + 0.2j, -0.5 + 0.2j, 1.0, Regime.BELOW_BARRIER)
    with pytest.raises(ParameterError):
        ChannelParams(float("nan"), 0.0, 1.0)


def test_conjugate_keeps_regime():
    c = ABOVE.conjugate()
    assert c.regime is Regime.ABOVE_BARRIER
    assert c.mu == ABOVE.mu.conjugate() and c.eta == ABOVE.eta.conjugate()


def _legendre_type_residual(ch, x, h=1e-6):
    """Scaled residual of (1-x^2) D'' - 2x D' + [nu(nu+1) - (mu^2+eta^2+2 mu eta x)/(1-x^2)] D."""
    mu, eta, nu = ch.mu, ch.eta, ch.nu
    d, dd = eval_D(ch, x), eval_D_dx(ch, x)
    d2 = (eval_D_dx(ch, x + h) - eval_D_dx(ch, x - h)) / (2.0 * h)
    s = 1.0 - x * x
    terms = (s * d2, -2.0 * x * dd, (nu * (nu + 1.0) - (mu * mu + eta * eta + 2.0 * mu * eta * x) / s) * d)
    return np.abs(sum(terms)) / sum(np.abs(t) for t in terms)


@pytest.mark.parametrize("ch", [GENERIC, ABOVE, ChannelParams(-0.6 + 0.75j, -0.6 - 0.75j, 2.5, Regime.BELOW_BARRIER)])
def test_D_solves_the_legendre_type_equation_on_the_cut(ch):
    x = np.linspace(-0.99, 0.99, 44)
    assert np.max(_legendre_type_residual(ch, x)) <= 1e-7


@pytest.mark.parametrize("ch", [GENERIC, ABOVE])
def test_D_conjugation_symmetry(ch):
    x = np.linspace(-0.95, 0.95, 9)
    np.testing.assert_allclose(eval_D(ch.conjugate(), x), np.conj(eval_D(ch, x)), rtol=1e-14)


@pytest.mark.parametrize("ch", [GENERIC, ABOVE])
def test_right_tail_mismatch_decays_as_exp_minus_2x(ch):
    a, b, c = ch.abc
    K = ch.eta + a * b / c
    for x in (5.0, 6.0, 7.0):
        tail = np.exp(-ch.eta * np.log(2.0) + (ch.mu + ch.eta) * x)
        mismatch = eval_D_tanh(ch, x) / tail - 1.0
        assert mismatch * np.exp(2.0 * x) == pytest.approx(K, rel=5e-3)
