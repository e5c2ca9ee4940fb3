import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from miepot.core import DimensionlessModel, QuantumState
from miepot.errors import ParameterDomainError, SeriesRangeError
from miepot.spectrum import bound_energy
from miepot.wavefunction import (
    count_nodes,
    log_normalization,
    norm_integral,
    normalization,
    normalization_gamma_form,
    ode_residual,
    overlap_integral,
    radial_bound,
    radial_continuum,
    radial_function,
)

TOY = DimensionlessModel.mie(2.0, 3)


def test_ground_state_is_x_exp_minus_x():
    x = np.linspace(0.01, 12.0, 300)
    r = radial_bound(TOY, QuantumState(0, 0, 3), x)
    # int (c x e^-x)^2 x^2 dx = 3 c^2 / 4, so c = 2/sqrt(3)
    np.testing.assert_allclose(r, 2 / math.sqrt(3.0) * x * np.exp(-x), rtol=1e-13)
    assert normalization(TOY, QuantumState(0, 0, 3)) == pytest.approx(2**2.5 / math.sqrt(24.0), rel=1e-15)


def test_vanishes_at_origin_and_rejects_nonpositive():
    s = QuantumState(1, 2, 4)
    assert abs(radial_bound(TOY.with_dim(4), s, 1e-9)) < 1e-12
    with pytest.raises(ParameterDomainError):
        radial_bound(TOY, QuantumState(0, 0), 0.0)
    with pytest.raises(ParameterDomainError):
        radial_bound(TOY, QuantumState(0, 0), np.array([1.0, -2.0]))


def test_exponential_tail():
    s = QuantumState(2, 1, 3)
    lvl = bound_energy(TOY, s)
    xs = np.array([200.0, 400.0, 800.0])
    tail = radial_bound(TOY, s, xs) * np.exp(lvl.beta * xs) / xs ** (lvl.q_exponent + s.n)
    # leading Laguerre coefficient (-2 beta)^n / n! times the norm
    lead = normalization(TOY, s) * (2 * lvl.beta) ** 2 / 2
    assert tail[-1] == pytest.approx(lead, rel=2e-2)
    assert abs(tail[-1] - lead) < abs(tail[0] - lead)


def test_radial_function_record():
    f = radial_function(TOY, QuantumState(1, 0, 3), [0.5, 1.0])
    assert f.q == 1.0 and f.beta == pytest.approx(2 / 3)
    assert len(f.samples) == 2
    assert f(1.0) == f.samples[1][1]


SWEEP = list(itertools.product([2, 3, 4, 5], [0, 1, 2], [2.0, 5.0, 25.0]))


@pytest.mark.parametrize("N,l,g2", SWEEP)
def test_normalized_orthogonal_and_nodes(N, l, g2):
    m = DimensionlessModel.mie(g2, N)
    states = [QuantumState(n, l, N) for n in range(3)]
    for s in states:
        assert abs(norm_integral(m, s) - 1.0) <= 1e-8
        assert count_nodes(m, s) == s.n
    for a, b in itertools.combinations(states, 2):
        assert abs(overlap_integral(m, a, b)) <= 1e-8


def test_normalization_with_physical_r0():
    m = DimensionlessModel.mie(3.0, 3, r0=2.5)
    # R carries r0^(-N/2) so the r-space integral is one
    assert norm_integral(m, QuantumState(1, 1, 3)) == pytest.approx(1.0, abs=1e-8)


def test_normalization_against_independent_quadrature():
    # plain scipy quad on [0, inf) instead of the split finite-interval rule
    m = DimensionlessModel.mie(10.0, 2)
    s = QuantumState(3, 0, 2)
    val, _ = integrate.quad(lambda x: radial_bound(m, s, x) ** 2 * x, 0, np.inf, limit=500)
    assert val == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize(
    "n,l,N,g2", list(itertools.product(range(5), range(4), range(2, 6), [1.0, 2.0, 10.0]))
)
def test_two_normalization_forms_agree(n, l, N, g2):
    m = DimensionlessModel.mie(g2, N)
    s = QuantumState(n, l, N)
    assert normalization_gamma_form(m, s) == pytest.approx(normalization(m, s), rel=1e-10)


@settings(max_examples=50, deadline=None)
@given(st.floats(0.1, 3e4), st.integers(0, 20), st.integers(0, 15), st.integers(2, 8))
def test_log_normalization_finite(g2, n, l, N):
    m = DimensionlessModel.mie(g2, N)
    s = QuantumState(n, l, N)
    assert math.isfinite(log_normalization(m, s))
    lvl = bound_energy(m, s)
    peak = (lvl.q_exponent + 0.5 * (N - 1)) / lvl.beta
    vals = radial_bound(m, s, np.array([peak / 10, peak, peak * 3]))
    assert np.all(np.isfinite(vals))


def test_large_gamma_samples_finite():
    m = DimensionlessModel.mie(1e4, 3)
    x = np.linspace(0.5, 2.0, 301)
    for n in (0, 5):
        r = radial_bound(m, QuantumState(n, 2, 3), x)
        assert np.all(np.isfinite(r)) and np.abs(r).max() > 1.0
    assert abs(norm_integral(m, QuantumState(0, 0, 3)) - 1.0) <= 1e-8


def _residual_order(m, s, x, h):
    r1 = np.abs(ode_residual(m, s, x, h)).max()
    r2 = np.abs(ode_residual(m, s, x, h / 2)).max()
    return math.log2(r1 / r2)


@pytest.mark.parametrize("N,l,g2", SWEEP)
def test_radial_equation_residual_second_order(N, l, g2):
    m = DimensionlessModel.mie(g2, N)
    x = np.linspace(0.05, 15.0, 600)
    for n in range(3):
        order = _residual_order(m, QuantumState(n, l, N), x, 1e-2)
        assert 1.8 <= order <= 2.2


def test_residual_shrinks_with_step():
    x = np.linspace(0.05, 15.0, 400)
    s = QuantumState(1, 0, 3)
    assert np.abs(ode_residual(TOY, s, x, 1e-3)).max() < 1e-4
    # the same stencil on a function that is not an eigenfunction stays O(1)
    other = radial_bound(TOY, QuantumState(2, 0, 3), x)
    assert np.abs(ode_residual(TOY, s, x, 1e-3) - other).max() > 1e-2


def test_residual_domain():
    with pytest.raises(ParameterDomainError):
        ode_residual(TOY, QuantumState(0, 0), [0.01], 0.05)
    with pytest.raises(ParameterDomainError):
        ode_residual(TOY, QuantumState(0, 0), [1.0], 0.0)


def test_continuum_vanishes_at_origin():
    for l in range(3):
        v = radial_continuum(TOY, l, 1.0, np.array([1e-8, 1e-6]))
        assert np.all(np.abs(v) < 1e-5)


def test_continuum_free_limit():
    m = DimensionlessModel.mie(1e-12, 3)
    for kappa in (0.5, 1.0, 3.0):
        r = np.linspace(0.05, 8.0 / kappa, 40)
        v = radial_continuum(m, 0, kappa, r)
        free = np.sin(kappa * r) / (kappa * r)
        # q ~ gamma^2 so r^q -> 1; the regular free wave is sin(kr)/(kr)
        np.testing.assert_allclose(v.real, free, atol=1e-9)
        assert np.abs(v.imag).max() < 1e-9


@pytest.mark.filterwarnings("ignore:1F1 series lost precision")
def test_continuum_bounded_scan():
    r = np.linspace(1e-3, 5.0, 500)
    for l, g2 in itertools.product(range(3), (0.5, 2.0, 10.0)):
        v = radial_continuum(DimensionlessModel.mie(g2, 3), l, 1.0, r)
        assert np.all(np.isfinite(v))
        assert np.abs(v).max() < 1e6


def test_continuum_range_and_kappa():
    with pytest.raises(SeriesRangeError):
        radial_continuum(TOY, 0, 1.0, 30.0)
    with pytest.raises(ParameterDomainError):
        radial_continuum(TOY, 0, 0.0, 1.0)


def test_continuum_solves_radial_equation():
    # positive energy kappa^2 in the same units; check the ODE by differences
    m = DimensionlessModel.mie(2.0, 3)
    kappa, h, l, N = 1.3, 1e-3, 1, 3
    x = np.linspace(0.3, 4.0, 50)
    f = lambda t: radial_continuum(m, l, kappa, t)
    fm, f0, fp = f(x - h), f(x), f(x + h)
    lhs = -((fp - 2 * f0 + fm) / h**2 + (N - 1) / x * (fp - fm) / (2 * h))
    lhs += (-m.a1_coeff / x + (m.a2_coeff + l * (l + N - 2)) / x**2 - kappa**2) * f0
    assert np.abs(lhs).max() < 1e-4 * np.abs(f0).max()
