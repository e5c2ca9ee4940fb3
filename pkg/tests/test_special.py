"""Laguerre recurrence, 1F1 series and the power-series coefficients."""

import itertools
import math
import warnings

import mpmath
import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from miepot.core import DimensionlessModel, QuantumState
from miepot.errors import ParameterDomainError, PoleError, SeriesRangeError
from miepot.spectrum import bound_energy
from miepot.wavefunction import (
    LaguerreParams,
    kummer_series,
    laguerre,
    laguerre_monomial_coefficients,
    series_coefficients,
)

ALPHAS = (0.0, 0.5, 1.0, 2.7)


def brute_laguerre(n, alpha, z):
    """Explicit finite sum, exact in rationals for rational alpha."""
    a = sympy.nsimplify(alpha)
    zz = sympy.nsimplify(z)
    total = sum(
        (-1) ** j * sympy.binomial(n + a, n - j) * zz**j / sympy.factorial(j) for j in range(n + 1)
    )
    return float(total)


def test_laguerre_examples():
    assert laguerre(LaguerreParams(0, 3.3), 7.0) == 1.0
    assert laguerre(LaguerreParams(1, 1.0), 2.0) == 0.0
    assert laguerre(LaguerreParams(2, 1.0), 2.0) == -1.0


def test_laguerre_rejects_alpha():
    with pytest.raises(ParameterDomainError):
        LaguerreParams(2, -1.0)
    with pytest.raises(ParameterDomainError):
        LaguerreParams(-1, 0.0)


@pytest.mark.parametrize("n", range(9))
@pytest.mark.parametrize("alpha", ALPHAS)
def test_recurrence_matches_brute_force(n, alpha):
    zs = [0.0, 0.3, 1.0, 2.5, 4.0, 7.5, 10.0]
    got = laguerre(LaguerreParams(n, alpha), np.array(zs))
    for z, g in zip(zs, got):
        ref = brute_laguerre(n, alpha, z)
        scale = max(abs(ref), max(abs(c) * z**j for j, c in enumerate(laguerre_monomial_coefficients(n, alpha))))
        assert abs(g - ref) <= 1e-10 * max(abs(ref), 1e-3 * scale)


@pytest.mark.parametrize("n", range(9))
@pytest.mark.parametrize("alpha", ALPHAS)
def test_monomial_coefficients_match_sympy(n, alpha):
    z = sympy.Symbol("z")
    poly = sympy.Poly(sympy.expand(sympy.assoc_laguerre(n, sympy.nsimplify(alpha), z)), z)
    ref = [float(c) for c in reversed(poly.all_coeffs())]
    np.testing.assert_allclose(laguerre_monomial_coefficients(n, alpha), ref, rtol=1e-12)


def test_laguerre_array_shape():
    z = np.linspace(0, 5, 12).reshape(3, 4)
    assert laguerre(LaguerreParams(3, 0.5), z).shape == (3, 4)


def test_kummer_examples():
    assert kummer_series(0.3 + 1j, 2.5, 0.0) == 1.0
    assert kummer_series(-1, 2, 1) == pytest.approx(0.5, abs=1e-16)


def test_kummer_errors():
    with pytest.raises(PoleError):
        kummer_series(1.0, -2.0, 1.0)
    with pytest.raises(PoleError):
        kummer_series(1.0, 0.0, 1.0)
    with pytest.raises(SeriesRangeError):
        kummer_series(1.0, 2.0, 50.5)
    with pytest.raises(SeriesRangeError):
        kummer_series(1.0, 2.0, 40j + 40)


# the grid hits exact polynomial roots, where relative precision is meaningless
@pytest.mark.filterwarnings("ignore:1F1 series lost precision")
@pytest.mark.parametrize("n", range(9))
@pytest.mark.parametrize("alpha", ALPHAS + (3.9, 11.2))
def test_kummer_laguerre_identity(n, alpha):
    binom = math.exp(math.lgamma(n + alpha + 1) - math.lgamma(n + 1) - math.lgamma(alpha + 1))
    for z in np.linspace(0.0, 10.0, 41):
        lag = laguerre(LaguerreParams(n, alpha), z)
        f = kummer_series(-n, alpha + 1, z).real * binom
        assert abs(f - lag) <= 1e-10 * max(abs(lag), 1.0)


@settings(max_examples=60, deadline=None)
@given(
    st.floats(-5, 5), st.floats(-3, 3), st.floats(0.2, 6), st.floats(-10, 10), st.floats(-10, 10)
)
def test_kummer_vs_mpmath(ar, ai, c, zr, zi):
    a, z = complex(ar, ai), complex(zr, zi)
    ref = complex(mpmath.hyp1f1(a, c, z))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        got = kummer_series(a, c, z)
    # cancellation costs about eps * max|term| <= eps * exp(|z|) * |a|-growth
    assert abs(got - ref) <= 1e-12 * max(abs(ref), 1.0) + 1e-14 * math.exp(abs(z)) * (1 + abs(a)) ** 2


def test_kummer_warns_on_cancellation():
    with pytest.warns(RuntimeWarning):
        kummer_series(1.5 - 2j, 3.0, -48j)


def test_series_coefficients_examples():
    m = DimensionlessModel.mie(2.0, 3)
    s0 = QuantumState(0, 0, 3)
    c0 = series_coefficients(m, s0, bound_energy(m, s0).beta)
    assert c0[:1] == [1.0] and c0[1] == 0.0
    s1 = QuantumState(1, 0, 3)
    beta = bound_energy(m, s1).beta
    assert beta == pytest.approx(2 / 3, rel=1e-15)
    c1 = series_coefficients(m, s1, beta)
    assert c1[1] == pytest.approx(-1 / 3, rel=1e-14)
    assert abs(c1[2]) <= 1e-15
    # L_1^3(z) = 4 - z, so in z the normalized slope is -1/4
    assert series_coefficients(m, s1, beta, scaled=True)[1] == pytest.approx(-0.25, rel=1e-14)


def test_series_ratio_tends_to_inverse_index():
    m = DimensionlessModel.mie(2.0, 3)
    s = QuantumState(0, 0, 3)
    z = series_coefficients(m, s, 0.77, count=152, scaled=True)
    x = series_coefficients(m, s, 0.77, count=152)
    devs = [abs(z[i + 1] / z[i] * i - 1.0) for i in (25, 50, 100, 150)]
    assert all(b < a for a, b in zip(devs, devs[1:]))
    assert devs[-1] <= 6.0 / 150
    # in x the same ratio carries the 2 beta scale
    for i in (25, 50, 100, 150):
        assert x[i + 1] / x[i] == pytest.approx(2 * 0.77 * z[i + 1] / z[i], rel=1e-13)


@pytest.mark.parametrize("g2,N,l", list(itertools.product([1.0, 2.0, 10.0], [2, 3, 5], [0, 2])))
@pytest.mark.parametrize("n", range(7))
def test_series_equals_scaled_laguerre(g2, N, l, n):
    m = DimensionlessModel.mie(g2, N)
    s = QuantumState(n, l, N)
    lvl = bound_energy(m, s)
    c = series_coefficients(m, s, lvl.beta)
    assert abs(c[n + 1]) <= 1e-12 * max(abs(v) for v in c)
    cz = series_coefficients(m, s, lvl.beta, scaled=True)
    assert abs(cz[n + 1]) <= 1e-12 * max(abs(v) for v in cz)
    # L_n^alpha(2 beta x) in monomials of x
    lag = [cj * (2 * lvl.beta) ** j for j, cj in enumerate(laguerre_monomial_coefficients(n, lvl.laguerre_alpha))]
    scale = lag[0]
    for cj, lj in zip(c[: n + 1], lag):
        assert cj * scale == pytest.approx(lj, rel=1e-10)
