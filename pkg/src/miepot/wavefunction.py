"""Radial eigenfunctions and the special functions they are built from.

Bound states have the closed form

    R(x) = N_nl * x**q * exp(-beta x) * L_n^(alpha)(2 beta x),   alpha = 2q + N - 2,

evaluated in log space so that large ``gamma_sq`` (hence large ``q`` and
``alpha``) neither overflows nor underflows prematurely.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

from . import kernels
from .core import DimensionlessModel, QuantumState
from .errors import ParameterDomainError, PoleError, SeriesRangeError
from .spectrum import BoundLevel, bound_energy, exponent_q

KUMMER_MAX_ABS_Z = 50.0
_KUMMER_MAX_TERMS = 10_000


@dataclass(frozen=True)
class LaguerreParams:
    degree_n: int
    alpha: float

    def __post_init__(self) -> None:
        if int(self.degree_n) != self.degree_n or self.degree_n < 0:
            raise ParameterDomainError(f"degree must be a non-negative integer (got {self.degree_n!r})")
        if not self.alpha > -1:
            raise ParameterDomainError(f"alpha must be > -1 (got {self.alpha!r})")


def laguerre(params: LaguerreParams, z):
    """Generalized Laguerre polynomial by the three-term degree recurrence."""
    arr = np.asarray(z, dtype=float)
    out = kernels.laguerre(int(params.degree_n), float(params.alpha), np.ascontiguousarray(arr.ravel()))
    out = out.reshape(arr.shape)
    return out if out.ndim else float(out)


def laguerre_monomial_coefficients(n: int, alpha: float) -> list[float]:
    """Coefficients c_j of L_n^alpha(z) = sum_j c_j z**j (explicit sum)."""
    return [
        (-1) ** j * math.exp(math.lgamma(n + alpha + 1) - math.lgamma(n - j + 1)
                             - math.lgamma(alpha + j + 1) - math.lgamma(j + 1))
        for j in range(n + 1)
    ]


def _is_nonpositive_int(c: complex) -> bool:
    return c.imag == 0 and c.real <= 0 and c.real == math.floor(c.real)


def kummer_series(a: complex, c: complex, z: complex, tol: float = 1e-16) -> complex:
    """Confluent hypergeometric 1F1(a; c; z) by direct power-series summation.

    Summation stops once three consecutive terms are below ``tol`` relative to
    the partial sum.  Only ``|z| <= 50`` is accepted; a RuntimeWarning is issued
    when cancellation between large terms leaves fewer than ~8 correct digits.
    """
    a, c, z = complex(a), complex(c), complex(z)
    if _is_nonpositive_int(c):
        raise PoleError(f"1F1 undefined for c = {c} (non-positive integer)")
    if abs(z) > KUMMER_MAX_ABS_Z:
        raise SeriesRangeError(f"|z| = {abs(z):.6g} exceeds series range {KUMMER_MAX_ABS_Z}")
    term = 1.0 + 0j
    total = 1.0 + 0j
    biggest = 1.0
    small = 0
    for k in range(_KUMMER_MAX_TERMS):
        term *= (a + k) / (c + k) * z / (k + 1)
        total += term
        biggest = max(biggest, abs(term))
        if abs(term) <= tol * abs(total):
            small += 1
            if small >= 3:
                break
        else:
            small = 0
    else:
        raise SeriesRangeError("1F1 series did not converge")
    if biggest * np.finfo(float).eps * k > 1e-8 * abs(total):
        warnings.warn(
            f"1F1 series lost precision (max term {biggest:.3g}, result {abs(total):.3g})",
            RuntimeWarning,
            stacklevel=2,
        )
    return total


def series_coefficients(
    model: DimensionlessModel,
    state: QuantumState,
    beta: float,
    count: int | None = None,
    scaled: bool = False,
) -> list[float]:
    """Power-series coefficients C_0..C_{count-1} of the polynomial factor h(x).

    h(x) = sum_i C_i x**i solves x h'' + (2q + N - 1 - 2 beta x) h' - 2 beta
    (q + (N-1)/2 - g^2/beta) h = 0, which gives

        C_{i+1} = 2 beta C_i (i + q + (N-1)/2 - g^2/beta) / ((i+1)(i + 2q + N - 1))

    with C_0 = 1.  With ``scaled=True`` the coefficients are taken in
    z = 2 beta x instead (the 2 beta factor drops out and C_{i+1}/C_i -> 1/i).
    ``count`` defaults to n + 2, so the last entry is C_{n+1}, which vanishes
    when ``beta`` is the bound-state value.
    """
    if not beta > 0:
        raise ParameterDomainError(f"beta must be > 0 (got {beta!r})")
    if count is None:
        count = state.n + 2
    q = exponent_q(model, state)
    half = 0.5 * (state.dim_N - 1)
    ratio = model.coulomb_strength / beta
    step = 1.0 if scaled else 2.0 * beta
    coeffs = [1.0]
    for i in range(count - 1):
        num = i + q + half - ratio
        coeffs.append(coeffs[-1] * step * num / ((i + 1) * (i + 2 * q + state.dim_N - 1)))
    return coeffs


def quantization_numerator(model: DimensionlessModel, level: BoundLevel) -> float:
    """n + q + (N-1)/2 - g^2/beta; zero at an eigenvalue."""
    s = level.state
    return s.n + level.q_exponent + 0.5 * (s.dim_N - 1) - model.coulomb_strength / level.beta


def log_normalization(model: DimensionlessModel, state: QuantumState) -> float:
    level = bound_energy(model, state)
    q, beta, N, n = level.q_exponent, level.beta, state.dim_N, state.n
    m = 2.0 * q + N - 2
    log_j = math.lgamma(m + n + 1) - math.lgamma(n + 1) + math.log(2 * n + m + 1)
    return (q + 0.5 * N) * math.log(2 * beta) - 0.5 * N * math.log(model.r0) - 0.5 * log_j


def log_normalization_gamma_form(model: DimensionlessModel, state: QuantumState) -> float:
    """Same constant written through 2g^2/beta instead of q."""
    level = bound_energy(model, state)
    beta, N, n = level.beta, state.dim_N, state.n
    two_ratio = 2.0 * model.coulomb_strength / beta
    return (
        0.5 * N * math.log(2 * beta / model.r0)
        + (0.5 * two_ratio - n - 0.5 * (N - 1)) * math.log(2 * beta)
        + 0.5 * (math.lgamma(n + 1) - math.log(two_ratio) - math.lgamma(two_ratio - n))
    )


def normalization(model: DimensionlessModel, state: QuantumState) -> float:
    return math.exp(log_normalization(model, state))


def normalization_gamma_form(model: DimensionlessModel, state: QuantumState) -> float:
    return math.exp(log_normalization_gamma_form(model, state))


def _check_positive_x(x) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if np.any(~(arr > 0)):
        raise ParameterDomainError("x must be > 0")
    return arr


def radial_bound(model: DimensionlessModel, state: QuantumState, x):
    """Normalized bound eigenfunction R_nl at dimensionless radius ``x``."""
    arr = _check_positive_x(x)
    level = bound_energy(model, state)
    beta, n = level.beta, state.n
    ratio = model.coulomb_strength / beta
    power = ratio - n - 0.5 * (state.dim_N - 1)
    alpha = 2.0 * ratio - 2 * n - 1
    lag = laguerre(LaguerreParams(n, alpha), 2.0 * beta * arr)
    with np.errstate(divide="ignore"):
        log_abs = (
            log_normalization(model, state) + power * np.log(arr) - beta * arr + np.log(np.abs(lag))
        )
    out = np.sign(lag) * np.exp(log_abs)
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class RadialFunction:
    level: BoundLevel
    norm_constant: float
    q: float
    beta: float
    laguerre: LaguerreParams
    model: DimensionlessModel = field(repr=False)
    samples: tuple[tuple[float, float], ...] | None = None

    def __call__(self, x):
        return radial_bound(self.model, self.level.state, x)


def radial_function(
    model: DimensionlessModel, state: QuantumState, x=None
) -> RadialFunction:
    level = bound_energy(model, state)
    samples = None
    if x is not None:
        xs = np.asarray(x, dtype=float).ravel()
        samples = tuple(zip(xs.tolist(), np.atleast_1d(radial_bound(model, state, xs)).tolist()))
    return RadialFunction(
        level=level,
        norm_constant=normalization(model, state),
        q=level.q_exponent,
        beta=level.beta,
        laguerre=LaguerreParams(state.n, level.laguerre_alpha),
        model=model,
        samples=samples,
    )


def radial_continuum(
    model: DimensionlessModel, state_l: int, kappa_r0: float, r_over_r0
):
    """Regular positive-energy solution with unit amplitude,

        (r/r0)**q * exp(i k r) * 1F1(q + (N-1)/2 - i g^2/(k r0), 2q + N - 1; -2 i k r).
    """
    if not kappa_r0 > 0:
        raise ParameterDomainError(f"kappa_r0 must be > 0 (got {kappa_r0!r})")
    rs = _check_positive_x(r_over_r0)
    state = QuantumState(0, state_l, model.dim_N)
    q = exponent_q(model, state)
    N = model.dim_N
    a = complex(q + 0.5 * (N - 1), -model.coulomb_strength / kappa_r0)
    c = 2.0 * q + N - 1
    out = np.empty(rs.shape, dtype=complex)
    for idx, r in np.ndenumerate(rs):
        kr = kappa_r0 * r
        out[idx] = r**q * cmath.exp(1j * kr) * kummer_series(a, c, -2j * kr)
    return out if out.ndim else complex(out)


def integration_cutoff(model: DimensionlessModel, *states: QuantumState, rel: float = 1e-14) -> float:
    """Radius past which every listed state's R^2 x^(N-1) is below ``rel`` of its peak."""
    cut = 0.0
    for state in states:
        level = bound_energy(model, state)
        N = state.dim_N
        x = (2 * level.q_exponent + N - 1 + 4 * state.n + 40.0) / (2 * level.beta)
        grid = np.linspace(x / 4000, x, 4000)
        dens = radial_bound(model, state, grid) ** 2 * grid ** (N - 1)
        peak = dens.max()
        while radial_bound(model, state, x) ** 2 * x ** (N - 1) > rel * peak:
            x *= 2.0
        cut = max(cut, x)
    return cut


def overlap_integral(model: DimensionlessModel, s1: QuantumState, s2: QuantumState) -> float:
    """Adaptive quadrature of R1 R2 x^(N-1) on [0, x_cut], times r0^N."""
    if s1.dim_N != s2.dim_N:
        raise ParameterDomainError("overlap needs equal dimensions")
    N = s1.dim_N
    cut = integration_cutoff(model, s1, s2)

    def f(x: float) -> float:
        if x <= 0:
            return 0.0
        return radial_bound(model, s1, x) * radial_bound(model, s2, x) * x ** (N - 1)

    # split at the density peaks so the adaptive rule sees each lobe
    pts = sorted({min(cut, (bound_energy(model, s).q_exponent + 0.5 * (N - 1)) / bound_energy(model, s).beta)
                  for s in (s1, s2)})
    with warnings.catch_warnings():
        # the requested 1e-13 sits at roundoff level; quad flags it but the value is fine
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, _ = integrate.quad(f, 0.0, cut, points=pts, limit=400, epsabs=1e-15, epsrel=1e-13)
    return val * model.r0**N


def norm_integral(model: DimensionlessModel, state: QuantumState) -> float:
    return overlap_integral(model, state, state)


def count_nodes(model: DimensionlessModel, state: QuantumState, points: int = 10_000) -> int:
    """Sign changes of R on a logarithmic grid spanning the bound region."""
    level = bound_energy(model, state)
    lo = 1e-6 / (2.0 * level.beta)
    hi = integration_cutoff(model, state)
    x = np.geomspace(lo, hi, points)
    vals = radial_bound(model, state, x)
    signs = np.sign(vals[vals != 0.0])
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def ode_residual(model: DimensionlessModel, state: QuantumState, x, h: float) -> np.ndarray:
    """Radial equation applied to R_nl with central differences of step ``h``.

    Returns -(R'' + (N-1)/x R') + (V + l(l+N-2)/x^2 - E) R at each ``x``;
    the stencil error makes this O(h^2).
    """
    if not h > 0:
        raise ParameterDomainError(f"h must be > 0 (got {h!r})")
    xs = _check_positive_x(x)
    if np.any(xs - h <= 0):
        raise ParameterDomainError("stencil reaches x <= 0; shrink h or raise x")
    N, l = state.dim_N, state.l
    energy = bound_energy(model, state).energy_dimensionless
    r_m, r_0, r_p = (radial_bound(model, state, xs + d) for d in (-h, 0.0, h))
    second = (r_p - 2.0 * r_0 + r_m) / h**2
    first = (r_p - r_m) / (2.0 * h)
    pot = -model.a1_coeff / xs + (model.a2_coeff + l * (l + N - 2)) / xs**2
    return -(second + (N - 1) / xs * first) + (pot - energy) * r_0
