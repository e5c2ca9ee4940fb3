"""Finite-difference eigensolver for the reduced radial equation.

With ``u = x**((N-1)/2) R`` the radial equation becomes

    -u'' + W(x) u = E u,   W(x) = V(x) + ((l + (N-2)/2)**2 - 1/4) / x**2,

which is discretized by the 3-point stencil on a uniform grid with Dirichlet
ends.  The resulting symmetric tridiagonal matrix is diagonalized by
Sturm-sequence bisection (eigenvalues) and inverse iteration (vectors).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import kernels
from .core import DimensionlessModel, PotentialSpec, QuantumState, reduce
from .errors import OracleError, ParameterDomainError
from .spectrum import bound_energy

BISECTION_TOL = 1e-12
DEFAULT_X_MIN = 1e-3
MIN_POINTS = 64


@dataclass(frozen=True)
class Grid:
    x_min: float
    x_max: float
    points: int

    def __post_init__(self) -> None:
        if int(self.points) != self.points or self.points < MIN_POINTS:
            raise ParameterDomainError(f"grid needs >= {MIN_POINTS} points (got {self.points!r})")
        if not (0 < self.x_min < 1 < self.x_max):
            raise ParameterDomainError(
                f"grid must satisfy 0 < x_min < 1 < x_max (got [{self.x_min}, {self.x_max}])"
            )

    @property
    def spacing(self) -> float:
        return (self.x_max - self.x_min) / (self.points - 1)

    @property
    def interior(self) -> np.ndarray:
        return self.x_min + self.spacing * np.arange(1, self.points - 1)

    def refined(self) -> "Grid":
        """Same interval with the spacing halved."""
        return Grid(self.x_min, self.x_max, 2 * self.points - 1)


@dataclass(frozen=True)
class EffectivePotential:
    """W(x) = sum_p coeffs[p] * x**(-p), keyed by inverse power."""

    coeffs: tuple[tuple[int, float], ...]

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return sum(c * x ** (-p) for p, c in self.coeffs)

    @property
    def inverse_square(self) -> float:
        return dict(self.coeffs).get(2, 0.0)

    @property
    def falls_to_centre(self) -> bool:
        """True when the most singular term is too attractive to bind regularly."""
        live = [(p, c) for p, c in self.coeffs if c != 0.0 and p >= 2]
        if not live:
            return False
        p, c = max(live)
        return c < -0.25 if p == 2 else c < 0.0


def _centrifugal(l: int, dim_N: int) -> float:
    lam = l + 0.5 * (dim_N - 2)
    return lam * lam - 0.25


def _merge(terms: list[tuple[int, float]]) -> EffectivePotential:
    merged: dict[int, float] = {}
    for p, c in terms:
        merged[p] = merged[p] + c if p in merged else c
    return EffectivePotential(tuple(sorted(merged.items())))


def reduce_to_1d(model: DimensionlessModel, l: int, N: int | None = None) -> EffectivePotential:
    N = model.dim_N if N is None else N
    QuantumState(0, l, N)
    return _merge([(1, -model.a1_coeff), (2, model.a2_coeff), (2, _centrifugal(l, N))])


def general_effective_potential(spec: PotentialSpec, l: int, N: int) -> EffectivePotential:
    """W for an arbitrary (m, k) Mie potential in units hbar^2/(2 m r0^2)."""
    QuantumState(0, l, N)
    depth = reduce(spec).gamma_sq
    m, k = spec.exp_m, spec.exp_k
    return _merge([
        (k, -depth * m / (m - k)),
        (m, depth * k / (m - k)),
        (2, _centrifugal(l, N)),
    ])


@dataclass(frozen=True)
class OracleResult:
    eigenvalues: np.ndarray
    grid: Grid
    richardson_estimate: tuple[tuple[float, float], ...] | None = None
    eigenvectors: np.ndarray | None = None
    dim_N: int = 3
    truncated: bool = False

    def radial_samples(self, k: int) -> tuple[np.ndarray, np.ndarray]:
        """Interior x and R = u / x^((N-1)/2), scaled so sum R^2 x^(N-1) h = 1."""
        if self.eigenvectors is None:
            raise ValueError("solve with vectors=True to get eigenfunctions")
        x = self.grid.interior
        u = self.eigenvectors[k]
        u = u / math.sqrt(np.sum(u * u) * self.grid.spacing)
        return x, u / x ** (0.5 * (self.dim_N - 1))


def build_matrix(potential: EffectivePotential, grid: Grid) -> tuple[np.ndarray, np.ndarray]:
    if potential.falls_to_centre:
        raise ParameterDomainError("attractive singularity at the origin: fall to centre")
    h = grid.spacing
    x = grid.interior
    diag = 2.0 / h**2 + potential(x)
    off = np.full(x.size - 1, -1.0 / h**2)
    return np.ascontiguousarray(diag), off


def _inverse_iteration(diag, off, value, sweeps: int = 3) -> np.ndarray:
    v = np.ones(diag.size) / math.sqrt(diag.size)
    for _ in range(sweeps):
        v = kernels.tridiag_solve(diag, off, value, v)
        norm = np.linalg.norm(v)
        if not np.isfinite(norm) or norm == 0:
            raise OracleError("inverse iteration broke down")
        v /= norm
    lead = np.flatnonzero(np.abs(v) > 1e-3 * np.abs(v).max())[0]
    return v if v[lead] > 0 else -v


def solve_potential(
    potential: EffectivePotential,
    grid: Grid,
    count: int,
    dim_N: int,
    vectors: bool = False,
    tol: float = BISECTION_TOL,
) -> OracleResult:
    if int(count) != count or count < 1:
        raise ParameterDomainError(f"count must be >= 1 (got {count!r})")
    diag, off = build_matrix(potential, grid)
    truncated = False
    if count > diag.size:
        count, truncated = diag.size, True
    vals = kernels.lowest_eigenvalues(diag, off, int(count), tol)
    if not np.all(np.isfinite(vals)) or np.any(np.diff(vals) <= 0):
        raise OracleError("Sturm bisection returned non-finite or unordered eigenvalues")
    bound = vals < 0.0
    if not bound.all():
        truncated = True
        vals = vals[bound]
    if truncated:
        warnings.warn(
            f"only {vals.size} of the requested {count} bound states are representable on this grid",
            RuntimeWarning,
            stacklevel=3,
        )
    vecs = None
    if vectors:
        vecs = np.array([_inverse_iteration(diag, off, v) for v in vals])
    return OracleResult(vals, grid, None, vecs, dim_N, truncated)


def solve_fd(
    model: DimensionlessModel,
    state_l: int,
    grid: Grid,
    count: int,
    vectors: bool = False,
) -> OracleResult:
    """Lowest ``count`` eigenvalues of the radial problem for angular momentum ``state_l``."""
    return solve_potential(reduce_to_1d(model, state_l), grid, count, model.dim_N, vectors)


def solve_general_mie(
    spec: PotentialSpec, l: int, N: int, grid: Grid, count: int, vectors: bool = False
) -> OracleResult:
    return solve_potential(general_effective_potential(spec, l, N), grid, count, N, vectors)


def richardson_pair(coarse: OracleResult, fine: OracleResult) -> tuple[tuple[float, float], ...]:
    k = min(coarse.eigenvalues.size, fine.eigenvalues.size)
    ec, ef = coarse.eigenvalues[:k], fine.eigenvalues[:k]
    return tuple(((4.0 * f - c) / 3.0, abs(f - c) / 3.0) for c, f in zip(ec, ef))


def richardson(
    model: DimensionlessModel | PotentialSpec,
    state_l: int,
    base_grid: Grid,
    count: int,
    dim_N: int | None = None,
    vectors: bool = False,
) -> OracleResult:
    """Solve at spacing h and h/2 and extrapolate away the h^2 error term.

    Accepts a dimensionless special-case model or, for arbitrary exponents,
    a :class:`PotentialSpec` (then ``dim_N`` defaults to 3).
    """
    if isinstance(model, PotentialSpec):
        N = 3 if dim_N is None else dim_N
        pot = general_effective_potential(model, state_l, N)
    else:
        N = model.dim_N if dim_N is None else dim_N
        pot = reduce_to_1d(model, state_l, N)
    coarse = solve_potential(pot, base_grid, count, N)
    fine = solve_potential(pot, base_grid.refined(), count, N, vectors)
    return OracleResult(
        fine.eigenvalues,
        fine.grid,
        richardson_pair(coarse, fine),
        fine.eigenvectors,
        N,
        coarse.truncated or fine.truncated,
    )


def default_grid(
    model: DimensionlessModel, state_l: int, n_max: int, points_per_unit: float = 200.0
) -> Grid:
    """Grid tailored to the analytic scale of the highest requested level.

    The box extends well past the classical region of level ``n_max`` and the
    spacing resolves the shortest length scale 1/beta of the ground level.
    Moving the inner wall from 0 to x_min shifts energies by roughly
    (beta x_min)**(2s - 1) with u ~ x**s at the origin, so x_min shrinks as
    s approaches 1 (the hydrogen-like case) to keep that shift below 1e-14.
    """
    N = model.dim_N
    top = bound_energy(model, QuantumState(n_max, state_l, N))
    low = bound_energy(model, QuantumState(0, state_l, N))
    s = low.q_exponent + 0.5 * (N - 1)
    x_min = min(DEFAULT_X_MIN, 10.0 ** (-14.0 / max(2.0 * s - 1.0, 0.1)) / low.beta)
    x_min = max(x_min, 1e-14)
    x_max = max(
        10.0 * (n_max + 1) / top.beta,
        (2.0 * top.q_exponent + N - 1 + 4 * n_max + 40.0) / top.beta,
        2.0,
    )
    h = 1.0 / (points_per_unit * max(low.beta, 1.0))
    points = max(MIN_POINTS, int(math.ceil((x_max - x_min) / h)) + 1)
    return Grid(x_min, x_max, points)


def default_grid_general(spec: PotentialSpec, l: int, N: int, points: int = 6000) -> Grid:
    """Box for an arbitrary Mie potential when no analytic scale is known."""
    return Grid(DEFAULT_X_MIN if spec.exp_m <= 2 else 0.3, 50.0 if spec.exp_m <= 2 else 8.0, points)
