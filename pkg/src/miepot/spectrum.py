"""Closed-form bound-state energies and their 1/gamma expansions.

Quantum-number arguments follow the ``QuantumState``; its ``dim_N`` is the
space dimension used in every formula here (the model's ``dim_N`` is only a
default for callers that build states from it).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import (
    DimensionlessModel,
    PotentialSpec,
    QuantumState,
    harmonic_params,
    reduce,
)
from .errors import ConfigurationError, NoBoundStateError, UnsupportedOrderError

MAX_EXPANSION_ORDER = 3
TERM_ORDERS = (0, 1, 2, 2, 3)


@dataclass(frozen=True)
class BoundLevel:
    state: QuantumState
    q_exponent: float
    beta: float
    energy_dimensionless: float
    energy_physical: float

    @property
    def laguerre_alpha(self) -> float:
        """Superscript 2q + N - 2 of the Laguerre factor."""
        return 2.0 * self.q_exponent + self.state.dim_N - 2


def _radical(model: DimensionlessModel, state: QuantumState) -> float:
    lam = state.effective_l
    return math.sqrt(lam * lam + model.a2_coeff)


def exponent_q(model: DimensionlessModel, state: QuantumState) -> float:
    """Positive root of the indicial equation at the origin."""
    return _radical(model, state) - 0.5 * (state.dim_N - 2)


def level_denominator(model: DimensionlessModel, state: QuantumState) -> float:
    """n + 1/2 + sqrt((l + (N-2)/2)^2 + a2), i.e. n + q + (N-1)/2."""
    return state.n + 0.5 + _radical(model, state)


def bound_energy(model: DimensionlessModel, state: QuantumState) -> BoundLevel:
    if not model.a1_coeff > 0:
        raise NoBoundStateError("Coulomb coupling a1 must be > 0 for bound states")
    denom = level_denominator(model, state)
    beta = model.coulomb_strength / denom
    e = -(beta * beta)
    return BoundLevel(
        state=state,
        q_exponent=exponent_q(model, state),
        beta=beta,
        energy_dimensionless=e,
        energy_physical=e * model.energy_unit,
    )


def bound_energy_generalized(
    a1: float, a2: float, state: QuantumState, energy_unit: float = 1.0
) -> BoundLevel:
    """Bound level of -a1/x + a2/x**2 with the two couplings independent.

    Reduces to :func:`bound_energy` at ``a1 = 2*gamma_sq, a2 = gamma_sq`` and
    to the N-dimensional hydrogen atom at ``a2 = 0``.
    """
    if not a1 > 0:
        raise NoBoundStateError(f"a1 must be > 0 for bound states (got {a1!r})")
    model = DimensionlessModel.coulomb_like(a1, a2, state.dim_N, energy_unit=energy_unit)
    return bound_energy(model, state)


def positive_energy(model: DimensionlessModel, state: QuantumState) -> float:
    """Verbatim evaluation of the positive-energy "eigenvalue" formula.

    This is exactly ``-bound_energy(...).energy_physical``.  Positive
    energies of this potential form a continuum, so the value has no
    meaning as a discrete level; it is provided for formula checks only.
    """
    beta = model.coulomb_strength / level_denominator(model, state)
    return beta * beta * model.energy_unit


@dataclass(frozen=True)
class ExpansionTerms:
    """Terms of the 1/gamma series of E/D0, in the order
    ``-1, 2(n+1/2)/g, L^2/g^2, -3(n+1/2)^2/g^2, -3(n+1/2)L^2/g^3``
    with ``L = l + (N-2)/2``.
    """

    coefficients: tuple[float, float, float, float, float]
    truncation_order: int

    def by_order(self) -> tuple[float, ...]:
        out = [0.0] * (MAX_EXPANSION_ORDER + 1)
        for c, p in zip(self.coefficients, TERM_ORDERS):
            out[p] += c
        return tuple(out)

    def partial_sums(self) -> tuple[float, ...]:
        sums, acc = [], 0.0
        for c in self.by_order():
            acc += c
            sums.append(acc)
        return tuple(sums)

    @property
    def total(self) -> float:
        return self.partial_sums()[self.truncation_order]


def expand_energy(
    model: DimensionlessModel, state: QuantumState, order: int = MAX_EXPANSION_ORDER
) -> ExpansionTerms:
    if not model.is_mie:
        raise ConfigurationError("the 1/gamma expansion needs the Mie couplings a1=2g^2, a2=g^2")
    if int(order) != order or not 0 <= order <= MAX_EXPANSION_ORDER:
        raise UnsupportedOrderError(
            f"expansion known through order {MAX_EXPANSION_ORDER} only (got {order!r})"
        )
    g = model.gamma
    nu = state.n + 0.5
    lam2 = state.effective_l**2
    coeffs = (
        -1.0,
        2.0 * nu / g,
        lam2 / g**2,
        -3.0 * nu * nu / g**2,
        -3.0 * nu * lam2 / g**3,
    )
    return ExpansionTerms(coeffs, int(order))


def spectroscopic_terms(spec: PotentialSpec, state: QuantumState) -> tuple[float, ...]:
    """The five vibration-rotation terms, in the energy unit of ``spec``.

    -I w^2/2, hw(n+1/2), (h^2/2I) L^2, -(3h^2/2I)(n+1/2)^2, -(3h^3/2I^2 w)(n+1/2) L^2
    """
    if not spec.is_special:
        raise ConfigurationError("spectroscopic form exists only for exp_m=2, exp_k=1")
    hbar_omega, inertia = harmonic_params(spec)
    hbar_sq = spec.unit_system.hbar_sq
    nu = state.n + 0.5
    lam2 = state.effective_l**2
    rot = hbar_sq / (2.0 * inertia)
    return (
        -0.5 * inertia * hbar_omega**2 / hbar_sq,
        hbar_omega * nu,
        rot * lam2,
        -3.0 * rot * nu * nu,
        -3.0 * hbar_sq**2 / (2.0 * inertia**2 * hbar_omega) * nu * lam2,
    )


def spectroscopic_energy(spec: PotentialSpec, state: QuantumState) -> float:
    return math.fsum(spectroscopic_terms(spec, state))


def physical_expansion(spec: PotentialSpec, state: QuantumState, order: int = 3) -> float:
    """D0 times the truncated 1/gamma series, for a physical spec."""
    return spec.D0 * expand_energy(reduce(spec, state.dim_N), state, order).total


# Hydrogen limit: a1 = 2, a2 = 0 with m = r0 = 1 bohr, so the energy unit is
# 1/2 hartree.
_HYDROGEN_UNIT = 0.5


def coulomb_levels(n_principal: int, dim_N: int = 3) -> dict[tuple[int, int], float]:
    """Hartree energies of every (n, l) with n + l + 1 = n_principal."""
    if int(n_principal) != n_principal or n_principal < 1:
        raise ConfigurationError(f"n_principal must be an integer >= 1 (got {n_principal!r})")
    return {
        (n, n_principal - 1 - n): bound_energy_generalized(
            2.0, 0.0, QuantumState(n, n_principal - 1 - n, dim_N), _HYDROGEN_UNIT
        ).energy_physical
        for n in range(n_principal)
    }


def coulomb_check(n_principal: int) -> float:
    """Common hartree energy of the degenerate hydrogen shell, -1/(2 n^2)."""
    levels = coulomb_levels(n_principal)
    values = list(levels.values())
    ref = values[0]
    spread = max(abs(v - ref) for v in values)
    if spread > 1e-14 * abs(ref):
        raise ArithmeticError(f"hydrogen shell {n_principal} not degenerate: spread {spread:g}")
    return ref


def coulomb_rydberg(n_principal: int) -> float:
    """Same shell energy in Rydberg units, -1/n^2."""
    return coulomb_check(n_principal) * 2.0


def kratzer_reference_energy(
    A: float, B: float, n: int, l: int, mass: float = 1.0, hbar_sq: float = 1.0
) -> float:
    """Three-dimensional level of -B/r + A/r^2 in the path-integral closed form

        -(2m/h^2) B^2 [2n + 1 + ((2l+1)^2 + 8 m A / h^2)^{1/2}]^{-2}

    with ``n`` the radial quantum number.
    """
    bracket = 2 * n + 1 + math.sqrt((2 * l + 1) ** 2 + 8.0 * mass * A / hbar_sq)
    return -(2.0 * mass / hbar_sq) * B * B / bracket**2


def kratzer_substitution(V0: float, sigma: float) -> dict[str, float]:
    """Parameter map D0 = V0/2, r0 = sigma, A = sigma^2 V0/2, B = sigma^2 V0."""
    return {"D0": V0 / 2.0, "r0": sigma, "A": 0.5 * sigma**2 * V0, "B": sigma**2 * V0}
