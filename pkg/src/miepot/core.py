"""Physical parameters, unit handling and the Mie potential family.

All dimensionless energies in the package are measured in the unit
``hbar**2 / (2 * mass * r0**2)``.  In that unit the well depth ``D0`` equals
``gamma_sq`` and the special (m=2, k=1) potential reads

    W(x) = -a1 / x + a2 / x**2,    a1 = 2 * gamma_sq,  a2 = gamma_sq,

with ``x = r / r0``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ConfigurationError, ParameterDomainError

# CODATA 2018
HBAR_C_EV_ANGSTROM = 1973.269804
AMU_EV = 9.3149410242e8
HARTREE_EV = 27.211386245988
BOHR_ANGSTROM = 0.529177210903
AMU_ELECTRON_MASS = 1822.888486209


class UnitSystem(enum.Enum):
    ATOMIC = "atomic"  # hartree, bohr, electron mass, hbar = 1
    MOLECULAR = "molecular"  # eV, angstrom, amu

    @property
    def hbar_sq(self) -> float:
        """hbar**2 expressed in mass * length**2 * energy of this system."""
        if self is UnitSystem.ATOMIC:
            return 1.0
        return HBAR_C_EV_ANGSTROM**2 / AMU_EV

    @classmethod
    def parse(cls, value: "UnitSystem | str") -> "UnitSystem":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ConfigurationError(f"unsupported unit system {value!r}") from None


def _require_positive(name: str, value: float) -> None:
    if not (value > 0) or not math.isfinite(value):
        raise ParameterDomainError(f"{name} must be > 0 (got {value!r})")


@dataclass(frozen=True)
class PotentialSpec:
    """Physical parameters of a Mie-type diatomic interaction.

    ``exp_m`` and ``exp_k`` are the repulsive and attractive powers; only
    ``(2, 1)`` has closed-form bound states.
    """

    D0: float
    r0: float
    reduced_mass: float
    exp_m: int = 2
    exp_k: int = 1
    unit_system: UnitSystem = UnitSystem.ATOMIC

    def __post_init__(self) -> None:
        _require_positive("D0", self.D0)
        _require_positive("r0", self.r0)
        _require_positive("reduced_mass", self.reduced_mass)
        if int(self.exp_k) != self.exp_k or self.exp_k < 1:
            raise ParameterDomainError(f"exp_k must be an integer >= 1 (got {self.exp_k!r})")
        if int(self.exp_m) != self.exp_m or self.exp_m <= self.exp_k:
            raise ParameterDomainError(
                f"exp_m must be an integer > exp_k (got m={self.exp_m!r}, k={self.exp_k!r})"
            )
        object.__setattr__(self, "unit_system", UnitSystem.parse(self.unit_system))

    @property
    def is_special(self) -> bool:
        return self.exp_m == 2 and self.exp_k == 1

    @property
    def energy_unit(self) -> float:
        """hbar**2 / (2 m r0**2) in the energy unit of ``unit_system``."""
        return self.unit_system.hbar_sq / (2.0 * self.reduced_mass * self.r0**2)


@dataclass(frozen=True)
class DimensionlessModel:
    """Reduced radial problem in ``x = r / r0``.

    ``a1_coeff`` and ``a2_coeff`` are the Coulomb and inverse-square
    couplings of ``W(x) = -a1/x + a2/x**2``.  For the Mie special case they are
    tied to ``gamma_sq``; :meth:`coulomb_like` decouples them.
    ``energy_unit`` converts dimensionless energies to physical ones and
    ``r0`` fixes the physical length scale of normalized wavefunctions.
    """

    gamma_sq: float
    dim_N: int = 3
    a1_coeff: float | None = None
    a2_coeff: float | None = None
    energy_unit: float = 1.0
    r0: float = 1.0

    def __post_init__(self) -> None:
        _require_positive("gamma_sq", self.gamma_sq)
        if int(self.dim_N) != self.dim_N or self.dim_N < 2:
            raise ParameterDomainError(f"dim_N must be an integer >= 2 (got {self.dim_N!r})")
        if self.a1_coeff is None:
            object.__setattr__(self, "a1_coeff", 2.0 * self.gamma_sq)
        if self.a2_coeff is None:
            object.__setattr__(self, "a2_coeff", float(self.gamma_sq))
        if not (self.a2_coeff >= 0) or not math.isfinite(self.a2_coeff):
            raise ParameterDomainError(f"a2_coeff must be >= 0 (got {self.a2_coeff!r})")
        if not math.isfinite(self.a1_coeff):
            raise ParameterDomainError(f"a1_coeff must be finite (got {self.a1_coeff!r})")
        _require_positive("energy_unit", self.energy_unit)
        _require_positive("r0", self.r0)

    @classmethod
    def mie(cls, gamma_sq: float, dim_N: int = 3, **kw) -> "DimensionlessModel":
        return cls(gamma_sq, dim_N, **kw)

    @classmethod
    def coulomb_like(cls, a1: float, a2: float, dim_N: int = 3, **kw) -> "DimensionlessModel":
        """Model with free couplings; ``gamma_sq`` is set to the Coulomb strength a1/2."""
        _require_positive("a1", a1)
        return cls(a1 / 2.0, dim_N, a1_coeff=float(a1), a2_coeff=float(a2), **kw)

    @property
    def is_mie(self) -> bool:
        return self.a1_coeff == 2.0 * self.gamma_sq and self.a2_coeff == self.gamma_sq

    @property
    def gamma(self) -> float:
        return math.sqrt(self.gamma_sq)

    @property
    def coulomb_strength(self) -> float:
        """Half the Coulomb coupling; equals gamma_sq in the Mie case."""
        return 0.5 * self.a1_coeff

    def with_dim(self, dim_N: int) -> "DimensionlessModel":
        return DimensionlessModel(
            self.gamma_sq, dim_N, self.a1_coeff, self.a2_coeff, self.energy_unit, self.r0
        )


@dataclass(frozen=True)
class QuantumState:
    n: int
    l: int
    dim_N: int = 3

    def __post_init__(self) -> None:
        for name in ("n", "l"):
            v = getattr(self, name)
            if int(v) != v or v < 0:
                raise ParameterDomainError(f"{name} must be a non-negative integer (got {v!r})")
        if int(self.dim_N) != self.dim_N or self.dim_N < 2:
            raise ParameterDomainError(f"dim_N must be an integer >= 2 (got {self.dim_N!r})")

    @property
    def effective_l(self) -> float:
        """l + (N - 2)/2; the spectrum depends on (l, N) only through this."""
        return self.l + 0.5 * (self.dim_N - 2)


def reduce(spec: PotentialSpec, dim_N: int = 3) -> DimensionlessModel:
    """Map physical parameters onto the dimensionless special-case model."""
    if not isinstance(spec, PotentialSpec):
        raise ConfigurationError("reduce expects a PotentialSpec")
    gamma_sq = 2.0 * spec.reduced_mass * spec.r0**2 * spec.D0 / spec.unit_system.hbar_sq
    return DimensionlessModel(gamma_sq, dim_N, energy_unit=spec.energy_unit, r0=spec.r0)


def _check_radius(r, name: str) -> np.ndarray | float:
    arr = np.asarray(r, dtype=float)
    if np.any(~(arr > 0)):
        raise ParameterDomainError(f"{name} must be > 0")
    return arr if arr.ndim else float(arr)


def potential_general(spec: PotentialSpec, r):
    """D0 [k/(m-k) (r0/r)^m - m/(m-k) (r0/r)^k] for scalar or array ``r``."""
    r = _check_radius(r, "r")
    m, k = spec.exp_m, spec.exp_k
    s = spec.r0 / r
    return spec.D0 * (k / (m - k) * s**m - m / (m - k) * s**k)


def potential_special(model: DimensionlessModel, x):
    """Dimensionless special-case potential -a1/x + a2/x**2."""
    x = _check_radius(x, "x")
    return -model.a1_coeff / x + model.a2_coeff / x**2


class HarmonicParams(NamedTuple):
    omega: float  # numerically hbar*omega in the system's energy unit
    inertia: float  # mass * length**2


def harmonic_params(spec: PotentialSpec) -> HarmonicParams:
    """Small-vibration frequency sqrt(2 D0 / (m r0^2)) and moment of inertia m r0^2.

    In atomic units ``omega`` is the angular frequency itself; in molecular
    units it is reported as the quantum hbar*omega in eV.
    """
    inertia = spec.reduced_mass * spec.r0**2
    omega = math.sqrt(spec.unit_system.hbar_sq * 2.0 * spec.D0 / inertia)
    return HarmonicParams(omega, inertia)


def quadratic_expansion(spec: PotentialSpec, r):
    """Parabolic approximation D0 (r - r0)^2 / r0^2 - D0 about the minimum."""
    r = np.asarray(r, dtype=float)
    out = spec.D0 * (r - spec.r0) ** 2 / spec.r0**2 - spec.D0
    return out if out.ndim else float(out)
