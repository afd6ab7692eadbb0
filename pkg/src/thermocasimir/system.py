"""Plate geometry, temperature, material and the derived length/temperature scales."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import Optional, Union

from .constants import C, HBAR, K_B
from .dielectric import DielectricSpec, plasma_frequency
from .errors import DomainError
from .reflection import ZeroFreqPrescription


@dataclass(frozen=True)
class ParallelPlates:
    pass


@dataclass(frozen=True)
class SpherePlate:
    radius: float

    def __post_init__(self):
        if not self.radius > 0.0:
            raise DomainError("sphere radius must be positive")


Geometry = Union[ParallelPlates, SpherePlate]


class Flag(enum.Flag):
    NONE = 0
    CONDITION_THREE_VIOLATED = enum.auto()
    SPHERE_WARNING = enum.auto()


@dataclass(frozen=True)
class PlateSystem:
    separation: float
    temperature: float
    material: DielectricSpec
    prescription: ZeroFreqPrescription = ZeroFreqPrescription.MODEL_INTRINSIC
    geometry: Geometry = field(default_factory=ParallelPlates)

    def __post_init__(self):
        if not self.separation > 0.0:
            raise DomainError(f"separation must be positive, got {self.separation}")
        if not self.temperature >= 0.0:
            raise DomainError(f"temperature must be non-negative, got {self.temperature}")

    @property
    def sphere_warning(self) -> bool:
        """The proximity conversion assumes R >> a; flagged (not enforced) below R = 100 a."""
        return isinstance(self.geometry, SpherePlate) and self.geometry.radius < 100.0 * self.separation

    def with_(self, **changes) -> "PlateSystem":
        return replace(self, **changes)


@dataclass(frozen=True)
class DerivedScales:
    T_eff: float
    delta_0: Optional[float]
    lambda_p: Optional[float]


def effective_temperature(a: float) -> float:
    """T_eff with k_B T_eff = hbar c / (2a)."""
    return HBAR * C / (2.0 * a * K_B)


def derived_scales(system: PlateSystem) -> DerivedScales:
    """T_eff always; penetration depth c/omega_p and plasma wavelength when the model has omega_p."""
    omega_p = plasma_frequency(system.material)
    t_eff = effective_temperature(system.separation)
    if omega_p is None:
        return DerivedScales(t_eff, None, None)
    delta_0 = C / omega_p
    return DerivedScales(t_eff, delta_0, 2.0 * math.pi * delta_0)
