"""Thermal Casimir free energy, entropy and force between metal plates."""

from .dielectric import (
    BlochGruneisenGamma,
    ConstantGamma,
    Drude,
    IdealMetal,
    Plasma,
    TableGamma,
    Vacuum,
    aluminum_drude,
    aluminum_plasma,
    gamma_tilde,
    load_gamma_table,
)
from .engine import (
    EngineResult,
    QuadratureConfig,
    ThermoResult,
    evaluate,
    force_plates,
    force_sphere_plate,
    free_energy,
    matsubara_term,
    zero_point_energy,
)
from .errors import CasimirError, ConfigurationError, DomainError, NumericalFailure
from .reflection import ZeroFreqPrescription
from .system import Flag, ParallelPlates, PlateSystem, SpherePlate, effective_temperature
from .thermo import (
    EntropyCurvePoint,
    NernstVerdict,
    entropy,
    entropy_curve,
    entropy_lowT_modified,
    entropy_lowT_plasma,
    find_sign_crossing,
    nernst_limit,
    s_offset_identity,
)

__version__ = "0.1.0"

__all__ = [
    "BlochGruneisenGamma",
    "CasimirError",
    "ConfigurationError",
    "ConstantGamma",
    "DomainError",
    "Drude",
    "EngineResult",
    "EntropyCurvePoint",
    "Flag",
    "IdealMetal",
    "NernstVerdict",
    "NumericalFailure",
    "ParallelPlates",
    "Plasma",
    "PlateSystem",
    "QuadratureConfig",
    "SpherePlate",
    "TableGamma",
    "ThermoResult",
    "Vacuum",
    "ZeroFreqPrescription",
    "aluminum_drude",
    "aluminum_plasma",
    "effective_temperature",
    "entropy",
    "entropy_curve",
    "entropy_lowT_modified",
    "entropy_lowT_plasma",
    "evaluate",
    "find_sign_crossing",
    "force_plates",
    "force_sphere_plate",
    "free_energy",
    "gamma_tilde",
    "load_gamma_table",
    "matsubara_term",
    "nernst_limit",
    "s_offset_identity",
    "zero_point_energy",
]
