"""Exact correlation constants for PGL2(F_q) torus pairs."""

from .chars import AddChar, MulChar, canonical_mul_char, gauss_sum
from .correlation import (
    RepRecord,
    corr_constant,
    correlate_all,
    epsilon,
    epsilon_closed,
    pair_class_counts,
    regular_identity,
    tensor_identity,
)
from .cyclo import (
    CycNum,
    CycRing,
    PrimeIdealHandle,
    cyclotomic_poly,
    factor_cyclotomic_mod_p,
)
from .fields import ConsistencyError, FieldTower, build_tower
from .modp import ModpReport, predicted_residue, rep_report, sweep
from .pgl2 import PGL2
from .ps_model import PsModel
from .shintani import (
    BaseChangeClass,
    ShintaniOperator,
    base_change_class,
    eligible_exponents,
    theorem_report,
)
from .sympow import SymPowModule, diamond_check, jh_constituents, st_report

__all__ = [
    "AddChar",
    "BaseChangeClass",
    "ConsistencyError",
    "CycNum",
    "CycRing",
    "FieldTower",
    "ModpReport",
    "MulChar",
    "PGL2",
    "PrimeIdealHandle",
    "PsModel",
    "RepRecord",
    "ShintaniOperator",
    "SymPowModule",
    "base_change_class",
    "build_tower",
    "canonical_mul_char",
    "corr_constant",
    "correlate_all",
    "cyclotomic_poly",
    "diamond_check",
    "eligible_exponents",
    "epsilon",
    "epsilon_closed",
    "factor_cyclotomic_mod_p",
    "gauss_sum",
    "jh_constituents",
    "pair_class_counts",
    "predicted_residue",
    "regular_identity",
    "rep_report",
    "st_report",
    "sweep",
    "tensor_identity",
    "theorem_report",
]

__version__ = "0.1.0"
