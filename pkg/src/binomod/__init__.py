"""Binomial coefficients modulo primes, periodicity in a range, and small finite fields."""

__version__ = "0.1.0"

from .binom import (
    PrimePowerSplit,
    ResidueRow,
    RowTooLongError,
    SignConvention,
    binom_mod,
    binom_mod_split,
    column,
    ext_binom,
    padic_digits,
    residue_row,
    split,
    symmetry_reflect,
    upper_period,
)
from .field import FieldSpec, Subgroup, build_field, find_irreducible, generates_field, is_subfield_closed, subgroup_of_order
from .periodicity import PeriodVerdict, ScanReport, is_period, minimal_period, period_set
from .subgroups import bounds_report, fermat_count, near_field_check, one_minus_intersection

__all__ = [
    "FieldSpec",
    "PeriodVerdict",
    "PrimePowerSplit",
    "ResidueRow",
    "RowTooLongError",
    "ScanReport",
    "SignConvention",
    "Subgroup",
    "binom_mod",
    "binom_mod_split",
    "bounds_report",
    "build_field",
    "column",
    "ext_binom",
    "fermat_count",
    "find_irreducible",
    "generates_field",
    "is_period",
    "is_subfield_closed",
    "minimal_period",
    "near_field_check",
    "one_minus_intersection",
    "padic_digits",
    "period_set",
    "residue_row",
    "split",
    "subgroup_of_order",
    "symmetry_reflect",
    "upper_period",
]
