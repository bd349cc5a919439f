"""Exact computation of quadric degeneracy-locus classes and the divisor
classes and slopes they induce on moduli spaces."""

from .algebra import (
    DenominatorSurvives,
    DivisionNotExact,
    FactoredDenominator,
    NotSymmetric,
    Polynomial,
    QQ,
    RationalFunction,
    exact_divide,
    substitute,
    sum_fractions,
    symmetric_reduce,
)
from .symfunc import ChernSeries, Partition, a_const, b_const, gtp_class, schur, sym_degeneracy_class
from .loci import (
    NotDivisorial,
    PreconditionViolated,
    ScalarConditionViolated,
    ScalarData,
    WeightSet,
    chern_difference,
    closed_divisor_class,
    fixed_point_restriction,
    localization_class,
    pencil_class_quot,
    pencil_class_sub,
    projectivize,
    residue_divisor_class,
    sym2_weights,
)
from .grr import (
    BundleCharacter,
    FiberRuleTable,
    MissingRule,
    TautClass,
    curve_rules,
    grr_c1,
    hurwitz_sheaf_chern,
    jet_porteous_d3,
    k3_rules,
    lm_lambda_relation,
)
from .moduli import (
    Calibration,
    ModuliDivisor,
    SeriesParams,
    dp12_slope,
    fit_calibration,
    hodge_admissible_coeff,
    hurwitz_report,
    k3_rank4_class,
    known_divisor,
    kosz_class,
    pelda_slope,
    petri_class,
    petri_decomposition_report,
    series_params,
    slope,
    virtual_slope_from_pushforward,
)

__version__ = "1.0.0"

__all__ = [name for name in dir() if not name.startswith("_")]
