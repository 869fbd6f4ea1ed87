"""Group selection-rate ratio audits and contingency-table significance tests."""

from ._core import (
    AuditConfig,
    AuditReport,
    ConfigError,
    DataError,
    DisparityAssessment,
    GroupOutcomeTable,
    OutcomePolarity,
    RankedAlternative,
    RatioValue,
    SignificanceResult,
    categorical_worst_case,
    classify_evidence,
    fair_band,
    fisher_exact_2x2,
    goodness_of_fit,
    log_gamma,
    pearson_chi_squared,
    rank_alternatives,
    raw_ratio,
    regularized_upper_gamma,
    run_audit,
    symmetrized_ratio,
    two_proportion_z,
)

__version__ = "0.1.0"

__all__ = [
    "AuditConfig",
    "AuditReport",
    "ConfigError",
    "DataError",
    "DisparityAssessment",
    "GroupOutcomeTable",
    "OutcomePolarity",
    "RankedAlternative",
    "RatioValue",
    "SignificanceResult",
    "categorical_worst_case",
    "classify_evidence",
    "fair_band",
    "fisher_exact_2x2",
    "goodness_of_fit",
    "log_gamma",
    "pearson_chi_squared",
    "rank_alternatives",
    "raw_ratio",
    "regularized_upper_gamma",
    "run_audit",
    "symmetrized_ratio",
    "two_proportion_z",
]
