"""Survival probabilities for repeated lossy spin measurements."""

from ._zenosim import (
    BranchLedger,
    DiagonalMirror,
    GeneralOptimum,
    IdealMirror,
    LossModel,
    NoFiniteOptimumError,
    NumericalError,
    OptimumReport,
    OutOfRegimeError,
    SearchResult,
    SpinFlipMirror,
    default_search_ceiling,
    general_n_opt,
    general_p_opt,
    is_conservative,
    maximize_log_survival,
    n_opt_estimate,
    n_opt_search,
    optimum_report,
    p_opt_estimate,
    survival_dominant,
    survival_exact,
    survival_first_order,
    survival_ideal,
    survival_oracle,
    x_opt_root,
)

__all__ = [
    "BranchLedger",
    "DiagonalMirror",
    "GeneralOptimum",
    "IdealMirror",
    "LossModel",
    "NoFiniteOptimumError",
    "NumericalError",
    "OptimumReport",
    "OutOfRegimeError",
    "SearchResult",
    "SpinFlipMirror",
    "default_search_ceiling",
    "general_n_opt",
    "general_p_opt",
    "is_conservative",
    "maximize_log_survival",
    "n_opt_estimate",
    "n_opt_search",
    "optimum_report",
    "p_opt_estimate",
    "survival_dominant",
    "survival_exact",
    "survival_first_order",
    "survival_ideal",
    "survival_oracle",
    "x_opt_root",
]

__version__ = "0.1.0"
