"""Significance tests for Jaccard/Tanimoto similarity on binary vectors."""

from jaccard._core import (
    ResourceLimitError,
    ValidationError,
    __version__,
    asymptotic_pvalue,
    bootstrap_pvalue,
    centered_statistic,
    contingency,
    estimate_pi0,
    exact_pvalue,
    expectation,
    mca_pvalue,
    q_values,
    simulate_null_pair,
)

__all__ = [
    "ResourceLimitError",
    "ValidationError",
    "__version__",
    "asymptotic_pvalue",
    "bootstrap_pvalue",
    "centered_statistic",
    "contingency",
    "estimate_pi0",
    "exact_pvalue",
    "expectation",
    "mca_pvalue",
    "q_values",
    "simulate_null_pair",
]
