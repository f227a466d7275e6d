"""Independent brute-force references for testing the main modules."""

from .reference import (
    DEFAULT_CONFIG,
    OracleConfig,
    add_naive,
    cauchy_at,
    enumerate_reduced_fractions,
    mul_naive,
    partial_sum_path,
    partial_sums,
)

__all__ = [
    "DEFAULT_CONFIG",
    "OracleConfig",
    "add_naive",
    "cauchy_at",
    "enumerate_reduced_fractions",
    "mul_naive",
    "partial_sum_path",
    "partial_sums",
]
