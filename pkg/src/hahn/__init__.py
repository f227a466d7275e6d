"""Truncated Hahn-field arithmetic, weak topologies and power series."""

from .errors import (
    BudgetError,
    CutoffError,
    DuplicateExponentError,
    HahnError,
    HypothesisError,
    NonConvergentError,
    ParseError,
    UndecidableError,
)
from .number import D, EQ, GT, INF, LT, ONE, ZERO, HahnNumber, compare, leading_exponent, make, monomial, mul, valuation
from .partitions import DIAGONAL, CustomFinitePartition, DiagonalPartition, Partition, diagonal_block, diagonal_index
from .seminorms import (
    SeminormFamily,
    gamma_seminorm,
    in_gamma_ball,
    in_u_ball,
    in_valuation_ball,
    metric_gamma,
    metric_u,
    mu,
    u_seminorm,
)
from .sequences import SequenceReport, Verdict, analyze_sequence
from .series import (
    Classification,
    ConvergenceReport,
    PowerSeries,
    RadiusEstimator,
    Shape,
    classify,
    eval_weak,
    make_rule,
    radius,
    std_function,
)
from .text import evaluate_expression, format_number, parse_number
from .topology import (
    Ball,
    CheckReport,
    Topology,
    Witness,
    check_finite_partition_equivalence,
    check_weak_subset_u,
    witness_restriction,
    witness_u_not_weak,
    witness_weak_not_valuation,
)

__version__ = "0.1.0"
