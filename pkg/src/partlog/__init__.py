"""Exact tools for log-concavity and the abundance inequality x_n x_m >= x_{n+m}."""
from .exactnum import Method, Ordering, PowerComparison, compare_powers, compare_products
from .partitions import ExactSequence, Kind, PartitionFamily, extend, generate, oracle_generate
from .analysis import (Direction, LogBehaviorError, Verdict, check_bounds_12, check_condition_13,
                       classify_pairs, condition_report, extend_a_sequence, find_d_M, find_min_k,
                       scan_log_behavior, verify_telescoping, verify_theorem_11)

__version__ = "0.1.0"

__all__ = [
    "Method", "Ordering", "PowerComparison", "compare_powers", "compare_products",
    "ExactSequence", "Kind", "PartitionFamily", "extend", "generate", "oracle_generate",
    "Direction", "LogBehaviorError", "Verdict", "check_bounds_12", "check_condition_13",
    "classify_pairs", "condition_report", "extend_a_sequence", "find_d_M", "find_min_k",
    "scan_log_behavior", "verify_telescoping", "verify_theorem_11",
]
