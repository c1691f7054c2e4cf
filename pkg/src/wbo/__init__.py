"""Weighted Boolean Optimization: core-guided MaxSAT and PB solvers."""

from .errors import EncodingBudgetError, HardViolation, ParseError, ResourceOut, UsageError
from .model import (
    Assignment,
    PBConstraint,
    PBOInstance,
    SoftConstraint,
    SolveOutcome,
    SolveStats,
    Status,
    VarPool,
    WBOFormula,
    cost_of,
    evaluate,
    normalize,
)
from .msu import naive_replication, solve_msu1, solve_wmsu1
from .oracle import brute_force
from .parser_io import parse_opb, parse_wbo, parse_wcnf, write_solution
from .translate import maxsat_to_pbo, pbo_to_maxsat, pbo_to_wbo, wbo_to_pbo
from .wbo_core import solve_linear_search, solve_wbo

__all__ = [
    "Assignment", "EncodingBudgetError", "HardViolation", "PBConstraint", "PBOInstance",
    "ParseError", "ResourceOut", "SoftConstraint", "SolveOutcome", "SolveStats", "Status",
    "UsageError", "VarPool", "WBOFormula", "brute_force", "cost_of", "evaluate",
    "maxsat_to_pbo", "naive_replication", "normalize", "parse_opb", "parse_wbo",
    "parse_wcnf", "pbo_to_maxsat", "pbo_to_wbo", "solve_linear_search", "solve_msu1",
    "solve_wbo", "solve_wmsu1", "wbo_to_pbo", "write_solution",
]
