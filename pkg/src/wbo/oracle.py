"""Exhaustive reference solvers for desk-scale verification.

Everything here is deliberately independent of the CDCL engine: full
enumeration with numpy for optimisation problems and a small DPLL search
for projecting CNF encodings onto their input variables.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import UsageError
from .model import (
    Assignment,
    MAX_WEIGHT,
    PBConstraint,
    SolveOutcome,
    SolveStats,
    Status,
    WBOFormula,
    var_of,
)


def all_assignments(n: int) -> np.ndarray:
    """``(2**n, n)`` boolean matrix in lexicographic order (x1 most significant)."""
    rows = np.arange(2**n, dtype=np.int64)[:, None]
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    return ((rows >> shifts) & 1).astype(bool)


def _dtype_for(total: int):
    return np.int64 if total <= MAX_WEIGHT // 2 else object


def satisfied_mask(c: PBConstraint, X: np.ndarray, columns: dict[int, int] | None = None) -> np.ndarray:
    """Rows of ``X`` satisfying ``c``.  ``columns`` maps variable -> column."""
    dtype = _dtype_for(c.coef_sum)
    total = np.zeros(X.shape[0], dtype=dtype)
    for a, l in c.terms:
        col = var_of(l) - 1 if columns is None else columns[var_of(l)]
        lit = X[:, col] if l > 0 else ~X[:, col]
        total = total + lit.astype(dtype) * a
    return total >= c.bound


def brute_force(f: WBOFormula, var_limit: int = 20) -> SolveOutcome:
    """Minimum-cost assignment by full enumeration.

    Returns the lexicographically least optimal model, or HARD_INFEASIBLE.
    """
    if f.num_vars > var_limit:
        raise UsageError(f"{f.num_vars} variables exceed the oracle limit of {var_limit}")
    X = all_assignments(f.num_vars)
    feasible = np.ones(X.shape[0], dtype=bool)
    for c in f.hard:
        feasible &= satisfied_mask(c, X)
    if not feasible.any():
        return SolveOutcome(Status.HARD_INFEASIBLE)
    dtype = _dtype_for(f.total_soft_weight)
    cost = np.zeros(X.shape[0], dtype=dtype)
    for s in f.soft:
        cost = cost + (~satisfied_mask(s.constraint, X)).astype(dtype) * s.weight
    idx = np.flatnonzero(feasible)
    best = idx[int(np.argmin(cost[idx]))]
    model = Assignment(tuple(bool(b) for b in X[best]))
    return SolveOutcome(Status.OPTIMUM, int(cost[best]), model)


def brute_force_pbo(objective: Sequence[tuple[int, int]], constraints: Sequence[PBConstraint],
                    num_vars: int, offset: int = 0, var_limit: int = 20):
    """Minimise ``offset + sum(c * lit)`` subject to ``constraints``.

    Returns ``(value, model)`` or ``None`` when infeasible.
    """
    if num_vars > var_limit:
        raise UsageError(f"{num_vars} variables exceed the oracle limit of {var_limit}")
    X = all_assignments(num_vars)
    feasible = np.ones(X.shape[0], dtype=bool)
    for c in constraints:
        feasible &= satisfied_mask(c, X)
    if not feasible.any():
        return None
    dtype = _dtype_for(sum(abs(c) for c, _ in objective))
    value = np.zeros(X.shape[0], dtype=dtype)
    for c, l in objective:
        lit = X[:, var_of(l) - 1] if l > 0 else ~X[:, var_of(l) - 1]
        value = value + lit.astype(dtype) * c
    idx = np.flatnonzero(feasible)
    best = idx[int(np.argmin(value[idx]))]
    return int(value[best]) + offset, Assignment(tuple(bool(b) for b in X[best]))


def constraint_models(constraints: Iterable[PBConstraint], variables: Sequence[int]) -> set[tuple[bool, ...]]:
    """Assignments over ``variables`` satisfying every constraint (which must
    mention only those variables)."""
    columns = {v: i for i, v in enumerate(variables)}
    X = all_assignments(len(variables))
    mask = np.ones(X.shape[0], dtype=bool)
    for c in constraints:
        mask &= satisfied_mask(c, X, columns)
    return {tuple(bool(b) for b in row) for row in X[mask]}


class _Dpll:
    """Plain DPLL with counter-based propagation over PB constraints."""

    def __init__(self, constraints):
        self.constraints = [(list(c.terms), c.bound) for c in constraints]
        self.occ: dict[int, list[int]] = {}
        for i, (terms, _) in enumerate(self.constraints):
            for _, l in terms:
                self.occ.setdefault(l, []).append(i)
        self.slack = [sum(a for a, _ in t) - b for t, b in self.constraints]
        self.value: dict[int, bool] = {}
        self.trail: list[int] = []

    def lit_value(self, l):
        v = self.value.get(var_of(l))
        if v is None:
            return None
        return v if l > 0 else not v

    def assign(self, lit) -> bool:
        """Assign ``lit`` true and propagate; False on conflict."""
        queue = [lit]
        while queue:
            p = queue.pop()
            val = self.lit_value(p)
            if val is True:
                continue
            if val is False:
                return False
            self.value[var_of(p)] = p > 0
            self.trail.append(p)
            for i in self.occ.get(-p, ()):
                terms, _ = self.constraints[i]
                self.slack[i] -= next(a for a, l in terms if l == -p)
            for i in self.occ.get(-p, ()):
                terms, _ = self.constraints[i]
                if self.slack[i] < 0:
                    return False
                for a, l in terms:
                    if a > self.slack[i] and self.lit_value(l) is None:
                        queue.append(l)
        return True

    def undo(self, mark):
        while len(self.trail) > mark:
            p = self.trail.pop()
            del self.value[var_of(p)]
            for i in self.occ.get(-p, ()):
                terms, _ = self.constraints[i]
                self.slack[i] += next(a for a, l in terms if l == -p)

    def start(self) -> bool:
        if any(s < 0 for s in self.slack):
            return False
        for (terms, _), s in zip(self.constraints, self.slack):
            for a, l in terms:
                if a > s and self.lit_value(l) is None:
                    if not self.assign(l):
                        return False
        return True

    def extendable(self, free_vars) -> bool:
        free = [v for v in free_vars if v not in self.value]
        if not free:
            return True
        v = free[0]
        for lit in (-v, v):
            mark = len(self.trail)
            if self.assign(lit) and self.extendable(free[1:]):
                self.undo(mark)
                return True
            self.undo(mark)
        return False


def projected_models(constraints: Sequence[PBConstraint], variables: Sequence[int],
                     var_limit: int = 20) -> set[tuple[bool, ...]]:
    """Assignments over ``variables`` that extend to a model of ``constraints``.

    The projected variables are enumerated exhaustively (hence the limit);
    every other variable is decided by a complete DPLL search.
    """
    if len(variables) > var_limit:
        raise UsageError(f"{len(variables)} projected variables exceed the limit of {var_limit}")
    constraints = list(constraints)
    solver = _Dpll(constraints)
    others = sorted({var_of(l) for c in constraints for _, l in c.terms} - set(variables))
    out: set[tuple[bool, ...]] = set()
    if not solver.start():
        return out

    def rec(i):
        if i == len(variables):
            if solver.extendable(others):
                out.add(tuple(solver.lit_value(v) for v in variables))
            return
        v = variables[i]
        cur = solver.lit_value(v)
        for lit in (-v, v):
            if cur is not None and cur != (lit > 0):
                continue
            mark = len(solver.trail)
            if solver.assign(lit):
                rec(i + 1)
            solver.undo(mark)

    rec(0)
    return out
