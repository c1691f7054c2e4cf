"""Unsatisfiability-based (core-guided) MaxSAT.

:func:`solve_wmsu1` is the weighted partial algorithm: every unsatisfiable
core raises the lower bound by the smallest weight ``min_c`` found in it, and
each soft clause of the core is relaxed with a fresh variable.  A clause
heavier than ``min_c`` is split: its relaxed copy gets weight ``min_c`` while
the original keeps the remainder.  A cardinality constraint (Equals1 by
default, AtMost1 on request) ties the new relaxation variables together.
:func:`solve_msu1` is the unit-weight special case, where no split ever
happens.

The working formula lives in :class:`MsuState`, which is independent of the
SAT engine so that single iterations can be inspected; :func:`run_core_guided`
mirrors every state change into one incremental :class:`~wbo.engine.Engine`.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .encodings import encode_atmost1, encode_equals1
from .engine import Engine
from .errors import ResourceOut, UsageError
from .model import (
    PBConstraint,
    SoftConstraint,
    SolveOutcome,
    SolveStats,
    Status,
    VarPool,
    WBOFormula,
    cost_of,
)

DEFAULT_REPLICA_BUDGET = 10_000


@dataclass
class Relaxation:
    """What one UNSAT iteration changed in the working formula."""

    min_c: int
    added: list[int]          # indices of new (relaxed) soft constraints
    deactivated: list[int]    # soft constraints replaced by their relaxed form
    hard: list[PBConstraint]  # cardinality constraint over the new variables
    relax_vars: list[int]


class MsuState:
    """Working formula plus the lower bound ``cost_lb``.

    ``soft`` only grows; replaced constraints are marked inactive so that
    indices stay valid as engine identifiers.
    """

    def __init__(self, formula: WBOFormula, pool: VarPool | None = None, *,
                 card: str = "ladder", equals1: bool = True):
        self.formula = formula
        self.pool = pool if pool is not None else VarPool(formula.num_vars)
        self.card = card
        self.equals1 = equals1
        self.hard: list[PBConstraint] = list(formula.hard)
        self.soft: list[SoftConstraint] = list(formula.soft)
        self.active: list[bool] = [True] * len(self.soft)
        self.cost_lb = 0
        self.relaxation_sets: list[list[int]] = []
        self.history: dict[object, list[int]] = {}   # origin_id -> relaxation vars

    def active_indices(self) -> list[int]:
        return [i for i, a in enumerate(self.active) if a]

    def relaxation_vars(self, core: list[int]) -> list[int]:
        return [self.pool.new() for _ in core]

    def relaxed(self, c: PBConstraint, r: int) -> PBConstraint:
        return PBConstraint(c.terms + ((1, r),), 1)

    def cardinality(self, rvars: list[int]) -> list[PBConstraint]:
        encode = encode_equals1 if self.equals1 else encode_atmost1
        return encode(rvars, self.pool, self.card).constraints()

    def relax(self, core) -> Relaxation:
        """Apply one iteration for ``core`` (soft indices; others ignored)."""
        core = [i for i in dict.fromkeys(core) if isinstance(i, int) and self.active[i]]
        if not core:
            raise UsageError("core contains no active soft constraint")
        min_c = min(self.soft[i].weight for i in core)
        self.cost_lb += min_c
        rvars = self.relaxation_vars(core)
        added, deactivated = [], []
        for i, r in zip(core, rvars):
            s = self.soft[i]
            self.soft.append(SoftConstraint(self.relaxed(s.constraint, r), min_c, s.origin_id))
            self.active.append(True)
            added.append(len(self.soft) - 1)
            self.history.setdefault(s.origin_id, []).append(r)
            if s.weight > min_c:
                self.soft[i] = SoftConstraint(s.constraint, s.weight - min_c, s.origin_id)
            else:
                self.active[i] = False
                deactivated.append(i)
        distinct = list(dict.fromkeys(rvars))
        hard = self.cardinality(distinct)
        self.hard.extend(hard)
        self.relaxation_sets.append(distinct)
        return Relaxation(min_c, added, deactivated, hard, distinct)

    def working_formula(self) -> WBOFormula:
        top = max([self.pool.top, self.formula.num_vars])
        return WBOFormula(top, tuple(self.hard), tuple(self.soft[i] for i in self.active_indices()))

    def weight_by_origin(self) -> dict[object, int]:
        out: dict[object, int] = {}
        for i in self.active_indices():
            s = self.soft[i]
            out[s.origin_id] = out.get(s.origin_id, 0) + s.weight
        return out


def run_core_guided(state: MsuState, original: WBOFormula | None = None, *, seed: int = 0,
                    timeout: float | None = None, conflict_budget: int | None = None) -> SolveOutcome:
    """Drive ``state`` to optimality with one incremental engine.

    The final model is projected onto the variables of ``original`` (default:
    the state's input formula) and its cost there must equal ``cost_lb``.
    """
    original = original if original is not None else state.formula
    deadline = None if timeout is None else time.monotonic() + timeout
    stats = SolveStats()
    try:
        engine = Engine(state.pool, seed=seed, deadline=deadline, conflict_budget=conflict_budget)
        for c in state.hard:
            engine.add_hard(c)
        selector = {i: engine.add_soft(state.soft[i].constraint, i) for i in state.active_indices()}
        while True:
            res = engine.solve([selector[i] for i in state.active_indices()])
            stats.sat_calls += 1
            if res.sat:
                break
            if not res.core:
                return SolveOutcome(Status.HARD_INFEASIBLE, stats=stats)
            step = state.relax(res.core)
            stats.iterations += 1
            stats.core_sizes.append(len(step.added))
            stats.relax_vars += len(step.relax_vars)
            for c in step.hard:
                engine.add_hard(c)
            for i in step.deactivated:
                engine.add_clause([-selector[i]])
            for i in step.added:
                selector[i] = engine.add_soft(state.soft[i].constraint, i)
    except ResourceOut:
        return SolveOutcome(Status.RESOURCE_OUT, stats=stats)
    model = res.model.restrict(original.num_vars)
    cost = cost_of(original, model)
    if cost != state.cost_lb:
        raise AssertionError(f"model cost {cost} differs from lower bound {state.cost_lb}")
    stats.improvements.append(cost)
    return SolveOutcome(Status.OPTIMUM, cost, model, stats)


def _require_clausal(f: WBOFormula):
    if not f.is_clausal:
        raise UsageError("core-guided MaxSAT needs clause-only hard and soft constraints")


def solve_wmsu1(f: WBOFormula, *, card: str = "ladder", equals1: bool = True, seed: int = 0,
                timeout: float | None = None, conflict_budget: int | None = None) -> SolveOutcome:
    """Weighted partial MaxSAT by core-guided search with clause splitting."""
    _require_clausal(f)
    state = MsuState(f, card=card, equals1=equals1)
    return run_core_guided(state, seed=seed, timeout=timeout, conflict_budget=conflict_budget)


def solve_msu1(f: WBOFormula, **kwargs) -> SolveOutcome:
    """Partial MaxSAT (all soft weights 1).  ``stats.satisfied`` records the
    number of satisfied soft clauses."""
    _require_clausal(f)
    if any(s.weight != 1 for s in f.soft):
        raise UsageError("solve_msu1 needs unit soft weights; use solve_wmsu1")
    out = solve_wmsu1(f, **kwargs)
    if out.status is Status.OPTIMUM:
        out.stats.satisfied = len(f.soft) - out.cost
    return out


def naive_replication(f: WBOFormula, budget: int = DEFAULT_REPLICA_BUDGET) -> WBOFormula:
    """Replace every soft clause of weight c by c unit-weight copies."""
    total = f.total_soft_weight
    if total > budget:
        raise UsageError(f"replication needs {total} soft copies (budget {budget})")
    soft = tuple(SoftConstraint(s.constraint, 1, s.origin_id) for s in f.soft for _ in range(s.weight))
    return WBOFormula(f.num_vars, f.hard, soft)
