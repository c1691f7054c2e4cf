"""Weighted Boolean Optimization: hard and weighted soft PB constraints.

:func:`solve_wbo` runs the core-guided loop of :mod:`wbo.msu` on PB
constraints.  A soft constraint ``sum(a_j l_j) >= b`` is relaxed as
``b*r + sum(a_j l_j) >= b``, the new relaxation variables of an iteration are
bounded by ``sum(r) <= 1``, and two core constraints may share one
relaxation variable when some variable satisfies the first in one phase and
the second in the other phase.  Shared pairs are chosen by a greedy matching.

``mode="cnf"`` first rewrites every non-clausal constraint into clauses with
the sequential counter (soft ones through an indicator literal) and encodes
the cardinality constraints into CNF as well.

:func:`solve_linear_search` is the upper-bounding alternative: relax all
soft constraints at once and tighten ``sum(c_i r_i) <= U - 1`` after every
model until the engine reports UNSAT.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence

from .encodings import DEFAULT_CLAUSE_BUDGET, encode_atmost1, encode_pb
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
    normalize,
    var_of,
)
from .msu import MsuState, run_core_guided


def relax_pb(c: PBConstraint, r: int) -> PBConstraint:
    """``b*r + sum(a_j l_j) >= b``: setting ``r`` true satisfies the result."""
    if any(var_of(l) == var_of(r) for _, l in c.terms):
        raise UsageError(f"relaxation literal {r} already occurs in {c}")
    return PBConstraint(c.terms + ((c.bound, r),), c.bound)


def can_share(c1: PBConstraint, c2: PBConstraint) -> bool:
    """True when some literal alone satisfies ``c1`` while its complement
    alone satisfies ``c2``; then no assignment falsifies both."""
    strong2 = {l for a, l in c2.terms if a >= c2.bound}
    return any(a >= c1.bound and -l in strong2 for a, l in c1.terms)


@dataclass
class SharingGraph:
    vertices: list[PBConstraint]
    edges: list[tuple[int, int]] = field(default_factory=list)
    matching: list[tuple[int, int]] = field(default_factory=list)

    def assign_vars(self, pool: VarPool) -> list[int]:
        """One relaxation variable per matched pair, a private one otherwise,
        allocated in vertex order."""
        partner = {}
        for i, j in self.matching:
            partner[i], partner[j] = j, i
        out: list[int | None] = [None] * len(self.vertices)
        for i in range(len(self.vertices)):
            if out[i] is None:
                out[i] = pool.new()
                if i in partner:
                    out[partner[i]] = out[i]
        return out


def greedy_matching(n: int, edges: Sequence[tuple[int, int]]) -> list[tuple[int, int]]:
    used = [False] * n
    matching = []
    for i, j in edges:
        if not used[i] and not used[j]:
            used[i] = used[j] = True
            matching.append((i, j))
    return matching


def build_sharing(core: Sequence) -> SharingGraph:
    """Sharing graph over ``core`` (PB or soft constraints) with a greedy
    matching that scans edges in index order."""
    vertices = [c.constraint if isinstance(c, SoftConstraint) else c for c in core]
    n = len(vertices)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)
             if can_share(vertices[i], vertices[j]) or can_share(vertices[j], vertices[i])]
    return SharingGraph(vertices, edges, greedy_matching(n, edges))


class WboState(MsuState):
    """Working formula for WBO: PB relaxation, optional sharing, AtMost1
    over each iteration's relaxation variables (native or CNF)."""

    def __init__(self, formula: WBOFormula, pool: VarPool | None = None, *,
                 share: bool = True, native_card: bool = True, card: str = "ladder"):
        super().__init__(formula, pool, card=card, equals1=False)
        self.share = share
        self.native_card = native_card
        self.matchings: list[list[tuple[int, int]]] = []

    def relaxation_vars(self, core):
        if not self.share:
            return super().relaxation_vars(core)
        graph = build_sharing([self.soft[i] for i in core])
        self.matchings.append(graph.matching)
        return graph.assign_vars(self.pool)

    def relaxed(self, c, r):
        return relax_pb(c, r)

    def cardinality(self, rvars):
        if self.native_card:
            return normalize([(1, r) for r in rvars], "<=", 1)
        return encode_atmost1(rvars, self.pool, self.card).constraints()


def to_clausal(f: WBOFormula, pool: VarPool, budget: int = DEFAULT_CLAUSE_BUDGET) -> WBOFormula:
    """Clause-only WBO formula with the same optimum.

    Hard PB constraints are encoded directly.  A non-clausal soft constraint
    ``C`` of weight ``w`` becomes the hard encoding of ``p -> C`` plus the
    soft unit ``(p, w)`` for a fresh indicator ``p``.
    """
    hard: list[PBConstraint] = []
    soft: list[SoftConstraint] = []

    def add_encoded(c):
        for cl in encode_pb(c, pool, budget).clauses:
            hard.append(PBConstraint((), 1) if not cl else PBConstraint.clause(cl))

    for c in f.hard:
        add_encoded(c)
    for s in f.soft:
        if s.constraint.is_clause:
            soft.append(s)
            continue
        p = pool.new()
        add_encoded(relax_pb(s.constraint, -p))
        soft.append(SoftConstraint(PBConstraint.clause([p]), s.weight, s.origin_id))
    return WBOFormula(pool.top, tuple(hard), tuple(soft))


def solve_wbo(f: WBOFormula, mode: str = "native", *, share: bool = True, card: str = "ladder",
              seed: int = 0, timeout: float | None = None, conflict_budget: int | None = None,
              clause_budget: int = DEFAULT_CLAUSE_BUDGET) -> SolveOutcome:
    """Core-guided WBO.  ``mode`` is ``"native"`` (PB engine) or ``"cnf"``."""
    if mode == "native":
        state = WboState(f, share=share, native_card=True)
        return run_core_guided(state, f, seed=seed, timeout=timeout, conflict_budget=conflict_budget)
    if mode == "cnf":
        pool = VarPool(f.num_vars)
        clausal = to_clausal(f, pool, clause_budget)
        state = WboState(clausal, pool, share=share, native_card=False, card=card)
        return run_core_guided(state, f, seed=seed, timeout=timeout, conflict_budget=conflict_budget)
    raise UsageError(f"unknown WBO mode {mode!r}")


def solve_linear_search(f: WBOFormula, *, seed: int = 0, timeout: float | None = None,
                        conflict_budget: int | None = None) -> SolveOutcome:
    """Model-improving search on the weighted sum of relaxation variables.

    The first call assumes every relaxation variable false, so instances
    whose soft constraints can all hold finish after two calls.
    """
    deadline = None if timeout is None else time.monotonic() + timeout
    stats = SolveStats()
    pool = VarPool(f.num_vars)
    best = None
    try:
        engine = Engine(pool, seed=seed, deadline=deadline, conflict_budget=conflict_budget)
        for c in f.hard:
            engine.add_hard(c)
        objective = []
        for s in f.soft:
            r = pool.new()
            engine.add_hard(relax_pb(s.constraint, r))
            objective.append((s.weight, r))
        stats.relax_vars = len(objective)
        # first try to satisfy every soft constraint; on failure fall back to
        # the unconstrained search
        probe = [-r for _, r in objective]
        while True:
            res = engine.solve(probe)
            stats.sat_calls += 1
            if not res.sat:
                if probe:
                    probe = []
                    continue
                break
            probe = []
            best = res.model.restrict(f.num_vars)
            upper = cost_of(f, best)
            stats.improvements.append(upper)
            stats.iterations += 1
            for c in normalize(objective, "<=", upper - 1):
                engine.add_hard(c)
    except ResourceOut:
        return SolveOutcome(Status.RESOURCE_OUT, stats=stats)
    if best is None:
        return SolveOutcome(Status.HARD_INFEASIBLE, stats=stats)
    return SolveOutcome(Status.OPTIMUM, stats.improvements[-1], best, stats)
