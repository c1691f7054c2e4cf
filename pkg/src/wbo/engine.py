"""Conflict-driven SAT engine over clauses and native pseudo-Boolean
constraints, with incremental solving under assumptions.

Clauses use two watched literals.  PB constraints keep a slack counter
(sum of coefficients of non-false literals minus the bound) that is updated
eagerly on every assignment; a literal whose coefficient exceeds the slack is
implied, with the currently false literals of the constraint as a
clause-form reason.  Learning is plain first-UIP resolution on those clauses.

Soft constraints are registered with :meth:`Engine.add_soft`, which guards
them with a fresh selector literal.  When a solve under selector assumptions
fails, final-conflict analysis returns the responsible selectors, i.e. an
unsatisfiable core (not necessarily minimal).

Defaults: VSIDS branching (decay 0.95) with saved phases, initial phase
false, Luby restarts with a unit of 100 conflicts, 1% random decisions drawn
from a ``random.Random(seed)`` stream.
"""

from __future__ import annotations

import heapq
import random
import time
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

from .errors import ResourceOut, UsageError
from .model import Assignment, PBConstraint, VarPool


@dataclass
class EngineResult:
    sat: bool
    model: Assignment | None = None
    core: list = field(default_factory=list)       # soft identifiers
    core_lits: list[int] = field(default_factory=list)


@dataclass
class PBPropagation:
    implied: list[tuple[int, list[int]]]   # (literal, falsified literals of the constraint)
    conflict: list[int] | None = None


def propagate_pb(c: PBConstraint, values: dict[int, bool]) -> PBPropagation:
    """Counter propagation of a single constraint under a partial assignment.

    ``values`` maps variables to booleans.  A literal is implied when the
    coefficients of the non-false literals other than it no longer reach the
    bound; the reason is the set of falsified literals of ``c``.
    """
    def val(l):
        v = values.get(abs(l))
        return None if v is None else (v if l > 0 else not v)

    false = [l for _, l in c.terms if val(l) is False]
    slack = sum(a for a, l in c.terms if val(l) is not False) - c.bound
    if slack < 0:
        return PBPropagation([], false)
    implied = [(l, list(false)) for a, l in c.terms if a > slack and val(l) is None]
    return PBPropagation(implied)


def _luby(i: int) -> int:
    size, seq = 1, 0
    while size < i + 1:
        seq += 1
        size = 2 * size + 1
    while size - 1 != i:
        size = (size - 1) >> 1
        seq -= 1
        i = i % size
    return 1 << seq


class _PB:
    __slots__ = ("terms", "bound", "slack", "max_coef")

    def __init__(self, terms, bound):
        self.terms = terms
        self.bound = bound
        self.max_coef = max(a for a, _ in terms)
        self.slack = 0


def _li(l: int) -> int:
    return 2 * l if l > 0 else -2 * l + 1


class Engine:
    """Incremental CDCL solver.

    Variables come from ``pool``; the engine grows its tables to cover any
    variable it is handed.  ``conflict_budget`` bounds the total number of
    conflicts over the engine's lifetime and ``deadline`` is an absolute
    ``time.monotonic()`` value; exceeding either raises :class:`ResourceOut`.
    """

    def __init__(self, pool: VarPool | None = None, *, seed: int = 0,
                 conflict_budget: int | None = None, deadline: float | None = None,
                 restart_base: int = 100, random_freq: float = 0.01, var_decay: float = 0.95):
        self.pool = pool if pool is not None else VarPool()
        self.conflict_budget = conflict_budget
        self.deadline = deadline
        self.restart_base = restart_base
        self.random_freq = random_freq
        self.var_decay = var_decay
        self._rng = random.Random(seed)

        self.nvars = 0
        self._assign = [0]
        self._level = [0]
        self._reason: list = [None]
        self._activity = [0.0]
        self._phase = [False]
        self._seen = [False]
        self._watches: list[list] = [[], []]
        self._pb_occ: list[list] = [[], []]
        self._heap: list = []
        self._var_inc = 1.0

        self._trail: list[int] = []
        self._trail_lim: list[int] = []
        self._qhead = 0

        self.ok = True
        self.clauses: list[list[int]] = []
        self.learnts: list[list[int]] = []
        self.pbs: list[_PB] = []
        self.selectors: dict[int, Hashable] = {}
        self._idents: set = set()
        self.conflicts = 0
        self.decisions = 0
        self.solves = 0

    # -- variables -----------------------------------------------------

    def _grow(self, v: int):
        if v > self.pool.top:
            self.pool.top = v
        while self.nvars < v:
            self.nvars += 1
            self._assign.append(0)
            self._level.append(0)
            self._reason.append(None)
            self._activity.append(0.0)
            self._phase.append(False)
            self._seen.append(False)
            self._watches += [[], []]
            self._pb_occ += [[], []]
            heapq.heappush(self._heap, (0.0, self.nvars))

    def new_var(self) -> int:
        v = self.pool.new()
        self._grow(v)
        return v

    def value(self, lit: int) -> int:
        """1 true, -1 false, 0 unassigned."""
        a = self._assign[abs(lit)]
        return a if lit > 0 else -a

    # -- trail ---------------------------------------------------------

    def _enqueue(self, lit: int, reason):
        v = abs(lit)
        self._assign[v] = 1 if lit > 0 else -1
        self._level[v] = len(self._trail_lim)
        self._reason[v] = reason
        self._trail.append(lit)
        for pb, a in self._pb_occ[_li(-lit)]:
            pb.slack -= a

    def _cancel_until(self, level: int):
        if len(self._trail_lim) <= level:
            return
        stop = self._trail_lim[level]
        assign, heap, act = self._assign, self._heap, self._activity
        for i in range(len(self._trail) - 1, stop - 1, -1):
            lit = self._trail[i]
            v = abs(lit)
            for pb, a in self._pb_occ[_li(-lit)]:
                pb.slack += a
            assign[v] = 0
            self._reason[v] = None
            self._phase[v] = lit > 0
            heapq.heappush(heap, (-act[v], v))
        del self._trail[stop:]
        del self._trail_lim[level:]
        self._qhead = len(self._trail)

    def _propagate(self):
        """Unit propagation; returns a conflict clause (all literals false) or None."""
        assign = self._assign
        watches = self._watches
        while self._qhead < len(self._trail):
            p = self._trail[self._qhead]
            self._qhead += 1
            false_lit = -p
            ws = watches[_li(false_lit)]
            kept = []
            conflict = None
            i = 0
            n = len(ws)
            while i < n:
                c = ws[i]
                i += 1
                if c[0] == false_lit:
                    c[0], c[1] = c[1], c[0]
                first = c[0]
                fv = assign[first] if first > 0 else -assign[-first]
                if fv == 1:
                    kept.append(c)
                    continue
                for k in range(2, len(c)):
                    l = c[k]
                    if (assign[l] if l > 0 else -assign[-l]) != -1:
                        c[1], c[k] = l, c[1]
                        watches[_li(l)].append(c)
                        break
                else:
                    kept.append(c)
                    if fv == -1:
                        conflict = c
                        kept.extend(ws[i:])
                        break
                    self._enqueue(first, c)
            watches[_li(false_lit)] = kept
            if conflict is not None:
                return conflict
            for pb, _ in self._pb_occ[_li(false_lit)]:
                slack = pb.slack
                if slack < 0:
                    return [l for _, l in pb.terms if (assign[l] if l > 0 else -assign[-l]) == -1]
                if pb.max_coef > slack:
                    tail = None
                    for a, l in pb.terms:
                        if a > slack and assign[abs(l)] == 0:
                            if tail is None:
                                tail = [q for _, q in pb.terms
                                        if (assign[q] if q > 0 else -assign[-q]) == -1]
                            self._enqueue(l, [l] + tail)
        return None

    # -- constraint database ------------------------------------------

    def _attach_clause(self, lits: list[int], learnt: bool = False):
        self._watches[_li(lits[0])].append(lits)
        self._watches[_li(lits[1])].append(lits)
        (self.learnts if learnt else self.clauses).append(lits)

    def _add_clause(self, lits: Iterable[int]):
        self._cancel_until(0)
        unique = list(dict.fromkeys(lits))
        uset = set(unique)
        if any(-l in uset for l in unique):
            return
        for l in unique:
            self._grow(abs(l))
        if any(self.value(l) == 1 for l in unique):
            return
        lits = [l for l in unique if self.value(l) == 0]
        if not lits:
            self.ok = False
        elif len(lits) == 1:
            self._enqueue(lits[0], None)
            if self._propagate() is not None:
                self.ok = False
        else:
            self._attach_clause(lits)

    def _add_pb(self, terms: list[tuple[int, int]], bound: int):
        self._cancel_until(0)
        for _, l in terms:
            self._grow(abs(l))
        pb = _PB(list(terms), bound)
        pb.slack = sum(a for a, l in terms if self.value(l) != -1) - bound
        if pb.slack < 0:
            self.ok = False
            return
        for a, l in terms:
            self._pb_occ[_li(l)].append((pb, a))
        self.pbs.append(pb)
        if pb.max_coef > pb.slack:
            for a, l in terms:
                if a > pb.slack and self.value(l) == 0:
                    self._enqueue(l, None)
            if self._propagate() is not None:
                self.ok = False

    def add_clause(self, lits: Iterable[int]):
        if self.ok:
            self._add_clause(lits)

    def add_hard(self, c: PBConstraint):
        """Enforce ``c`` in every future solve.  A constraint whose bound
        exceeds its coefficient sum makes the engine permanently UNSAT."""
        if not self.ok or c.bound == 0:
            return
        for _, l in c.terms:
            self._grow(abs(l))
        if c.is_trivially_unsat:
            self.ok = False
        elif all(a >= c.bound for a, _ in c.terms):
            self._add_clause(c.lits)
        else:
            self._add_pb(list(c.terms), c.bound)

    def add_soft(self, c: PBConstraint, ident: Hashable) -> int:
        """Register ``c`` guarded by a fresh selector and return the selector.

        Assuming the selector enforces ``c``: clauses get ``~s`` appended,
        PB constraints become ``b*~s + sum(a_j l_j) >= b``.
        """
        if ident in self._idents:
            raise UsageError(f"soft identifier {ident!r} already registered")
        for _, l in c.terms:
            self._grow(abs(l))
        s = self.new_var()
        self.selectors[s] = ident
        self._idents.add(ident)
        if not self.ok or c.bound == 0:
            return s
        if c.terms and all(a >= c.bound for a, _ in c.terms):
            self._add_clause(c.lits + [-s])
        else:
            self._add_pb(list(c.terms) + [(c.bound, -s)], c.bound)
        return s

    # -- search --------------------------------------------------------

    def _bump(self, v: int):
        act = self._activity
        act[v] += self._var_inc
        if act[v] > 1e100:
            for i in range(1, self.nvars + 1):
                act[i] *= 1e-100
            self._var_inc *= 1e-100
            self._heap = [(-act[i], i) for i in range(1, self.nvars + 1) if self._assign[i] == 0]
            heapq.heapify(self._heap)
        elif self._assign[v] == 0:
            heapq.heappush(self._heap, (-act[v], v))

    def _analyze(self, confl: list[int]):
        seen, level, reason, trail = self._seen, self._level, self._reason, self._trail
        cur = len(self._trail_lim)
        learnt = [0]
        touched = []
        counter = 0
        index = len(trail) - 1
        clause, start = confl, 0
        while True:
            for q in clause[start:]:
                v = abs(q)
                if not seen[v] and level[v] > 0:
                    seen[v] = True
                    touched.append(v)
                    self._bump(v)
                    if level[v] >= cur:
                        counter += 1
                    else:
                        learnt.append(q)
            while not seen[abs(trail[index])]:
                index -= 1
            p = trail[index]
            index -= 1
            counter -= 1
            if counter <= 0:
                break
            clause, start = reason[abs(p)], 1
        learnt[0] = -p
        for v in touched:
            seen[v] = False
        if len(learnt) == 1:
            return learnt, 0
        best = max(range(1, len(learnt)), key=lambda i: level[abs(learnt[i])])
        learnt[1], learnt[best] = learnt[best], learnt[1]
        return learnt, level[abs(learnt[1])]

    def _analyze_final(self, p: int) -> list[int]:
        """Assumptions responsible for ``p`` (a falsified assumption)."""
        out = [p]
        if not self._trail_lim:
            return out
        seen, level, reason = self._seen, self._level, self._reason
        seen[abs(p)] = True
        for i in range(len(self._trail) - 1, self._trail_lim[0] - 1, -1):
            x = self._trail[i]
            v = abs(x)
            if seen[v]:
                r = reason[v]
                if r is None:
                    out.append(x)
                else:
                    for q in r[1:]:
                        if level[abs(q)] > 0:
                            seen[abs(q)] = True
                seen[v] = False
        seen[abs(p)] = False
        return out

    def _pick_branch(self) -> int:
        assign = self._assign
        if self.random_freq and self._rng.random() < self.random_freq and self.nvars:
            v = self._rng.randrange(1, self.nvars + 1)
            if assign[v] == 0:
                return v if self._phase[v] else -v
        heap, act = self._heap, self._activity
        while heap:
            a, v = heapq.heappop(heap)
            if assign[v] == 0 and -a == act[v]:
                return v if self._phase[v] else -v
        for v in range(1, self.nvars + 1):
            if assign[v] == 0:
                return v if self._phase[v] else -v
        return 0

    def _check_budget(self):
        if self.conflict_budget is not None and self.conflicts > self.conflict_budget:
            raise ResourceOut("conflict budget exhausted")
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise ResourceOut("deadline reached")

    def solve(self, assumptions: Sequence[int] = ()) -> EngineResult:
        """Search for a model of the hard constraints plus ``assumptions``.

        On failure, ``core`` lists the soft identifiers of the assumed
        selectors involved in the final conflict (empty when the hard part
        alone is unsatisfiable).
        """
        self.solves += 1
        self._check_budget()
        try:
            return self._search(list(assumptions))
        finally:
            self._cancel_until(0)

    def _unsat(self, lits=()):
        core = [self.selectors[abs(l)] for l in lits if l > 0 and abs(l) in self.selectors]
        return EngineResult(False, core=list(dict.fromkeys(core)), core_lits=list(lits))

    def _search(self, assumptions: list[int]) -> EngineResult:
        for l in assumptions:
            self._grow(abs(l))
        if not self.ok:
            return self._unsat()
        self._cancel_until(0)
        if self._propagate() is not None:
            self.ok = False
            return self._unsat()
        restarts = 0
        budget = _luby(restarts) * self.restart_base
        local_conflicts = 0
        while True:
            confl = self._propagate()
            if confl is not None:
                self.conflicts += 1
                local_conflicts += 1
                self._check_budget()
                top = max((self._level[abs(l)] for l in confl), default=0)
                if top == 0:
                    self.ok = False
                    return self._unsat()
                if top < len(self._trail_lim):
                    self._cancel_until(top)
                learnt, bt = self._analyze(confl)
                self._cancel_until(bt)
                if len(learnt) == 1:
                    self._enqueue(learnt[0], None)
                else:
                    self._attach_clause(learnt, learnt=True)
                    self._enqueue(learnt[0], learnt)
                self._var_inc /= self.var_decay
                continue
            if local_conflicts >= budget:
                restarts += 1
                local_conflicts = 0
                budget = _luby(restarts) * self.restart_base
                self._cancel_until(0)
                continue
            nxt = 0
            while len(self._trail_lim) < len(assumptions):
                p = assumptions[len(self._trail_lim)]
                val = self.value(p)
                if val == 1:
                    self._trail_lim.append(len(self._trail))
                elif val == -1:
                    return self._unsat(self._analyze_final(p))
                else:
                    nxt = p
                    break
            if nxt == 0:
                self.decisions += 1
                if self.deadline is not None and self.decisions % 512 == 0:
                    self._check_budget()
                nxt = self._pick_branch()
                if nxt == 0:
                    model = Assignment(tuple(a == 1 for a in self._assign[1:]))
                    return EngineResult(True, model=model)
            self._trail_lim.append(len(self._trail))
            self._enqueue(nxt, None)
