"""CNF encodings of AtMost1 / Equals1 and of general PB constraints.

All encoders take a :class:`~wbo.model.VarPool` for fresh auxiliary
variables and return an :class:`EncodingResult`; clauses are lists of
signed literals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .errors import EncodingBudgetError, UsageError
from .model import PBConstraint, VarPool

DEFAULT_CLAUSE_BUDGET = 10**6
SCHEMES = ("pairwise", "ladder")


@dataclass
class EncodingResult:
    clauses: list[list[int]] = field(default_factory=list)
    aux_vars: list[int] = field(default_factory=list)

    def constraints(self) -> list[PBConstraint]:
        return [PBConstraint.clause(c) for c in self.clauses]


def encode_atmost1(lits: Sequence[int], pool: VarPool, scheme: str = "ladder") -> EncodingResult:
    """At most one of ``lits`` is true.

    ``pairwise`` emits one binary clause per pair.  ``ladder`` is the
    sequential encoding: aux ``s_i`` is implied by any true literal among the
    first ``i`` and blocks every later literal (3n-4 clauses, n-1 aux vars).
    """
    lits = list(lits)
    if not lits:
        raise UsageError("AtMost1 over an empty literal list")
    if len(set(lits)) != len(lits):
        raise UsageError("AtMost1 literals must be distinct")
    if scheme not in SCHEMES:
        raise UsageError(f"unknown cardinality scheme {scheme!r}")
    res = EncodingResult()
    n = len(lits)
    if n == 1:
        return res
    if scheme == "pairwise":
        res.clauses = [[-a, -b] for a, b in combinations(lits, 2)]
        return res
    s = [pool.new() for _ in range(n - 1)]
    res.aux_vars = s
    for i in range(n - 1):
        res.clauses.append([-lits[i], s[i]])
        if i > 0:
            res.clauses.append([-s[i - 1], s[i]])
        res.clauses.append([-s[i], -lits[i + 1]])
    return res


def encode_equals1(lits: Sequence[int], pool: VarPool, scheme: str = "ladder") -> EncodingResult:
    res = encode_atmost1(lits, pool, scheme)
    res.clauses.append(list(lits))
    return res


def encode_pb(c: PBConstraint, pool: VarPool, budget: int = DEFAULT_CLAUSE_BUDGET) -> EncodingResult:
    """Weighted sequential counter for a normal-form PB constraint.

    Clauses pass through unchanged.  Otherwise ``sum(a_j l_j) >= b`` is
    rewritten as ``sum(a_j ~l_j) <= K`` with ``K = sum(a_j) - b`` (after
    saturating coefficients at ``b``) and aux ``s[i][j]`` means "the prefix
    sum over the first i+1 inputs reaches j+1".
    """
    if c.is_clause:
        return EncodingResult([c.lits], [])
    if c.is_trivially_unsat:
        return EncodingResult([[]], [])
    terms = [(min(a, c.bound), l) for a, l in c.terms]
    if all(a >= c.bound for a, _ in terms):
        return EncodingResult([[l for _, l in terms]], [])
    K = sum(a for a, _ in terms) - c.bound
    n = len(terms)
    # rough upper bound on the clause count, checked before allocating anything
    estimate = (n - 1) * K * 2 + sum(min(a, K) for a, _ in terms) + n
    if estimate > budget:
        raise EncodingBudgetError(f"sequential counter needs ~{estimate} clauses (budget {budget})")

    res = EncodingResult()
    ys = [-l for _, l in terms]
    ws = [a for a, _ in terms]
    s = [[pool.new() for _ in range(K)] for _ in range(n - 1)]
    res.aux_vars = [v for row in s for v in row]
    out = res.clauses
    for i, (w, y) in enumerate(zip(ws, ys)):
        last = i == n - 1
        if w > K:
            out.append([-y])
        elif not last:
            out.extend([-y, s[i][j]] for j in range(w))
        if i == 0:
            continue
        if not last:
            out.extend([-s[i - 1][j], s[i][j]] for j in range(K))
        if w <= K:
            if not last:
                out.extend([-s[i - 1][j], -y, s[i][j + w]] for j in range(K - w))
            out.append([-s[i - 1][K - w], -y])
    return res
