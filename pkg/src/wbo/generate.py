"""Random desk-scale instances for testing and demos."""

from __future__ import annotations

import random

from .model import PBConstraint, SoftConstraint, WBOFormula, normalize


def random_clause(rng: random.Random, num_vars: int, max_len: int = 3) -> PBConstraint:
    k = rng.randint(1, min(max_len, num_vars))
    vs = rng.sample(range(1, num_vars + 1), k)
    return PBConstraint.clause(v if rng.random() < 0.5 else -v for v in vs)


def random_maxsat(rng: random.Random, max_vars: int = 10, max_clauses: int = 25,
                  max_weight: int = 50, hard_ratio: float = 0.3) -> WBOFormula:
    """Weighted partial MaxSAT instance with clauses of length 1..3."""
    n = rng.randint(2, max_vars)
    m = rng.randint(1, max_clauses)
    hard, soft = [], []
    for _ in range(m):
        c = random_clause(rng, n)
        if rng.random() < hard_ratio:
            hard.append(c)
        else:
            soft.append(SoftConstraint(c, rng.randint(1, max_weight)))
    return WBOFormula(n, tuple(hard), tuple(soft))


def random_pb_constraint(rng: random.Random, num_vars: int, max_coef: int = 10,
                         max_len: int | None = None) -> PBConstraint | None:
    """Random normal-form constraint, or None when it normalizes away."""
    k = rng.randint(1, min(max_len or num_vars, num_vars))
    vs = rng.sample(range(1, num_vars + 1), k)
    terms = [(rng.randint(1, max_coef) * rng.choice((1, -1)), v if rng.random() < 0.5 else -v) for v in vs]
    total = sum(abs(a) for a, _ in terms)
    relation = rng.choice((">=", "<="))
    rhs = rng.randint(-total // 2, total)
    out = normalize(terms, relation, rhs)
    return out[0] if out else None


def random_wbo(rng: random.Random, max_vars: int = 8, max_constraints: int = 12,
               max_coef: int = 10, max_weight: int = 50, hard_ratio: float = 0.3) -> WBOFormula:
    """WBO instance mixing clauses and general PB constraints."""
    n = rng.randint(2, max_vars)
    m = rng.randint(1, max_constraints)
    hard, soft = [], []
    while len(hard) + len(soft) < m:
        if rng.random() < 0.3:
            c = random_clause(rng, n)
        else:
            c = random_pb_constraint(rng, n, max_coef, max_len=4)
        if c is None:
            continue
        if rng.random() < hard_ratio:
            hard.append(c)
        else:
            soft.append(SoftConstraint(c, rng.randint(1, max_weight)))
    return WBOFormula(n, tuple(hard), tuple(soft))
