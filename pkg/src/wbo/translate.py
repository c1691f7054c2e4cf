"""Translations between weighted partial MaxSAT, PBO and WBO."""

from __future__ import annotations

from .encodings import DEFAULT_CLAUSE_BUDGET, encode_pb
from .errors import UsageError
from .model import PBConstraint, PBOInstance, SoftConstraint, VarPool, WBOFormula


def maxsat_to_pbo(f: WBOFormula) -> PBOInstance:
    """Each soft clause ``w_i`` of weight ``c_i`` becomes ``s_i + w_i >= 1``
    with a fresh selection variable; the objective is ``sum(c_i * s_i)``.

    Selection variables are numbered after the original ones in soft order.
    """
    if not f.is_clausal:
        raise UsageError("maxsat_to_pbo needs a clause-only formula")
    return wbo_to_pbo(f)


def wbo_to_pbo(f: WBOFormula) -> PBOInstance:
    """Same construction for PB soft constraints: ``C >= b`` of weight ``c``
    becomes the hard ``b*s + C >= b`` and contributes ``c * s``."""
    pool = VarPool(f.num_vars)
    objective, constraints = [], list(f.hard)
    for s in f.soft:
        sel = pool.new()
        c = s.constraint
        constraints.append(PBConstraint(c.terms + ((c.bound, sel),), c.bound))
        objective.append((s.weight, sel))
    return PBOInstance(pool.top, tuple(objective), tuple(constraints))


def _objective_softs(p: PBOInstance) -> tuple[SoftConstraint, ...]:
    # c * l costs c exactly when the unit clause (~l) is falsified
    return tuple(SoftConstraint(PBConstraint.clause([-l]), c) for c, l in p.objective)


def pbo_to_maxsat(p: PBOInstance, budget: int = DEFAULT_CLAUSE_BUDGET) -> WBOFormula:
    """Clause-only formula whose optimum cost plus ``p.offset`` is the PBO optimum.

    Constraints are CNF-encoded (clauses pass through); each objective term
    ``c * l`` becomes the soft unit ``(~l, c)``.
    """
    pool = VarPool(p.num_vars)
    hard = []
    for c in p.constraints:
        for cl in encode_pb(c, pool, budget).clauses:
            hard.append(PBConstraint.clause(cl) if cl else PBConstraint((), 1))
    return WBOFormula(pool.top, tuple(hard), _objective_softs(p))


def pbo_to_wbo(p: PBOInstance) -> WBOFormula:
    """Constraints stay hard PB constraints; objective terms become soft units."""
    return WBOFormula(p.num_vars, p.constraints, _objective_softs(p))
