"""Small hand-checkable instances used by the tests and demo scripts."""

from __future__ import annotations

from .model import PBConstraint, PBOInstance, SoftConstraint, WBOFormula, normalize


def clause(*lits: int) -> PBConstraint:
    return PBConstraint.clause(lits)


def pb(terms, relation: str, rhs: int) -> PBConstraint:
    (c,) = normalize(terms, relation, rhs)
    return c


def weighted_maxsat() -> WBOFormula:
    """Three hard clauses, soft ``(~x3, 6), (x1 v x2, 3), (x1 v x3, 2)``.
    Optimum cost 5 at x = (0, 0, 0)."""
    hard = (clause(1, 2, -3), clause(-2, 3), clause(-1, 3))
    soft = (SoftConstraint(clause(-3), 6), SoftConstraint(clause(1, 2), 3), SoftConstraint(clause(1, 3), 2))
    return WBOFormula(3, hard, soft)


def pbo() -> PBOInstance:
    """minimize 4x1 + 2x2 + x3 subject to 2x1+3x2+5x3 >= 5, ~x1+~x2 >= 1,
    x1+x2+x3 >= 2.  Optimum 3 at x = (0, 1, 1)."""
    constraints = (
        pb([(2, 1), (3, 2), (5, 3)], ">=", 5),
        clause(-1, -2),
        pb([(1, 1), (1, 2), (1, 3)], ">=", 2),
    )
    return PBOInstance(3, ((4, 1), (2, 2), (1, 3)), constraints)


def sharing_core() -> list[PBConstraint]:
    """Four mutually inconsistent PB constraints where the pairs (0, 2) and
    (1, 3) can each share a relaxation variable."""
    return [
        pb([(2, 1), (3, 2), (5, 3)], ">=", 5),
        clause(-1, -2),
        clause(2, -3),
        clause(1, -3),
    ]


def sharing_formula(weight: int = 1) -> WBOFormula:
    return WBOFormula(3, (), tuple(SoftConstraint(c, weight) for c in sharing_core()))
