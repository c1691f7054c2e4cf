"""Core domain types: literals, normal-form pseudo-Boolean constraints,
weighted formulas, assignments and solver outcomes.

Literals are DIMACS-style signed integers: ``3`` is x3, ``-3`` is its
negation.  A :class:`PBConstraint` is always kept in normal form
``sum(a_j * l_j) >= b`` with strictly positive coefficients and at most one
term per variable; clauses are the special case where every coefficient and
the bound equal 1.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import HardViolation, UsageError

MAX_WEIGHT = 2**63 - 1


def check_magnitude(value: int, what: str = "value") -> int:
    if abs(value) > MAX_WEIGHT:
        raise OverflowError(f"{what} {value} exceeds 2^63-1")
    return value


def var_of(lit: int) -> int:
    return lit if lit > 0 else -lit


@dataclass(frozen=True)
class PBConstraint:
    """Normal-form constraint ``sum(coef * lit) >= bound``.

    ``terms`` is a tuple of ``(coefficient, literal)`` pairs; it is stored
    sorted by variable index so that structurally equal constraints compare
    equal.
    """

    terms: tuple[tuple[int, int], ...]
    bound: int

    def __post_init__(self):
        terms = tuple(sorted(((int(a), int(l)) for a, l in self.terms), key=lambda t: var_of(t[1])))
        seen = set()
        for a, l in terms:
            if a <= 0:
                raise UsageError(f"non-positive coefficient {a} in normal-form constraint")
            if l == 0:
                raise UsageError("literal 0 is not a valid literal")
            if var_of(l) in seen:
                raise UsageError(f"variable {var_of(l)} occurs twice in one constraint")
            seen.add(var_of(l))
        if self.bound < 0:
            raise UsageError("normal-form bound must be non-negative")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def clause(cls, lits: Iterable[int]) -> "PBConstraint":
        """Clause over ``lits`` (duplicates removed).  Tautologies are rejected."""
        unique = set(lits)
        if any(-l in unique for l in unique):
            raise UsageError("tautological clause has no normal form")
        return cls(tuple((1, l) for l in unique), 1)

    @property
    def is_clause(self) -> bool:
        return self.bound == 1 and all(a == 1 for a, _ in self.terms)

    @property
    def lits(self) -> list[int]:
        return [l for _, l in self.terms]

    @property
    def coef_sum(self) -> int:
        return sum(a for a, _ in self.terms)

    @property
    def is_trivially_unsat(self) -> bool:
        return self.bound > self.coef_sum

    @property
    def max_var(self) -> int:
        return max((var_of(l) for _, l in self.terms), default=0)

    def coef(self, lit: int) -> int:
        """Coefficient of ``lit`` in the constraint (0 if absent)."""
        for a, l in self.terms:
            if l == lit:
                return a
        return 0

    def __str__(self):
        body = " ".join(f"+{a} {'~' if l < 0 else ''}x{var_of(l)}" for a, l in self.terms)
        return f"{body} >= {self.bound}".strip()


def normalize(terms: Iterable[tuple[int, int]], relation: str, rhs: int) -> list[PBConstraint]:
    """Bring ``sum(coef * lit) <relation> rhs`` into normal form.

    ``terms`` may carry negative coefficients, negated literals and repeated
    variables.  Returns one constraint for ``>=``/``<=``, two for ``=``.
    Constraints whose normalized bound is <= 0 are trivially satisfied and
    omitted.
    """
    if relation not in (">=", "<=", "="):
        raise UsageError(f"unknown relation {relation!r}")
    check_magnitude(rhs, "bound")
    # coefficient on the positive literal of each variable, plus a constant
    net: dict[int, int] = {}
    const = 0
    for a, lit in terms:
        check_magnitude(a, "coefficient")
        if lit == 0:
            raise UsageError("literal 0 is not a valid literal")
        v = var_of(lit)
        if lit > 0:
            net[v] = net.get(v, 0) + a
        else:
            # a * ~x == a - a * x
            net[v] = net.get(v, 0) - a
            const += a
    relations = {">=": [1], "<=": [-1], "=": [1, -1]}[relation]
    out = []
    for sign in relations:
        bound = sign * (rhs - const)
        new_terms = []
        for v, a in net.items():
            a *= sign
            if a > 0:
                new_terms.append((a, v))
            elif a < 0:
                # -a * x == a * ~x - a
                new_terms.append((-a, -v))
                bound += -a
        check_magnitude(bound, "bound")
        check_magnitude(sum(a for a, _ in new_terms), "coefficient sum")
        if bound <= 0:
            continue
        out.append(PBConstraint(tuple(new_terms), bound))
    return out


@dataclass(frozen=True)
class Assignment:
    """Total assignment; ``values[v - 1]`` is the value of variable ``v``."""

    values: tuple[bool, ...]

    @classmethod
    def from_lits(cls, lits: Iterable[int], num_vars: int) -> "Assignment":
        values = [False] * num_vars
        for l in lits:
            if var_of(l) > num_vars:
                raise UsageError(f"literal {l} outside 1..{num_vars}")
            values[var_of(l) - 1] = l > 0
        return cls(tuple(values))

    @property
    def num_vars(self) -> int:
        return len(self.values)

    def __getitem__(self, lit: int) -> bool:
        val = self.values[var_of(lit) - 1]
        return val if lit > 0 else not val

    def lits(self) -> list[int]:
        return [v + 1 if x else -(v + 1) for v, x in enumerate(self.values)]

    def restrict(self, num_vars: int) -> "Assignment":
        return Assignment(self.values[:num_vars])


def evaluate(c: PBConstraint, a: Assignment) -> bool:
    return sum(coef for coef, l in c.terms if a[l]) >= c.bound


@dataclass(frozen=True)
class SoftConstraint:
    constraint: PBConstraint
    weight: int
    origin_id: object = None

    def __post_init__(self):
        if self.weight < 1:
            raise UsageError(f"soft weight must be >= 1, got {self.weight}")
        check_magnitude(self.weight, "weight")


@dataclass(frozen=True)
class WBOFormula:
    """Hard constraints plus weighted soft constraints over ``1..num_vars``.

    Soft constraints without an ``origin_id`` are assigned their position in
    ``soft``.
    """

    num_vars: int
    hard: tuple[PBConstraint, ...] = ()
    soft: tuple[SoftConstraint, ...] = ()

    def __post_init__(self):
        hard = tuple(self.hard)
        soft = tuple(
            s if s.origin_id is not None else SoftConstraint(s.constraint, s.weight, i)
            for i, s in enumerate(self.soft)
        )
        top = max([c.max_var for c in hard] + [s.constraint.max_var for s in soft], default=0)
        if top > self.num_vars:
            raise UsageError(f"constraint mentions x{top} but num_vars={self.num_vars}")
        check_magnitude(sum(s.weight for s in soft), "total soft weight")
        object.__setattr__(self, "hard", hard)
        object.__setattr__(self, "soft", soft)

    @property
    def total_soft_weight(self) -> int:
        return sum(s.weight for s in self.soft)

    @property
    def is_clausal(self) -> bool:
        return all(c.is_clause for c in self.hard) and all(s.constraint.is_clause for s in self.soft)

    def with_soft(self, extra: Sequence[SoftConstraint]) -> "WBOFormula":
        return WBOFormula(self.num_vars, self.hard, self.soft + tuple(extra))


def cost_of(f: WBOFormula, a: Assignment) -> int:
    """Total weight of soft constraints falsified by ``a``.

    Raises :class:`HardViolation` naming the first falsified hard constraint.
    """
    for i, c in enumerate(f.hard):
        if not evaluate(c, a):
            raise HardViolation(i, c)
    return sum(s.weight for s in f.soft if not evaluate(s.constraint, a))


class VarPool:
    """Allocator of fresh variable indices above ``top``."""

    def __init__(self, top: int = 0):
        self.top = top

    def new(self) -> int:
        self.top += 1
        return self.top


class Status(enum.Enum):
    OPTIMUM = "OPTIMUM FOUND"
    HARD_INFEASIBLE = "UNSATISFIABLE"
    RESOURCE_OUT = "UNKNOWN"


@dataclass
class SolveStats:
    iterations: int = 0          # UNSAT iterations (cores relaxed)
    sat_calls: int = 0
    core_sizes: list[int] = field(default_factory=list)
    relax_vars: int = 0
    improvements: list[int] = field(default_factory=list)
    satisfied: int | None = None  # number of satisfied soft constraints, plain MaxSAT only


@dataclass
class SolveOutcome:
    status: Status
    cost: int | None = None
    model: Assignment | None = None
    stats: SolveStats = field(default_factory=SolveStats)


def normalize_objective(terms: Iterable[tuple[int, int]]) -> tuple[tuple[tuple[int, int], ...], int]:
    """Rewrite ``sum(c * lit)`` with positive coefficients only.

    Returns ``(terms, offset)`` such that the original objective equals
    ``offset + sum(terms)`` under every assignment.
    """
    net: dict[int, int] = {}
    offset = 0
    for c, lit in terms:
        check_magnitude(c, "objective coefficient")
        v = var_of(lit)
        if lit > 0:
            net[v] = net.get(v, 0) + c
        else:
            net[v] = net.get(v, 0) - c
            offset += c
    out = []
    for v, c in net.items():
        if c > 0:
            out.append((c, v))
        elif c < 0:
            out.append((-c, -v))
            offset += c
    return tuple(out), offset


@dataclass(frozen=True)
class PBOInstance:
    """``minimize offset + sum(c * lit)`` subject to normal-form constraints."""

    num_vars: int
    objective: tuple[tuple[int, int], ...] = ()
    constraints: tuple[PBConstraint, ...] = ()
    offset: int = 0

    def value(self, a: Assignment) -> int:
        return self.offset + sum(c for c, l in self.objective if a[l])
