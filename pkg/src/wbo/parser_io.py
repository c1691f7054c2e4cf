"""Readers and writers for WCNF, OPB, the WBO-OPB dialect, and
competition-style solution output.

WBO-OPB is OPB with two additions (see README):

* a ``soft: <top> ;`` line (``soft: ;`` for no top) declaring the file as
  WBO, which must precede every soft constraint;
* soft constraints prefixed by ``[<weight>]``, with ``1 <= weight < top``.

Unprefixed constraints are hard.  Negation is written ``~x3`` or ``-x3``.
"""

from __future__ import annotations

import re
from typing import TextIO

from .errors import ParseError, UsageError
from .model import (
    MAX_WEIGHT,
    Assignment,
    PBConstraint,
    PBOInstance,
    SoftConstraint,
    SolveOutcome,
    Status,
    WBOFormula,
    normalize,
    normalize_objective,
    var_of,
)

WCNF, OPB, WBO = "WCNF", "OPB", "WBO-OPB"

_TOKEN = re.compile(r">=|<=|=|;|\[[^\]]*\]|[~-]?x\d+|[+-]?\d+|min:|soft:|\S+")
_LIT = re.compile(r"([~-]?)x(\d+)$")
_INT = re.compile(r"[+-]?\d+$")
_NVARS = re.compile(r"#variable=\s*(\d+)")


def detect_format(text: str) -> str:
    for line in text.splitlines():
        s = line.strip()
        if s.startswith("p "):
            return WCNF
        if s.startswith("soft:"):
            return WBO
    return OPB


def _int(tok: str, lineno: int, what: str) -> int:
    if not _INT.match(tok):
        raise ParseError(f"expected {what}, got {tok!r}", lineno)
    value = int(tok)
    if abs(value) > MAX_WEIGHT:
        raise OverflowError(f"line {lineno}: {what} {value} exceeds 2^63-1")
    return value


def parse_wcnf(text: str) -> WBOFormula:
    """Parse ``p wcnf`` (optionally with top) or plain ``p cnf`` input.

    Clauses whose weight reaches the top are hard; without a top every
    clause is soft.  ``p cnf`` gives unit-weight soft clauses.
    """
    nvars = None
    weighted = True
    top = None
    hard, soft = [], []
    soft_total = 0
    for lineno, line in enumerate(text.splitlines(), 1):
        toks = line.split()
        if not toks or toks[0] == "c":
            continue
        if toks[0] == "p":
            if nvars is not None:
                raise ParseError("duplicate header", lineno)
            if len(toks) < 4 or toks[1] not in ("wcnf", "cnf"):
                raise ParseError(f"malformed header {line.strip()!r}", lineno)
            weighted = toks[1] == "wcnf"
            nvars = _int(toks[2], lineno, "variable count")
            _int(toks[3], lineno, "clause count")
            if weighted and len(toks) >= 5:
                top = _int(toks[4], lineno, "top weight")
            if len(toks) > (5 if weighted else 4):
                raise ParseError("trailing tokens in header", lineno)
            continue
        if nvars is None:
            raise ParseError("clause before header", lineno)
        nums = [_int(t, lineno, "integer") for t in toks]
        if nums[-1] != 0:
            raise ParseError("clause must end with 0", lineno)
        if weighted:
            if len(nums) < 2:
                raise ParseError("missing weight", lineno)
            weight, lits = nums[0], nums[1:-1]
            if weight <= 0:
                raise ParseError(f"weight must be positive, got {weight}", lineno)
        else:
            weight, lits = 1, nums[:-1]
        if 0 in lits:
            raise ParseError("literal 0 inside clause", lineno)
        if any(var_of(l) > nvars for l in lits):
            raise ParseError(f"variable exceeds declared count {nvars}", lineno)
        if any(-l in lits for l in lits):
            continue  # tautology
        clause = PBConstraint.clause(lits)
        if top is not None and weight >= top:
            hard.append(clause)
        else:
            soft_total += weight
            if soft_total > MAX_WEIGHT:
                raise OverflowError(f"line {lineno}: total soft weight exceeds 2^63-1")
            soft.append(SoftConstraint(clause, weight, len(soft)))
    if nvars is None:
        raise ParseError("missing 'p wcnf' header", 1)
    return WBOFormula(nvars, tuple(hard), tuple(soft))


def _statements(text: str):
    """Yield ``(lineno, tokens)`` per ``;``-terminated statement."""
    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s or s.startswith("*"):
            continue
        toks = _TOKEN.findall(s)
        while toks:
            if ";" in toks:
                k = toks.index(";")
                stmt, toks = toks[:k], toks[k + 1:]
            else:
                stmt, toks = toks, []
            if stmt:
                yield lineno, stmt


def _terms(toks, lineno):
    terms = []
    coef = None
    sign = 1  # a detached "+" or "-" before the next term
    prev = None
    for t in toks:
        m = _LIT.match(t)
        if m and prev is not None and _LIT.match(prev):
            raise ParseError(f"product term {prev} {t} is not linear", lineno)
        prev = t
        if t in ("+", "-"):
            if coef is not None:
                raise ParseError(f"coefficient {coef} has no literal", lineno)
            sign = -sign if t == "-" else sign
        elif m:
            v = int(m.group(2))
            if v == 0:
                raise ParseError("variable x0 is not allowed", lineno)
            terms.append((sign * (1 if coef is None else coef), -v if m.group(1) else v))
            coef, sign = None, 1
        elif _INT.match(t):
            if coef is not None:
                raise ParseError(f"coefficient {coef} has no literal", lineno)
            coef = _int(t, lineno, "coefficient")
        else:
            raise ParseError(f"unexpected token {t!r}", lineno)
    if coef is not None:
        raise ParseError(f"coefficient {coef} has no literal", lineno)
    return terms


def _constraint(toks, lineno):
    rel = [i for i, t in enumerate(toks) if t in (">=", "<=", "=")]
    if len(rel) != 1 or rel[0] != len(toks) - 2:
        raise ParseError("constraint must read '<terms> <relation> <integer>'", lineno)
    terms = _terms(toks[: rel[0]], lineno)
    rhs = _int(toks[-1], lineno, "right-hand side")
    return terms, toks[rel[0]], rhs


def _max_var(text, terms_seen):
    m = _NVARS.search(text)
    declared = int(m.group(1)) if m else 0
    return max([declared] + [var_of(l) for _, l in terms_seen])


def _checked_normalize(terms, rel, rhs, lineno):
    try:
        return normalize(terms, rel, rhs)
    except OverflowError as exc:
        raise OverflowError(f"line {lineno}: {exc}") from None


def parse_opb(text: str) -> PBOInstance:
    """Parse OPB: an optional ``min:`` objective and linear constraints."""
    objective = None
    constraints = []
    seen_terms = []
    for lineno, toks in _statements(text):
        if toks[0] == "min:":
            if objective is not None:
                raise ParseError("second objective", lineno)
            objective = _terms(toks[1:], lineno)
            seen_terms += objective
            continue
        if toks[0] == "soft:" or toks[0].startswith("["):
            raise ParseError("WBO syntax in an OPB file", lineno)
        terms, rel, rhs = _constraint(toks, lineno)
        seen_terms += terms
        constraints += _checked_normalize(terms, rel, rhs, lineno)
    obj, offset = normalize_objective(objective or [])
    return PBOInstance(_max_var(text, seen_terms), obj, tuple(constraints), offset)


def parse_wbo(text: str) -> WBOFormula:
    """Parse the WBO-OPB dialect into hard and weighted soft PB constraints."""
    top = None
    header_seen = False
    hard, soft = [], []
    seen_terms = []
    soft_total = 0
    for lineno, toks in _statements(text):
        if toks[0] == "soft:":
            if header_seen:
                raise ParseError("duplicate 'soft:' line", lineno)
            if hard or soft:
                raise ParseError("'soft:' must precede all constraints", lineno)
            header_seen = True
            if len(toks) > 2:
                raise ParseError("'soft:' takes at most one integer", lineno)
            if len(toks) == 2:
                top = _int(toks[1], lineno, "top weight")
            continue
        if toks[0] == "min:":
            raise ParseError("objective not allowed in WBO input", lineno)
        weight = None
        if toks[0].startswith("["):
            if not header_seen:
                raise ParseError("soft constraint before 'soft:' line", lineno)
            weight = _int(toks[0][1:-1].strip(), lineno, "weight")
            if weight <= 0:
                raise ParseError(f"weight must be positive, got {weight}", lineno)
            if top is not None and weight >= top:
                raise ParseError(f"soft weight {weight} is not below top {top}", lineno)
            toks = toks[1:]
        terms, rel, rhs = _constraint(toks, lineno)
        seen_terms += terms
        cs = _checked_normalize(terms, rel, rhs, lineno)
        if weight is None:
            hard += cs
        else:
            soft_total += weight
            if soft_total > MAX_WEIGHT:
                raise OverflowError(f"line {lineno}: total soft weight exceeds 2^63-1")
            origin = lineno
            soft += [SoftConstraint(c, weight, origin) for c in cs]
    return WBOFormula(_max_var(text, seen_terms), tuple(hard), tuple(soft))


def parse_any(text: str):
    """``(format, instance)`` where instance is a WBOFormula or PBOInstance."""
    fmt = detect_format(text)
    parser = {WCNF: parse_wcnf, OPB: parse_opb, WBO: parse_wbo}[fmt]
    return fmt, parser(text)


def _opb_terms(terms) -> str:
    return " ".join(f"+{a} {'~' if l < 0 else ''}x{var_of(l)}" for a, l in terms)


def write_wcnf(f: WBOFormula) -> str:
    if not f.is_clausal:
        raise UsageError("WCNF can only hold clauses")
    top = f.total_soft_weight + 1
    lines = [f"p wcnf {f.num_vars} {len(f.hard) + len(f.soft)} {top}"]
    lines += [" ".join(map(str, [top] + c.lits + [0])) for c in f.hard]
    lines += [" ".join(map(str, [s.weight] + s.constraint.lits + [0])) for s in f.soft]
    return "\n".join(lines) + "\n"


def write_opb(p: PBOInstance) -> str:
    lines = [f"* #variable= {p.num_vars} #constraint= {len(p.constraints)}"]
    if p.offset:
        lines.append(f"* objective offset {p.offset} not representable in OPB")
    if p.objective:
        lines.append(f"min: {_opb_terms(p.objective)} ;")
    lines += [f"{_opb_terms(c.terms)} >= {c.bound} ;" for c in p.constraints]
    return "\n".join(lines) + "\n"


def write_wbo(f: WBOFormula) -> str:
    top = f.total_soft_weight + 1
    lines = [f"* #variable= {f.num_vars} #constraint= {len(f.hard) + len(f.soft)}", f"soft: {top} ;"]
    lines += [f"[{s.weight}] {_opb_terms(s.constraint.terms)} >= {s.constraint.bound} ;" for s in f.soft]
    lines += [f"{_opb_terms(c.terms)} >= {c.bound} ;" for c in f.hard]
    return "\n".join(lines) + "\n"


def write_solution(outcome: SolveOutcome, stream: TextIO, offset: int = 0):
    """Competition-style output: ``o`` lines, the ``s`` line, then ``v``."""
    improvements = list(outcome.stats.improvements)
    if outcome.status is Status.OPTIMUM and not improvements:
        improvements = [outcome.cost]
    for cost in improvements:
        stream.write(f"o {cost + offset}\n")
    stream.write(f"s {outcome.status.value}\n")
    if outcome.model is not None:
        stream.write("v " + " ".join(map(str, outcome.model.lits())) + "\n")


def read_model(text: str, num_vars: int) -> Assignment:
    """Assignment from ``v`` lines; unmentioned variables default to false."""
    lits = []
    for lineno, line in enumerate(text.splitlines(), 1):
        toks = line.split()
        if not toks or toks[0] != "v":
            continue
        for t in toks[1:]:
            lit = _int(t, lineno, "literal")
            if lit == 0:
                continue
            if var_of(lit) > num_vars:
                raise ParseError(f"literal {lit} outside 1..{num_vars}", lineno)
            lits.append(lit)
    return Assignment.from_lits(lits, num_vars)
