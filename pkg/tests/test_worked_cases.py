"""Small hand-checkable cases across modules."""

from wbo.encodings import encode_atmost1, encode_equals1, encode_pb
from wbo.engine import Engine, propagate_pb
from wbo.model import Assignment, PBConstraint, PBOInstance, SoftConstraint, Status, VarPool, WBOFormula, evaluate
from wbo.msu import naive_replication, solve_msu1, solve_wmsu1
from wbo.oracle import brute_force, projected_models
from wbo.samples import clause, pb, pbo, sharing_core, weighted_maxsat
from wbo.translate import maxsat_to_pbo, pbo_to_maxsat, pbo_to_wbo
from wbo.wbo_core import build_sharing, relax_pb, solve_linear_search, solve_wbo


def cnf(clauses):
    return [PBConstraint.clause(c) for c in clauses]


# engine

def test_contradictory_hard_units():
    e = Engine(VarPool(1))
    e.add_hard(clause(1))
    e.add_hard(clause(-1))
    assert not e.solve().sat


def test_hard_part_of_small_maxsat_is_satisfiable():
    e = Engine(VarPool(3))
    for c in weighted_maxsat().hard:
        e.add_hard(c)
    assert e.solve().sat


def test_bound_above_coefficient_sum_is_permanently_unsat():
    e = Engine(VarPool(3))
    e.add_hard(PBConstraint(((2, 1), (3, 2), (5, 3)), 11))
    assert not e.solve().sat and not e.solve().sat


def test_soft_against_hard_core():
    e = Engine(VarPool(3))
    e.add_hard(clause(3))
    s = e.add_soft(clause(-3), "A")
    r = e.solve([s])
    assert not r.sat and r.core == ["A"]


def test_sharing_core_is_unsat_with_nontrivial_core():
    e = Engine(VarPool(3))
    sels = [e.add_soft(c, i) for i, c in enumerate(sharing_core())]
    r = e.solve(sels)
    assert not r.sat and set(r.core) <= {0, 1, 2, 3} and len(r.core) >= 2


def test_empty_engine_is_sat():
    assert Engine().solve().sat


def test_tight_bound_fixes_all():
    e = Engine(VarPool(2))
    e.add_hard(pb([(1, 1), (1, 2)], ">=", 2))
    for _ in range(3):
        m = e.solve().model
        assert m[1] and m[2]


def test_decision_x3_false_forces_x1_x2():
    e = Engine(VarPool(3))
    e.add_hard(pb([(2, 1), (3, 2), (5, 3)], ">=", 5))
    m = e.solve([-3]).model
    assert m[1] and m[2] and not m[3]


def test_propagate_unit_clause_case():
    res = propagate_pb(clause(1, 2), {1: False})
    assert res.implied == [(2, [1])]


def test_propagate_conflict_case():
    assert propagate_pb(pb([(2, 1), (3, 2)], ">=", 5), {1: False}).conflict == [1]


# encodings

def test_pairwise_three():
    res = encode_atmost1([1, 2, 3], VarPool(3), "pairwise")
    assert sorted(map(sorted, res.clauses)) == [[-3, -2], [-3, -1], [-2, -1]]
    for scheme in ("pairwise", "ladder"):
        res = encode_atmost1([1, 2, 3], VarPool(3), scheme)
        assert len(projected_models(cnf(res.clauses), [1, 2, 3])) == 4


def test_equals1_small():
    res = encode_equals1([1, 2, 3], VarPool(3), "pairwise")
    assert len(res.clauses) == 4
    assert len(projected_models(cnf(res.clauses), [1, 2, 3])) == 3
    assert encode_equals1([7], VarPool(7)).clauses == [[7]]
    assert encode_atmost1([7], VarPool(7)).clauses == []


def test_equals1_eight_ladder():
    res = encode_equals1(list(range(1, 9)), VarPool(8), "ladder")
    assert len(projected_models(cnf(res.clauses), list(range(1, 9)))) == 8


def test_pb_clause_passthrough_counts():
    res = encode_pb(clause(-1, -2), VarPool(2))
    assert len(res.clauses) == 1 and not res.aux_vars


# core-guided MaxSAT

def test_two_contradictory_units():
    f = WBOFormula(1, (), (SoftConstraint(clause(1), 1), SoftConstraint(clause(-1), 1)))
    assert solve_msu1(f).cost == 1


def test_all_satisfiable_takes_one_call():
    f = WBOFormula(2, (), (SoftConstraint(clause(1), 1), SoftConstraint(clause(2), 1)))
    out = solve_msu1(f)
    assert out.cost == 0 and out.stats.sat_calls == 1


def test_replication_copies():
    f = WBOFormula(3, (), (SoftConstraint(clause(-3), 6), SoftConstraint(clause(1), 1)))
    rep = naive_replication(f)
    assert [str(s.constraint) for s in rep.soft] == ["+1 ~x3 >= 1"] * 6 + ["+1 x1 >= 1"]


def test_replicated_small_maxsat():
    assert solve_msu1(naive_replication(weighted_maxsat())).cost == 5 == solve_wmsu1(weighted_maxsat()).cost


def test_small_maxsat_model():
    assert solve_wmsu1(weighted_maxsat()).model == Assignment((False, False, False))


# WBO

def test_relax_clause_is_clause_plus_literal():
    r = relax_pb(clause(1, -2), 5)
    assert r.is_clause and r.lits == [1, -2, 5]


def test_relaxed_constraint_satisfied_when_relaxed():
    r = relax_pb(pb([(2, 1), (3, 2), (5, 3)], ">=", 5), 4)
    for bits in range(8):
        a = Assignment(tuple(bool(bits >> k & 1) for k in range(3)) + (True,))
        assert evaluate(r, a)


def test_sharing_trivial_cores():
    g = build_sharing([clause(1), clause(2)])
    assert g.edges == [] and g.assign_vars(VarPool(2)) == [3, 4]
    g = build_sharing([clause(1), clause(-1)])
    assert g.edges == [(0, 1)] and g.assign_vars(VarPool(1)) == [2, 2]


def test_selector_objective_as_soft_units():
    p = maxsat_to_pbo(weighted_maxsat())
    f = WBOFormula(p.num_vars, p.constraints, tuple(SoftConstraint(clause(-l), c) for c, l in p.objective))
    for mode in ("native", "cnf"):
        assert solve_wbo(f, mode).cost == 5
    assert brute_force(f).cost == 5


def test_contradictory_hard_is_infeasible():
    f = WBOFormula(1, (clause(1), clause(-1)), (SoftConstraint(clause(1), 2),))
    for out in (solve_wbo(f), solve_wbo(f, "cnf"), solve_linear_search(f)):
        assert out.status is Status.HARD_INFEASIBLE


def test_linear_search_cases():
    assert solve_linear_search(weighted_maxsat()).cost == 5
    assert solve_linear_search(pbo_to_wbo(pbo())).cost == 3
    f = WBOFormula(2, (), (SoftConstraint(clause(1), 4),))
    out = solve_linear_search(f)
    assert out.cost == 0 and out.stats.sat_calls == 2


# translations

def test_no_soft_gives_empty_objective():
    p = maxsat_to_pbo(WBOFormula(2, (clause(1, 2),)))
    assert p.objective == () and len(p.constraints) == 1


def test_oracle_agrees_through_selector_translation():
    from wbo.oracle import brute_force_pbo
    p = maxsat_to_pbo(weighted_maxsat())
    assert brute_force_pbo(p.objective, p.constraints, p.num_vars)[0] == 5


def test_constant_objective():
    p = PBOInstance(2, (), (clause(1, 2),))
    f = pbo_to_maxsat(p)
    assert not f.soft and brute_force(f).cost == 0
    g = pbo_to_wbo(p)
    assert not g.soft and solve_wbo(g).cost == 0


def test_cross_engine_on_small_pbo():
    p = pbo()
    g = pbo_to_wbo(p)
    assert len(g.hard) == 3 and len(g.soft) == 3
    assert solve_wbo(g).cost == solve_wmsu1(pbo_to_maxsat(p)).cost == 3


# oracle

def test_projected_models_without_constraints():
    assert len(projected_models([], [1, 2, 3])) == 8
