import random
import time

import pytest

from wbo.errors import UsageError
from wbo.generate import random_maxsat
from wbo.model import SoftConstraint, Status, WBOFormula, cost_of
from wbo.msu import MsuState, naive_replication, solve_msu1, solve_wmsu1
from wbo.oracle import brute_force
from wbo.samples import clause, weighted_maxsat


def soft_view(state):
    return sorted((str(state.soft[i].constraint), state.soft[i].weight) for i in state.active_indices())


def test_one_iteration_splits_heavy_clause():
    state = MsuState(weighted_maxsat(), card="pairwise")
    step = state.relax([0, 1])  # (~x3, 6) and (x1 v x2, 3)
    assert step.min_c == 3 and state.cost_lb == 3
    assert step.relax_vars == [4, 5]
    assert soft_view(state) == sorted([
        ("+1 ~x3 >= 1", 3),
        ("+1 x1 +1 x3 >= 1", 2),
        ("+1 ~x3 +1 x4 >= 1", 3),
        ("+1 x1 +1 x2 +1 x5 >= 1", 3),
    ])
    hard = sorted(map(str, state.hard))
    expected = sorted(map(str, weighted_maxsat().hard + (clause(4, 5), clause(-4, -5))))
    assert hard == expected


def test_split_keeps_weight_per_origin():
    f = weighted_maxsat()
    state = MsuState(f)
    state.relax([0, 1])
    state.relax([0, 2])
    before = {s.origin_id: s.weight for s in f.soft}
    assert state.weight_by_origin() == before


def test_relax_rejects_empty_core():
    with pytest.raises(UsageError):
        MsuState(weighted_maxsat()).relax([])


def test_small_maxsat():
    out = solve_wmsu1(weighted_maxsat())
    assert out.status is Status.OPTIMUM and out.cost == 5
    assert cost_of(weighted_maxsat(), out.model) == 5


def test_unit_weight_variant():
    f = weighted_maxsat()
    unit = WBOFormula(f.num_vars, f.hard, tuple(SoftConstraint(s.constraint, 1) for s in f.soft))
    out = solve_msu1(unit)
    # enumeration: (0,0,0) costs 2 but (0,1,1), (1,0,1), (1,1,1) cost 1
    assert out.cost == brute_force(unit).cost == 1
    assert out.stats.satisfied == 2


def test_msu1_rejects_weights():
    with pytest.raises(UsageError):
        solve_msu1(weighted_maxsat())


def test_wmsu1_rejects_pb():
    from wbo.samples import sharing_formula
    with pytest.raises(UsageError):
        solve_wmsu1(sharing_formula())


def test_large_weights_one_iteration():
    f = WBOFormula(1, (), (SoftConstraint(clause(1), 2**40), SoftConstraint(clause(-1), 2**40 + 1)))
    start = time.perf_counter()
    out = solve_wmsu1(f)
    assert time.perf_counter() - start < 0.5
    assert out.cost == 2**40 and out.stats.iterations == 1


def test_hard_infeasible():
    f = WBOFormula(1, (clause(1), clause(-1)), (SoftConstraint(clause(1), 3),))
    assert solve_wmsu1(f).status is Status.HARD_INFEASIBLE


def test_no_soft_constraints():
    out = solve_wmsu1(WBOFormula(2, (clause(1, 2),)))
    assert out.cost == 0 and out.stats.iterations == 0


def test_resource_out_reports_unknown():
    rng = random.Random(0)
    f = random_maxsat(rng)
    out = solve_wmsu1(f, timeout=-1.0)
    assert out.status is Status.RESOURCE_OUT and out.model is None


@pytest.mark.parametrize("card", ["pairwise", "ladder"])
@pytest.mark.parametrize("equals1", [True, False])
def test_matches_oracle(card, equals1):
    rng = random.Random(11)
    for _ in range(60):
        f = random_maxsat(rng)
        expect = brute_force(f)
        out = solve_wmsu1(f, card=card, equals1=equals1)
        assert out.status == expect.status
        if expect.status is Status.OPTIMUM:
            assert out.cost == expect.cost == cost_of(f, out.model)
            assert out.stats.iterations <= out.cost


def test_replication():
    f = WBOFormula(1, (), (SoftConstraint(clause(1), 3), SoftConstraint(clause(-1), 2)))
    rep = naive_replication(f)
    assert [s.weight for s in rep.soft] == [1] * 5
    assert solve_msu1(rep).cost == solve_wmsu1(f).cost == 2
    with pytest.raises(UsageError):
        naive_replication(f, budget=4)


def test_dense_instances_match_oracle():
    from wbo.generate import random_clause
    rng = random.Random(99)
    iterations = []
    for _ in range(30):
        n = 10
        hard = tuple(random_clause(rng, n) for _ in range(rng.randint(0, 8)))
        soft = tuple(SoftConstraint(random_clause(rng, n), rng.randint(1, 9)) for _ in range(60))
        f = WBOFormula(n, hard, soft)
        expect = brute_force(f)
        out = solve_wmsu1(f, seed=rng.randint(0, 100))
        assert (out.status, out.cost) == (expect.status, expect.cost)
        iterations.append(out.stats.iterations)
    assert max(iterations) >= 5
