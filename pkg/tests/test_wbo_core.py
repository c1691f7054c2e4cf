import random
from itertools import combinations

from hypothesis import given, settings
from hypothesis import strategies as st

from wbo.errors import UsageError
from wbo.generate import random_wbo
from wbo.model import PBConstraint, SoftConstraint, Status, VarPool, WBOFormula, cost_of
from wbo.oracle import brute_force
from wbo.samples import clause, pb, sharing_core, sharing_formula
from wbo.wbo_core import (
    WboState,
    build_sharing,
    can_share,
    greedy_matching,
    relax_pb,
    solve_linear_search,
    solve_wbo,
    to_clausal,
)

import pytest


def test_relax_pb_uses_bound_as_coefficient():
    c = pb([(2, 1), (3, 2), (5, 3)], ">=", 5)
    assert str(relax_pb(c, 4)) == "+2 x1 +3 x2 +5 x3 +5 x4 >= 5"
    with pytest.raises(UsageError):
        relax_pb(c, -2)


def test_can_share_needs_strong_opposite_literals():
    w1, w2, w3, w4 = sharing_core()
    assert can_share(w1, w3)       # x3 satisfies w1, ~x3 satisfies w3
    assert can_share(w4, w2)       # x1 satisfies w4, ~x1 satisfies w2
    assert not can_share(w1, w2)   # no single literal of w1 reaches 5 except x3
    assert not can_share(pb([(1, 1), (1, 2)], ">=", 2), clause(-1))


def test_sharing_graph_on_core():
    g = build_sharing(sharing_core())
    assert g.edges == [(0, 2), (0, 3), (1, 2), (1, 3)]
    assert g.matching == [(0, 2), (1, 3)]
    assert g.assign_vars(VarPool(3)) == [4, 5, 4, 5]


def test_relaxation_with_sharing():
    state = WboState(sharing_formula())
    step = state.relax([0, 1, 2, 3])
    assert step.relax_vars == [4, 5]
    relaxed = sorted(str(state.soft[i].constraint) for i in step.added)
    assert relaxed == sorted([
        "+2 x1 +3 x2 +5 x3 +5 x4 >= 5",
        "+1 ~x1 +1 ~x2 +1 x5 >= 1",
        "+1 x2 +1 ~x3 +1 x4 >= 1",
        "+1 x1 +1 ~x3 +1 x5 >= 1",
    ])
    assert [str(c) for c in step.hard] == ["+1 ~x4 +1 ~x5 >= 1"]


def test_relaxation_without_sharing():
    state = WboState(sharing_formula(), share=False)
    assert len(state.relax([0, 1, 2, 3]).relax_vars) == 4


@pytest.mark.parametrize("mode", ["native", "cnf"])
@pytest.mark.parametrize("share", [True, False])
def test_sharing_formula_cost(mode, share):
    out = solve_wbo(sharing_formula(), mode, share=share)
    assert out.status is Status.OPTIMUM and out.cost == 1


def test_linear_search_sharing_formula():
    out = solve_linear_search(sharing_formula())
    assert out.cost == 1 and out.stats.relax_vars == 4
    assert out.stats.improvements == sorted(out.stats.improvements, reverse=True)


def test_to_clausal_preserves_optimum():
    rng = random.Random(5)
    for _ in range(40):
        f = random_wbo(rng, max_vars=6, max_constraints=6)
        g = to_clausal(f, VarPool(f.num_vars))
        assert g.is_clausal
        if g.num_vars <= 18:
            assert brute_force(g).cost == brute_force(f).cost


def test_unknown_mode():
    with pytest.raises(UsageError):
        solve_wbo(sharing_formula(), "lp")


def test_engines_match_oracle():
    rng = random.Random(21)
    for _ in range(60):
        f = random_wbo(rng)
        expect = brute_force(f)
        outs = [solve_wbo(f, "native"), solve_wbo(f, "cnf"), solve_wbo(f, share=False), solve_linear_search(f)]
        for out in outs:
            assert out.status == expect.status
            if expect.status is Status.OPTIMUM:
                assert out.cost == expect.cost == cost_of(f, out.model)


def max_matching_size(n, edges):
    for k in range(n // 2, 0, -1):
        for pick in combinations(edges, k):
            ends = [v for e in pick for v in e]
            if len(set(ends)) == len(ends):
                return k
    return 0


@settings(max_examples=150, deadline=None)
@given(st.integers(2, 7).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=10))))
def test_greedy_matching_is_half_maximum(graph):
    n, raw = graph
    edges = sorted({(min(a, b), max(a, b)) for a, b in raw if a != b})
    m = greedy_matching(n, edges)
    ends = [v for e in m for v in e]
    assert len(set(ends)) == len(ends)
    assert 2 * len(m) >= max_matching_size(n, edges)
    # maximal: every edge touches a matched vertex
    assert all(a in ends or b in ends for a, b in edges)


def test_dense_wbo_instances_match_oracle():
    from wbo.generate import random_pb_constraint
    rng = random.Random(77)
    for _ in range(20):
        n = 9
        soft = []
        while len(soft) < 25:
            c = random_pb_constraint(rng, n, max_coef=8, max_len=5)
            if c is not None:
                soft.append(SoftConstraint(c, rng.randint(1, 9)))
        f = WBOFormula(n, (), tuple(soft))
        expect = brute_force(f).cost
        for out in (solve_wbo(f), solve_wbo(f, "cnf"), solve_wbo(f, share=False), solve_linear_search(f)):
            assert out.cost == expect
