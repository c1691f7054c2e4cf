import random

import pytest

from wbo.errors import UsageError
from wbo.generate import random_maxsat, random_wbo
from wbo.model import PBConstraint
from wbo.oracle import brute_force, brute_force_pbo
from wbo.samples import pbo, sharing_formula, weighted_maxsat
from wbo.translate import maxsat_to_pbo, pbo_to_maxsat, pbo_to_wbo, wbo_to_pbo


def test_maxsat_to_pbo_structure():
    p = maxsat_to_pbo(weighted_maxsat())
    assert p.num_vars == 6
    assert sorted(c for c, _ in p.objective) == [2, 3, 6]
    assert [l for _, l in p.objective] == [4, 5, 6]
    assert sorted(map(str, p.constraints)) == sorted([
        "+1 x1 +1 x2 +1 ~x3 >= 1", "+1 ~x2 +1 x3 >= 1", "+1 ~x1 +1 x3 >= 1",
        "+1 ~x3 +1 x4 >= 1", "+1 x1 +1 x2 +1 x5 >= 1", "+1 x1 +1 x3 +1 x6 >= 1",
    ])


def test_maxsat_to_pbo_rejects_pb():
    with pytest.raises(UsageError):
        maxsat_to_pbo(sharing_formula())


def test_pbo_to_maxsat_structure():
    f = pbo_to_maxsat(pbo())
    assert f.is_clausal
    assert sorted((str(s.constraint), s.weight) for s in f.soft) == [
        ("+1 ~x1 >= 1", 4), ("+1 ~x2 >= 1", 2), ("+1 ~x3 >= 1", 1)]
    # the clause constraint passes through unchanged
    assert PBConstraint.clause([-1, -2]) in f.hard


def test_pbo_translations_keep_optimum():
    p = pbo()
    assert brute_force(pbo_to_maxsat(p)).cost == 3
    assert brute_force(pbo_to_wbo(p)).cost == 3
    assert brute_force_pbo(p.objective, p.constraints, p.num_vars)[0] == 3


def test_random_round_trips_keep_optimum():
    rng = random.Random(4)
    for _ in range(40):
        f = random_maxsat(rng, max_vars=7, max_clauses=10)
        p = maxsat_to_pbo(f)
        res = brute_force_pbo(p.objective, p.constraints, p.num_vars)
        expect = brute_force(f)
        assert (res is None) == (expect.cost is None)
        if res is not None:
            assert res[0] == expect.cost
    for _ in range(40):
        f = random_wbo(rng, max_vars=6, max_constraints=8)
        p = wbo_to_pbo(f)
        res = brute_force_pbo(p.objective, p.constraints, p.num_vars)
        expect = brute_force(f)
        assert (None if res is None else res[0]) == expect.cost
