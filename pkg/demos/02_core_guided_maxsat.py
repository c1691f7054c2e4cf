"""
Core-guided weighted MaxSAT, one iteration at a time
====================================================

The working formula starts as the input.  Each unsatisfiable core raises the
lower bound by its smallest weight; heavier clauses are split so that only
that amount moves into the relaxed copy.
"""

import time

from wbo.model import SoftConstraint, WBOFormula
from wbo.msu import MsuState, naive_replication, solve_msu1, solve_wmsu1
from wbo.samples import clause, weighted_maxsat


def show(state):
    for i in state.active_indices():
        s = state.soft[i]
        print(f"   ({s.constraint}, {s.weight})")
    print("   lower bound:", state.cost_lb)


# %%
# Relax the core made of (~x3, 6) and (x1 v x2, 3) by hand.
state = MsuState(weighted_maxsat(), card="pairwise")
step = state.relax([0, 1])
print(f"min_c = {step.min_c}, relaxation vars {step.relax_vars}")
show(state)
print("   new hard clauses:", [str(c) for c in step.hard])

# %%
# The full loop finds the optimum and records every core it relaxed.
out = solve_wmsu1(weighted_maxsat())
print(out.status.value, "cost", out.cost, "core sizes", out.stats.core_sizes)

# %%
# Splitting makes the iteration count independent of weight magnitudes.
# Replicating each clause c times would need 2^40 iterations here.
big = WBOFormula(1, (), (SoftConstraint(clause(1), 2**40), SoftConstraint(clause(-1), 2**40 + 1)))
start = time.perf_counter()
out = solve_wmsu1(big)
print(f"cost {out.cost} after {out.stats.iterations} iteration(s), {1000 * (time.perf_counter() - start):.2f} ms")

# %%
# With small weights, replication is feasible and agrees.
small = WBOFormula(2, (clause(1, 2),), (SoftConstraint(clause(-1), 3), SoftConstraint(clause(-2), 2)))
rep = solve_msu1(naive_replication(small))
direct = solve_wmsu1(small)
print(f"replicated: cost {rep.cost}, {rep.stats.iterations} iterations")
print(f"split:      cost {direct.cost}, {direct.stats.iterations} iterations")
