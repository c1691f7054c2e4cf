"""
Relaxing PB constraints and sharing relaxation variables
========================================================

A soft PB constraint sum(a_j l_j) >= b is relaxed as b*r + sum(a_j l_j) >= b.
When some variable satisfies one core constraint in one phase and another in
the other phase, both cannot be falsified together, so they can share r.
"""

from wbo.model import VarPool
from wbo.samples import sharing_core, sharing_formula
from wbo.wbo_core import WboState, build_sharing, solve_linear_search, solve_wbo

core = sharing_core()
for i, c in enumerate(core):
    print(f"w{i + 1}: {c}")

# %%
# Edges join constraints that may share; a greedy matching picks pairs.
g = build_sharing(core)
print("edges:", [(i + 1, j + 1) for i, j in g.edges])
print("matching:", [(i + 1, j + 1) for i, j in g.matching])
print("variables per constraint:", g.assign_vars(VarPool(3)))

# %%
# One iteration on the whole core: two relaxation variables instead of four.
state = WboState(sharing_formula())
step = state.relax([0, 1, 2, 3])
for i in step.added:
    print("  ", state.soft[i].constraint)
print("  ", *map(str, step.hard))

# %%
# All solvers agree on the optimum; sharing only changes the bookkeeping.
for label, out in [
    ("native, sharing", solve_wbo(sharing_formula())),
    ("native, private", solve_wbo(sharing_formula(), share=False)),
    ("clausal", solve_wbo(sharing_formula(), "cnf")),
    ("linear search", solve_linear_search(sharing_formula())),
]:
    print(f"{label:16s} cost {out.cost}  relaxation vars {out.stats.relax_vars}")
