"""
Comparing engines on random instances
=====================================

Every engine is run on the same seeded random WBO instances and checked
against exhaustive enumeration.  The summary mirrors a solved-instances
table: counts, mean UNSAT iterations and total time per engine.
"""

import random
import time

import numpy as np

from wbo.generate import random_wbo
from wbo.model import Status
from wbo.oracle import brute_force
from wbo.wbo_core import solve_linear_search, solve_wbo

rng = random.Random(12)
instances = [random_wbo(rng, max_vars=8, max_constraints=12) for _ in range(100)]
optimum = [brute_force(f).cost for f in instances]

engines = {
    "wbo-native": lambda f: solve_wbo(f, "native"),
    "wbo-native/no-share": lambda f: solve_wbo(f, "native", share=False),
    "wbo-cnf": lambda f: solve_wbo(f, "cnf"),
    "linear": solve_linear_search,
}

# %%
print(f"{'engine':22s} solved  agree  mean-iter  relax-vars  time[s]")
for name, run in engines.items():
    start = time.perf_counter()
    outs = [run(f) for f in instances]
    elapsed = time.perf_counter() - start
    solved = sum(o.status is not Status.RESOURCE_OUT for o in outs)
    agree = sum(o.cost == c for o, c in zip(outs, optimum))
    iters = np.array([o.stats.iterations for o in outs])
    rvars = sum(o.stats.relax_vars for o in outs)
    print(f"{name:22s} {solved:6d} {agree:6d} {iters.mean():10.2f} {rvars:11d} {elapsed:8.2f}")
