"""
Reading, writing and translating instances
==========================================

Weighted partial MaxSAT travels as WCNF, pseudo-Boolean optimization as
OPB, and general hard/soft PB problems as WBO-OPB.  This script parses one
instance of each, converts between them and checks that optima survive.
"""

from wbo.oracle import brute_force
from wbo.parser_io import parse_opb, parse_wcnf, write_opb, write_wbo
from wbo.translate import maxsat_to_pbo, pbo_to_maxsat, pbo_to_wbo

# %%
# A weighted partial MaxSAT instance: weight 12 is the top, so the first
# three clauses are hard.
wcnf = """p wcnf 3 6 12
12 1 2 -3 0
12 -2 3 0
12 -1 3 0
6 -3 0
3 1 2 0
2 1 3 0
"""
f = parse_wcnf(wcnf)
print(len(f.hard), "hard clauses, soft weights", [s.weight for s in f.soft])
print("optimum by enumeration:", brute_force(f).cost)

# %%
# Each soft clause gets a selection variable; the objective charges its
# weight when the selector is needed.
p = maxsat_to_pbo(f)
print(write_opb(p))

# %%
# The other direction: an OPB problem with a knapsack-like constraint.
opb = """min: +4 x1 +2 x2 +1 x3 ;
+2 x1 +3 x2 +5 x3 >= 5 ;
+1 ~x1 +1 ~x2 >= 1 ;
+1 x1 +1 x2 +1 x3 >= 2 ;
"""
q = parse_opb(opb)
as_maxsat = pbo_to_maxsat(q)
print(f"as MaxSAT: {as_maxsat.num_vars} variables, {len(as_maxsat.hard)} hard clauses")
print("soft units:", [(str(s.constraint), s.weight) for s in as_maxsat.soft])

# %%
# Keeping the constraints as PB constraints gives a much smaller WBO file.
as_wbo = pbo_to_wbo(q)
print(write_wbo(as_wbo))
print("optima:", brute_force(as_maxsat).cost, brute_force(as_wbo).cost)
