"""
Checking CNF encodings by counting models
=========================================

Cardinality and PB constraints are turned into clauses with auxiliary
variables.  An encoding is correct when its models, projected onto the
original variables, are exactly the models of the constraint.
"""

import numpy as np

from wbo.encodings import encode_atmost1, encode_equals1, encode_pb
from wbo.model import PBConstraint, VarPool
from wbo.oracle import all_assignments, projected_models, satisfied_mask
from wbo.samples import pb


def as_constraints(res):
    return [PBConstraint.clause(c) for c in res.clauses]


# %%
# Direct models of 2x1 + 3x2 + 5x3 >= 5, computed on the full truth table.
c = pb([(2, 1), (3, 2), (5, 3)], ">=", 5)
X = all_assignments(3)
print(X[satisfied_mask(c, X)].astype(int))

# %%
# The sequential-counter encoding has the same five projections.
res = encode_pb(c, VarPool(3))
print(f"{len(res.clauses)} clauses, {len(res.aux_vars)} aux vars")
print(sorted(projected_models(as_constraints(res), [1, 2, 3])))

# %%
# Clause counts of the two AtMost1 schemes: n, pairwise, ladder.
sizes = np.array([[n] + [len(encode_atmost1(range(1, n + 1), VarPool(n), s).clauses)
                         for s in ("pairwise", "ladder")] for n in range(2, 9)])
print(sizes)

# %%
# Equals1 over eight literals has eight projected models in both schemes.
for scheme in ("pairwise", "ladder"):
    res = encode_equals1(list(range(1, 9)), VarPool(8), scheme)
    print(scheme, len(projected_models(as_constraints(res), list(range(1, 9)))))
