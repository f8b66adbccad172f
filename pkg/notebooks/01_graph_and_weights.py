"""
Signatures, paths and weighted dimensions
=========================================

A walk through the Gelfand-Tsetlin graph: vertices at level N are weakly
decreasing integer vectors of length N, and an edge joins mu to nu when
the two interlace.  Each edge carries a q-weight, and summing path weights
gives the weighted dimension of a vertex.
"""

# %%
from fractions import Fraction

import numpy as np

from qcl import ROOT, WeightScheme, count_paths, enumerate_paths, predecessors, weighted_dim
from qcl.scalar import format_rational
from qcl.symfunc import principal_point, schur_eval
from qcl.weights import path_weight

nu = (2, 1, 0)
print("predecessors of", nu, "->", [tuple(m) for m in predecessors(nu)])
print("number of paths from the root:", count_paths(ROOT, nu))

# %%
# Every path is a chain root < (a) < (b, c) < nu.  Paths come out in a fixed
# lexicographic order, which later indexes rows of matrix blocks.
scheme = WeightScheme.schur(Fraction(1, 2))
for p in enumerate_paths(ROOT, nu):
    print([tuple(s) for s in p[1:]], "weight", format_rational(path_weight(scheme, p)))

# %%
# The weighted dimension equals the Schur function at the point
# (q^(N-1), q^(N-3), ..., q^(1-N)).
for q in (Fraction(1, 2), Fraction(2, 3)):
    s = WeightScheme.schur(q)
    wd = weighted_dim(s, nu)
    sv = schur_eval(nu, principal_point(3, q))
    print(f"q={q}: wdim={wd}  schur={sv}  equal={wd == sv}")

# %%
# As q -> 1 the weighted dimension approaches the ordinary dimension.
qs = np.array([0.5, 0.9, 0.99, 0.999])
vals = [float(weighted_dim(WeightScheme.schur(float(q)), nu)) for q in qs]
print(np.column_stack([qs, vals]))
