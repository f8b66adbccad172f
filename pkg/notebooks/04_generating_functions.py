"""
Generating functions on the shifted torus
=========================================

A level measure is encoded by a Laurent polynomial Phi in N variables.
Coherence between neighbouring levels becomes a simple statement: setting
the last variable of the upper polynomial to 1 yields the lower one.
"""

# %%
from fractions import Fraction

import numpy as np

from qcl import LevelMeasure, WeightScheme
from qcl.genfunc import extremal_genfunc_approx, gen_function, stability_check, torus_eval
from qcl.measures import project_down
from qcl.scalar import laurent_substitute_last

q = Fraction(1, 2)
scheme = WeightScheme.schur(q)
top = LevelMeasure(3, {(1, 0, 0): Fraction(1, 2), (1, 1, 0): Fraction(1, 2)})
low = project_down(scheme, top)
phi3, phi2 = gen_function(top, q), gen_function(low, q)
print("Phi^(3)(z1, z2, 1) == Phi^(2):", laurent_substitute_last(phi3, 1) == phi2)
print("stability_check:", stability_check(low, top, q))

# %%
# On the unit torus |Phi| <= 1, with equality at z = (1, 1, 1).
grid = np.linspace(0, 2 * np.pi, 7)
vals = np.array([[abs(torus_eval(phi3, [a, b, 0.0])) for b in grid] for a in grid])
print(np.round(vals, 3))

# %%
# Approximants along the hook chain at z = 2 settle quickly.
seq = extremal_genfunc_approx([(1,) + (0,) * (n - 1) for n in range(2, 9)], q, 1, [2])
for L, v in zip(range(2, 9), seq):
    print(L, v, f"{float(v):.8f}")
