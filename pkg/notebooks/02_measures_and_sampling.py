"""
Central measures, coherence and sampling
========================================

A level measure at the top of a finite tower determines every lower level
through the cotransition kernel.  Sampling a path means drawing the top
vertex and then stepping down through the kernels.
"""

# %%
from collections import Counter
from fractions import Fraction

from qcl import CoherentSystem, LevelMeasure, WeightScheme
from qcl.measures import (
    check_coherence,
    cotransition_kernel,
    cylinder_probability,
    ergodic_ratios,
    pullback_measure,
    sample_paths,
)

q = Fraction(1, 2)
scheme = WeightScheme.schur(q)
print("kernel at (1,0):", cotransition_kernel(scheme, (1, 0)))

# %%
top = LevelMeasure(3, {(1, 0, 0): Fraction(1, 2), (1, 1, -1): Fraction(1, 2)})
system = CoherentSystem.from_top(scheme, top)
for n in range(1, 4):
    print(n, system.at(n))
print("levels 2/3 coherent:", bool(check_coherence(system.at(2), system.at(3), scheme)))

# %%
# Draw 2000 paths and compare the empirical law with the exact cylinder
# probabilities.
paths = sample_paths(scheme, top, 2000, seed=1)
counts = Counter(paths)
for p, c in sorted(counts.items()):
    exact = cylinder_probability(system, p, scheme)
    print([tuple(s) for s in p[1:]], f"empirical {c / 2000:.3f}  exact {float(exact):.3f}")

# %%
# The level-K marginal attached to a single vertex, and ratios along a chain
# of hooks which shrink toward zero.
print(pullback_measure(scheme, (2, 1, 0), 2))
chain = [(1,) + (0,) * (n - 1) for n in range(2, 9)]
print([f"{float(z):.5f}" for z in ergodic_ratios(scheme, (1,), chain)])
