"""
Density matrices, embeddings and the KMS condition
==================================================

Each vertex nu carries a diagonal density matrix F_nu in the path basis.
Operators are finitely supported families of square blocks, and a character
evaluates Tr(F x)/Tr(F) on each block.
"""

# %%
from fractions import Fraction

import numpy as np

from qcl import CoherentSystem, LevelMeasure, WeightScheme
from qcl.opalg import (
    BlockOperator,
    QuantizedCharacterLevel,
    chi_eval,
    density_matrix,
    embed,
    kms_check,
    random_block_operator,
    scaling_flow_analytic,
)

scheme = WeightScheme.schur(Fraction(1, 2))
print("F_(2,0):", density_matrix(scheme, (2, 0)))
print("F_(2,1,0):", density_matrix(scheme, (2, 1, 0)))

# %%
# The unit of the one-dimensional block (0) lands on the paths of (1,0)
# that pass through (0).
e0 = BlockOperator.unit((0,), 0, 0)
print(embed(e0, 2, targets=[(1, 0)]).block((1, 0)))

# %%
# Conjugating by F is the analytic continuation of the scaling flow.
x = BlockOperator.unit((1, 0), 0, 1)
print(scaling_flow_analytic(x, scheme, 1).block((1, 0)))

# %%
# The KMS identity chi(x F y F^-1) = chi(y x) holds for random rational
# operators and characters drawn from a coherent tower.
rng = np.random.default_rng(0)
top = LevelMeasure(3, {(1, 0, 0): Fraction(2, 3), (2, 0, -1): Fraction(1, 3)})
system = CoherentSystem.from_top(scheme, top)
chi = QuantizedCharacterLevel(scheme, system.at(2))
hits = 0
for _ in range(25):
    a = random_block_operator(chi.coeffs.support, rng)
    b = random_block_operator(chi.coeffs.support, rng)
    hits += bool(kms_check(chi, a, b))
print(f"{hits}/25 random pairs satisfy KMS exactly")
print("chi(identity) =", chi_eval(chi, BlockOperator.identity(2, chi.coeffs.support)))
