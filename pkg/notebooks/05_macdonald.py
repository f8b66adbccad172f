"""
The (q, t) deformation
======================

Macdonald branching coefficients replace the pure powers of q on each edge.
When q = t^2 everything collapses back to the Schur weights at parameter t.
"""

# %%
from fractions import Fraction

from qcl import WeightScheme, weighted_dim
from qcl.opalg import density_matrix, verify_density_branching
from qcl.symfunc import macdonald_principal, macdonald_psi

q, t = Fraction(1, 3), Fraction(1, 2)
print("psi_{(2,0)/(1)} =", macdonald_psi((1,), (2, 0), q, t))

mac = WeightScheme.macdonald(q, t)
for nu in [(1, 0), (2, 1, 0), (2, 0, -1)]:
    print(nu, "wdim", weighted_dim(mac, nu), "closed form", macdonald_principal(nu, q, t))

# %%
print("density branching at (2,1,0):", verify_density_branching(mac, (2, 1, 0)))
print("F_(2,1,0):", density_matrix(mac, (2, 1, 0)))

# %%
# Degeneration: q = t^2 reproduces the Schur scheme.
deg, schur = WeightScheme.macdonald(t * t, t), WeightScheme.schur(t)
print(all(list(density_matrix(deg, nu)) == list(density_matrix(schur, nu)) for nu in [(1, 0), (2, 1, 0), (2, 2, -1)]))
