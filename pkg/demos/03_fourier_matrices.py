"""
Higher-order constructions from Fourier matrices
================================================

Order n: n components, bars act as multiplication by exp(2 pi i / n).
"""

import numpy as np

from aperiodic import ConstructionSpec, Fourier, Letter, evolve, fixed_point_prefix
from aperiodic.spectral import UnitCircleGrid, grid_sums
from aperiodic.substitution import eigenvalues, fourier_rule, substitution_matrix

rule = fourier_rule(3)
for line in rule.describe()[::3]:
    print(line)

# iterate on A0
w = fixed_point_prefix(rule, Letter(0, 0, 3), 27)
print("fixed point:", w)

# the matrix is 9x9 with Perron eigenvalue 3
ev = eigenvalues(substitution_matrix(rule))
print("eigenvalues:", ", ".join(f"{z.real:+.4f}{z.imag:+.4f}i" for z in ev))

# sum_j |P_k^(j)|^2 = n^(k+1)
grid = UnitCircleGrid(1024)
for n in (3, 4, 5):
    k = 4
    state = evolve(ConstructionSpec(Fourier(n), k))
    total = sum(np.abs(grid_sums(state.sequence(j).values, grid)) ** 2 for j in range(n))
    sup0 = np.abs(grid_sums(state.sequence(0).values, grid)).max()
    print(f"n={n} k={k}: max |P| = {sup0:.3f} <= {n ** ((k + 1) / 2):.3f};"
          f" norm identity error {np.abs(total - n ** (k + 1)).max():.1e}")
