"""
The Rudin-Shapiro pair from the signed recurrence
=================================================

Builds P_k, Q_k, checks the level bound and the norm identity on a grid.
"""

import numpy as np

from aperiodic import Binary, ConstructionSpec, SignProgram, evolve
from aperiodic.spectral import UnitCircleGrid, grid_sums

rs = Binary(SignProgram.parse("+"))

# the first few levels, as +/- signs
for k in range(5):
    state = evolve(ConstructionSpec(rs, k))
    P, Q = (state.sequence(j).signs() for j in range(2))
    print(f"k={k}  P: {''.join('+' if s > 0 else '-' for s in P)}")
    print(f"      Q: {''.join('+' if s > 0 else '-' for s in Q)}")

# |P_k|^2 + |Q_k|^2 = 2^(k+1) on the whole circle, so |P_k| <= 2^((k+1)/2)
grid = UnitCircleGrid(2048)
print()
print(" k   max|P_k|   2^((k+1)/2)   max deviation of |P|^2+|Q|^2")
for k in range(0, 17, 2):
    state = evolve(ConstructionSpec(rs, k))
    sP = grid_sums(state.sequence(0).values, grid)
    sQ = grid_sums(state.sequence(1).values, grid)
    norm = np.abs(sP) ** 2 + np.abs(sQ) ** 2
    print(f"{k:2d}  {np.abs(sP).max():10.4f}  {2 ** ((k + 1) / 2):12.4f}"
          f"   {np.abs(norm - 2 ** (k + 1)).max():.2e}")
