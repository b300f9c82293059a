"""
Spectral statistics
===================

Root-N constants, the periodogram, autocorrelation and balance for a few
constructions, against a periodic control sequence.
"""

import numpy as np

from aperiodic import Binary, ConstructionSpec, Fourier, SignProgram, coefficients
from aperiodic.alphabet import CoefficientSequence
from aperiodic.spectral import analyze, root_n_bound, running_sup

families = {
    "rs": Binary(SignProgram.parse("+")),
    "signs:-+": Binary(SignProgram.parse("-+")),
    "signs:++-": Binary(SignProgram.parse("++-")),
    "fourier:3": Fourier(3),
}

print(f"{'family':10s} {'N':>7s} {'C_N':>7s} {'bound':>7s} {'max I':>8s} {'max|eta|':>9s} {'balance':>9s}")
for name, family in families.items():
    eps = coefficients(ConstructionSpec(family, 16 if family.order == 2 else 10))
    rep = analyze(eps, grid=4096, max_lag=64)
    print(f"{name:10s} {rep.N:7d} {rep.root_n_constant:7.3f} {root_n_bound(eps.order):7.3f}"
          f" {rep.periodogram.max():8.3f} {np.abs(rep.autocorrelation[1:]).max():9.2e} {rep.balance:9.2e}")

# a constant sequence concentrates everything at theta = 0
const = CoefficientSequence(np.zeros(1 << 16, dtype=np.int64), 2)
rep = analyze(const, grid=4096, max_lag=8)
print(f"{'constant':10s} {rep.N:7d} {rep.root_n_constant:7.1f} {'':7s} {rep.periodogram.max():8.0f}")

# C_N for every N: sup_m |S_m| / sqrt(m), worst case over a short range
eps = coefficients(ConstructionSpec(families["rs"], 12))
sups = running_sup(eps, len(eps), 512)
ratio = sups / np.sqrt(np.arange(1, len(eps) + 1))
print(f"\nrs, N <= 4096: worst C_N = {ratio.max():.4f} at N = {ratio.argmax() + 1}")
