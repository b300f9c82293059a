"""Exponential sums on the unit circle and the statistics built from them.

All sums follow the positive-exponent convention

    S_N(x) = sum_{m=1}^{N} eps_m x**m,    x_j = exp(2 pi i j / M),

so the whole grid is one inverse FFT of the coefficient array folded modulo
``M`` (folding is exact because ``x_j**M = 1``). Grid maxima are lower bounds
for the supremum over the circle; upper bounds are therefore
checked pointwise on the grid.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .alphabet import CoefficientSequence, roots_of_unity

__all__ = [
    "UnitCircleGrid",
    "SpectralReport",
    "root_n_bound",
    "exp_sum",
    "horner_eval",
    "grid_sums",
    "sup_profile",
    "root_n_constant",
    "running_sup",
    "autocorrelation",
    "periodogram",
    "balance_deficit",
    "analyze",
]

DEFAULT_GRID = 4096


@dataclass(frozen=True)
class UnitCircleGrid:
    M: int = DEFAULT_GRID

    def __post_init__(self):
        if self.M < 8:
            raise ValueError(f"grid needs at least 8 points, got {self.M}")

    @property
    def points(self) -> np.ndarray:
        return np.exp(2j * np.pi * np.arange(self.M) / self.M)

    @property
    def angles(self) -> np.ndarray:
        return 2 * np.pi * np.arange(self.M) / self.M


def _grid(grid) -> UnitCircleGrid:
    return grid if isinstance(grid, UnitCircleGrid) else UnitCircleGrid(int(grid))


def _check_n(eps: CoefficientSequence, N: int) -> None:
    if not 1 <= N <= len(eps):
        raise ValueError(f"N={N} outside 1..{len(eps)}")


def root_n_bound(order: int) -> float:
    """Constant C in |S_N| <= C sqrt(N): n(1 + sqrt(n)), which is 2(1+sqrt 2) for n=2."""
    return order * (1.0 + np.sqrt(order))


def exp_sum(eps: CoefficientSequence, N: int, x: complex) -> complex:
    """Horner evaluation of sum_{m=1}^{N} eps_m x**m at one point of the circle."""
    _check_n(eps, N)
    x = complex(x)
    if abs(abs(x) - 1.0) > 1e-12:
        raise ValueError(f"|x| = {abs(x)} is not on the unit circle")
    vals = eps.values[:N].tolist()
    acc = 0j
    for v in reversed(vals):
        acc = acc * x + v
    return acc * x


def horner_eval(eps: CoefficientSequence, N: int, xs) -> np.ndarray:
    """Horner evaluation at many points at once (slow path, used as a cross-check)."""
    _check_n(eps, N)
    xs = np.asarray(xs, dtype=complex)
    vals = eps.values[:N]
    acc = np.zeros_like(xs)
    for v in vals[::-1]:
        acc = acc * xs + v
    return acc * xs


def grid_sums(values: np.ndarray, grid) -> np.ndarray:
    """S(x_j) for all grid points, where ``values[m-1]`` is the coefficient of x**m."""
    M = _grid(grid).M
    values = np.asarray(values, dtype=complex)
    N = values.size
    folded = np.zeros(M, dtype=complex)
    # coefficient of x**m lands in slot m mod M
    padded = np.zeros(-(-(N + 1) // M) * M, dtype=complex)
    padded[1 : N + 1] = values
    folded += padded.reshape(-1, M).sum(axis=0)
    return np.fft.ifft(folded) * M


def sup_profile(eps: CoefficientSequence, N: int, grid) -> tuple[float, int]:
    """Largest |S_N(x_j)| over the grid and the first index attaining it."""
    _check_n(eps, N)
    mags = np.abs(grid_sums(eps.values[:N], grid))
    j = int(np.argmax(mags))
    return float(mags[j]), j


def root_n_constant(eps: CoefficientSequence, N_list: Sequence[int], grid) -> list[tuple[int, float]]:
    if len(N_list) == 0:
        raise ValueError("N_list is empty")
    out = []
    for N in N_list:
        sup, _ = sup_profile(eps, int(N), grid)
        out.append((int(N), sup / np.sqrt(N)))
    return out


def running_sup(eps: CoefficientSequence, N: int, grid, chunk: int = 64) -> np.ndarray:
    """``out[m-1] = max_j |S_m(x_j)|`` for every m = 1..N.

    Cost is N * M; grid columns are processed in chunks to bound memory.
    Phases are taken from an exact table indexed by ``m*j mod M``.
    """
    _check_n(eps, N)
    M = _grid(grid).M
    table = np.exp(2j * np.pi * np.arange(M) / M)
    vals = eps.values[:N]
    m = np.arange(1, N + 1, dtype=np.int64)
    best = np.zeros(N)
    for start in range(0, M, chunk):
        j = np.arange(start, min(start + chunk, M), dtype=np.int64)
        phase = table[np.outer(m, j) % M]
        partial = np.cumsum(vals[:, None] * phase, axis=0)
        np.maximum(best, np.abs(partial).max(axis=1), out=best)
    return best


def autocorrelation(eps: CoefficientSequence, N: int, max_lag: int) -> np.ndarray:
    """eta_N(m) = (1/N) sum_{r=1}^{N-m} eps_{r+m} conj(eps_r) for m = 0..max_lag.

    Products of roots of unity are counted by exponent residue, so the sums
    are exact integers before the final complex combination.
    """
    _check_n(eps, N)
    if not 0 <= max_lag < N:
        raise ValueError(f"max_lag={max_lag} must satisfy 0 <= max_lag < N={N}")
    n = eps.order
    e = eps.exponents[:N].astype(np.int64)
    roots = roots_of_unity(n)
    out = np.empty(max_lag + 1, dtype=complex)
    for lag in range(max_lag + 1):
        diff = (e[lag:] - e[: N - lag]) % n
        counts = np.bincount(diff, minlength=n)
        if n == 2:
            out[lag] = (int(counts[0]) - int(counts[1])) / N
        else:
            out[lag] = (counts * roots).sum() / N
    return out


def periodogram(eps: CoefficientSequence, N: int, grid) -> np.ndarray:
    """I_N(theta_j) = |S_N(x_j)|**2 / N."""
    _check_n(eps, N)
    return np.abs(grid_sums(eps.values[:N], grid)) ** 2 / N


def balance_deficit(eps: CoefficientSequence, N: int) -> float:
    """|mean of the first N values|, from exact residue counts."""
    _check_n(eps, N)
    counts = np.bincount(eps.exponents[:N].astype(np.int64), minlength=eps.order)
    if eps.order == 2:
        return abs(int(counts[0]) - int(counts[1])) / N
    return float(abs((counts * roots_of_unity(eps.order)).sum()) / N)


@dataclass
class SpectralReport:
    N: int
    grid_size: int
    sup_abs: float
    argmax: int
    root_n_constant: float
    autocorrelation: np.ndarray
    periodogram: np.ndarray
    balance: float
    bound_verdicts: dict = field(default_factory=dict)

    def to_dict(self, include_arrays: bool = False) -> dict:
        eta = self.autocorrelation
        d = {
            "N": self.N,
            "grid": self.grid_size,
            "sup_abs": self.sup_abs,
            "argmax": self.argmax,
            "root_n_constant": self.root_n_constant,
            "balance": self.balance,
            "periodogram_max": float(self.periodogram.max()),
            "periodogram_mean": float(self.periodogram.mean()),
            "max_abs_autocorrelation": float(np.abs(eta[1:]).max()) if eta.size > 1 else 0.0,
            "bound_verdicts": self.bound_verdicts,
        }
        if include_arrays:
            d["autocorrelation"] = [[float(z.real), float(z.imag)] for z in eta]
        return d


def _verdict(measured: float, bound: float) -> dict:
    return {
        "measured": float(measured),
        "bound": float(bound),
        "margin": float(bound - measured),
        "status": "pass" if measured <= bound + 1e-6 else "fail",
    }


def analyze(eps: CoefficientSequence, N: int | None = None, grid=DEFAULT_GRID,
            max_lag: int = 64) -> SpectralReport:
    """Sup norm, root-N constant, autocorrelation, periodogram and balance for one window."""
    N = len(eps) if N is None else N
    _check_n(eps, N)
    g = _grid(grid)
    sums = grid_sums(eps.values[:N], g)
    mags = np.abs(sums)
    j = int(np.argmax(mags))
    sup = float(mags[j])
    pgram = mags ** 2 / N
    eta = autocorrelation(eps, N, min(max_lag, N - 1))
    bal = balance_deficit(eps, N)
    c = root_n_bound(eps.order)
    verdicts = {
        "root_n": _verdict(sup / np.sqrt(N), c),
        "periodogram": _verdict(float(pgram.max()), c ** 2),
        "balance": _verdict(bal, c / np.sqrt(N)),
    }
    return SpectralReport(N, g.M, sup, j, sup / np.sqrt(N), eta, pgram, bal, verdicts)
