import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from aperiodic.alphabet import CoefficientSequence
from aperiodic.recurrence import Binary, ConstructionSpec, Fourier, SignProgram, coefficients
from aperiodic.spectral import (
    UnitCircleGrid,
    analyze,
    autocorrelation,
    balance_deficit,
    exp_sum,
    grid_sums,
    horner_eval,
    periodogram,
    root_n_bound,
    root_n_constant,
    running_sup,
    sup_profile,
)

from conftest import rs_digit_signs, signs_seq

RS = Binary(SignProgram.parse("+"))


def direct_sum(vals, x):
    m = np.arange(1, len(vals) + 1)
    return np.sum(vals * x ** m)


def test_exp_sum_rs8(rs8):
    # 1+1+1-1+1+1-1+1; the alternating sum -1+1-1-1-1+1+1+1 cancels to 0
    assert exp_sum(rs8, 8, 1) == pytest.approx(4)
    assert abs(exp_sum(rs8, 8, -1)) <= 1e-12
    assert exp_sum(rs8, 8, -1) == direct_sum(rs8.values, -1)


def test_exp_sum_rejects_off_circle(rs8):
    with pytest.raises(ValueError):
        exp_sum(rs8, 8, 0)
    with pytest.raises(ValueError):
        exp_sum(rs8, 9, 1)


def test_exp_sum_matches_direct_sum():
    eps = coefficients(ConstructionSpec(Fourier(3), 6))
    rng = np.random.default_rng(1)
    for _ in range(20):
        N = int(rng.integers(1, len(eps) + 1))
        x = np.exp(2j * np.pi * rng.random())
        assert abs(exp_sum(eps, N, x) - direct_sum(eps.values[:N], x)) <= 1e-9 * N


def test_grid_requires_eight_points():
    with pytest.raises(ValueError):
        UnitCircleGrid(4)


def test_sup_profile_rs8(rs8):
    sup, j = sup_profile(rs8, 8, 1024)
    assert sup == pytest.approx(4, abs=1e-12)
    assert j == 0


def test_sup_profile_single():
    sup, _ = sup_profile(signs_seq([1]), 1, 64)
    assert sup == pytest.approx(1)


def test_sup_profile_fourier3_level2():
    eps = coefficients(ConstructionSpec(Fourier(3), 2))
    sup, _ = sup_profile(eps, 9, 1024)
    assert sup <= 3 ** 1.5 + 1e-6


def test_transform_vs_horner_random_pairs():
    eps = coefficients(ConstructionSpec(Binary(SignProgram.parse("-+")), 12))
    M = 512
    grid = UnitCircleGrid(M)
    rng = np.random.default_rng(7)
    for _ in range(100):
        N = int(rng.integers(1, len(eps) + 1))
        j = int(rng.integers(0, M))
        fast = grid_sums(eps.values[:N], grid)[j]
        slow = exp_sum(eps, N, grid.points[j])
        assert abs(fast - slow) <= 1e-6


def test_folding_when_N_exceeds_grid():
    eps = coefficients(ConstructionSpec(RS, 12))
    grid = UnitCircleGrid(64)
    assert np.allclose(grid_sums(eps.values, grid), horner_eval(eps, len(eps), grid.points), atol=1e-8)


def test_root_n_constants_rs():
    eps = coefficients(ConstructionSpec(RS, 16))
    powers = [2 ** k for k in range(0, 17)]
    for N, c in root_n_constant(eps, powers, 1024):
        assert c <= np.sqrt(2) + 1e-9
    rng = np.random.default_rng(3)
    Ns = rng.integers(1, 1 << 16, size=40).tolist()
    for N, c in root_n_constant(eps, Ns, 1024):
        assert c <= 2 * (1 + np.sqrt(2))
    with pytest.raises(ValueError):
        root_n_constant(eps, [], 64)


@pytest.mark.parametrize("n,k", [(3, 7), (4, 6), (5, 5)])
def test_root_n_constants_fourier(n, k):
    eps = coefficients(ConstructionSpec(Fourier(n), k))
    for N, c in root_n_constant(eps, [n ** j for j in range(k + 1)], 1024):
        assert c <= np.sqrt(n) + 1e-9


def direct_autocorrelation(vals, N, L):
    out = []
    for m in range(L + 1):
        out.append(sum(vals[r + m] * np.conj(vals[r]) for r in range(N - m)) / N)
    return np.array(out)


def test_autocorrelation_rs8(rs8):
    eta = autocorrelation(rs8, 8, 3)
    assert eta[0] == 1
    assert eta[1] == pytest.approx(-1 / 8)


@pytest.mark.parametrize("family,k", [(RS, 9), (Binary(SignProgram.parse("++-")), 9),
                                      (Fourier(3), 6), (Fourier(5), 4)])
def test_autocorrelation_matches_direct(family, k):
    eps = coefficients(ConstructionSpec(family, k))
    N = len(eps) - 3
    got = autocorrelation(eps, N, 12)
    assert np.allclose(got, direct_autocorrelation(eps.values, N, 12), atol=1e-12)
    assert got[0] == 1


def test_autocorrelation_lag_bound(rs8):
    with pytest.raises(ValueError):
        autocorrelation(rs8, 8, 8)


def test_periodogram_rs_bound():
    eps = coefficients(ConstructionSpec(RS, 16))
    for N in (1000, 1 << 15, 50000, 1 << 16):
        assert periodogram(eps, N, 1024).max() <= (2 * (1 + np.sqrt(2))) ** 2


def test_periodogram_periodic_control():
    ones = CoefficientSequence(np.zeros(500, dtype=int), 2)
    assert periodogram(ones, 500, 64)[0] == pytest.approx(500)


def test_periodogram_fourier3():
    eps = coefficients(ConstructionSpec(Fourier(3), 8))
    assert periodogram(eps, 3 ** 8, 1024).max() <= (3 * (1 + np.sqrt(3))) ** 2


def test_periodogram_nonnegative_and_parseval():
    eps = coefficients(ConstructionSpec(Fourier(4), 5))
    N = len(eps)
    I = periodogram(eps, N, 4 * N)
    assert I.min() >= 0
    assert abs(I.mean() - 1.0) <= 1e-6


def test_balance_examples(rs8):
    assert balance_deficit(rs8, 8) == 0.5
    assert balance_deficit(rs8, 8) <= 2 * (1 + np.sqrt(2)) / np.sqrt(8)
    assert balance_deficit(signs_seq([1]), 1) == 1
    eps = coefficients(ConstructionSpec(RS, 20))
    assert balance_deficit(eps, 1 << 20) <= 2 * (1 + np.sqrt(2)) * 2 ** -10


def test_balance_matches_digit_rule():
    s = rs_digit_signs(1 << 12)
    eps = coefficients(ConstructionSpec(RS, 12))
    for N in (1, 17, 1000, 4096):
        assert balance_deficit(eps, N) == abs(s[:N].sum()) / N


def test_running_sup_matches_per_N_transform():
    eps = coefficients(ConstructionSpec(Fourier(3), 5))
    sups = running_sup(eps, len(eps), 128)
    for N in (1, 2, 3, 10, 81, 200, 243):
        assert sups[N - 1] == pytest.approx(sup_profile(eps, N, 128)[0], abs=1e-9)


def test_root_n_bound_constants():
    assert root_n_bound(2) == pytest.approx(2 * (1 + np.sqrt(2)))
    assert root_n_bound(3) == pytest.approx(3 * (1 + np.sqrt(3)))


def test_analyze_report():
    eps = coefficients(ConstructionSpec(RS, 12))
    rep = analyze(eps, grid=1024, max_lag=16)
    assert rep.autocorrelation[0] == 1
    assert rep.periodogram.min() >= 0
    assert all(v["status"] == "pass" for v in rep.bound_verdicts.values())
    d = rep.to_dict()
    assert d["N"] == 4096 and d["grid"] == 1024


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=1, max_size=200), st.integers(8, 64))
def test_parseval_random(exps, M):
    eps = CoefficientSequence(exps, 3)
    N = len(exps)
    M = max(M, N + 1)
    I = periodogram(eps, N, M)
    assert abs(I.mean() - 1.0) <= 1e-9

