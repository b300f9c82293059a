import json
import math

import pytest

from aperiodic.recurrence import Binary, ConstructionSpec, Fourier, SignProgram, evolve
from aperiodic.spectral import exp_sum
from aperiodic.verify import (
    SUITES,
    check_bounds,
    check_correspondence,
    check_hull_facts,
    check_known_spectra,
    check_norm_conservation,
    run_suite,
)

RS = Binary(SignProgram.parse("+"))
V_MINUS_PLUS = [1, -1, 1, 1, -1, 1, 1, 1, 1, -1, 1, 1, 1, -1, -1, -1]


def test_correspondence_rs_level3():
    r = check_correspondence("+", 3)
    assert r.passed
    assert r.detail["head"] == [0, 0, 0, 1, 0, 0, 1, 0]


def test_correspondence_minus_plus():
    r = check_correspondence("-+", 2)
    assert r.passed
    assert r.detail["terms"] == 16
    assert [1 - 2 * e for e in r.detail["head"]] == V_MINUS_PLUS


def test_correspondence_plus_plus_minus():
    r = check_correspondence("++-", 1)
    assert r.passed
    # phi(A B A B1 A1 B1 A B1)
    assert r.detail["head"] == [0, 0, 0, 1, 1, 1, 0, 1]


@pytest.mark.parametrize("word", ["+", "-", "-+", "+-", "++-", "+--+", "-++"])
def test_correspondence_many_programs(word):
    k = max(1, 12 // len(word))
    assert check_correspondence(word, k).passed


def test_norm_direct_values():
    state = evolve(ConstructionSpec(RS, 3))
    P, Q = state.sequence(0), state.sequence(1)
    assert Q.signs().tolist() == [1, 1, 1, -1, -1, -1, 1, -1]
    total = abs(exp_sum(P, 8, 1)) ** 2 + abs(exp_sum(Q, 8, 1)) ** 2
    assert total == pytest.approx(16)
    state = evolve(ConstructionSpec(Fourier(3), 1))
    total = sum(abs(exp_sum(state.sequence(j), 3, 1)) ** 2 for j in range(3))
    assert total == pytest.approx(9)


@pytest.mark.parametrize("family", [RS, Binary(SignProgram.parse("++-")), Fourier(3), Fourier(4)])
@pytest.mark.parametrize("k", [0, 1, 5])
def test_norm_conservation_passes(family, k):
    r = check_norm_conservation(family, k, 256)
    assert r.passed
    assert r.measured <= 1e-9 * (k + 1)


def test_bounds_rs3_tight_at_one():
    r = check_bounds(RS, 3, 1024)
    assert r.passed
    assert r.measured["level_sup"] == pytest.approx(4)
    assert r.detail["slacks"]["level"] == pytest.approx(0, abs=1e-9)


def test_bounds_fourier4_partial():
    r = check_bounds(Fourier(4), 4, 256)
    assert r.passed
    assert r.expected["partial"] == pytest.approx(96)
    assert r.measured["partial_sup"] <= 96 + 1e-6


@pytest.mark.parametrize("family", [RS, Fourier(3), Fourier(5)])
def test_bounds_level0(family):
    r = check_bounds(family, 0, 64)
    assert r.passed
    assert r.measured["level_sup"] == pytest.approx(1)


def test_known_spectra_results():
    by_name = {c.name: c for c in check_known_spectra()}
    assert by_name["spectrum[S+]"].passed
    assert by_name["spectrum[S-]"].passed
    assert by_name["spectrum[S+-]"].passed
    assert by_name["spectrum[eighth powers]"].passed
    assert by_name["spectrum[S-+ vs S+-]"].passed
    # the tabulated {4, 2, 2, 0} cannot hold: MN and NM share their spectrum,
    # and the computed multiset is {4, 2, -2, 0}
    bad = by_name["spectrum[S-+]"]
    assert not bad.passed
    assert sorted(round(z.real, 9) for z in bad.measured) == [-2, 0, 2, 4]


def test_hull_facts_all_pass():
    checks = check_hull_facts(1 << 12)
    assert checks and all(c.passed for c in checks), [c.name for c in checks if not c.passed]
    kinds = {c.name.split("[")[0]: c.kind for c in checks}
    assert kinds["preimage1111"] == "evidence"
    assert kinds["legal4"] == "exact"


def test_fast_suite_only_known_failure():
    rep = run_suite("fast")
    assert [c.name for c in rep.failures()] == ["spectrum[S-+]"]
    assert not rep.overall


def test_suite_is_deterministic():
    a = json.dumps(run_suite("fast").to_dict(), sort_keys=True)
    b = json.dumps(run_suite("fast").to_dict(), sort_keys=True)
    assert a == b


def test_suite_covers_all_families():
    names = {c.name for c in run_suite("fast").checks}
    for label in ("signs:+", "signs:-", "signs:-+", "signs:+-", "signs:++-", "fourier:3", "fourier:4"):
        assert any(label + "," in n for n in names if n.startswith("bounds")), label
        assert any(label + "," in n for n in names if n.startswith("norm")), label


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("nope")
    assert set(SUITES) >= {"fast", "default"}


@pytest.mark.slow
def test_default_suite_only_known_failure():
    rep = run_suite("default")
    assert [c.name for c in rep.failures()] == ["spectrum[S-+]"]
    d = rep.to_dict()
    assert d["schema"] == 1 and d["n_failed"] == 1
    json.dumps(d)
    assert all(math.isfinite(c.margin) for c in rep.checks)
