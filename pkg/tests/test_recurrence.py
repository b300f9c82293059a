import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from aperiodic.recurrence import (
    Binary,
    ConstructionSpec,
    Fourier,
    LevelCapError,
    SignProgram,
    check_level,
    coefficients,
    evolve,
    fourier_step,
    initial_state,
    partial_prefix,
    signed_step,
)
from aperiodic.spectral import grid_sums

from conftest import rs_digit_signs

PLUS = Binary(SignProgram.parse("+"))
MINUS_PLUS = Binary(SignProgram.parse("-+"))


def poly_oracle(family, k):
    """Complex coefficient vectors (index 0 <-> x**1) built by literal polynomial algebra."""
    n = family.order
    comps = [np.array([1.0 + 0j]) for _ in range(n)]
    om = np.exp(2j * np.pi / n)
    for level in range(k):
        shift = n ** level
        if isinstance(family, Binary):
            s = family.signs.sign(level)
            P, Q = comps
            comps = [np.concatenate([P, s * Q]), np.concatenate([P, -s * Q])]
        else:
            new = []
            for j in range(n):
                v = np.zeros(n * shift, dtype=complex)
                for r in range(n):
                    v[r * shift:(r + 1) * shift] += om ** (r * j) * comps[r]
                new.append(v)
            comps = new
    return comps


def test_initial_states():
    assert [c.tolist() for c in initial_state(PLUS).components] == [[0], [0]]
    assert [c.tolist() for c in initial_state(Fourier(3)).components] == [[0], [0], [0]]
    assert initial_state(Fourier(2)).components == initial_state(PLUS).components


def test_signed_step_plus():
    st_ = signed_step(initial_state(PLUS), 1)
    assert st_.sequence(0).signs().tolist() == [1, 1]
    assert st_.sequence(1).signs().tolist() == [1, -1]


def test_signed_step_minus():
    st_ = signed_step(initial_state(PLUS), -1)
    assert st_.sequence(0).signs().tolist() == [1, -1]
    assert st_.sequence(1).signs().tolist() == [1, 1]


def test_three_plus_steps():
    s = initial_state(PLUS)
    for _ in range(3):
        s = signed_step(s, 1)
    assert s.sequence(0).signs().tolist() == [1, 1, 1, -1, 1, 1, -1, 1]
    # Q_3 from the same recurrence
    assert s.sequence(1).signs().tolist() == [1, 1, 1, -1, -1, -1, 1, -1]


def test_signed_step_wrong_family():
    with pytest.raises(TypeError):
        signed_step(initial_state(Fourier(3)), 1)
    with pytest.raises(TypeError):
        fourier_step(initial_state(PLUS))


def test_fourier_step_order_three():
    s = fourier_step(initial_state(Fourier(3)))
    assert s.components[0].tolist() == [0, 0, 0]
    assert s.components[1].tolist() == [0, 1, 2]
    assert s.components[2].tolist() == [0, 2, 1]


def test_fourier_step_order_four_second_row():
    s = fourier_step(initial_state(Fourier(4)))
    assert np.allclose(s.sequence(1).values, [1, 1j, -1, -1j])


@pytest.mark.parametrize("k", range(0, 9))
def test_fourier_two_is_rs(k):
    a = coefficients(ConstructionSpec(Fourier(2), k))
    b = coefficients(ConstructionSpec(PLUS, k))
    assert np.array_equal(a.exponents, b.exponents)


def test_coefficients_rs_level3():
    assert coefficients(ConstructionSpec(PLUS, 3)).signs().tolist() == [1, 1, 1, -1, 1, 1, -1, 1]


def test_coefficients_minus_plus_prefix():
    eps = coefficients(ConstructionSpec(MINUS_PLUS, 4))
    assert eps.signs().tolist() == [1, -1, 1, 1, -1, 1, 1, 1, 1, -1, 1, 1, 1, -1, -1, -1]


def test_coefficients_fourier3_level1():
    assert coefficients(ConstructionSpec(Fourier(3), 1)).exponents.tolist() == [0, 0, 0]


def test_rs_matches_digit_rule():
    eps = coefficients(ConstructionSpec(PLUS, 16))
    assert np.array_equal(eps.signs(), rs_digit_signs(1 << 16))


@pytest.mark.parametrize("family,k", [
    (PLUS, 6), (Binary(SignProgram.parse("-")), 6), (MINUS_PLUS, 7),
    (Binary(SignProgram.parse("++-")), 7), (Binary(SignProgram.explicit([1, -1, -1, 1, -1])), 5),
    (Fourier(3), 4), (Fourier(4), 3), (Fourier(5), 3), (Fourier(7), 2),
])
def test_against_polynomial_algebra(family, k):
    state = evolve(ConstructionSpec(family, k))
    oracle = poly_oracle(family, k)
    for j, comp in enumerate(oracle):
        assert np.allclose(state.sequence(j).values, comp, atol=1e-9)


def test_partial_prefix():
    rs = coefficients(ConstructionSpec(PLUS, 3))
    assert partial_prefix(rs, 4).signs().tolist() == [1, 1, 1, -1]
    assert partial_prefix(rs, 8) == rs
    v = coefficients(ConstructionSpec(MINUS_PLUS, 4))
    assert partial_prefix(v, 8).signs().tolist() == [1, -1, 1, 1, -1, 1, 1, 1]
    with pytest.raises(ValueError):
        partial_prefix(rs, 9)
    with pytest.raises(ValueError):
        partial_prefix(rs, 0)


def test_explicit_program_too_short():
    spec = ConstructionSpec(Binary(SignProgram.explicit([1, -1])), 3)
    with pytest.raises(ValueError, match="explicit"):
        coefficients(spec)


def test_sign_program_validation():
    with pytest.raises(ValueError):
        SignProgram(())
    with pytest.raises(ValueError):
        SignProgram((1, 0))
    with pytest.raises(ValueError):
        SignProgram.parse("+x")
    assert SignProgram.parse("-+").sign(5) == 1
    with pytest.raises(ValueError):
        Fourier(1)


def test_level_cap(monkeypatch):
    with pytest.raises(LevelCapError):
        check_level(2, 25)
    check_level(2, 24)
    monkeypatch.setenv("APERIODIC_MAX_LEVEL", "10")
    with pytest.raises(LevelCapError):
        coefficients(ConstructionSpec(PLUS, 11))
    check_level(3, 6)  # 729 <= 1024
    with pytest.raises(LevelCapError):
        check_level(3, 7)


def test_states_are_immutable():
    s = evolve(ConstructionSpec(PLUS, 3))
    with pytest.raises(ValueError):
        s.components[0][0] = 1


families = st.one_of(
    st.text("+-", min_size=1, max_size=4).map(lambda w: Binary(SignProgram.parse(w))),
    st.integers(2, 6).map(Fourier),
)


@settings(max_examples=40, deadline=None)
@given(families, st.integers(0, 6))
def test_prefix_coherence(family, k):
    if family.order ** (k + 1) > 1 << 14:
        return
    a = evolve(ConstructionSpec(family, k))
    b = evolve(ConstructionSpec(family, k + 1))
    size = family.order ** k
    assert np.array_equal(b.components[0][:size], a.components[0])


@settings(max_examples=40, deadline=None)
@given(families, st.integers(0, 7))
def test_norm_conservation_property(family, k):
    n = family.order
    if n ** k > 1 << 12:
        return
    state = evolve(ConstructionSpec(family, k))
    total = sum(np.abs(grid_sums(state.sequence(j).values, 256)) ** 2 for j in range(n))
    assert np.max(np.abs(total - n ** (k + 1))) <= 1e-9 * (k + 1) * n ** (k + 1)


@settings(max_examples=25, deadline=None)
@given(st.text("+-", min_size=1, max_size=5), st.integers(0, 10))
def test_binary_residues_are_signs(word, k):
    eps = coefficients(ConstructionSpec(Binary(SignProgram.parse(word)), k))
    assert set(np.unique(eps.exponents).tolist()) <= {0, 1}
