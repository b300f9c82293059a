"""Coefficient-level Rudin-Shapiro type recurrences.

Polynomials are never formed symbolically. Each polynomial ``sum c_m x**m``
(``m = 1..N``) is held as its coefficient array, coefficients being n-th roots
of unity stored as exponent residues mod ``n``. Multiplying by a monomial
``x**(l * n**k)`` is the same as placing a block at offset ``l * n**k``, so
every recurrence step is a concatenation.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .alphabet import CoefficientSequence

__all__ = [
    "SignProgram",
    "Binary",
    "Fourier",
    "ConstructionSpec",
    "RecurrenceState",
    "LevelCapError",
    "max_terms",
    "check_level",
    "initial_state",
    "signed_step",
    "fourier_step",
    "evolve",
    "coefficients",
    "partial_prefix",
]

DEFAULT_MAX_LOG2_TERMS = 24


class LevelCapError(ValueError):
    """Requested level would exceed the memory cap."""


def max_terms() -> int:
    """Largest admissible sequence length (``2**24`` unless overridden).

    ``APERIODIC_MAX_LEVEL`` sets the binary-equivalent level cap, i.e. the
    limit becomes ``2**APERIODIC_MAX_LEVEL`` terms for every order.
    """
    raw = os.environ.get("APERIODIC_MAX_LEVEL")
    level = DEFAULT_MAX_LOG2_TERMS if raw is None else int(raw)
    return 2 ** level


def check_level(n: int, k: int) -> None:
    if k < 0:
        raise ValueError(f"level must be non-negative, got {k}")
    if n ** k > max_terms():
        raise LevelCapError(
            f"level {k} at order {n} gives {n ** k} terms, above the cap of {max_terms()}"
        )


@dataclass(frozen=True)
class SignProgram:
    """Signs sigma_0, sigma_1, ... used in the signed recurrence.

    ``periodic=True`` repeats ``signs`` forever; otherwise the list is the
    complete (finite) program.
    """

    signs: tuple[int, ...]
    periodic: bool = True

    def __post_init__(self):
        signs = tuple(int(s) for s in self.signs)
        if not signs:
            raise ValueError("a sign program needs at least one sign")
        if any(s not in (1, -1) for s in signs):
            raise ValueError(f"signs must be +1 or -1, got {signs}")
        object.__setattr__(self, "signs", signs)

    @classmethod
    def parse(cls, text: str, periodic: bool = True) -> "SignProgram":
        table = {"+": 1, "-": -1}
        bad = [c for c in text if c not in table]
        if bad or not text:
            raise ValueError(f"sign word must be a nonempty string over '+-', got {text!r}")
        return cls(tuple(table[c] for c in text), periodic)

    @classmethod
    def explicit(cls, signs: Sequence[int]) -> "SignProgram":
        return cls(tuple(signs), periodic=False)

    @property
    def period(self) -> int:
        return len(self.signs)

    def sign(self, k: int) -> int:
        if self.periodic:
            return self.signs[k % len(self.signs)]
        if k >= len(self.signs):
            raise IndexError(
                f"explicit sign program has {len(self.signs)} signs, sign {k} requested"
            )
        return self.signs[k]

    def word(self) -> str:
        return "".join("+" if s > 0 else "-" for s in self.signs)


@dataclass(frozen=True)
class Binary:
    signs: SignProgram = SignProgram((1,))

    @property
    def order(self) -> int:
        return 2


@dataclass(frozen=True)
class Fourier:
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"Fourier order must be at least 2, got {self.n}")

    @property
    def order(self) -> int:
        return self.n


Family = Union[Binary, Fourier]


@dataclass(frozen=True)
class ConstructionSpec:
    family: Family
    level: int

    def __post_init__(self):
        if self.level < 0:
            raise ValueError(f"level must be non-negative, got {self.level}")

    @property
    def order(self) -> int:
        return self.family.order


@dataclass(frozen=True, eq=False)
class RecurrenceState:
    """Coefficient arrays of all components at a given level.

    For the binary family the two components are P_k and Q_k; for the Fourier
    family of order n they are P_k^(1), ..., P_k^(n).
    """

    components: tuple[np.ndarray, ...]
    order: int
    level: int
    family: Family

    def __post_init__(self):
        comps = []
        for c in self.components:
            c = np.asarray(c)
            c.setflags(write=False)
            comps.append(c)
        if len({c.size for c in comps}) != 1:
            raise ValueError("components must share one length")
        object.__setattr__(self, "components", tuple(comps))

    def sequence(self, j: int = 0) -> CoefficientSequence:
        return CoefficientSequence(self.components[j], self.order)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RecurrenceState):
            return NotImplemented
        return (
            self.order == other.order
            and self.level == other.level
            and len(self.components) == len(other.components)
            and all(np.array_equal(a, b) for a, b in zip(self.components, other.components))
        )


def _dtype(n: int):
    return np.int8 if n <= 127 else np.int32


def _family(spec_or_family) -> Family:
    if isinstance(spec_or_family, ConstructionSpec):
        return spec_or_family.family
    return spec_or_family


def initial_state(spec) -> RecurrenceState:
    """Level 0: every component is the polynomial x, i.e. the single coefficient 1."""
    family = _family(spec)
    n = family.order
    one = np.zeros(1, dtype=_dtype(n))
    return RecurrenceState(tuple(one.copy() for _ in range(n)), n, 0, family)


def signed_step(state: RecurrenceState, sigma: int) -> RecurrenceState:
    """P' = P + sigma x^(2^k) Q,  Q' = P - sigma x^(2^k) Q."""
    if not isinstance(state.family, Binary):
        raise TypeError("signed_step needs a binary-family state")
    if sigma not in (1, -1):
        raise ValueError(f"sigma must be +1 or -1, got {sigma}")
    p, q = state.components
    flip = 0 if sigma == 1 else 1
    p_next = np.concatenate([p, (q + flip) % 2])
    q_next = np.concatenate([p, (q + 1 - flip) % 2])
    return RecurrenceState(
        (p_next.astype(np.int8), q_next.astype(np.int8)), 2, state.level + 1, state.family
    )


def fourier_step(state: RecurrenceState) -> RecurrenceState:
    """One multiplication by the x-dependent Fourier matrix of order n.

    Component j of the next level is the concatenation over r of
    ``omega**((r-1)(j-1)) * P_k^(r)``.
    """
    if not isinstance(state.family, Fourier):
        raise TypeError("fourier_step needs a Fourier-family state")
    n = state.order
    comps = state.components
    nxt = []
    for j in range(n):
        blocks = [(comps[r].astype(np.int64) + (r * j) % n) % n for r in range(n)]
        nxt.append(np.concatenate(blocks).astype(_dtype(n)))
    return RecurrenceState(tuple(nxt), n, state.level + 1, state.family)


def evolve(spec: ConstructionSpec) -> RecurrenceState:
    """Run the recurrence from level 0 up to ``spec.level``."""
    check_level(spec.order, spec.level)
    family = spec.family
    if isinstance(family, Binary) and not family.signs.periodic:
        if len(family.signs.signs) < spec.level:
            raise ValueError(
                f"explicit sign program has {len(family.signs.signs)} signs, "
                f"level {spec.level} needs {spec.level}"
            )
    state = initial_state(family)
    for k in range(spec.level):
        if isinstance(family, Binary):
            state = signed_step(state, family.signs.sign(k))
        else:
            state = fourier_step(state)
    return state


def coefficients(spec: ConstructionSpec) -> CoefficientSequence:
    """Coefficients of the first component (P_k or P_k^(1)) at ``spec.level``."""
    return evolve(spec).sequence(0)


def partial_prefix(eps: CoefficientSequence, m: int) -> CoefficientSequence:
    if not 1 <= m <= len(eps):
        raise ValueError(f"prefix length {m} outside 1..{len(eps)}")
    return eps[:m]
