"""Letters with a cyclic bar action, finite words, and the factor map.

A letter is a pair ``(base, bars)``: ``base`` indexes the basic letters
A, B, C, ... and ``bars`` counts bars modulo the order ``n``. Internally a
letter is packed into a single integer code ``base * n + bars`` so that words
can be stored as read-only numpy arrays and substituted by table lookup.
Codes sort the same way as ``(base, bars)`` pairs.
"""

from __future__ import annotations

import re
import string
from dataclasses import dataclass
from functools import total_ordering
from typing import Iterable, Iterator

import numpy as np

__all__ = [
    "Letter",
    "Word",
    "CoefficientSequence",
    "WordParseError",
    "roots_of_unity",
    "bar_shift",
    "bar_shift_word",
    "factor_map",
    "parse_word",
    "format_word",
    "subword_set",
]

BASE_SYMBOLS = string.ascii_uppercase


class WordParseError(ValueError):
    """Raised when a token string does not describe a valid word."""


def roots_of_unity(n: int) -> np.ndarray:
    """Return ``omega**j`` for ``j = 0..n-1`` with ``omega = exp(2*pi*i/n)``.

    Orders 1, 2 and 4 use exact values so that real sequences stay real.
    """
    if n == 1:
        return np.array([1.0 + 0j])
    if n == 2:
        return np.array([1.0 + 0j, -1.0 + 0j])
    if n == 4:
        return np.array([1.0 + 0j, 1j, -1.0 + 0j, -1j])
    return np.exp(2j * np.pi * np.arange(n) / n)


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=np.int64).reshape(-1)
    arr.setflags(write=False)
    return arr


@total_ordering
@dataclass(frozen=True)
class Letter:
    base: int
    bars: int = 0
    order: int = 2

    def __post_init__(self):
        if self.order < 1:
            raise ValueError(f"order must be positive, got {self.order}")
        if self.base < 0:
            raise ValueError(f"base index must be non-negative, got {self.base}")
        if not 0 <= self.bars < self.order:
            raise ValueError(f"bar count {self.bars} outside 0..{self.order - 1}")

    @property
    def code(self) -> int:
        return self.base * self.order + self.bars

    @classmethod
    def from_code(cls, code: int, order: int) -> "Letter":
        base, bars = divmod(int(code), order)
        return cls(base, bars, order)

    def __lt__(self, other: "Letter") -> bool:
        return (self.base, self.bars) < (other.base, other.bars)

    def __str__(self) -> str:
        return _token(self.base, self.bars)


def bar_shift(letter: Letter, t: int) -> Letter:
    """Add ``t`` bars to ``letter`` (mod its order)."""
    return Letter(letter.base, (letter.bars + t) % letter.order, letter.order)


@total_ordering
class Word:
    """Immutable finite word over the alphabet of order ``order``.

    Equality and hashing use the letter codes, so words can be collected in
    sets; ordering is lexicographic by ``(base, bars)``.
    """

    __slots__ = ("_codes", "_order", "_hash")

    def __init__(self, codes, order: int):
        codes = _frozen(codes)
        if order < 1:
            raise ValueError(f"order must be positive, got {order}")
        if codes.size and codes.min() < 0:
            raise ValueError("letter codes must be non-negative")
        self._codes = codes
        self._order = int(order)
        self._hash = None

    @classmethod
    def from_letters(cls, letters: Iterable[Letter], order: int | None = None) -> "Word":
        letters = list(letters)
        if order is None:
            if not letters:
                raise ValueError("order is required for an empty word")
            order = letters[0].order
        for i, letter in enumerate(letters):
            if letter.order != order:
                raise ValueError(
                    f"letter {i + 1} has order {letter.order}, expected {order}"
                )
        return cls([l.code for l in letters], order)

    @property
    def codes(self) -> np.ndarray:
        return self._codes

    @property
    def order(self) -> int:
        return self._order

    @property
    def bases(self) -> np.ndarray:
        return self._codes // self._order

    @property
    def bars(self) -> np.ndarray:
        return self._codes % self._order

    def __len__(self) -> int:
        return int(self._codes.size)

    def __iter__(self) -> Iterator[Letter]:
        for c in self._codes:
            yield Letter.from_code(c, self._order)

    def __getitem__(self, idx):
        if isinstance(idx, slice):
            return Word(self._codes[idx], self._order)
        return Letter.from_code(self._codes[idx], self._order)

    def __add__(self, other: "Word") -> "Word":
        if other.order != self.order:
            raise ValueError("cannot concatenate words of different order")
        return Word(np.concatenate([self._codes, other._codes]), self._order)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return self._order == other._order and np.array_equal(self._codes, other._codes)

    def __lt__(self, other: "Word") -> bool:
        return tuple(self._codes.tolist()) < tuple(other._codes.tolist())

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._order, self._codes.tobytes()))
        return self._hash

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r}, order={self._order})"

    def __str__(self) -> str:
        return format_word(self)


def bar_shift_word(word: Word, t: int) -> Word:
    """Apply ``bar_shift`` letterwise."""
    n = word.order
    return Word(word.bases * n + (word.bars + t) % n, n)


@dataclass(frozen=True, eq=False)
class CoefficientSequence:
    """A finite sequence of n-th roots of unity, stored as exponent residues.

    ``exponents[i] = j`` means the (i+1)-th value is ``omega**j``.
    """

    exponents: np.ndarray
    order: int

    def __post_init__(self):
        exps = _frozen(self.exponents)
        if exps.size and (exps.min() < 0 or exps.max() >= self.order):
            raise ValueError(f"exponent residues must lie in 0..{self.order - 1}")
        object.__setattr__(self, "exponents", exps)

    @property
    def values(self) -> np.ndarray:
        return roots_of_unity(self.order)[self.exponents]

    def __len__(self) -> int:
        return int(self.exponents.size)

    def __getitem__(self, idx):
        if isinstance(idx, slice):
            return CoefficientSequence(self.exponents[idx], self.order)
        return roots_of_unity(self.order)[self.exponents[idx]]

    def __eq__(self, other) -> bool:
        if not isinstance(other, CoefficientSequence):
            return NotImplemented
        return self.order == other.order and np.array_equal(self.exponents, other.exponents)

    def signs(self) -> np.ndarray:
        """Values as integers +1/-1 (order 2 only)."""
        if self.order != 2:
            raise ValueError("signs() is only defined for order 2")
        return 1 - 2 * self.exponents

    def __repr__(self) -> str:
        head = ",".join(str(e) for e in self.exponents[:16])
        more = ",..." if len(self) > 16 else ""
        return f"CoefficientSequence(order={self.order}, exponents=[{head}{more}], len={len(self)})"


def factor_map(word: Word) -> CoefficientSequence:
    """Send a letter with ``b`` bars to ``omega**b``, forgetting the base letter."""
    if len(word) == 0:
        raise ValueError("factor_map needs a nonempty word")
    return CoefficientSequence(word.bars, word.order)


# -- token codec ------------------------------------------------------------

_TOKEN = re.compile(r"([A-Z])(\d*)\Z")


def _token(base: int, bars: int) -> str:
    if base < len(BASE_SYMBOLS):
        return f"{BASE_SYMBOLS[base]}{bars}"
    raise ValueError(f"no symbol for base index {base}")


def parse_word(text: str, order: int) -> Word:
    """Parse whitespace-separated ``<letter><bars>`` tokens, e.g. ``"A0 B1"``.

    A bare letter means zero bars.
    """
    codes = []
    for pos, tok in enumerate(text.split(), start=1):
        m = _TOKEN.match(tok)
        if m is None:
            raise WordParseError(f"token {pos} ({tok!r}): expected <letter><bars>")
        bars = int(m.group(2)) if m.group(2) else 0
        if bars >= order:
            raise WordParseError(
                f"token {pos} ({tok!r}): bar count {bars} not below order {order}"
            )
        codes.append(BASE_SYMBOLS.index(m.group(1)) * order + bars)
    return Word(codes, order)


def format_word(word: Word) -> str:
    return " ".join(_token(b, t) for b, t in zip(word.bases.tolist(), word.bars.tolist()))


# -- factors ----------------------------------------------------------------

def _windows(codes: np.ndarray, length: int) -> np.ndarray:
    return np.unique(np.lib.stride_tricks.sliding_window_view(codes, length), axis=0)


def subword_set(word: Word, length: int) -> frozenset[Word]:
    """All contiguous factors of ``word`` with the given length."""
    if not 1 <= length <= len(word):
        raise ValueError(f"factor length {length} outside 1..{len(word)}")
    return frozenset(Word(row, word.order) for row in _windows(word.codes, length))
