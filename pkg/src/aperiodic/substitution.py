"""Constant-length substitutions that commute with the bar action.

A rule is stored as an integer table ``table[code]`` holding the codes of the
image of every letter, so applying a rule to a word is a single fancy-index.
Only the images of the unbarred letters are chosen; barred images follow from
equivariance: ``image(bar^t a) = bar^t image(a)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Mapping

import numpy as np

from .alphabet import Letter, Word, bar_shift_word, parse_word, _windows
from .charpoly import integer_eigenvalues
from .recurrence import SignProgram

__all__ = [
    "SubstitutionRule",
    "NotPrimitiveError",
    "make_rule",
    "s_plus",
    "s_minus",
    "fourier_rule",
    "compose",
    "rule_from_signs",
    "apply",
    "fixed_point_prefix",
    "letter_at",
    "letters_at",
    "substitution_matrix",
    "eigenvalues",
    "is_primitive",
    "legal_words",
    "prefix_scan_words",
]


class NotPrimitiveError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class SubstitutionRule:
    bases: int
    order: int
    table: np.ndarray
    name: str = ""

    def __post_init__(self):
        table = np.array(self.table, dtype=np.int64)
        size = self.bases * self.order
        if table.ndim != 2 or table.shape[0] != size:
            raise ValueError(f"image table must have {size} rows")
        if table.size and (table.min() < 0 or table.max() >= size):
            raise ValueError("image table refers to letters outside the alphabet")
        table.setflags(write=False)
        object.__setattr__(self, "table", table)

    @classmethod
    def from_images(cls, images: Mapping[int, Word] | Iterable[Word], name: str = "") -> "SubstitutionRule":
        """Build a rule from the images of the unbarred base letters."""
        if isinstance(images, Mapping):
            images = [images[b] for b in sorted(images)]
        images = list(images)
        if not images:
            raise ValueError("need at least one base-letter image")
        n = images[0].order
        length = len(images[0])
        if length == 0:
            raise ValueError("images must be nonempty")
        rows = []
        for b, img in enumerate(images):
            if img.order != n or len(img) != length:
                raise ValueError(
                    f"image of base letter {b} must have order {n} and length {length}"
                )
            for t in range(n):
                rows.append(bar_shift_word(img, t).codes)
        return cls(len(images), n, np.array(rows), name)

    @property
    def length(self) -> int:
        return int(self.table.shape[1])

    @property
    def size(self) -> int:
        return self.bases * self.order

    def image(self, letter: Letter) -> Word:
        return Word(self.table[letter.code], self.order)

    def __call__(self, word: Word) -> Word:
        return apply(self, word)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SubstitutionRule):
            return NotImplemented
        return (
            self.bases == other.bases
            and self.order == other.order
            and np.array_equal(self.table, other.table)
        )

    def __hash__(self) -> int:
        return hash((self.bases, self.order, self.table.tobytes()))

    def describe(self) -> list[str]:
        """One ``X0 -> ...`` line per letter, in code order."""
        lines = []
        for code in range(self.size):
            lhs = str(Letter.from_code(code, self.order))
            lines.append(f"{lhs} -> {Word(self.table[code], self.order)}")
        return lines

    def __repr__(self) -> str:
        label = self.name or f"rule(B={self.bases}, n={self.order}, L={self.length})"
        return f"SubstitutionRule<{label}>"


def s_plus() -> SubstitutionRule:
    return SubstitutionRule.from_images([parse_word("A0 B0", 2), parse_word("A0 B1", 2)], "S+")


def s_minus() -> SubstitutionRule:
    return SubstitutionRule.from_images([parse_word("A0 B1", 2), parse_word("A0 B0", 2)], "S-")


def fourier_rule(n: int) -> SubstitutionRule:
    """Order-n rule read off the Fourier matrix.

    Base letter j maps to the word whose r-th letter is base letter r carrying
    ``(r-1)(j-1) mod n`` bars.
    """
    if n < 2:
        raise ValueError(f"Fourier order must be at least 2, got {n}")
    images = [Word([r * n + (r * j) % n for r in range(n)], n) for j in range(n)]
    return SubstitutionRule.from_images(images, f"fourier({n})")


def make_rule(kind: str, n: int | None = None) -> SubstitutionRule:
    """``make_rule("s_plus")``, ``make_rule("s_minus")`` or ``make_rule("fourier", n)``."""
    if kind == "s_plus":
        return s_plus()
    if kind == "s_minus":
        return s_minus()
    if kind == "fourier":
        if n is None:
            raise ValueError("fourier rule needs an order n")
        return fourier_rule(n)
    raise ValueError(f"unknown rule kind {kind!r}")


def compose(f: SubstitutionRule, g: SubstitutionRule) -> SubstitutionRule:
    """``compose(f, g)(a) = f(g(a))``."""
    if (f.bases, f.order) != (g.bases, g.order):
        raise ValueError("cannot compose rules over different alphabets")
    table = f.table[g.table].reshape(f.size, f.length * g.length)
    name = f"{f.name}o{g.name}" if f.name and g.name else ""
    return SubstitutionRule(f.bases, f.order, table, name)


def rule_from_signs(program: SignProgram | str) -> SubstitutionRule:
    """S_{s0} o S_{s1} o ... o S_{s(p-1)} for one period of a sign program."""
    if isinstance(program, str):
        program = SignProgram.parse(program)
    rules = [s_plus() if s > 0 else s_minus() for s in program.signs]
    rule = reduce(compose, rules)
    word = program.word()
    return SubstitutionRule(rule.bases, rule.order, rule.table, f"S{word}")


def apply(rule: SubstitutionRule, word: Word) -> Word:
    if word.order != rule.order:
        raise ValueError("word and rule have different orders")
    if len(word) == 0:
        return word
    if word.codes.max() >= rule.size:
        raise ValueError("word uses letters outside the rule's alphabet")
    return Word(rule.table[word.codes].reshape(-1), rule.order)


def _check_seed(rule: SubstitutionRule, seed: Letter) -> int:
    if seed.order != rule.order or seed.code >= rule.size:
        raise ValueError(f"seed {seed} is not a letter of this rule")
    if rule.table[seed.code, 0] != seed.code:
        raise ValueError(f"seed {seed} does not begin its own image; no fixed point from it")
    return seed.code


def fixed_point_prefix(rule: SubstitutionRule, seed: Letter, length: int) -> Word:
    """First ``length`` letters of the one-sided fixed point grown from ``seed``."""
    code = _check_seed(rule, seed)
    if length < 0:
        raise ValueError("length must be non-negative")
    codes = np.array([code], dtype=np.int64)
    while codes.size < length:
        codes = rule.table[codes].reshape(-1)
    return Word(codes[:length], rule.order)


def letters_at(rule: SubstitutionRule, seed: Letter, positions) -> np.ndarray:
    """Letter codes of the fixed point at 1-based ``positions`` (vectorised)."""
    code = _check_seed(rule, seed)
    pos = np.asarray(positions, dtype=np.int64)
    if pos.size and pos.min() < 1:
        raise ValueError("positions are 1-based")
    idx = pos - 1
    length = rule.length
    ndigits = 1
    top = int(idx.max()) if idx.size else 0
    while length ** ndigits <= top:
        ndigits += 1
    cur = np.full(idx.shape, code, dtype=np.int64)
    for e in range(ndigits - 1, -1, -1):
        digit = (idx // length ** e) % length
        cur = rule.table[cur, digit]
    return cur


def letter_at(rule: SubstitutionRule, seed: Letter, pos: int) -> Letter:
    """Fixed-point letter at 1-based ``pos``, read from the base-L digits of pos-1."""
    return Letter.from_code(int(letters_at(rule, seed, [pos])[0]), rule.order)


def substitution_matrix(rule: SubstitutionRule) -> np.ndarray:
    """``M[a, b]`` = number of occurrences of letter a in the image of letter b."""
    m = np.zeros((rule.size, rule.size), dtype=np.int64)
    for b in range(rule.size):
        np.add.at(m[:, b], rule.table[b], 1)
    return m


def eigenvalues(matrix) -> list[complex]:
    """Eigenvalue multiset of an integer matrix, sorted by (-|z|, arg z)."""
    return integer_eigenvalues(matrix)


# -- language ---------------------------------------------------------------

def _reachable(rule: SubstitutionRule, code: int) -> np.ndarray:
    seen = {code}
    frontier = [code]
    while frontier:
        nxt = []
        for c in frontier:
            for d in rule.table[c].tolist():
                if d not in seen:
                    seen.add(d)
                    nxt.append(d)
        frontier = nxt
    return np.array(sorted(seen), dtype=np.int64)


def is_primitive(matrix) -> bool:
    """Some power of the non-negative matrix is strictly positive (Wielandt bound)."""
    a = (np.asarray(matrix) > 0).astype(np.int64)
    r = a.shape[0]
    p = a.copy()
    for _ in range((r - 1) ** 2 + 1):
        if p.all():
            return True
        p = ((p @ a) > 0).astype(np.int64)
    return bool(p.all())


def legal_words(rule: SubstitutionRule, length: int, seed: Letter | None = None) -> frozenset[Word]:
    """Length-``length`` factors of the fixed-point language.

    Legal two-letter words are closed under taking two-letter factors of
    images; length-``length`` factors are then read off iterated images of the
    legal two-letter words until the set is stable and the images are long
    enough to cover every legal word.
    """
    if length < 1:
        raise ValueError("length must be at least 1")
    seed = seed or Letter(0, 0, rule.order)
    start = seed.code
    reach = _reachable(rule, start)
    sub = substitution_matrix(rule)[np.ix_(reach, reach)]
    if not is_primitive(sub):
        raise NotPrimitiveError(
            "rule is not primitive on the letters reachable from the seed; "
            "use prefix_scan_words for prefix-based evidence instead"
        )

    pairs = set()
    for c in reach.tolist():
        pairs.update(map(tuple, _windows(rule.table[c], 2).tolist()))
    frontier = set(pairs)
    while frontier:
        arr = np.array(sorted(frontier), dtype=np.int64)
        imgs = rule.table[arr].reshape(len(arr), -1)
        new = set()
        for row in imgs:
            new.update(map(tuple, _windows(row, 2).tolist()))
        frontier = new - pairs
        pairs |= new

    words = np.array(sorted(pairs), dtype=np.int64)
    covered = 2
    previous = None
    while True:
        if covered >= length:
            found = set()
            for row in words:
                found.update(map(tuple, _windows(row, length).tolist()))
            if covered // 2 >= length - 1 and found == previous:
                break
            previous = found
        words = rule.table[words].reshape(len(words), -1)
        covered = words.shape[1]
    return frozenset(Word(w, rule.order) for w in previous)


def prefix_scan_words(rule: SubstitutionRule, length: int, prefix_length: int = 1 << 16,
                      seed: Letter | None = None) -> frozenset[Word]:
    """Factors seen in a finite fixed-point prefix (evidence, not a proof)."""
    seed = seed or Letter(0, 0, rule.order)
    prefix = fixed_point_prefix(rule, seed, prefix_length)
    return frozenset(Word(row, rule.order) for row in _windows(prefix.codes, length))
