"""Executable checks tying the recurrences, substitutions and spectra together.

Each check returns a :class:`CheckResult`; a suite collects them into a
:class:`VerificationReport` that serialises to versioned JSON. Checks marked
``kind="evidence"`` rest on a finite fixed-point prefix; ``"exact"`` checks
are decided on exact integer data; ``"numeric"`` checks compare floats
against a stated tolerance.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .alphabet import Letter, Word, factor_map, parse_word
from .recurrence import Binary, ConstructionSpec, Fourier, SignProgram, coefficients, evolve
from .spectral import grid_sums, root_n_bound, running_sup
from .substitution import (
    eigenvalues,
    fixed_point_prefix,
    legal_words,
    rule_from_signs,
    s_minus,
    s_plus,
    substitution_matrix,
)

__all__ = [
    "CheckResult",
    "VerificationReport",
    "family_label",
    "check_correspondence",
    "check_norm_conservation",
    "check_bounds",
    "check_known_spectra",
    "check_hull_facts",
    "run_suite",
    "SUITE_FAMILIES",
]

SCHEMA_VERSION = 1

SUITE_FAMILIES = (
    Binary(SignProgram.parse("+")),
    Binary(SignProgram.parse("-")),
    Binary(SignProgram.parse("-+")),
    Binary(SignProgram.parse("+-")),
    Binary(SignProgram.parse("++-")),
    Fourier(3),
    Fourier(4),
)

# (name, eigenvalues) as tabulated for the four binary rules
KNOWN_SPECTRA = {
    "+": [2, math.sqrt(2), -math.sqrt(2), 0],
    "-": [2, 1 + 1j, 1 - 1j, 0],
    "-+": [4, 2, 2, 0],
    "+-": [4, 2, -2, 0],
}
EIGHTH_POWER_SPECTRUM = [256, 16, 16, 0]


@dataclass
class CheckResult:
    name: str
    anchor: str
    status: str
    measured: object
    expected: object
    margin: float
    kind: str = "exact"
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"


@dataclass
class VerificationReport:
    checks: list[CheckResult]
    suite: str = ""

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "suite": self.suite,
            "overall": "pass" if self.overall else "fail",
            "n_checks": len(self.checks),
            "n_failed": len(self.failures()),
            "checks": [_jsonable(asdict(c)) for c in self.checks],
        }


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, np.generic):
        return obj.item()
    return obj


def _status(ok: bool) -> str:
    return "pass" if ok else "fail"


def family_label(family) -> str:
    if isinstance(family, Fourier):
        return f"fourier:{family.n}"
    prog = family.signs
    return f"signs:{prog.word()}" if prog.periodic else f"explicit:{prog.word()}"


# -- checks -----------------------------------------------------------------

def check_correspondence(program: SignProgram | str, k: int) -> CheckResult:
    """Recurrence coefficients at level p*k versus phi of the substitution fixed point."""
    if isinstance(program, str):
        program = SignProgram.parse(program)
    level = program.period * k
    eps = coefficients(ConstructionSpec(Binary(program), level))
    rule = rule_from_signs(program)
    word = fixed_point_prefix(rule, Letter(0, 0, 2), 2 ** level)
    phi = factor_map(word)
    mismatches = int(np.count_nonzero(eps.exponents != phi.exponents))
    return CheckResult(
        name=f"correspondence[{program.word()},k={k}]",
        anchor="coefficients of P_k equal phi(fixed point of S_{s0...s(p-1)}) for periodic signs",
        status=_status(mismatches == 0 and len(eps) == len(phi)),
        measured=mismatches,
        expected=0,
        margin=float(-mismatches),
        kind="exact",
        detail={"terms": len(eps), "head": eps.exponents[:16].tolist()},
    )


def check_norm_conservation(family, k: int, grid=1024) -> CheckResult:
    """sum_j |P_k^(j)(x)|^2 = n^(k+1) at every grid point."""
    state = evolve(ConstructionSpec(family, k))
    n = state.order
    total = sum(
        np.abs(grid_sums(state.sequence(j).values, grid)) ** 2
        for j in range(len(state.components))
    )
    target = float(n ** (k + 1))
    dev = float(np.max(np.abs(total - target)) / target)
    tol = 1e-9 * (k + 1)
    return CheckResult(
        name=f"norm[{family_label(family)},k={k}]",
        anchor="sum_j |P_k^(j)(x)|^2 = n^(k+1) on |x|=1",
        status=_status(dev <= tol),
        measured=dev,
        expected=tol,
        margin=tol - dev,
        kind="numeric",
        detail={"target": target, "grid": int(total.size)},
    )


def check_bounds(family, k: int, grid=1024) -> CheckResult:
    """Level bound, partial-sum bound and root-N constant bound, pointwise on the grid."""
    state = evolve(ConstructionSpec(family, k))
    n = state.order
    size = n ** k
    tol = 1e-6

    level_bound = n ** ((k + 1) / 2)
    level_sup = max(
        float(np.abs(grid_sums(state.sequence(j).values, grid)).max())
        for j in range(len(state.components))
    )

    eps = state.sequence(0)
    sups = running_sup(eps, size, grid)
    lo = n ** (k - 1) if k >= 1 else 0
    partial_bound = (n + math.sqrt(n)) * n ** (k / 2)
    partial_sup = float(sups[lo:size].max())

    c = root_n_bound(n)
    Ns = np.arange(1, size + 1)
    ratio = sups / np.sqrt(Ns)
    worst_c = float(ratio.max())

    slacks = {
        "level": level_bound - level_sup,
        "partial": partial_bound - partial_sup,
        "root_n": c - worst_c,
    }
    margin = min(slacks.values())
    return CheckResult(
        name=f"bounds[{family_label(family)},k={k}]",
        anchor="|P_k| <= n^((k+1)/2); |P_k|m| <= (n+sqrt n) n^(k/2); |S_N| <= n(1+sqrt n) sqrt N",
        status=_status(margin >= -tol),
        measured={"level_sup": level_sup, "partial_sup": partial_sup, "root_n_constant": worst_c},
        expected={"level": level_bound, "partial": partial_bound, "root_n": c},
        margin=float(margin),
        kind="numeric",
        detail={"slacks": slacks},
    )


def _multiset_gap(measured, expected) -> float:
    """Largest distance after greedy nearest pairing of two equal-size multisets."""
    if len(measured) != len(expected):
        return math.inf
    left = [complex(z) for z in measured]
    worst = 0.0
    for e in sorted((complex(z) for z in expected), key=lambda z: (-abs(z), z.real, z.imag)):
        i = min(range(len(left)), key=lambda i: abs(left[i] - e))
        worst = max(worst, abs(left[i] - e))
        left.pop(i)
    return worst


def check_known_spectra() -> list[CheckResult]:
    out = []
    for word, table in KNOWN_SPECTRA.items():
        ev = eigenvalues(substitution_matrix(rule_from_signs(word)))
        gap = _multiset_gap(ev, table)
        out.append(CheckResult(
            name=f"spectrum[S{word}]",
            anchor=f"eigenvalues of the substitution matrix of S{word}",
            status=_status(gap <= 1e-9),
            measured=ev,
            expected=[complex(z) for z in table],
            margin=1e-9 - gap,
            kind="numeric",
        ))
    plus8 = eigenvalues(np.linalg.matrix_power(substitution_matrix(s_plus()), 8))
    minus8 = eigenvalues(np.linalg.matrix_power(substitution_matrix(s_minus()), 8))
    gap = max(_multiset_gap(plus8, minus8), _multiset_gap(plus8, EIGHTH_POWER_SPECTRUM))
    out.append(CheckResult(
        name="spectrum[eighth powers]",
        anchor="spectra of M(S+)^8 and M(S-)^8 coincide",
        status=_status(gap <= 1e-6),
        measured={"S+^8": plus8, "S-^8": minus8},
        expected=[complex(z) for z in EIGHTH_POWER_SPECTRUM],
        margin=1e-6 - gap,
        kind="numeric",
    ))
    # products MN and NM always share their spectrum
    mp = eigenvalues(substitution_matrix(rule_from_signs("-+")))
    pm = eigenvalues(substitution_matrix(rule_from_signs("+-")))
    gap = _multiset_gap(mp, pm)
    out.append(CheckResult(
        name="spectrum[S-+ vs S+-]",
        anchor="M(S-)M(S+) and M(S+)M(S-) have the same characteristic polynomial",
        status=_status(gap <= 1e-9),
        measured=mp,
        expected=pm,
        margin=1e-9 - gap,
        kind="numeric",
    ))
    return out


HULL_RULES = ("+", "-", "-+", "+-")
PREFIX = 1 << 16


def _occurrences(codes: np.ndarray, pattern: np.ndarray) -> np.ndarray:
    win = np.lib.stride_tricks.sliding_window_view(codes, pattern.size)
    return np.flatnonzero((win == pattern).all(axis=1))


def check_hull_facts(prefix_length: int = PREFIX) -> list[CheckResult]:
    out = []
    sp, sm = s_plus(), s_minus()
    six_p, six_m = legal_words(sp, 6), legal_words(sm, 6)

    for text in ("B0 A0 B0 A0 B1 A1", "B0 A0 B0 A1 B0 A0"):
        w = parse_word(text, 2)
        ok = w in six_p and w not in six_m
        out.append(CheckResult(
            name=f"legal6[{text}]",
            anchor="a six-letter word legal for S+ but not for S-",
            status=_status(ok),
            measured={"in_S+": w in six_p, "in_S-": w in six_m},
            expected={"in_S+": True, "in_S-": False},
            margin=0.0 if ok else -1.0,
        ))
    minus_only = sorted(six_m - six_p)
    out.append(CheckResult(
        name="legal6[S- only]",
        anchor="some six-letter word is legal for S- but not for S+",
        status=_status(bool(minus_only)),
        measured=len(minus_only),
        expected=">= 1",
        margin=float(len(minus_only) - 1),
        detail={"examples": [str(w) for w in minus_only[:4]]},
    ))
    phi_p = {tuple(w.bars.tolist()) for w in six_p}
    phi_m = {tuple(w.bars.tolist()) for w in six_m}
    target = (0, 0, 0, 0, 1, 1)
    ok = target in phi_p and target not in phi_m
    out.append(CheckResult(
        name="legal6[phi 1111(-1)(-1)]",
        anchor="phi(BABA B1 A1) occurs in phi(w+) but not in phi(w-)",
        status=_status(ok),
        measured={"in_phi_S+": target in phi_p, "in_phi_S-": target in phi_m},
        expected={"in_phi_S+": True, "in_phi_S-": False},
        margin=0.0 if ok else -1.0,
    ))

    abab = parse_word("A0 B0 A0 B0", 2)
    baba = parse_word("B0 A0 B0 A0", 2)
    for word in HULL_RULES:
        legal4 = legal_words(rule_from_signs(word), 4)
        ok = abab not in legal4 and baba in legal4
        out.append(CheckResult(
            name=f"legal4[S{word}]",
            anchor="ABAB is not legal while BABA is legal",
            status=_status(ok),
            measured={"ABAB": abab in legal4, "BABA": baba in legal4},
            expected={"ABAB": False, "BABA": True},
            margin=0.0 if ok else -1.0,
        ))

    for word in HULL_RULES + ("++-",):
        rule = rule_from_signs(word)
        codes = fixed_point_prefix(rule, Letter(0, 0, 2), prefix_length).codes
        bars = codes % 2
        starts = _occurrences(bars, np.zeros(4, dtype=np.int64))
        blocks = np.lib.stride_tricks.sliding_window_view(codes, 4)[starts]
        preimages = {tuple(b) for b in blocks.tolist()}
        ok = preimages == {tuple(baba.codes.tolist())}
        out.append(CheckResult(
            name=f"preimage1111[S{word}]",
            anchor="the word 1111 has the unique preimage BABA",
            status=_status(ok),
            measured=sorted(str(Word(p, 2)) for p in preimages),
            expected=["B0 A0 B0 A0"],
            margin=0.0 if ok else -1.0,
            kind="evidence",
            detail={"prefix": prefix_length, "occurrences": int(starts.size)},
        ))
        hits = _occurrences(codes, baba.codes)
        gaps = np.diff(hits)
        max_gap = int(gaps.max()) if gaps.size else -1
        # the gap before the first hit counts too
        lead = int(hits[0]) if hits.size else -1
        ok = hits.size >= 2
        out.append(CheckResult(
            name=f"gapsBABA[S{word}]",
            anchor="BABA recurs with bounded gaps",
            status=_status(ok),
            measured=max(max_gap, lead),
            expected="finite",
            margin=0.0 if ok else -1.0,
            kind="evidence",
            detail={"prefix": prefix_length, "occurrences": int(hits.size)},
        ))
    return out


# -- suites -----------------------------------------------------------------

def _level_for(n: int, max_terms: int) -> int:
    k = 0
    while n ** (k + 1) <= max_terms:
        k += 1
    return k


SUITES = {
    # correspondence terms, norm terms, bound terms, grid
    "fast": dict(corr=1 << 10, norm=1 << 10, bounds=1 << 8, grid=256, prefix=1 << 12),
    "default": dict(corr=1 << 16, norm=1 << 16, bounds=1 << 12, grid=1024, prefix=1 << 16),
}


def run_suite(name: str = "default") -> VerificationReport:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    cfg = SUITES[name]
    checks: list[CheckResult] = []
    for family in SUITE_FAMILIES:
        n = family.order
        if isinstance(family, Binary):
            p = family.signs.period
            k = max(1, _level_for(2, cfg["corr"]) // p)
            checks.append(check_correspondence(family.signs, k))
        checks.append(check_norm_conservation(family, _level_for(n, cfg["norm"]), cfg["grid"]))
        checks.append(check_bounds(family, _level_for(n, cfg["bounds"]), cfg["grid"]))
    checks.extend(check_known_spectra())
    checks.extend(check_hull_facts(cfg["prefix"]))
    checks.sort(key=lambda c: c.name)
    return VerificationReport(checks, name)
