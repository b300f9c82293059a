"""Command-line front end: ``aperiodic gen|subst|spectrum|verify``.

Exit codes: 0 success, 1 verification failure, 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import sys
import tempfile
from pathlib import Path

import numpy as np

from . import __version__
from .alphabet import CoefficientSequence, Letter, format_word
from .recurrence import Binary, ConstructionSpec, Fourier, SignProgram, coefficients
from .spectral import UnitCircleGrid, analyze, grid_sums
from .substitution import (
    eigenvalues,
    fixed_point_prefix,
    fourier_rule,
    rule_from_signs,
    substitution_matrix,
)
from .verify import run_suite

__all__ = ["parse_spec", "spec_echo", "main", "run", "build_parser", "UsageError"]

_SPEC = re.compile(r"(?:(rs)|signs:([+-]*)|fourier:(\d*))\Z")


class UsageError(ValueError):
    pass


def parse_spec(text: str):
    """``rs`` | ``signs:<word over +->`` | ``fourier:<n>`` -> Binary or Fourier family."""
    text = text.strip()
    m = _SPEC.match(text)
    if m is None:
        pos = _first_bad_position(text)
        raise UsageError(
            f"construction {text!r}: unexpected input at position {pos}; "
            "expected 'rs', 'signs:<+/- word>' or 'fourier:<n>'"
        )
    if m.group(1):
        return Binary(SignProgram.parse("+"))
    if m.group(2) is not None and text.startswith("signs:"):
        if not m.group(2):
            raise UsageError("construction 'signs:' needs a nonempty sign word")
        return Binary(SignProgram.parse(m.group(2)))
    digits = m.group(3)
    if not digits:
        raise UsageError("construction 'fourier:' needs an order n")
    n = int(digits)
    if n < 2:
        raise UsageError(f"fourier order must be at least 2, got {n}")
    return Fourier(n)


def _first_bad_position(text: str) -> int:
    """1-based position of the first character that cannot continue a valid spec."""
    forms = (("signs:", "+-"), ("fourier:", "0123456789"), ("rs", ""))
    for keyword, allowed in forms:
        if text.startswith(keyword):
            for j, ch in enumerate(text[len(keyword):]):
                if ch not in allowed:
                    return len(keyword) + j + 1
            return len(text) + 1
    best = 0
    for keyword, _ in forms:
        k = 0
        while k < min(len(keyword), len(text)) and keyword[k] == text[k]:
            k += 1
        best = max(best, k)
    return best + 1


def spec_echo(family) -> str:
    if isinstance(family, Fourier):
        return "fourier:2 (equivalent to rs)" if family.n == 2 else f"fourier:{family.n}"
    word = family.signs.word()
    return "signs:+ (rs)" if word == "+" else f"signs:{word}"


def _rule_for(family):
    if isinstance(family, Fourier):
        return fourier_rule(family.n)
    return rule_from_signs(family.signs)


# -- output helpers ---------------------------------------------------------

def _fmt(x: float) -> str:
    return "%.12g" % (float(x) + 0.0)


def _write(path: str | None, text: str) -> None:
    """Write atomically (temp file + rename), or to stdout when path is None/'-'."""
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _metadata(command: str) -> dict:
    return {"tool": "aperiodic", "version": __version__, "command": command}


def sequence_csv(eps: CoefficientSequence, letters=None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    vals = eps.values
    header = ["index", "re", "im", "exponent"]
    if letters is not None:
        header.insert(1, "letter")
    w.writerow(header)
    for i, (v, e) in enumerate(zip(vals.tolist(), eps.exponents.tolist()), start=1):
        row = [i, _fmt(v.real), _fmt(v.imag), e]
        if letters is not None:
            row.insert(1, letters[i - 1])
        w.writerow(row)
    return buf.getvalue()


def read_sequence_csv(path: str, order: int | None = None) -> CoefficientSequence:
    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(csv.DictReader(fh))
    if not rows or "exponent" not in rows[0]:
        raise UsageError(f"{path}: expected a CSV with an 'exponent' column")
    exps = np.array([int(r["exponent"]) for r in rows], dtype=np.int64)
    if order is None:
        order = _infer_order(rows, exps)
    return CoefficientSequence(exps, order)


def _infer_order(rows, exps) -> int:
    for r, e in zip(rows, exps.tolist()):
        if e == 0:
            continue
        angle = math.atan2(float(r["im"]), float(r["re"])) % (2 * math.pi)
        if angle == 0:
            continue
        n = round(2 * math.pi * e / angle)
        if n > e:
            return n
    return max(2, int(exps.max()) + 1 if exps.size else 2)


# -- subcommands ------------------------------------------------------------

def cmd_gen(args) -> int:
    family = parse_spec(args.construction)
    eps = coefficients(ConstructionSpec(family, args.k))
    if args.format == "csv":
        text = sequence_csv(eps)
    else:
        text = _json({
            "construction": spec_echo(family),
            "order": eps.order,
            "level": args.k,
            "length": len(eps),
            "exponents": eps.exponents.tolist(),
        })
    _write(args.out, text)
    if args.out not in (None, "-"):
        print(f"gen: {spec_echo(family)} level {args.k}: {len(eps)} terms -> {args.out}")
    return 0


def cmd_subst(args) -> int:
    family = parse_spec(args.rule)
    rule = _rule_for(family)
    show = args.show
    if show == "rule":
        text = "\n".join(rule.describe()) + "\n"
    elif show == "matrix":
        m = substitution_matrix(rule)
        labels = [str(Letter.from_code(c, rule.order)) for c in range(rule.size)]
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["letter", *labels])
        for label, row in zip(labels, m.tolist()):
            w.writerow([label, *row])
        text = buf.getvalue()
    elif show == "eigenvalues":
        ev = eigenvalues(substitution_matrix(rule))
        text = _json([{"re": z.real, "im": z.imag} for z in ev])
    else:
        word = fixed_point_prefix(rule, Letter(0, 0, rule.order), args.length)
        if args.format == "csv":
            eps = CoefficientSequence(word.bars, word.order)
            text = sequence_csv(eps, letters=format_word(word).split())
        else:
            text = format_word(word) + "\n"
    _write(args.out, text)
    return 0


def _level_reaching(n: int, N: int) -> int:
    k = 0
    while n ** k < N:
        k += 1
    return k


def cmd_spectrum(args) -> int:
    if bool(args.input) == bool(args.construction):
        raise UsageError("give exactly one of --input or --construction")
    if args.input:
        eps = read_sequence_csv(args.input, args.order)
        source = {"input": args.input}
    else:
        family = parse_spec(args.construction)
        if args.k is None:
            if args.N is None:
                raise UsageError("--construction needs --k or --N")
            k = _level_reaching(family.order, args.N)
        else:
            k = args.k
        eps = coefficients(ConstructionSpec(family, k))
        source = {"construction": spec_echo(family), "level": k}
    N = args.N or len(eps)
    if N > len(eps):
        raise UsageError(f"--N {N} exceeds the sequence length {len(eps)}")
    grid = UnitCircleGrid(args.grid)
    report = analyze(eps, N, grid, args.max_lag)
    body = {"metadata": _metadata("spectrum"), "source": source, "order": eps.order,
            **report.to_dict(include_arrays=True)}
    if args.out:
        _write(args.out, _json(body))
    if args.emit_plot_data:
        _emit_plot_data(Path(args.emit_plot_data), eps, N, grid, report)
    verdicts = " ".join(f"{k}={v['status']}" for k, v in report.bound_verdicts.items())
    print(f"spectrum: N={N} grid={grid.M} sup={_fmt(report.sup_abs)} "
          f"C_N={_fmt(report.root_n_constant)} {verdicts}")
    return 0


def _emit_plot_data(outdir: Path, eps, N, grid, report) -> None:
    theta = grid.angles
    _write(str(outdir / "periodogram.dat"),
           "".join(f"{_fmt(t)} {_fmt(v)}\n" for t, v in zip(theta.tolist(), report.periodogram.tolist())))
    _write(str(outdir / "autocorr.dat"),
           "".join(f"{m} {_fmt(z.real)} {_fmt(z.imag)}\n" for m, z in enumerate(report.autocorrelation.tolist())))
    sizes = sorted({eps.order ** j for j in range(64) if eps.order ** j <= N} | {N})
    lines = []
    for size in sizes:
        sup = float(np.abs(grid_sums(eps.values[:size], grid)).max())
        lines.append(f"{size} {_fmt(sup)}\n")
    _write(str(outdir / "supnorm.dat"), "".join(lines))


def cmd_verify(args) -> int:
    report = run_suite(args.suite)
    if args.out:
        _write(args.out, _json({"metadata": _metadata("verify"), **report.to_dict()}))
    failed = report.failures()
    status = "pass" if report.overall else "fail"
    names = ", ".join(c.name for c in failed)
    print(f"verify[{args.suite}]: {status} ({len(report.checks) - len(failed)}/{len(report.checks)})"
          + (f"; failed: {names}" if failed else ""))
    return 0 if report.overall else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="aperiodic",
        description="Rudin-Shapiro type substitution sequences and their spectra.",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="coefficient sequence of a construction")
    g.add_argument("--construction", required=True, help="rs | signs:<+-word> | fourier:<n>")
    g.add_argument("--k", type=int, required=True, help="recurrence level")
    g.add_argument("--format", choices=("csv", "json"), default="csv")
    g.add_argument("--out", help="output file (default stdout)")
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("subst", help="substitution rules, matrices, eigenvalues, fixed points")
    s.add_argument("--rule", required=True, help="rs | signs:<+-word> | fourier:<n>")
    s.add_argument("--show", choices=("rule", "matrix", "eigenvalues", "fixedpoint"), default="rule")
    s.add_argument("--length", type=int, default=16, help="fixed-point prefix length")
    s.add_argument("--format", choices=("tokens", "csv"), default="tokens")
    s.add_argument("--out")
    s.set_defaults(func=cmd_subst)

    sp = sub.add_parser(
        "spectrum",
        help="sup norm, periodogram and autocorrelation",
        description="Grid points are x_j = exp(+2 pi i j / M); sums run over x**1 .. x**N.",
    )
    sp.add_argument("--input", help="CSV with columns index,re,im,exponent")
    sp.add_argument("--order", type=int, help="order n of the input CSV (inferred if omitted)")
    sp.add_argument("--construction")
    sp.add_argument("--k", type=int)
    sp.add_argument("--N", type=int)
    sp.add_argument("--grid", type=int, default=4096)
    sp.add_argument("--max-lag", type=int, default=64)
    sp.add_argument("--out")
    sp.add_argument("--emit-plot-data", metavar="DIR")
    sp.set_defaults(func=cmd_spectrum)

    v = sub.add_parser("verify", help="run the verification suite")
    v.add_argument("--suite", choices=("default", "fast"), default="default")
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"aperiodic: I/O error on {exc.filename}: {exc.strerror}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"aperiodic: {exc}", file=sys.stderr)
        return 2


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
