"""Command-line front end: classify, verify, moments, identity, umbral, weights.

Exit codes: 0 ok, 1 usage or I/O, 2 degenerate or not admissible, 3 verification mismatch.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import awalgebra, families, orthogonality, umbral
from .errors import (
    DegenerateExtension,
    DegenerateFunctional,
    DegenerateSeed,
    FitFailed,
    InconsistentSpectrum,
    InvalidParams,
    NoKnownWeight,
    NotAdmissible,
    NotOrthogonal,
    NotUmbralClassical,
    SpectrumDegenerate,
    TwoDiagError,
)
from .scalars import Context, parse_scalar, render, to_json
from .spectrum import SpectrumPair, structure_constants

EXIT_OK, EXIT_USAGE, EXIT_DEGENERATE, EXIT_MISMATCH = 0, 1, 2, 3

FAMILIES = {
    "little-q-jacobi": ("LittleQJacobi", ("a", "b", "q")),
    "q-krawtchouk": ("QKrawtchouk", ("a", "size", "q")),
    "little-q-laguerre": ("LittleQLaguerre", ("a", "q")),
    "q-laguerre": ("QLaguerre", ("a", "q")),
    "alt-q-charlier": ("AltQCharlier", ("a", "q")),
    "stieltjes-wigert": ("StieltjesWigert", ("q",)),
    "trig-circle": ("TrigCircle", ("alpha", "beta", "omega")),
    "jacobi": ("Jacobi", ("alpha", "beta")),
    "laguerre": ("Laguerre", ("alpha",)),
    "bessel": ("Bessel", ("a",)),
    "little-minus-one-jacobi": ("LittleMinusOneJacobi", ("alpha", "beta")),
}
_INVERTIBLE = {"alt-q-charlier", "stieltjes-wigert"}
_NEGQ = {"little-q-jacobi", "q-krawtchouk", "little-q-laguerre", "q-laguerre", "alt-q-charlier",
         "stieltjes-wigert"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# output


class Emitter:
    """Streams tables and reports in one of three formats."""

    def __init__(self, fmt: str, stream, ctx: Context):
        self.fmt = fmt
        self.stream = stream
        self.ctx = ctx
        self._cols = None
        self._csv = csv.writer(stream, lineterminator="\n") if fmt == "csv" else None

    def _cell(self, x):
        if x is None:
            return ""
        if isinstance(x, (str, bool)):
            return x
        return render(x, self.ctx)

    def _jcell(self, x):
        if x is None or isinstance(x, (str, bool, int)):
            return x
        return to_json(x, self.ctx)

    def header(self, cols):
        self._cols = list(cols)
        if self.fmt == "csv":
            self._csv.writerow(self._cols)
        elif self.fmt == "pretty":
            self.stream.write("  ".join(f"{c:>14}" for c in self._cols) + "\n")

    def row(self, values):
        values = list(values)
        if self.fmt == "csv":
            self._csv.writerow([self._cell(v) for v in values])
        elif self.fmt == "json":
            self.stream.write(json.dumps(dict(zip(self._cols, (self._jcell(v) for v in values)))) + "\n")
        else:
            self.stream.write("  ".join(f"{str(self._cell(v)):>14}" for v in values) + "\n")
        self.stream.flush()

    def document(self, obj: dict):
        if self.fmt == "json":
            self.stream.write(json.dumps(obj, indent=2) + "\n")
        elif self.fmt == "csv":
            for key, value in _flatten(obj):
                self._csv.writerow([key, value])
        else:
            for key, value in _flatten(obj):
                self.stream.write(f"{key}: {value}\n")

    def summary(self, obj: dict):
        """Trailing summary; kept out of the CSV table so it stays parseable."""
        if self.fmt == "json":
            self.stream.write(json.dumps({"summary": obj}) + "\n")
        elif self.fmt == "csv":
            sys.stderr.write(_summary_line(obj) + "\n")
        else:
            self.stream.write(_summary_line(obj) + "\n")


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        if set(obj) in ({"num", "den"}, {"val", "bits"}, {"re", "im", "bits"}):
            yield prefix, _scalar_text(obj)
            return
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}[{i}]")
    else:
        yield prefix, "" if obj is None else obj


def _scalar_text(obj: dict) -> str:
    if "num" in obj:
        return obj["num"] if obj["den"] == "1" else f"{obj['num']}/{obj['den']}"
    if "val" in obj:
        return obj["val"]
    return f"({obj['re']}{'' if obj['im'].startswith('-') else '+'}{obj['im']}j)"


def _summary_line(obj: dict) -> str:
    return "summary: " + " ".join(f"{k}={v}" for k, v in _flatten(obj))


# ---------------------------------------------------------------------------
# inputs


def _context(args) -> Context:
    try:
        if args.tol is None:
            return Context(bits=args.bits)
        return Context(bits=args.bits, tol=Fraction(args.tol))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad precision settings: {exc}") from exc


def _param(args, name, ctx):
    text = getattr(args, name)
    if text is None:
        raise UsageError(f"--{name} is required for {args.source}")
    if name == "size":
        try:
            return int(text)
        except ValueError:
            raise UsageError(f"--size must be an integer, got {text!r}") from None
    try:
        return parse_scalar(text, exact=True, ctx=ctx)
    except ValueError as exc:
        raise UsageError(f"--{name}: {exc}") from exc


def build_tag(args, ctx: Context) -> families.FamilyTag:
    name = args.source
    cls_name, params = FAMILIES[name]
    values = [_param(args, p, ctx) for p in params]
    if args.inverted and name not in _INVERTIBLE:
        raise UsageError(f"--inverted does not apply to {name}")
    if args.negq and name not in _NEGQ:
        raise UsageError(f"--negq does not apply to {name}")
    cls = families.find_tag_class(cls_name)
    try:
        tag = cls(*values, inverted=True) if args.inverted else cls(*values)
        return families.NegQVariant(tag) if args.negq else tag
    except (InvalidParams, ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"invalid parameters for {name}: {exc}") from exc


def read_spectrum(path: str, ctx: Context) -> SpectrumPair:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return SpectrumPair.from_json(json.loads(text), ctx)
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"malformed spectrum file {path}: {exc}") from exc


def _source(args, ctx: Context, N: int):
    """``(tag or None, spectrum)`` from a family name or a spectrum file."""
    if args.source in FAMILIES:
        tag = build_tag(args, ctx)
        return tag, families.family_spectrum(tag, N, ctx)
    return None, read_spectrum(args.source, ctx)


# ---------------------------------------------------------------------------
# commands


def cmd_classify(args, out: Emitter) -> int:
    ctx = out.ctx
    _, spec = _source(args, ctx, args.n or 8)
    try:
        report = families.classify_report(spec)
    except NotAdmissible as exc:
        out.document({"tag": None, "violations": [
            {"rule": v.rule, "index": v.index, "detail": v.detail} for v in exc.violations]})
        return EXIT_DEGENERATE
    out.document(report.to_json(ctx))
    return EXIT_DEGENERATE if isinstance(report.tag, families.Degenerate) else EXIT_OK


def cmd_verify(args, out: Emitter) -> int:
    ctx = out.ctx
    if args.source not in FAMILIES:
        raise UsageError(f"verify needs a family name, got {args.source!r}")
    N = args.n or 10
    if N < 3:
        raise UsageError("verify needs --n >= 3")
    tag = build_tag(args, ctx)
    spec = families.family_spectrum(tag, N, ctx)
    closed = families.family_recurrence(tag, N, ctx)
    formula = orthogonality.recurrence_from_spectrum(spec)
    mom = orthogonality.moments_from_spectrum(spec)
    oracle = orthogonality.recurrence_from_polys(orthogonality.gram_schmidt_monic(mom, N), ctx)

    out.header(["n", "lambda", "mu", "b_closed", "b_spectrum", "b_oracle",
                "u_closed", "u_spectrum", "u_oracle", "match"])
    mismatches = 0
    for n in range(N):
        bs = (closed.b[n], formula.b[n], oracle.b[n])
        us = (closed.u_at(n), formula.u_at(n), oracle.u_at(n)) if n else (None, None, None)
        ok = all(ctx.close(bs[0], x) for x in bs[1:])
        if n:
            ok = ok and all(ctx.close(us[0], x) for x in us[1:])
        mismatches += not ok
        out.row([n, spec.lam[n], spec.mu[n], *bs, *us, ok])
    positivity = families.positivity_report(formula, ctx)
    out.summary({"family": tag.family, "rows": N, "mismatches": mismatches, "positivity": str(positivity)})
    if positivity.kind is not families.PositivityKind.PREFIX_POSITIVE:
        sys.stderr.write(f"warning: positivity {positivity}\n")
    return EXIT_MISMATCH if mismatches else EXIT_OK


def cmd_moments(args, out: Emitter) -> int:
    ctx = out.ctx
    N = args.n or 8
    if N < 3:
        raise UsageError("moments needs --n >= 3")
    _, spec = _source(args, ctx, N)
    mom = orthogonality.moments_from_spectrum(spec)
    out.header(["n", "c_n", "Delta_n"])
    for n in range(spec.N + 1):
        out.row([n, mom.c[n], mom.hankel[n]])
    return EXIT_OK


def cmd_identity(args, out: Emitter) -> int:
    ctx = out.ctx
    Nmax = args.n or 20
    _, spec = _source(args, ctx, Nmax + 2)
    Nmax = min(Nmax, spec.N - 2)
    if Nmax < 1:
        raise UsageError("identity needs a spectrum of length at least 3")
    report = awalgebra.verify_primary_identity(spec, structure_constants(spec), Nmax)
    out.header(["n", "coef_x^(n+2)", "coef_x^(n+1)"])
    for row in report.streams:
        out.row(row)
    summary = {"primary_residual": render(report.residual, ctx), "degree_tested": Nmax}
    status = EXIT_OK if ctx.is_zero(report.residual) else EXIT_MISMATCH
    try:
        dual = awalgebra.fit_dual_identity(spec, None, spec.N - 1)
        summary["dual_residual"] = render(dual.residual, ctx)
        summary.update(zip(("alpha", "beta", "gamma", "delta"),
                           (render(c, ctx) for c in dual.fitted_constants)))
        if not ctx.is_zero(dual.residual):
            status = EXIT_MISMATCH
    except FitFailed as exc:
        summary["dual_residual"] = f"fit failed: {exc}"
        status = EXIT_MISMATCH
    out.summary(summary)
    return status


def _dsequence(args, ctx):
    if args.d is None:
        return None
    if args.d == "classical":
        return umbral.DSequence.classical()
    if args.d_param is None:
        raise UsageError(f"--d {args.d} needs --d-param")
    value = parse_scalar(args.d_param, exact=True, ctx=ctx)
    return umbral.DSequence.q_derivative(value) if args.d == "q" else umbral.DSequence.dunkl(value)


def cmd_umbral(args, out: Emitter) -> int:
    ctx = out.ctx
    N = args.n or 12
    tag, spec = _source(args, ctx, N)
    tag = tag or families.classify(spec)
    descent = umbral.umbral_descend(spec, _dsequence(args, ctx))
    out.document({
        "original": tag.to_json(ctx),
        "d": str(descent.ds),
        "descended": families.classify(descent.spec).to_json(ctx),
        "omega": to_json(structure_constants(descent.spec).omega, ctx),
        "descended_spectrum": descent.spec.to_json(),
    })
    return EXIT_OK


def cmd_weights(args, out: Emitter) -> int:
    ctx = out.ctx
    if args.source not in FAMILIES:
        raise UsageError(f"weights needs a family name, got {args.source!r}")
    tag = build_tag(args, ctx)
    data = families.weight_data(tag, ctx)
    doc = {"family": tag.to_json(ctx),
           "kind": data.kind.value if data.kind else None,
           "positivity": data.positivity.value, "size": data.size}
    if data.interval is not None:
        doc["interval"] = [render(x, ctx) for x in data.interval]
    discrete = data.point is not None
    if discrete:
        nmax = args.n or (min(6, data.size - 1) if data.size else 6)
        res = families.discrete_orthogonality_residual(tag, nmax=nmax, ctx=ctx)
        doc.update(residual=render(res.residual, ctx), tail_bound=render(res.tail_bound, ctx),
                   terms=res.terms, nmax=nmax)
    if out.fmt == "json" or not discrete:
        if discrete:
            count = data.size or args.points
            doc["support"] = [{"x": to_json(x, ctx), "w": to_json(w, ctx)}
                              for x, w in zip(data.points(count), data.weights(count))]
        out.document(doc)
        return EXIT_OK
    count = data.size or args.points
    out.header(["s", "x_s", "w_s"])
    for s in range(count):
        out.row([s, data.point(s), data.weight(s)])
    out.summary({k: v for k, v in doc.items() if k != "family"})
    return EXIT_OK


COMMANDS = {
    "classify": (cmd_classify, "json", "classify a spectrum file or a generated family spectrum"),
    "verify": (cmd_verify, "csv", "cross-check recurrence coefficients for a family"),
    "moments": (cmd_moments, "csv", "moments and Hankel determinants"),
    "identity": (cmd_identity, "csv", "primary and dual operator identities"),
    "umbral": (cmd_umbral, "json", "umbral descent under a formal derivative"),
    "weights": (cmd_weights, "json", "discrete weights and their orthogonality residual"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="twodiag", description="Two-diagonal operators and their eigenpolynomials.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, _, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("source", help="family name (" + ", ".join(FAMILIES) + ") or spectrum JSON path, '-' for stdin")
        p.add_argument("--n", type=int, default=None, help="degree budget")
        p.add_argument("--bits", type=int, default=256, help="working precision for approximate values")
        p.add_argument("--tol", default=None, help="relative tolerance as p/q (default 2^-100)")
        p.add_argument("--format", choices=("json", "csv", "pretty"), default=None)
        p.add_argument("--out", default=None, help="write output to FILE")
        for flag in ("a", "b", "q", "alpha", "beta", "omega"):
            p.add_argument(f"--{flag}", default=None)
        p.add_argument("--size", default=None, help="support size N of q-Krawtchouk")
        p.add_argument("--negq", action="store_true", help="use the base -q variant")
        p.add_argument("--inverted", action="store_true", help="q -> 1/q form where one exists")
        if name == "umbral":
            p.add_argument("--d", choices=("classical", "q", "dunkl"), default=None)
            p.add_argument("--d-param", default=None, help="q or nu for --d q / --d dunkl")
        if name == "weights":
            p.add_argument("--points", type=int, default=10, help="listed points of an infinite support")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    func, default_fmt, _ = COMMANDS[args.command]
    fmt = args.format or default_fmt
    try:
        ctx = _context(args)
        if args.n is not None and args.n < 1:
            raise UsageError("--n must be positive")
        if args.out:
            try:
                stream = open(args.out, "w", newline="")
            except OSError as exc:
                raise UsageError(f"cannot write {args.out}: {exc.strerror}") from exc
        else:
            stream = sys.stdout
        try:
            return func(args, Emitter(fmt, stream, ctx))
        finally:
            if args.out:
                stream.close()
    except UsageError as exc:
        sys.stderr.write(f"twodiag: {exc}\n")
        return EXIT_USAGE
    except (NotAdmissible, DegenerateSeed, DegenerateExtension, SpectrumDegenerate,
            DegenerateFunctional, InconsistentSpectrum, NoKnownWeight) as exc:
        sys.stderr.write(f"twodiag: {type(exc).__name__}: {exc}\n")
        return EXIT_DEGENERATE
    except (NotOrthogonal, NotUmbralClassical, FitFailed) as exc:
        sys.stderr.write(f"twodiag: {type(exc).__name__}: {exc}\n")
        return EXIT_MISMATCH
    except (TwoDiagError, ValueError) as exc:
        sys.stderr.write(f"twodiag: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
