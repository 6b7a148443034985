"""Command-line interface: ``hydromoments {expect,table1,uncertainty,entropy,verify}``.

Exit codes: 0 success, 1 verification failure, 2 usage or validation error,
3 numeric failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import os
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import entropy as ent
from . import largedim as ld
from . import rydberg as ry
from . import uncertainty as unc
from . import verify as vf
from .hydrogenic import (
    HydrogenicState,
    Method,
    ValidityError,
    log_momentum_expectation,
    log_position_expectation,
    momentum_expectation,
    position_expectation,
)
from .oracle import LOG, quad_momentum_moment, quad_position_moment, rational_replay
from .quadrature import QuadratureError
from .specfun import DivergenceError, DomainError, NonTerminatingError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3
PRECISION_ENV = "HYDROMOMENTS_PRECISION"
CSV_HEADER = ("n", "l", "D", "Z", "alpha", "space", "method", "value", "reference", "rel_deviation")

_METHODS = {
    "exact": Method.EXACT,
    "large-d": Method.LARGE_D,
    "rydberg-fixed-d": Method.RYDBERG,
    "rydberg-nl-gap": Method.RYDBERG,
    "oracle": Method.ORACLE,
}


class UsageError(Exception):
    """Flags parse but describe an impossible request."""


# --------------------------------------------------------------------------
# records and formatting


def fmt_number(x) -> str:
    """12 significant digits; scientific notation once |exponent| ≥ 6."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return str(x)
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if x == 0:
        return "0.00000000000"
    e = math.floor(math.log10(abs(x)))
    # rounding can carry into the next decade
    if abs(float(f"{x:.11e}")) >= 10.0 ** (e + 1):
        e += 1
    if abs(e) >= 6:
        return f"{x:.11e}"
    return f"{x:.{max(0, 11 - e)}f}"


def _plain(x):
    """Integral floats become ints so that Z = 1 prints as 1."""
    if isinstance(x, float) and x.is_integer() and abs(x) < 1e15:
        return int(x)
    return x


@dataclass(frozen=True)
class CellRecord:
    n: int
    l: int
    D: int
    Z: float
    alpha: object  # number, or "log"
    space: str
    method: str
    value: object  # float, or Fraction in rational mode
    reference: Optional[float] = None
    rel_deviation: Optional[float] = None

    def __post_init__(self):
        if (self.reference is None) != (self.rel_deviation is None):
            raise ValueError("rel_deviation is present exactly when reference is")
        if self.method not in {m.value for m in Method}:
            raise ValueError(f"unknown method {self.method!r}")

    @classmethod
    def with_reference(cls, state, alpha, space, method, value, reference):
        dev = None
        if reference is not None:
            dev = abs(float(value) - reference) / abs(reference)
        return cls(state.n, state.l, state.D, state.Z, alpha, space, method, value, reference, dev)

    def sort_key(self):
        a = -math.inf if self.alpha == LOG else float(self.alpha)
        return (self.n, self.l, self.D, a, self.space, self.method)

    def fields(self) -> list:
        return [self.n, self.l, self.D, _plain(self.Z), _plain(self.alpha), self.space,
                self.method, self.value, self.reference, self.rel_deviation]


def _json_value(v) -> str:
    if v is None:
        return "null"
    if isinstance(v, str):
        return json.dumps(v)
    if isinstance(v, Fraction):
        return json.dumps(str(v))
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float) and not math.isfinite(v):
        return json.dumps(fmt_number(v))
    return fmt_number(v)


def _json_object(names: Sequence[str], values: Sequence) -> str:
    return "{" + ", ".join(f"{json.dumps(k)}: {_json_value(v)}" for k, v in zip(names, values)) + "}"


def records_to_json(records: Sequence[CellRecord]) -> str:
    body = ",\n".join("  " + _json_object(CSV_HEADER, r.fields()) for r in records)
    return "[\n" + body + "\n]\n" if records else "[]\n"


def reemit_json(text: str) -> str:
    """Parse emitted cell JSON and emit it again (used to check round-tripping)."""
    out = []
    for obj in json.loads(text):
        out.append("  " + _json_object(list(obj.keys()), [_parsed(v) for v in obj.values()]))
    return "[\n" + ",\n".join(out) + "\n]\n" if out else "[]\n"


def _parsed(v):
    if isinstance(v, str):
        try:
            return Fraction(v) if "/" in v else v
        except ValueError:
            return v
    return v


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, str):
        return v
    return fmt_number(v)


def rows_to_csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_csv_cell(v) for v in row])
    return buf.getvalue()


def rows_to_table(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    cells = [list(header)] + [[_csv_cell(v) for v in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def emit_records(records: Sequence[CellRecord], fmt: str) -> str:
    if fmt == "json":
        return records_to_json(records)
    rows = [r.fields() for r in records]
    if fmt == "csv":
        return rows_to_csv(CSV_HEADER, rows)
    return rows_to_table(CSV_HEADER, rows)


# --------------------------------------------------------------------------
# expect


def _parse_list(text: str, kind=float) -> list:
    try:
        return [kind(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise UsageError(f"cannot parse {text!r}: {exc}") from None


def _number(text: str):
    v = float(text)
    return int(v) if v.is_integer() else v


def _as_alpha(x):
    return int(x) if float(x).is_integer() else float(x)


def compute_cell(state: HydrogenicState, alpha, space: str, method: str, log: bool,
                 precision: str) -> CellRecord:
    m = _METHODS[method]
    label = LOG if log else alpha
    if precision == "rational":
        if method != "exact" or log:
            raise UsageError("rational precision is available for --method exact power moments only")
        v = rational_replay(space, state, alpha)
        if not isinstance(v, Fraction):
            raise UsageError(f"<{'r' if space == 'position' else 'p'}^{alpha}> is not rational "
                             "for these inputs; use --precision float")
        return CellRecord(state.n, state.l, state.D, state.Z, label, space, m.value, v)
    if method == "exact":
        if log:
            v = (log_position_expectation(state) if space == "position"
                 else log_momentum_expectation(state)).value
        else:
            v = (position_expectation(state, alpha) if space == "position"
                 else momentum_expectation(state, alpha)).value
    elif method == "oracle":
        f = LOG if log else alpha
        res = (quad_position_moment(state, f) if space == "position"
               else quad_momentum_moment(state, f))
        if not res.converged:
            raise QuadratureError(f"quadrature did not converge (error estimate {res.error_estimate:.3g})")
        v = res.value
    elif method == "large-d":
        if log:
            v = (ld.log_position_largeD(state) if space == "position"
                 else ld.log_momentum_largeD(state)).value
        else:
            v = (ld.position_largeD(state, alpha) if space == "position"
                 else ld.momentum_largeD(state, alpha)).value
    elif method == "rydberg-fixed-d":
        if log:
            raise UsageError("no logarithmic Rydberg limit is available")
        v = (ry.pos_rydberg_fixedD(state, alpha) if space == "position"
             else ry.mom_rydberg_fixedD(state, alpha)).value
    else:
        if log or space != "momentum":
            raise UsageError("rydberg-nl-gap is a momentum-space power-moment limit")
        v = ry.mom_rydberg_fixed_nl_gap(state, alpha).value
    return CellRecord(state.n, state.l, state.D, state.Z, label, space, m.value, v)


def cmd_expect(args) -> tuple[int, str]:
    ns = _parse_list(args.n, int)
    ls = _parse_list(args.l, int)
    Ds = _parse_list(args.D, int)
    Zs = [_number(z) for z in args.Z.split(",")]
    alphas = [None] if args.log else [_as_alpha(a) for a in _parse_list(args.alpha)]
    spaces = ["position", "momentum"] if args.space == "both" else [args.space]
    jobs = []
    for n, l, D, Z, a, sp in itertools.product(ns, ls, Ds, Zs, alphas, spaces):
        jobs.append((HydrogenicState(n, l, D, Z), a, sp))
    if not jobs:
        raise UsageError("empty sweep")

    def run(job):
        s, a, sp = job
        return compute_cell(s, a, sp, args.method, args.log, args.precision)

    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            recs = list(pool.map(run, jobs))
    else:
        recs = [run(j) for j in jobs]
    recs.sort(key=CellRecord.sort_key)
    return EXIT_OK, emit_records(recs, args.format)


# --------------------------------------------------------------------------
# Table I


TABLE_DIMENSIONS = (50, 250, 500)
TABLE_ALPHAS = (0, 1, 2, -1)


def table1_records() -> list[CellRecord]:
    out = []
    for a in TABLE_ALPHAS:
        for D in TABLE_DIMENSIONS:
            s = HydrogenicState(2, 0, D)
            out.append(CellRecord.with_reference(s, a, "position", Method.LARGE_D.value,
                                                 ld.position_largeD(s, a).value,
                                                 vf.TABLE_POSITION_ASYMPTOTIC[(a, D)]))
            out.append(CellRecord.with_reference(s, a, "momentum", Method.LARGE_D.value,
                                                 ld.momentum_largeD(s, a).value,
                                                 vf.TABLE_MOMENTUM_ASYMPTOTIC[(a, D)]))
            out.append(CellRecord.with_reference(s, a, "position", Method.EXACT.value,
                                                 position_expectation(s, a).value,
                                                 vf.TABLE_POSITION[(a, D)]))
            out.append(CellRecord.with_reference(s, a, "momentum", Method.EXACT.value,
                                                 momentum_expectation(s, a).value,
                                                 vf.TABLE_MOMENTUM[(a, D)]))
    return out


def reference_precision(value: float, reference: float) -> str:
    """``value`` rounded to as many significant digits as the printed entry has."""
    return f"{value:.{vf.printed_digits(reference)}g}"


def deviation_annex(records: Sequence[CellRecord], threshold: float = 1e-4) -> list[CellRecord]:
    return [r for r in records if r.rel_deviation is not None and r.rel_deviation > threshold]


def cmd_table1(args) -> tuple[int, str]:
    recs = table1_records()
    annex = deviation_annex(recs, args.threshold)
    if args.format == "json":
        return EXIT_OK, records_to_json(recs)
    if args.format == "csv":
        return EXIT_OK, emit_records(recs, "csv")
    header = ("D", "alpha", "space", "method", "value", "reference_precision", "printed", "rel_deviation")
    rows = [(r.D, r.alpha, r.space, r.method, r.value,
             reference_precision(float(r.value), r.reference), r.reference, r.rel_deviation)
            for r in recs]
    text = rows_to_table(header, rows)
    text += f"\ndeviation annex (printed entry differs by more than {args.threshold:g} relative)\n"
    annex_rows = [(r.D, r.alpha, r.space, r.method, r.value, r.reference, r.rel_deviation,
                   "WARN") for r in annex]
    text += rows_to_table(("D", "alpha", "space", "method", "value", "printed",
                           "rel_deviation", "status"), annex_rows)
    return EXIT_OK, text


# --------------------------------------------------------------------------
# uncertainty and entropy


UNCERTAINTY_HEADER = ("n", "l", "D", "Z", "relation", "bound_kind", "value", "bound", "margin",
                      "satisfied")


def uncertainty_rows(state: HydrogenicState, kind: str) -> list[tuple]:
    rows = []
    if kind in ("heisenberg", "all"):
        for bk, rec in unc.heisenberg_bounds(state).items():
            rows.append(("r2p2", bk.value, rec))
    if kind in ("log", "all"):
        for bk in (unc.BoundKind.LOG_GENERAL, unc.BoundKind.LOG_REFINED):
            rows.append(("log", bk.value, unc.log_uncertainty_sum(state, bk)))
    return [(state.n, state.l, state.D, _plain(state.Z), rel, bk, r.product_value, r.bound,
             r.margin, r.satisfied) for rel, bk, r in rows]


ENTROPY_HEADER = ("n", "l", "D", "Z", "space", "kind", "q", "alpha", "moment_sign", "entropy",
                  "bound", "direction", "margin", "satisfied")


def entropy_row(state: HydrogenicState, args) -> tuple:
    kind = ent.EntropyKind(args.kind)
    if kind is not ent.EntropyKind.SHANNON and args.q is None:
        raise UsageError("--q is required for renyi and tsallis")
    if args.bound_alpha is None:
        e = ent.entropy_quadrature(state, kind, args.q, args.space)
        if e is None:
            raise UsageError("entropies are only computed for l = 0; pass --bound-alpha for the bound")
        return (state.n, state.l, state.D, _plain(state.Z), args.space, kind.value, args.q, None,
                None, e.value, None, None, None, None)
    sign = 1 if args.moment_sign == "+" else -1
    if kind is ent.EntropyKind.SHANNON:
        if sign < 0:
            raise UsageError("the Shannon bound uses a positive moment")
        rep = ent.bound_shannon_upper(state, args.bound_alpha, args.space)
    elif kind is ent.EntropyKind.RENYI:
        rep = ent.bound_renyi_upper(state, args.q, args.bound_alpha, sign, args.space)
    else:
        rep = ent.bound_tsallis_lower(state, args.q, args.bound_alpha, sign, args.space)
    evalue = None if rep.entropy is None else rep.entropy.value
    sat = "not-applicable" if rep.satisfied is None else rep.satisfied
    return (state.n, state.l, state.D, _plain(state.Z), args.space, kind.value, args.q,
            _plain(args.bound_alpha), "+" if sign > 0 else "-", evalue, rep.bound_value,
            rep.direction.value, rep.margin, sat)


def _emit_rows(header, rows, fmt) -> str:
    if fmt == "json":
        body = ",\n".join("  " + _json_object(header, r) for r in rows)
        return "[\n" + body + "\n]\n"
    if fmt == "csv":
        return rows_to_csv(header, rows)
    return rows_to_table(header, rows)


def cmd_uncertainty(args) -> tuple[int, str]:
    s = HydrogenicState(args.n, args.l, args.D, _number(args.Z))
    return EXIT_OK, _emit_rows(UNCERTAINTY_HEADER, uncertainty_rows(s, args.kind), args.format)


def cmd_entropy(args) -> tuple[int, str]:
    s = HydrogenicState(args.n, args.l, args.D, _number(args.Z))
    return EXIT_OK, _emit_rows(ENTROPY_HEADER, [entropy_row(s, args)], args.format)


# --------------------------------------------------------------------------
# verify


def verify_json(suite: str, checks: Sequence[vf.Check]) -> str:
    items = ",\n".join("    " + _json_object(("id", "status", "observed", "required", "note"),
                                             (c.id, c.status, c.observed, c.required, c.note))
                       for c in checks)
    return "{\n  \"suite\": " + json.dumps(suite) + ",\n  \"checks\": [\n" + items + "\n  ]\n}\n"


def cmd_verify(args) -> tuple[int, str]:
    checks = vf.run_suite(args.suite, args.jobs)
    code = EXIT_OK if vf.all_passed(checks) else EXIT_FAIL
    if args.format == "json":
        return code, verify_json(args.suite, checks)
    shown = checks if args.all else [c for c in checks if c.status != vf.PASS]
    rows = [(c.status, c.id, c.observed, c.required, c.note) for c in shown]
    text = rows_to_table(("status", "id", "observed", "required", "note"), rows) if rows else ""
    counts = vf.summarize(checks)
    text += (f"suite {args.suite}: {counts[vf.PASS]} pass, {counts[vf.WARN]} warn, "
             f"{counts[vf.FAIL]} fail\n")
    return code, text


# --------------------------------------------------------------------------
# argument parsing


def _precision_default() -> str:
    v = os.environ.get(PRECISION_ENV, "float").strip().lower()
    if v not in ("float", "rational"):
        raise UsageError(f"{PRECISION_ENV} must be 'float' or 'rational', got {v!r}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hydromoments",
                                description="Radial moments, uncertainty relations and entropy "
                                            "bounds of D-dimensional hydrogenic states.")
    sub = p.add_subparsers(dest="command", required=True)

    def fmt(sp):
        sp.add_argument("--format", choices=("table", "csv", "json"), default="table")

    e = sub.add_parser("expect", help="radial expectation values (comma lists sweep)")
    e.add_argument("--n", required=True)
    e.add_argument("--l", required=True)
    e.add_argument("--D", required=True)
    e.add_argument("--Z", default="1")
    e.add_argument("--alpha", default="0")
    e.add_argument("--space", choices=("position", "momentum", "both"), default="position")
    e.add_argument("--method", choices=tuple(_METHODS), default="exact")
    e.add_argument("--log", action="store_true", help="logarithmic moment instead of a power")
    e.add_argument("--precision", choices=("float", "rational"), default=None)
    e.add_argument("--jobs", type=int, default=1)
    fmt(e)

    t = sub.add_parser("table1", help="reproduce the n=2, l=0 convergence table")
    t.add_argument("--threshold", type=float, default=1e-4)
    fmt(t)

    u = sub.add_parser("uncertainty", help="Heisenberg-like and logarithmic relations")
    u.add_argument("--n", type=int, required=True)
    u.add_argument("--l", type=int, required=True)
    u.add_argument("--D", type=int, required=True)
    u.add_argument("--Z", default="1")
    u.add_argument("--kind", choices=("heisenberg", "log", "all"), default="all")
    fmt(u)

    s = sub.add_parser("entropy", help="entropies (l = 0) and their moment bounds")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--l", type=int, required=True)
    s.add_argument("--D", type=int, required=True)
    s.add_argument("--Z", default="1")
    s.add_argument("--kind", choices=("shannon", "renyi", "tsallis"), default="shannon")
    s.add_argument("--space", choices=("position", "momentum"), default="position")
    s.add_argument("--q", type=float)
    s.add_argument("--bound-alpha", type=_number, dest="bound_alpha")
    s.add_argument("--moment-sign", choices=("+", "-"), default="+", dest="moment_sign")
    fmt(s)

    v = sub.add_parser("verify", help="run the invariant and convergence suites")
    v.add_argument("--suite", choices=vf.SUITES + ("all",), default="all")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--all", action="store_true", help="list passing checks too")
    fmt(v)
    return p


_COMMANDS = {
    "expect": cmd_expect,
    "table1": cmd_table1,
    "uncertainty": cmd_uncertainty,
    "entropy": cmd_entropy,
    "verify": cmd_verify,
}


_VALUE_FLAGS = ("--alpha", "--Z", "--bound-alpha", "--q", "--n", "--l", "--D")


def _attach_negative_values(argv: Sequence[str]) -> list[str]:
    """Rewrite ``--alpha -1,2`` as ``--alpha=-1,2`` so argparse does not read a flag."""
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else ""
        if a in _VALUE_FLAGS and len(nxt) > 1 and nxt[0] == "-" and (nxt[1].isdigit() or nxt[1] == "."):
            out.append(f"{a}={nxt}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    argv = _attach_negative_values(sys.argv[1:] if argv is None else list(argv))
    args = parser.parse_args(argv)  # exits with 2 on bad flags
    try:
        if getattr(args, "precision", "absent") is None:
            args.precision = _precision_default()
        if getattr(args, "jobs", 1) < 1:
            raise UsageError("--jobs must be at least 1")
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            code, text = _COMMANDS[args.command](args)
    except (UsageError, ValidityError, DomainError, NonTerminatingError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (QuadratureError, DivergenceError, ArithmeticError) as exc:
        print(f"numeric failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
