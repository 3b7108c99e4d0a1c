"""Command-line front end: ``ramdepth {info,phi,depth,sweep,check,catalog}``.

Exit codes: 0 success, 1 failed check or mismatch, 2 usage error,
3 parse or validation error.  All numbers are printed as exact fractions
unless ``--decimal N`` asks for a rounded rendering.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import catalog, extspec
from .depth import depth_report, invariant_a, parameter_depth, tail_start
from .errors import ParseError, RamdepthError
from .filtration import Ramification, RamificationFiltration
from .herbrand import phi_from_filtration, phi_integer_oracle, upper_breaks

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INVALID = 0, 1, 2, 3


class UsageError(Exception):
    pass


# -- rendering ---------------------------------------------------------------

def fmt(x, decimal: int | None = None) -> str:
    """Exact ``p/q`` (or integer) rendering; rounded to ``decimal`` places if given."""
    x = Fraction(x)
    if decimal is None:
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    scaled = round(x * 10**decimal)
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled)).rjust(decimal + 1, "0")
    if decimal == 0:
        return sign + digits
    return f"{sign}{digits[:-decimal]}.{digits[-decimal:]}"


def jrat(x, decimal: int | None = None):
    if x is None:
        return None
    x = Fraction(x)
    out = {"num": str(x.numerator), "den": str(x.denominator)}
    if decimal is not None:
        out["decimal"] = fmt(x, decimal)
    return out


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def parse_param(text: str) -> tuple[str, int]:
    key, sep, val = text.partition("=")
    try:
        if not sep or not key:
            raise ValueError
        return key.strip(), int(val)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected key=integer, got {text!r}") from None


def _table(rows: Sequence[tuple[str, str]]) -> str:
    width = max((len(k) for k, _ in rows), default=0)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def _emit(args, payload: dict, rows: Sequence[tuple[str, str]]) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(_table(rows))


# -- loading -----------------------------------------------------------------

def _load(path: str):
    try:
        if path == "-":
            doc = extspec.parse(sys.stdin.buffer.read())
        else:
            doc = extspec.load(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return doc, extspec.resolve(doc)


# -- commands ----------------------------------------------------------------

def cmd_info(args) -> int:
    _, F = _load(args.file)
    d = args.decimal
    cls = F.classify()
    b = None if F.is_trivial else F.largest_break()
    brk = [] if F.is_trivial else F.break_sequence()
    ups = upper_breaks(F) if F.ramification_index > 1 else []
    tower = F.tower_degrees()
    a = invariant_a(F)
    payload = {
        "p": F.residue_char,
        "orders": [str(g) for g in F.orders],
        "e": str(F.ramification_index),
        "wild_order": str(F.wild_order),
        "class": cls.value,
        "b": b,
        "breaks": [{"index": i, "order_after": str(g)} for i, g in brk],
        "upper_breaks": [jrat(u, d) for u in ups],
        "tower_degrees": {"unramified": str(tower[0]), "tame": str(tower[1]), "wild": str(tower[2])},
        "a": jrat(a, d),
    }
    rows = [
        ("p", str(F.residue_char)),
        ("orders", " ".join(map(str, F.orders))),
        ("e", str(F.ramification_index)),
        ("wild_order", str(F.wild_order)),
        ("class", cls.value),
        ("b", "none" if b is None else str(b)),
        ("breaks", ", ".join(f"{i}->{g}" for i, g in brk) or "none"),
        ("upper_breaks", ", ".join(fmt(u, d) for u in ups) or "none"),
        ("tower_degrees", " ".join(map(str, tower))),
        ("a", fmt(a, d)),
    ]
    _emit(args, payload, rows)
    return EXIT_OK


def cmd_phi(args) -> int:
    _, F = _load(args.file)
    f = phi_from_filtration(F)
    name = "phi"
    if args.inverse:
        f, name = f.inverse(), "psi"
    d = args.decimal
    values = [(u, f.evaluate(u)) for u in args.at]
    payload = {"function": name, "values": [{"at": jrat(u, d), name: jrat(v, d)} for u, v in values]}
    rows = [(f"{name}({fmt(u)})", fmt(v, d)) for u, v in values]
    _emit(args, payload, rows)
    return EXIT_OK


def _report_payload(rep, d):
    return {
        "chi_depth": jrat(rep.chi_depth, d),
        "lambda_depth": jrat(rep.lambda_depth, d),
        "ratio": jrat(rep.ratio, d),
        "gap": jrat(rep.gap, d),
        "a": jrat(rep.invariant_a, d),
        "class": rep.classification.value,
    }


def cmd_depth(args) -> int:
    _, F = _load(args.file)
    rep = depth_report(F, args.chi)
    d = args.decimal
    rows = [
        ("chi_depth", fmt(rep.chi_depth, d)),
        ("lambda_depth", fmt(rep.lambda_depth, d)),
        ("ratio", "undefined" if rep.ratio is None else fmt(rep.ratio, d)),
        ("gap", fmt(rep.gap, d)),
        ("a", fmt(rep.invariant_a, d)),
        ("class", rep.classification.value),
    ]
    _emit(args, _report_payload(rep, d), rows)
    return EXIT_OK


SWEEP_HEADER = ("chi_depth", "lambda_depth", "ratio", "gap")


def sweep_values(start: Fraction, stop: Fraction, step: Fraction):
    """``start, start+step, ...`` up to and including ``stop``."""
    r = start
    while r <= stop:
        yield r
        r += step


def cmd_sweep(args) -> int:
    if args.step <= 0:
        raise UsageError("--step must be positive")
    if args.start < 0:
        raise UsageError("--from must be nonnegative")
    _, F = _load(args.file)
    d = args.decimal
    reports = [depth_report(F, r) for r in sweep_values(args.start, args.stop, args.step)]
    if args.format == "json":
        print(json.dumps({"rows": [_report_payload(rep, d) for rep in reports]}, indent=2))
        return EXIT_OK
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(SWEEP_HEADER)
    for rep in reports:
        writer.writerow([
            fmt(rep.chi_depth, d),
            fmt(rep.lambda_depth, d),
            "" if rep.ratio is None else fmt(rep.ratio, d),
            fmt(rep.gap, d),
        ])
    return EXIT_OK


def run_checks(F: RamificationFiltration, entry: catalog.CatalogEntry | None = None) -> list[dict]:
    """Evaluate the depth-transform predicates on ``F``; each result is pass, fail or skip."""
    results = []

    def add(name, ok, detail="", skip=False):
        status = "skip" if skip else ("pass" if ok else "fail")
        results.append({"check": name, "status": status, "detail": detail})

    cls = F.classify()
    a = invariant_a(F)
    e = F.ramification_index
    add("tame_iff_a_zero", (cls is not Ramification.WILD) == (a == 0), f"class={cls.value}, a={fmt(a)}")

    b = None if F.is_trivial else F.largest_break()
    scale = Fraction(max(b or 0, 1), e)
    samples = sorted({scale / 4, scale / 2, scale, 2 * scale, Fraction(1), Fraction(10)})
    if cls is Ramification.WILD:
        bad = [r for r in samples if parameter_depth(F, r) <= r]
        add("wild_depth_increases", not bad, "gap > 0 at r = " + ", ".join(map(fmt, samples)))
        add("depth_preserved", True, "not applicable: wildly ramified", skip=True)
    else:
        add("wild_depth_increases", True, f"not applicable: {cls.value}", skip=True)
        bad = [r for r in samples if parameter_depth(F, r) != r]
        add("depth_preserved", not bad, "phi(e r) = r at r = " + ", ".join(map(fmt, samples)))

    t0 = tail_start(F)
    tail = [t0 + k for k in range(1, 6)]
    bad = [r for r in tail if parameter_depth(F, r) != r + a or parameter_depth(F, r) / r != 1 + a / r]
    add("tail_identity", not bad, "phi(e r) = r + a at r = " + ", ".join(map(fmt, tail)))

    phi = phi_from_filtration(F)
    upto = F.last_index + 10
    bad = [u for u in range(upto + 1) if phi.evaluate(u) != phi_integer_oracle(F, u)]
    add("integer_oracle", not bad, f"u = 0..{upto}")

    if entry is not None:
        rep = catalog.verify_entry(entry)
        add("catalog_expected", rep.ok,
            "all match" if rep.ok else "mismatch on " + ", ".join(rep.mismatches))
    return results


def cmd_check(args) -> int:
    doc, F = _load(args.file)
    entry = extspec.resolve_entry(doc) if isinstance(doc, extspec.CatalogSpec) else None
    results = run_checks(F, entry)
    ok = all(r["status"] != "fail" for r in results)
    if args.format == "json":
        print(json.dumps({"ok": ok, "checks": results}, indent=2))
    else:
        for r in results:
            print(f"{r['status'].upper():4}  {r['check']}: {r['detail']}")
    return EXIT_OK if ok else EXIT_FAIL


def _report_json(rep: catalog.VerificationReport) -> dict:
    return {
        "entry": rep.entry,
        "verdict": "exact-match" if rep.ok else "mismatch",
        "checks": {
            k: {
                "expected": jrat(c.expected),
                "computed": jrat(c.computed),
                "provenance": c.provenance,
                "verdict": "exact-match" if c.matches else "mismatch",
            }
            for k, c in rep.checks.items()
        },
        "notices": list(rep.notices),
    }


def _entry_json(entry: catalog.CatalogEntry) -> dict:
    return {
        "name": entry.name,
        "parameters": entry.parameters,
        "p": entry.filtration.residue_char,
        "orders": [str(g) for g in entry.filtration.orders],
        "expected": {k: {**jrat(v.value), "provenance": v.provenance} for k, v in entry.expected.items()},
        "published_discrepancies": {k: jrat(v) for k, v in entry.published_discrepancies.items()},
        "notes": entry.notes,
    }


def cmd_catalog(args) -> int:
    params = dict(args.params or [])
    if args.action == "list":
        if args.format == "json":
            print(json.dumps({"families": [{"name": n, "params": list(catalog.FAMILY_PARAMS[n])}
                                           for n in catalog.FAMILIES]}, indent=2))
        else:
            for n in catalog.FAMILIES:
                print(f"{n}({', '.join(catalog.FAMILY_PARAMS[n])})")
        return EXIT_OK

    if args.action == "show":
        if not args.name:
            raise UsageError("catalog show needs a family name")
        entry = catalog.build(args.name, params)
        if args.format == "json":
            print(json.dumps(_entry_json(entry), indent=2))
        else:
            rows = [("entry", entry.label), ("p", str(entry.filtration.residue_char)),
                    ("orders", " ".join(map(str, entry.filtration.orders)))]
            rows += [(f"expected {k}", f"{fmt(v.value)}  [{v.provenance}]") for k, v in entry.expected.items()]
            rows += [(f"published {k}", fmt(v)) for k, v in entry.published_discrepancies.items()]
            rows += [("notes", entry.notes)]
            print(_table(rows))
        return EXIT_OK

    # verify
    if args.all:
        entries = list(catalog.iter_default_entries())
    elif args.name:
        entries = [catalog.build(args.name, params)]
    else:
        raise UsageError("catalog verify needs --all or a family name")
    reports = [catalog.verify_entry(e) for e in entries]
    ok = all(r.ok for r in reports)
    notices = [n for r in reports for n in r.notices]
    if args.format == "json":
        print(json.dumps({"ok": ok, "entries": [_report_json(r) for r in reports], "notices": notices}, indent=2))
    else:
        for r in reports:
            line = "OK      " if r.ok else "MISMATCH"
            extra = "" if r.ok else "  (" + ", ".join(
                f"{k}: expected {fmt(r.checks[k].expected)}, computed {fmt(r.checks[k].computed)}"
                for k in r.mismatches) + ")"
            print(f"{line}  {r.entry}{extra}")
        for n in notices:
            print(f"NOTICE  {n}")
        print(f"{sum(r.ok for r in reports)}/{len(reports)} entries match")
    return EXIT_OK if ok else EXIT_FAIL


# -- argument parsing ---------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "json", "csv"), default="table")
    common.add_argument("--decimal", type=int, metavar="N", help="also round output to N decimal places")

    parser = argparse.ArgumentParser(prog="ramdepth", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", parents=[common], help="ramification data of an extension")
    p.add_argument("file", help="extension description (.ext or JSON), '-' for stdin")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("phi", parents=[common], help="evaluate the Hasse-Herbrand function")
    p.add_argument("file")
    p.add_argument("--at", type=parse_rational, nargs="+", required=True, metavar="U")
    p.add_argument("--inverse", action="store_true", help="evaluate the inverse function psi instead")
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser("depth", parents=[common], help="depth of the parameter of a character")
    p.add_argument("file")
    p.add_argument("--chi", type=parse_rational, required=True, metavar="R", help="depth of the character")
    p.set_defaults(func=cmd_depth)

    p = sub.add_parser("sweep", parents=[common], help="CSV of parameter depths over a range of character depths")
    p.add_argument("file")
    p.add_argument("--from", dest="start", type=parse_rational, required=True)
    p.add_argument("--to", dest="stop", type=parse_rational, required=True)
    p.add_argument("--step", type=parse_rational, default=Fraction(1))
    p.set_defaults(func=cmd_sweep, format="csv")

    p = sub.add_parser("check", parents=[common], help="evaluate the depth-transform predicates")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("catalog", parents=[common], help="list, show or verify catalog entries")
    p.add_argument("action", choices=("list", "show", "verify"))
    p.add_argument("name", nargs="?")
    p.add_argument("--all", action="store_true", help="verify every family over its default grid")
    p.add_argument("--params", type=parse_param, nargs="+", metavar="K=V")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.decimal is not None and args.decimal < 0:
        parser.error("--decimal must be nonnegative")
    if args.command == "sweep" and args.format == "table":
        args.format = "csv"
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"ramdepth: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"ramdepth: {args.file}:{exc}", file=sys.stderr)
        return EXIT_INVALID
    except RamdepthError as exc:
        print(f"ramdepth: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
