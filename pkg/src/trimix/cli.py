"""Command-line front end: ``trimix <subcommand> ...``.

Exit codes: 0 success, 1 a check failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .basis import UnknownSpace, basis_for, find_space, space_from_string
from .etaq import UnknownName, check_theorem_a, named_cusp_form, parse_eta
from .forms import FormSyntaxError, ParityViolation, classify, counts_upto, modular_series, parse_form
from .identities import SUITES, run_suite
from .solve import (
    FIXTURE_ENV,
    TABLE_IDS,
    InconsistentSystem,
    express_in_basis,
    fixture_dir,
    formula_as_divisor_sums,
    load_fixture,
    reproduce_table,
    required_terms,
    solve_row,
)


class UsageError(Exception):
    pass


def _fmt(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _dump(obj, out) -> None:
    out.write(json.dumps(obj, separators=(", ", ": ")) + "\n")


def _range(text: str) -> range:
    lo, sep, hi = text.partition("..")
    try:
        if not sep:
            n = int(lo)
            return range(n, n + 1)
        return range(int(lo), int(hi) + 1)
    except ValueError:
        raise UsageError(f"bad range {text!r}; use A..B") from None


def _tsv(rows: Sequence[Sequence], out) -> None:
    for r in rows:
        out.write("\t".join(str(x) for x in r) + "\n")


# -- subcommands ---------------------------------------------------------------

def cmd_count(args, out) -> int:
    form = parse_form(args.form)
    ns = _range(args.n)
    if ns.start < 0:
        raise UsageError("n must be nonnegative")
    values = counts_upto(form, ns.stop - 1) if len(ns) else []
    pairs = [(n, values[n]) for n in ns]
    if args.tsv:
        _tsv(pairs, out)
    else:
        _dump({"form": form.descriptor(), "n": [n for n, _ in pairs], "counts": [v for _, v in pairs]}, out)
    return 0


def cmd_series(args, out) -> int:
    P = 24 * args.prec
    if args.eta:
        series = parse_eta(args.eta).expand(P)
    elif args.form:
        form = parse_form(args.form)
        series = modular_series(form, P)
    else:
        raise UsageError("series needs --form or --eta")
    if args.tsv:
        _tsv([(n, _fmt(c)) for n, c in enumerate(series.qcoeffs(args.prec))] if series.on_integer_grid()
             else [(f"{e}/24", _fmt(c)) for e, c in series.nonzero()], out)
    else:
        _dump(series.to_json(), out)
    return 0


def cmd_eta_check(args, out) -> int:
    if args.name:
        try:
            eta = named_cusp_form(args.name)
        except UnknownName:
            raise UsageError(f"unknown cusp form {args.name!r}") from None
        if not hasattr(eta, "exps"):
            raise UsageError(f"{args.name} is a combination of eta-quotients, not a single quotient")
    elif args.eta:
        eta = parse_eta(args.eta, args.level)
    else:
        raise UsageError("eta-check needs --eta or --name")
    v = check_theorem_a(eta)
    _dump(
        {
            "eta": eta.shorthand(),
            "level": eta.level,
            "conditionsHold": v.conditionsHold,
            "isCusp": v.isCusp,
            "weight": _fmt(v.weight),
            "character": None if v.character is None else str(v.character),
            "primitive_character": None if v.character is None else str(v.character.primitive()),
            "orders": {str(d): _fmt(o) for d, o in v.orders},
            "reason": v.reason,
        },
        out,
    )
    return 0


def cmd_basis(args, out) -> int:
    space = space_from_string(args.space)
    basis = basis_for(space, args.variant)
    rows = [(b.label, *[_fmt(c) for c in b.qcoeffs(args.terms)]) for b in basis]
    if args.tsv:
        _tsv(rows, out)
    else:
        _dump({"space": str(space), "terms": args.terms, "basis": [{"label": r[0], "q": list(r[1:])} for r in rows]}, out)
    return 0


def cmd_solve(args, out) -> int:
    form = parse_form(args.form)
    cls = classify(form)
    if not cls.modular:
        raise UsageError(f"h = {form.h} is not a multiple of 8, so q^(h/8) times the series is not on the integer grid")
    space = space_from_string(args.space) if args.space else find_space(cls)
    variant = args.variant
    if variant == "auto":
        # the coefficient tables use the E_2(d tau) spanning set for trivial weight-2 spaces
        variant = "e2" if space.weight == 2 and space.top == 1 else "standard"
    n_terms = required_terms(space, variant)
    target = modular_series(form, 24 * n_terms)
    try:
        vec = express_in_basis(target, space, variant, n_terms)
    except InconsistentSystem as exc:
        _dump({"space": str(space), "error": str(exc), "exponent": exc.exponent}, out)
        return 1
    payload = vec.to_json()
    payload["labels"] = list(vec.labels)
    payload["shift"] = _fmt(form.shift)
    payload["formula"] = formula_as_divisor_sums(vec).text
    if args.tsv:
        _tsv(zip(vec.labels, (_fmt(t) for t in vec.values)), out)
    else:
        _dump(payload, out)
    return 0


def cmd_tables(args, out) -> int:
    tables = args.table or list(TABLE_IDS)
    if args.regen:
        return _regen(out)
    ok = True
    for tid in tables:
        rep = reproduce_table(tid)
        ok &= not rep.mismatches
        if args.tsv:
            _tsv([(rep.table, rep.matched, len(rep.rows))], out)
        else:
            _dump(rep.to_json(), out)
    return 0 if ok else 1


def _regen(out) -> int:
    """Rewrite the coefficient fixtures from freshly solved vectors."""
    import os

    if not os.environ.get(FIXTURE_ENV):
        raise UsageError(f"--regen writes into ${FIXTURE_ENV}; set it to a directory")
    target = fixture_dir()
    target.mkdir(parents=True, exist_ok=True)
    t1 = load_fixture("table1.json")
    app = load_fixture("appendix_tables.json")
    failed = 0

    def refresh(row, order):
        nonlocal failed
        vec, problems, _ = solve_row(row)
        if vec is None:
            failed += 1
            return row
        vals = vec.values if order is None else [vec.values[j] for j in order]
        return {**row, "t": [_fmt(v) for v in vals]}

    new_t1 = [refresh(r, None) for r in t1]
    orders = app.get("column_order", {})
    new_rows = [refresh(r, orders.get(str(r["table"]))) for r in app["rows"]]
    for name, data in (("table1.json", new_t1), ("appendix_tables.json", {"column_order": orders, "rows": new_rows})):
        (target / name).write_text(json.dumps(data, indent=1) + "\n", encoding="utf-8")
    for name in ("formulas.json", "pk_polynomials.json"):
        (target / name).write_text(json.dumps(load_fixture(name), indent=1) + "\n", encoding="utf-8")
    _dump({"written": str(target), "rows": len(new_t1) + len(new_rows), "unsolved": failed}, out)
    return 0 if failed == 0 else 1


def cmd_verify(args, out) -> int:
    reports = run_suite(args.suite, args.nmax)
    for r in reports:
        if args.tsv:
            _tsv([(r.name, r.checkedThrough, "PASS" if r.passed else "FAIL")], out)
        else:
            _dump(r.to_json(), out)
    return 0 if all(r.passed for r in reports) else 1


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="trimix", description="Representation numbers of mixed triangular/square/hexagonal forms.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--tsv", action="store_true", help="tab-separated output instead of JSON")
        sp.set_defaults(func=fn)
        return sp

    sp = add("count", cmd_count, "representation numbers by enumeration")
    sp.add_argument("--form", required=True, help='e.g. "tri:1^2 3^2" or "mixed:2^1 ; 1^2 ; 2^1 6^1"')
    sp.add_argument("--n", default="0..10", help="range A..B (inclusive) or a single n")

    sp = add("series", cmd_series, "q-expansion as JSON")
    sp.add_argument("--form", help="mixed form; prints q^(h/8) times its generating function")
    sp.add_argument("--eta", help='eta-quotient shorthand, e.g. "1^2 2^-1"')
    sp.add_argument("--prec", type=int, default=10, help="number of integer q-powers")

    sp = add("eta-check", cmd_eta_check, "modularity conditions for an eta-quotient")
    sp.add_argument("--eta", help='shorthand such as "2^3 6^3"')
    sp.add_argument("--level", type=int, help="level (defaults to the lcm of the bases)")
    sp.add_argument("--name", help="catalogued cusp form name, e.g. Delta_3_12_chi-3")

    sp = add("basis", cmd_basis, "basis of a catalogued space")
    sp.add_argument("--space", required=True, help='weight,level,character numerator, e.g. "3,24,-24"')
    sp.add_argument("--variant", default="standard", choices=["standard", "e2"])
    sp.add_argument("--terms", type=int, default=20)

    sp = add("solve", cmd_solve, "coefficients of a form's series in a basis")
    sp.add_argument("--form", required=True)
    sp.add_argument("--space", help="override the classified space")
    sp.add_argument("--variant", default="auto", choices=["auto", "standard", "e2"])

    sp = add("tables", cmd_tables, "reproduce the stored coefficient tables")
    sp.add_argument("--table", action="append", choices=list(TABLE_IDS))
    sp.add_argument("--regen", action="store_true", help=f"rewrite fixtures into ${FIXTURE_ENV}")

    sp = add("verify", cmd_verify, "run verification suites")
    sp.add_argument("--suite", default="all", choices=[*SUITES, "all"])
    sp.add_argument("--nmax", type=int, default=60)
    return p


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "prec", 1) is not None and getattr(args, "prec", 1) < 0:
        print("error: --prec must be nonnegative", file=sys.stderr)
        return 2
    try:
        return args.func(args, out)
    except (UsageError, FormSyntaxError, ParityViolation, UnknownSpace, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
