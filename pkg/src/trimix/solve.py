"""Express q-series in catalogued bases with exact rational linear algebra."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Sequence

from . import eisenstein as eis
from .basis import BasisElement, SpaceId, UnknownSpace, basis_for, contains, find_space, space_from_string, sturm_bound
from .forms import classify, modular_series, parse_form
from .qseries import InsufficientPrecision, Series24

__all__ = [
    "CoefficientVector",
    "InconsistentSystem",
    "UnderdeterminedSystem",
    "solve_linear",
    "express_in_basis",
    "combine",
    "residual",
    "required_terms",
    "DivisorSumTerm",
    "RenderedFormula",
    "formula_as_divisor_sums",
    "RowReport",
    "TableReport",
    "reproduce_table",
    "load_fixture",
    "fixture_dir",
    "TABLE_IDS",
    "FIXTURE_ENV",
]


class InconsistentSystem(ValueError):
    """Target is not in the span; ``exponent`` is the first mismatching q-power."""

    def __init__(self, exponent: int, value: Fraction, t: Sequence[Fraction] | None = None):
        super().__init__(f"target not in span: residual {value} at q^{exponent}")
        self.exponent = exponent
        self.value = value
        self.t = list(t) if t is not None else None


class UnderdeterminedSystem(ValueError):
    """Basis coefficients are rank deficient on the rows available."""


@dataclass(frozen=True)
class CoefficientVector:
    space: SpaceId
    values: tuple[Fraction, ...]
    labels: tuple[str, ...] = ()
    variant: str = "standard"
    verified_through: int = 0

    def to_json(self) -> dict:
        return {
            "space": str(self.space),
            "t": [_fmt(v) for v in self.values],
            "verified_through": self.verified_through,
        }


def _fmt(c: Fraction) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def solve_linear(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Fraction]:
    """Solve rows * x = rhs exactly, choosing pivot rows in order.

    The first rows that raise the rank determine x; every row is then checked
    and the first inconsistent one raises :class:`InconsistentSystem` with
    its index.
    """
    m = len(rows[0]) if rows else 0
    # reduced basis of the row space seen so far: list of (pivot column, row, rhs)
    reduced: list[tuple[int, list[Fraction], Fraction]] = []
    for r, b in zip(rows, rhs):
        vec = [Fraction(x) for x in r]
        val = Fraction(b)
        for col, prow, pval in reduced:
            f = vec[col]
            if f:
                vec = [x - f * y for x, y in zip(vec, prow)]
                val -= f * pval
        piv = next((j for j, x in enumerate(vec) if x), None)
        if piv is None:
            continue
        inv = 1 / vec[piv]
        vec = [x * inv for x in vec]
        val *= inv
        # keep the basis fully reduced
        new = []
        for col, prow, pval in reduced:
            f = prow[piv]
            if f:
                prow = [x - f * y for x, y in zip(prow, vec)]
                pval -= f * val
            new.append((col, prow, pval))
        new.append((piv, vec, val))
        reduced = new
        if len(reduced) == m:
            break
    if len(reduced) < m:
        raise UnderdeterminedSystem(f"rank {len(reduced)} < {m} on {len(rows)} rows")
    x = [Fraction(0)] * m
    for col, _, val in reduced:
        x[col] = val
    for i, (r, b) in enumerate(zip(rows, rhs)):
        res = Fraction(b) - sum(Fraction(a) * xi for a, xi in zip(r, x))
        if res:
            raise InconsistentSystem(i, res, x)
    return x


def combine(basis: Sequence[BasisElement], t: Sequence[Fraction], prec24: int) -> Series24:
    total = Series24.zero(prec24)
    for b, c in zip(basis, t):
        if c:
            total = total + b.expansion(prec24) * c
    return total


def residual(target: Series24, basis: Sequence[BasisElement], t: Sequence[Fraction], n_terms: int) -> list[Fraction]:
    combo = combine(basis, t, 24 * n_terms)
    return [target[n] - combo[n] for n in range(n_terms)]


def express_in_basis(
    target: Series24,
    space: SpaceId,
    variant: str = "standard",
    n_terms: int | None = None,
) -> CoefficientVector:
    """Unique t with target = sum t_i f_i on all q^n, n < n_terms.

    ``n_terms`` defaults to max(Sturm bound, dimension) + 1 coefficients,
    i.e. everything through q^bound.
    """
    basis = basis_for(space, variant)
    if not target.on_integer_grid():
        raise ValueError("target must have integer exponents (apply the q^(h/8) shift first)")
    if n_terms is None:
        n_terms = max(sturm_bound(space), len(basis)) + 1
        # dilated elements such as E_2(24 tau) only separate from the others
        # at high powers; use as many known rows as the target offers
        n_terms = max(n_terms, min(target.prec24 // 24, _separating_rows(space, variant)))
    if target.prec24 < 24 * n_terms:
        raise InsufficientPrecision(f"target known through {target.prec24}/24, need {24 * n_terms}")
    cols = [b.qcoeffs(n_terms) for b in basis]
    rows = [[c[n] for c in cols] for n in range(n_terms)]
    rhs = [target[n] for n in range(n_terms)]
    t = solve_linear(rows, rhs)
    return CoefficientVector(
        space,
        tuple(t),
        tuple(b.label for b in basis),
        variant,
        verified_through=n_terms - 1,
    )


def _separating_rows(space: SpaceId, variant: str) -> int:
    """Rows needed for the E_2(d tau) spanning set: up to q^N inclusive."""
    return space.level + 1 if variant == "e2" else 0


def required_terms(space: SpaceId, variant: str = "standard") -> int:
    """Number of q-coefficients express_in_basis reads by default."""
    return max(sturm_bound(space) + 1, len(basis_for(space, variant)) + 1, _separating_rows(space, variant))


# -- rendering -----------------------------------------------------------------

@dataclass(frozen=True)
class DivisorSumTerm:
    """coef * kernel(n/div); kernel is a twisted divisor sum or a named cusp coefficient."""

    coef: Fraction
    kind: str  # "sigma" or "cusp"
    k: int = 0  # divisor power for sigma kernels
    chi: int = 1
    psi: int = 1
    name: str = ""
    div: int = 1

    def key(self):
        return (self.kind, self.k, self.chi, self.psi, self.name, self.div)

    def kernel_text(self) -> str:
        arg = "n" if self.div == 1 else f"n/{self.div}"
        if self.kind == "cusp":
            return f"{_cusp_symbol(self.name)}({arg})"
        if self.chi == 1 and self.psi == 1:
            return f"sigma({arg})" if self.k == 1 else f"sigma_{self.k}({arg})"
        return f"sigma_{{{self.k};{_chi_text(self.chi)},{_chi_text(self.psi)}}}({arg})"


def _chi_text(top: int) -> str:
    return "1" if top == 1 else f"chi{top}"


def _cusp_symbol(name: str) -> str:
    if name == "f_4_6":
        return "a_{4,6}"
    if name == "f_4_12":
        return "a_{4,12}"
    if name.startswith("Delta_"):
        parts = name.split("_")[1:]
        k, N, chi = parts[0], parts[1], parts[2]
        j = f";{parts[3]}" if len(parts) > 3 else ""
        return f"tau_{{{k},{N},{chi}{j}}}"
    return f"a_{{{name}}}"


def _element_terms(elem: BasisElement) -> list[DivisorSumTerm]:
    """Terms giving the q^n coefficient of a basis element for n >= 1."""
    if elem.kind == "cusp":
        name, _, d = elem.label.partition("_at_")
        return [DivisorSumTerm(Fraction(1), "cusp", name=name, div=int(d or 1))]
    return _spec_terms(elem.source, 1)


def _spec_terms(spec, div: int) -> list[DivisorSumTerm]:
    if isinstance(spec, eis.Dilated):
        return _spec_terms(spec.inner, div * spec.d)
    if isinstance(spec, eis.Classical):
        c = -2 * spec.k / eis.bernoulli(spec.k)
        return [DivisorSumTerm(c, "sigma", k=spec.k - 1, div=div)]
    if isinstance(spec, eis.QuasiE2):
        return [DivisorSumTerm(Fraction(-24), "sigma", k=1, div=div)]
    if isinstance(spec, eis.Phi):
        a, b = spec.a, spec.b
        return [
            DivisorSumTerm(Fraction(-24 * b, b - a), "sigma", k=1, div=div * b),
            DivisorSumTerm(Fraction(24 * a, b - a), "sigma", k=1, div=div * a),
        ]
    if isinstance(spec, eis.Twisted):
        return [DivisorSumTerm(Fraction(1), "sigma", k=spec.k - 1, chi=spec.chi.top, psi=spec.psi.top, div=div)]
    raise TypeError(f"no divisor-sum form for {spec!r}")


@dataclass(frozen=True)
class RenderedFormula:
    terms: tuple[DivisorSumTerm, ...]

    @property
    def text(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for i, t in enumerate(self.terms):
            c = t.coef
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            coef = "" if mag == 1 else f"{_fmt(mag)} "
            body = coef + t.kernel_text()
            out.append(("-" + body) if i == 0 and sign == "-" else body if i == 0 else f"{sign} {body}")
        return " ".join(out)

    def __str__(self) -> str:
        return self.text


def formula_as_divisor_sums(vec: CoefficientVector) -> RenderedFormula:
    """Combine t_i with each basis element's divisor-sum kernel, merging like terms.

    The result gives the q^n coefficient of sum t_i f_i for every n >= 1.
    """
    basis = basis_for(vec.space, vec.variant)
    acc: dict[tuple, Fraction] = {}
    order: list[tuple] = []
    for elem, t in zip(basis, vec.values):
        if not t:
            continue
        for term in _element_terms(elem):
            key = term.key()
            if key not in acc:
                acc[key] = Fraction(0)
                order.append(key)
            acc[key] += Fraction(t) * term.coef
    kinds = {"sigma": 0, "cusp": 1}
    order.sort(key=lambda key: (kinds[key[0]], key[1], key[2], key[3], key[4], key[5]))
    terms = tuple(
        DivisorSumTerm(acc[key], key[0], k=key[1], chi=key[2], psi=key[3], name=key[4], div=key[5])
        for key in order
        if acc[key]
    )
    return RenderedFormula(terms)


# -- fixtures and table reproduction -------------------------------------------------

FIXTURE_ENV = "TRIMIX_FIXTURE_DIR"
TABLE_IDS = ("T1",) + tuple(f"T{i}" for i in range(3, 15))


def fixture_dir() -> Path:
    override = os.environ.get(FIXTURE_ENV)
    if override:
        return Path(override)
    return Path(str(resources.files("trimix") / "data"))


def load_fixture(name: str):
    """Read ``name`` from the fixture directory, falling back to the packaged copy."""
    path = fixture_dir() / name
    if not path.exists():
        path = Path(str(resources.files("trimix") / "data")) / name
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _table_rows(table_id: str) -> tuple[list[dict], list[int] | None]:
    tid = _normalize_table_id(table_id)
    if tid == "T1":
        return load_fixture("table1.json"), None
    data = load_fixture("appendix_tables.json")
    num = int(tid[1:])
    rows = [r for r in data["rows"] if r["table"] == num]
    return rows, data.get("column_order", {}).get(str(num))


def _normalize_table_id(table_id) -> str:
    tid = str(table_id).upper()
    if not tid.startswith("T"):
        tid = "T" + tid
    if tid not in TABLE_IDS:
        raise KeyError(f"unknown table {table_id!r}; expected one of {', '.join(TABLE_IDS)}")
    return tid


@dataclass(frozen=True)
class RowReport:
    table: str
    row: int
    label: str
    form: str
    space: str
    expected: tuple[Fraction, ...]
    got: tuple[Fraction, ...] | None
    match: bool
    problems: tuple[str, ...] = ()
    printed_residual: tuple[int, Fraction] | None = None  # first q^n where the printed vector fails
    note: str = ""

    def to_json(self) -> dict:
        out = {
            "table": self.table,
            "row": self.row,
            "form": self.form,
            "space": self.space,
            "match": self.match,
            "expected": [_fmt(x) for x in self.expected],
            "got": None if self.got is None else [_fmt(x) for x in self.got],
        }
        if self.problems:
            out["problems"] = list(self.problems)
        if self.printed_residual is not None:
            out["printed_residual"] = {"n": self.printed_residual[0], "value": _fmt(self.printed_residual[1])}
        if self.note:
            out["note"] = self.note
        return out


@dataclass(frozen=True)
class TableReport:
    table: str
    rows: tuple[RowReport, ...]
    column_order: tuple[int, ...] | None = None

    @property
    def matched(self) -> int:
        return sum(r.match for r in self.rows)

    @property
    def mismatches(self) -> list[RowReport]:
        return [r for r in self.rows if not r.match]

    def to_json(self) -> dict:
        return {
            "table": self.table,
            "rows": len(self.rows),
            "matched": self.matched,
            "column_order": None if self.column_order is None else list(self.column_order),
            "mismatches": [r.to_json() for r in self.mismatches],
        }


def solve_row(row: dict) -> tuple[CoefficientVector | None, list[str], Series24 | None]:
    """Build, classify, expand and solve one fixture row."""
    problems: list[str] = []
    form = parse_form(row["form"])
    space = space_from_string(row["space"])
    variant = row.get("basis", "standard")
    cls = classify(form)
    if not cls.modular:
        problems.append(f"h = {form.h} is not divisible by 8")
    if not contains(space, cls):
        problems.append(f"weight {cls.weight}, level {cls.level}, {cls.character} does not fit {space}")
    if Fraction(row["shift"]) != form.shift:
        problems.append(f"shift {row['shift']} but h/8 = {form.shift}")
    n_terms = required_terms(space, variant)
    target = modular_series(form, 24 * n_terms)
    try:
        vec = express_in_basis(target, space, variant, n_terms)
    except InconsistentSystem as exc:
        problems.append(f"not in span: residual {exc.value} at q^{exc.exponent}")
        vec = None
    return vec, problems, target


def reproduce_table(table_id) -> TableReport:
    """Re-solve every row of a stored table and compare with the printed vectors.

    Printed column i is compared with basis coordinate ``column_order[i]``
    when the fixture records an order for the table.
    """
    tid = _normalize_table_id(table_id)
    rows, order = _table_rows(tid)
    reports = []
    for row in rows:
        expected = tuple(Fraction(x) for x in row["t"])
        vec, problems, target = solve_row(row)
        got = None
        if vec is not None:
            got = vec.values if order is None else tuple(vec.values[j] for j in order)
        match = got is not None and got == expected and not problems
        printed_res = None
        if not match and target is not None:
            space = space_from_string(row["space"])
            basis = basis_for(space, row.get("basis", "standard"))
            coords = list(expected)
            if order is not None:
                coords = [Fraction(0)] * len(order)
                for i, j in enumerate(order):
                    coords[j] = expected[i]
            n_terms = target.prec24 // 24
            res = residual(target, basis, coords, n_terms)
            printed_res = next(((n, v) for n, v in enumerate(res) if v), None)
        reports.append(
            RowReport(
                tid,
                row["row"],
                row["label"],
                row["form"],
                row["space"],
                expected,
                got,
                match,
                tuple(problems),
                printed_res,
                row.get("note", ""),
            )
        )
    return TableReport(tid, tuple(reports), None if order is None else tuple(order))
