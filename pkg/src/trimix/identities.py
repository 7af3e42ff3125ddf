"""End-to-end checks of the identities relating theta-type series, counts and divisor sums.

Every verifier returns a :class:`VerificationReport`; left-hand sides come
from direct enumeration or series products and right-hand sides from divisor
sums or independent expansions, so a pass means two separate computations agree.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from . import eisenstein as eis
from .arith import KroneckerChar, TRIVIAL, gen_bernoulli, gen_divisor_sum, sharp_sigma3, sigma
from .etaq import CATALOG, check_theorem_a, theta_psi_quotient
from .forms import (
    MixedForm,
    count_odd_squares,
    count_squares_signed,
    count_triangular,
    counts_upto,
    ellipsoid_lattice_count,
    ellipsoid_shell_sum,
    parse_form,
)
from .qseries import Series24, dilate, first_difference, psi_series, theta_series
from .solve import TABLE_IDS, load_fixture, reproduce_table

__all__ = [
    "VerificationReport",
    "verify_psi_theta",
    "verify_odd_square",
    "verify_relations",
    "verify_relations1",
    "verify_21_formulas",
    "verify_pk",
    "verify_ellipsoid",
    "verify_sample_formulas",
    "verify_eta_expressions",
    "verify_theorem_condition",
    "verify_tables",
    "formula_value",
    "SUITES",
    "run_suite",
]


@dataclass(frozen=True)
class VerificationReport:
    name: str
    checkedThrough: int
    passed: bool
    firstFailure: tuple | None = None  # (index, lhs, rhs)
    failures: tuple[str, ...] = ()  # per-item descriptions for multi-item checks
    detail: str = ""

    def __post_init__(self):
        if self.passed != (self.firstFailure is None):
            raise ValueError("passed must hold exactly when firstFailure is absent")

    def to_json(self) -> dict:
        out = {"name": self.name, "checkedThrough": self.checkedThrough, "passed": self.passed}
        if self.firstFailure is not None:
            out["firstFailure"] = [_jsonable(x) for x in self.firstFailure]
        if self.failures:
            out["failures"] = list(self.failures)
        if self.detail:
            out["detail"] = self.detail
        return out


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    if isinstance(x, tuple):
        return [_jsonable(y) for y in x]
    return x


def _compare(name: str, pairs: Iterable[tuple], through: int, detail: str = "") -> VerificationReport:
    """pairs yields (index, lhs, rhs); stops at the first disagreement."""
    for idx, lhs, rhs in pairs:
        if lhs != rhs:
            return VerificationReport(name, through, False, (idx, lhs, rhs), detail=detail)
    return VerificationReport(name, through, True, detail=detail)


def _merge(name: str, reports: Sequence[VerificationReport], through: int, detail: str = "") -> VerificationReport:
    bad = [r for r in reports if not r.passed]
    if not bad:
        return VerificationReport(name, through, True, detail=detail)
    first = bad[0]
    return VerificationReport(
        name,
        through,
        False,
        (first.name,) + tuple(first.firstFailure),
        tuple(f"{r.name}: index {r.firstFailure[0]}, lhs {r.firstFailure[1]}, rhs {r.firstFailure[2]}" for r in bad),
        detail,
    )


def _series_pairs(a: Series24, b: Series24, n_terms: int):
    for n in range(n_terms):
        yield n, a[n], b[n]


def _dilated(fn: Callable[[int], Series24], d: int, prec24: int) -> Series24:
    return dilate(fn(-(-prec24 // d)), d).truncate(prec24)


# -- theta / psi ---------------------------------------------------------------

def verify_psi_theta(prec: int = 200, c: Sequence[int] = (1,), perturb_at: int | None = None) -> VerificationReport:
    """Psi_C(tau)^2 = prod theta(c_i tau) * Psi_C(2 tau) through q^prec.

    ``perturb_at`` adds 1 to that coefficient of the left side (negative control).
    """
    n_terms = prec + 1
    P = 24 * n_terms
    psi_c = Series24.one(P)
    theta_c = Series24.one(P)
    for ci in c:
        psi_c = psi_c * _dilated(psi_series, ci, P)
        theta_c = theta_c * _dilated(theta_series, ci, P)
    lhs = psi_c * psi_c
    if perturb_at is not None:
        lhs = lhs + Series24.monomial(24 * perturb_at, 1, P)
    rhs = theta_c * dilate(psi_c.truncate(-(-P // 2)), 2).truncate(P)
    name = "psi^2 = theta psi(2 tau)" if tuple(c) == (1,) else f"Psi_C^2 = prod theta(c tau) Psi_C(2 tau), C={tuple(c)}"
    return _compare(name, _series_pairs(lhs, rhs, n_terms), prec)


def verify_eta_expressions(prec: int = 200) -> VerificationReport:
    """theta and q^(1/8) Psi against their eta-quotient expressions."""
    P = 24 * (prec + 1)
    checks = [
        ("theta = eta(2)^5/(eta(1)^2 eta(4)^2)", theta_psi_quotient((1,), ()).expand(P), theta_series(P)),
        (
            "q^(1/8) Psi = eta(2)^2/eta(1)",
            theta_psi_quotient((), (1,)).expand(P),
            Series24.monomial(3, 1, P) * psi_series(P),
        ),
    ]
    reports = []
    for name, a, b in checks:
        diff = first_difference(a, b, P)
        if diff is None:
            reports.append(VerificationReport(name, prec, True))
        else:
            e, x, y = diff
            reports.append(VerificationReport(name, prec, False, (Fraction(e, 24), x, y)))
    return _merge("eta expressions", reports, prec)


# -- counting identities -------------------------------------------------------------

def verify_odd_square(
    c_max: int = 6,
    n_max: int = 50,
    trials: int = 20,
    k_max: int = 6,
    seed: int = 0,
    c_sets: Sequence[Sequence[int]] | None = None,
) -> VerificationReport:
    """delta_k(C; n) = q_k(C; 8n + h) by enumerating both sides."""
    if c_sets is None:
        rng = random.Random(seed)
        c_sets = [
            tuple(rng.randint(1, c_max) for _ in range(rng.randint(1, k_max)))
            for _ in range(trials)
        ]
    reports = []
    for c in c_sets:
        h = sum(c)
        pairs = ((n, count_triangular(c, n), count_odd_squares(c, 8 * n + h)) for n in range(n_max + 1))
        reports.append(_compare(f"C={tuple(c)}", pairs, n_max))
    return _merge("delta_k(C;n) = q_k(C;8n+h)", reports, n_max)


def _r(k: int, n: int) -> int:
    return count_squares_signed((1,) * k, n)


def _delta(k: int, n: int) -> int:
    return count_triangular((1,) * k, n)


def _q(k: int, n: int) -> int:
    return count_odd_squares((1,) * k, n)


def _split_sum(n: int, f: Callable[[int], Fraction], g: Callable[[int], Fraction]) -> Fraction:
    """sum over a + 2b = n, a, b >= 0 of f(a) g(b)."""
    return sum((Fraction(f(n - 2 * b)) * g(b) for b in range(n // 2 + 1)), Fraction(0))


def verify_relations(k_max: int = 4, n_max: int = 40, c_sets: Sequence[Sequence[int]] = ((1, 2), (1, 3), (2, 3))) -> VerificationReport:
    """q_2k(8n+2k) = delta_2k(n) = sum r_k(a) delta_k(b) = sum r_k(a) q_k(8b+k), plus the weighted version."""
    reports = []
    for k in range(1, k_max + 1):
        def pairs(k=k):
            for n in range(n_max + 1):
                d2k = _delta(2 * k, n)
                yield n, _q(2 * k, 8 * n + 2 * k), d2k
                yield n, d2k, _split_sum(n, lambda a: _r(k, a), lambda b: _delta(k, b))
                yield n, d2k, _split_sum(n, lambda a: _r(k, a), lambda b: _q(k, 8 * b + k))
        reports.append(_compare(f"k={k}", pairs(), n_max))
    for c in c_sets:
        c2 = tuple(c) + tuple(c)
        h = sum(c)

        def pairs(c=c, c2=c2, h=h):
            for n in range(n_max + 1):
                d2k = count_triangular(c2, n)
                yield n, count_odd_squares(c2, 8 * n + 2 * h), d2k
                yield n, d2k, _split_sum(n, lambda a: count_squares_signed(c, a), lambda b: count_triangular(c, b))
                yield n, d2k, _split_sum(n, lambda a: count_squares_signed(c, a), lambda b: count_odd_squares(c, 8 * b + h))
        reports.append(_compare(f"C={tuple(c)}", pairs(), n_max))
    return _merge("sum-of-squares / triangular relations", reports, n_max)


CHI_M4 = KroneckerChar(-4)


def eisenstein_sigma(r: int, chi: KroneckerChar, psi: KroneckerChar, n) -> Fraction:
    """sigma_{r;chi,psi}(n) for integers n >= 1; at n = 0 the Eisenstein constant term.

    The constant term is -B_{r+1,psi}/(2(r+1)) for trivial chi and 0 otherwise,
    which gives sigma(0) = -1/24 and sigma_3(0) = 1/240.  Non-integers give 0.
    """
    n = Fraction(n)
    if n.denominator != 1 or n < 0:
        return Fraction(0)
    if n == 0:
        if not chi.is_trivial():
            return Fraction(0)
        return -gen_bernoulli(r + 1, psi) / (2 * (r + 1))
    return Fraction(gen_divisor_sum(r, chi, psi, int(n)))


def verify_relations1(n_max: int = 40) -> VerificationReport:
    """delta_4/6/8/12/16 in terms of r_k and divisor sums, the r_4/r_6/r_8 formulas and the double sums.

    Inside the double sums the a = 0 term uses :func:`eisenstein_sigma`, the
    constant term of the matching Eisenstein series; r_k(0) = delta_k(0) = 1.
    """
    one = TRIVIAL
    sig = lambda r, n: eisenstein_sigma(r, one, one, n)  # noqa: E731
    s2_1m4 = lambda n: eisenstein_sigma(2, one, CHI_M4, n)  # noqa: E731
    s2_m41 = lambda n: eisenstein_sigma(2, CHI_M4, one, n)  # noqa: E731
    checks: list[tuple[str, Callable[[int], Fraction], Callable[[int], Fraction], int]] = [
        ("delta_2(n) = r_2(8n+2)/4", lambda n: _delta(2, n), lambda n: Fraction(_r(2, 8 * n + 2), 4), 0),
        ("delta_3(n) = r_3(8n+3)/8", lambda n: _delta(3, n), lambda n: Fraction(_r(3, 8 * n + 3), 8), 0),
        ("delta_4(n) = sigma(2n+1)", lambda n: _delta(4, n), lambda n: sigma(1, 2 * n + 1), 0),
        ("delta_6(n) = -sigma_{2;1,chi-4}(4n+3)/8", lambda n: _delta(6, n), lambda n: -s2_1m4(4 * n + 3) / 8, 0),
        ("delta_8(n) = sigma_3#(n+1)", lambda n: _delta(8, n), lambda n: sharp_sigma3(n + 1), 0),
        (
            "delta_4(n) = 1/4 sum r_2(a) r_2(8b+2)",
            lambda n: _delta(4, n),
            lambda n: _split_sum(n, lambda a: _r(2, a), lambda b: _r(2, 8 * b + 2)) / 4,
            0,
        ),
        (
            "delta_6(n) = 1/8 sum r_3(a) r_3(8b+3)",
            lambda n: _delta(6, n),
            lambda n: _split_sum(n, lambda a: _r(3, a), lambda b: _r(3, 8 * b + 3)) / 8,
            0,
        ),
        (
            "delta_8(n) = sum r_4(a) sigma(2b+1)",
            lambda n: _delta(8, n),
            lambda n: _split_sum(n, lambda a: _r(4, a), lambda b: sigma(1, 2 * b + 1)),
            0,
        ),
        (
            "delta_12(n) = -1/8 sum r_6(a) sigma_{2;1,chi-4}(4b+3)",
            lambda n: _delta(12, n),
            lambda n: -_split_sum(n, lambda a: _r(6, a), lambda b: s2_1m4(4 * b + 3)) / 8,
            0,
        ),
        (
            "delta_16(n) = sum r_8(a) sigma_3#(b+1)",
            lambda n: _delta(16, n),
            lambda n: _split_sum(n, lambda a: _r(8, a), lambda b: sharp_sigma3(b + 1)),
            0,
        ),
        ("r_4(n) = 8 sigma(n) - 32 sigma(n/4)", lambda n: _r(4, n), lambda n: 8 * sig(1, n) - 32 * sig(1, Fraction(n, 4)), 1),
        (
            "r_6(n) = -4 sigma_{2;1,chi-4}(n) + 16 sigma_{2;chi-4,1}(n)",
            lambda n: _r(6, n),
            lambda n: -4 * s2_1m4(n) + 16 * s2_m41(n),
            1,
        ),
        (
            "r_8(n) = 16 sigma_3(n) - 32 sigma_3(n/2) + 256 sigma_3(n/4)",
            lambda n: _r(8, n),
            lambda n: 16 * sig(3, n) - 32 * sig(3, Fraction(n, 2)) + 256 * sig(3, Fraction(n, 4)),
            1,
        ),
        (
            "delta_8 double sum",
            lambda n: _delta(8, n),
            lambda n: _split_sum(n, lambda a: 8 * sig(1, a) - 32 * sig(1, Fraction(a, 4)), lambda b: sigma(1, 2 * b + 1)),
            0,
        ),
        (
            "delta_12 double sum",
            lambda n: _delta(12, n),
            lambda n: _split_sum(n, lambda a: s2_1m4(a) / 2 - 2 * s2_m41(a), lambda b: s2_1m4(4 * b + 3)),
            0,
        ),
        (
            "delta_16 double sum",
            lambda n: _delta(16, n),
            lambda n: _split_sum(
                n,
                lambda a: 16 * sig(3, a) - 32 * sig(3, Fraction(a, 2)) + 256 * sig(3, Fraction(a, 4)),
                lambda b: sharp_sigma3(b + 1),
            ),
            0,
        ),
    ]
    reports = [
        _compare(name, ((n, Fraction(lhs(n)), Fraction(rhs(n))) for n in range(start, n_max + 1)), n_max)
        for name, lhs, rhs, start in checks
    ]
    return _merge(
        "delta_k and r_k divisor-sum formulas",
        reports,
        n_max,
        "divisor sums at 0 take the Eisenstein constant term (sigma(0) = -1/24, sigma_3(0) = 1/240, sigma_{2;1,chi-4}(0) = -1/4)",
    )


def verify_theorem_condition(trials: int = 200, k_max: int = 8, c_max: int = 12, seed: int = 0) -> VerificationReport:
    """Congruence condition (i) for prod eta(2c tau)^2/eta(c tau) holds iff h = 0 mod 8."""
    rng = random.Random(seed)
    for i in range(trials):
        k = 2 * rng.randint(1, k_max // 2)
        c = tuple(rng.randint(1, c_max) for _ in range(k))
        e = theta_psi_quotient((), c)
        cond_i = e.order24 % 24 == 0 and sum((e.level // d) * r for d, r in e.exps) % 24 == 0
        if cond_i != (sum(c) % 8 == 0):
            return VerificationReport("eta condition (i) iff 8 | h", trials, False, (i, cond_i, sum(c) % 8 == 0), detail=f"C={c}")
    return VerificationReport("eta condition (i) iff 8 | h", trials, True)


# -- ellipsoid -----------------------------------------------------------------

def verify_ellipsoid(
    c_sets: Sequence[Sequence[int]] = ((1, 1), (1, 3), (1, 2, 3)),
    r2_max=30,
    grid=Fraction(1, 2),
) -> VerificationReport:
    """Lattice points in sum c_i (z_i - 1/2)^2 <= R^2 against 2^k times a partial sum of delta_k(C; n).

    R^2 runs over the positive multiples of ``grid`` up to ``r2_max``; the
    boundary counts as inside.  The partial sum starts at n = 0; the report
    records whether starting at n = 1 would also have matched.
    """
    grid = Fraction(grid)
    steps = int(Fraction(r2_max) / grid)
    reports = []
    from_one_ok = True
    for c in c_sets:
        pts = []
        for i in range(1, steps + 1):
            R2 = i * grid
            lhs = ellipsoid_lattice_count(c, R2)
            pts.append((R2, lhs, ellipsoid_shell_sum(c, R2, start=0)))
            if lhs != ellipsoid_shell_sum(c, R2, start=1):
                from_one_ok = False
        reports.append(_compare(f"C={tuple(c)}", iter(pts), steps))
    detail = "sum from n = 0; boundary points inside; " + (
        "starting at n = 1 also matches" if from_one_ok else "starting at n = 1 misses the 2^k points of the n = 0 shell"
    )
    return _merge("ellipsoid lattice points", reports, steps, detail)


# -- closed formulas ------------------------------------------------------------------

_CUSP_CACHE: dict[tuple[str, int], list[Fraction]] = {}


def _cusp_coeffs(name: str, n_terms: int) -> list[Fraction]:
    key = (name, n_terms)
    if key not in _CUSP_CACHE:
        _CUSP_CACHE[key] = CATALOG[name].form.expand(24 * n_terms).qcoeffs(n_terms)
    return _CUSP_CACHE[key]


def formula_value(terms: Sequence[dict], n: int, n_terms: int | None = None) -> Fraction:
    """Right-hand side of a stored closed formula at n >= 1."""
    n_terms = n_terms or n + 1
    total = Fraction(0)
    for t in terms:
        d = t["div"]
        if n % d:
            continue
        m = n // d
        if t["fn"] == "sigma":
            v = gen_divisor_sum(t["k"], KroneckerChar(t["chi"]), KroneckerChar(t["psi"]), m)
        else:
            v = _cusp_coeffs(t["name"], max(n_terms, m + 1))[m]
        total += Fraction(t["coef"]) * v
    return total


def _formula_reports(entries: Sequence[dict], n_max: int) -> list[VerificationReport]:
    reports = []
    for e in entries:
        form = parse_form(e["form"])
        counts = counts_upto(form, n_max)
        p = e["shift"]
        pairs = (
            (n, Fraction(counts[n - p] if n >= p else 0), formula_value(e["terms"], n, n_max + 1))
            for n in range(1, n_max + 1)
        )
        reports.append(_compare(f"{e['source']} row {e['row']}: {e['label']}", pairs, n_max))
    return reports


def verify_21_formulas(n_max: int = 60) -> VerificationReport:
    """The weight-4 level-12 formulas against brute-force counts, n = 1..n_max.

    The formula at n gives the count at n - p; for n < p it must vanish.
    """
    entries = load_fixture("formulas.json")["weight4"]
    return _merge("weight-4 formulas", _formula_reports(entries, n_max), n_max)


def verify_sample_formulas(n_max: int = 60, sources: Sequence[str] = ("sample4", "sample6")) -> VerificationReport:
    """The stored weight-2 and weight-3 sample formulas against brute force, n = 1..n_max."""
    data = load_fixture("formulas.json")
    entries = [e for s in sources for e in data[s]]
    return _merge("sample formulas", _formula_reports(entries, n_max), n_max)


# -- (p, k) parametrization --------------------------------------------------------------

def _pk_target(name: str, P: int) -> Series24:
    if name.startswith("E4"):
        d = int(name.split("_at_")[1]) if "_at_" in name else 1
        spec = eis.Classical(4) if d == 1 else eis.Dilated(eis.Classical(4), d)
        return eis.expand(spec, P)
    return CATALOG[name].form.expand(P)


def verify_pk(prec: int = 100, entries: Sequence[dict] | None = None) -> VerificationReport:
    """Polynomials in p = (theta^2 - theta^2(3 tau))/(2 theta^2(3 tau)) times k^4, k = theta^3(3 tau)/theta."""
    entries = entries if entries is not None else load_fixture("pk_polynomials.json")
    n_terms = prec + 1
    P = 24 * n_terms
    th = theta_series(P)
    th3 = _dilated(theta_series, 3, P)
    th3sq = th3 * th3
    p = (th * th - th3sq) / (th3sq * 2)
    k = th3 ** 3 / th
    k4 = k ** 4
    powers = [Series24.one(P)]
    reports = []
    for e in entries:
        coeffs = [Fraction(c) for c in e["p_coeffs"]]
        while len(powers) < len(coeffs):
            powers.append(powers[-1] * p)
        poly = Series24.zero(P)
        for c, pw in zip(coeffs, powers):
            if c:
                poly = poly + pw * c
        lhs = poly * k4 ** (e.get("k_power", 4) // 4)
        rhs = _pk_target(e["target"], P)
        reports.append(_compare(e["name"], _series_pairs(lhs, rhs, n_terms), prec))
    return _merge("(p,k) parametrizations", reports, prec)


# -- tables -----------------------------------------------------------------------

def verify_tables(tables: Sequence[str] = TABLE_IDS) -> VerificationReport:
    reports = []
    total = 0
    for tid in tables:
        rep = reproduce_table(tid)
        total += len(rep.rows)
        for row in rep.rows:
            if not row.match:
                reports.append(
                    VerificationReport(f"{tid} row {row.row}", 0, False, (row.row, row.expected, row.got), row.problems)
                )
    if not reports:
        return VerificationReport("coefficient tables", total, True)
    return _merge("coefficient tables", reports, total)


# -- suites ------------------------------------------------------------------------

def _identities(n_max: int) -> list[VerificationReport]:
    return [
        verify_psi_theta(200),
        verify_psi_theta(200, (1, 2)),
        verify_eta_expressions(200),
        verify_odd_square(n_max=min(n_max, 50)),
        verify_relations(n_max=min(n_max, 40)),
        verify_relations1(min(n_max, 40)),
        verify_theorem_condition(),
        verify_ellipsoid(),
        verify_21_formulas(n_max),
        verify_sample_formulas(n_max),
    ]


SUITES: dict[str, Callable[[int], list[VerificationReport]]] = {
    "identities": _identities,
    "tables": lambda n_max: [verify_tables()],
    "pk": lambda n_max: [verify_pk(100)],
}


def run_suite(name: str, n_max: int = 60) -> list[VerificationReport]:
    if name == "all":
        return [r for key in ("identities", "tables", "pk") for r in SUITES[key](n_max)]
    return SUITES[name](n_max)
