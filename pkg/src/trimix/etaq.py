"""Eta-quotients: modularity checks, q-expansions and a catalog of named cusp forms.

Shorthand ``"1^2 2^-1 4^3"`` stands for eta(tau)^2 eta(2 tau)^-1 eta(4 tau)^3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence, Union

from .arith import KroneckerChar, divisors
from .qseries import Series24, euler_product, from_integer_coeffs, mul

__all__ = [
    "EtaQuotient",
    "EtaCombination",
    "TheoremAVerdict",
    "UnknownName",
    "check_theorem_a",
    "parse_eta",
    "expand",
    "named_cusp_form",
    "theta_psi_quotient",
    "CATALOG",
    "CUSP_FORMS",
]


class UnknownName(KeyError):
    pass


@dataclass(frozen=True, init=False)
class EtaQuotient:
    level: int
    exps: tuple[tuple[int, int], ...]

    def __init__(self, level: int, exps: Mapping[int, int] | Sequence):
        clean = tuple(sorted((int(d), int(r)) for d, r in dict(exps).items() if r))
        for d, _ in clean:
            if level % d:
                raise ValueError(f"{d} does not divide the level {level}")
        object.__setattr__(self, "level", int(level))
        object.__setattr__(self, "exps", clean)

    @property
    def weight(self) -> Fraction:
        return Fraction(sum(r for _, r in self.exps), 2)

    @property
    def order24(self) -> int:
        """Exponent of the leading q-power, in units of 1/24."""
        return sum(d * r for d, r in self.exps)

    def r(self, d: int) -> int:
        return dict(self.exps).get(d, 0)

    def dilate(self, m: int) -> "EtaQuotient":
        return EtaQuotient(self.level * m, {d * m: r for d, r in self.exps})

    def at_level(self, level: int) -> "EtaQuotient":
        return EtaQuotient(level, dict(self.exps))

    def shorthand(self) -> str:
        return " ".join(f"{d}^{r}" for d, r in self.exps)

    def expand(self, prec24: int) -> Series24:
        return expand(self, prec24)

    def __str__(self) -> str:
        return self.shorthand()


def parse_eta(text: str, level: int | None = None) -> EtaQuotient:
    """Parse ``"1^2 2^-1 4^3"``; the level defaults to the lcm of the bases."""
    exps: dict[int, int] = {}
    for tok in text.replace("{", "").replace("}", "").split():
        base, _, exp = tok.partition("^")
        exps[int(base)] = exps.get(int(base), 0) + (int(exp) if exp else 1)
    if level is None:
        level = math.lcm(*exps) if exps else 1
    return EtaQuotient(level, exps)


@dataclass(frozen=True)
class TheoremAVerdict:
    conditionsHold: bool
    isCusp: bool
    weight: Fraction
    character: KroneckerChar | None
    reason: str = ""
    orders: tuple[tuple[int, Fraction], ...] = ()


def check_theorem_a(e: EtaQuotient) -> TheoremAVerdict:
    """Sufficient conditions for an eta-quotient to lie in M_k(Gamma_0(M), chi).

    (i)  sum delta r_delta = 0 and sum (M/delta) r_delta = 0 modulo 24;
    (ii) sum_delta gcd(d, delta)^2 r_delta / delta >= 0 for each d | M.
    The quantity in (ii) only depends on gcd(d, M), so divisors of M
    exhaust all d >= 1.  Strict positivity at every d gives a cusp form.
    """
    M = e.level
    k = e.weight
    if k.denominator != 1 or k <= 0:
        return TheoremAVerdict(False, False, k, None, "weight is not a positive integer")
    k = int(k)
    orders = []
    for d in divisors(M):
        val = sum(Fraction(math.gcd(d, delta) ** 2 * r, delta) for delta, r in e.exps)
        orders.append((d, val))
    cond_i = e.order24 % 24 == 0 and sum((M // d) * r for d, r in e.exps) % 24 == 0
    cond_ii = all(v >= 0 for _, v in orders)
    s = math.prod(d ** abs(r) for d, r in e.exps)
    chi = KroneckerChar((-1) ** k * s)
    reasons = []
    if not cond_i:
        reasons.append("congruence condition fails")
    if not cond_ii:
        reasons.append("negative order at some cusp")
    holds = cond_i and cond_ii
    cusp = holds and all(v > 0 for _, v in orders)
    return TheoremAVerdict(holds, cusp, Fraction(k), chi, "; ".join(reasons), tuple(orders))


def _power(base: list[int], r: int, n: int) -> list[Fraction | int]:
    """Truncated r-th power (r may be negative) of an integer series with constant term 1."""
    if r < 0:
        inv = [0] * n
        inv[0] = 1
        nz = [(i, c) for i, c in enumerate(base[:n]) if c and i]
        for m in range(1, n):
            s = 0
            for i, c in nz:
                if i > m:
                    break
                s += c * inv[m - i]
            inv[m] = -s
        base, r = inv, -r
    out = [1] + [0] * (n - 1)
    for _ in range(r):
        out = _int_mul(out, base, n)
    return out


def _int_mul(a: list[int], b: list[int], n: int) -> list[int]:
    out = [0] * n
    bn = [(j, y) for j, y in enumerate(b[:n]) if y]
    for i, x in enumerate(a[:n]):
        if not x:
            continue
        for j, y in bn:
            if i + j >= n:
                break
            out[i + j] += x * y
    return out


def expand(e: EtaQuotient, prec24: int) -> Series24:
    """q-expansion of the quotient, offset = sum delta r_delta (in 1/24 units)."""
    off = e.order24
    n = max(0, -(-(prec24 - off) // 24))
    if n == 0:
        return Series24.zero(prec24)
    prod = [1] + [0] * (n - 1)
    for d, r in e.exps:
        base = [0] * n
        for i, c in enumerate(euler_product(-(-n // d))):
            if i * d < n:
                base[i * d] = c
        prod = _int_mul(prod, _power(base, r, n), n)
    return from_integer_coeffs(prod, prec24=prec24, offset24=off)


@dataclass(frozen=True)
class EtaCombination:
    """Formal rational combination sum c_j * eta-quotient_j."""

    terms: tuple[tuple[Fraction, EtaQuotient], ...]

    @property
    def weight(self) -> Fraction:
        ws = {q.weight for _, q in self.terms}
        if len(ws) != 1:
            raise ValueError("mixed weights in combination")
        return ws.pop()

    @property
    def level(self) -> int:
        return math.lcm(*(q.level for _, q in self.terms))

    def dilate(self, m: int) -> "EtaCombination":
        return EtaCombination(tuple((c, q.dilate(m)) for c, q in self.terms))

    def expand(self, prec24: int) -> Series24:
        total = Series24.zero(prec24)
        for c, q in self.terms:
            total = total + expand(q, prec24) * c
        return total

    def shorthand(self) -> str:
        return " + ".join(f"({c})*[{q.shorthand()}]" for c, q in self.terms)

    def __add__(self, other: "EtaCombination") -> "EtaCombination":
        return EtaCombination(self.terms + other.terms)

    def scale(self, c) -> "EtaCombination":
        return EtaCombination(tuple((Fraction(c) * a, q) for a, q in self.terms))


EtaLike = Union[EtaQuotient, EtaCombination]


def theta_psi_quotient(squares: Sequence[int] = (), tri: Sequence[int] = ()) -> EtaQuotient:
    """prod theta(b tau) prod q^(c/8) Psi(c tau) as one eta-quotient.

    theta = eta(2)^5 / (eta(1)^2 eta(4)^2) and q^(1/8) Psi = eta(2)^2 / eta(1).
    """
    exps: dict[int, int] = {}

    def bump(d: int, r: int) -> None:
        exps[d] = exps.get(d, 0) + r

    for b in squares:
        bump(2 * b, 5)
        bump(b, -2)
        bump(4 * b, -2)
    for c in tri:
        bump(2 * c, 2)
        bump(c, -1)
    level = math.lcm(*exps) if exps else 1
    return EtaQuotient(level, exps)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    form: EtaLike
    weight: int
    level: int
    character: KroneckerChar


def _entry(name: str, text: str, k: int, N: int, top: int) -> CatalogEntry:
    return CatalogEntry(name, parse_eta(text, N), k, N, KroneckerChar(top))


_F46 = parse_eta("1^2 2^2 3^2 6^2", 6)
_F412 = EtaCombination(
    (
        (Fraction(1), parse_eta("2^2 3^3 4^3 6^2 1^-1 12^-1", 12)),
        (Fraction(-1), parse_eta("1^3 2^2 6^2 12^3 3^-1 4^-1", 12)),
    )
)

CUSP_FORMS: dict[str, CatalogEntry] = {
    e.name: e
    for e in [
        _entry("Delta_2_24_chi0", "2^1 4^1 6^1 12^1", 2, 24, 1),
        _entry("Delta_2_24_chi8_1", "1^1 2^-1 3^-1 6^4 8^2 12^-1", 2, 24, 8),
        _entry("Delta_2_24_chi8_2", "1^2 4^-1 6^-1 8^1 12^4 24^-1", 2, 24, 8),
        _entry("Delta_2_24_chi24_1", "1^1 2^-1 3^-1 4^1 6^4 12^-2 24^2", 2, 24, 24),
        _entry("Delta_2_24_chi24_2", "1^2 2^-2 4^4 6^1 8^-1 12^-1 24^1", 2, 24, 24),
        _entry("Delta_3_8_chi-8", "1^2 2^1 4^1 8^2", 3, 8, -8),
        _entry("Delta_3_12_chi-3", "2^3 6^3", 3, 12, -3),
        _entry("Delta_3_12_chi-4_1", "1^4 2^-1 4^1 6^1 12^1", 3, 12, -4),
        _entry("Delta_3_12_chi-4_2", "1^1 2^1 3^1 6^-1 12^4", 3, 12, -4),
        _entry("Delta_3_24_chi-3_1", "1^3 2^1 3^-1 4^4 6^1 8^-3 24^1", 3, 24, -3),
        _entry("Delta_3_24_chi-3_2", "1^-3 2^4 3^1 4^1 8^3 12^1 24^-1", 3, 24, -3),
        _entry("Delta_3_24_chi-8_1", "1^-2 2^4 4^4 6^1 8^-2 12^1", 3, 24, -8),
        _entry("Delta_3_24_chi-8_2", "1^2 4^3 6^3 8^-1 12^-2 24^1", 3, 24, -8),
        _entry("Delta_3_24_chi-8_3", "2^3 3^2 4^-2 8^1 12^3 24^-1", 3, 24, -8),
        _entry("Delta_3_24_chi-8_4", "1^1 2^1 3^-1 4^1 6^2 8^1 12^2 24^-1", 3, 24, -8),
        _entry("Delta_3_24_chi-24_1", "1^-3 2^9 3^-1 4^-3 6^4 12^-2 24^2", 3, 24, -24),
        _entry("Delta_3_24_chi-24_2", "1^-2 2^8 6^1 8^-1 12^-1 24^1", 3, 24, -24),
        _entry("Delta_3_24_chi-24_3", "1^1 2^-5 3^-1 4^11 6^4 8^-4 12^-2 24^2", 3, 24, -24),
        _entry("Delta_3_24_chi-24_4", "1^2 2^-6 4^14 6^1 8^-5 12^-1 24^1", 3, 24, -24),
        _entry("Delta_3_24_chi-24_5", "1^1 2^-1 3^-5 4^1 6^14 12^-6 24^2", 3, 24, -24),
        _entry("Delta_3_24_chi-24_6", "1^2 2^-2 3^-4 4^4 6^11 8^-1 12^-5 24^1", 3, 24, -24),
        CatalogEntry("f_4_6", _F46, 4, 6, KroneckerChar(1)),
    ]
}

_COMBOS: dict[str, CatalogEntry] = {
    "f_4_6_at_2": CatalogEntry("f_4_6_at_2", _F46.dilate(2), 4, 12, KroneckerChar(1)),
    "f_4_12": CatalogEntry("f_4_12", _F412, 4, 12, KroneckerChar(1)),
    "G": CatalogEntry(
        "G",
        EtaCombination(((Fraction(-1, 6), _F46.at_level(12)), (Fraction(-1, 3), _F46.dilate(2))))
        + _F412.scale(Fraction(1, 6)),
        4,
        12,
        KroneckerChar(1),
    ),
    "H": CatalogEntry(
        "H",
        EtaCombination(((Fraction(1, 2), _F46.at_level(12)), (Fraction(1), _F46.dilate(2))))
        + _F412.scale(Fraction(1, 2)),
        4,
        12,
        KroneckerChar(1),
    ),
}

CATALOG: dict[str, CatalogEntry] = {**CUSP_FORMS, **_COMBOS}


def named_cusp_form(name: str) -> EtaLike:
    try:
        return CATALOG[name].form
    except KeyError:
        raise UnknownName(name) from None
