"""Mixed forms built from hexagonal, square and triangular pieces.

A :class:`MixedForm` holds three coefficient lists:

* ``hex``: a_i, each contributing a_i (x^2 + xy + y^2) over x, y in Z;
* ``squares``: b_i, each contributing b_i y^2 over y in Z;
* ``tri``: c_i, each contributing c_i T_z = c_i z(z+1)/2 over z >= 0.

The counting functions here are direct enumerations and never touch the
series engine, so they serve as independent oracles for it.
"""

from __future__ import annotations

import math
import re
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Callable, Iterable, Sequence

from .arith import KroneckerChar
from .qseries import (
    Series24,
    dilate,
    hex_theta_series,
    psi_series,
    theta_series,
)

__all__ = [
    "MixedForm",
    "ModularClassification",
    "ParityViolation",
    "FormSyntaxError",
    "parse_form",
    "classify",
    "count_triangular",
    "count_squares_signed",
    "count_odd_squares",
    "count_hex",
    "count_mixed",
    "counts_upto",
    "gen_series",
    "modular_series",
    "ellipsoid_lattice_count",
    "ellipsoid_shell_sum",
]


class ParityViolation(ValueError):
    """The weight would be a half-integer."""


class FormSyntaxError(ValueError):
    """Unparseable form descriptor."""


def _lcm(xs: Iterable[int]) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b), xs, 1)


TABULATED_SETS = {"hex": {1, 2, 4, 8}, "squares": {1, 2, 3, 6}, "tri": {1, 2, 3, 4, 6}}


@dataclass(frozen=True)
class MixedForm:
    hex: tuple[int, ...] = ()
    squares: tuple[int, ...] = ()
    tri: tuple[int, ...] = ()
    strict: bool = field(default=False, compare=False)

    def __post_init__(self):
        for name in ("hex", "squares", "tri"):
            vals = tuple(sorted(int(x) for x in getattr(self, name)))
            if any(x < 1 for x in vals):
                raise ValueError(f"{name} coefficients must be positive")
            object.__setattr__(self, name, vals)
            if self.strict and not set(vals) <= TABULATED_SETS[name]:
                warnings.warn(f"{name} coefficients {vals} outside {sorted(TABULATED_SETS[name])}")

    @property
    def u(self) -> int:
        return len(self.hex)

    @property
    def v(self) -> int:
        return len(self.squares)

    @property
    def k(self) -> int:
        return len(self.tri)

    @property
    def h(self) -> int:
        return sum(self.tri)

    @property
    def c_prod(self) -> int:
        return math.prod(self.tri)

    @property
    def family(self) -> str:
        if self.hex and self.squares:
            return "mixed"
        if self.hex:
            return "lt"
        if self.squares:
            return "st"
        return "tri"

    @property
    def shift(self) -> Fraction:
        """h/8, the power of q that makes the generating function modular."""
        return Fraction(self.h, 8)

    def descriptor(self) -> str:
        fam = self.family
        parts = {
            "tri": [self.tri],
            "lt": [self.hex, self.tri],
            "st": [self.squares, self.tri],
            "mixed": [self.hex, self.squares, self.tri],
        }[fam]
        return fam + ":" + " ; ".join(_exponent_notation(p) for p in parts)

    def __str__(self) -> str:
        return self.descriptor()


def _exponent_notation(vals: Sequence[int]) -> str:
    out = []
    for b in sorted(set(vals)):
        out.append(f"{b}^{vals.count(b)}")
    return " ".join(out)


_TOKEN = re.compile(r"(\d+)(?:\^\{?(-?\d+)\}?)?")


def _parse_component(text: str) -> tuple[int, ...]:
    text = text.replace(".", " ").replace(",", " ").strip()
    vals: list[int] = []
    pos = 0
    for m in _TOKEN.finditer(text):
        if text[pos : m.start()].strip():
            raise FormSyntaxError(f"cannot parse {text!r}")
        pos = m.end()
        base = int(m.group(1))
        exp = int(m.group(2)) if m.group(2) is not None else 1
        if exp < 0 or base < 1:
            raise FormSyntaxError(f"bad token {m.group(0)!r}")
        vals.extend([base] * exp)
    if text[pos:].strip():
        raise FormSyntaxError(f"cannot parse {text!r}")
    return tuple(vals)


_FAMILY_FIELDS = {
    "tri": ("tri",),
    "lt": ("hex", "tri"),
    "st": ("squares", "tri"),
    "ls": ("hex", "squares"),
    "mixed": ("hex", "squares", "tri"),
}


def parse_form(desc: str) -> MixedForm:
    """Parse ``family:part ; part`` with parts in exponent notation ``1^2 3^2``.

    Families: ``tri`` (c), ``lt`` (a ; c), ``st`` (b ; c), ``ls`` (a ; b),
    ``mixed`` (a ; b ; c).  Zero exponents drop the base.
    """
    if ":" not in desc:
        raise FormSyntaxError(f"missing family prefix in {desc!r}")
    fam, rest = desc.split(":", 1)
    fam = fam.strip().lower()
    if fam not in _FAMILY_FIELDS:
        raise FormSyntaxError(f"unknown family {fam!r}")
    names = _FAMILY_FIELDS[fam]
    parts = rest.split(";")
    if len(parts) != len(names):
        raise FormSyntaxError(f"family {fam!r} expects {len(names)} ';'-separated parts")
    kwargs = {n: _parse_component(p) for n, p in zip(names, parts)}
    return MixedForm(**kwargs)


# -- classification ----------------------------------------------------------

@dataclass(frozen=True)
class ModularClassification:
    weight: Fraction
    level: int
    character: KroneckerChar
    qPrefactor24: int
    modular: bool

    @property
    def integral_weight(self) -> int:
        return int(self.weight)


def classify(form: MixedForm) -> ModularClassification:
    """Weight, level and character of q^(h/8) times the generating function."""
    u, v, k = form.u, form.v, form.k
    if form.family in ("tri", "lt") and k % 2:
        raise ParityViolation(f"k = {k} must be even")
    if (v + k) % 2:
        raise ParityViolation(f"v + k = {v + k} must be even")
    weight = u + Fraction(v + k, 2)
    parts = [2 * _lcm(form.tri)]
    if form.hex:
        parts.append(3 * _lcm(form.hex))
    if form.squares:
        parts.append(4 * _lcm(form.squares))
    level = _lcm(parts)
    two = 4 if v % 2 == 0 else 8
    top = (-1) ** ((v + k) // 2) * two * math.prod(form.squares) * form.c_prod
    if u % 2:
        top *= -3  # (./3) is the Kronecker symbol (-3/.)
    return ModularClassification(
        weight=weight,
        level=level,
        character=KroneckerChar(top),
        qPrefactor24=3 * form.h,
        modular=form.h % 8 == 0,
    )


# -- brute-force oracles -------------------------------------------------------

def _tri_values(c: int, n: int) -> list[int]:
    out, z = [], 0
    while c * z * (z + 1) // 2 <= n:
        out.append(c * z * (z + 1) // 2)
        z += 1
    return out


def _square_values(b: int, n: int) -> list[int]:
    s = math.isqrt(n // b)
    return [b * y * y for y in range(-s, s + 1)]


def _odd_square_values(c: int, n: int) -> list[int]:
    out, y = [], 1
    while c * y * y <= n:
        out.append(c * y * y)
        y += 2
    return out


def _hex_values(a: int, n: int) -> list[int]:
    # x^2 + xy + y^2 >= (x^2 + y^2)/2, so a(x^2+xy+y^2) <= n forces x^2, y^2 <= 2n/a
    r = math.isqrt(2 * n // a)
    out = []
    for x in range(-r, r + 1):
        for y in range(-r, r + 1):
            val = a * (x * x + x * y + y * y)
            if val <= n:
                out.append(val)
    return out


def _count(value_lists: Sequence[list[int]], n: int, memo: dict) -> int:
    """Number of ways to pick one value per list summing to n."""

    def go(i: int, rest: int) -> int:
        if i == len(value_lists):
            return 1 if rest == 0 else 0
        key = (i, rest)
        if key in memo:
            return memo[key]
        total = 0
        for val in value_lists[i]:
            if val <= rest:
                total += go(i + 1, rest - val)
        memo[key] = total
        return total

    return go(0, n)


def _components(form: MixedForm, n: int) -> list[list[int]]:
    lists = [_hex_values(a, n) for a in form.hex]
    lists += [_square_values(b, n) for b in form.squares]
    lists += [_tri_values(c, n) for c in form.tri]
    return lists


def count_triangular(c: Sequence[int], n: int) -> int:
    """delta_k(C; n): nonnegative z with sum c_i T_{z_i} = n."""
    if n < 0:
        return 0
    return _count([_tri_values(ci, n) for ci in c], n, {})


def count_squares_signed(b: Sequence[int], n: int) -> int:
    """r_v(B; n): integer y with sum b_i y_i^2 = n."""
    if n < 0:
        return 0
    return _count([_square_values(bi, n) for bi in b], n, {})


def count_odd_squares(c: Sequence[int], n: int) -> int:
    """q_k(C; n): positive odd y with sum c_i y_i^2 = n."""
    if n < 0:
        return 0
    return _count([_odd_square_values(ci, n) for ci in c], n, {})


def count_hex(a: Sequence[int], n: int) -> int:
    """Integer pairs (x_i, y_i) with sum a_i (x_i^2 + x_i y_i + y_i^2) = n."""
    if n < 0:
        return 0
    return _count([_hex_values(ai, n) for ai in a], n, {})


def count_mixed(form: MixedForm, n: int) -> int:
    if n < 0:
        return 0
    return _count(_components(form, n), n, {})


def counts_upto(form: MixedForm, nmax: int) -> list[int]:
    """[count_mixed(form, n) for n in 0..nmax] sharing one memo table."""
    if nmax < 0:
        return []
    lists = _components(form, nmax)
    memo: dict = {}
    return [_count(lists, n, memo) for n in range(nmax + 1)]


# -- generating functions -------------------------------------------------------

def _dilated(fn: Callable[[int], Series24], d: int, prec24: int) -> Series24:
    base = fn(-(-prec24 // d))
    return dilate(base, d).truncate(prec24)


def gen_series(form: MixedForm, prec24: int) -> Series24:
    """prod F(a_i tau) prod theta(b_i tau) prod Psi(c_j tau), on the integer grid."""
    result = Series24.one(prec24)
    for a in form.hex:
        result = result * _dilated(hex_theta_series, a, prec24)
    for b in form.squares:
        result = result * _dilated(theta_series, b, prec24)
    for c in form.tri:
        result = result * _dilated(psi_series, c, prec24)
    return result


def modular_series(form: MixedForm, prec24: int) -> Series24:
    """q^(h/8) times the generating function, known through prec24."""
    shift = 3 * form.h
    if prec24 <= shift:
        return Series24.zero(prec24)
    return Series24.monomial(shift, 1, prec24) * gen_series(form, prec24 - shift)


# -- ellipsoid -----------------------------------------------------------------

def ellipsoid_lattice_count(c: Sequence[int], R2) -> int:
    """Points z in Z^k with sum c_i (z_i - 1/2)^2 <= R2 (boundary counted inside).

    Scaling by 4 turns the condition into sum c_i (2 z_i - 1)^2 <= 4 R2.
    """
    R2 = Fraction(R2)
    bound = 4 * R2
    lim = [math.isqrt(int(bound // ci)) + 1 for ci in c]

    def go(i: int, acc: Fraction) -> int:
        if i == len(c):
            return 1
        total = 0
        for z in range(-lim[i], lim[i] + 2):
            val = acc + c[i] * (2 * z - 1) ** 2
            if val <= bound:
                total += go(i + 1, val)
        return total

    return go(0, Fraction(0))


def ellipsoid_shell_sum(c: Sequence[int], R2, start: int = 0) -> int:
    """2^k sum_{n=start}^{floor(R2/2 - h/8)} delta_k(C; n)."""
    R2 = Fraction(R2)
    top = math.floor(R2 / 2 - Fraction(sum(c), 8))
    return 2 ** len(c) * sum(count_triangular(c, n) for n in range(start, top + 1))
