"""Truncated power series in q^(1/24) with exact rational coefficients.

Exponents are stored in units of 1/24, so q^(1/24) has exponent 1 and q has
exponent 24.  ``prec24`` is exclusive: coefficients at or beyond it are
unknown, and asking for one raises :class:`InsufficientPrecision`.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

__all__ = [
    "Series24",
    "InsufficientPrecision",
    "ZeroLeadingCoefficient",
    "add",
    "mul",
    "dilate",
    "invert",
    "equal_through",
    "first_difference",
    "eta_series",
    "euler_product",
    "theta_series",
    "psi_series",
    "hex_theta_series",
    "from_integer_coeffs",
]


class InsufficientPrecision(ValueError):
    """A coefficient past the known range was requested."""


class ZeroLeadingCoefficient(ZeroDivisionError):
    """Inversion of a series that is zero through its precision."""


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class Series24:
    """Immutable truncated series sum_{e} coeffs[e - offset24] q^(e/24)."""

    __slots__ = ("offset24", "prec24", "coeffs")

    def __init__(self, offset24: int, coeffs: Iterable, prec24: int):
        offset24 = int(offset24)
        prec24 = int(prec24)
        cs = [_frac(c) for c in coeffs]
        if prec24 < offset24:
            raise ValueError("prec24 must be >= offset24")
        # pad with zeros up to prec, drop anything past it
        width = prec24 - offset24
        if len(cs) < width:
            cs.extend([Fraction(0)] * (width - len(cs)))
        del cs[width:]
        lead = 0
        while lead < len(cs) and cs[lead] == 0:
            lead += 1
        self.offset24 = offset24 + lead
        self.prec24 = prec24
        self.coeffs = tuple(cs[lead:])

    # -- construction helpers -------------------------------------------
    @classmethod
    def zero(cls, prec24: int) -> "Series24":
        return cls(prec24, (), prec24)

    @classmethod
    def one(cls, prec24: int) -> "Series24":
        return cls.monomial(0, 1, prec24)

    @classmethod
    def monomial(cls, e24: int, c, prec24: int) -> "Series24":
        if e24 >= prec24:
            return cls.zero(prec24)
        return cls(e24, [c], prec24)

    # -- access -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, e24: int) -> Fraction:
        if e24 >= self.prec24:
            raise InsufficientPrecision(
                f"coefficient of q^({e24}/24) requested but precision is {self.prec24}/24"
            )
        i = e24 - self.offset24
        if i < 0 or i >= len(self.coeffs):
            return Fraction(0)
        return self.coeffs[i]

    def __getitem__(self, n: int) -> Fraction:
        """Coefficient of q^n for an integer power n."""
        return self.coeff(24 * n)

    def qcoeffs(self, n_terms: int, shift24: int = 0) -> list[Fraction]:
        """Coefficients of q^(shift24/24 + n) for n = 0..n_terms-1."""
        return [self.coeff(shift24 + 24 * n) for n in range(n_terms)]

    def nonzero(self) -> list[tuple[int, Fraction]]:
        o = self.offset24
        return [(o + i, c) for i, c in enumerate(self.coeffs) if c]

    def on_integer_grid(self) -> bool:
        return all(e % 24 == 0 for e, _ in self.nonzero())

    def truncate(self, prec24: int) -> "Series24":
        if prec24 > self.prec24:
            raise InsufficientPrecision(f"cannot extend precision {self.prec24} to {prec24}")
        return Series24(min(self.offset24, prec24), self.coeffs, prec24)

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Series24):
            other = Series24.monomial(0, other, self.prec24)
        return add(self, other)

    __radd__ = __add__

    def __neg__(self) -> "Series24":
        return Series24(self.offset24, [-c for c in self.coeffs], self.prec24)

    def __sub__(self, other):
        if not isinstance(other, Series24):
            other = Series24.monomial(0, other, self.prec24)
        return add(self, -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Series24):
            return mul(self, other)
        c = _frac(other)
        return Series24(self.offset24, [c * x for x in self.coeffs], self.prec24)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Series24):
            return mul(self, invert(other))
        c = _frac(other)
        return Series24(self.offset24, [x / c for x in self.coeffs], self.prec24)

    def __pow__(self, n: int) -> "Series24":
        if n < 0:
            return invert(self) ** (-n)
        result = None
        base = self
        while True:
            if n & 1:
                result = base if result is None else mul(result, base)
            n >>= 1
            if not n:
                break
            base = mul(base, base)
        if result is None:
            # a^0 = 1, known as far as the relative precision of a allows
            return Series24.one(self.prec24 - self.offset24)
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series24):
            return NotImplemented
        return (self.offset24, self.prec24, self.coeffs) == (
            other.offset24,
            other.prec24,
            other.coeffs,
        )

    def __hash__(self):
        return hash((self.offset24, self.prec24, self.coeffs))

    def __repr__(self) -> str:
        terms = []
        for e, c in self.nonzero()[:6]:
            terms.append(f"{c}*q^({e}/24)")
        tail = " + ..." if len(self.nonzero()) > 6 else ""
        body = " + ".join(terms) if terms else "0"
        return f"Series24({body}{tail}, prec24={self.prec24})"

    # -- serialization -------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "offset24": self.offset24,
            "prec24": self.prec24,
            "coeffs": [_fmt(c) for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Series24":
        return cls(data["offset24"], [Fraction(s) for s in data["coeffs"]], data["prec24"])

    def dilate(self, d: int) -> "Series24":
        return dilate(self, d)


def _fmt(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def add(a: Series24, b: Series24) -> Series24:
    prec = min(a.prec24, b.prec24)
    off = min(a.offset24, b.offset24, prec)
    out = [Fraction(0)] * (prec - off)
    for s in (a, b):
        for i, c in enumerate(s.coeffs):
            j = s.offset24 + i - off
            if j >= len(out):
                break
            out[j] += c
    return Series24(off, out, prec)


def _common_denominator(cs: Sequence[Fraction]) -> int:
    return reduce(lambda x, y: x * y // math.gcd(x, y), (c.denominator for c in cs), 1)


def mul(a: Series24, b: Series24) -> Series24:
    """Cauchy product on the 1/24 grid.

    Only nonzero terms are visited, which makes integer-grid series (one
    nonzero slot in 24) cheap.  Coefficients are scaled to integers first so
    the inner loop is pure integer arithmetic; the result is exact.
    """
    prec = min(a.offset24 + b.prec24, b.offset24 + a.prec24)
    off = a.offset24 + b.offset24
    if a.is_zero() or b.is_zero() or off >= prec:
        return Series24.zero(prec)
    da = _common_denominator(a.coeffs)
    db = _common_denominator(b.coeffs)
    an = [(i, int(c * da)) for i, c in enumerate(a.coeffs) if c]
    bn = [(j, int(c * db)) for j, c in enumerate(b.coeffs) if c]
    width = prec - off
    acc = [0] * width
    for i, x in an:
        if i >= width:
            break
        lim = width - i
        for j, y in bn:
            if j >= lim:
                break
            acc[i + j] += x * y
    den = da * db
    return Series24(off, [Fraction(v, den) for v in acc], prec)


def dilate(a: Series24, d: int) -> Series24:
    """Substitute q -> q^d."""
    if d < 1:
        raise ValueError("dilation factor must be positive")
    if d == 1:
        return a
    prec = a.prec24 * d
    if a.is_zero():
        return Series24.zero(prec)
    out = [Fraction(0)] * ((len(a.coeffs) - 1) * d + 1)
    for i, c in enumerate(a.coeffs):
        out[i * d] = c
    return Series24(a.offset24 * d, out, prec)


def invert(a: Series24) -> Series24:
    """Multiplicative inverse; q^o(c + ...) becomes q^(-o)(1/c + ...)."""
    if a.is_zero():
        raise ZeroLeadingCoefficient("series is zero through its precision")
    rel = a.prec24 - a.offset24
    nz = [(i, c) for i, c in enumerate(a.coeffs) if c]
    # work on the coarsest grid carrying all nonzero terms
    g = reduce(math.gcd, (i for i, _ in nz), 0) or rel
    m = -(-rel // g)
    base = [Fraction(0)] * m
    for i, c in nz:
        if i // g < m:
            base[i // g] = c
    inv0 = 1 / base[0]
    terms = [(i, c) for i, c in enumerate(base) if c and i]
    out = [Fraction(0)] * m
    out[0] = inv0
    for n in range(1, m):
        s = Fraction(0)
        for i, c in terms:
            if i > n:
                break
            s += c * out[n - i]
        out[n] = -s * inv0
    dense = [Fraction(0)] * rel
    for n, c in enumerate(out):
        if n * g < rel:
            dense[n * g] = c
    return Series24(-a.offset24, dense, -a.offset24 + rel)


def first_difference(a: Series24, b: Series24, bound24: int):
    """First exponent e < bound24 where a and b differ, with both values, or None."""
    if a.prec24 < bound24 or b.prec24 < bound24:
        raise InsufficientPrecision(
            f"comparison through {bound24}/24 needs both precisions >= it "
            f"(have {a.prec24}, {b.prec24})"
        )
    start = min(a.offset24, b.offset24)
    for e in range(start, bound24):
        x, y = a.coeff(e), b.coeff(e)
        if x != y:
            return e, x, y
    return None


def equal_through(a: Series24, b: Series24, bound24: int) -> bool:
    return first_difference(a, b, bound24) is None


# -- generating functions --------------------------------------------------

def _integer_series(values: Sequence[int], offset24: int, prec24: int) -> Series24:
    """Place values[n] at exponent offset24 + 24 n."""
    width = max(prec24 - offset24, 0)
    dense = [0] * width
    for n, v in enumerate(values):
        j = 24 * n
        if j >= width:
            break
        dense[j] = v
    return Series24(offset24, dense, prec24)


def from_integer_coeffs(values: Sequence, prec24: int | None = None, offset24: int = 0) -> Series24:
    """Series sum values[n] q^(offset24/24 + n), known through len(values) powers by default."""
    if prec24 is None:
        prec24 = offset24 + 24 * len(values)
    return _integer_series(values, offset24, prec24)


def _n_terms(prec24: int, offset24: int = 0) -> int:
    return max(0, -(-(prec24 - offset24) // 24))


def euler_product(n_terms: int) -> list[int]:
    """Coefficients of prod_{n>=1}(1 - q^n) below q^n_terms (pentagonal number theorem)."""
    out = [0] * n_terms
    k = 0
    while True:
        hit = False
        for j in ((k * (3 * k - 1)) // 2, (k * (3 * k + 1)) // 2) if k else (0,):
            if j < n_terms:
                out[j] = -1 if k % 2 else 1
                hit = True
        if not hit and k:
            break
        k += 1
    return out


def eta_series(prec24: int) -> Series24:
    """eta(tau) = q^(1/24) prod (1 - q^n)."""
    return _integer_series(euler_product(_n_terms(prec24, 1)), 1, prec24)


def theta_series(prec24: int) -> Series24:
    """theta(tau) = sum_{n in Z} q^(n^2)."""
    n_terms = _n_terms(prec24)
    out = [0] * n_terms
    m = 0
    while m * m < n_terms:
        out[m * m] += 1 if m == 0 else 2
        m += 1
    return _integer_series(out, 0, prec24)


def psi_series(prec24: int) -> Series24:
    """Psi(tau) = sum_{n>=0} q^(n(n+1)/2)."""
    n_terms = _n_terms(prec24)
    out = [0] * n_terms
    m = 0
    while m * (m + 1) // 2 < n_terms:
        out[m * (m + 1) // 2] += 1
        m += 1
    return _integer_series(out, 0, prec24)


def hex_theta_series(prec24: int) -> Series24:
    """F(tau) = sum_{m,n in Z} q^(m^2 + mn + n^2).

    Box bound: m^2 + mn + n^2 = ((m + n)^2 + m^2 + n^2) / 2 >= (m^2 + n^2) / 2,
    so m^2 + mn + n^2 < N forces m^2 < 2N and n^2 < 2N.
    """
    n_terms = _n_terms(prec24)
    out = [0] * n_terms
    r = math.isqrt(2 * n_terms) + 1
    for m in range(-r, r + 1):
        for n in range(-r, r + 1):
            v = m * m + m * n + n * n
            if v < n_terms:
                out[v] += 1
    return _integer_series(out, 0, prec24)
