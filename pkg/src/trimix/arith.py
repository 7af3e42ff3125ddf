"""Divisor sums, Kronecker characters and (generalized) Bernoulli numbers."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd

import gmpy2
import sympy
from sympy import multiplicity, primefactors

__all__ = [
    "KroneckerChar",
    "TRIVIAL",
    "kronecker",
    "sigma",
    "sigma_div",
    "gen_divisor_sum",
    "sharp_sigma3",
    "bernoulli",
    "bernoulli_poly",
    "gen_bernoulli",
    "divisors",
]


def kronecker(m: int, n: int) -> int:
    """Kronecker symbol (m/n), including n <= 0 and even n."""
    return int(gmpy2.kronecker(m, n))


@lru_cache(maxsize=4096)
def _divisors(n: int) -> tuple[int, ...]:
    return tuple(sympy.divisors(n))


def divisors(n: int) -> tuple[int, ...]:
    return _divisors(int(n)) if n >= 1 else ()


@dataclass(frozen=True)
class KroneckerChar:
    """The character n -> (top/n), optionally restricted to units mod ``level``.

    ``modulus`` defaults to the period of the symbol: |top| when
    top = 0, 1 (mod 4), otherwise 4|top|.  A ``level`` > 1 additionally
    zeroes every n sharing a factor with it, which models the principal
    character modulo a level.
    """

    top: int
    level: int = 1

    @property
    def modulus(self) -> int:
        m = abs(self.top)
        base = m if self.top % 4 in (0, 1) else 4 * m
        return base * self.level // gcd(base, self.level)

    def __call__(self, n: int) -> int:
        if self.level > 1 and gcd(n, self.level) != 1:
            return 0
        return kronecker(self.top, n)

    evaluate = __call__

    def is_trivial(self) -> bool:
        return self.top == 1

    def parity(self) -> int:
        return kronecker(self.top, -1)

    def times(self, other: "KroneckerChar") -> "KroneckerChar":
        return KroneckerChar(self.top * other.top, self.level * other.level // gcd(self.level, other.level))

    def agrees_mod(self, other: "KroneckerChar", n: int) -> bool:
        """Equal as Dirichlet characters modulo n (compared on units mod n)."""
        return all(self(a) == other(a) for a in range(1, n + 1) if gcd(a, n) == 1)

    def primitive(self) -> "KroneckerChar":
        """Same values on integers prime to top: (D/.) with D the fundamental discriminant of top."""
        if self.top == 0:
            return self
        d = -1 if self.top < 0 else 1
        for p in primefactors(abs(self.top)):
            if multiplicity(p, abs(self.top)) % 2:
                d *= p
        if d % 4 != 1:
            d *= 4
        return KroneckerChar(d, self.level)

    def __str__(self) -> str:
        if self.top == 1:
            return "1" if self.level == 1 else f"chi0 mod {self.level}"
        return f"chi{self.top}"


TRIVIAL = KroneckerChar(1)


def sigma(r: int, n) -> int:
    """sigma_r(n); zero unless n is a positive integer."""
    if isinstance(n, Fraction):
        if n.denominator != 1:
            return 0
        n = n.numerator
    if n <= 0:
        return 0
    return sum(d**r for d in divisors(n))


def sigma_div(r: int, n: int, d: int) -> int:
    """sigma_r(n/d) with the convention that it vanishes when d does not divide n."""
    if n % d:
        return 0
    return sigma(r, n // d)


def gen_divisor_sum(r: int, chi: KroneckerChar, psi: KroneckerChar, n) -> int:
    """sigma_{r;chi,psi}(n) = sum_{d|n} psi(d) chi(n/d) d^r (zero off positive integers)."""
    if isinstance(n, Fraction):
        if n.denominator != 1:
            return 0
        n = n.numerator
    if n <= 0:
        return 0
    return sum(psi(d) * chi(n // d) * d**r for d in divisors(n))


def sharp_sigma3(n: int) -> int:
    """sum of d^3 over divisors d of n with n/d odd."""
    if n <= 0:
        return 0
    return sum(d**3 for d in divisors(n) if (n // d) % 2)


@lru_cache(maxsize=None)
def bernoulli(k: int) -> Fraction:
    """B_k with B_1 = -1/2, the x/(e^x - 1) convention."""
    if k == 1:
        return Fraction(-1, 2)
    b = sympy.bernoulli(k)
    return Fraction(int(b.p), int(b.q))


def bernoulli_poly(k: int, x: Fraction) -> Fraction:
    """B_k(x) = sum_j C(k, j) B_j x^(k - j)."""
    x = Fraction(x)
    return sum((comb(k, j) * bernoulli(j) * x ** (k - j) for j in range(k + 1)), Fraction(0))


def gen_bernoulli(k: int, psi: KroneckerChar) -> Fraction:
    """B_{k,psi} = N^(k-1) sum_{a=1}^{N} psi(a) B_k(a/N), N the modulus of psi."""
    N = psi.modulus
    total = sum(
        (psi(a) * bernoulli_poly(k, Fraction(a, N)) for a in range(1, N + 1)),
        Fraction(0),
    )
    return Fraction(N) ** (k - 1) * total
