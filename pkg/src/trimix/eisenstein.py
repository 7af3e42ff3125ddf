"""q-expansions of Eisenstein series: E_k, E_2, phi_{a,b} and E_{k,chi,psi}."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .arith import KroneckerChar, TRIVIAL, bernoulli, gen_bernoulli, gen_divisor_sum, sigma
from .qseries import Series24, dilate, from_integer_coeffs

__all__ = [
    "Classical",
    "QuasiE2",
    "Phi",
    "Twisted",
    "Dilated",
    "EisensteinSpec",
    "ParityViolation",
    "InvalidPair",
    "expand",
]


class ParityViolation(ValueError):
    """chi(-1) psi(-1) != (-1)^k."""


class InvalidPair(ValueError):
    """phi_{a,b} needs a < b."""


def _n_terms(prec24: int) -> int:
    return max(0, -(-prec24 // 24))


@dataclass(frozen=True)
class Classical:
    """E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n, k >= 4 even."""

    k: int

    def __post_init__(self):
        if self.k < 4 or self.k % 2:
            raise ValueError("classical Eisenstein series need even k >= 4")

    @property
    def weight(self) -> int:
        return self.k

    def coefficient(self, n: int) -> Fraction:
        if n == 0:
            return Fraction(1)
        return -2 * self.k / bernoulli(self.k) * sigma(self.k - 1, n)

    @property
    def label(self) -> str:
        return f"E{self.k}"


@dataclass(frozen=True)
class QuasiE2:
    """E_2 = 1 - 24 sum sigma(n) q^n."""

    @property
    def weight(self) -> int:
        return 2

    def coefficient(self, n: int) -> Fraction:
        return Fraction(1) if n == 0 else Fraction(-24 * sigma(1, n))

    @property
    def label(self) -> str:
        return "E2"


@dataclass(frozen=True)
class Phi:
    """phi_{a,b} = (b E_2(b tau) - a E_2(a tau)) / (b - a)."""

    a: int
    b: int

    def __post_init__(self):
        if not 1 <= self.a < self.b:
            raise InvalidPair(f"phi needs 1 <= a < b, got ({self.a}, {self.b})")

    @property
    def weight(self) -> int:
        return 2

    def coefficient(self, n: int) -> Fraction:
        e2 = QuasiE2()
        val = Fraction(0)
        if n % self.b == 0:
            val += self.b * e2.coefficient(n // self.b)
        if n % self.a == 0:
            val -= self.a * e2.coefficient(n // self.a)
        return val / (self.b - self.a)

    @property
    def label(self) -> str:
        return f"phi_{self.a}_{self.b}"


@dataclass(frozen=True)
class Twisted:
    """E_{k,chi,psi} = -B_{k,psi}/(2k) [chi trivial] + sum sigma_{k-1;chi,psi}(n) q^n."""

    k: int
    chi: KroneckerChar = TRIVIAL
    psi: KroneckerChar = TRIVIAL

    def __post_init__(self):
        if self.chi.parity() * self.psi.parity() != (-1) ** self.k:
            raise ParityViolation(
                f"chi(-1) psi(-1) = {self.chi.parity() * self.psi.parity()} but (-1)^k = {(-1) ** self.k}"
            )

    @property
    def weight(self) -> int:
        return self.k

    def coefficient(self, n: int) -> Fraction:
        if n == 0:
            if self.chi.is_trivial():
                return -gen_bernoulli(self.k, self.psi) / (2 * self.k)
            return Fraction(0)
        return Fraction(gen_divisor_sum(self.k - 1, self.chi, self.psi, n))

    @property
    def label(self) -> str:
        return f"E{self.k}_{self.chi}_{self.psi}"


@dataclass(frozen=True)
class Dilated:
    """inner(d tau)."""

    inner: "EisensteinSpec"
    d: int

    @property
    def weight(self) -> int:
        return self.inner.weight

    def coefficient(self, n: int) -> Fraction:
        return self.inner.coefficient(n // self.d) if n % self.d == 0 else Fraction(0)

    @property
    def label(self) -> str:
        return f"{self.inner.label}_at_{self.d}"


EisensteinSpec = Union[Classical, QuasiE2, Phi, Twisted, Dilated]


def expand(spec: EisensteinSpec, prec24: int) -> Series24:
    """Expansion on the integer grid, known through prec24."""
    if isinstance(spec, Dilated):
        inner = expand(spec.inner, -(-prec24 // spec.d))
        return dilate(inner, spec.d).truncate(prec24)
    coeffs = [spec.coefficient(n) for n in range(_n_terms(prec24))]
    return from_integer_coeffs(coeffs, prec24=prec24)
