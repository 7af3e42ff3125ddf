"""Explicit bases of the catalogued spaces M_k(Gamma_0(N), chi)."""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from sympy import primefactors

from . import eisenstein as eis
from .arith import KroneckerChar, TRIVIAL, divisors
from .etaq import CATALOG, EtaCombination, EtaQuotient
from .forms import ModularClassification
from .qseries import Series24

__all__ = [
    "SpaceId",
    "BasisElement",
    "UnknownSpace",
    "SPACES",
    "basis_for",
    "sturm_bound",
    "find_space",
    "contains",
    "space_from_string",
]


class UnknownSpace(KeyError):
    pass


@dataclass(frozen=True)
class SpaceId:
    weight: int
    level: int
    top: int = 1  # Kronecker symbol numerator; 1 is the principal character mod level

    @property
    def character(self) -> KroneckerChar:
        return KroneckerChar(self.top, self.level)

    def __str__(self) -> str:
        chi = "chi0" if self.top == 1 else f"chi{self.top}"
        return f"M{self.weight}({self.level},{chi})"


def space_from_string(text: str) -> SpaceId:
    """Parse ``"3,24,-24"`` or ``"M3(24,chi-24)"``."""
    t = text.strip()
    for junk in ("M", "(", ")", "chi"):
        t = t.replace(junk, ",")
    nums = [x for x in t.split(",") if x.strip()]
    k, N = int(nums[0]), int(nums[1])
    top = int(nums[2]) if len(nums) > 2 else 1
    return SpaceId(k, N, 1 if top == 0 else top)


Source = Union[eis.Classical, eis.QuasiE2, eis.Phi, eis.Twisted, eis.Dilated, EtaQuotient, EtaCombination]


@dataclass
class BasisElement:
    label: str
    source: Source
    kind: str  # "eisenstein" or "cusp"
    _cache: Series24 | None = field(default=None, repr=False, compare=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def expansion(self, prec24: int) -> Series24:
        with self._lock:
            if self._cache is None or self._cache.prec24 < prec24:
                if self.kind == "eisenstein":
                    self._cache = eis.expand(self.source, prec24)
                else:
                    self._cache = self.source.expand(prec24)
            return self._cache.truncate(prec24)

    def qcoeffs(self, n_terms: int) -> list[Fraction]:
        return self.expansion(24 * n_terms).qcoeffs(n_terms)


def _eis(spec) -> BasisElement:
    return BasisElement(spec.label, spec, "eisenstein")


def _cusp(name: str, d: int = 1) -> BasisElement:
    form = CATALOG[name].form
    label = name
    if d > 1:
        form = form.dilate(d)
        label = f"{name}_at_{d}"
    return BasisElement(label, form, "cusp")


def _dil(spec, d: int):
    return spec if d == 1 else eis.Dilated(spec, d)


def _chi(top: int) -> KroneckerChar:
    return KroneckerChar(top)


def _phi_block(N: int) -> list[BasisElement]:
    return [_eis(eis.Phi(1, b)) for b in divisors(N) if b != 1]


def _pair_block(k: int, top: int, ds) -> list[BasisElement]:
    """E_{k,1,chi}(a tau) for a in ds, then E_{k,chi,1}(b tau) for b in ds."""
    out = [_eis(_dil(eis.Twisted(k, TRIVIAL, _chi(top)), a)) for a in ds]
    out += [_eis(_dil(eis.Twisted(k, _chi(top), TRIVIAL), b)) for b in ds]
    return out


def _twisted(k: int, c: int, p: int, d: int = 1) -> BasisElement:
    return _eis(_dil(eis.Twisted(k, _chi(c), _chi(p)), d))


def _build(space: SpaceId) -> list[BasisElement]:
    k, N, top = space.weight, space.level, space.top
    key = (k, N, top)
    if k == 2:
        if top == 1 and N in (6, 8, 12):
            return _phi_block(N)
        if key == (2, 24, 1):
            return _phi_block(24) + [_cusp("Delta_2_24_chi0")]
        if key == (2, 8, 8):
            return _pair_block(2, 8, [1])
        if key == (2, 12, 12):
            return [_twisted(2, 1, 12), _twisted(2, 12, 1), _twisted(2, -4, -3), _twisted(2, -3, -4)]
        if key == (2, 24, 8):
            return _pair_block(2, 8, [1, 3]) + [_cusp("Delta_2_24_chi8_1"), _cusp("Delta_2_24_chi8_2")]
        if key == (2, 24, 12):
            out = []
            for c, p in ((1, 12), (12, 1), (-4, -3), (-3, -4)):
                out += [_twisted(2, c, p, d) for d in (1, 2)]
            return out
        if key == (2, 24, 24):
            return [
                _twisted(2, 1, 24),
                _twisted(2, 24, 1),
                _twisted(2, -8, -3),
                _twisted(2, -3, -8),
                _cusp("Delta_2_24_chi24_1"),
                _cusp("Delta_2_24_chi24_2"),
            ]
    if k == 3:
        simple = {(3, 4, -4): [1], (3, 3, -3): [1], (3, 6, -3): [1, 2], (3, 8, -4): [1, 2]}
        if key in simple:
            return _pair_block(3, top, simple[key])
        if key == (3, 8, -8):
            return _pair_block(3, -8, [1]) + [_cusp("Delta_3_8_chi-8")]
        if key == (3, 12, -3):
            return _pair_block(3, -3, [1, 2, 4]) + [_cusp("Delta_3_12_chi-3")]
        if key == (3, 12, -4):
            return _pair_block(3, -4, [1, 3]) + [_cusp("Delta_3_12_chi-4_1"), _cusp("Delta_3_12_chi-4_2")]
        if key == (3, 24, -3):
            return _pair_block(3, -3, [1, 2, 4, 8]) + [
                _cusp("Delta_3_12_chi-3"),
                _cusp("Delta_3_12_chi-3", 2),
                _cusp("Delta_3_24_chi-3_1"),
                _cusp("Delta_3_24_chi-3_2"),
            ]
        if key == (3, 24, -4):
            return _pair_block(3, -4, [1, 2, 3, 6]) + [
                _cusp("Delta_3_12_chi-4_1"),
                _cusp("Delta_3_12_chi-4_1", 2),
                _cusp("Delta_3_12_chi-4_2"),
                _cusp("Delta_3_12_chi-4_2", 2),
            ]
        if key == (3, 24, -8):
            return (
                _pair_block(3, -8, [1, 3])
                + [_cusp("Delta_3_8_chi-8"), _cusp("Delta_3_8_chi-8", 3)]
                + [_cusp(f"Delta_3_24_chi-8_{s}") for s in range(1, 5)]
            )
        if key == (3, 24, -24):
            return [
                _twisted(3, 1, -24),
                _twisted(3, -24, 1),
                _twisted(3, -3, 8),
                _twisted(3, 8, -3),
            ] + [_cusp(f"Delta_3_24_chi-24_{r}") for r in range(1, 7)]
    if key == (4, 12, 1):
        return [_eis(_dil(eis.Classical(4), d)) for d in divisors(12)] + [
            _cusp("f_4_6"),
            _cusp("f_4_6", 2),
            _cusp("f_4_12"),
        ]
    raise UnknownSpace(str(space))


# (e, s) dimensions as listed for each catalogued space
SPACES: dict[SpaceId, tuple[int, int]] = {
    SpaceId(2, 6): (3, 0),
    SpaceId(2, 8): (3, 0),
    SpaceId(2, 8, 8): (2, 0),
    SpaceId(2, 12): (5, 0),
    SpaceId(2, 12, 12): (4, 0),
    SpaceId(2, 24): (7, 1),
    SpaceId(2, 24, 8): (4, 2),
    SpaceId(2, 24, 12): (8, 0),
    SpaceId(2, 24, 24): (4, 2),
    SpaceId(3, 4, -4): (2, 0),
    SpaceId(3, 3, -3): (2, 0),
    SpaceId(3, 6, -3): (4, 0),
    SpaceId(3, 8, -4): (4, 0),
    SpaceId(3, 8, -8): (2, 1),
    SpaceId(3, 12, -3): (6, 1),
    SpaceId(3, 12, -4): (4, 2),
    SpaceId(3, 24, -3): (8, 4),
    SpaceId(3, 24, -4): (8, 4),
    SpaceId(3, 24, -8): (4, 6),
    SpaceId(3, 24, -24): (4, 6),
    SpaceId(4, 12): (6, 3),
}

_BASES: dict[tuple[SpaceId, str], list[BasisElement]] = {}
_BASES_LOCK = threading.Lock()


def basis_for(space: SpaceId, variant: str = "standard") -> list[BasisElement]:
    """Ordered basis: Eisenstein block then cusp block.

    ``variant="e2"`` replaces the phi_{1,b} block of a trivial-character
    weight-2 space by the spanning set E_2(d tau), d | N.  Those vectors are
    linearly independent and span the phi block plus E_2 itself, so
    coordinates in them are unique.
    """
    if space not in SPACES:
        raise UnknownSpace(str(space))
    key = (space, variant)
    with _BASES_LOCK:
        if key not in _BASES:
            elems = _build(space)
            if variant == "e2":
                if space.weight != 2 or space.top != 1:
                    raise UnknownSpace(f"no E2 variant for {space}")
                cusp = [b for b in elems if b.kind == "cusp"]
                elems = [_eis(_dil(eis.QuasiE2(), d)) for d in divisors(space.level)] + cusp
            elif variant != "standard":
                raise ValueError(f"unknown basis variant {variant!r}")
            _BASES[key] = elems
        return _BASES[key]


def sturm_bound(space: SpaceId) -> int:
    N = space.level
    index = Fraction(N)
    for p in primefactors(N):
        index *= Fraction(p + 1, p)
    return math.ceil(space.weight * index / 12) + 1


def contains(space: SpaceId, cls: ModularClassification) -> bool:
    """M_k(Gamma_0(N), chi) sits inside M_k(Gamma_0(N'), chi) whenever N | N'."""
    return (
        cls.weight == space.weight
        and space.level % cls.level == 0
        and KroneckerChar(space.top).agrees_mod(cls.character, space.level)
    )


def find_space(cls: ModularClassification) -> SpaceId:
    """Catalogued space for a classification: exact level first, else the smallest containing level."""
    if cls.weight.denominator != 1:
        raise UnknownSpace(f"half-integral weight {cls.weight}")
    hits = sorted((sp for sp in SPACES if contains(sp, cls)), key=lambda sp: sp.level)
    if not hits:
        raise UnknownSpace(f"weight {cls.weight}, level {cls.level}, character {cls.character}")
    return hits[0]
