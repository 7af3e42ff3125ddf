from fractions import Fraction as F

from trimix.arith import (
    KroneckerChar,
    bernoulli,
    gen_bernoulli,
    gen_divisor_sum,
    kronecker,
    sharp_sigma3,
    sigma,
    sigma_div,
)


def test_kronecker():
    assert kronecker(1, 5) == 1
    assert kronecker(-4, 3) == -1
    assert kronecker(8, 3) == -1
    assert kronecker(-3, 3) == 0


def test_sigma():
    assert sigma(1, 6) == 12
    assert sigma(3, 2) == 9
    assert sigma_div(1, 5, 2) == 0
    assert sigma_div(1, 8, 4) == sigma(1, 2)


def test_gen_divisor_sum():
    one, m4 = KroneckerChar(1), KroneckerChar(-4)
    assert gen_divisor_sum(2, one, m4, 1) == 1
    # d=1: chi(2)=0; d=2: psi(2)=1, chi(1)=1, 2^2
    assert gen_divisor_sum(2, m4, one, 2) == 4


def test_sharp_sigma3():
    assert [sharp_sigma3(n) for n in (1, 2, 3, 4)] == [1, 8, 28, 64]


def test_bernoulli():
    assert bernoulli(2) == F(1, 6)
    assert bernoulli(4) == F(-1, 30)
    for k in (2, 4, 6, 8):
        assert gen_bernoulli(k, KroneckerChar(1)) == bernoulli(k)
    # B_{1,chi_-4} = -1/2, B_{1,chi_-3} = -1/3
    assert gen_bernoulli(1, KroneckerChar(-4)) == F(-1, 2)
    assert gen_bernoulli(1, KroneckerChar(-3)) == F(-1, 3)


def test_character_modulus_and_level():
    assert KroneckerChar(-4).modulus == 4
    assert KroneckerChar(8).modulus == 8
    assert KroneckerChar(-24).modulus == 24
    chi0 = KroneckerChar(1, 6)
    assert [chi0(n) for n in range(1, 8)] == [1, 0, 0, 0, 1, 0, 1]


def test_primitive():
    assert KroneckerChar(1728).primitive().top == 12
    assert KroneckerChar(-1728).primitive().top == -3
    assert KroneckerChar(72).primitive().top == 8
    assert KroneckerChar(-48).primitive().top == -3
    assert KroneckerChar(36).primitive().is_trivial
