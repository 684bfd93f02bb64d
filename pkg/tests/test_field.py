import math

import pytest
from hypothesis import given, settings, strategies as st

from delpezzo8.field import (
    QuadField,
    digits,
    factor,
    is_probable_prime,
    mpq,
    qext_sqrt,
    rational_sqrt,
    sqrt_mod_prime,
    squarefree_decomposition,
    squarefree_part,
)


def test_factor_table_value():
    f = factor(720193)
    assert f.value() == 720193
    assert all(is_probable_prime(p) for p in f.primes())


@pytest.mark.parametrize("n", [1, -1, 2, -12, 2**61 - 1, 10**12 + 39, 600851475143, -(3**7) * 5**2])
def test_factor_roundtrip(n):
    assert factor(n).value() == n


def test_factor_large_semiprime():
    p, q = 1000000007, 998244353
    f = factor(p * q * 4)
    assert dict(f.prime_powers) == {2: 2, p: 1, q: 1}


def test_factor_zero_rejected():
    with pytest.raises(ValueError):
        factor(0)


@settings(max_examples=300, deadline=None)
@given(st.integers(min_value=-(10**9), max_value=10**9).filter(bool))
def test_factor_reconstructs(n):
    f = factor(n)
    assert f.value() == n
    assert all(is_probable_prime(p) for p in f.primes())


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=-(10**9), max_value=10**9).filter(bool))
def test_squarefree_decomposition(n):
    d, m = squarefree_decomposition(n)
    assert d * m * m == n
    assert all(e == 1 for _, e in factor(d).prime_powers)
    assert squarefree_part(n) == d


def test_rational_sqrt():
    assert rational_sqrt(mpq(9, 4)) == mpq(3, 2)
    assert rational_sqrt(mpq(2)) is None
    assert rational_sqrt(mpq(-1)) is None


@pytest.mark.parametrize("p", [3, 5, 13, 17, 1000000007])
def test_sqrt_mod_prime(p):
    for a in range(1, 30):
        r = sqrt_mod_prime(a, p)
        if r is None:
            assert pow(a, (p - 1) // 2, p) == p - 1
        else:
            assert (r * r - a) % p == 0


def test_field_normalizes_to_squarefree():
    F, m = QuadField.normalized(8)
    assert F.a == 2 and m == 2
    F, m = QuadField.normalized(mpq(-3, 4))
    assert F.a == -3 and m == mpq(1, 2)
    with pytest.raises(ValueError):
        QuadField(8)
    with pytest.raises(ValueError):
        QuadField(9)


small = st.fractions(max_denominator=20).map(lambda f: mpq(f.numerator, f.denominator))


@settings(max_examples=150, deadline=None)
@given(small, small, small, small, st.sampled_from([-1, 2, 3, 5, -7]))
def test_quadext_field_axioms(x1, y1, x2, y2, a):
    F = QuadField(a)
    u, v = F(x1, y1), F(x2, y2)
    assert (u + v) * (u - v) == u * u - v * v
    assert (u * v).norm() == u.norm() * v.norm()
    if v:
        assert (u / v) * v == u
    assert u.conjugate().conjugate() == u


@settings(max_examples=100, deadline=None)
@given(small, small, st.sampled_from([-1, 2, 3, -3]))
def test_qext_sqrt_of_square(x, y, a):
    F = QuadField(a)
    z = F(x, y)
    s = qext_sqrt(z * z)
    assert s is not None and s * s == z * z


def test_qext_sqrt_nonsquare():
    F = QuadField(-1)
    assert qext_sqrt(F(3, 0)) is None
    assert qext_sqrt(F(0, 2)) == F(1, 1)


def test_digits():
    assert digits(mpq(-12345, 7)) == 5
    assert digits(mpq(0)) >= 0
    assert math.isclose(digits(mpq(10**20)), 21)
