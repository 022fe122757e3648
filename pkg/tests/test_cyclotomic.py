from fractions import Fraction

import pytest

from qsl2.cyclotomic import cyclotomic_polynomial, field


@pytest.mark.parametrize("r", [3, 5, 7, 9])
def test_q_is_primitive_root(r):
    K = field(r)
    q = K.q
    assert K.q_power(r) == K.one
    assert K.q_int(r) == K.zero
    phi = cyclotomic_polynomial(r)
    assert sum((q ** i) * c for i, c in enumerate(phi)) == K.zero
    assert all(K.q_power(k) != K.one for k in range(1, r))


def test_q_power_examples():
    K = field(3)
    assert K.q_power(0) == K.one
    assert K.q_power(3) == K.one
    assert K.q_power(2) == K.from_coefficients([-1, -1])
    for k in range(-7, 8):
        assert K.q_power(k) * K.q_power(-k) == K.one


@pytest.mark.parametrize("r", [3, 5, 7])
def test_q_integers(r):
    K = field(r)
    q = K.q
    assert K.q_int(2) == K.one + q
    assert K.q_int(0) == K.zero
    assert K.q_int(3, 2) == K.one + q ** 2 + q ** 4
    assert K.q_bracket_sym(0) == K.zero
    assert K.q_bracket_sym(1) == K.one
    assert K.q_bracket_sym(2) == q + q.inverse()


def test_q3_bracket_vanishes_at_r3():
    assert field(3).q_int(3) == field(3).zero
    assert field(5).q_int(3) != field(5).zero


@pytest.mark.parametrize("r", [3, 5, 7])
def test_mu(r):
    K = field(r)
    mu = K.mu()
    assert mu
    assert mu == K.one - K.q_power(-2)
    assert mu == (K.q_power(2) - 1) * K.q_power(-2)


def test_mu_at_3():
    K = field(3)
    assert K.mu() == K.one - K.q


def test_json_round_trip_and_format():
    K = field(3)
    x = K.from_coefficients([Fraction(1, 3), -2])
    assert x.to_json() == ["1/3", "-2/1"]
    assert K.parse(x.to_json()) == x
    assert K.parse('["1/3","-2/1"]') == x


def test_canonical_equality_and_hash():
    K = field(5)
    x = (K.q + 1) * (K.q - 1)
    y = K.q ** 2 - 1
    assert x == y and hash(x) == hash(y)
    assert K.from_int(2) == 2
    assert K.from_rational(Fraction(1, 2)) * 2 == K.one


def test_inverse_and_division():
    K = field(7)
    x = K.q ** 3 - 2 * K.q + Fraction(5, 3)
    assert x * x.inverse() == K.one
    assert (K.one / x) * x == K.one
    with pytest.raises(ZeroDivisionError):
        K.zero.inverse()


def test_mixing_fields_is_an_error():
    with pytest.raises(ValueError):
        field(3).q + field(5).q
