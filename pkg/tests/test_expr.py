import pytest

from qsl2.expr import ExpressionError


def test_atoms(cx3):
    P, ext = cx3.parse, cx3.ext
    assert P("theta") == P("e_a + e_d") == cx3.inv(ext.theta)
    assert P("e_z") == P("q e_a - q^-1 e_d")
    assert P("e_+") == P("e_ad + e_bc")
    assert P("Top") == P("e_abcd")
    assert P("mu") == P("1 - q^-2")


def test_juxtaposition_is_wedge(cx3):
    P = cx3.parse
    assert P("e_a e_b") == P("e_a * e_b") == P("e_ab")
    assert P("e_b e_a") == cx3.wedge(P("e_b"), P("e_a"))
    assert P("e_ba") == P("e_b e_a")


def test_powers_and_division(cx3):
    P = cx3.parse
    assert P("a^{-1}") == P("a^2")
    assert P("d^-1") == P("d^2")
    assert P("q^{-2}") == P("q")
    assert P("(q^2/12) b") * 12 == P("q^2 b")
    assert P("a^0") == P("1")


def test_too_many_letters_is_zero(cx3):
    assert cx3.parse("e_abcda").is_zero()


@pytest.mark.parametrize("bad", ["b^-1", "e_a / e_b", "e_a + a", "(a", "a $", "", "e_a ^ x"])
def test_errors(cx3, bad):
    with pytest.raises(ExpressionError):
        cx3.parse(bad)


def test_zero_adds_to_any_degree(cx3):
    assert cx3.parse("e_a e_a e_a e_a e_a + e_b") == cx3.parse("e_b")
    assert cx3.parse("0 + e_b") == cx3.parse("e_b")
