import math
import random
from fractions import Fraction

import pytest

from scalar import DELTA, S, Scalar, arithmetic, delta_power, evaluate


def test_delta_is_s_squared():
    assert S * S == DELTA
    assert delta_power(1) == DELTA
    assert delta_power(-1) * DELTA == Scalar.one()


@pytest.mark.parametrize("kind,expected", [
    ("add", Scalar({2: 1, 0: 1})),
    ("sub", Scalar({2: 1, 0: -1})),
    ("mul", DELTA),
])
def test_arithmetic_kinds(kind, expected):
    assert arithmetic(DELTA, Scalar.one(), kind) == expected


def test_arithmetic_unknown_kind():
    with pytest.raises(ValueError):
        arithmetic(DELTA, DELTA, "div")


def test_negative_power_of_monomial():
    assert S ** -3 == Scalar.monomial(1, -3)
    assert (Scalar.monomial(2, 1) ** -1) == Scalar.monomial(Fraction(1, 2), -1)


def test_negative_power_of_binomial_is_inexact():
    with pytest.raises(ArithmeticError):
        (DELTA + 1) ** -1


def test_cancellation_is_exact():
    x = Scalar({3: Fraction(1, 3), -1: 2})
    assert (x - x).is_zero()
    assert x + 0 == x
    assert 0 - x == -x


def test_exact_div():
    a = (DELTA + 1) * (S + 2)
    assert a.exact_div(DELTA + 1) == S + 2
    assert (DELTA * 3).exact_div(Scalar.monomial(3, 1)) == S


def test_exact_div_with_remainder():
    with pytest.raises(ArithmeticError):
        (DELTA + S).exact_div(DELTA + 1)


def test_divide_by_zero():
    with pytest.raises(ZeroDivisionError):
        DELTA.exact_div(Scalar.zero())


def test_gcd_is_monic_polynomial():
    a = (S + 1) * (S + 2) * S ** -2
    b = (S + 1) * (S - 3) * 5
    assert Scalar.gcd(a, b) == S + 1


@pytest.mark.parametrize("s0,expected", [(1.0, 2.0), (2.0, 4.75)])
def test_evaluate(s0, expected):
    x = DELTA + Scalar.monomial(Fraction(1, 2), -1) + Scalar.monomial(Fraction(1, 2), 0)
    assert evaluate(x, s0) == pytest.approx(expected)


def test_evaluate_rejects_nonpositive():
    with pytest.raises(ValueError):
        DELTA.evaluate(0.0)


@pytest.mark.parametrize("text", ["0", "1*s^2", "2*s^2 + 1*s^0", "-1/3*s^1 - 4*s^-2"])
def test_text_form(text):
    x = Scalar.parse(text)
    assert str(x) == text
    assert Scalar.parse(str(x)) == x


def test_parse_shorthand():
    assert Scalar.parse("s^2 + 1") == DELTA + 1
    assert Scalar.parse("-s") == -S


@pytest.mark.parametrize("bad", ["s^", "x", "2**s", "1/"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        Scalar.parse(bad)


def test_hash_matches_equality():
    assert hash(Scalar({1: 2})) == hash(Scalar([(1, 1), (1, 1)]))
    assert Scalar.one() == 1


def random_scalar(rng, span=8):
    return Scalar({rng.randint(-span, span): Fraction(rng.randint(-9, 9), rng.randint(1, 4))
                   for _ in range(rng.randint(0, 4))})


@pytest.mark.parametrize("seed", range(5))
def test_ring_axioms(seed):
    rng = random.Random(seed)
    for _ in range(40):
        a, b, c = random_scalar(rng), random_scalar(rng), random_scalar(rng)
        assert (a * b) * c == a * (b * c)
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a
        assert a + b == b + a
        assert a - a == Scalar.zero()
        assert a * Scalar.one() == a


@pytest.mark.parametrize("s0", [0.7, 1.0, math.sqrt(2), 1.3])
def test_evaluate_is_multiplicative(s0):
    rng = random.Random(11)
    for _ in range(50):
        a, b = random_scalar(rng), random_scalar(rng)
        size = sum(abs(float(c)) * s0 ** e for e, c in a.items()) * sum(abs(float(c)) * s0 ** e for e, c in b.items())
        assert evaluate(a * b, s0) == pytest.approx(evaluate(a, s0) * evaluate(b, s0), rel=1e-12, abs=1e-12 * size)
