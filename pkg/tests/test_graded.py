import random

import pytest

from elements import Element, box, build_cup, build_jones
from graded import (GradedElement, as_graded, basis_elements, bullet, inner_gjs, inner_orth, involution,
                    random_element, star, trace, verify_associativity, verify_star_structure)
from scalar import DELTA, Scalar

U = as_graded(build_cup(0))
UU = GradedElement.basis_vector(box((1, 0, 3, 2)), 2, 0)
ONE = GradedElement.unit(0)


def test_cup_squared():
    assert star(U, U) == UU + U + ONE * DELTA


def test_unit_is_neutral():
    for a in basis_elements(2, 1):
        one = GradedElement.unit(1)
        assert star(one, a) == a == star(a, one)
        assert bullet(one, a) == a


def test_jones_projection():
    e = as_graded(build_jones(1, 2))
    assert star(e, e) == e


def test_bullet_is_juxtaposition():
    assert bullet(U, U) == UU


def test_bullet_grades_add():
    for a in basis_elements(2, 1, min_grade=1):
        for b in basis_elements(2, 1):
            assert bullet(a, b).grades() == [a.grades()[0] + b.grades()[0]]


def test_star_grade_support():
    for a in basis_elements(2, 1):
        for b in basis_elements(2, 1):
            m, n = a.grades()[0], b.grades()[0]
            assert all(abs(m - n) <= g <= m + n for g in star(a, b).grades())


@pytest.mark.parametrize("a,b,expected", [
    (U, U, DELTA),
    (ONE, ONE, Scalar.one()),
    (U, ONE, Scalar.zero()),
])
def test_inner_orth(a, b, expected):
    assert inner_orth(a, b) == expected


@pytest.mark.parametrize("a,b,expected", [
    (ONE, ONE, Scalar.one()),
    (U, U, DELTA * DELTA + DELTA),
    (U, ONE, DELTA),
])
def test_inner_gjs(a, b, expected):
    assert inner_gjs(a, b) == expected


def test_trace():
    assert trace(ONE) == Scalar.one()
    assert trace(U).is_zero()
    assert trace(star(U, U)) == DELTA


def test_context_mismatch():
    with pytest.raises(ValueError):
        star(U, GradedElement.unit(1))
    with pytest.raises(ValueError):
        inner_orth(U, as_graded(build_cup(1)))


def test_zero_parts_are_dropped():
    x = U - U
    assert x.is_zero()
    assert x.grades() == []
    assert star(x, U).is_zero()


def test_as_graded_rejects_other_types():
    with pytest.raises(TypeError):
        as_graded(3)


def test_json_form():
    x = star(U, U)
    data = x.to_dict()
    assert data["context"] == 0
    assert [part["grade"] for part in data["parts"]] == [0, 1, 2]
    assert GradedElement.from_dict(data) == x
    assert GradedElement.from_dict(Element.unit(0).to_dict()) == ONE


def test_random_element_is_seeded():
    a = random_element(random.Random(5), 1, 2)
    b = random_element(random.Random(5), 1, 2)
    assert a == b
    assert a.context == 1


def test_involution_reverses_products():
    rng = random.Random(11)
    for _ in range(5):
        a, b = random_element(rng, 1, 2), random_element(rng, 1, 2)
        assert involution(star(a, b)) == star(involution(b), involution(a))
        assert inner_orth(a, b) == trace(star(a, involution(b)))


def test_verify_associativity_small():
    report = verify_associativity(3, 0, samples=5, seed=3)
    assert report.passed
    assert report.cases > 5


def test_verify_star_structure_small():
    report = verify_star_structure(samples=5, k=1, seed=2)
    assert report.passed
    assert report.cases == 25


@pytest.mark.slow
@pytest.mark.parametrize("k", [0, 1])
def test_verify_associativity_full(k):
    assert verify_associativity(4, k, samples=100, seed=1729).passed


@pytest.mark.slow
def test_verify_star_structure_full():
    assert verify_star_structure(samples=100, k=1, seed=1729).passed
