import pytest
from click.testing import CliRunner

from elements import Element, basis, box, build_cup, build_jones, include
from graded import GradedElement, as_graded, inner_orth, star, trace
from pipeline import cli
from scalar import DELTA, S, Scalar, delta_power
from tower import (commutator_alpha, commutator_gram, conditional_expectation, cup_left_expected, include_graded,
                   one_0n, verify_commutator, verify_cup_action, verify_expectation, verify_jones,
                   verify_spanning, verify_vn_orthogonality, vn_basis, vpq, wn_basis)

D1 = Element.basis_vector(box((1, 0, 3, 2)), 1, 1)
D2 = Element.basis_vector(box((3, 2, 1, 0)), 1, 1)
V = D1 * DELTA - D2


@pytest.mark.parametrize("k,dim", [(0, 1), (1, 1), (2, 2)])
def test_wn_dimension(k, dim):
    assert wn_basis(1, k).dimension == dim


def test_wn_needs_positive_grade():
    with pytest.raises(ValueError):
        wn_basis(0, 1)


def test_vn_basis():
    assert vn_basis(1, 0).dimension == 0
    assert vn_basis(1, 1).basis == [V]
    assert vn_basis(0, 2).dimension == len(basis(0, 2))


def test_vpq_orthogonality_examples():
    assert inner_orth(vpq(V, 1, 0), vpq(V, 0, 1)).is_zero()
    assert inner_orth(vpq(V, 1, 1), vpq(V, 1, 1)) == inner_orth(V, V)
    assert inner_orth(vpq(V, 0, 0), vpq(V, 2, 0)).is_zero()


def test_cup_action_examples():
    cup = as_graded(build_cup(1))
    assert star(cup, as_graded(vpq(V, 0, 1))) == as_graded(vpq(V, 1, 1)) * S + as_graded(vpq(V, 0, 1))
    assert star(cup, as_graded(vpq(V, 2, 0))) == cup_left_expected(V, 2, 0)
    assert cup_left_expected(V, 2, 0).grades() == [2, 3, 4]


def test_cup_action_suite_runs_from_cli():
    result = CliRunner().invoke(cli, ["verify", "--suite", "cup-action", "--param", "pmax=2", "--param", "qmax=2"])
    assert result.exit_code == 0, result.output


def test_verify_vn_orthogonality():
    assert verify_vn_orthogonality(1, 1).passed


def test_verify_cup_action():
    assert verify_cup_action(1, 1).passed
    assert verify_cup_action(0, 1, pmax=2, qmax=2).passed


@pytest.mark.parametrize("k", [0, 1, 2])
def test_verify_spanning(k):
    assert verify_spanning(2, k).passed


def test_expectation_examples():
    e = as_graded(build_jones(1, 2))
    assert conditional_expectation(e) == GradedElement.unit(1) * delta_power(-2)
    a = as_graded(D1) + GradedElement.unit(1) * S
    assert conditional_expectation(include_graded(a)) == a
    x = as_graded(Element.basis_vector(box((1, 0, 3, 2)), 0, 2))
    assert conditional_expectation(x) == GradedElement.unit(1) * delta_power(-1)
    assert trace(conditional_expectation(x)) == trace(x) == delta_power(-1)


def test_expectation_needs_context():
    with pytest.raises(ValueError):
        conditional_expectation(GradedElement.unit(0))


def test_verify_expectation():
    assert verify_expectation(1, samples=5, seed=4).passed


def test_jones_relations_examples():
    e1, e2 = as_graded(build_jones(1, 3)), as_graded(build_jones(2, 3))
    assert star(star(e1, e2), e1) == e1 * delta_power(-2)
    f1, f3 = as_graded(build_jones(1, 4)), as_graded(build_jones(3, 4))
    assert star(f1, f3) == star(f3, f1)
    e = as_graded(build_jones(1, 2))
    u1 = as_graded(include(build_cup(1)))
    assert star(star(e, u1), e) == star(include_graded(include_graded(conditional_expectation(as_graded(build_cup(1))))), e)


def test_verify_jones():
    assert verify_jones(3).passed
    with pytest.raises(ValueError):
        verify_jones(1)


def test_commutator():
    assert commutator_alpha(0, 0).is_zero()
    assert not commutator_alpha(1, 0).is_zero()
    assert one_0n(1, 0) == as_graded(build_cup(0)) * S ** -1
    gram = commutator_gram(3, 0)
    assert gram[0][2] == gram[2][0] == Scalar.zero()


def test_verify_commutator():
    report = verify_commutator(3, 0)
    assert report.passed
    assert len(report.data["gram"]) == 3


@pytest.mark.slow
def test_full_ranges():
    assert verify_jones(4).passed
    assert verify_commutator(4, 0).passed
    for k in range(3):
        assert verify_spanning(3, k).passed
