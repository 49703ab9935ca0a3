import pytest

from linalg import echelon, independent_columns, nullspace, primitive, rank
from scalar import DELTA, S, Scalar


def m(rows):
    return [[Scalar.coerce(x) for x in row] for row in rows]


def test_echelon_ends_with_determinant_on_diagonal():
    ech = echelon(m([[1, 2], [3, 4]]))
    assert ech.pivots == [0, 1]
    assert ech.pivot_value == -2
    assert ech.rows == m([[-2, 0], [0, -2]])


@pytest.mark.parametrize("rows,expected", [
    ([[1, 2], [3, 4]], 2),
    ([[S, 1], [DELTA, S]], 1),
    ([[0, 0], [0, 0]], 0),
    ([[1, 0, 1], [0, 1, 1], [1, 1, 2]], 2),
])
def test_rank(rows, expected):
    assert rank(m(rows)) == expected


def test_nullspace_of_cap_matrix():
    assert nullspace(m([[1, DELTA], [1, DELTA]])) == [[DELTA, Scalar.coerce(-1)]]


def test_nullspace_full_rank_is_empty():
    assert nullspace(m([[1, 2], [3, 4]])) == []


def test_nullspace_of_empty_matrix():
    assert nullspace([], width=2) == m([[1, 0], [0, 1]])
    with pytest.raises(ValueError):
        nullspace([])


def test_nullspace_vectors_are_in_the_kernel():
    rows = m([[S, 1, DELTA + 1], [1, S ** -1, S + S ** -1]])
    for v in nullspace(rows):
        for row in rows:
            total = Scalar.zero()
            for a, b in zip(row, v):
                total = total + a * b
            assert total.is_zero()


def test_primitive():
    assert primitive([Scalar.monomial(2, 1), Scalar.monomial(4, 3)]) == [Scalar.one(), DELTA * 2]
    assert primitive(m([[-3, 0]])[0]) == m([[1, 0]])[0]


def test_independent_columns():
    assert independent_columns(m([[1, 1, 0], [0, 0, 1]])) == [0, 2]


def test_ragged_matrix():
    with pytest.raises(ValueError):
        echelon(m([[1, 2], [3]]))
