from fractions import Fraction

import numpy as np
import pytest

from src.linalg import (
    commutator, determinant, identity, inverse, is_diagonal, matmul,
    nonzero_column, rank, SingularMatrixError, to_rows
)


def matrix(rows):
    return np.array([[Fraction(x) for x in row] for row in rows], dtype=object)


def test_inverse_and_determinant(point):
    X = matrix([[2, 1, 0], [1, 3, 1], [0, 1, 4]])
    assert determinant(X, point) == 18
    assert (matmul(X, inverse(X, point)) == identity(3, point)).all()


def test_inverse_needs_a_row_swap(point):
    X = matrix([[0, 2, 1], [1, 0, 0], [0, 1, 1]])
    Y = inverse(X, point)
    assert (matmul(X, Y) == identity(3, point)).all()
    assert (matmul(Y, X) == identity(3, point)).all()
    assert (X == matrix([[0, 2, 1], [1, 0, 0], [0, 1, 1]])).all()


def test_determinant_needs_a_row_swap(point):
    X = matrix([[0, 1], [1, 0]])
    assert determinant(X, point) == -1


def test_singular_matrix(point):
    X = matrix([[1, 2], [2, 4]])
    assert determinant(X, point) == 0
    assert rank(X) == 1
    with pytest.raises(SingularMatrixError):
        inverse(X, point)


def test_rank_and_columns():
    X = matrix([[0, 0, 1], [0, 0, 2]])
    assert rank(X) == 1
    assert nonzero_column(X) == 2
    assert nonzero_column(matrix([[0, 0]])) is None


def test_commutator_and_diagonal(point):
    X = matrix([[1, 0], [0, 2]])
    Y = matrix([[0, 1], [0, 0]])
    assert is_diagonal(X)
    assert not is_diagonal(Y)
    assert (commutator(X, Y) == matrix([[0, -1], [0, 0]])).all()
    assert to_rows(X) == [["1/1", "0/1"], ["0/1", "2/1"]]
