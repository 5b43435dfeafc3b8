""" Exact dense linear algebra on numpy object arrays.

Entries are Fractions or symbolic field elements; numpy only stores them and
runs the products, all arithmetic stays exact.

Functions:

    zeros(rows, cols, p)
    identity(n, p)
    scalar_matrix(n, value, p)
    matmul(*matrices)
    inverse(X, p)
    determinant(X, p)
    rank(X)
    nonzero_column(X)
    is_zero(X)
    first_difference(X, Y)
    commutator(X, Y)
    is_diagonal(X)
    to_rows(X)
"""

from __future__ import annotations  # NOTE: This is necessary below Python 3.10

from functools import reduce
from typing import List, Optional, Tuple

import numpy as np

from .errors import KernelError
from .scalars import format_scalar, PointLike, Scalar


class SingularMatrixError(KernelError):
    """ Elimination found no pivot. """


def zeros(rows: int, cols: int, p: PointLike) -> np.ndarray:
    """ A rows x cols matrix of exact zeros. """
    return np.full((rows, cols), p.zero, dtype=object)


def identity(n: int, p: PointLike) -> np.ndarray:
    return scalar_matrix(n, p.one, p)


def scalar_matrix(n: int, value: Scalar, p: PointLike) -> np.ndarray:
    X = zeros(n, n, p)
    for i in range(n):
        X[i, i] = value
    return X


def matmul(*matrices: np.ndarray) -> np.ndarray:
    """ Left-to-right product. """
    return reduce(lambda X, Y: X.dot(Y), matrices)


def inverse(X: np.ndarray, p: PointLike) -> np.ndarray:
    """ Gauss-Jordan inverse over the exact field. """
    n = X.shape[0]
    if X.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    M = np.concatenate([X, identity(n, p)], axis=1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if M[i, c]), None)
        if pivot is None:
            raise SingularMatrixError("matrix is not invertible")
        M[[c, pivot]] = M[[pivot, c]]
        M[c, :] = M[c, :] / M[c, c]
        for i in range(n):
            if i != c and M[i, c]:
                M[i, :] = M[i, :] - M[c, :] * M[i, c]
    return M[:, n:]


def determinant(X: np.ndarray, p: PointLike) -> Scalar:
    """ Fraction-free Bareiss determinant with first-nonzero pivoting. """
    n = X.shape[0]
    if n == 0:
        return p.one
    M = X.copy()
    sign = 1
    previous = p.one
    for k in range(n - 1):
        if not M[k, k]:
            for j in range(k + 1, n):
                if M[j, k]:
                    M[[k, j]] = M[[j, k]]
                    sign = -sign
                    break
            else:
                return p.zero
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i, j] = (M[i, j]*M[k, k] - M[i, k]*M[k, j]) / previous
        previous = M[k, k]
    return M[n - 1, n - 1] if sign > 0 else -M[n - 1, n - 1]


def rank(X: np.ndarray) -> int:
    """ Row rank by exact elimination. """
    M = X.copy()
    rows, cols = M.shape
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if M[i, c]), None)
        if pivot is None:
            continue
        M[[r, pivot]] = M[[pivot, r]]
        for i in range(r + 1, rows):
            if M[i, c]:
                M[i, :] = M[i, :] - M[r, :] * (M[i, c] / M[r, c])
        r += 1
        if r == rows:
            break
    return r


def nonzero_column(X: np.ndarray) -> Optional[int]:
    for j in range(X.shape[1]):
        if any(X[:, j]):
            return j
    return None


def is_zero(X: np.ndarray) -> bool:
    return not any(entry for entry in X.flat)


def first_difference(X: np.ndarray, Y: np.ndarray) -> Optional[Tuple[int, int]]:
    """ Coordinates of the first entry where X and Y differ, or None. """
    for index in np.ndindex(*X.shape):
        if X[index] != Y[index]:
            return index
    return None


def commutator(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    return X.dot(Y) - Y.dot(X)


def is_diagonal(X: np.ndarray) -> bool:
    rows, cols = X.shape
    return all(not X[i, j] for i in range(rows) for j in range(cols) if i != j)


def to_rows(X: np.ndarray) -> List[List[str]]:
    """ JSON form: nested lists of rational strings. """
    return [[format_scalar(entry) for entry in row] for row in X]
