"""Operator bases from the worked examples, as sparse matrix-unit expansions.

Each operator is a list of ``(row, col, coefficient)`` triples, 1-based,
meaning ``coefficient * E_{row,col}`` where ``E_{row,col}`` sends basis vector
``col`` to basis vector ``row``. Dimensions refer to the cotangent algebra.
"""
from __future__ import annotations

from fractions import Fraction

from . import linalg as la
from .linalg import Matrix


def to_matrix(entries, n: int) -> Matrix:
    m = [[Fraction(0)] * n for _ in range(n)]
    for i, j, c in entries:
        m[i - 1][j - 1] += la.to_fraction(c)
    return tuple(tuple(r) for r in m)


AFF_DERIVATIONS = [
    [(2, 1, 1), (3, 4, -1)],
    [(2, 2, 1), (4, 4, -1)],
    [(3, 1, 1)],
    [(4, 1, -1), (3, 2, 1)],
    [(3, 3, 1), (4, 4, 1)],
]

SO3_DERIVATIONS = [
    [(2, 1, -1), (1, 2, 1), (5, 4, -1), (4, 5, 1)],
    [(3, 1, -1), (1, 3, 1), (6, 4, -1), (4, 6, 1)],
    [(3, 2, -1), (2, 3, 1), (6, 5, -1), (5, 6, 1)],
    [(5, 1, -1), (4, 2, 1)],
    [(6, 1, -1), (4, 3, 1)],
    [(4, 4, 1), (5, 5, 1), (6, 6, 1)],
    [(6, 2, -1), (5, 3, 1)],
]

SL2_DERIVATIONS = [
    [(2, 2, -1), (3, 3, 1), (5, 5, 1), (6, 6, -1)],
    [(4, 4, 1), (5, 5, 1), (6, 6, 1)],
    [(1, 2, -1), (3, 1, 2), (4, 6, -2), (5, 4, 1)],
    [(1, 3, 1), (2, 1, -2), (4, 5, 2), (6, 4, -1)],
    [(5, 3, -1), (6, 2, 1)],
    [(4, 2, 1), (5, 1, -1)],
    [(4, 3, 1), (6, 1, -1)],
]


def oscillator_prederivations(lam=1):
    lam = la.to_fraction(lam)
    inv = 1 / lam
    return [
        [(2, 1, 1), (5, 6, -1)],
        [(2, 2, 2), (3, 3, 1), (4, 4, 1), (6, 6, -2), (7, 7, -1), (8, 8, -1)],
        [(2, 3, -1), (3, 1, lam), (5, 7, -lam), (7, 6, 1)],
        [(2, 4, 1), (4, 1, -lam), (5, 8, lam), (8, 6, -1)],
        [(2, 6, 1)],
        [(3, 4, -lam), (4, 3, lam), (7, 8, -lam), (8, 7, lam)],
        [(5, 1, 1)],
        [(5, 2, 2), (7, 3, inv), (8, 4, inv)],
        [(5, 3, -lam), (7, 1, lam)],
        [(5, 4, lam), (8, 1, -lam)],
        [(5, 5, 1), (6, 6, 1), (7, 7, 1), (8, 8, 1)],
        [(5, 6, 1)],
        [(7, 4, -1), (8, 3, 1)],
    ]


# skew-symmetric prederivations of T*aff(R) for every invariant metric
AFF_SKEW = [AFF_DERIVATIONS[0], AFF_DERIVATIONS[1], AFF_DERIVATIONS[3]]


def matrices(table, n: int) -> list[Matrix]:
    return [to_matrix(e, n) for e in table]
