from __future__ import annotations

import random
from fractions import Fraction

import pytest

from conjclass.classify import AffineMap
from conjclass.numeric import (COMPLEX, REAL, ExactMatrix, ExactVector, GaussianRational,
                               matrix_det, matrix_inverse)


def rand_rational(rng: random.Random, span: int = 4, dens=(1, 2, 3)) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.choice(dens))


def rand_scalar(rng: random.Random, field: str, span: int = 4):
    if field == COMPLEX:
        return GaussianRational(rand_rational(rng, span), rand_rational(rng, span))
    return rand_rational(rng, span)


def rand_matrix(rng: random.Random, n: int, field: str, span: int = 4) -> ExactMatrix:
    return ExactMatrix.of([[rand_scalar(rng, field, span) for _ in range(n)] for _ in range(n)],
                          field)


def rand_invertible(rng: random.Random, n: int, field: str) -> ExactMatrix:
    while True:
        M = rand_matrix(rng, n, field, span=3)
        if matrix_det(M) != 0:
            return M


def rand_affine(rng: random.Random, n: int, field: str) -> AffineMap:
    """Random map biased towards structured linear parts (repeated, unit and zero eigenvalues)."""
    roll = rng.random()
    if roll < 0.45:
        A = rand_matrix(rng, n, field, span=3)
    else:
        # conjugate a structured normal form by a random invertible matrix
        P = rand_invertible(rng, n, field)
        pool = [0, 1, -1, Fraction(1, 2), 2, Fraction(-1, 3), 3]
        if field == COMPLEX:
            pool += [GaussianRational(0, 1), GaussianRational(0, -1),
                     GaussianRational(Fraction(3, 5), Fraction(4, 5)), GaussianRational(1, 1)]
        diag = [rng.choice(pool) for _ in range(n)]
        rows = [[diag[i] if i == j else 0 for j in range(n)] for i in range(n)]
        if n == 2 and diag[0] == diag[1] and rng.random() < 0.5:
            rows[0][1] = 1
        if n == 2 and field == REAL and rng.random() < 0.15:
            rows = [[0, -1], [1, rng.choice([0, 1, -1, Fraction(1, 2), 3])]]
        A = P @ ExactMatrix.of(rows, field) @ matrix_inverse(P)
    b = [rand_scalar(rng, field, 3) if rng.random() < 0.7 else 0 for _ in range(n)]
    return AffineMap.of(A.rows, b, field)


def rand_invertible_affine(rng: random.Random, n: int, field: str) -> AffineMap:
    b = ExactVector.of([rand_scalar(rng, field, 3) for _ in range(n)], field)
    return AffineMap(rand_invertible(rng, n, field), b)


@pytest.fixture
def rng():
    return random.Random(20261017)
