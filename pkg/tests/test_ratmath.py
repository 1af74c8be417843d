"""Exact linear algebra kernels against numpy oracles."""

import random
from fractions import Fraction

import numpy as np
import pytest

from nbkemeny.ratmath import (
    bareiss_det,
    charpoly_pencil,
    clear_row_denominators,
    exact_inverse,
    exact_solve,
    format_scalar,
    pencil_poly,
    poly_eval,
    poly_mul,
)


def random_int_matrix(n, rng, lo=-9, hi=9):
    return [[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)]


class TestSolve:
    def test_matches_numpy(self):
        rng = random.Random(11)
        for n in (1, 2, 5, 8):
            A = random_int_matrix(n, rng)
            while abs(np.linalg.det(np.array(A, dtype=float))) < 0.5:
                A = random_int_matrix(n, rng)
            b = [rng.randint(-9, 9) for _ in range(n)]
            x = exact_solve(A, b)
            want = np.linalg.solve(np.array(A, dtype=float),
                                   np.array(b, dtype=float))
            assert np.allclose([float(v) for v in x], want, atol=1e-9)
            # residual is exactly zero in rational arithmetic
            for i in range(n):
                assert sum(Fraction(A[i][j]) * x[j] for j in range(n)) == b[i]

    def test_singular_raises(self):
        with pytest.raises(ValueError):
            exact_solve([[1, 2], [2, 4]], [1, 1])

    def test_inverse(self):
        rng = random.Random(3)
        A = random_int_matrix(4, rng)
        while abs(np.linalg.det(np.array(A, dtype=float))) < 0.5:
            A = random_int_matrix(4, rng)
        inv = exact_inverse(A)
        prod = [[sum(Fraction(A[i][k]) * inv[k][j] for k in range(4))
                 for j in range(4)] for i in range(4)]
        assert prod == [[1 if i == j else 0 for j in range(4)] for i in range(4)]


class TestDeterminant:
    def test_matches_numpy(self):
        rng = random.Random(5)
        for n in (1, 2, 3, 6, 10):
            A = random_int_matrix(n, rng)
            want = round(np.linalg.det(np.array(A, dtype=float)))
            assert bareiss_det([row[:] for row in A]) == want

    def test_singular_is_zero(self):
        A = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
        assert bareiss_det(A) == 0

    def test_empty_matrix(self):
        assert bareiss_det([]) == 1


class TestPencil:
    def test_clear_row_denominators(self):
        P = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(2, 5), 1]]
        E, F = clear_row_denominators(P)
        assert E == [6, 5]
        assert F == [[3, 2], [2, 5]]

    def test_charpoly_matches_numpy_roots(self):
        rng = random.Random(17)
        for n in (2, 4, 6):
            # random row-stochastic rational matrix
            P = []
            for _ in range(n):
                w = [rng.randint(1, 5) for _ in range(n)]
                t = sum(w)
                P.append([Fraction(x, t) for x in w])
            coeffs = charpoly_pencil(P)
            assert len(coeffs) == n + 1
            roots = np.roots(list(reversed([float(c) for c in coeffs])))
            evals = np.linalg.eigvals(np.array([[float(x) for x in row]
                                                for row in P]))
            assert np.allclose(sorted(roots.real), sorted(evals.real), atol=1e-6)
            # unit eigenvalue of a stochastic matrix is a root, exactly
            assert poly_eval(coeffs, 1) == 0

    def test_pencil_poly_known(self):
        # det([[x, 1], [1, x]]) = x^2 - 1
        A0 = [[0, 1], [1, 0]]
        A1 = [[1, 0], [0, 1]]
        assert pencil_poly(A0, A1) == [-1, 0, 1]


class TestPolyHelpers:
    def test_poly_mul(self):
        # (1 + x)(1 - x) = 1 - x^2
        assert poly_mul([1, 1], [1, -1]) == [1, 0, -1]

    def test_poly_eval_fraction(self):
        assert poly_eval([1, 2, 3], Fraction(1, 2)) == Fraction(11, 4)

    def test_format_scalar(self):
        assert format_scalar(Fraction(88, 3)) == "88/3"
        assert format_scalar(Fraction(4, 2)) == "2/1"
        assert format_scalar(7) == "7"
        assert format_scalar(0.1) == "0.1"
