"""Exact rational and integer linear algebra kernels.

Everything here is denominator-aware: solves run over Fraction, determinants
and polynomial extraction run over plain Python ints after clearing row
denominators (Bareiss stays division-exact, so no Fraction overhead in the
hot loops).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence, Union

Scalar = Union[int, Fraction]


def exact_solve(A: Sequence[Sequence[Scalar]], b: Sequence[Scalar]) -> list[Fraction]:
    """Solve A x = b by Gaussian elimination over Fraction.

    Raises ValueError if A is singular.
    """
    n = len(A)
    M = [[Fraction(A[i][j]) for j in range(n)] + [Fraction(b[i])] for i in range(n)]
    for k in range(n):
        p = k
        while p < n and M[p][k] == 0:
            p += 1
        if p == n:
            raise ValueError("singular system")
        M[k], M[p] = M[p], M[k]
        pk = M[k][k]
        for i in range(k + 1, n):
            if M[i][k]:
                f = M[i][k] / pk
                Mi, Mk = M[i], M[k]
                Mi[k] = Fraction(0)
                for j in range(k + 1, n + 1):
                    Mi[j] -= f * Mk[j]
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = M[i][n]
        Mi = M[i]
        for j in range(i + 1, n):
            s -= Mi[j] * x[j]
        x[i] = s / Mi[i]
    return x


def exact_inverse(A: Sequence[Sequence[Scalar]]) -> list[list[Fraction]]:
    """Invert a matrix over Fraction (Gauss-Jordan)."""
    n = len(A)
    M = [[Fraction(A[i][j]) for j in range(n)] +
         [Fraction(1) if j == i else Fraction(0) for j in range(n)]
         for i in range(n)]
    for k in range(n):
        p = k
        while p < n and M[p][k] == 0:
            p += 1
        if p == n:
            raise ValueError("singular matrix")
        M[k], M[p] = M[p], M[k]
        pk = M[k][k]
        Mk = M[k]
        for j in range(k, 2 * n):
            Mk[j] /= pk
        for i in range(n):
            if i != k and M[i][k]:
                f = M[i][k]
                Mi = M[i]
                for j in range(k, 2 * n):
                    Mi[j] -= f * Mk[j]
    return [row[n:] for row in M]


def bareiss_det(M: list[list[int]]) -> int:
    """Fraction-free determinant of an integer matrix (destroys M)."""
    n = len(M)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for r in range(k + 1, n):
                if M[r][k]:
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = M[k][k]
        Mk = M[k]
        for i in range(k + 1, n):
            Mi = M[i]
            mik = Mi[k]
            if mik:
                for j in range(k + 1, n):
                    Mi[j] = (Mi[j] * pk - mik * Mk[j]) // prev
                Mi[k] = 0
            elif prev != pk:
                for j in range(k + 1, n):
                    Mi[j] = (Mi[j] * pk) // prev
        prev = pk
    return sign * M[n - 1][n - 1]


def clear_row_denominators(
    P: Sequence[Sequence[Scalar]],
) -> tuple[list[int], list[list[int]]]:
    """Return (E, F) with E a positive integer diagonal and F = diag(E) @ P
    integer, i.e. P = diag(E)^{-1} F."""
    E = []
    F = []
    for row in P:
        l = 1
        for x in row:
            d = x.denominator if isinstance(x, Fraction) else 1
            l = l * d // gcd(l, d)
        E.append(l)
        F.append([int(x * l) for x in row])
    return E, F


def pencil_poly(A0: Sequence[Sequence[int]], A1: Sequence[Sequence[int]]) -> list[int]:
    """Exact coefficients (ascending) of det(A0 + x*A1) for integer matrices.

    Evaluates the determinant at N+1 integer points with Bareiss elimination
    and recovers the coefficients by Newton interpolation; the result is
    integral by construction.
    """
    n = len(A0)
    pts: list[int] = [0]
    step = 1
    while len(pts) < n + 1:
        pts.append(step)
        if len(pts) < n + 1:
            pts.append(-step)
        step += 1
    vals = []
    for t in pts:
        M = [[A0[i][j] + t * A1[i][j] for j in range(n)] for i in range(n)]
        vals.append(bareiss_det(M))
    return _newton_interpolate(pts, vals)


def _newton_interpolate(pts: list[int], vals: list[int]) -> list[int]:
    k = len(pts)
    coef = [Fraction(v) for v in vals]
    for j in range(1, k):
        for i in range(k - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (pts[i] - pts[i - j])
    # expand the Newton form back to monomial coefficients (Horner over nodes)
    poly = [Fraction(0)] * k
    poly[0] = coef[k - 1]
    deg = 0
    for i in range(k - 2, -1, -1):
        # poly <- poly * (x - pts[i]) + coef[i]
        deg += 1
        c = pts[i]
        for d in range(deg, 0, -1):
            poly[d] = poly[d - 1] - c * poly[d]
        poly[0] = coef[i] - c * poly[0]
    out = []
    for c in poly:
        if c.denominator != 1:
            raise ArithmeticError("interpolation of an integer polynomial gave a non-integer")
        out.append(int(c))
    return out


def charpoly_pencil(P: Sequence[Sequence[Scalar]]) -> list[int]:
    """Integer multiple of the characteristic polynomial of a rational matrix.

    Returns ascending coefficients of det(xE - F) = det(E) * charpoly(P)
    where E clears the row denominators of P.  Only scale-invariant
    consumers (root structure, Kemeny extraction) should use this.
    """
    E, F = clear_row_denominators(P)
    n = len(E)
    A0 = [[-F[i][j] for j in range(n)] for i in range(n)]
    A1 = [[E[i] if i == j else 0 for j in range(n)] for i in range(n)]
    return pencil_poly(A0, A1)


def poly_eval(coeffs: Sequence[Scalar], x: Scalar) -> Scalar:
    acc: Scalar = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def format_scalar(x) -> str:
    """Render a scalar for serialized output: Fractions as 'p/q', floats to
    12 significant digits, ints as-is."""
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, int):
        return str(x)
    return f"{float(x):.12g}"
