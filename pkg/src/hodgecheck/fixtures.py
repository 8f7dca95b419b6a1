"""Shipped quadratic-form and number-field fixtures.

The Gram matrices below are the standard textbook presentations; nothing in
the engine trusts their signatures, every consumer re-derives inertia with
the exact congruence solver.

- U: the hyperbolic plane [[0,1],[1,0]].
- E8: the Cartan matrix of the E8 root lattice (positive definite,
  determinant 1, Bourbaki node ordering with the branch node at position 4).
- k3_intersection_form: 3U + 2 E8(-1), the intersection form on the middle
  cohomology of a K3 surface (rank 22, inertia (3,19)).
- rational_surface_form: diag(1, -1, ..., -1) of rank 22, the intersection
  form of a plane blown up in 21 points.
- cyclotomic6_multiplication_matrices: regular representation of the degree-6
  field Q[x]/(x^6+x^5+x^4+x^3+x^2+x+1) on the power basis, i.e. exact
  multiplication-by-basis matrices of a CM field with K (x) R = C^3.
"""

from __future__ import annotations

from fractions import Fraction

from hodgecheck.linalg import Matrix

U_GRAM = [[0, 1], [1, 0]]

E8_GRAM = [
    [2, 0, -1, 0, 0, 0, 0, 0],
    [0, 2, 0, -1, 0, 0, 0, 0],
    [-1, 0, 2, -1, 0, 0, 0, 0],
    [0, -1, -1, 2, -1, 0, 0, 0],
    [0, 0, 0, -1, 2, -1, 0, 0],
    [0, 0, 0, 0, -1, 2, -1, 0],
    [0, 0, 0, 0, 0, -1, 2, -1],
    [0, 0, 0, 0, 0, 0, -1, 2],
]


def direct_sum(*blocks) -> list:
    """Block-diagonal join of square integer matrices (as nested lists)."""
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        k = len(b)
        for i in range(k):
            for j in range(k):
                out[off + i][off + j] = b[i][j]
        off += k
    return out


def negate(block) -> list:
    return [[-x for x in row] for row in block]


def k3_intersection_form() -> Matrix:
    """Middle intersection form of a K3 surface: 3U + 2 E8(-1), rank 22."""
    raw = direct_sum(U_GRAM, U_GRAM, U_GRAM, negate(E8_GRAM), negate(E8_GRAM))
    return Matrix.from_rows([[Fraction(x) for x in row] for row in raw])


def rational_surface_form() -> Matrix:
    """Intersection form of P^2 blown up in 21 points: <1> + 21<-1>."""
    raw = direct_sum([[1]], *([[[-1]]] * 21))
    return Matrix.from_rows([[Fraction(x) for x in row] for row in raw])


CYCLOTOMIC6_MIN_POLY = [1, 1, 1, 1, 1, 1, 1]  # x^6 + x^5 + ... + 1


def cyclotomic6_multiplication_matrices() -> list:
    """Matrices of multiplication by 1, z, ..., z^5 on Q[z]/(z^6+...+1).

    Columns are images of the power basis; the first matrix is the identity
    and all six commute pairwise.
    """
    companion = [[Fraction(0)] * 6 for _ in range(6)]
    for i in range(1, 6):
        companion[i][i - 1] = Fraction(1)
    for i in range(6):
        companion[i][5] = Fraction(-1)
    mats = [Matrix.identity(6)]
    c = Matrix.from_rows(companion)
    cur = c
    for _ in range(5):
        mats.append(cur)
        cur = cur.matmul(c)
    return mats
