import random
from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from hodgecheck import _accel_py
from hodgecheck.fixtures import k3_intersection_form, rational_surface_form
from hodgecheck.linalg import (
    Matrix,
    hermitian_inertia,
    intersection_dim,
    kernel,
    rank,
    row_space_reduced,
    signature,
    solve,
)
from hodgecheck.scalars import GaussRational, I


def mat(rows, rep=None):
    return Matrix.from_rows([[F(x) if not isinstance(x, GaussRational) else x for x in r] for r in rows], rep=rep)


def charpoly_signature(m):
    """Independent signature oracle: exact Descartes count on the
    characteristic polynomial (all roots real for symmetric input)."""
    sm = sympy.Matrix(m.nrows, m.ncols, lambda i, j: sympy.Rational(m.entry(i, j)))
    coeffs = sm.charpoly().all_coeffs()
    zeros = 0
    while coeffs and coeffs[-1] == 0:
        zeros += 1
        coeffs.pop()

    def variations(cs):
        signs = [sympy.sign(c) for c in cs if c != 0]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    pos = variations(coeffs)
    neg = variations([c * (-1) ** i for i, c in enumerate(coeffs)])
    return pos, neg, zeros


# -- rank ---------------------------------------------------------------------


def test_rank_identity_and_zero():
    assert rank(Matrix.identity(2)) == 2
    assert rank(Matrix.zero(3, 5)) == 0


def test_rank_rectangular():
    assert rank(mat([[1, 2, 3], [2, 4, 6], [0, 1, 1]])) == 2


@settings(max_examples=60)
@given(
    st.lists(
        st.lists(st.integers(-9, 9), min_size=4, max_size=4),
        min_size=1,
        max_size=6,
    )
)
def test_rank_transpose_and_kernel_dim(rows):
    m = mat(rows)
    r = rank(m)
    assert r == rank(m.transpose())
    assert r + len(kernel(m)) == m.ncols


def test_representation_independence():
    rows = [[0, 0, 3, 0], [1, 0, 0, 0], [0, 0, 0, 0]]
    dense, sparse = mat(rows, rep="dense"), mat(rows, rep="sparse")
    assert dense.rep == "dense" and sparse.rep == "sparse"
    assert rank(dense) == rank(sparse) == 2
    assert kernel(dense) == kernel(sparse)
    assert signature(mat([[2, 0], [0, -3]], rep="dense")) == signature(
        mat([[2, 0], [0, -3]], rep="sparse")
    )


# -- kernel -------------------------------------------------------------------


def test_kernel_examples():
    assert kernel(Matrix.identity(4)) == []
    basis = kernel(mat([[1, 1], [1, 1]]))
    assert len(basis) == 1
    v = basis[0]
    assert v[0] == -v[1] and v[1] != 0


def test_kernel_vectors_annihilate():
    m = mat([[1, 2, 3, 4], [0, 1, 1, 0], [1, 3, 4, 4]])
    for v in kernel(m):
        assert all(x == 0 for x in m.apply(v))
    assert rank(m) + len(kernel(m)) == 4


def test_kernel_gaussian():
    m = Matrix.from_rows([[GaussRational(1), I], [I, GaussRational(-1)]])
    basis = kernel(m)
    assert len(basis) == 1
    assert all(x == 0 for x in m.apply(basis[0]))


# -- solve --------------------------------------------------------------------


def test_solve_identity_and_inconsistent():
    b = [F(3), F(-1)]
    assert solve(Matrix.identity(2), b) == b
    assert solve(Matrix.zero(2, 2), b) is None


def test_solve_vandermonde():
    # interpolation of x^2 at 1, 2, 3 against basis (1, x, x^2)
    v = mat([[1, 1, 1], [1, 2, 4], [1, 3, 9]])
    assert solve(v, [F(1), F(4), F(9)]) == [F(0), F(0), F(1)]


@settings(max_examples=40)
@given(
    st.lists(
        st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=2, max_size=5
    ),
    st.lists(st.integers(-6, 6), min_size=3, max_size=3),
)
def test_solve_consistent_systems(rows, x):
    m = mat(rows)
    b = m.apply([F(v) for v in x])
    sol = solve(m, b)
    assert sol is not None
    assert m.apply(sol) == b


# -- signature ----------------------------------------------------------------


def test_signature_examples():
    assert signature(mat([[1, 0], [0, 1]])) == (2, 0, 0)
    assert signature(mat([[0, 1], [1, 0]])) == (1, 1, 0)
    assert signature(mat([[0]])) == (0, 0, 1)


def test_signature_requires_symmetry():
    with pytest.raises(ValueError):
        signature(mat([[0, 1], [0, 0]]))


def test_k3_form_signature():
    k3 = k3_intersection_form()
    assert (k3.nrows, k3.ncols) == (22, 22)
    inertia = signature(k3)
    assert inertia == (3, 19, 0)
    assert inertia == charpoly_signature(k3)
    assert inertia[0] - inertia[1] == -16


def test_rational_surface_form_signature():
    m = rational_surface_form()
    inertia = signature(m)
    assert inertia == (1, 21, 0)
    assert inertia[0] - inertia[1] == -20


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_signature_congruence_invariance(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 5)
    s = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            s[i][j] = s[j][i] = rng.randint(-5, 5)
    sm = mat(s)
    base = signature(sm)
    assert base == charpoly_signature(sm)
    # random invertible congruence
    while True:
        p = [[F(rng.randint(-4, 4)) for _ in range(n)] for _ in range(n)]
        pm = Matrix.from_rows(p)
        if rank(pm) == n:
            break
    assert signature(pm.transpose().matmul(sm).matmul(pm)) == base


# -- hermitian inertia ----------------------------------------------------------


def test_hermitian_examples():
    assert hermitian_inertia(mat([[1, 0], [0, -1]])) == (1, 1, 0)
    h = Matrix.from_rows([[GaussRational(0), I], [GaussRational(0, -1), GaussRational(0)]])
    assert hermitian_inertia(h) == (1, 1, 0)
    assert hermitian_inertia(mat([[-2]])) == (0, 1, 0)


def test_hermitian_rejects_non_hermitian():
    with pytest.raises(ValueError):
        hermitian_inertia(Matrix.from_rows([[GaussRational(0), I], [I, GaussRational(0)]]))


def realification(h):
    """[[A, -B], [B, A]] for H = A + iB doubles the inertia: oracle."""
    n = h.nrows
    out = [[F(0)] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            z = h.entry(i, j)
            a = z.re if isinstance(z, GaussRational) else F(z)
            b = z.im if isinstance(z, GaussRational) else F(0)
            out[i][j] = a
            out[i + n][j + n] = a
            out[i][j + n] = -b
            out[i + n][j] = b
    return Matrix.from_rows(out)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_hermitian_inertia_matches_realification(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    h = [[GaussRational(0)] * n for _ in range(n)]
    for i in range(n):
        h[i][i] = GaussRational(rng.randint(-4, 4))
        for j in range(i + 1, n):
            z = GaussRational(rng.randint(-4, 4), rng.randint(-4, 4))
            h[i][j] = z
            h[j][i] = z.conjugate()
    hm = Matrix.from_rows(h)
    p, m_, z = hermitian_inertia(hm)
    assert signature(realification(hm)) == (2 * p, 2 * m_, 2 * z)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_hermitian_congruence_invariance(seed):
    rng = random.Random(seed)
    n = 3
    h = [[GaussRational(0)] * n for _ in range(n)]
    for i in range(n):
        h[i][i] = GaussRational(rng.randint(-3, 3))
        for j in range(i + 1, n):
            z = GaussRational(rng.randint(-3, 3), rng.randint(-3, 3))
            h[i][j], h[j][i] = z, z.conjugate()
    hm = Matrix.from_rows(h)
    while True:
        a = [
            [GaussRational(rng.randint(-2, 2), rng.randint(-2, 2)) for _ in range(n)]
            for _ in range(n)
        ]
        am = Matrix.from_rows(a)
        if rank(am) == n:
            break
    assert hermitian_inertia(am.conj_transpose().matmul(hm).matmul(am)) == hermitian_inertia(hm)


# -- row spaces -----------------------------------------------------------------


def test_row_space_and_intersection():
    a = mat([[1, 0, 1], [0, 1, 1]])
    b = mat([[1, 1, 2], [1, -1, 0]])
    assert intersection_dim(a, b) == 2
    c = mat([[1, 0, 0]])
    assert intersection_dim(b, c) == 0
    reduced = row_space_reduced(mat([[2, 0, 2], [2, 2, 4]]))
    assert reduced.to_lists() == [[1, 0, 1], [0, 1, 1]]


# -- kernel backends agree -------------------------------------------------------


def test_backends_agree_on_random_inputs():
    from hodgecheck import _kernels

    rng = random.Random(7)
    for _ in range(25):
        a = [(rng.getrandbits(12), F(rng.randint(-5, 5))) for _ in range(rng.randint(1, 8))]
        b = [(rng.getrandbits(12), F(rng.randint(-5, 5))) for _ in range(rng.randint(1, 8))]
        acc1, acc2 = {}, {}
        _kernels.wedge_merge(acc1, a, b, True)
        _accel_py.wedge_merge(acc2, a, b, True)
        assert acc1 == acc2
        rows = [[rng.randint(-9, 9) for _ in range(5)] for _ in range(4)]
        r1 = [row[:] for row in rows]
        r2 = [row[:] for row in rows]
        assert _kernels.bareiss_echelon(r1) == _accel_py.bareiss_echelon(r2)
        assert r1 == r2
