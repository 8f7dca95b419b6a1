"""Exact linear algebra over Q and Q(i): rank, kernel, solve, inertia.

Matrices carry either a dense (list of lists) or sparse (list of dicts)
grid; every operation gives the same answer for both representations.
Rational elimination is fraction-free (Bareiss) on cleared denominators so
coefficient growth stays polynomial; large sparse matrices take a sparse
field-elimination path instead.  Inertia uses symmetric/Hermitian Gaussian
congruence with explicit handling of zero-diagonal (hyperbolic) pivots, so
no floating point is ever involved.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from hodgecheck import _kernels
from hodgecheck.scalars import GaussRational, Scalar, conj, simplify_scalar

_DENSE_LIMIT = 40_000  # entries; above this sparse elimination takes over


class Matrix:
    """Immutable exact matrix over Fraction or GaussRational entries."""

    __slots__ = ("nrows", "ncols", "rows", "rep")

    def __init__(self, nrows: int, ncols: int, rows, rep: str):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows
        self.rep = rep

    @staticmethod
    def from_rows(data: Sequence[Sequence[Scalar]], rep: Optional[str] = None) -> "Matrix":
        nrows = len(data)
        ncols = len(data[0]) if nrows else 0
        if any(len(r) != ncols for r in data):
            raise ValueError("ragged rows")
        nnz = sum(1 for r in data for x in r if x)
        if rep is None:
            rep = "sparse" if nrows * ncols > 0 and nnz * 4 < nrows * ncols else "dense"
        if rep == "dense":
            return Matrix(nrows, ncols, [[simplify_scalar(x) for x in r] for r in data], "dense")
        return Matrix(
            nrows,
            ncols,
            [{j: simplify_scalar(x) for j, x in enumerate(r) if x} for r in data],
            "sparse",
        )

    @staticmethod
    def from_sparse_rows(
        rows: Sequence[dict], ncols: int, nrows: Optional[int] = None
    ) -> "Matrix":
        nrows = len(rows) if nrows is None else nrows
        clean = [{j: simplify_scalar(x) for j, x in r.items() if x} for r in rows]
        return Matrix(nrows, ncols, clean, "sparse")

    @staticmethod
    def zero(nrows: int, ncols: int) -> "Matrix":
        return Matrix(nrows, ncols, [{} for _ in range(nrows)], "sparse")

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix(n, n, [{i: Fraction(1)} for i in range(n)], "sparse")

    def entry(self, i: int, j: int) -> Scalar:
        row = self.rows[i]
        if self.rep == "dense":
            return row[j]
        return row.get(j, Fraction(0))

    def row_dict(self, i: int) -> dict:
        if self.rep == "dense":
            return {j: x for j, x in enumerate(self.rows[i]) if x}
        return dict(self.rows[i])

    def row_list(self, i: int) -> list:
        if self.rep == "dense":
            return list(self.rows[i])
        row = self.rows[i]
        return [row.get(j, Fraction(0)) for j in range(self.ncols)]

    def to_lists(self) -> List[list]:
        return [self.row_list(i) for i in range(self.nrows)]

    def transpose(self) -> "Matrix":
        cols: List[dict] = [{} for _ in range(self.ncols)]
        for i in range(self.nrows):
            for j, x in self.row_dict(i).items():
                cols[j][i] = x
        return Matrix.from_sparse_rows(cols, self.nrows)

    def conj_transpose(self) -> "Matrix":
        cols: List[dict] = [{} for _ in range(self.ncols)]
        for i in range(self.nrows):
            for j, x in self.row_dict(i).items():
                cols[j][i] = conj(x)
        return Matrix.from_sparse_rows(cols, self.nrows)

    def matmul(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        out = []
        for i in range(self.nrows):
            acc: dict = {}
            for k, x in self.row_dict(i).items():
                for j, y in other.row_dict(k).items():
                    v = acc.get(j)
                    v = x * y if v is None else v + x * y
                    if v:
                        acc[j] = v
                    elif j in acc:
                        del acc[j]
            out.append(acc)
        return Matrix.from_sparse_rows(out, other.ncols)

    def apply(self, vec: Sequence[Scalar]) -> list:
        """Matrix times column vector."""
        if len(vec) != self.ncols:
            raise ValueError("shape mismatch")
        out = []
        for i in range(self.nrows):
            s = Fraction(0)
            for j, x in self.row_dict(i).items():
                s = s + x * vec[j]
            out.append(s)
        return out

    def stack(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.ncols:
            raise ValueError("shape mismatch")
        rows = [self.row_dict(i) for i in range(self.nrows)]
        rows += [other.row_dict(i) for i in range(other.nrows)]
        return Matrix.from_sparse_rows(rows, self.ncols)

    def scaled(self, c: Scalar) -> "Matrix":
        rows = [{j: c * x for j, x in self.row_dict(i).items() if c * x} for i in range(self.nrows)]
        return Matrix.from_sparse_rows(rows, self.ncols)

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        rows = []
        for i in range(self.nrows):
            r = self.row_dict(i)
            for j, x in other.row_dict(i).items():
                v = r.get(j)
                v = x if v is None else v + x
                if v:
                    r[j] = v
                elif j in r:
                    del r[j]
            rows.append(r)
        return Matrix.from_sparse_rows(rows, self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + other.scaled(Fraction(-1))

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            return False
        return all(self.row_dict(i) == other.row_dict(i) for i in range(self.nrows))

    def __hash__(self):  # pragma: no cover - matrices are not dict keys in practice
        return hash((self.nrows, self.ncols))

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols}, {self.rep})"

    def is_gaussian(self) -> bool:
        return any(
            isinstance(x, GaussRational) and x.im != 0
            for i in range(self.nrows)
            for x in self.row_dict(i).values()
        )

    def is_symmetric(self) -> bool:
        return self == self.transpose()

    def is_hermitian(self) -> bool:
        return self == self.conj_transpose()


# ---------------------------------------------------------------------------
# elimination back ends


def _dense_int_echelon(m: Matrix) -> Tuple[int, List[int], List[List[int]]]:
    """Clear denominators row-wise, then Bareiss.  Rational entries only."""
    rows = []
    for i in range(m.nrows):
        row = m.row_list(i)
        den = 1
        for x in row:
            den = den * x.denominator // _gcd(den, x.denominator)
        rows.append([int(x * den) for x in row])
    if not rows:
        return 0, [], []
    rank, pivots = _kernels.bareiss_echelon(rows)
    return rank, pivots, rows


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _field_echelon(rows: List[dict], ncols: int) -> Tuple[int, List[int], List[dict]]:
    """Sparse Gaussian elimination over the entry field; returns echelon rows."""
    # column occupancy index for cheap pivot selection
    colrows: dict = {}
    live = {i: dict(r) for i, r in enumerate(rows) if r}
    for i, r in live.items():
        for j in r:
            colrows.setdefault(j, set()).add(i)
    echelon: List[dict] = []
    pivots: List[int] = []
    while live:
        # pick the sparsest live row, then its column with fewest occupants
        i = min(live, key=lambda k: (len(live[k]), k))
        row = live.pop(i)
        for j in row:
            colrows[j].discard(i)
        pj = min(row, key=lambda j: (len(colrows[j]), j))
        piv = row[pj]
        inv = Fraction(1) / piv if not isinstance(piv, GaussRational) else GaussRational(1) / piv
        row = {j: x * inv for j, x in row.items()}
        for k in list(colrows[pj]):
            target = live[k]
            f = target.pop(pj)
            colrows[pj].discard(k)
            for j, x in row.items():
                if j == pj:
                    continue
                v = target.get(j)
                v = -f * x if v is None else v - f * x
                if v:
                    if j not in target:
                        colrows.setdefault(j, set()).add(k)
                    target[j] = v
                else:
                    if j in target:
                        del target[j]
                        colrows[j].discard(k)
            if not target:
                del live[k]
        echelon.append(row)
        pivots.append(pj)
    order = sorted(range(len(pivots)), key=lambda t: pivots[t])
    return len(pivots), [pivots[t] for t in order], [echelon[t] for t in order]


def _echelon(m: Matrix) -> Tuple[int, List[int], List[dict]]:
    """Unified fully-reduced echelon: (rank, pivot columns, RREF rows as dicts).

    RREF rows touch only their own pivot column plus free columns, which keeps
    kernel/solve back-substitution order-independent.
    """
    if not m.is_gaussian() and m.nrows * m.ncols <= _DENSE_LIMIT:
        rk, pivots, rows = _dense_int_echelon(m)
        ech = []
        for i in range(rk):
            piv = rows[i][pivots[i]]
            ech.append({j: Fraction(x, piv) for j, x in enumerate(rows[i]) if x})
    else:
        rows = [m.row_dict(i) for i in range(m.nrows)]
        rk, pivots, ech = _field_echelon(rows, m.ncols)
    # clear every pivot column from the other rows (full reduction)
    for t in range(rk - 1, -1, -1):
        pj = pivots[t]
        for s in range(rk):
            if s == t:
                continue
            f = ech[s].get(pj)
            if not f:
                continue
            for j, x in ech[t].items():
                v = ech[s].get(j)
                v = -f * x if v is None else v - f * x
                if v:
                    ech[s][j] = v
                elif j in ech[s]:
                    del ech[s][j]
    return rk, pivots, ech


# ---------------------------------------------------------------------------
# public operations


def rank(m: Matrix) -> int:
    """Exact rank over the fraction field."""
    r, _, _ = _echelon(m)
    return r


def kernel(m: Matrix) -> List[list]:
    """Reduced basis of the right null space (RREF convention, exact)."""
    rk, pivots, ech = _echelon(m)
    pivot_set = set(pivots)
    free_cols = [j for j in range(m.ncols) if j not in pivot_set]
    # back-substitute; echelon rows are normalized with pivot coefficient 1
    basis = []
    for fc in free_cols:
        vec = [Fraction(0)] * m.ncols
        vec[fc] = Fraction(1)
        for t in range(rk - 1, -1, -1):
            pj = pivots[t]
            s = Fraction(0)
            for j, x in ech[t].items():
                if j != pj and vec[j]:
                    s = s + x * vec[j]
            vec[pj] = -s
        basis.append(vec)
    return basis


def solve(m: Matrix, b: Sequence[Scalar]) -> Optional[list]:
    """One exact solution of M x = b, or None when the system is inconsistent."""
    if len(b) != m.nrows:
        raise ValueError("shape mismatch")
    aug_rows = []
    for i in range(m.nrows):
        r = m.row_dict(i)
        if b[i]:
            r[m.ncols] = b[i]
        aug_rows.append(r)
    aug = Matrix.from_sparse_rows(aug_rows, m.ncols + 1)
    rk, pivots, ech = _echelon(aug)
    if m.ncols in pivots:
        return None
    vec = [Fraction(0)] * (m.ncols + 1)
    vec[m.ncols] = Fraction(-1)  # encode x_{n} = -1 so pivot solve yields M x = b
    for t in range(rk - 1, -1, -1):
        pj = pivots[t]
        s = Fraction(0)
        for j, x in ech[t].items():
            if j != pj and vec[j]:
                s = s + x * vec[j]
        vec[pj] = -s
    return vec[: m.ncols]


def _congruence_inertia(gram: List[list], hermitian: bool) -> Tuple[int, int, int]:
    """Sylvester inertia by exact symmetric/Hermitian congruence."""
    n = len(gram)
    a = [list(r) for r in gram]
    active = list(range(n))
    pos = neg = null = 0

    def real_part(x):
        if isinstance(x, GaussRational):
            if x.im != 0:
                raise ArithmeticError("diagonal of a Hermitian form must be real")
            return x.re
        return Fraction(x)

    while active:
        piv = next((k for k in active if a[k][k]), None)
        if piv is None:
            # zero diagonal: mix a nonzero off-diagonal pair onto the diagonal
            pair = None
            for ii, k in enumerate(active):
                for l in active[ii + 1 :]:
                    if a[k][l]:
                        pair = (k, l)
                        break
                if pair:
                    break
            if pair is None:
                null += len(active)
                break
            k, l = pair
            z = a[k][l]
            if hermitian and isinstance(z, GaussRational) and z.re == 0:
                # e_k += i e_l makes the diagonal -2 Im z
                _add_scaled(a, k, l, GaussRational(0, 1), hermitian)
            else:
                _add_scaled(a, k, l, Fraction(1), hermitian)
            piv = k
        d = real_part(a[piv][piv])
        if d > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        dd = a[piv][piv]
        # pivot row a[piv][.] must stay intact until every row is updated
        for i in active:
            if not a[i][piv]:
                continue
            f = a[i][piv] / dd
            for j in active:
                a[i][j] = a[i][j] - f * a[piv][j]
    return pos, neg, null


def _add_scaled(a: List[list], k: int, l: int, c, hermitian: bool) -> None:
    """Basis change e_k += c * e_l applied as congruence on the Gram matrix."""
    n = len(a)
    cc = conj(c) if hermitian else c
    for j in range(n):
        a[k][j] = a[k][j] + cc * a[l][j]
    for i in range(n):
        a[i][k] = a[i][k] + c * a[i][l]


def signature(s: Matrix) -> Tuple[int, int, int]:
    """Inertia (pos, neg, null) of a symmetric rational matrix."""
    if s.nrows != s.ncols:
        raise ValueError("signature needs a square matrix")
    if not s.is_symmetric():
        raise ValueError("signature needs a symmetric matrix")
    return _congruence_inertia(s.to_lists(), hermitian=False)


def hermitian_inertia(h: Matrix) -> Tuple[int, int, int]:
    """Inertia (pos, neg, null) of a Hermitian matrix over Q(i)."""
    if h.nrows != h.ncols:
        raise ValueError("inertia needs a square matrix")
    if not h.is_hermitian():
        raise ValueError("matrix is not Hermitian")
    return _congruence_inertia(h.to_lists(), hermitian=True)


def row_space_reduced(m: Matrix) -> Matrix:
    """Canonical (RREF) row basis of the row space; rows ordered by pivot."""
    _, _, ech = _echelon(m)
    return Matrix.from_sparse_rows(ech, m.ncols)


def intersection_dim(a: Matrix, b: Matrix) -> int:
    """dim(rowspace(a) ∩ rowspace(b))."""
    ra, rb = rank(a), rank(b)
    return ra + rb - rank(a.stack(b))
