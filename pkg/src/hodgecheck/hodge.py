"""Hodge structures on graded algebras, over Gaussian-rational coordinates.

A HodgeStructure stores, per degree k, spanning sets for the (p, q) pieces
of the complexified degree-k part.  Everything constructive in this package
(square tori, trivial structures, sub-Hodge tests, sign checks) lives over
Q(i), where conjugation is exact; spanning sets are kept as given and all
predicates reduce to rank computations, so answers are basis-independent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from hodgecheck.algebra import Element, GradedAlgebra, Subspace, elements_matrix
from hodgecheck.linalg import Matrix, kernel, rank, row_space_reduced
from hodgecheck.reports import NO_HODGE, PASS, ObstructionReport
from hodgecheck.scalars import GaussRational, conj


@dataclass
class WeightOneData:
    """A half-dimensional subspace h10 of the complexified degree-1 part
    with h10 + conj(h10) spanning (no real vectors in common)."""

    algebra: GradedAlgebra
    h10: Matrix  # rows span H^{1,0} in degree-1 coordinates over Q(i)

    def __post_init__(self):
        n2 = self.algebra.dim(1)
        if n2 % 2:
            raise ValueError("degree-1 part has odd dimension")
        if self.h10.ncols != n2:
            raise ValueError("h10 vectors have the wrong length")
        if rank(self.h10) != n2 // 2:
            raise ValueError("h10 must have half dimension")
        stacked = self.h10.stack(_conj_matrix(self.h10))
        if rank(stacked) != n2:
            raise ValueError("h10 and its conjugate must be complementary")

    def vectors(self) -> List[Element]:
        return [
            self.algebra.element(1, self.h10.row_dict(i))
            for i in range(self.h10.nrows)
        ]


def _conj_matrix(m: Matrix) -> Matrix:
    rows = [
        {j: conj(x) for j, x in m.row_dict(i).items()} for i in range(m.nrows)
    ]
    return Matrix.from_sparse_rows(rows, m.ncols)


class HodgeStructure:
    """Per-degree (p, q)-decomposition given by Gaussian-rational spans."""

    def __init__(self, algebra: GradedAlgebra, pieces: Dict[Tuple[int, int], Matrix]):
        self.algebra = algebra
        self.pieces: Dict[Tuple[int, int], Matrix] = {}
        for (p, q), span in pieces.items():
            if span.nrows == 0:
                continue
            if span.ncols != algebra.dim(p + q):
                raise ValueError(f"span for ({p},{q}) has the wrong width")
            self.pieces[(p, q)] = span
        self._reduced: Dict[Tuple[int, int], Matrix] = {}

    def degrees(self) -> List[int]:
        return sorted({p + q for p, q in self.pieces})

    def bidegrees(self, k: int) -> List[Tuple[int, int]]:
        return sorted((p, q) for (p, q) in self.pieces if p + q == k)

    def reduced_piece(self, p: int, q: int) -> Matrix:
        if (p, q) not in self._reduced:
            span = self.pieces.get((p, q))
            if span is None:
                self._reduced[(p, q)] = Matrix.zero(0, self.algebra.dim(p + q))
            else:
                self._reduced[(p, q)] = row_space_reduced(span)
        return self._reduced[(p, q)]

    def piece_dim(self, p: int, q: int) -> int:
        return self.reduced_piece(p, q).nrows

    def piece_elements(self, p: int, q: int) -> List[Element]:
        red = self.reduced_piece(p, q)
        return [self.algebra.element(p + q, red.row_dict(i)) for i in range(red.nrows)]

    def hodge_numbers(self, k: int) -> Dict[Tuple[int, int], int]:
        return {(p, q): self.piece_dim(p, q) for (p, q) in self.bidegrees(k)}

    def contains_in_piece(self, el: Element, p: int, q: int) -> bool:
        red = self.reduced_piece(p, q)
        stacked = red.stack(Matrix.from_sparse_rows([el.coords], red.ncols))
        return rank(stacked) == red.nrows


def trivial_hodge(algebra: GradedAlgebra) -> HodgeStructure:
    """Everything of type (k, k); only possible without odd cohomology."""
    for d in algebra.degrees():
        if d % 2 and algebra.dim(d):
            raise ValueError(f"nonzero odd part in degree {d}")
    pieces = {}
    for d in algebra.degrees():
        n = algebra.dim(d)
        if d % 2 == 0 and n:
            pieces[(d // 2, d // 2)] = Matrix.identity(n)
    return HodgeStructure(algebra, pieces)


def exterior_hodge(algebra, weight_one: WeightOneData) -> HodgeStructure:
    """Weight-k pieces of an exterior algebra as wedges of the weight-1 ones:
    H^{p,q} = Lambda^p(h10) wedge Lambda^q(conj h10)."""
    from itertools import combinations

    n2 = algebra.dim(1)
    n = n2 // 2
    zeta = weight_one.vectors()
    zbar = [z.conjugate() for z in zeta]
    pieces: Dict[Tuple[int, int], Matrix] = {}
    for k in range(algebra.formal_dim + 1):
        for p in range(k + 1):
            q = k - p
            if p > n or q > n:
                continue
            vectors = []
            for isel in combinations(range(n), p):
                left = algebra.unit()
                for i in isel:
                    left = algebra.mul(left, zeta[i])
                for jsel in combinations(range(n), q):
                    v = left
                    for j in jsel:
                        v = algebra.mul(v, zbar[j])
                    if v:
                        vectors.append(v.coords)
            if vectors:
                pieces[(p, q)] = Matrix.from_sparse_rows(vectors, algebra.dim(k))
    return HodgeStructure(algebra, pieces)


@dataclass
class HodgeValidation:
    results: List[tuple] = field(default_factory=list)  # (check, passed, witness)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.results)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "checks": [
                {"check": c, "passed": ok, "witness": w} for c, ok, w in self.results
            ],
        }


def validate_hodge(h: HodgeStructure) -> HodgeValidation:
    """Check completeness, Hodge symmetry, and product compatibility."""
    out = HodgeValidation()
    alg = h.algebra

    # completeness: pieces of each degree are independent and span
    for k in alg.degrees():
        dim_k = alg.dim(k)
        spans = [h.pieces[(p, q)] for (p, q) in h.bidegrees(k)]
        total = sum(h.piece_dim(p, q) for (p, q) in h.bidegrees(k))
        if not dim_k:
            ok = total == 0
            if not ok:
                out.results.append(("completeness", False, f"pieces in empty degree {k}"))
            continue
        if not spans:
            out.results.append(("completeness", False, f"no pieces in degree {k}"))
            continue
        stacked = spans[0]
        for s in spans[1:]:
            stacked = stacked.stack(s)
        r = rank(stacked)
        if r != dim_k or total != dim_k:
            out.results.append(
                ("completeness", False, f"degree {k}: rank {r}, piece dims {total}, expected {dim_k}")
            )
    if not any(c == "completeness" for c, ok, _ in out.results if not ok):
        out.results.append(("completeness", True, None))

    # Hodge symmetry: conj of (p,q) equals (q,p)
    sym_ok, sym_witness = True, None
    for (p, q) in h.pieces:
        conj_red = row_space_reduced(_conj_matrix(h.pieces[(p, q)]))
        if conj_red != h.reduced_piece(q, p):
            sym_ok, sym_witness = False, f"conj of ({p},{q}) is not ({q},{p})"
            break
    out.results.append(("hodge symmetry", sym_ok, sym_witness))

    # product compatibility
    comp_ok, comp_witness = True, None
    keys = sorted(h.pieces)
    for (p1, q1) in keys:
        for (p2, q2) in keys:
            k = p1 + q1 + p2 + q2
            if k > alg.max_degree:
                continue
            target = (p1 + p2, q1 + q2)
            for u in h.piece_elements(p1, q1):
                for v in h.piece_elements(p2, q2):
                    w = alg.mul(u, v)
                    if not w:
                        continue
                    if not h.contains_in_piece(w, *target):
                        comp_ok = False
                        comp_witness = f"({p1},{q1}) x ({p2},{q2}) escapes ({target[0]},{target[1]})"
                        break
                if not comp_ok:
                    break
            if not comp_ok:
                break
        if not comp_ok:
            break
    out.results.append(("product compatibility", comp_ok, comp_witness))
    return out


def is_sub_hodge(h: HodgeStructure, s: Subspace) -> Tuple[bool, Dict[Tuple[int, int], int]]:
    """S is a sub-Hodge structure iff S_C splits as the sum of its
    intersections with the (p, q) pieces; returns the intersection dims."""
    k = s.degree
    dims: Dict[Tuple[int, int], int] = {}
    total = 0
    for (p, q) in h.bidegrees(k):
        d = s.intersection_dim(
            Subspace(h.algebra, k, h.reduced_piece(p, q))
        )
        dims[(p, q)] = d
        total += d
    return total == s.dim, dims


def even_dimension_check(algebra: GradedAlgebra) -> ObstructionReport:
    """Hodge symmetry in odd weight forces even rank; odd formal dimension or
    an odd-rank odd-degree part rules every Hodge structure out."""
    if algebra.formal_dim % 2:
        return ObstructionReport(
            test="even-dimension",
            verdict=NO_HODGE,
            certificate={"witness": "formal_dimension", "value": algebra.formal_dim},
        )
    for k in algebra.degrees():
        if k % 2 and algebra.dim(k) % 2:
            return ObstructionReport(
                test="even-dimension",
                verdict=NO_HODGE,
                certificate={"witness_degree": k, "rank": algebra.dim(k)},
            )
    return ObstructionReport(test="even-dimension", verdict=PASS, certificate={})
