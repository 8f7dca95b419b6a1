"""Lefschetz property, primitive decomposition, Riemann bilinear relations,
and the signature tests for trivial Hodge structures.

The pairings here are all taken against the chosen fundamental class:
q(a, b) = trace(omega^(n-k) a b) on degree k, and the Hermitian pairing
h(a, b) = i^k q(a, conj b) on the complexification.  The predicted
definiteness sign on a primitive (p, q) block pushed up by omega^r is the
exact Gaussian rational (-1)^(k(k-1)/2) i^(p-q-k) with k = p+q+2r, which is
asserted real before use; a non-real value would mean convention drift.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from hodgecheck.algebra import Element, GradedAlgebra, Subspace, elements_matrix
from hodgecheck.hodge import HodgeStructure, validate_hodge
from hodgecheck.linalg import Matrix, hermitian_inertia, kernel, rank, signature
from hodgecheck.reports import FAIL, NOT_POLARIZED, PASS, POLARIZED, ObstructionReport
from hodgecheck.scalars import GaussRational, as_gauss, conj, i_power

ZERO = Fraction(0)


def _half_dim(algebra: GradedAlgebra) -> int:
    if algebra.formal_dim % 2:
        raise ValueError("formal dimension is odd")
    return algebra.formal_dim // 2


def _require_full(algebra: GradedAlgebra) -> None:
    if not algebra.is_full:
        raise ValueError("this check needs a full-mode algebra")


def _mult_matrix(algebra: GradedAlgebra, omega_power: Element, k: int) -> Matrix:
    """Matrix of cup product by omega_power from degree k, rows = images."""
    target = k + omega_power.degree
    rows = [
        algebra.mul(omega_power, b).coords for b in algebra.basis_elements(k)
    ]
    return Matrix.from_sparse_rows(rows, algebra.dim(target))


@dataclass
class LefschetzReport:
    omega: Element
    n: int
    ranks: Dict[int, Tuple[int, int]] = field(default_factory=dict)  # k -> (rank, dim)
    primitive_dims: Dict[int, int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r == d for r, d in self.ranks.values())

    def failing_degrees(self) -> List[int]:
        return [k for k, (r, d) in sorted(self.ranks.items()) if r != d]

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "ranks": {str(k): {"rank": r, "dim": d} for k, (r, d) in sorted(self.ranks.items())},
            "primitive_dims": {str(k): v for k, v in sorted(self.primitive_dims.items())},
        }


def lefschetz_check(algebra: GradedAlgebra, omega: Element) -> LefschetzReport:
    """Is cup product by omega^(n-k) an isomorphism A^k -> A^(2n-k) for all
    k <= n?"""
    _require_full(algebra)
    if omega.degree != 2:
        raise ValueError("omega must have degree 2")
    n = _half_dim(algebra)
    report = LefschetzReport(omega=omega, n=n)
    for k in range(n + 1):
        dim_k = algebra.dim(k)
        if dim_k != algebra.dim(2 * n - k):
            report.ranks[k] = (-1, dim_k)
            continue
        if dim_k == 0:
            report.ranks[k] = (0, 0)
            continue
        power = algebra.power(omega, n - k)
        r = rank(_mult_matrix(algebra, power, k))
        report.ranks[k] = (r, dim_k)
        if r == dim_k:
            report.primitive_dims[k] = primitive_part(algebra, omega, k).dim
    return report


def primitive_part(algebra: GradedAlgebra, omega: Element, k: int) -> Subspace:
    """Kernel of cup product by omega^(n+1-k) on degree k."""
    _require_full(algebra)
    n = _half_dim(algebra)
    if k > n:
        raise ValueError("primitive parts live in degrees <= n")
    power = algebra.power(omega, n + 1 - k)
    m = _mult_matrix(algebra, power, k)
    vectors = kernel(m.transpose())
    if not vectors:
        return Subspace(algebra, k, Matrix.zero(0, algebra.dim(k)))
    return Subspace.from_vectors(algebra, k, vectors)


def lefschetz_decompose(
    algebra: GradedAlgebra, omega: Element, k: int
) -> List[Tuple[int, Subspace]]:
    """Components omega^i . A^(k-2i)_prim of A^k; their dims must sum to
    dim A^k (failure reports the rank deficit, signalling a Lefschetz
    failure)."""
    _require_full(algebra)
    n = _half_dim(algebra)
    if k > n:
        raise ValueError("decompose degrees <= n")
    parts: List[Tuple[int, Subspace]] = []
    stacked: Optional[Matrix] = None
    for i in range(k // 2 + 1):
        prim = primitive_part(algebra, omega, k - 2 * i)
        if prim.dim == 0:
            parts.append((i, prim))
            continue
        power = algebra.power(omega, i)
        rows = [
            algebra.mul(power, el).coords for el in prim.elements()
        ]
        span = Matrix.from_sparse_rows(rows, algebra.dim(k))
        sub = Subspace(algebra, k, span)
        parts.append((i, sub))
        stacked = span if stacked is None else stacked.stack(span)
    total = sum(s.basis.nrows for _, s in parts)
    independent = stacked is None or rank(stacked) == total
    if total != algebra.dim(k) or not independent:
        raise ArithmeticError(
            f"Lefschetz decomposition deficit in degree {k}: components give "
            f"{total} of {algebra.dim(k)} (independent: {independent})"
        )
    return parts


def q_form(algebra: GradedAlgebra, omega: Element, k: int) -> Matrix:
    """Gram matrix of q(a, b) = trace(omega^(n-k) a b) on the degree-k basis;
    symmetric for even k, antisymmetric for odd k."""
    _require_full(algebra)
    n = _half_dim(algebra)
    if k > n:
        raise ValueError("q_form degrees <= n")
    power = algebra.power(omega, n - k)
    basis = algebra.basis_elements(k)
    rows = []
    for a in basis:
        pa = algebra.mul(power, a)
        row = {}
        for j, b in enumerate(basis):
            t = algebra.trace(algebra.mul(pa, b))
            if t:
                row[j] = t
        rows.append(row)
    return Matrix.from_sparse_rows(rows, len(basis))


def _q_value(algebra: GradedAlgebra, power: Element, a: Element, b: Element):
    return algebra.trace(algebra.mul(algebra.mul(power, a), b))


def omega_is_11(h: HodgeStructure, omega: Element) -> bool:
    return h.contains_in_piece(omega, 1, 1)


def primitive_piece_elements(
    h: HodgeStructure, omega: Element, p: int, q: int
) -> List[Element]:
    """Basis of H^(p,q)_prim = H^(p,q) with omega^(n-k+1)-kernel condition."""
    algebra = h.algebra
    n = _half_dim(algebra)
    k = p + q
    span = h.reduced_piece(p, q)
    if span.nrows == 0:
        return []
    power = algebra.power(omega, n + 1 - k)
    rows = []
    for i in range(span.nrows):
        el = algebra.element(k, span.row_dict(i))
        rows.append(algebra.mul(power, el).coords)
    m = Matrix.from_sparse_rows(rows, algebra.dim(k + 2 * (n + 1 - k)))
    combos = kernel(m.transpose())
    out = []
    for combo in combos:
        el = algebra.zero(k)
        for i, c in enumerate(combo):
            if c:
                el = el + algebra.element(k, span.row_dict(i)).scale(c)
        out.append(el)
    return out


def h_form(
    h: HodgeStructure, omega: Element, p: int, q: int, r: int
) -> Matrix:
    """Gram matrix of the Hermitian pairing h(a,b) = i^k q(a, conj b) on the
    block omega^r . H^(p,q)_prim inside degree k = p + q + 2r."""
    algebra = h.algebra
    n = _half_dim(algebra)
    k = p + q + 2 * r
    if k > n:
        raise ValueError("blocks live in degrees <= n")
    if not omega_is_11(h, omega):
        raise ValueError("omega is not of type (1,1) for this Hodge structure")
    prim = primitive_piece_elements(h, omega, p, q)
    if not prim:
        return Matrix.zero(0, 0)
    omr = algebra.power(omega, r)
    block = [algebra.mul(omr, el) for el in prim]
    power = algebra.power(omega, n - k)
    ik = i_power(k)
    rows = []
    for a in block:
        row = {}
        for j, b in enumerate(block):
            v = as_gauss(_q_value(algebra, power, a, b.conjugate())) * ik
            if v:
                row[j] = v
        rows.append(row)
    return Matrix.from_sparse_rows(rows, len(block))


def predicted_sign(k: int, p: int, q: int) -> int:
    """Definiteness sign on the block omega^r . H^(p,q)_prim inside degree
    k = p + q + 2r: the exact Gaussian rational
    (-1)^(k(k-1)/2) * i^(p-q-(p+q)), asserted real (it equals
    (-1)^(k(k-1)/2) (-1)^q).

    The i-power is taken at the primitive weight p+q, not at the ambient k:
    the two readings differ by (-1)^r, and only this one reproduces both the
    exact torus Gram matrices and the Hodge index signature values.
    """
    s = i_power(p - q - (p + q))
    if ((k * (k - 1)) // 2) % 2:
        s = -s
    if not s.is_real():
        raise ArithmeticError("definiteness sign came out non-real: convention drift")
    return 1 if s.re > 0 else -1


@dataclass
class BlockRecord:
    p: int
    q: int
    r: int
    k: int
    dim: int
    inertia: Tuple[int, int, int]
    expected_sign: int

    @property
    def passed(self) -> bool:
        pos, neg, null = self.inertia
        if null:
            return False
        return (neg == 0) if self.expected_sign > 0 else (pos == 0)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "r": self.r,
            "k": self.k,
            "dim": self.dim,
            "inertia": list(self.inertia),
            "expected_sign": self.expected_sign,
            "passed": self.passed,
        }


@dataclass
class PolarizationCheck:
    omega: Element
    blocks: List[BlockRecord] = field(default_factory=list)
    verdict: str = POLARIZED
    first_violation: Optional[BlockRecord] = None

    def to_dict(self) -> dict:
        d = {
            "verdict": self.verdict,
            "blocks": [b.to_dict() for b in self.blocks],
        }
        if self.first_violation is not None:
            d["first_violation"] = self.first_violation.to_dict()
        return d


def hodge_riemann_check(h: HodgeStructure, omega: Element) -> PolarizationCheck:
    """Verify the second Riemann relations: every primitive (p,q) block,
    pushed up by omega^r into degree k <= n, is definite of the predicted
    sign for the Hermitian pairing."""
    algebra = h.algebra
    n = _half_dim(algebra)
    lef = lefschetz_check(algebra, omega)
    if not lef.passed:
        raise ValueError(f"omega fails the Lefschetz property at degrees {lef.failing_degrees()}")
    validation = validate_hodge(h)
    if not validation.passed:
        raise ValueError("Hodge structure fails validation")
    if not omega_is_11(h, omega):
        raise ValueError("omega is not of type (1,1)")
    check = PolarizationCheck(omega=omega)
    for j in range(n + 1):
        for (p, q) in h.bidegrees(j):
            for r in range((n - j) // 2 + 1):
                k = j + 2 * r
                gram = h_form(h, omega, p, q, r)
                if gram.nrows == 0:
                    continue
                inertia = hermitian_inertia(gram)
                rec = BlockRecord(
                    p=p, q=q, r=r, k=k, dim=gram.nrows,
                    inertia=inertia, expected_sign=predicted_sign(k, p, q),
                )
                check.blocks.append(rec)
                if not rec.passed and check.first_violation is None:
                    check.first_violation = rec
    if check.first_violation is not None:
        check.verdict = NOT_POLARIZED
    return check


def signature_formula_check(algebra: GradedAlgebra) -> ObstructionReport:
    """For algebras with no odd cohomology and dimension 4m: a polarized
    trivial Hodge structure forces |tau| = |sum_i (-1)^i b_2i|."""
    _require_full(algebra)
    for k in algebra.degrees():
        if k % 2 and algebra.dim(k):
            raise ValueError("signature test needs vanishing odd cohomology")
    if algebra.formal_dim % 4:
        raise ValueError("signature test needs dimension divisible by 4")
    mid = algebra.formal_dim // 2
    pos, neg, null = signature(algebra.pairing_matrix(mid))
    tau = pos - neg
    alt = sum(
        (-1) ** i * algebra.dim(2 * i) for i in range(algebra.formal_dim // 2 + 1)
    )
    ok = abs(tau) == abs(alt)
    return ObstructionReport(
        test="signature-formula",
        verdict=PASS if ok else FAIL,
        certificate={
            "tau": tau,
            "inertia": [pos, neg, null],
            "alternating_sum": alt,
            "abs_tau": abs(tau),
            "abs_alternating_sum": abs(alt),
        },
        notes=[] if ok else ["trivial Hodge structure admits no polarization"],
    )


def diagonal_rank_floor_check(
    algebra: GradedAlgebra,
    hodge: Optional[HodgeStructure] = None,
) -> ObstructionReport:
    """Polarized structures with M^(2i+1) nonzero need rank >= 2 in degree
    4i+2 (in the (2i+1, 2i+1) piece when a Hodge structure is supplied)."""
    _require_full(algebra)
    n = _half_dim(algebra)
    violations = []
    checked = []
    i = 0
    while 4 * i + 2 <= n:
        if algebra.dim(2 * i + 1):
            if hodge is not None:
                rk = hodge.piece_dim(2 * i + 1, 2 * i + 1)
                kind = f"h^({2*i+1},{2*i+1})"
            else:
                rk = algebra.dim(4 * i + 2)
                kind = f"b_{4*i+2}"
            checked.append({"i": i, "rank": rk, "kind": kind})
            if rk < 2:
                violations.append({"i": i, "rank": rk, "kind": kind})
        i += 1
    return ObstructionReport(
        test="diagonal-rank-floor",
        verdict=FAIL if violations else PASS,
        certificate={"checked": checked, "violations": violations},
        notes=["vacuous: no applicable odd degree"] if not checked else [],
    )


# ---------------------------------------------------------------------------
# middle-form assembly


@dataclass
class AssembledForm:
    """Orthogonal direct sum of explicit symmetric blocks and abstract
    hyperbolic summands (which contribute (d, d, 0) and tau = 0)."""

    explicit: Optional[Matrix]
    hyperbolic_planes: int

    @property
    def inertia(self) -> Tuple[int, int, int]:
        if self.explicit is None:
            base = (0, 0, 0)
        else:
            base = signature(self.explicit)
        return (
            base[0] + self.hyperbolic_planes,
            base[1] + self.hyperbolic_planes,
            base[2],
        )

    @property
    def tau(self) -> int:
        pos, neg, _ = self.inertia
        return pos - neg

    @property
    def dim(self) -> int:
        n = 0 if self.explicit is None else self.explicit.nrows
        return n + 2 * self.hyperbolic_planes


def assemble_middle_form(blocks: Sequence[tuple]) -> AssembledForm:
    """Blocks: ("form", Matrix) | ("negated", Matrix) | ("hyperbolic", d).

    The result is the orthogonal direct sum; tau is additive and hyperbolic
    blocks contribute zero.
    """
    mats: List[Matrix] = []
    hyper = 0
    for kind, payload in blocks:
        if kind == "hyperbolic":
            hyper += int(payload)
        elif kind == "form":
            if not payload.is_symmetric():
                raise ValueError("form blocks must be symmetric")
            mats.append(payload)
        elif kind == "negated":
            if not payload.is_symmetric():
                raise ValueError("form blocks must be symmetric")
            mats.append(payload.scaled(Fraction(-1)))
        else:
            raise ValueError(f"unknown block kind {kind!r}")
    explicit = None
    if mats:
        n = sum(m.nrows for m in mats)
        rows = []
        off = 0
        for m in mats:
            for i in range(m.nrows):
                rows.append({off + j: x for j, x in m.row_dict(i).items()})
            off += m.nrows
        explicit = Matrix.from_sparse_rows(rows, n)
    return AssembledForm(explicit=explicit, hyperbolic_planes=hyper)
