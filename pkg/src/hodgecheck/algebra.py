"""Finite graded-commutative cohomology algebras with exact sparse arithmetic.

A GradedAlgebra knows its per-degree basis sizes, human-readable basis
labels, and how to multiply sparse coordinate vectors.  Concrete algebras
either store structure constants explicitly (ExplicitAlgebra) or compute
products structurally (exterior algebras, bundle and blow-up models in
hodgecheck.builders); both sit behind the same interface, so ranks, pairings
and validation never care which kind they got.

Full-mode algebras have a one-dimensional top degree with a chosen
fundamental class and perfect Poincare pairing in every degree.  Truncated
mode keeps products only up to a degree cap: anything above the cap is the
zero element, flagged with a TruncationWarning.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from hodgecheck.linalg import Matrix, intersection_dim, rank, row_space_reduced
from hodgecheck.scalars import GaussRational, Scalar, conj

ZERO = Fraction(0)
ONE = Fraction(1)


class TruncationWarning(UserWarning):
    """A product escaped above the degree cap and was replaced by zero."""


class InsufficientDataError(ValueError):
    """A computation needs structure data (normal Chern classes) that was
    left unspecified."""


class GradedAlgebra:
    """Base class; subclasses implement dim/basis_label/_mul_terms."""

    name: str = "algebra"
    formal_dim: int = 0
    cap: Optional[int] = None  # None = full mode

    # -- required interface ---------------------------------------------------

    def dim(self, degree: int) -> int:
        raise NotImplementedError

    def basis_label(self, degree: int, index: int) -> str:
        raise NotImplementedError

    def _mul_terms(self, d1: int, t1: dict, d2: int, t2: dict) -> dict:
        """Product of sparse coordinate dicts, in degree d1+d2 (within range)."""
        raise NotImplementedError

    # -- degrees --------------------------------------------------------------

    @property
    def is_full(self) -> bool:
        return self.cap is None

    @property
    def max_degree(self) -> int:
        return self.formal_dim if self.cap is None else self.cap

    def degrees(self) -> range:
        return range(self.max_degree + 1)

    def total_dim(self) -> int:
        return sum(self.dim(d) for d in self.degrees())

    # -- element constructors ---------------------------------------------------

    def element(self, degree: int, coords: dict) -> "Element":
        return Element(self, degree, {i: c for i, c in coords.items() if c})

    def zero(self, degree: int = 0) -> "Element":
        return Element(self, degree, {})

    def unit(self) -> "Element":
        return Element(self, 0, {0: ONE})

    def basis_element(self, degree: int, index: int) -> "Element":
        if not 0 <= index < self.dim(degree):
            raise IndexError(f"basis index {index} out of range in degree {degree}")
        return Element(self, degree, {index: ONE})

    def basis_elements(self, degree: int) -> List["Element"]:
        return [self.basis_element(degree, i) for i in range(self.dim(degree))]

    def from_label_coords(self, degree: int, coords: Dict[str, Scalar]) -> "Element":
        lookup = self._label_lookup(degree)
        out = {}
        for label, c in coords.items():
            if label not in lookup:
                raise KeyError(f"unknown basis label {label!r} in degree {degree}")
            out[lookup[label]] = c
        return self.element(degree, out)

    def _label_lookup(self, degree: int) -> Dict[str, int]:
        cache = getattr(self, "_label_cache", None)
        if cache is None:
            cache = {}
            self._label_cache = cache
        if degree not in cache:
            n = self.dim(degree)
            if n > 100_000:
                raise ValueError(f"degree {degree} too large for label lookup")
            cache[degree] = {self.basis_label(degree, i): i for i in range(n)}
        return cache[degree]

    # -- multiplication ---------------------------------------------------------

    def mul(self, x: "Element", y: "Element") -> "Element":
        if x.algebra is not self or y.algebra is not self:
            raise ValueError("elements from a different algebra")
        d = x.degree + y.degree
        if d > self.max_degree:
            if self.cap is not None and d <= self.formal_dim:
                warnings.warn(
                    f"product of degrees {x.degree}+{y.degree} exceeds cap "
                    f"{self.cap}; returning flagged zero",
                    TruncationWarning,
                    stacklevel=2,
                )
                return Element(self, d, {}, truncated=True)
            return Element(self, d, {})
        if not x.coords or not y.coords:
            return Element(self, d, {})
        # degree-0 parts act by scaling: A^0 = Q . 1
        if x.degree == 0:
            c = x.coords.get(0, ZERO)
            return Element(self, d, {i: c * v for i, v in y.coords.items() if c * v})
        if y.degree == 0:
            c = y.coords.get(0, ZERO)
            return Element(self, d, {i: v * c for i, v in x.coords.items() if v * c})
        return Element(self, d, self._mul_terms(x.degree, x.coords, y.degree, y.coords))

    def power(self, x: "Element", k: int) -> "Element":
        if k < 0:
            raise ValueError("negative power")
        out = self.unit()
        for _ in range(k):
            out = self.mul(out, x)
        return out

    # -- duality ------------------------------------------------------------------

    def fundamental_index(self) -> int:
        """Index of the chosen fundamental class in the top degree (full mode)."""
        if not self.is_full:
            raise ValueError("truncated algebra has no fundamental class")
        if self.dim(self.formal_dim) != 1:
            raise ValueError("top degree is not one-dimensional")
        return 0

    def trace(self, x: "Element") -> Scalar:
        """Coefficient of the fundamental class; zero off the top degree."""
        if x.degree != self.formal_dim:
            return ZERO
        return x.coords.get(self.fundamental_index(), ZERO)

    def pairing_matrix(self, k: int) -> Matrix:
        """Gram matrix of A^k x A^(m-k) -> A^m against the fundamental class."""
        if not self.is_full:
            raise ValueError("pairing matrix needs full mode")
        m = self.formal_dim
        if not 0 <= k <= m:
            raise ValueError("degree out of range")
        rows = []
        for i in range(self.dim(k)):
            xi = self.basis_element(k, i)
            row = {}
            for j in range(self.dim(m - k)):
                t = self.trace(self.mul(xi, self.basis_element(m - k, j)))
                if t:
                    row[j] = t
            rows.append(row)
        return Matrix.from_sparse_rows(rows, self.dim(m - k))

    def mult_image_rank(self, classes: Sequence["Element"], l: int) -> int:
        """Rank of (a_1..a_r) -> sum classes_j * a_j from r copies of A^l."""
        if not classes:
            return 0
        k = classes[0].degree
        if any(c.degree != k for c in classes):
            raise ValueError("forced classes must share one degree")
        if k + l > self.max_degree:
            raise ValueError("target degree out of range")
        rows = []
        for cls in classes:
            for i in range(self.dim(l)):
                rows.append(self.mul(cls, self.basis_element(l, i)).coords)
        return rank(Matrix.from_sparse_rows(rows, self.dim(k + l)))

    # -- serialization ---------------------------------------------------------------

    def structure_constants(self) -> Iterable[tuple]:
        """Yield (d1, i, d2, j, product coords) for d1 <= d2, in canonical order."""
        if self.total_dim() > 2000:
            raise ValueError("algebra too large to enumerate structure constants")
        for d1 in self.degrees():
            for d2 in range(d1, self.max_degree - d1 + 1):
                for i in range(self.dim(d1)):
                    for j in range(self.dim(d2)):
                        p = self.mul(self.basis_element(d1, i), self.basis_element(d2, j))
                        yield (d1, i, d2, j, dict(sorted(p.coords.items())))

    def describe(self) -> dict:
        """Builder spec that reconstructs this algebra (see cli module)."""
        raise NotImplementedError(f"{type(self).__name__} has no file form")

    # -- validation ------------------------------------------------------------------

    def validate(self, seed: int = 0, sample_budget: int = 4000) -> "ValidationReport":
        return validate(self, seed=seed, sample_budget=sample_budget)


class Element:
    """Homogeneous element: sparse coordinates in one degree's basis."""

    __slots__ = ("algebra", "degree", "coords", "truncated")

    def __init__(self, algebra, degree: int, coords: dict, truncated: bool = False):
        self.algebra = algebra
        self.degree = degree
        self.coords = coords
        self.truncated = truncated

    def is_zero(self) -> bool:
        return not self.coords

    def __bool__(self):
        return bool(self.coords)

    def __add__(self, other: "Element") -> "Element":
        if other.algebra is not self.algebra or other.degree != self.degree:
            if not other.coords:
                return self
            if not self.coords:
                return other
            raise ValueError("degree mismatch in addition")
        out = dict(self.coords)
        for i, c in other.coords.items():
            v = out.get(i)
            v = c if v is None else v + c
            if v:
                out[i] = v
            elif i in out:
                del out[i]
        return Element(self.algebra, self.degree, out)

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def __neg__(self) -> "Element":
        return Element(self.algebra, self.degree, {i: -c for i, c in self.coords.items()})

    def scale(self, c) -> "Element":
        if not c:
            return Element(self.algebra, self.degree, {})
        return Element(self.algebra, self.degree, {i: c * v for i, v in self.coords.items()})

    def __mul__(self, other):
        if isinstance(other, Element):
            return self.algebra.mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int) -> "Element":
        return self.algebra.power(self, k)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return (
            self.algebra is other.algebra
            and self.degree == other.degree
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((id(self.algebra), self.degree, tuple(sorted(self.coords.items(), key=lambda kv: kv[0]))))

    def conjugate(self) -> "Element":
        return Element(self.algebra, self.degree, {i: conj(c) for i, c in self.coords.items()})

    def vector(self) -> list:
        return [self.coords.get(i, ZERO) for i in range(self.algebra.dim(self.degree))]

    def __repr__(self):
        if not self.coords:
            return f"<0 in degree {self.degree}>"
        parts = []
        for i, c in sorted(self.coords.items())[:6]:
            parts.append(f"({c})*{self.algebra.basis_label(self.degree, i)}")
        tail = " + ..." if len(self.coords) > 6 else ""
        return " + ".join(parts) + tail


class MixedElement:
    """Inhomogeneous element stored per degree (total Chern/Segre data)."""

    def __init__(self, algebra, parts: Optional[Dict[int, Element]] = None):
        self.algebra = algebra
        self.parts: Dict[int, Element] = {}
        for d, el in (parts or {}).items():
            if el.degree != d:
                raise ValueError("component degree mismatch")
            if el:
                self.parts[d] = el

    def component(self, degree: int) -> Element:
        return self.parts.get(degree, self.algebra.zero(degree))

    def __eq__(self, other):
        if not isinstance(other, MixedElement):
            return NotImplemented
        return self.algebra is other.algebra and self.parts == other.parts

    def __repr__(self):
        return f"MixedElement(degrees={sorted(self.parts)})"


@dataclass
class Subspace:
    """Degree-homogeneous span, stored as a reduced row basis."""

    algebra: GradedAlgebra
    degree: int
    basis: Matrix  # RREF rows, no zero rows

    @staticmethod
    def from_elements(elements: Sequence[Element]) -> "Subspace":
        if not elements:
            raise ValueError("need at least one element")
        alg, deg = elements[0].algebra, elements[0].degree
        if any(e.algebra is not alg or e.degree != deg for e in elements):
            raise ValueError("elements must share algebra and degree")
        m = Matrix.from_sparse_rows([e.coords for e in elements], alg.dim(deg))
        return Subspace(alg, deg, row_space_reduced(m))

    @staticmethod
    def from_vectors(algebra, degree: int, vectors: Sequence[Sequence[Scalar]]) -> "Subspace":
        m = Matrix.from_rows(vectors)
        if m.ncols != algebra.dim(degree):
            raise ValueError("vector length does not match degree dimension")
        return Subspace(algebra, degree, row_space_reduced(m))

    @property
    def dim(self) -> int:
        return self.basis.nrows

    def elements(self) -> List[Element]:
        return [
            self.algebra.element(self.degree, self.basis.row_dict(i))
            for i in range(self.basis.nrows)
        ]

    def contains(self, el: Element) -> bool:
        if el.degree != self.degree:
            return False
        if not el.coords:
            return True
        m = self.basis.stack(Matrix.from_sparse_rows([el.coords], self.basis.ncols))
        return rank(m) == self.dim

    def intersection_dim(self, other: "Subspace") -> int:
        return intersection_dim(self.basis, other.basis)

    def is_rational(self) -> bool:
        """True when the span is defined over Q.  The stored basis is the
        unique RREF of the span, and a span is Q-defined exactly when its
        RREF is rational."""
        return not self.basis.is_gaussian()

    def conjugated(self) -> "Subspace":
        rows = [
            {j: conj(x) for j, x in self.basis.row_dict(i).items()}
            for i in range(self.basis.nrows)
        ]
        return Subspace(
            self.algebra,
            self.degree,
            row_space_reduced(Matrix.from_sparse_rows(rows, self.basis.ncols)),
        )

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.algebra is other.algebra
            and self.degree == other.degree
            and self.basis == other.basis
        )


class AlgebraMap:
    """Graded linear map between algebras, optionally with a uniform degree
    shift (Gysin maps) and a verified ring-homomorphism claim.

    When matrix-backed, matrices[d] has one row per source basis element of
    degree d, carrying the coordinates of its image in degree d + shift.
    """

    def __init__(
        self,
        source: GradedAlgebra,
        target: GradedAlgebra,
        *,
        shift: int = 0,
        matrices: Optional[Dict[int, Matrix]] = None,
        apply_fn=None,
        ring_hom: bool = False,
        name: str = "map",
    ):
        if matrices is None and apply_fn is None:
            raise ValueError("need matrices or apply_fn")
        self.source = source
        self.target = target
        self.shift = shift
        self.matrices = matrices
        self.apply_fn = apply_fn
        self.ring_hom = ring_hom
        self.name = name

    def apply(self, el: Element) -> Element:
        if el.algebra is not self.source:
            raise ValueError("element not in source algebra")
        if self.apply_fn is not None:
            return self.apply_fn(el)
        mat = self.matrices.get(el.degree)
        target_deg = el.degree + self.shift
        if mat is None:
            return self.target.zero(target_deg)
        out: dict = {}
        for j, c in el.coords.items():
            for i, x in mat.row_dict(j).items():
                v = out.get(i)
                v = c * x if v is None else v + c * x
                if v:
                    out[i] = v
                elif i in out:
                    del out[i]
        return self.target.element(target_deg, out)

    def verify_ring_hom(self, max_degree: Optional[int] = None) -> Optional[tuple]:
        """Check multiplicativity on all basis pairs up to a degree bound.
        Returns None on success, else a witness (d1, i, d2, j)."""
        top = self.source.max_degree if max_degree is None else max_degree
        if self.apply(self.source.unit()) != self.target.unit():
            return (0, 0, 0, 0)
        for d1 in range(1, top + 1):
            for d2 in range(d1, top - d1 + 1):
                for i in range(self.source.dim(d1)):
                    xi = self.source.basis_element(d1, i)
                    fxi = self.apply(xi)
                    for j in range(self.source.dim(d2)):
                        yj = self.source.basis_element(d2, j)
                        lhs = self.apply(self.source.mul(xi, yj))
                        rhs = self.target.mul(fxi, self.apply(yj))
                        if lhs != rhs:
                            return (d1, i, d2, j)
        return None


# ---------------------------------------------------------------------------
# explicit algebras


class ExplicitAlgebra(GradedAlgebra):
    """Algebra given by dense degree data and sparse structure constants.

    The table stores products for d1 <= d2; the other triangle follows from
    graded commutativity.
    """

    def __init__(
        self,
        degree_dims: Sequence[int],
        labels: Optional[Sequence[Sequence[str]]] = None,
        mult: Optional[Dict[Tuple[int, int, int, int], dict]] = None,
        cap: Optional[int] = None,
        name: str = "explicit",
    ):
        if not degree_dims or degree_dims[0] != 1:
            raise ValueError("degree 0 must be one-dimensional")
        self.name = name
        self.degree_dims = list(degree_dims)
        self.formal_dim = len(degree_dims) - 1
        self.cap = cap
        if labels is None:
            labels = [
                [f"b{d}_{i}" for i in range(n)] for d, n in enumerate(degree_dims)
            ]
            labels[0] = ["1"]
        self.labels = [list(l) for l in labels]
        self.mult: Dict[Tuple[int, int, int, int], dict] = {}
        for (d1, i, d2, j), coords in (mult or {}).items():
            clean = {k: v for k, v in coords.items() if v}
            if d1 > d2 or (d1 == d2 and i > j):
                # normalize to the canonical triangle via graded commutativity
                d1, i, d2, j = d2, j, d1, i
                if (d1 * d2) % 2:
                    clean = {k: -v for k, v in clean.items()}
            self.mult[(d1, i, d2, j)] = clean

    def dim(self, degree: int) -> int:
        if 0 <= degree < len(self.degree_dims):
            return self.degree_dims[degree]
        return 0

    def basis_label(self, degree: int, index: int) -> str:
        return self.labels[degree][index]

    def _pair_product(self, d1: int, i: int, d2: int, j: int) -> dict:
        if d1 < d2 or (d1 == d2 and i <= j):
            return self.mult.get((d1, i, d2, j), {})
        base = self.mult.get((d2, j, d1, i), {})
        if (d1 * d2) % 2:
            return {k: -v for k, v in base.items()}
        return base

    def _mul_terms(self, d1, t1, d2, t2):
        out: dict = {}
        for i, ci in t1.items():
            for j, cj in t2.items():
                c = ci * cj
                for k, v in self._pair_product(d1, i, d2, j).items():
                    w = out.get(k)
                    w = c * v if w is None else w + c * v
                    if w:
                        out[k] = w
                    elif k in out:
                        del out[k]
        return out

    def describe(self) -> dict:
        consts = []
        for d1, i, d2, j, coords in self.structure_constants():
            if d1 == 0 or not coords:
                continue
            consts.append(
                {
                    "degrees": [d1, d2],
                    "left": self.basis_label(d1, i),
                    "right": self.basis_label(d2, j),
                    "product": {
                        self.basis_label(d1 + d2, k): v for k, v in coords.items()
                    },
                }
            )
        spec = {
            "kind": "explicit",
            "degree_dims": self.degree_dims,
            "labels": self.labels,
            "products": consts,
        }
        if self.cap is not None:
            spec["cap"] = self.cap
        return spec


# ---------------------------------------------------------------------------
# validation


@dataclass
class AxiomResult:
    axiom: str
    passed: bool
    witness: Optional[str] = None


@dataclass
class ValidationReport:
    algebra: str
    results: List[AxiomResult] = field(default_factory=list)
    cap_notice: Optional[str] = None

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_dict(self) -> dict:
        d = {
            "algebra": self.algebra,
            "passed": self.passed,
            "axioms": [
                {"axiom": r.axiom, "passed": r.passed, "witness": r.witness}
                for r in self.results
            ],
        }
        if self.cap_notice:
            d["cap_notice"] = self.cap_notice
        return d


def validate(alg: GradedAlgebra, seed: int = 0, sample_budget: int = 4000) -> ValidationReport:
    """Check the cohomology-algebra axioms: unit, graded commutativity,
    associativity, and (full mode) perfect pairing in every degree.

    Pair/triple checks are exhaustive when the count fits in the budget and
    seeded random samples otherwise.
    """
    import random

    rng = random.Random(seed)
    report = ValidationReport(algebra=alg.name)
    res = report.results

    if alg.dim(0) == 1:
        res.append(AxiomResult("degree-0 generated by unit", True))
    else:
        res.append(
            AxiomResult("degree-0 generated by unit", False, f"dim A^0 = {alg.dim(0)}")
        )
        return report

    unit = alg.unit()
    unit_ok = True
    for d in alg.degrees():
        n = alg.dim(d)
        indices = range(n) if n <= 100 else [rng.randrange(n) for _ in range(100)]
        for i in indices:
            x = alg.basis_element(d, i)
            if alg.mul(unit, x) != x or alg.mul(x, unit) != x:
                unit_ok = False
                res.append(AxiomResult("unit acts as identity", False, f"degree {d} index {i}"))
                break
        if not unit_ok:
            break
    if unit_ok:
        res.append(AxiomResult("unit acts as identity", True))

    # graded commutativity on basis pairs
    pairs = [
        (d1, d2)
        for d1 in alg.degrees()
        for d2 in alg.degrees()
        if 0 < d1 <= d2 and d1 + d2 <= alg.max_degree
    ]
    total_pairs = sum(alg.dim(d1) * alg.dim(d2) for d1, d2 in pairs)
    comm_ok, comm_witness = True, None
    if total_pairs <= sample_budget:
        iterator = (
            (d1, i, d2, j)
            for d1, d2 in pairs
            for i in range(alg.dim(d1))
            for j in range(alg.dim(d2))
        )
    else:
        def sample_pairs():
            for _ in range(sample_budget):
                d1, d2 = rng.choice(pairs)
                yield d1, rng.randrange(alg.dim(d1)), d2, rng.randrange(alg.dim(d2))
        iterator = sample_pairs()
    for d1, i, d2, j in iterator:
        x, y = alg.basis_element(d1, i), alg.basis_element(d2, j)
        rhs = alg.mul(y, x)
        if (d1 * d2) % 2:
            rhs = -rhs
        if alg.mul(x, y) != rhs:
            comm_ok, comm_witness = False, f"({d1},{i}) x ({d2},{j})"
            break
    res.append(AxiomResult("graded commutativity", comm_ok, comm_witness))

    # associativity on basis triples
    triples = [
        (d1, d2, d3)
        for d1 in alg.degrees()
        for d2 in alg.degrees()
        for d3 in alg.degrees()
        if d1 and d2 and d3 and d1 + d2 + d3 <= alg.max_degree
    ]
    total_triples = sum(alg.dim(a) * alg.dim(b) * alg.dim(c) for a, b, c in triples)
    assoc_ok, assoc_witness = True, None
    if total_triples <= sample_budget:
        it3 = (
            (da, i, db, j, dc, k)
            for da, db, dc in triples
            for i in range(alg.dim(da))
            for j in range(alg.dim(db))
            for k in range(alg.dim(dc))
        )
    else:
        def sample_triples():
            for _ in range(sample_budget):
                da, db, dc = rng.choice(triples)
                yield (
                    da, rng.randrange(alg.dim(da)),
                    db, rng.randrange(alg.dim(db)),
                    dc, rng.randrange(alg.dim(dc)),
                )
        it3 = sample_triples()
    for da, i, db, j, dc, k in it3:
        x = alg.basis_element(da, i)
        y = alg.basis_element(db, j)
        z = alg.basis_element(dc, k)
        if alg.mul(alg.mul(x, y), z) != alg.mul(x, alg.mul(y, z)):
            assoc_ok, assoc_witness = False, f"({da},{i})({db},{j})({dc},{k})"
            break
    res.append(AxiomResult("associativity", assoc_ok, assoc_witness))

    if alg.is_full:
        m = alg.formal_dim
        if alg.dim(m) != 1:
            res.append(AxiomResult("top degree rank 1", False, f"dim A^{m} = {alg.dim(m)}"))
            return report
        res.append(AxiomResult("top degree rank 1", True))
        pairing_ok, witness = True, None
        skipped = []
        for k in range(m + 1):
            if alg.dim(k) != alg.dim(m - k):
                pairing_ok, witness = False, f"dim A^{k} != dim A^{m-k}"
                break
            if alg.dim(k) > 2000:
                skipped.append(k)
                continue
            if alg.dim(k) and rank(alg.pairing_matrix(k)) != alg.dim(k):
                pairing_ok, witness = False, f"degenerate pairing in degree {k}"
                break
        res.append(AxiomResult("perfect pairing", pairing_ok, witness))
        if skipped:
            report.cap_notice = (
                f"pairing not materialized in degrees {skipped} (dimension above 2000)"
            )
    else:
        report.cap_notice = (
            f"truncated at degree {alg.cap}: duality axioms not checked above the cap"
        )
    return report


# ---------------------------------------------------------------------------
# free functions mirroring the operation names used across the package


def mul(x: Element, y: Element) -> Element:
    return x.algebra.mul(x, y)


def power(x: Element, k: int) -> Element:
    return x.algebra.power(x, k)


def elements_matrix(elements: Sequence[Element]) -> Matrix:
    """Rows = coordinate vectors of the given same-degree elements."""
    if not elements:
        raise ValueError("no elements")
    alg, deg = elements[0].algebra, elements[0].degree
    return Matrix.from_sparse_rows([e.coords for e in elements], alg.dim(deg))
