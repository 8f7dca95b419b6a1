"""Constructors for the algebras the checkers run on.

- exterior_algebra(2n): model of a torus, bitmask monomials, lazy products.
- truncated_polynomial(N): model of projective N-space.
- tensor_product(A, B): Koszul-signed product algebra (model of X x Y).
- projective_bundle(base, r, chern): total algebra of a P^(r-1) bundle with
  pullback and Gysin maps, h-power reduction by the defining relation.
- blowup(...): blow-up along a center with a verified restriction map; three
  product rules plus lazy h-power reduction through the normal Chern data.

Exterior and tensor algebras never materialize structure constants, so the
same code paths drive both the 6-generator desk cases and the 24-generator
computations.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from hodgecheck import _kernels
from hodgecheck.algebra import (
    AlgebraMap,
    Element,
    GradedAlgebra,
    InsufficientDataError,
    MixedElement,
    ONE,
    ZERO,
)
from hodgecheck.linalg import Matrix, solve

# ---------------------------------------------------------------------------
# subset ranking (lexicographic on ascending index tuples)


def subset_rank(n: int, positions: Sequence[int]) -> int:
    k = len(positions)
    r = 0
    prev = -1
    for i, p in enumerate(positions):
        for v in range(prev + 1, p):
            r += comb(n - 1 - v, k - 1 - i)
        prev = p
    return r


def subset_unrank(n: int, k: int, r: int) -> list:
    positions = []
    v = 0
    for i in range(k):
        while True:
            c = comb(n - 1 - v, k - 1 - i)
            if r < c:
                positions.append(v)
                v += 1
                break
            r -= c
            v += 1
    return positions


def mask_positions(mask: int) -> list:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class ExteriorAlgebra(GradedAlgebra):
    """Exterior algebra on n degree-1 generators; monomials are bitmasks."""

    _TABLE_LIMIT = 20_000

    def __init__(self, n: int, gen_prefix: str = "w", name: Optional[str] = None):
        self.n = n
        self.formal_dim = n
        self.cap = None
        self.gen_prefix = gen_prefix
        self.name = name or f"exterior({n})"
        self._mask_tables: Dict[int, Tuple[list, dict]] = {}

    def dim(self, degree: int) -> int:
        if 0 <= degree <= self.n:
            return comb(self.n, degree)
        return 0

    def _tables(self, degree: int):
        if degree not in self._mask_tables:
            if self.dim(degree) > self._TABLE_LIMIT:
                self._mask_tables[degree] = None
            else:
                masks = []
                for pos in itertools.combinations(range(self.n), degree):
                    m = 0
                    for p in pos:
                        m |= 1 << p
                    masks.append(m)
                self._mask_tables[degree] = (masks, {m: i for i, m in enumerate(masks)})
        return self._mask_tables[degree]

    def mask_of_index(self, degree: int, index: int) -> int:
        t = self._tables(degree)
        if t is not None:
            return t[0][index]
        m = 0
        for p in subset_unrank(self.n, degree, index):
            m |= 1 << p
        return m

    def index_of_mask(self, mask: int) -> int:
        degree = mask.bit_count()
        t = self._tables(degree)
        if t is not None:
            return t[1][mask]
        return subset_rank(self.n, mask_positions(mask))

    def basis_label(self, degree: int, index: int) -> str:
        if degree == 0:
            return "1"
        pos = mask_positions(self.mask_of_index(degree, index))
        return "^".join(f"{self.gen_prefix}{p + 1}" for p in pos)

    def generator(self, i: int) -> Element:
        """The i-th degree-1 generator (1-based to match labels)."""
        return self.basis_element(1, self.index_of_mask(1 << (i - 1)))

    def monomial(self, positions: Sequence[int]) -> Element:
        """Basis monomial from 1-based generator indices, with wedge sign."""
        sign = ONE
        mask = 0
        pos0 = [p - 1 for p in positions]
        seen: list = []
        for p in pos0:
            if mask & (1 << p):
                return self.zero(len(pos0))
            below = sum(1 for q in seen if q > p)
            if below % 2:
                sign = -sign
            seen.append(p)
            mask |= 1 << p
        return self.element(len(pos0), {self.index_of_mask(mask): sign})

    def _mul_terms(self, d1, t1, d2, t2):
        d = d1 + d2
        a = [(self.mask_of_index(d1, i), c) for i, c in t1.items()]
        full = (1 << self.n) - 1
        acc: dict = {}
        if d == self.n:
            # top-degree products pair each monomial with its complement
            bm = {self.mask_of_index(d2, j): c for j, c in t2.items()}
            top = ZERO
            for ma, ca in a:
                cb = bm.get(full ^ ma)
                if cb is None:
                    continue
                c = ca * cb
                if _kernels.inversion_parity(ma, full ^ ma):
                    c = -c
                top = top + c
            if top:
                acc[full] = top
        else:
            b = [(self.mask_of_index(d2, j), c) for j, c in t2.items()]
            if len(a) > len(b):
                a, b = b, a
                if (d1 * d2) % 2:
                    a = [(m, -c) for m, c in a]
            _kernels.wedge_merge(acc, a, b, True)
        return {self.index_of_mask(m): c for m, c in acc.items()}

    def describe(self) -> dict:
        return {"kind": "exterior", "generators": self.n}


class TruncatedPolynomialAlgebra(GradedAlgebra):
    """Q[h]/(h^(N+1)) with |h| = 2: the cohomology of projective N-space."""

    def __init__(self, n: int, gen: str = "h"):
        if n < 1:
            raise ValueError("need N >= 1")
        self.n = n
        self.formal_dim = 2 * n
        self.cap = None
        self.gen = gen
        self.name = f"P^{n}"

    def dim(self, degree: int) -> int:
        return 1 if degree % 2 == 0 and 0 <= degree <= 2 * self.n else 0

    def basis_label(self, degree: int, index: int) -> str:
        e = degree // 2
        if e == 0:
            return "1"
        if e == 1:
            return self.gen
        return f"{self.gen}^{e}"

    def h(self) -> Element:
        return self.basis_element(2, 0)

    def _mul_terms(self, d1, t1, d2, t2):
        if (d1 + d2) // 2 > self.n:
            return {}
        c = t1.get(0, ZERO) * t2.get(0, ZERO)
        return {0: c} if c else {}

    def describe(self) -> dict:
        return {"kind": "truncated_poly", "n": self.n}


class TensorAlgebra(GradedAlgebra):
    """Koszul-signed tensor product of two full-mode algebras.

    Basis of degree d: blocks (da, ia, ib) ordered by da, then ia, then ib.
    Products reduce to factor products with the sign (-1)^(|b1||a2|).
    """

    def __init__(self, left: GradedAlgebra, right: GradedAlgebra):
        if not (left.is_full and right.is_full):
            raise ValueError("tensor factors must be full mode")
        self.left = left
        self.right = right
        self.formal_dim = left.formal_dim + right.formal_dim
        self.cap = None
        self.name = f"{left.name} (x) {right.name}"
        self._dim_cache: Dict[int, int] = {}
        self._pair_cache: Dict[tuple, dict] = {}

    def dim(self, degree: int) -> int:
        if degree < 0 or degree > self.formal_dim:
            return 0
        if degree not in self._dim_cache:
            self._dim_cache[degree] = sum(
                self.left.dim(da) * self.right.dim(degree - da)
                for da in range(degree + 1)
            )
        return self._dim_cache[degree]

    def split_index(self, degree: int, index: int) -> Tuple[int, int, int]:
        for da in range(degree + 1):
            block = self.left.dim(da) * self.right.dim(degree - da)
            if index < block:
                nb = self.right.dim(degree - da)
                return da, index // nb, index % nb
            index -= block
        raise IndexError("index out of range")

    def combine_index(self, da: int, ia: int, db: int, ib: int) -> int:
        off = sum(
            self.left.dim(d) * self.right.dim(da + db - d) for d in range(da)
        )
        return off + ia * self.right.dim(db) + ib

    def basis_label(self, degree: int, index: int) -> str:
        if degree == 0:
            return "1"
        da, ia, ib = self.split_index(degree, index)
        return (
            f"{self.left.basis_label(da, ia)}(x)"
            f"{self.right.basis_label(degree - da, ib)}"
        )

    def embed_left(self, el: Element) -> Element:
        out = {
            self.combine_index(el.degree, ia, 0, 0): c for ia, c in el.coords.items()
        }
        return self.element(el.degree, out)

    def embed_right(self, el: Element) -> Element:
        out = {
            self.combine_index(0, 0, el.degree, ib): c for ib, c in el.coords.items()
        }
        return self.element(el.degree, out)

    def left_factor_part(self, el: Element) -> Element:
        """Component in A^d (x) 1, as an element of the left factor."""
        out = {}
        for idx, c in el.coords.items():
            da, ia, ib = self.split_index(el.degree, idx)
            if da == el.degree and ib == 0:
                out[ia] = c
        return self.left.element(el.degree, out)

    def right_factor_part(self, el: Element) -> Element:
        out = {}
        for idx, c in el.coords.items():
            da, ia, ib = self.split_index(el.degree, idx)
            if da == 0:
                out[ib] = c
        return self.right.element(el.degree, out)

    def _factor_product(self, alg, d1, i, d2, j, tag):
        key = (tag, d1, i, d2, j)
        if key not in self._pair_cache:
            p = alg.mul(alg.basis_element(d1, i), alg.basis_element(d2, j))
            self._pair_cache[key] = p.coords
        return self._pair_cache[key]

    def _mul_terms(self, d1, t1, d2, t2):
        out: dict = {}
        for idx1, c1 in t1.items():
            da1, ia1, ib1 = self.split_index(d1, idx1)
            db1 = d1 - da1
            for idx2, c2 in t2.items():
                da2, ia2, ib2 = self.split_index(d2, idx2)
                db2 = d2 - da2
                if da1 + da2 > self.left.formal_dim or db1 + db2 > self.right.formal_dim:
                    continue
                c = c1 * c2
                if (db1 * da2) % 2:
                    c = -c
                pa = self._factor_product(self.left, da1, ia1, da2, ia2, "L")
                if not pa:
                    continue
                pb = self._factor_product(self.right, db1, ib1, db2, ib2, "R")
                if not pb:
                    continue
                for ka, va in pa.items():
                    for kb, vb in pb.items():
                        k = self.combine_index(da1 + da2, ka, db1 + db2, kb)
                        v = out.get(k)
                        w = c * va * vb
                        v = w if v is None else v + w
                        if v:
                            out[k] = v
                        elif k in out:
                            del out[k]
        return out

    def describe(self) -> dict:
        return {
            "kind": "tensor",
            "left": self.left.describe(),
            "right": self.right.describe(),
        }


# ---------------------------------------------------------------------------
# projective bundles


class BundleTotalAlgebra(GradedAlgebra):
    """Total algebra of P(E) -> base: basis h^i . (base basis), 0 <= i < r,
    with h^r = -sum_i pi*c_i . h^(r-i)."""

    def __init__(self, base: GradedAlgebra, r: int, chern: Dict[int, Element]):
        if r < 2:
            raise ValueError("bundle rank must be >= 2")
        self.base = base
        self.r = r
        self.chern = chern  # i -> base element of degree 2i (absent = zero)
        self.formal_dim = base.formal_dim + 2 * (r - 1)
        self.cap = None
        self.name = f"P(E{r})/{base.name}"
        self._rep_cache: Dict[int, Dict[int, Element]] = {}

    def dim(self, degree: int) -> int:
        return sum(
            self.base.dim(degree - 2 * i)
            for i in range(self.r)
            if 0 <= degree - 2 * i
        )

    def _level_offset(self, degree: int, level: int) -> int:
        return sum(
            self.base.dim(degree - 2 * i) for i in range(level) if 0 <= degree - 2 * i
        )

    def split_index(self, degree: int, index: int) -> Tuple[int, int]:
        for lvl in range(self.r):
            bd = degree - 2 * lvl
            block = self.base.dim(bd) if bd >= 0 else 0
            if index < block:
                return lvl, index
            index -= block
        raise IndexError("index out of range")

    def combine_index(self, degree: int, level: int, base_index: int) -> int:
        return self._level_offset(degree, level) + base_index

    def basis_label(self, degree: int, index: int) -> str:
        lvl, bi = self.split_index(degree, index)
        base_label = self.base.basis_label(degree - 2 * lvl, bi)
        if lvl == 0:
            return base_label
        h = "h" if lvl == 1 else f"h^{lvl}"
        return h if base_label == "1" else f"{h}·{base_label}"

    def h(self) -> Element:
        return self.element(2, {self.combine_index(2, 1, 0): ONE})

    def pullback_element(self, el: Element) -> Element:
        out = {self.combine_index(el.degree, 0, i): c for i, c in el.coords.items()}
        return self.element(el.degree, out)

    def level_part(self, el: Element, level: int) -> Element:
        """Base-coefficient of h^level in el."""
        out = {}
        for idx, c in el.coords.items():
            lvl, bi = self.split_index(el.degree, idx)
            if lvl == level:
                out[bi] = c
        return self.base.element(el.degree - 2 * level, out)

    def _reduction(self, t: int) -> Dict[int, Element]:
        """h^t as sum over levels < r of base-class coefficients."""
        if t < self.r:
            return {t: self.base.unit()}
        if t not in self._rep_cache:
            acc: Dict[int, Element] = {}
            for i in range(1, self.r + 1):
                ci = self.chern.get(i)
                if ci is None or not ci:
                    continue
                for lvl, coeff in self._reduction(t - i).items():
                    add = self.base.mul(ci, coeff).scale(Fraction(-1))
                    if not add:
                        continue
                    cur = acc.get(lvl)
                    acc[lvl] = add if cur is None else cur + add
            self._rep_cache[t] = {lvl: el for lvl, el in acc.items() if el}
        return self._rep_cache[t]

    def _mul_terms(self, d1, t1, d2, t2):
        # group by level, multiply base parts, then reduce h powers
        def by_level(d, terms):
            parts: Dict[int, dict] = {}
            for idx, c in terms.items():
                lvl, bi = self.split_index(d, idx)
                parts.setdefault(lvl, {})[bi] = c
            return parts

        p1, p2 = by_level(d1, t1), by_level(d2, t2)
        d = d1 + d2
        out: dict = {}
        for l1, b1 in p1.items():
            x = self.base.element(d1 - 2 * l1, b1)
            for l2, b2 in p2.items():
                y = self.base.element(d2 - 2 * l2, b2)
                z = self.base.mul(x, y)
                if not z:
                    continue
                for lvl, coeff in self._reduction(l1 + l2).items():
                    w = self.base.mul(z, coeff)
                    for bi, c in w.coords.items():
                        k = self.combine_index(d, lvl, bi)
                        v = out.get(k)
                        v = c if v is None else v + c
                        if v:
                            out[k] = v
                        elif k in out:
                            del out[k]
        return out

    def describe(self) -> dict:
        from hodgecheck.reports import element_to_json

        return {
            "kind": "projective_bundle",
            "rank": self.r,
            "base": self.base.describe(),
            "chern": {
                str(2 * i): element_to_json(el) for i, el in sorted(self.chern.items())
            },
        }


class ProjectiveBundleAlgebra:
    """Bundle model: total algebra plus the pullback and Gysin maps."""

    def __init__(self, base: GradedAlgebra, r: int, chern: MixedElement):
        chern_map: Dict[int, Element] = {}
        for d, el in chern.parts.items():
            if d % 2 or d <= 0:
                raise ValueError("Chern components live in positive even degrees")
            if d > base.formal_dim:
                raise ValueError(f"Chern class of degree {d} exceeds the base dimension")
            chern_map[d // 2] = el
        if any(i > r for i in chern_map):
            raise ValueError("Chern data beyond the bundle rank")
        self.base = base
        self.r = r
        self.chern = chern
        self.total = BundleTotalAlgebra(base, r, chern_map)
        self.pullback = AlgebraMap(
            base, self.total, apply_fn=self.total.pullback_element,
            ring_hom=True, name="pullback",
        )
        self.gysin = AlgebraMap(
            self.total, base, shift=-2 * (r - 1),
            apply_fn=lambda el: self.total.level_part(el, r - 1),
            name="gysin",
        )

    @property
    def h(self) -> Element:
        return self.total.h()


def projective_bundle(base: GradedAlgebra, r: int, chern: MixedElement) -> ProjectiveBundleAlgebra:
    return ProjectiveBundleAlgebra(base, r, chern)


def segre_classes(pb: ProjectiveBundleAlgebra, j_max: int) -> MixedElement:
    """sigma_j = gysin(h^(r-1+j)); sigma_0 = 1, inverse of the total Chern class."""
    parts: Dict[int, Element] = {0: pb.base.unit()}
    h = pb.h
    power = pb.total.power(h, pb.r - 1)
    for j in range(1, j_max + 1):
        power = pb.total.mul(power, h)
        sj = pb.gysin.apply(power)
        if sj:
            parts[2 * j] = sj
    return MixedElement(pb.base, parts)


def chern_from_segre(base: GradedAlgebra, segre: MixedElement, j_max: int) -> MixedElement:
    """Invert the total Segre class: c_j = -sum_{i=1..j} s_i c_{j-i}."""
    c: Dict[int, Element] = {0: base.unit()}
    for j in range(1, j_max + 1):
        acc = base.zero(2 * j)
        for i in range(1, j + 1):
            si = segre.parts.get(2 * i)
            cji = c.get(j - i)
            if si is None or cji is None or not cji:
                continue
            acc = acc + base.mul(si, cji)
        c[j] = -acc
    return MixedElement(base, {2 * j: el for j, el in c.items() if j > 0 and el})


# ---------------------------------------------------------------------------
# blow-ups


class BlowupTotalAlgebra(GradedAlgebra):
    """Blow-up of `ambient` along `center` with restriction map r.

    Additive basis per degree: ambient classes, then j_*(h^lvl . center
    classes) for 0 <= lvl <= c-2 (j_* raises degree by 2).  Products follow
    the three standard rules; h-powers at or above c reduce through the
    normal-bundle Chern classes, and the top exceptional level c-1 rewrites
    into ambient classes via the center-to-ambient Gysin map (derived from
    the restriction by Poincare duality).  Unspecified Chern data only
    raises when a product actually needs it.
    """

    def __init__(
        self,
        ambient: GradedAlgebra,
        center: GradedAlgebra,
        restriction: AlgebraMap,
        c: int,
        normal_chern: Dict[int, Optional[Element]],
        cap: Optional[int],
    ):
        self.ambient = ambient
        self.center = center
        self.restriction = restriction
        self.c = c
        self.normal_chern = normal_chern
        self.formal_dim = ambient.formal_dim
        self.cap = cap
        self.name = f"Bl({center.name} in {ambient.name})"
        self._istar_cache: Dict[tuple, Element] = {}

    def dim(self, degree: int) -> int:
        total = self.ambient.dim(degree)
        for lvl in range(self.c - 1):
            d = degree - 2 - 2 * lvl
            if d >= 0:
                total += self.center.dim(d)
        return total

    def split_index(self, degree: int, index: int) -> Tuple[str, int, int]:
        na = self.ambient.dim(degree)
        if index < na:
            return ("amb", 0, index)
        index -= na
        for lvl in range(self.c - 1):
            d = degree - 2 - 2 * lvl
            block = self.center.dim(d) if d >= 0 else 0
            if index < block:
                return ("exc", lvl, index)
            index -= block
        raise IndexError("index out of range")

    def amb_index(self, degree: int, i: int) -> int:
        return i

    def exc_index(self, degree: int, lvl: int, i: int) -> int:
        off = self.ambient.dim(degree)
        for l in range(lvl):
            d = degree - 2 - 2 * l
            if d >= 0:
                off += self.center.dim(d)
        return off + i

    def basis_label(self, degree: int, index: int) -> str:
        kind, lvl, i = self.split_index(degree, index)
        if kind == "amb":
            lab = self.ambient.basis_label(degree, i)
            return lab if lab == "1" else f"t·{lab}"
        base_label = self.center.basis_label(degree - 2 - 2 * lvl, i)
        h = "" if lvl == 0 else ("h·" if lvl == 1 else f"h^{lvl}·")
        inner = h + base_label if base_label != "1" else (h[:-1] if h else "1")
        return f"j[{inner}]"

    # -- element conversion helpers ------------------------------------------

    def tau_element(self, el: Element) -> Element:
        return self.element(el.degree, dict(el.coords))

    def ambient_part(self, el: Element) -> Element:
        out = {}
        for idx, c in el.coords.items():
            kind, lvl, i = self.split_index(el.degree, idx)
            if kind == "amb":
                out[i] = c
        return self.ambient.element(el.degree, out)

    def exc_part(self, el: Element, level: int) -> Element:
        out = {}
        for idx, c in el.coords.items():
            kind, lvl, i = self.split_index(el.degree, idx)
            if kind == "exc" and lvl == level:
                out[i] = c
        return self.center.element(el.degree - 2 - 2 * level, out)

    def j_push(self, level: int, z: Element) -> Element:
        """j_*(h^level . z) as a total-algebra element (reducing the level)."""
        if z.algebra is not self.center:
            raise ValueError("z must live in the center algebra")
        deg = z.degree + 2 + 2 * level
        if self.cap is not None and deg > self.cap:
            return self.zero(deg)
        amb_acc, exc_acc = self._normalize_level(level, z)
        out: dict = {}
        for i, c in amb_acc.coords.items():
            out[self.amb_index(deg, i)] = c
        for lvl, el in exc_acc.items():
            for i, c in el.coords.items():
                k = self.exc_index(deg, lvl, i)
                v = out.get(k)
                v = c if v is None else v + c
                if v:
                    out[k] = v
                elif k in out:
                    del out[k]
        return self.element(deg, out)

    def exceptional_class(self) -> Element:
        """e = j_*(1), the degree-2 class of the exceptional divisor."""
        return self.j_push(0, self.center.unit())

    # -- product rules -----------------------------------------------------------

    def _chern_times(self, i: int, z: Element) -> Optional[Element]:
        """c_i(N) . z, or None when it vanishes for degree reasons."""
        if 2 * i + z.degree > self.center.formal_dim or not z:
            return None
        ci = self.normal_chern.get(i)
        if ci is None:
            raise InsufficientDataError(
                f"normal Chern class c_{i} (degree {2 * i}) is unspecified "
                f"but needed against a degree-{z.degree} center class"
            )
        out = self.center.mul(ci, z)
        return out if out else None

    def _normalize_level(self, level: int, z: Element):
        """Rewrite (level, z) into ambient part + levels <= c-2."""
        ambient_acc = self.ambient.zero(z.degree + 2 + 2 * level)
        exc_acc: Dict[int, Element] = {}
        if not z:
            return ambient_acc, exc_acc
        if level <= self.c - 2:
            if z.degree <= self.center.formal_dim:
                exc_acc[level] = z
            return ambient_acc, exc_acc
        if level >= self.c:
            # h^level = -sum_{i=1..c} c_i(N) h^(level-i)
            for i in range(1, self.c + 1):
                w = self._chern_times(i, z)
                if w is None:
                    continue
                amb, exc = self._normalize_level(level - i, -w)
                ambient_acc = ambient_acc + amb
                for lvl, el in exc.items():
                    cur = exc_acc.get(lvl)
                    exc_acc[lvl] = el if cur is None else cur + el
            return ambient_acc, {l: e for l, e in exc_acc.items() if e}
        # level == c-1: j_*(h^(c-1) z) = tau(i_* z) - sum_i j_*(c_i z h^(c-1-i))
        ambient_acc = ambient_acc + self._i_star(z)
        for i in range(1, self.c):
            w = self._chern_times(i, z)
            if w is None:
                continue
            amb, exc = self._normalize_level(self.c - 1 - i, -w)
            ambient_acc = ambient_acc + amb
            for lvl, el in exc.items():
                cur = exc_acc.get(lvl)
                exc_acc[lvl] = el if cur is None else cur + el
        return ambient_acc, {l: e for l, e in exc_acc.items() if e}

    def _i_star(self, z: Element) -> Element:
        """Center-to-ambient Gysin map via Poincare duality against r."""
        if not self.ambient.is_full:
            raise InsufficientDataError(
                "level c-1 rewrite needs a full-mode ambient algebra"
            )
        target_deg = z.degree + 2 * self.c
        if target_deg > self.ambient.formal_dim:
            return self.ambient.zero(target_deg)
        key = ("pairing", target_deg)
        if key not in self._istar_cache:
            self._istar_cache[key] = self.ambient.pairing_matrix(target_deg)
        pairing = self._istar_cache[key]
        comp_deg = self.ambient.formal_dim - target_deg
        b = []
        for t in range(self.ambient.dim(comp_deg)):
            gamma = self.ambient.basis_element(comp_deg, t)
            b.append(self.center.trace(self.center.mul(z, self.restriction.apply(gamma))))
        x = solve(pairing.transpose(), b)
        if x is None:
            raise ArithmeticError("ambient pairing failed to invert (not perfect?)")
        return self.ambient.element(target_deg, {i: v for i, v in enumerate(x) if v})

    def _mul_terms(self, d1, t1, d2, t2):
        x_amb = self.ambient_part(self.element(d1, dict(t1)))
        y_amb = self.ambient_part(self.element(d2, dict(t2)))
        x_exc = {
            lvl: self.exc_part(self.element(d1, dict(t1)), lvl)
            for lvl in range(self.c - 1)
            if d1 - 2 - 2 * lvl >= 0
        }
        y_exc = {
            lvl: self.exc_part(self.element(d2, dict(t2)), lvl)
            for lvl in range(self.c - 1)
            if d2 - 2 - 2 * lvl >= 0
        }
        x_exc = {l: e for l, e in x_exc.items() if e}
        y_exc = {l: e for l, e in y_exc.items() if e}
        d = d1 + d2
        total = self.zero(d)
        # tau . tau
        amb = self.ambient.mul(x_amb, y_amb)
        if amb:
            total = total + self.element(d, {self.amb_index(d, i): c for i, c in amb.coords.items()})
        # tau . j_* and j_* . tau  (projection formula)
        rx = self.restriction.apply(x_amb) if x_amb else None
        ry = self.restriction.apply(y_amb) if y_amb else None
        for lvl, z in y_exc.items():
            if rx is not None and rx:
                total = total + self.j_push(lvl, self.center.mul(rx, z))
        for lvl, z in x_exc.items():
            if ry is not None and ry:
                # j_*(h^lvl z) . tau(g) = (-1)^(|jz| |g|) j_*(h^lvl . r(g) z)
                pushed = self.j_push(lvl, self.center.mul(ry, z))
                if (z.degree * d2) % 2:
                    pushed = pushed.scale(-ONE)
                total = total + pushed
        # j_* . j_*: j_*(x) j_*(y) = -j_*(h . x . y)
        for l1, z1 in x_exc.items():
            for l2, z2 in y_exc.items():
                prod = self.center.mul(z1, z2)
                if prod:
                    total = total + self.j_push(l1 + l2 + 1, prod).scale(-ONE)
        return total.coords

    def describe(self) -> dict:
        from hodgecheck.reports import algebra_map_to_json, element_to_json

        spec = {
            "kind": "blowup",
            "ambient": self.ambient.describe(),
            "center": self.center.describe(),
            "restriction": algebra_map_to_json(self.restriction),
            "codim": self.c,
            "normal_chern": {
                str(i): (element_to_json(el) if el is not None else None)
                for i, el in sorted(self.normal_chern.items())
            },
        }
        if self.cap is not None:
            spec["cap"] = self.cap
        return spec


class BlowupAlgebra:
    """Blow-up model: total algebra plus tau^*, j_* and the class e."""

    def __init__(
        self,
        ambient: GradedAlgebra,
        center: GradedAlgebra,
        restriction: AlgebraMap,
        c: int,
        normal_chern: Optional[Dict[int, Optional[Element]]] = None,
        cap: Optional[int] = None,
    ):
        if c < 2:
            raise ValueError("codimension must be >= 2")
        if center.formal_dim + 2 * c != ambient.formal_dim:
            raise ValueError(
                f"dim center ({center.formal_dim}) + 2c ({2 * c}) must equal "
                f"dim ambient ({ambient.formal_dim})"
            )
        if restriction.source is not ambient or restriction.target is not center:
            raise ValueError("restriction must map ambient -> center")
        witness = restriction.verify_ring_hom(max_degree=center.formal_dim)
        if witness is not None:
            raise ValueError(f"restriction is not a ring homomorphism at {witness}")
        self.ambient = ambient
        self.center = center
        self.restriction = restriction
        self.c = c
        self.normal_chern = dict(normal_chern or {})
        self.cap = cap
        self.total = BlowupTotalAlgebra(
            ambient, center, restriction, c, self.normal_chern, cap
        )
        self.tau = AlgebraMap(
            ambient, self.total, apply_fn=self.total.tau_element, ring_hom=True, name="tau"
        )

    def j_push(self, level: int, z: Element) -> Element:
        return self.total.j_push(level, z)

    @property
    def e(self) -> Element:
        return self.total.exceptional_class()


def exterior_algebra(generator_count: int) -> ExteriorAlgebra:
    """Exterior algebra on the given number of degree-1 generators."""
    return ExteriorAlgebra(generator_count)


def truncated_polynomial(n: int) -> TruncatedPolynomialAlgebra:
    return TruncatedPolynomialAlgebra(n)


def tensor_product(left: GradedAlgebra, right: GradedAlgebra) -> TensorAlgebra:
    return TensorAlgebra(left, right)


def blowup(
    ambient: GradedAlgebra,
    center: GradedAlgebra,
    restriction: AlgebraMap,
    c: int,
    normal_chern: Optional[Dict[int, Optional[Element]]] = None,
    cap: Optional[int] = None,
) -> BlowupAlgebra:
    return BlowupAlgebra(ambient, center, restriction, c, normal_chern, cap)


def projective_space_product(ns: Sequence[int]) -> GradedAlgebra:
    """(P^n1) x (P^n2) x ... as a left-associated tensor algebra."""
    algs = [truncated_polynomial(n) for n in ns]
    out = algs[0]
    for a in algs[1:]:
        out = tensor_product(out, a)
    return out


def algebra_map_from_generator_images(
    source: GradedAlgebra,
    target: GradedAlgebra,
    images: Dict[Tuple[int, int], Element],
    name: str = "restriction",
) -> AlgebraMap:
    """Multiplicative extension of generator images to every degree.

    `images` sends (degree, basis index) of a chosen generating set to target
    elements; every source basis element must be expressible as a product of
    generators (checked degree by degree by solving in the source algebra).
    Raises when the images are inconsistent with the source relations.
    """
    matrices: Dict[int, Matrix] = {}
    known: Dict[Tuple[int, int], Element] = {}
    matrices[0] = Matrix.identity(1)
    known[(0, 0)] = target.unit()
    for (d, i), img in images.items():
        if img.degree != d:
            raise ValueError("generator image degree mismatch")
        known[(d, i)] = img
    for d in range(1, source.max_degree + 1):
        rows = []
        for i in range(source.dim(d)):
            el = known.get((d, i))
            if el is None:
                el = _express_by_products(source, target, d, i, known)
                known[(d, i)] = el
            rows.append({k: v for k, v in el.coords.items()})
        matrices[d] = Matrix.from_sparse_rows(rows, target.dim(d) if d <= target.max_degree else 0)
    return AlgebraMap(source, target, matrices=matrices, ring_hom=True, name=name)


def _express_by_products(source, target, d, i, known) -> Element:
    """Write basis element (d, i) as a combination of products of lower
    known elements and push the combination through the images."""
    target_deg_dim = target.dim(d) if d <= target.max_degree else 0
    if target_deg_dim == 0:
        return target.element(d, {})
    products = []
    images = []
    for d1 in range(1, d):
        d2 = d - d1
        if d1 > d2:
            break
        for a in range(source.dim(d1)):
            if (d1, a) not in known:
                continue
            for b in range(source.dim(d2)):
                if (d2, b) not in known:
                    continue
                p = source.mul(source.basis_element(d1, a), source.basis_element(d2, b))
                if p:
                    products.append(p.coords)
                    images.append(
                        target.mul(known[(d1, a)], known[(d2, b)])
                    )
    if not products:
        raise ValueError(f"degree {d} not generated by given generators")
    m = Matrix.from_sparse_rows(products, source.dim(d)).transpose()
    b = [ONE if j == i else ZERO for j in range(source.dim(d))]
    x = solve(m, b)
    if x is None:
        raise ValueError(f"basis element ({d},{i}) not generated by given generators")
    acc = target.zero(d)
    for coeff, img in zip(x, images):
        if coeff:
            acc = acc + img.scale(coeff)
    return acc
