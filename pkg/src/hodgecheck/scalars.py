"""Exact scalars: rationals and Gaussian rationals.

Rationals are plain fractions.Fraction (already reduced, positive
denominator).  GaussRational adds the imaginary unit needed for complexified
cohomology; conjugation is the field automorphism a+bi -> a-bi.

Scalars cross file boundaries as strings "p/q" and "p/q+r/s i" so that
arbitrary precision survives serialization; parse_scalar/format_scalar are
the single source of truth for that format.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

Rational = Fraction


class GaussRational:
    """Element a + b*i of Q(i), with exact Fraction parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussRational is immutable")

    # -- ring/field structure -------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussRational(other.re - self.re, other.im - self.im)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = other.re * other.re + other.im * other.im
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussRational(
            (self.re * other.re + self.im * other.im) / n,
            (self.im * other.re - self.re * other.im) / n,
        )

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __neg__(self):
        return GaussRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self) -> "GaussRational":
        return GaussRational(self.re, -self.im)

    def norm(self) -> Fraction:
        """Field norm a^2 + b^2 (a nonnegative rational)."""
        return self.re * self.re + self.im * self.im

    # -- predicates -----------------------------------------------------------

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussRational({self.re!r}, {self.im!r})"

    def __str__(self):
        return format_scalar(self)


def _coerce(x):
    if isinstance(x, GaussRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussRational(x)
    return NotImplemented


I = GaussRational(0, 1)

Scalar = Union[Fraction, GaussRational]


def i_power(k: int) -> GaussRational:
    """i**k for any integer k (negative exponents included)."""
    k %= 4
    return (GaussRational(1), I, GaussRational(-1), GaussRational(0, -1))[k]


def conj(x: Scalar) -> Scalar:
    return x.conjugate() if isinstance(x, GaussRational) else x


def as_gauss(x: Scalar) -> GaussRational:
    return x if isinstance(x, GaussRational) else GaussRational(x)


def simplify_scalar(x: Scalar) -> Scalar:
    """Demote real Gaussian rationals to plain fractions."""
    if isinstance(x, GaussRational) and x.im == 0:
        return x.re
    return x


_SCALAR_RE = re.compile(
    r"""^\s*(?P<re>[+-]?\d+(?:/\d+)?)?\s*
        (?:(?P<sign>[+-])?\s*(?P<im>\d+(?:/\d+)?)?\s*i)?\s*$""",
    re.VERBOSE,
)


def parse_scalar(text: str) -> Scalar:
    """Parse "p/q" into a Fraction, "p/q+r/s i" (or "i", "-i", "3i") into Q(i)."""
    if not isinstance(text, str):
        raise ValueError(f"scalar must be a string, got {type(text).__name__}")
    has_i = text.rstrip().endswith("i")
    m = _SCALAR_RE.match(text)
    if not m or (m.group("re") is None and not has_i):
        raise ValueError(f"cannot parse scalar {text!r}")
    if not has_i:
        return Fraction(m.group("re"))
    re_part = Fraction(m.group("re")) if m.group("re") is not None else Fraction(0)
    im_txt = m.group("im")
    if im_txt is None and m.group("re") is not None and m.group("sign") is None:
        # "3/4i" parses with re=3/4: the whole numeric part is imaginary
        re_part, im_part = Fraction(0), Fraction(m.group("re"))
    else:
        im_part = Fraction(im_txt) if im_txt is not None else Fraction(1)
    if m.group("sign") == "-":
        im_part = -im_part
    return GaussRational(re_part, im_part)


def format_scalar(x: Scalar) -> str:
    """Canonical textual form: "p/q", or "p/q+r/s i" when imaginary part is nonzero."""
    if isinstance(x, GaussRational):
        if x.im == 0:
            return _frac_str(x.re)
        sign = "+" if x.im > 0 else "-"
        return f"{_frac_str(x.re)}{sign}{_frac_str(abs(x.im))} i"
    return _frac_str(Fraction(x))


def _frac_str(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"
