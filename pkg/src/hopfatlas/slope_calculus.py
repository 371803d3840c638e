"""Slopes on the torus, SL(2,Z) normalisation and negative continued fractions.

A slope is a primitive integer vector ``(x, y)`` standing for the curve
``x*mu0 + y*lambda0``; its value is ``y/x``. The count of tight, minimally
twisting contact structures on ``T^2 x [0,1]`` is obtained by moving the lower
boundary slope to ``-1`` and expanding the image of the upper slope as a
negative continued fraction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor, gcd
from typing import Iterator, Sequence

from .errors import DomainError

__all__ = [
    "Slope",
    "Unimodular2x2",
    "NcfExpansion",
    "CountTrace",
    "ncf_expand",
    "ncf_eval",
    "honda_count",
    "normalize_slopes",
    "case_normalization",
    "stabilizer_matrix",
    "stabilizer_shift",
    "boundary_slopes",
    "count_tight",
    "count_trace",
    "closed_form_case",
    "closed_form_count",
    "prop2_count",
    "COUNT_CASE_LABELS",
]

MINUS_ONE_SLOPE = (-1, 1)


@dataclass(frozen=True, eq=False)
class Slope:
    """Primitive vector ``(x, y)``; ``(x, y)`` and ``(-x, -y)`` are the same slope."""

    x: int
    y: int

    def __post_init__(self):
        if self.x == 0 and self.y == 0:
            raise DomainError("(0, 0) is not a slope")
        g = gcd(self.x, self.y)
        if g != 1:
            object.__setattr__(self, "x", self.x // g)
            object.__setattr__(self, "y", self.y // g)

    def canonical(self) -> tuple[int, int]:
        """Representative with ``x > 0``, or ``x == 0`` and ``y > 0``."""
        if self.x < 0 or (self.x == 0 and self.y < 0):
            return (-self.x, -self.y)
        return (self.x, self.y)

    @property
    def value(self) -> Fraction | None:
        """``y/x`` as a fraction, ``None`` for the slope at infinity."""
        if self.x == 0:
            return None
        return Fraction(self.y, self.x)

    def __eq__(self, other):
        if not isinstance(other, Slope):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    def __iter__(self) -> Iterator[int]:
        yield self.x
        yield self.y

    def __str__(self):
        v = self.value
        return "inf" if v is None else str(v)


@dataclass(frozen=True)
class Unimodular2x2:
    """Integer matrix ``[[a, b], [c, d]]`` with determinant 1."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise DomainError(f"determinant of {self.rows()} is not 1")

    @classmethod
    def identity(cls) -> "Unimodular2x2":
        return cls(1, 0, 0, 1)

    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.a, self.b), (self.c, self.d))

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def apply(self, v: Slope | Sequence[int]) -> tuple[int, int]:
        x, y = v
        return (self.a * x + self.b * y, self.c * x + self.d * y)

    def __matmul__(self, other: "Unimodular2x2") -> "Unimodular2x2":
        return Unimodular2x2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )


@dataclass(frozen=True)
class NcfExpansion:
    """Coefficients ``[r0, ..., rk]`` of ``r0 - 1/(r1 - 1/(... - 1/rk))``.

    All coefficients are at most -2. The empty expansion stands for -1.
    """

    coefficients: tuple[int, ...] = ()

    def __post_init__(self):
        coeffs = tuple(int(r) for r in self.coefficients)
        bad = [r for r in coeffs if r > -2]
        if bad:
            raise DomainError(f"continued fraction coefficients must be <= -2, got {bad}")
        object.__setattr__(self, "coefficients", coeffs)

    def __iter__(self):
        return iter(self.coefficients)

    def __len__(self):
        return len(self.coefficients)

    def __str__(self):
        return "[" + ",".join(str(r) for r in self.coefficients) + "]"


def ncf_expand(q) -> NcfExpansion:
    """Negative continued fraction of a rational ``q <= -1``.

    >>> str(ncf_expand(Fraction(-5, 2)))
    '[-3,-2]'
    """
    q = Fraction(q)
    if q > -1:
        raise DomainError(f"negative continued fraction needs q <= -1, got {q}")
    coeffs: list[int] = []
    if q == -1:
        return NcfExpansion()
    while True:
        r = floor(q)
        coeffs.append(r)
        if q == r:
            break
        # q - r lies in (0, 1), so the remainder is < -1 with smaller denominator
        q = -1 / (q - r)
    return NcfExpansion(tuple(coeffs))


def ncf_eval(e: NcfExpansion | Sequence[int]) -> Fraction:
    coeffs = list(e)
    if not coeffs:
        return Fraction(-1)
    value = Fraction(coeffs[-1])
    for r in reversed(coeffs[:-1]):
        value = r - 1 / value
    return value


def honda_count(e: NcfExpansion | Sequence[int]) -> int:
    """``|(r0+1)(r1+1)...(r_{k-1}+1) r_k|``; 1 for the empty expansion."""
    coeffs = list(e)
    if not coeffs:
        return 1
    n = coeffs[-1]
    for r in coeffs[:-1]:
        n *= r + 1
    return abs(n)


def stabilizer_matrix(n: int) -> Unimodular2x2:
    """``S_n = [[1-n, -n], [n, 1+n]]``, the shear fixing ``(-1, 1)``."""
    return Unimodular2x2(1 - n, -n, n, 1 + n)


def stabilizer_shift(s: Slope, n: int) -> Slope:
    return Slope(*stabilizer_matrix(n).apply(s))


def _sends_to_minus_one(s0: Slope) -> Unimodular2x2:
    """Some B in SL(2,Z) with ``B s0 = (-1, 1)``, via the extended gcd."""
    x0, y0 = s0
    if (x0, y0) == MINUS_ONE_SLOPE:
        return Unimodular2x2.identity()
    if (x0, y0) == (1, -1):
        return Unimodular2x2(-1, 0, 0, -1)
    a, b = _bezout(x0, y0)  # a*x0 + b*y0 == 1
    # C = [[a, b], [-y0, x0]] sends s0 to (1, 0); T = [[-1, 0], [1, -1]] sends (1, 0) to (-1, 1)
    to_e1 = Unimodular2x2(a, b, -y0, x0)
    return Unimodular2x2(-1, 0, 1, -1) @ to_e1


def _bezout(x: int, y: int) -> tuple[int, int]:
    old_r, r = x, y
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        k = old_r // r
        old_r, r = r, old_r - k * r
        old_s, s = s, old_s - k * s
        old_t, t = t, old_t - k * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    assert old_r == 1, "slope vector is not primitive"
    return old_s, old_t


def normalize_slopes(s0: Slope, s1: Slope, base: Unimodular2x2 | None = None) -> tuple[Unimodular2x2, Fraction]:
    """Find ``A`` in SL(2,Z) with ``A s0 = (-1, 1)`` and ``slope(A s1) <= -1``.

    ``base`` is any matrix sending ``s0`` to ``(-1, 1)`` up to sign; by default
    one is built from the extended gcd. It is post-composed with the power of
    the stabiliser ``S_n`` of smallest ``|n|`` that lands the image of ``s1``
    in ``(-inf, -1]``. Returns ``(A, slope(A s1))``.

    The normalised value depends on the base, its Honda count does not.
    """
    if s0 == s1:
        raise DomainError(f"boundary slopes coincide ({s0}); no normalisation exists")
    if base is None:
        base = _sends_to_minus_one(s0)
    else:
        image = base.apply(s0)
        if image == (1, -1):
            base = Unimodular2x2(-1, 0, 0, -1) @ base
        elif image != MINUS_ONE_SLOPE:
            raise DomainError(f"base matrix sends {tuple(s0)} to {image}, not to (-1, 1)")
    x, y = base.apply(s1)
    # S_n preserves w = x + y and shifts x by -n*w; w != 0 since s1 != s0
    w = x + y
    if w < 0:
        x, y, w = -x, -y, -w
    # slope(S_n v) <= -1 iff the shifted first coordinate x - n*w is negative
    n_min = x // w + 1
    n = 0 if n_min <= 0 else n_min
    A = stabilizer_matrix(n) @ base
    image = Slope(*A.apply(s1))
    return A, image.value


def case_normalization(p: int, t0: int, t1: int) -> Unimodular2x2 | None:
    """Hand-picked matrix sending ``(t0, 1)`` to ``(-1, 1)`` for the listed cases.

    These give short, regular expansions (for instance ``-p/(p-1)`` for
    ``(t0, t1) = (0, 1)``). Returns ``None`` when the pair only fits a case
    after exchanging the components.
    """
    label, swapped = closed_form_case(t0, t1)
    if swapped:
        return None
    if label == "a":
        return Unimodular2x2(0, -1, 1, 1 - t0)
    if label == "b":
        return Unimodular2x2(-p, -1, p + 1, 1)
    if label == "c1":
        return Unimodular2x2(-2 * p, -1, 1 + 2 * p, 1)
    if label in ("c2", "c3"):
        return Unimodular2x2(-(p + 1), -1, p + 2, 1)
    if label in ("d1", "d2", "d3"):
        return Unimodular2x2(-p, -1 + p * t0, 1 + p, 1 - (1 + p) * t0)
    return Unimodular2x2(-1, t0 - 1, 2, 1 - 2 * t0)


def boundary_slopes(p: int, t0: int, t1: int) -> tuple[Slope, Slope]:
    """Dividing-curve slopes ``1/t0`` and ``-p - 1/t1`` as vectors."""
    return Slope(t0, 1), Slope(-t1, p * t1 + 1)


@dataclass(frozen=True)
class CountTrace:
    p: int
    t0: int
    t1: int
    s0: Slope
    s1: Slope
    matrix: Unimodular2x2 | None
    normalized: Fraction
    expansion: NcfExpansion
    count: int


def count_trace(p: int, t0: int, t1: int) -> CountTrace:
    """Count tight minimally twisting structures and keep the derivation."""
    if p < 2:
        raise DomainError(f"p must be at least 2, got {p}")
    s0, s1 = boundary_slopes(p, t0, t1)
    if s0 == s1:
        # only at t0 = t1 = 0: the image slope is -1 itself, empty expansion
        A, value = None, Fraction(-1)
    else:
        A, value = normalize_slopes(s0, s1, case_normalization(p, t0, t1))
    expansion = ncf_expand(value)
    return CountTrace(p, t0, t1, s0, s1, A, value, expansion, honda_count(expansion))


def count_tight(p: int, t0: int, t1: int) -> int:
    return count_trace(p, t0, t1).count


# Domains of the closed-form count. The two branches of case e are labelled
# the other way round in hopf_atlas, where t1 == 1 is "e_t1eq1" (short name e1).
COUNT_CASE_LABELS = {
    "a": "t0, t1 < 0",
    "b": "t0 = 0, t1 <= 0",
    "c1": "t0 = 0, t1 = 1",
    "c2": "t0 = 0, t1 = 2",
    "c3": "t0 = 0, t1 > 2",
    "d1": "t0 = t1 = 1",
    "d2": "t0 = 1, t1 > 1",
    "d3": "t0, t1 > 1",
    "e1": "t0 < 0, t1 > 1",
    "e2": "t0 < 0, t1 = 1",
}


def closed_form_case(t0: int, t1: int) -> tuple[str, bool]:
    """Return ``(label, swapped)`` for the closed-form case covering ``(t0, t1)``.

    ``swapped`` is true when the roles of the two components had to be
    exchanged to land in one of the listed domains.
    """
    for a, b, swapped in ((t0, t1, False), (t1, t0, True)):
        if a < 0 and b < 0:
            return "a", swapped
        if a == 0 and b <= 0:
            return "b", swapped
        if a == 0 and b > 0:
            return ("c1" if b == 1 else "c2" if b == 2 else "c3"), swapped
        if a > 0 and b > 0:
            if a == 1 and b == 1:
                return "d1", swapped
            if a == 1:
                return "d2", swapped
            if b == 1:
                continue
            return "d3", swapped
        if a < 0 and b > 0:
            return ("e2" if b == 1 else "e1"), swapped
    raise DomainError(f"no case applies to (t0, t1) = ({t0}, {t1})")


def closed_form_count(p: int, t0: int, t1: int) -> int:
    """Closed-form count of tight minimally twisting structures."""
    if p < 2:
        raise DomainError(f"p must be at least 2, got {p}")
    label, swapped = closed_form_case(t0, t1)
    if swapped:
        t0, t1 = t1, t0
    if label == "a":
        return t0 * t1 * (p - 1)
    if label == "b":
        return abs(t1 - 1)
    if label == "c1":
        return 2
    if label == "c2":
        return 3
    if label == "c3":
        return 4
    if label == "d1":
        return p + 3
    if label == "d2":
        return 2 * (p + 2)
    if label == "d3":
        return 4 * (p + 1)
    if label == "e1":
        return 2 * abs(t0) * p
    return abs(t0) * (p + 1)


# public name from the original interface
prop2_count = closed_form_count
