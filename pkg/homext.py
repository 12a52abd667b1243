"""
Ext and Hom dimensions between vector bundles, computed two independent ways.

The geometric way counts positive intersections of strip segments. The algebraic
way reduces everything to line bundles: dim Ext^1(O(x), O(y)) = dim R_{x+omega-y}
by Serre duality, and rank-two arguments are split along their defining sequences.
Both must agree on every input.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Tuple

from bundles import (
    Bundle,
    BundleLike,
    constituents,
    gen_ext_bundle,
    k_class,
    line_bundle,
    segment_of,
    summands_of,
)
from errors import DomainViolation, NegativeHom
from logging_config import get_logger
from picard import ModelContext, PicardElement, alt_coords, dim_R, omega_of
from strip import FULL, MINUS, PLUS, OrbitClass, Segment, toggle

logger = get_logger(__name__)

GEOMETRIC = "geometric"
ALGEBRAIC = "algebraic"
METHODS = (GEOMETRIC, ALGEBRAIC)

_Y_RANGE = {
    FULL: (Fraction(0), Fraction(1)),
    PLUS: (Fraction(0), Fraction(1, 2)),
    MINUS: (Fraction(1, 2), Fraction(1)),
}


@dataclass(frozen=True)
class GeomSegment:
    """A segment, or one half of it, as an exact piece of the line x = i + (j - i)*y"""

    i: int
    j: int
    y_min: Fraction
    y_max: Fraction

    @classmethod
    def of(cls, s: Segment) -> "GeomSegment":
        lo, hi = _Y_RANGE[s.marker]
        return cls(s.i, s.j, lo, hi)

    @property
    def recip_slope(self) -> int:
        return self.j - self.i

    def point_at(self, y: Fraction) -> Tuple[Fraction, Fraction]:
        return (self.i + self.recip_slope * y, y)

    @property
    def endpoints(self) -> Tuple[Tuple[Fraction, Fraction], Tuple[Fraction, Fraction]]:
        return self.point_at(self.y_min), self.point_at(self.y_max)


def crossing_heights(a: Segment, b_orbit: OrbitClass) -> List[Fraction]:
    """
    Heights of the positive intersections of a with the G-orbit of b.

    Orbit copies are [s + mn, t + mn] and [-t + mn, -s + mn]; all have reciprocal
    slope t - s. A crossing is positive when a has the larger reciprocal slope
    and it lies strictly inside a's own height range, so endpoints never count.
    """
    n = a.n
    ga = GeomSegment.of(a)
    s, t = b_orbit.rep.i, b_orbit.rep.j
    d = ga.recip_slope - (t - s)
    if d <= 0:
        return []
    # a copy starting at (u, 0) meets a at height (u - i) / d
    lower = a.i + ga.y_min * d
    upper = a.i + ga.y_max * d
    starts = set()
    for first in (s, -t):
        m = math.floor((lower - first) / n)
        while first + m * n < upper:
            u = first + m * n
            if lower < u:
                starts.add(u)
            m += 1
    heights = sorted(Fraction(u - a.i, d) for u in starts)
    logger.debug(f"{a} meets orbit of {b_orbit} at heights {[str(h) for h in heights]}")
    return heights


def positive_intersections(a: Segment, b_orbit: OrbitClass) -> int:
    return len(crossing_heights(a, b_orbit))


def marker_correction(a: Segment, b: Segment) -> int:
    """1 for opposite halves with i+j+s+t = 0 mod 2n, a of larger reciprocal slope"""
    if a.marker == FULL or b.marker != toggle(a.marker):
        return 0
    if (a.total + b.total) % (2 * a.n) != 0:
        return 0
    return 1 if a.recip > b.recip else 0


def intersection_index(a: Segment, b: Segment) -> int:
    return positive_intersections(a, OrbitClass.of(b)) + marker_correction(a, b)


def ext_dim_line_line(x: PicardElement, y: PicardElement) -> int:
    """dim Ext^1(O(x), O(y)) = dim R_{x + omega - y}"""
    return dim_R(x + omega_of(x.n) - y)


def line_line_floor_formula(x: PicardElement, y: PicardElement) -> int:
    """
    dim Ext^1(O(x), O(y)) from the four-case floor table.

    With x = l1(x1 - x2) + l2*x2 + l*x3 and y = k1(x1 - x2) + k2*x2 + k*x3 the
    base value is floor((l - k - 1) / n); one is added when l2 > k2, or when
    l2 = k2 and l1 != k1.
    """
    l1, l2, l = alt_coords(x)
    k1, k2, k = alt_coords(y)
    value = (l - k - 1) // x.n
    if l2 > k2 or (l2 == k2 and l1 != k1):
        value += 1
    return max(0, value)


def euler_form(X: BundleLike, Y: BundleLike) -> int:
    """chi(X, Y) = dim Hom - dim Ext^1, bilinear over the line classes"""
    total = 0
    for x in k_class(X).line_classes:
        for y in k_class(Y).line_classes:
            total += dim_R(y - x) - ext_dim_line_line(x, y)
    return total


def _line_into_ext(x: PicardElement, E: Bundle) -> int:
    sub, quot = constituents(E)
    # a nonzero map to the quotient kills Ext(O(x), E)
    if dim_R(quot - x) > 0:
        return 0
    return line_line_floor_formula(x, sub) + line_line_floor_formula(x, quot)


def _ext_into_line(E: Bundle, y: PicardElement) -> int:
    sub, quot = constituents(E)
    if dim_R(y - sub) > 0:
        return 0
    return line_line_floor_formula(sub, y) + line_line_floor_formula(quot, y)


def _ext_into_ext(E: Bundle, F: Bundle) -> int:
    sub, quot = constituents(E)
    sub_bundle = line_bundle(sub, E.ctx)
    if euler_form(sub_bundle, F) + _line_into_ext(sub, F) > 0:
        return 0
    return _line_into_ext(sub, F) + _line_into_ext(quot, F)


@lru_cache(maxsize=None)
def _algebraic_ext(X: Bundle, Y: Bundle) -> int:
    if X.is_line and Y.is_line:
        return line_line_floor_formula(X.twist, Y.twist)
    if X.is_line:
        return _line_into_ext(X.twist, Y)
    if Y.is_line:
        return _ext_into_line(X, Y.twist)
    return _ext_into_ext(X, Y)


@lru_cache(maxsize=None)
def _geometric_ext(X: Bundle, Y: Bundle) -> int:
    return intersection_index(segment_of(X).rep, segment_of(Y).rep)


def ext_dim_case_formulas(X: BundleLike, Y: BundleLike) -> int:
    """Algebraic dim Ext^1(X, Y), independent of the strip"""
    return sum(_algebraic_ext(a, b) for a in summands_of(X) for b in summands_of(Y))


def ext_dim(X: BundleLike, Y: BundleLike, method: str = GEOMETRIC) -> int:
    """dim Ext^1(X, Y), additive over direct summands"""
    if method == ALGEBRAIC:
        return ext_dim_case_formulas(X, Y)
    if method != GEOMETRIC:
        raise DomainViolation(f"unknown method {method!r}; expected one of {METHODS}")
    return sum(_geometric_ext(a, b) for a in summands_of(X) for b in summands_of(Y))


def hom_dim(X: BundleLike, Y: BundleLike, method: str = GEOMETRIC) -> int:
    value = euler_form(X, Y) + ext_dim(X, Y, method)
    if value < 0:
        raise NegativeHom(f"dim Hom({X}, {Y}) came out as {value}")
    return value


def ext_splitting_report(X: Bundle, E: Bundle) -> List[str]:
    """
    Check that a nonzero Ext splits along E's defining sequence.

    For E = E_L<x> with sub L(omega) and quotient L(x): Ext(X, E) != 0 forces
    Hom(X, L(x)) = 0 and Ext(X, E) = Ext(X, L(omega)) + Ext(X, L(x)); dually
    Ext(E, X) != 0 forces Hom(L(omega), X) = 0 and the matching sum.
    Returns the violated statements, empty when everything holds.
    """
    sub, quot = constituents(E)
    sub_b, quot_b = line_bundle(sub, E.ctx), line_bundle(quot, E.ctx)
    violations = []

    into = ext_dim(X, E)
    if into:
        if hom_dim(X, quot_b):
            violations.append(f"Ext({X}, {E}) = {into} but Hom({X}, {quot_b}) != 0")
        split = ext_dim(X, sub_b) + ext_dim(X, quot_b)
        if split != into:
            violations.append(f"Ext({X}, {E}) = {into} but the line terms sum to {split}")

    out = ext_dim(E, X)
    if out:
        if hom_dim(sub_b, X):
            violations.append(f"Ext({E}, {X}) = {out} but Hom({sub_b}, {X}) != 0")
        split = ext_dim(sub_b, X) + ext_dim(quot_b, X)
        if split != out:
            violations.append(f"Ext({E}, {X}) = {out} but the line terms sum to {split}")
    return violations


def rank2_middle_criterion(x: PicardElement, y: PicardElement) -> bool:
    """y - x = x1 + x2 + k*x3 + l*c with 1 <= k <= n-1 and l >= -1"""
    diff = y - x
    return diff.l1 == 1 and diff.l2 == 1 and 1 <= diff.l3 <= x.n - 1 and diff.l >= -1


def rank2_middle_term(x: PicardElement, y: PicardElement, ctx: ModelContext) -> Bundle:
    """Indecomposable middle term of a non-split extension of O(y) by O(x)"""
    if not rank2_middle_criterion(x, y):
        raise DomainViolation(f"middle terms of extensions of O({y}) by O({x}) are not rank-two indecomposable")
    (middle,) = gen_ext_bundle(x - ctx.omega, y - x + ctx.omega, ctx).summands
    return middle
