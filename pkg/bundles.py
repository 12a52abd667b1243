"""
Indecomposable vector bundles on X(2,2,n) and the bijection with refined strip orbits.

A Bundle is either a line bundle O(twist) or an extension bundle E_{O(base)}<width*x3>
with 0 <= width <= n-2. Extension bundles have four descriptors naming the same
object; the stored one is always phi_hat of the canonical orbit, so plain equality
of Bundle values is isomorphism.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Tuple, Union

from errors import ContextMismatch, DomainViolation, NotAnX3Multiple, NotExtensionBundle
from logging_config import get_logger
from picard import ModelContext, PicardElement, delta_degree, star_split
from strip import FULL, MINUS, PLUS, OrbitClass, Segment, canonical_orbits, canonical_rep

logger = get_logger(__name__)

LINE = "line"
EXT = "ext"


@dataclass(frozen=True)
class Bundle:
    kind: str
    twist: PicardElement
    ctx: ModelContext
    width: Optional[int] = None

    @property
    def is_line(self) -> bool:
        return self.kind == LINE

    @property
    def base(self) -> PicardElement:
        return self.twist

    def sort_key(self) -> Tuple[int, Tuple[int, int, int, int], int]:
        return (0 if self.is_line else 1, self.twist.as_tuple(), self.width or 0)

    def __str__(self) -> str:
        if self.is_line:
            return f"O({self.twist})"
        return f"E({self.twist}; {self.width})"

    def to_json(self) -> Dict[str, object]:
        if self.is_line:
            return {"type": LINE, "twist": self.twist.to_json()}
        return {"type": EXT, "base": self.twist.to_json(), "width": self.width}


@dataclass(frozen=True)
class BundleSum:
    """Direct sum of indecomposables, kept sorted so equality ignores order"""

    summands: Tuple[Bundle, ...]

    @classmethod
    def of(cls, bundles: Iterable[Union[Bundle, "BundleSum"]]) -> "BundleSum":
        flat: List[Bundle] = []
        for b in bundles:
            flat.extend(summands_of(b))
        return cls(tuple(sorted(flat, key=Bundle.sort_key)))

    def __iter__(self):
        return iter(self.summands)

    def __len__(self) -> int:
        return len(self.summands)

    def __str__(self) -> str:
        return " + ".join(str(b) for b in self.summands) if self.summands else "0"

    def to_json(self) -> List[Dict[str, object]]:
        return [b.to_json() for b in self.summands]


@dataclass(frozen=True)
class KClass:
    rank: int
    degree: int
    line_classes: Tuple[PicardElement, ...]

    def __add__(self, other: "KClass") -> "KClass":
        return KClass(
            self.rank + other.rank,
            self.degree + other.degree,
            tuple(sorted(self.line_classes + other.line_classes)),
        )

    def to_json(self) -> Dict[str, object]:
        return {
            "rank": self.rank,
            "degree": self.degree,
            "line_classes": [x.to_json() for x in self.line_classes],
        }


BundleLike = Union[Bundle, BundleSum]


def summands_of(b: BundleLike) -> Tuple[Bundle, ...]:
    if isinstance(b, BundleSum):
        return b.summands
    return (b,)


def _check_ctx(x: PicardElement, ctx: ModelContext) -> None:
    if x.n != ctx.n:
        raise ContextMismatch(f"element of weight {x.n} used with weight {ctx.n}")


def line_bundle(twist: PicardElement, ctx: ModelContext) -> Bundle:
    _check_ctx(twist, ctx)
    return Bundle(LINE, twist, ctx)


def ext_bundle(base: PicardElement, width: int, ctx: ModelContext) -> Bundle:
    """E_{O(base)}<width*x3>, stored under its canonical descriptor"""
    _check_ctx(base, ctx)
    if not 0 <= width <= ctx.n - 2:
        raise DomainViolation(f"extension width must lie in [0, {ctx.n - 2}], got {width}")
    return phi_hat(_ext_orbit(base, width, ctx), ctx)


def _ext_orbit(base: PicardElement, width: int, ctx: ModelContext) -> OrbitClass:
    _, r, m = star_split(base - ctx.base)
    if r == 0:
        seg = Segment(ctx.n, -m, width + 1 + m, FULL)
    else:
        seg = Segment(ctx.n, -m, width + ctx.n + 1 + m, FULL)
    return OrbitClass.of(seg)


@lru_cache(maxsize=None)
def phi_hat(o: OrbitClass, ctx: ModelContext) -> Bundle:
    """The indecomposable bundle attached to a refined orbit"""
    if o.n != ctx.n:
        raise ContextMismatch(f"orbit of weight {o.n} used with weight {ctx.n}")
    s = canonical_rep(o.rep)
    if s.marker == FULL:
        return Bundle(EXT, ctx.base - s.i * ctx.x3, ctx, s.total - 1)
    k = s.midline_index
    twist = ctx.base + k * ctx.x1 - (s.i + 1) * ctx.x3
    if (s.marker == PLUS and k % 2 == 0) or (s.marker == MINUS and k % 2 == 1):
        twist = twist + ctx.star
    return Bundle(LINE, twist, ctx)


def bundle_of_segment(s: Segment, ctx: ModelContext) -> Bundle:
    return phi_hat(OrbitClass.of(s), ctx)


@lru_cache(maxsize=None)
def segment_of(b: Bundle) -> OrbitClass:
    """Inverse of phi_hat"""
    ctx = b.ctx
    n = ctx.n
    if not b.is_line:
        return _ext_orbit(b.twist, b.width, ctx)
    eps, r, m = star_split(b.twist - ctx.base)
    i = -m - 1
    if r == 0:
        return OrbitClass(Segment(n, i, -i, PLUS if eps else MINUS))
    return OrbitClass(Segment(n, i, n - i, MINUS if eps else PLUS))


def gen_ext_bundle(Lt: PicardElement, x: PicardElement, ctx: ModelContext) -> BundleSum:
    """
    Generalized extension bundle E_L<x> for x in Z*x3 + Z*c.

    Width l3 <= n-2 gives a single extension bundle; width n-1 splits into
    L((l+1)x1 - x3) and its (x1 - x2)-twist.
    """
    _check_ctx(Lt, ctx)
    _check_ctx(x, ctx)
    if x.l1 or x.l2:
        raise NotAnX3Multiple(f"{x} has an x1 or x2 component")
    if x.l3 <= ctx.n - 2:
        return BundleSum.of([ext_bundle(Lt + x.l * ctx.x1, x.l3, ctx)])
    first = Lt + (x.l + 1) * ctx.x1 - ctx.x3
    return BundleSum.of([line_bundle(first, ctx), line_bundle(first + ctx.star, ctx)])


def phi(i: int, j: int, ctx: ModelContext) -> BundleSum:
    """phi([i,j]) for any segment; a pair of line bundles when i+j = kn"""
    return gen_ext_bundle(ctx.base - i * ctx.x3, (i + j - 1) * ctx.x3, ctx)


def constituents(b: Bundle) -> Tuple[PicardElement, PicardElement]:
    """(sub, quotient) twists of 0 -> L(omega) -> E_L<x> -> L(x) -> 0"""
    if b.is_line:
        raise NotExtensionBundle(f"{b} is a line bundle")
    return b.twist + b.ctx.omega, b.twist + b.width * b.ctx.x3


def k_class(b: BundleLike) -> KClass:
    total = KClass(0, 0, ())
    for s in summands_of(b):
        classes = (s.twist,) if s.is_line else constituents(s)
        total = total + KClass(len(classes), sum(delta_degree(x) for x in classes), tuple(classes))
    return total


def rank(b: BundleLike) -> int:
    return sum(1 if s.is_line else 2 for s in summands_of(b))


def degree(b: BundleLike) -> int:
    return k_class(b).degree


def slope(b: BundleLike) -> Fraction:
    r = rank(b)
    if r == 0:
        raise DomainViolation("slope of the zero bundle")
    return Fraction(degree(b), r)


def act(b: Bundle, x: PicardElement) -> Bundle:
    """Degree shift b(x)"""
    if b.is_line:
        return line_bundle(b.twist + x, b.ctx)
    return ext_bundle(b.twist + x, b.width, b.ctx)


def act_sum(b: BundleLike, x: PicardElement) -> BundleSum:
    return BundleSum.of(act(s, x) for s in summands_of(b))


def tau(b: Bundle) -> Bundle:
    return act(b, b.ctx.omega)


def tau_inv(b: Bundle) -> Bundle:
    return act(b, -b.ctx.omega)


def dual(b: Bundle) -> Bundle:
    if b.is_line:
        return line_bundle(-b.twist, b.ctx)
    ctx = b.ctx
    return ext_bundle(-b.twist - b.width * ctx.x3 - ctx.omega, b.width, ctx)


def window_orbits(ctx: ModelContext, bound: int) -> List[OrbitClass]:
    """Canonical orbits with |i|, |j| <= bound"""
    orbits = canonical_orbits(ctx.n, bound)
    logger.debug(f"window of {len(orbits)} orbits for n={ctx.n}, bound={bound}")
    return orbits
