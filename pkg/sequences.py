"""
Short exact sequences of vector bundles read off from strip configurations.

Sequences are symbolic: three terms and a provenance label, no maps. What can be
checked about them is numerical (rank, degree, Euler pairings against probe line
bundles and, for distinguished sequences, Hom dimensions), and verify_sequence
checks exactly that.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from bundles import (
    Bundle,
    BundleSum,
    bundle_of_segment,
    degree,
    ext_bundle,
    gen_ext_bundle,
    line_bundle,
    phi,
    rank,
    segment_of,
    tau,
)
from errors import (
    DegeneratePoint,
    DomainViolation,
    InvalidSegment,
    NoPositiveIntersection,
    NotAnX3Multiple,
    NotExtensionBundle,
)
from homext import crossing_heights, euler_form, hom_dim
from logging_config import get_logger
from picard import ModelContext, PicardElement, degree_unit
from strip import FULL, MINUS, PLUS, OrbitClass, Segment, canonical_rep

logger = get_logger(__name__)

QUADRILATERAL = "quadrilateral"
CROSSING = "crossing"
TRIANGLE = "triangle"
ALMOST_SPLIT = "almost-split"
PROJECTIVE_COVER = "projective-cover"
INJECTIVE_HULL = "injective-hull"

WIDEN = "widen"
SLIDE = "slide"
SQUARE = "square"
LINE_SQUARE = "line-square"
EXTENSION_FAMILIES = (WIDEN, SLIDE, SQUARE, LINE_SQUARE)
FAMILY_ALIASES = {"A1": WIDEN, "A2": SLIDE, "A3": SQUARE, "A4": LINE_SQUARE}


@dataclass(frozen=True)
class TorsionSimple:
    """
    The simple sheaf S_index(twist) concentrated at the index-th exceptional point.

    S_i(x) only depends on the x_i-coordinate of x in normal form, so that residue
    is all that is stored.
    """

    n: int
    index: int
    residue: int

    @classmethod
    def of(cls, index: int, twist: PicardElement) -> "TorsionSimple":
        if index not in (1, 2, 3):
            raise DomainViolation(f"exceptional points are 1, 2, 3; got {index}")
        residue = (twist.l1, twist.l2, twist.l3)[index - 1]
        return cls(twist.n, index, residue)

    @property
    def degree(self) -> int:
        p = degree_unit(self.n)
        return p // self.n if self.index == 3 else p // 2

    def __str__(self) -> str:
        return f"S{self.index}[{self.residue}]"

    def to_json(self) -> Dict[str, int]:
        return {"type": "torsion", "index": self.index, "residue": self.residue}


SeqTerm = Union[BundleSum, TorsionSimple]


def as_term(x: Union[Bundle, BundleSum, TorsionSimple]) -> SeqTerm:
    if isinstance(x, Bundle):
        return BundleSum.of([x])
    return x


def term_rank(t: SeqTerm) -> int:
    return 0 if isinstance(t, TorsionSimple) else rank(t)


def term_degree(t: SeqTerm) -> int:
    return t.degree if isinstance(t, TorsionSimple) else degree(t)


def term_json(t: SeqTerm) -> object:
    return t.to_json()


@dataclass(frozen=True)
class ExactSequence:
    """0 -> left -> middle -> right -> 0"""

    left: SeqTerm
    middle: SeqTerm
    right: SeqTerm
    provenance: str
    distinguished: bool = False

    @property
    def all_bundles(self) -> bool:
        return not any(isinstance(t, TorsionSimple) for t in (self.left, self.middle, self.right))

    def __str__(self) -> str:
        return f"0 -> {self.left} -> {self.middle} -> {self.right} -> 0"

    def to_json(self) -> Dict[str, object]:
        middle = self.middle.to_json()
        return {
            "left": term_json(self.left),
            "middle": middle if isinstance(middle, list) else [middle],
            "right": term_json(self.right),
            "provenance": self.provenance,
            "distinguished": self.distinguished,
        }


@dataclass
class SequenceReport:
    provenance: str
    checks: Dict[str, bool] = field(default_factory=dict)
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks[name] = self.checks.get(name, True) and passed
        if not passed:
            self.failures.append(f"{name}: {detail}" if detail else name)

    def to_json(self) -> Dict[str, object]:
        return {
            "provenance": self.provenance,
            "ok": self.ok,
            "checks": dict(sorted(self.checks.items())),
            "failures": self.failures,
        }


def _sequence(left, middle, right, provenance: str, distinguished: bool = False) -> ExactSequence:
    return ExactSequence(as_term(left), as_term(middle), as_term(right), provenance, distinguished)


def quadrilateral_sequence(
    i: int, j: int, k1: int, k2: int, ctx: ModelContext
) -> Tuple[ExactSequence, bool]:
    """
    0 -> phi[i,j] -> phi[i-k1,j] + phi[i,j+k2] -> phi[i-k1,j+k2] -> 0.

    Also returns whether the two middle terms coincide, which happens exactly when
    k1 = k2 and i+j = 0 mod n, or k1 = k2 = 0 mod n.
    """
    if k1 <= 0 or k2 <= 0:
        raise InvalidSegment(f"quadrilateral needs positive shifts, got k1={k1}, k2={k2}")
    n = ctx.n
    west, east = phi(i - k1, j, ctx), phi(i, j + k2, ctx)
    seq = _sequence(
        phi(i, j, ctx),
        BundleSum.of([west, east]),
        phi(i - k1, j + k2, ctx),
        QUADRILATERAL,
    )
    coincide = k1 == k2 and ((i + j) % n == 0 or k1 % n == 0)
    return seq, coincide


def _piece(bottom: Tuple, top: Tuple, ctx: ModelContext) -> BundleSum:
    """
    The bundle of the straight piece between two endpoints.

    An endpoint is ("edge", x) on a boundary or ("mid", k, marker) at P_k; a piece
    ending at P_k is the half of the segment through P_k carrying that marker.
    """
    n = ctx.n
    if bottom[0] == "edge" and top[0] == "edge":
        return phi(bottom[1], top[1], ctx)
    if bottom[0] == "edge":
        _, k, marker = top
        return BundleSum.of([bundle_of_segment(Segment(n, bottom[1], k * n - bottom[1], marker), ctx)])
    if top[0] == "edge":
        _, k, marker = bottom
        return BundleSum.of([bundle_of_segment(Segment(n, k * n - top[1], top[1], marker), ctx)])
    raise DegeneratePoint("a piece cannot join two midline points")


def _pieces_of(s: Segment, y_cross) -> Tuple[Tuple, Tuple]:
    """Bottom and top endpoints of the piece of s that contains height y_cross"""
    bottom: Tuple = ("edge", s.i)
    top: Tuple = ("edge", s.j)
    if s.marker != FULL:
        k = s.midline_index
        if y_cross < Fraction(1, 2):
            top = ("mid", k, s.marker)
        else:
            bottom = ("mid", k, s.marker)
    return bottom, top


def crossing_sequence(a: Segment, b: Segment, ctx: ModelContext) -> ExactSequence:
    """
    0 -> phi_hat(b) -> phi_hat([I,T]) + phi_hat([S,J]) -> phi_hat(a) -> 0.

    a = [I,J] is kept as given; the lowest positive crossing with a copy [S,T] of
    b's orbit is used and the endpoints are recombined across it. Halves through
    a midline point keep the marker of the segment they came from.
    """
    orbit = OrbitClass.of(b)
    heights = crossing_heights(a, orbit)
    if not heights:
        raise NoPositiveIntersection(f"{a} has no positive crossing with the orbit of {b}")
    y = heights[0]
    rep = orbit.rep
    d = a.recip - rep.recip
    u = a.i + y * d
    copy = Segment(ctx.n, int(u), int(u) + rep.recip, b.marker)
    a_bottom, a_top = _pieces_of(a, y)
    b_bottom, b_top = _pieces_of(copy, y)
    middle = BundleSum.of([_piece(a_bottom, b_top, ctx), _piece(b_bottom, a_top, ctx)])
    logger.debug(f"crossing of {a} with {copy} at height {y}")
    return _sequence(bundle_of_segment(copy, ctx), middle, bundle_of_segment(a, ctx), CROSSING)


def triangle_sequence(i: int, j: int, k: int, ctx: ModelContext) -> ExactSequence:
    """
    0 -> green -> phi_hat[i,j] -> blue -> 0 for the triangle of [i,j] and P_k.

    green and blue are the halves from (i,0) and to (j,1) through P_k, in
    ascending order of reciprocal slope.
    """
    n = ctx.n
    if (i + j) % n == 0:
        if k * n == i + j:
            raise DegeneratePoint(f"P_{k} lies on [{i},{j}]")
        raise InvalidSegment(f"[{i},{j}] passes through a midline point")
    from_bottom = bundle_of_segment(Segment(n, i, k * n - i, PLUS), ctx)
    to_top = bundle_of_segment(Segment(n, k * n - j, j, MINUS), ctx)
    whole = bundle_of_segment(Segment(n, i, j, FULL), ctx)
    if k * n < i + j:
        return _sequence(from_bottom, whole, to_top, TRIANGLE)
    return _sequence(to_top, whole, from_bottom, TRIANGLE)


def _require_x3_multiple(x: PicardElement) -> None:
    if x.l1 or x.l2:
        raise NotAnX3Multiple(f"{x} has an x1 or x2 component")


def appendix_sequences(
    which: str,
    Lt: PicardElement,
    x: PicardElement,
    ctx: ModelContext,
    y: Optional[PicardElement] = None,
) -> ExactSequence:
    """
    Sequences between generalized extension bundles of neighbouring widths.

    widen:       0 -> E_L<x> -> E_L<x+x3> -> S3 -> 0
    slide:       0 -> E_L<x> -> E_{L(x3)}<x-x3> -> S3 -> 0
    square:      0 -> E_L<x> -> E_L<x+x3> + E_{L(x3)}<x-x3> -> E_{L(x3)}<x> -> 0
    line-square: 0 -> L(w) -> L(w+y) + E_L<x+y> -> E_{L(y)}<x> -> 0, x = a*x3, y = b*x3, a >= 0, b >= 1

    The short names A1 to A4 are accepted for the four families in this order.
    """
    _require_x3_multiple(x)
    which = FAMILY_ALIASES.get(which, which)
    x3 = ctx.x3
    if which == WIDEN:
        return _sequence(
            gen_ext_bundle(Lt, x, ctx),
            gen_ext_bundle(Lt, x + x3, ctx),
            TorsionSimple.of(3, Lt + x + x3),
            WIDEN,
        )
    if which == SLIDE:
        return _sequence(
            gen_ext_bundle(Lt, x, ctx),
            gen_ext_bundle(Lt + x3, x - x3, ctx),
            TorsionSimple.of(3, Lt + ctx.omega + x3),
            SLIDE,
        )
    if which == SQUARE:
        middle = BundleSum.of([gen_ext_bundle(Lt, x + x3, ctx), gen_ext_bundle(Lt + x3, x - x3, ctx)])
        return _sequence(gen_ext_bundle(Lt, x, ctx), middle, gen_ext_bundle(Lt + x3, x, ctx), SQUARE)
    if which == LINE_SQUARE:
        if y is None:
            raise DomainViolation("line-square needs y")
        _require_x3_multiple(y)
        a = x.l3 + ctx.n * x.l
        b = y.l3 + ctx.n * y.l
        if a < 0 or b < 1:
            raise DomainViolation(f"line-square needs x = a*x3, y = b*x3 with a >= 0, b >= 1; got a={a}, b={b}")
        w = ctx.omega
        middle = BundleSum.of([line_bundle(Lt + w + y, ctx), gen_ext_bundle(Lt, x + y, ctx)])
        return _sequence(line_bundle(Lt + w, ctx), middle, gen_ext_bundle(Lt + y, x, ctx), LINE_SQUARE)
    raise DomainViolation(f"unknown sequence family {which!r}; expected one of {EXTENSION_FAMILIES}")


def almost_split_sequence(X: Bundle) -> ExactSequence:
    """The almost-split sequence 0 -> tau X -> M -> X -> 0"""
    ctx = X.ctx
    if X.is_line:
        return _sequence(tau(X), ext_bundle(X.twist, 0, ctx), X, ALMOST_SPLIT)
    s = canonical_rep(segment_of(X).rep)
    middle = BundleSum.of([phi(s.i, s.j - 1, ctx), phi(s.i + 1, s.j, ctx)])
    return _sequence(tau(X), middle, X, ALMOST_SPLIT)


def _ext_rep(X: Bundle) -> Tuple[int, int, int]:
    if X.is_line:
        raise NotExtensionBundle(f"{X} is a line bundle; it is its own cover and hull")
    s = canonical_rep(segment_of(X).rep)
    return s.i, s.j, (s.i + s.j) // X.ctx.n


def projective_cover(X: Bundle) -> Tuple[BundleSum, Bundle, ExactSequence]:
    """Projective cover in the Frobenius structure and its kernel"""
    ctx = X.ctx
    n = ctx.n
    i, j, k = _ext_rep(X)
    cover = BundleSum.of([phi(i, k * n - i, ctx), phi((k + 1) * n - j, j, ctx)])
    (kernel,) = phi((k + 1) * n - j, k * n - i, ctx).summands
    return cover, kernel, _sequence(kernel, cover, X, PROJECTIVE_COVER, distinguished=True)


def injective_hull(X: Bundle) -> Tuple[BundleSum, Bundle, ExactSequence]:
    """Injective hull in the Frobenius structure and its cokernel"""
    ctx = X.ctx
    n = ctx.n
    i, j, k = _ext_rep(X)
    hull = BundleSum.of([phi(i, (k + 1) * n - i, ctx), phi(k * n - j, j, ctx)])
    (cokernel,) = phi(k * n - j, (k + 1) * n - i, ctx).summands
    return hull, cokernel, _sequence(X, hull, cokernel, INJECTIVE_HULL, distinguished=True)


def probe_line_bundles(ctx: ModelContext, bound: int) -> List[Bundle]:
    """O(eps(x1 - x2) + r*x1 + m*x3) for eps, r in {0, 1} and |m| <= bound"""
    probes = []
    for eps in (0, 1):
        for r in (0, 1):
            for m in range(-bound, bound + 1):
                probes.append(line_bundle(ctx.element(eps + r, -eps, m, 0), ctx))
    return probes


def verify_sequence(seq: ExactSequence, probes: List[Bundle]) -> SequenceReport:
    report = SequenceReport(seq.provenance)
    left, middle, right = seq.left, seq.middle, seq.right

    r = (term_rank(left), term_rank(middle), term_rank(right))
    report.record("rank", r[1] == r[0] + r[2], f"{r[1]} != {r[0]} + {r[2]}")
    d = (term_degree(left), term_degree(middle), term_degree(right))
    report.record("degree", d[1] == d[0] + d[2], f"{d[1]} != {d[0]} + {d[2]}")

    if seq.all_bundles:
        for P in probes:
            into = (euler_form(P, left), euler_form(P, middle), euler_form(P, right))
            report.record("euler", into[1] == into[0] + into[2], f"chi({P}, -) gives {into}")
            out = (euler_form(left, P), euler_form(middle, P), euler_form(right, P))
            report.record("euler", out[1] == out[0] + out[2], f"chi(-, {P}) gives {out}")
            if seq.distinguished:
                homs = (hom_dim(P, left), hom_dim(P, middle), hom_dim(P, right))
                report.record("hom-probe", homs[1] == homs[0] + homs[2], f"Hom({P}, -) gives {homs}")
    if not report.ok:
        logger.debug(f"{seq.provenance} sequence {seq} failed: {report.failures[:3]}")
    return report
