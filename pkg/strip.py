"""
The infinite marked strip, the group G = <sigma, theta> acting on its line
segments, canonical orbit representatives and the mapping class group <alpha, beta>.

A segment [i,j] joins (i,0) to (j,1). Segments through a midline point
P_k = (kn/2, 1/2) (those with i+j = kn) are only used as halves: the plus
half runs from (i,0) to P_k, the minus half from P_k to (j,1).
"""

from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Tuple

from errors import DomainViolation, MarkerMismatch
from picard import PicardBarElement, PicardElement, ModelContext

PLUS = "plus"
MINUS = "minus"
FULL = "full"
MARKERS = (PLUS, MINUS, FULL)

SIGMA = "sigma"
SIGMA_INV = "sigma_inv"
THETA = "theta"

_MARKER_SUFFIX = {PLUS: "+", MINUS: "-", FULL: ""}


def toggle(marker: str) -> str:
    """Swap plus and minus, fix full"""
    if marker == PLUS:
        return MINUS
    if marker == MINUS:
        return PLUS
    return marker


@dataclass(frozen=True, order=True)
class Segment:
    n: int
    i: int
    j: int
    marker: str = FULL

    @property
    def total(self) -> int:
        return self.i + self.j

    @property
    def recip(self) -> int:
        """Reciprocal slope j - i of the underlying full segment"""
        return self.j - self.i

    @property
    def is_half(self) -> bool:
        return self.marker != FULL

    @property
    def midline_index(self) -> int:
        """k with i + j = k*n; only meaningful for halves"""
        return self.total // self.n

    def __str__(self) -> str:
        return f"[{self.i},{self.j}]{_MARKER_SUFFIX[self.marker]}"

    def to_json(self) -> Dict[str, object]:
        return {"i": self.i, "j": self.j, "marker": self.marker}


@dataclass(frozen=True, order=True)
class OrbitClass:
    """A G-orbit of refined segments, held by its canonical representative"""

    rep: Segment

    @classmethod
    def of(cls, s: Segment) -> "OrbitClass":
        return cls(canonical_rep(s))

    @property
    def n(self) -> int:
        return self.rep.n

    def __str__(self) -> str:
        return str(self.rep)

    def to_json(self) -> Dict[str, object]:
        return self.rep.to_json()


@dataclass(frozen=True, order=True)
class MCGElement:
    """alpha^k beta^t with k in {0, 1}"""

    n: int
    k: int
    t: int

    @classmethod
    def of(cls, k: int, t: int, n: int) -> "MCGElement":
        # alpha^2 = beta^n
        q, r = divmod(k, 2)
        return cls(n, r, t + q * n)

    def __str__(self) -> str:
        return f"alpha^{self.k} beta^{self.t}"

    def to_json(self) -> Dict[str, int]:
        return {"alpha": self.k, "beta": self.t}


def make_segment(i: int, j: int, marker: str, n: int) -> Segment:
    if marker not in MARKERS:
        raise MarkerMismatch(f"unknown marker {marker!r}")
    on_midline = (i + j) % n == 0
    if marker == FULL and on_midline:
        raise MarkerMismatch(
            f"[{i},{j}] passes through P_{(i + j) // n}; use a plus or minus half"
        )
    if marker != FULL and not on_midline:
        raise MarkerMismatch(f"[{i},{j}] misses the midline points; halves need i+j = kn")
    return Segment(n, i, j, marker)


def apply_g(word: Iterable[str], s: Segment) -> Segment:
    """Apply the letters of word in order; markers are carried along unchanged"""
    i, j = s.i, s.j
    for letter in word:
        if letter == SIGMA:
            i, j = i + s.n, j + s.n
        elif letter == SIGMA_INV:
            i, j = i - s.n, j - s.n
        elif letter == THETA:
            i, j = -j, -i
        else:
            raise DomainViolation(f"unknown group letter {letter!r}")
    return Segment(s.n, i, j, s.marker)


def canonical_rep(s: Segment) -> Segment:
    """The unique orbit element with 0 <= i + j <= n"""
    n = s.n
    total = s.i + s.j
    r = total % (2 * n)
    if r <= n:
        shift = (total - r) // (2 * n) * n
        return Segment(n, s.i - shift, s.j - shift, s.marker)
    # theta first, then translate
    r = (-total) % (2 * n)
    shift = (-total - r) // (2 * n) * n
    return Segment(n, -s.j - shift, -s.i - shift, s.marker)


def orbit_equal(a: Segment, b: Segment) -> bool:
    return a.n == b.n and canonical_rep(a) == canonical_rep(b)


def orbit_translates(s: Segment, m_min: int, m_max: int) -> Iterator[Tuple[int, int]]:
    """Underlying full segments [s+mn, t+mn] and [-t+mn, -s+mn] for m_min <= m <= m_max"""
    seen = set()
    for m in range(m_min, m_max + 1):
        for pair in ((s.i + m * s.n, s.j + m * s.n), (-s.j + m * s.n, -s.i + m * s.n)):
            if pair not in seen:
                seen.add(pair)
                yield pair


def refined_translates(s: Segment, m_min: int, m_max: int) -> List[Segment]:
    """Orbit elements of a refined segment, markers carried along"""
    out = []
    for i, j in orbit_translates(s, m_min, m_max):
        out.append(Segment(s.n, i, j, s.marker))
    return out


def canonical_orbits(n: int, bound: int) -> List[OrbitClass]:
    """All canonical refined orbits with |i|, |j| <= bound, sorted"""
    orbits = []
    for i in range(-bound, bound + 1):
        for total in range(0, n + 1):
            j = total - i
            if abs(j) > bound:
                continue
            if total % n == 0:
                orbits.append(OrbitClass(Segment(n, i, j, PLUS)))
                orbits.append(OrbitClass(Segment(n, i, j, MINUS)))
            else:
                orbits.append(OrbitClass(Segment(n, i, j, FULL)))
    return sorted(orbits)


def mcg_compose(a: MCGElement, b: MCGElement) -> MCGElement:
    if a.n != b.n:
        raise DomainViolation(f"mapping classes for weights {a.n} and {b.n}")
    return MCGElement.of(a.k + b.k, a.t + b.t, a.n)


def mcg_inverse(a: MCGElement) -> MCGElement:
    return MCGElement.of(-a.k, -a.t, a.n)


def mcg_act(a: MCGElement, o: OrbitClass) -> OrbitClass:
    """x.[i,j] = [i-t, j+t+kn]; each alpha toggles the marker"""
    s = o.rep
    marker = toggle(s.marker) if a.k % 2 else s.marker
    moved = Segment(s.n, s.i - a.t, s.j + a.t + a.k * s.n, marker)
    return OrbitClass.of(moved)


def psi(a: MCGElement) -> PicardBarElement:
    """alpha -> x1, beta -> x3"""
    return PicardBarElement(a.n, a.k, a.t)


def psi_lift(a: MCGElement, ctx: ModelContext) -> PicardElement:
    """k*x1 + t*x3 as an element of L"""
    return ctx.element(a.k, 0, a.t, 0)
