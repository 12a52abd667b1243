"""
The folded valued translation quiver of shape ZA_{n+1}.

Vertex (s, row) stands for the F-orbit of phi_hat([-s, s+row]); rows 0 and n
carry a pair of line bundles (value 2), the rows in between one extension bundle.
"""

from dataclasses import dataclass
from typing import Dict, List, Tuple

from bundles import BundleSum, phi, summands_of
from errors import DomainViolation
from homext import hom_dim
from logging_config import get_logger
from picard import ModelContext
from sequences import almost_split_sequence

logger = get_logger(__name__)


@dataclass(frozen=True, order=True)
class QuiverVertex:
    n: int
    s: int
    row: int

    def __post_init__(self) -> None:
        if not 0 <= self.row <= self.n:
            raise DomainViolation(f"row must lie in [0, {self.n}], got {self.row}")

    @property
    def valuation(self) -> int:
        return 2 if self.row in (0, self.n) else 1

    def __str__(self) -> str:
        return f"({self.s},{self.row})"

    def to_json(self) -> Dict[str, int]:
        return {"s": self.s, "row": self.row, "valuation": self.valuation}


@dataclass(frozen=True)
class Arrow:
    source: QuiverVertex
    target: QuiverVertex

    @property
    def value(self) -> Tuple[int, int]:
        return (self.target.valuation, self.source.valuation)

    def to_json(self) -> Dict[str, object]:
        return {"from": [self.source.s, self.source.row], "to": [self.target.s, self.target.row], "value": list(self.value)}


@dataclass(frozen=True)
class QuiverWindow:
    n: int
    s_min: int
    s_max: int
    vertices: Tuple[QuiverVertex, ...]
    arrows: Tuple[Arrow, ...]

    def to_json(self) -> Dict[str, object]:
        return {
            "n": self.n,
            "s_min": self.s_min,
            "s_max": self.s_max,
            "vertices": [v.to_json() for v in self.vertices],
            "arrows": [a.to_json() for a in self.arrows],
        }


def arrows_from(v: QuiverVertex) -> List[Arrow]:
    out = []
    if v.row < v.n:
        out.append(Arrow(v, QuiverVertex(v.n, v.s, v.row + 1)))
    if v.row > 0:
        out.append(Arrow(v, QuiverVertex(v.n, v.s + 1, v.row - 1)))
    return out


def window(ctx: ModelContext, s_min: int, s_max: int) -> QuiverWindow:
    if s_min > s_max:
        raise DomainViolation(f"empty window: s_min={s_min} > s_max={s_max}")
    n = ctx.n
    vertices = tuple(QuiverVertex(n, s, row) for s in range(s_min, s_max + 1) for row in range(n + 1))
    arrows = tuple(a for v in vertices for a in arrows_from(v) if a.target.s <= s_max)
    return QuiverWindow(n, s_min, s_max, vertices, arrows)


def vertex_bundle(v: QuiverVertex, ctx: ModelContext) -> BundleSum:
    return phi(-v.s, v.s + v.row, ctx)


def apply_auto(a: int, b: int, v: QuiverVertex) -> QuiverVertex:
    """tau_F^a rho^b, using rho^2 = tau_F^n"""
    q, r = divmod(b, 2)
    s, row = v.s + a + q * v.n, v.row
    if r:
        s, row = s + row, v.n - row
    return QuiverVertex(v.n, s, row)


def path_exists(v: QuiverVertex, w: QuiverVertex) -> bool:
    steps = w.s - v.s
    return steps >= 0 and w.row + steps >= v.row


def hom_path_report(ctx: ModelContext, s_min: int, s_max: int) -> Dict[str, object]:
    """
    Compare directed paths with nonzero Hom over every ordered vertex pair.

    A path must give nonzero Hom. A pair without a path is checked when Hom
    vanishes. When Hom does not vanish the pair is inconclusive if the slab
    of n steps before the target leaves the window, and a converse violation
    otherwise.
    """
    win = window(ctx, s_min, s_max)
    bundles = {v: vertex_bundle(v, ctx) for v in win.vertices}
    violations, converse = [], []
    paths = checked = inconclusive = 0
    for v in win.vertices:
        for w in win.vertices:
            nonzero = hom_dim(bundles[v], bundles[w]) > 0
            if path_exists(v, w):
                paths += 1
                if not nonzero:
                    violations.append(f"path {v} -> {w} but Hom = 0")
            elif not nonzero:
                checked += 1
            elif w.s - ctx.n < s_min:
                inconclusive += 1
            else:
                converse.append(f"no path {v} -> {w} but Hom != 0")
    logger.debug(
        f"hom/path check on n={ctx.n}, s in [{s_min}, {s_max}]: "
        f"{paths} path pairs, {checked} without Hom, {inconclusive} inconclusive"
    )
    return {
        "pairs": len(win.vertices) ** 2,
        "path_pairs": paths,
        "checked": checked,
        "inconclusive": inconclusive,
        "violations": sorted(violations),
        "converse_violations": sorted(converse),
    }


def mesh_check(ctx: ModelContext, win: QuiverWindow) -> List[str]:
    """Each mesh ending in the window matches the almost-split sequences of its end vertex"""
    problems = []
    for w in win.vertices:
        if w.s - 1 < win.s_min:
            continue
        predecessors = []
        if w.row > 0:
            predecessors.append(QuiverVertex(w.n, w.s, w.row - 1))
        if w.row < w.n:
            predecessors.append(QuiverVertex(w.n, w.s - 1, w.row + 1))
        expected = {b for p in predecessors for b in summands_of(vertex_bundle(p, ctx))}
        found = set()
        for X in summands_of(vertex_bundle(w, ctx)):
            found.update(summands_of(almost_split_sequence(X).middle))
        if found != expected:
            problems.append(f"mesh ending at {w}: sequence middle {sorted(map(str, found))}, quiver {sorted(map(str, expected))}")
    return problems
