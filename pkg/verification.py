"""
Acceptance suites run over windows of the strip.

Each suite is a plain function of SuiteParams returning how many cases it checked
and the counterexamples it found. VerificationRunner fans the requested weights
out on an executor and merges the results in a fixed order.
"""

import asyncio
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from bundles import (
    BundleSum,
    act,
    act_sum,
    dual,
    ext_bundle,
    gen_ext_bundle,
    line_bundle,
    phi,
    phi_hat,
    rank,
    segment_of,
    slope,
    tau,
    window_orbits,
)
from errors import DomainViolation
from homext import ALGEBRAIC, GEOMETRIC, euler_form, ext_dim, hom_dim, positive_intersections, rank2_middle_term
from logging_config import get_logger
from picard import ModelContext, delta_degree, degree_unit, dim_R, dim_R_bruteforce
from quiver import apply_auto, hom_path_report, mesh_check, vertex_bundle, window
from sequences import (
    EXTENSION_FAMILIES,
    LINE_SQUARE,
    appendix_sequences,
    almost_split_sequence,
    crossing_sequence,
    injective_hull,
    probe_line_bundles,
    projective_cover,
    quadrilateral_sequence,
    triangle_sequence,
    verify_sequence,
)
from strip import FULL, MCGElement, OrbitClass, Segment, mcg_act, mcg_compose, psi_lift
from wpl_config import WplConfig

logger = get_logger(__name__)

# draws allowed per crossing pair before the sequences suite gives up
CROSSING_ATTEMPTS = 50

SuiteOutcome = Tuple[int, List[str]]


@dataclass(frozen=True)
class SuiteParams:
    n: int
    base: Tuple[int, int, int, int]
    bound: int
    probe_bound: int
    samples: int
    seed: int
    floor: int = 500
    dim_r_samples: int = 10000

    def context(self) -> ModelContext:
        return ModelContext.create(self.n, self.base)

    def rng(self) -> np.random.Generator:
        # one stream per weight so that runs do not depend on scheduling
        return np.random.default_rng([self.seed, self.n])


@dataclass
class SuiteResult:
    suite: str
    ns: List[int]
    checked: int = 0
    counterexamples: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def to_json(self) -> Dict[str, object]:
        return {
            "suite": self.suite,
            "n": self.ns,
            "checked": self.checked,
            "passed": self.passed,
            "counterexamples": self.counterexamples,
        }


def _window_bundles(ctx: ModelContext, bound: int):
    return [phi_hat(o, ctx) for o in window_orbits(ctx, bound)]


def suite_oracle_equivalence(p: SuiteParams) -> SuiteOutcome:
    ctx = p.context()
    bundles = _window_bundles(ctx, p.bound)
    bad, checked = [], 0
    for X in bundles:
        for Y in bundles:
            checked += 1
            geo, alg = ext_dim(X, Y, GEOMETRIC), ext_dim(X, Y, ALGEBRAIC)
            if geo != alg:
                bad.append(f"Ext({X}, {Y}): intersection index {geo}, algebraic {alg}")
    return checked, bad


def suite_serre_duality(p: SuiteParams) -> SuiteOutcome:
    ctx = p.context()
    bundles = _window_bundles(ctx, p.bound)
    bad, checked = [], 0
    for X in bundles:
        tX = tau(X)
        for Y in bundles:
            checked += 1
            lhs = ext_dim(X, Y)
            rhs = euler_form(Y, tX) + ext_dim(Y, tX)
            if lhs != rhs:
                bad.append(f"Ext({X}, {Y}) = {lhs} but Hom({Y}, tau X) = {rhs}")
    return checked, bad


def suite_exceptional(p: SuiteParams) -> SuiteOutcome:
    ctx = p.context()
    bad, checked = [], 0
    for X in _window_bundles(ctx, p.bound):
        checked += 1
        ext = ext_dim(X, X)
        end = euler_form(X, X) + ext
        if ext != 0 or end != 1:
            bad.append(f"{X}: Ext = {ext}, End = {end}")
    return checked, bad


def suite_slope_monotone(p: SuiteParams) -> SuiteOutcome:
    ctx = p.context()
    bundles = _window_bundles(ctx, p.bound)
    slopes = {X: slope(X) for X in bundles}
    bad, checked = [], 0
    for X in bundles:
        for Y in bundles:
            checked += 1
            if slopes[X] > slopes[Y] and hom_dim(X, Y) > 0:
                bad.append(f"Hom({X}, {Y}) != 0 with slopes {slopes[X]} > {slopes[Y]}")
    return checked, bad


def suite_identifications(p: SuiteParams) -> SuiteOutcome:
    ctx = p.context()
    n = ctx.n
    bad, checked = [], 0
    for eps in (0, 1):
        for r in (0, 1):
            for m in range(-p.bound, p.bound + 1):
                L = ctx.base + eps * ctx.star + r * ctx.x1 + m * ctx.x3
                for w in range(n - 1):
                    x = w * ctx.x3
                    rest = ctx.delta_dom - x
                    forms = [
                        ext_bundle(L, w, ctx),
                        ext_bundle(L + ctx.star, w, ctx),
                        ext_bundle(L + x + ctx.x3 - ctx.x1, rest.l3, ctx),
                        ext_bundle(L + x + ctx.x3 - ctx.x2, rest.l3, ctx),
                    ]
                    checked += 1
                    if len(set(forms)) != 1:
                        bad.append(f"E_({L})<{w}x3> descriptors disagree: {[str(f) for f in forms]}")
                for w in range(n):
                    x = w * ctx.x3
                    checked += 1
                    lhs = gen_ext_bundle(L, x, ctx)
                    rhs = gen_ext_bundle(L + x - ctx.x1 + ctx.x3, ctx.delta_dom - x, ctx)
                    if lhs != rhs:
                        bad.append(f"generalized E_({L})<{w}x3>: {lhs} != {rhs}")
    return checked, bad


def suite_equivariance(p: SuiteParams) -> SuiteOutcome:
    ctx = p.context()
    n = ctx.n
    rng = p.rng()
    orbits = window_orbits(ctx, p.bound)
    bad, checked = [], 0
    for _ in range(p.samples):
        a = MCGElement.of(int(rng.integers(0, 2)), int(rng.integers(-2 * n, 2 * n + 1)), n)
        b = MCGElement.of(int(rng.integers(0, 2)), int(rng.integers(-2 * n, 2 * n + 1)), n)
        shift = psi_lift(a, ctx)
        for o in orbits:
            checked += 1
            moved = phi_hat(mcg_act(a, o), ctx)
            expected = act(phi_hat(o, ctx), shift)
            if moved != expected:
                bad.append(f"{a} on {o}: {moved} != {expected}")
            if mcg_act(mcg_compose(a, b), o) != mcg_act(a, mcg_act(b, o)):
                bad.append(f"({a})({b}) on {o} is not the composite action")
    return checked, bad


def suite_cover_hull(p: SuiteParams) -> SuiteOutcome:
    ctx = p.context()
    probes = probe_line_bundles(ctx, p.probe_bound)
    bad, checked = [], 0
    for o in window_orbits(ctx, p.bound):
        if o.rep.marker != FULL:
            continue
        X = phi_hat(o, ctx)
        checked += 1
        cover, kernel, seq = projective_cover(X)
        hull, cokernel, hull_seq = injective_hull(X)
        for report in (verify_sequence(seq, probes), verify_sequence(hull_seq, probes)):
            bad.extend(f"{X}: {f}" for f in report.failures)
        for P in probes:
            if hom_dim(P, X) > 0 and ext_dim(P, kernel) != 0:
                bad.append(f"{X}: Ext({P}, kernel {kernel}) != 0")
            if hom_dim(X, P) > 0 and ext_dim(cokernel, P) != 0:
                bad.append(f"{X}: Ext(cokernel {cokernel}, {P}) != 0")
        for summands in (cover.summands, hull.summands):
            for u, A in enumerate(summands):
                for B in summands[u + 1 :]:
                    if hom_dim(A, B) or hom_dim(B, A):
                        bad.append(f"{X}: summands {A} and {B} are not Hom-orthogonal")
        if injective_hull(kernel)[0] != cover:
            bad.append(f"{X}: hull of the kernel differs from the cover")
        if projective_cover(cokernel)[0] != hull:
            bad.append(f"{X}: cover of the cokernel differs from the hull")
    return checked, bad


def _draw_int(rng: np.random.Generator, lo: int, hi: int) -> int:
    """Uniform integer in [lo, hi]"""
    return int(rng.integers(lo, hi + 1))


def suite_sequences(p: SuiteParams) -> SuiteOutcome:
    ctx = p.context()
    n = ctx.n
    rng = p.rng()
    probes = probe_line_bundles(ctx, p.probe_bound)
    orbits = window_orbits(ctx, p.bound)
    count = max(p.samples, p.floor)
    bad, checked = [], 0

    def check(seq) -> None:
        nonlocal checked
        checked += 1
        report = verify_sequence(seq, probes)
        bad.extend(f"{seq}: {f}" for f in report.failures)

    for _ in range(count):
        i, j = _draw_int(rng, -p.bound, p.bound), _draw_int(rng, -p.bound, p.bound)
        k1, k2 = _draw_int(rng, 1, 2 * n), _draw_int(rng, 1, 2 * n)
        seq, coincide = quadrilateral_sequence(i, j, k1, k2, ctx)
        check(seq)
        if coincide != (phi(i - k1, j, ctx) == phi(i, j + k2, ctx)):
            bad.append(f"quadrilateral ({i},{j},{k1},{k2}): coincidence predicate says {coincide}")

    # only crossing pairs count towards the floor
    crossings, attempts = 0, 0
    while crossings < count and attempts < CROSSING_ATTEMPTS * count:
        attempts += 1
        a = orbits[_draw_int(rng, 0, len(orbits) - 1)].rep
        b = orbits[_draw_int(rng, 0, len(orbits) - 1)].rep
        if positive_intersections(a, OrbitClass.of(b)) == 0:
            continue
        crossings += 1
        check(crossing_sequence(a, b, ctx))
    logger.debug(f"n={n}: {crossings} crossing pairs in {attempts} draws")
    if crossings < count:
        bad.append(f"only {crossings} of {count} crossing pairs found in {attempts} draws")

    for _ in range(count):
        i, j = _draw_int(rng, -p.bound, p.bound), _draw_int(rng, -p.bound, p.bound)
        if (i + j) % n == 0:
            j += 1
        k = _draw_int(rng, -2 * (p.bound // n) - 1, 2 * (p.bound // n) + 1)
        check(triangle_sequence(i, j, k, ctx))

    for family in EXTENSION_FAMILIES:
        for _ in range(count):
            Lt = ctx.element(_draw_int(rng, 0, 1), _draw_int(rng, 0, 1), _draw_int(rng, -p.bound, p.bound), 0)
            if family == LINE_SQUARE:
                x = _draw_int(rng, 0, 2 * n) * ctx.x3
                y = _draw_int(rng, 1, 2 * n) * ctx.x3
                check(appendix_sequences(family, Lt, x, ctx, y))
            else:
                x = _draw_int(rng, -n, 2 * n) * ctx.x3
                check(appendix_sequences(family, Lt, x, ctx))
    return checked, bad


def suite_quiver(p: SuiteParams) -> SuiteOutcome:
    ctx = p.context()
    n = ctx.n
    # the window spans at least 2n columns
    s_bound = max(n, p.bound // n)
    win = window(ctx, -s_bound, s_bound)
    bad, checked = [], 0
    for v in win.vertices:
        checked += 1
        if apply_auto(0, 2, v) != apply_auto(n, 0, v):
            bad.append(f"rho^2 and tau_F^n differ on {v}")
        if apply_auto(1, 1, v) != apply_auto(0, 1, apply_auto(1, 0, v)):
            bad.append(f"tau_F and rho do not commute on {v}")
        here = vertex_bundle(v, ctx)
        if len(here) != v.valuation:
            bad.append(f"{v} has valuation {v.valuation} but {len(here)} summands")
        if vertex_bundle(apply_auto(1, 0, v), ctx) != act_sum(here, ctx.x3):
            bad.append(f"tau_F at {v} is not the x3-shift")
        if vertex_bundle(apply_auto(0, 1, v), ctx) != act_sum(here, ctx.x1):
            bad.append(f"rho at {v} is not the x1-shift")
    report = hom_path_report(ctx, -s_bound, s_bound)
    checked += report["path_pairs"] + report["checked"]
    bad.extend(report["violations"])
    bad.extend(report["converse_violations"])
    bad.extend(mesh_check(ctx, win))
    return checked, bad


def suite_almost_split(p: SuiteParams) -> SuiteOutcome:
    ctx = p.context()
    probes = probe_line_bundles(ctx, p.probe_bound)
    bad, checked = [], 0
    for X in _window_bundles(ctx, p.bound):
        checked += 1
        seq = almost_split_sequence(X)
        if ext_dim(X, tau(X)) < 1:
            bad.append(f"Ext({X}, tau X) = 0")
        if seq.left != BundleSum.of([tau(X)]):
            bad.append(f"{X}: left term {seq.left} is not tau X")
        bad.extend(f"{seq}: {f}" for f in verify_sequence(seq, probes).failures)
    return checked, bad


def suite_dim_r_oracle(p: SuiteParams) -> SuiteOutcome:
    ctx = p.context()
    rng = p.rng()
    bad = []
    for _ in range(p.dim_r_samples):
        x = ctx.element(_draw_int(rng, 0, 1), _draw_int(rng, 0, 1), _draw_int(rng, 0, ctx.n - 1), _draw_int(rng, -3, 6))
        if dim_R(x) != dim_R_bruteforce(x):
            bad.append(f"dim R_({x}): formula {dim_R(x)}, monomials {dim_R_bruteforce(x)}")
    return p.dim_r_samples, bad


def suite_duality(p: SuiteParams) -> SuiteOutcome:
    ctx = p.context()
    compatible = ctx.is_duality_compatible
    if not compatible:
        logger.warning(f"base {ctx.base} is not duality compatible; only checking that duality is an involution")
    bad, checked = [], 0
    for o in window_orbits(ctx, p.bound):
        checked += 1
        X = phi_hat(o, ctx)
        if dual(dual(X)) != X:
            bad.append(f"dual is not an involution on {X}")
        if not compatible:
            continue
        s = o.rep
        mirrored = phi_hat(OrbitClass.of(Segment(s.n, s.j, s.i, s.marker)), ctx)
        if dual(X) != mirrored:
            bad.append(f"dual of {X} from {s} is {dual(X)}, expected {mirrored}")
        if (dual(X) == X) != (s.i == s.j):
            bad.append(f"{X} from {s}: self-dual is {dual(X) == X}")
    return checked, bad


def suite_slope_law(p: SuiteParams) -> SuiteOutcome:
    n = p.n
    unit = degree_unit(n)
    bad, checked = [], 0
    probe_ctx = ModelContext.create(n)
    bases = [probe_ctx.x3, -probe_ctx.omega, probe_ctx.zero]
    for a in bases:
        ctx = ModelContext(n, a)
        for o in window_orbits(ctx, p.bound):
            checked += 1
            s = o.rep
            expected = Fraction((s.j - s.i - 2) * unit, 2 * n) + delta_degree(a)
            got = slope(phi_hat(o, ctx))
            if got != expected:
                bad.append(f"L0 = O({a}), {s}: slope {got}, expected {expected}")
    return checked, bad


def suite_bijection(p: SuiteParams) -> SuiteOutcome:
    ctx = p.context()
    orbits = window_orbits(ctx, p.bound)
    bad = []
    seen = {}
    for o in orbits:
        X = phi_hat(o, ctx)
        if segment_of(X) != o:
            bad.append(f"{o} -> {X} -> {segment_of(X)}")
        if X in seen:
            bad.append(f"{o} and {seen[X]} both map to {X}")
        seen[X] = o
    return len(orbits), bad


def suite_rank2_middle(p: SuiteParams) -> SuiteOutcome:
    ctx = p.context()
    n = ctx.n
    probes = probe_line_bundles(ctx, p.probe_bound)
    bad, checked = [], 0
    for P in probe_line_bundles(ctx, p.bound):
        x = P.twist
        for k in range(1, n):
            for l in (-1, 0, 1):
                y = x + ctx.x1 + ctx.x2 + k * ctx.x3 + l * ctx.c
                checked += 1
                M = rank2_middle_term(x, y, ctx)
                Ox, Oy = line_bundle(x, ctx), line_bundle(y, ctx)
                if rank(M) != 2:
                    bad.append(f"middle of O({y}) by O({x}) has rank {rank(M)}")
                for Q in probes:
                    if euler_form(Q, M) != euler_form(Q, Ox) + euler_form(Q, Oy):
                        bad.append(f"middle {M} of O({y}) by O({x}) has the wrong class against {Q}")
                        break
                if ext_dim(Oy, Ox) < 1:
                    bad.append(f"Ext(O({y}), O({x})) = 0")
    return checked, bad


SUITES: Dict[str, Callable[[SuiteParams], SuiteOutcome]] = {
    "oracle-equivalence": suite_oracle_equivalence,
    "serre-duality": suite_serre_duality,
    "exceptional": suite_exceptional,
    "slope-monotone": suite_slope_monotone,
    "identifications": suite_identifications,
    "equivariance": suite_equivariance,
    "cover-hull": suite_cover_hull,
    "sequences": suite_sequences,
    "quiver": suite_quiver,
    "almost-split": suite_almost_split,
    "dim-r-oracle": suite_dim_r_oracle,
    "duality": suite_duality,
    "slope-law": suite_slope_law,
    "bijection": suite_bijection,
    "rank2-middle": suite_rank2_middle,
}


def run_suite(name: str, params: SuiteParams) -> SuiteOutcome:
    """Entry point for executor workers"""
    return SUITES[name](params)


class VerificationRunner:
    """Runs one suite for several weights, one executor job per weight"""

    def __init__(self, config: WplConfig) -> None:
        self.config = config
        self.logger = get_logger(__name__)

    def params_for(self, n: int, factor: Optional[int] = None, bound: Optional[int] = None) -> SuiteParams:
        if bound is None:
            bound = (factor if factor is not None else self.config.window_factor) * n
        base = ModelContext.create(n, self.config.base_coords()).base
        return SuiteParams(
            n=n,
            base=base.as_tuple(),
            bound=bound,
            probe_bound=self.config.probe_factor * n,
            samples=self.config.sample_count,
            seed=self.config.seed,
            floor=self.config.sequence_floor,
            dim_r_samples=self.config.dim_r_samples,
        )

    async def run(
        self,
        suite: str,
        ns: Sequence[int],
        factor: Optional[int] = None,
        bound: Optional[int] = None,
    ) -> SuiteResult:
        if suite not in SUITES:
            raise DomainViolation(f"unknown suite {suite!r}; expected one of {', '.join(SUITES)}")
        ns = sorted(set(ns))
        params = [self.params_for(n, factor, bound) for n in ns]
        self.logger.info(f"Running suite {suite} for n in {ns}")

        loop = asyncio.get_event_loop()
        executor = ProcessPoolExecutor(max_workers=self.config.workers) if self.config.workers else None
        try:
            outcomes = await asyncio.gather(
                *(loop.run_in_executor(executor, run_suite, suite, p) for p in params)
            )
        finally:
            if executor is not None:
                executor.shutdown()

        result = SuiteResult(suite, list(ns))
        for p, (checked, bad) in zip(params, outcomes):
            result.checked += checked
            result.counterexamples.extend(f"n={p.n}: {b}" for b in bad)
        result.counterexamples.sort()

        if result.passed:
            self.logger.info(f"Suite {suite} passed: {result.checked} cases checked")
        else:
            self.logger.error(f"Suite {suite} failed with {len(result.counterexamples)} counterexamples")
        return result
