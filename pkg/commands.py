"""
Command implementations behind the wpl CLI.

Every cmd_* returns a CommandResult; library errors become error results with the
exit code of the error class, so nothing here raises for bad input.
"""

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

import aiofiles

from bundles import (
    Bundle,
    BundleSum,
    act,
    bundle_of_segment,
    degree,
    dual,
    rank,
    segment_of,
    slope,
    tau,
    tau_inv,
)
from drawing import DiagramRenderer
from errors import DomainViolation, VerificationFailure, WplError
from homext import ALGEBRAIC, GEOMETRIC, METHODS, ext_dim, hom_dim
from literals import parse_element, parse_object, parse_range, parse_segment, parse_weights, parse_window
from logging_config import get_logger
from picard import ModelContext
from quiver import mesh_check, vertex_bundle, window
from sequences import (
    ALMOST_SPLIT,
    CROSSING,
    EXTENSION_FAMILIES,
    FAMILY_ALIASES,
    QUADRILATERAL,
    TRIANGLE,
    ExactSequence,
    almost_split_sequence,
    appendix_sequences,
    crossing_sequence,
    injective_hull,
    probe_line_bundles,
    projective_cover,
    quadrilateral_sequence,
    triangle_sequence,
    verify_sequence,
)
from strip import Segment
from verification import SUITES, VerificationRunner
from wpl_config import WplConfig, write_default_config

logger = get_logger(__name__)

BOTH = "both"
SEQUENCE_KINDS = (QUADRILATERAL, CROSSING, TRIANGLE, ALMOST_SPLIT) + EXTENSION_FAMILIES + tuple(FAMILY_ALIASES)

OK = "ok"
ERROR = "error"


@dataclass
class CommandResult:
    status: str
    payload: object = None
    diagnostics: List[str] = field(default_factory=list)
    exit_code: int = 0
    # raw output that replaces the JSON document, e.g. SVG sent to stdout
    text: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.status == OK

    def to_json(self) -> Dict[str, object]:
        return {"status": self.status, "payload": self.payload, "diagnostics": self.diagnostics}


def _error(e: WplError) -> CommandResult:
    return CommandResult(ERROR, None, [str(e)], e.exit_code)


def _guard(command: str, thunk: Callable[[], object]) -> CommandResult:
    logger.debug(f"Running {command}")
    try:
        payload = thunk()
    except WplError as e:
        logger.warning(f"{command} failed: {e}")
        return _error(e)
    return CommandResult(OK, payload)


def _bundle(text: str, ctx: ModelContext) -> Bundle:
    obj = parse_object(text, ctx)
    if isinstance(obj, Segment):
        return bundle_of_segment(obj, ctx)
    return obj


def describe(b: Bundle) -> Dict[str, object]:
    """Both faces of an indecomposable plus its numerical invariants"""
    o = segment_of(b)
    return {
        "orbit": {"text": str(o), **o.to_json()},
        "bundle": {"text": str(b), **b.to_json()},
        "rank": rank(b),
        "degree": degree(b),
        "slope": str(slope(b)),
    }


def _sum_json(s: BundleSum) -> Dict[str, object]:
    return {"text": str(s), "summands": s.to_json(), "rank": rank(s), "degree": degree(s)}


def cmd_classify(ctx: ModelContext, literal: str) -> CommandResult:
    return _guard("classify", lambda: describe(_bundle(literal, ctx)))


def _dimensions(ctx: ModelContext, x: str, y: str, method: str, measure: Callable) -> CommandResult:
    if method not in METHODS + (BOTH,):
        return _error(DomainViolation(f"unknown method {method!r}"))

    def compute() -> Dict[str, object]:
        X, Y = _bundle(x, ctx), _bundle(y, ctx)
        payload: Dict[str, object] = {"X": str(X), "Y": str(Y)}
        if method == BOTH:
            geo, alg = measure(X, Y, GEOMETRIC), measure(X, Y, ALGEBRAIC)
            payload.update({"geometric": geo, "algebraic": alg, "agree": geo == alg})
        else:
            payload[method] = measure(X, Y, method)
        return payload

    result = _guard(measure.__name__, compute)
    if result.ok and result.payload.get("agree") is False:
        e = VerificationFailure(f"geometric and algebraic dimensions disagree for {x}, {y}")
        logger.error(str(e))
        return CommandResult(ERROR, result.payload, [str(e)], e.exit_code)
    return result


def cmd_ext(ctx: ModelContext, x: str, y: str, method: str = GEOMETRIC) -> CommandResult:
    return _dimensions(ctx, x, y, method, ext_dim)


def cmd_hom(ctx: ModelContext, x: str, y: str, method: str = GEOMETRIC) -> CommandResult:
    return _dimensions(ctx, x, y, method, hom_dim)


def cmd_act(ctx: ModelContext, literal: str, element: str) -> CommandResult:
    def compute():
        b = _bundle(literal, ctx)
        shift = parse_element(element, ctx)
        return {"from": describe(b), "by": shift.to_json(), "to": describe(act(b, shift))}

    return _guard("act", compute)


def cmd_dual(ctx: ModelContext, literal: str) -> CommandResult:
    result = _guard("dual", lambda: describe(dual(_bundle(literal, ctx))))
    if result.ok and not ctx.is_duality_compatible:
        result.diagnostics.append(
            f"base {ctx.base} is not duality compatible; the dual is not the mirrored segment"
        )
    return result


def cmd_tau(ctx: ModelContext, literal: str, inverse: bool = False) -> CommandResult:
    move = tau_inv if inverse else tau
    return _guard("tau", lambda: describe(move(_bundle(literal, ctx))))


def _sequence_payload(seq: ExactSequence, ctx: ModelContext, probe_bound: int) -> Dict[str, object]:
    report = verify_sequence(seq, probe_line_bundles(ctx, probe_bound))
    return {"text": str(seq), "sequence": seq.to_json(), "report": report.to_json()}


def cmd_cover(ctx: ModelContext, literal: str, probe_bound: int) -> CommandResult:
    def compute():
        cover, kernel, seq = projective_cover(_bundle(literal, ctx))
        return {"cover": _sum_json(cover), "kernel": describe(kernel), **_sequence_payload(seq, ctx, probe_bound)}

    return _guard("cover", compute)


def cmd_hull(ctx: ModelContext, literal: str, probe_bound: int) -> CommandResult:
    def compute():
        hull, cokernel, seq = injective_hull(_bundle(literal, ctx))
        return {"hull": _sum_json(hull), "cokernel": describe(cokernel), **_sequence_payload(seq, ctx, probe_bound)}

    return _guard("hull", compute)


def _need(value, flag: str, kind: str):
    if value is None:
        raise DomainViolation(f"sequence {kind} needs {flag}")
    return value


def cmd_sequence(
    ctx: ModelContext,
    kind: str,
    probe_bound: int,
    seg: Optional[str] = None,
    other: Optional[str] = None,
    k: Optional[int] = None,
    k1: Optional[int] = None,
    k2: Optional[int] = None,
    obj: Optional[str] = None,
    twist: Optional[str] = None,
    x: Optional[str] = None,
    y: Optional[str] = None,
) -> CommandResult:
    """Build one sequence by kind and verify it against the probe line bundles"""

    def compute():
        payload: Dict[str, object] = {}
        if kind == QUADRILATERAL:
            s = parse_segment(_need(seg, "--seg", kind), ctx.n)
            seq, coincide = quadrilateral_sequence(s.i, s.j, _need(k1, "--k1", kind), _need(k2, "--k2", kind), ctx)
            payload["coincide"] = coincide
        elif kind == CROSSING:
            a = parse_segment(_need(seg, "--seg", kind), ctx.n)
            b = parse_segment(_need(other, "--other", kind), ctx.n)
            seq = crossing_sequence(a, b, ctx)
        elif kind == TRIANGLE:
            s = parse_segment(_need(seg, "--seg", kind), ctx.n)
            seq = triangle_sequence(s.i, s.j, _need(k, "--k", kind), ctx)
        elif kind == ALMOST_SPLIT:
            seq = almost_split_sequence(_bundle(_need(obj, "--object", kind), ctx))
        elif kind in EXTENSION_FAMILIES or kind in FAMILY_ALIASES:
            Lt = parse_element(_need(twist, "--twist", kind), ctx)
            xe = parse_element(_need(x, "--x", kind), ctx)
            ye = parse_element(y, ctx) if y is not None else None
            seq = appendix_sequences(kind, Lt, xe, ctx, ye)
        else:
            raise DomainViolation(f"unknown sequence kind {kind!r}; expected one of {', '.join(SEQUENCE_KINDS)}")
        payload.update(_sequence_payload(seq, ctx, probe_bound))
        return payload

    result = _guard("sequence", compute)
    if result.ok and not result.payload["report"]["ok"]:
        e = VerificationFailure(f"{kind} sequence failed its checks")
        result = CommandResult(ERROR, result.payload, [str(e)] + result.payload["report"]["failures"], e.exit_code)
    return result


async def cmd_verify(
    config: WplConfig,
    suite: str,
    weights: Optional[str] = None,
    window_text: Optional[str] = None,
) -> CommandResult:
    try:
        if suite not in SUITES:
            raise DomainViolation(f"unknown suite {suite!r}; expected one of {', '.join(SUITES)}")
        ns = parse_weights(weights) if weights else [config.n]
        factor, bound = parse_window(window_text) if window_text else (None, None)
        result = await VerificationRunner(config).run(suite, ns, factor=factor, bound=bound)
    except WplError as e:
        logger.warning(f"verify failed: {e}")
        return _error(e)
    if result.passed:
        return CommandResult(OK, result.to_json())
    e = VerificationFailure(f"suite {suite} found {len(result.counterexamples)} counterexamples")
    return CommandResult(ERROR, result.to_json(), [str(e)], e.exit_code)


async def _write_text(path: str, text: str) -> None:
    async with aiofiles.open(path, "w") as f:
        await f.write(text)


async def cmd_draw(
    config: WplConfig,
    ctx: ModelContext,
    what: str,
    range_text: Optional[str] = None,
    out: Optional[str] = None,
    overlays: Tuple[str, ...] = (),
    orbit_of: Optional[str] = None,
) -> CommandResult:
    """Render the strip or a quiver window as SVG, to a file or to stdout"""
    renderer = DiagramRenderer(config.svg_scale, config.strip_height)
    try:
        if what == "strip":
            lo, hi = parse_range(range_text) if range_text else (-ctx.n, 2 * ctx.n)
            segments: List[Segment] = [parse_segment(s, ctx.n) for s in overlays]
            orbit = parse_segment(orbit_of, ctx.n) if orbit_of else None
            svg = renderer.render_strip(ctx, lo, hi, segments, orbit)
        elif what == "quiver":
            lo, hi = parse_range(range_text) if range_text else (0, 2)
            svg = renderer.render_quiver(window(ctx, lo, hi))
        else:
            raise DomainViolation(f"can only draw strip or quiver, not {what!r}")
    except WplError as e:
        logger.warning(f"draw failed: {e}")
        return _error(e)

    if out is None or out == "-":
        return CommandResult(OK, {"what": what, "range": [lo, hi]}, text=svg)
    try:
        await _write_text(out, svg)
    except OSError as e:
        logger.error(f"Could not write {out}: {e}")
        return CommandResult(ERROR, None, [f"could not write {out}: {e}"], 1)
    logger.info(f"{what.capitalize()} diagram saved as: {out}")
    return CommandResult(OK, {"what": what, "range": [lo, hi], "path": out, "bytes": len(svg.encode())})


def cmd_quiver(ctx: ModelContext, s_min: int, s_max: int) -> CommandResult:
    def compute():
        win = window(ctx, s_min, s_max)
        payload = win.to_json()
        payload["bundles"] = {str(v): str(vertex_bundle(v, ctx)) for v in win.vertices}
        payload["mesh_problems"] = mesh_check(ctx, win)
        return payload

    return _guard("quiver", compute)


def cmd_init_config(path: str) -> CommandResult:
    try:
        written = write_default_config(path)
    except OSError as e:
        logger.error(f"Could not write {path}: {e}")
        return CommandResult(ERROR, None, [f"could not write {path}: {e}"], 1)
    return CommandResult(OK, {"path": written})
