"""
Literal grammar for the command line.

    segment   [i,j]  [i,j]+  [i,j]-
    bundle    O(l1,l2,l3,l)  E(l1,l2,l3,l; w)
    element   l1,l2,l3,l
    range     a..b
    weights   4  2..6  2,3,5
    window    3n  9
"""

from typing import List, Optional, Tuple, Union

import pyparsing as pp

from bundles import Bundle, ext_bundle, line_bundle
from errors import DomainViolation, ParseError
from picard import ModelContext, PicardElement
from strip import FULL, MINUS, PLUS, Segment, make_segment

_INT = pp.Regex(r"[+-]?\d+").set_parse_action(lambda t: int(t[0])).set_name("integer")
_COMMA = pp.Suppress(",")

_ELEMENT = pp.Group(_INT + _COMMA + _INT + _COMMA + _INT + _COMMA + _INT)("coords")

_SEGMENT = (
    pp.Suppress("[")
    + _INT("i")
    + _COMMA
    + _INT("j")
    + pp.Suppress("]")
    + pp.Opt(pp.one_of("+ -"))("marker")
)

_LINE = pp.Suppress(pp.Literal("O") + "(") + _ELEMENT + pp.Suppress(")")
_EXT = pp.Suppress(pp.Literal("E") + "(") + _ELEMENT + pp.Suppress(";") + _INT("width") + pp.Suppress(")")

_RANGE = _INT("lo") + pp.Suppress("..") + _INT("hi")
_WEIGHT_LIST = _INT + pp.ZeroOrMore(_COMMA + _INT)
_WINDOW = pp.Regex(r"\d+").set_parse_action(lambda t: int(t[0]))("value") + pp.Opt(pp.Literal("n"))("per_n")

_MARKERS = {"+": PLUS, "-": MINUS}


def _parse(grammar: pp.ParserElement, text: str, what: str) -> pp.ParseResults:
    try:
        return grammar.parse_string(text.strip(), parse_all=True)
    except pp.ParseException as e:
        raise ParseError(f"malformed {what}", text, e.loc) from e


def parse_coords(text: str) -> Tuple[int, int, int, int]:
    """The four raw coordinates l1,l2,l3,l, before any context normalizes them"""
    return tuple(_parse(_ELEMENT, text, "Picard element")["coords"])


def parse_element(text: str, ctx: ModelContext) -> PicardElement:
    return ctx.element(*parse_coords(text))


def parse_segment(text: str, n: int) -> Segment:
    result = _parse(_SEGMENT, text, "segment")
    marker = _MARKERS.get(result.get("marker"), FULL)
    return make_segment(result["i"], result["j"], marker, n)


def parse_bundle(text: str, ctx: ModelContext) -> Bundle:
    stripped = text.strip()
    if stripped.startswith("E"):
        result = _parse(_EXT, text, "extension bundle")
        return ext_bundle(ctx.element(*result["coords"]), result["width"], ctx)
    result = _parse(_LINE, text, "line bundle")
    return line_bundle(ctx.element(*result["coords"]), ctx)


def parse_object(text: str, ctx: ModelContext) -> Union[Segment, Bundle]:
    """A segment or a bundle, told apart by the first character"""
    if text.strip().startswith("["):
        return parse_segment(text, ctx.n)
    if text.strip()[:1] in ("O", "E"):
        return parse_bundle(text, ctx)
    raise ParseError("expected a segment or a bundle", text, 0)


def parse_range(text: str) -> Tuple[int, int]:
    """'a..b' as an inclusive integer range"""
    result = _parse(_RANGE, text, "range a..b")
    lo, hi = result["lo"], result["hi"]
    if lo > hi:
        raise DomainViolation(f"empty range {text}")
    return lo, hi


def parse_weights(text: str) -> List[int]:
    """'4', '2..6' or '2,3,5'"""
    if ".." in text:
        lo, hi = parse_range(text)
        ns = list(range(lo, hi + 1))
    else:
        ns = list(_parse(_WEIGHT_LIST, text, "weights like 4, 2..6 or 2,3,5"))
    if any(n < 2 for n in ns):
        raise DomainViolation(f"weights must be at least 2, got {text}")
    return ns


def parse_window(text: str) -> Tuple[Optional[int], Optional[int]]:
    """'3n' gives a factor of n, a bare integer an absolute bound"""
    result = _parse(_WINDOW, text, "window like 3n or 9")
    value = result["value"]
    return (value, None) if result.get("per_n") else (None, value)
