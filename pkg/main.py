#!/usr/bin/env python3
"""
wpl: vector bundles on the weighted projective line X(2,2,n) through the marked strip.
Queries print one JSON document on stdout; logs go to stderr and the log file.
Exit codes: 0 ok, 1 domain error, 2 parse error, 3 verification failure.
"""

import argparse
import asyncio
import dataclasses
import json
import sys
from typing import List, Optional

import aiofiles

from commands import (
    BOTH,
    SEQUENCE_KINDS,
    CommandResult,
    cmd_act,
    cmd_classify,
    cmd_cover,
    cmd_draw,
    cmd_dual,
    cmd_ext,
    cmd_hom,
    cmd_hull,
    cmd_init_config,
    cmd_quiver,
    cmd_sequence,
    cmd_tau,
    cmd_verify,
)
from errors import WplError
from homext import METHODS
from literals import parse_element
from logging_config import get_logger, setup_logging
from picard import ModelContext
from verification import SUITES
from wpl_config import WplConfig, load_config_from_file

logger = get_logger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wpl",
        description="Vector bundles on X(2,2,n) and their marked-strip model",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  %(prog)s --n 3 classify "[0,1]"                   # bundle of a segment orbit
  %(prog)s --n 3 ext "[0,1]" "O(0,0,0,0)" --method both
  %(prog)s --n 3 hom "O(0,0,0,0)" "O(0,0,0,1)"      # dim Hom(O, O(c)) = 2
  %(prog)s --n 3 sequence triangle --seg "[0,1]" --k 0
  %(prog)s verify --suite oracle-equivalence --n 2..6 --window 3n
  %(prog)s --n 4 draw quiver --range 0..2 --svg quiver.svg
  %(prog)s init-config wpl_config.yaml              # write default config
        """,
    )
    parser.add_argument("--n", type=int, help="weight n >= 2 (default from config, else 3)")
    parser.add_argument("--base", type=str, help="base line bundle twist l1,l2,l3,l (default 0,0,1,0)")
    parser.add_argument(
        "--config",
        "-c",
        type=str,
        default="wpl_config.yaml",
        help="Path to configuration file (default: wpl_config.yaml)",
    )
    parser.add_argument("--log-level", type=str, help="DEBUG, INFO, WARNING or ERROR")
    parser.add_argument("--log-dir", type=str, help="directory for wpl.log")
    parser.add_argument("--no-log-file", action="store_true", help="log to stderr only")
    parser.add_argument("--out", "-o", type=str, help="write the output to this file instead of stdout")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="both faces of a segment or bundle")
    p.add_argument("literal")

    for name in ("ext", "hom"):
        p = sub.add_parser(name, help=f"dim {name.capitalize()}(X, Y)")
        p.add_argument("x")
        p.add_argument("y")
        p.add_argument("--method", choices=METHODS + (BOTH,), default=METHODS[0])

    p = sub.add_parser("act", help="degree shift by a Picard element")
    p.add_argument("literal")
    p.add_argument("element")

    p = sub.add_parser("dual", help="vector bundle duality")
    p.add_argument("literal")

    p = sub.add_parser("tau", help="Auslander-Reiten translation")
    p.add_argument("literal")
    p.add_argument("--inverse", action="store_true")

    for name, title in (("cover", "projective cover"), ("hull", "injective hull")):
        p = sub.add_parser(name, help=f"{title} in the Frobenius structure")
        p.add_argument("literal")

    p = sub.add_parser("sequence", help="build and check an exact sequence")
    p.add_argument("kind", choices=SEQUENCE_KINDS)
    p.add_argument("--seg", type=str)
    p.add_argument("--other", type=str)
    p.add_argument("--k", type=int)
    p.add_argument("--k1", type=int)
    p.add_argument("--k2", type=int)
    p.add_argument("--object", dest="obj", type=str)
    p.add_argument("--twist", type=str)
    p.add_argument("--x", type=str)
    p.add_argument("--y", type=str)

    p = sub.add_parser("verify", help="run an acceptance suite")
    p.add_argument("--suite", required=True, choices=sorted(SUITES))
    p.add_argument("--n", dest="weights", type=str, help="weights: 4, 2..6 or 2,3,5")
    p.add_argument("--window", type=str, help="3n for a multiple of n, or an absolute bound")
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int)

    p = sub.add_parser("draw", help="deterministic SVG of the strip or the quiver")
    p.add_argument("what", choices=("strip", "quiver"))
    p.add_argument("--range", dest="range_text", type=str, help="a..b in x (strip) or s (quiver)")
    p.add_argument("--svg", type=str, help="SVG path, - for stdout")
    p.add_argument("--overlay", action="append", default=[], help="segment to draw, repeatable")
    p.add_argument("--orbit", type=str, help="segment whose orbit is drawn dashed")

    p = sub.add_parser("quiver", help="JSON dump of a quiver window")
    p.add_argument("--s-min", type=int, default=0)
    p.add_argument("--s-max", type=int, default=2)

    p = sub.add_parser("init-config", help="write a default configuration file")
    p.add_argument("path", nargs="?", default="wpl_config.yaml")
    return parser


def merge_config(args: argparse.Namespace) -> WplConfig:
    """CLI flags over the config file over the defaults"""
    config = load_config_from_file(args.config)
    overrides = {
        "n": args.n,
        "base": args.base,
        "log_level": args.log_level,
        "log_dir": args.log_dir,
        "sample_count": getattr(args, "samples", None),
        "seed": getattr(args, "seed", None),
        "workers": getattr(args, "workers", None),
    }
    config = dataclasses.replace(config, **{k: v for k, v in overrides.items() if v is not None})
    if args.no_log_file:
        config = dataclasses.replace(config, log_dir=None)
    return config


def make_context(config: WplConfig) -> ModelContext:
    plain = ModelContext.create(config.n)
    ctx = ModelContext(config.n, parse_element(config.base, plain))
    if not ctx.is_duality_compatible:
        logger.warning(
            f"base {ctx.base} is not duality compatible; dual() no longer mirrors segments"
        )
    return ctx


async def dispatch(args: argparse.Namespace, config: WplConfig) -> CommandResult:
    if args.command == "init-config":
        return cmd_init_config(args.path)
    if args.command == "verify":
        return await cmd_verify(config, args.suite, args.weights, args.window)

    ctx = make_context(config)
    probe_bound = config.probe_factor * ctx.n
    if args.command == "classify":
        return cmd_classify(ctx, args.literal)
    if args.command == "ext":
        return cmd_ext(ctx, args.x, args.y, args.method)
    if args.command == "hom":
        return cmd_hom(ctx, args.x, args.y, args.method)
    if args.command == "act":
        return cmd_act(ctx, args.literal, args.element)
    if args.command == "dual":
        return cmd_dual(ctx, args.literal)
    if args.command == "tau":
        return cmd_tau(ctx, args.literal, args.inverse)
    if args.command == "cover":
        return cmd_cover(ctx, args.literal, probe_bound)
    if args.command == "hull":
        return cmd_hull(ctx, args.literal, probe_bound)
    if args.command == "sequence":
        return cmd_sequence(
            ctx,
            args.kind,
            probe_bound,
            seg=args.seg,
            other=args.other,
            k=args.k,
            k1=args.k1,
            k2=args.k2,
            obj=args.obj,
            twist=args.twist,
            x=args.x,
            y=args.y,
        )
    if args.command == "draw":
        return await cmd_draw(config, ctx, args.what, args.range_text, args.svg or args.out, tuple(args.overlay), args.orbit)
    return cmd_quiver(ctx, args.s_min, args.s_max)


async def emit(result: CommandResult, out: Optional[str]) -> None:
    text = result.text if result.text is not None else json.dumps(result.to_json(), indent=2) + "\n"
    if out and result.text is None:
        async with aiofiles.open(out, "w") as f:
            await f.write(text)
        logger.info(f"Output saved as: {out}")
        return
    sys.stdout.write(text)
    sys.stdout.flush()


async def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point; returns the process exit code"""
    parser = build_parser()
    args = parser.parse_args(argv)
    config = merge_config(args)

    try:
        setup_logging(config.log_level, config.log_dir)
    except AttributeError:
        parser.error(f"unknown log level {config.log_level!r}")

    try:
        result = await dispatch(args, config)
    except WplError as e:
        logger.warning(f"{args.command} failed: {e}")
        result = CommandResult("error", None, [str(e)], e.exit_code)

    await emit(result, args.out if args.command != "draw" else None)
    return result.exit_code


if __name__ == "__main__":
    try:
        sys.exit(asyncio.run(main()))
    except KeyboardInterrupt:
        logger.info("Exiting...")
        sys.exit(130)
    except Exception as e:
        logger.error(f"Fatal error: {e}")
        sys.exit(1)
