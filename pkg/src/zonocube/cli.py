from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from .checks import SUITES, CheckReport, run_check
from .config import Settings, load_settings, validate_settings
from .digraph import class_digraph, maximal_chains
from .documents import (
    LabelMode,
    emit_digraph,
    emit_lines,
    flip_object,
    parse_cubillage,
    parse_document,
    parse_digraph,
    read_document,
    write_document,
)
from .enumeration import CubillageClass, enumerate_cubillages
from .errors import InvalidInputError, ZonocubeError, exit_code_for
from .export import counts_csv, to_dot, to_svg, trellis_json
from .flips import (
    Direction,
    SymFlip,
    lowering_flips_A,
    raising_flips_A,
    symmetric_lowering_flips,
    symmetric_raising_flips,
)
from .geometry import core
from .morphisms import chain_lift, reduce_middle

logger = logging.getLogger(__name__)


def _settings() -> Settings | None:
    settings = load_settings()
    ok, warns = validate_settings(settings)
    for w in warns:
        print(f"Warning: {w}", file=sys.stderr)
    if not ok:
        print("Invalid settings; check the ZONOCUBE_* variables in .env", file=sys.stderr)
        return None
    return settings


def _read(arg: str) -> str:
    if arg == "-":
        return sys.stdin.read()
    return read_document(Path(arg))


def _write(text: str, output: str | None) -> None:
    if output:
        write_document(Path(output), text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _add_size(ap: argparse.ArgumentParser) -> None:
    ap.add_argument("--n", type=int, required=True, help="number of colors")
    ap.add_argument("--d", type=int, required=True, help="dimension")


def _add_run(ap: argparse.ArgumentParser) -> None:
    ap.add_argument("--budget", type=int, default=None, help="max cubillages (ZONOCUBE_BUDGET)")
    ap.add_argument("--workers", type=int, default=None, help="worker threads (ZONOCUBE_WORKERS)")


def _run_kwargs(args: argparse.Namespace, settings: Settings) -> dict:
    return {
        "budget": args.budget if args.budget is not None else settings.budget,
        "workers": args.workers if args.workers is not None else settings.workers,
    }


def _cmd_enumerate(args: argparse.Namespace, settings: Settings) -> int:
    items = enumerate_cubillages(args.n, args.d, args.cls, **_run_kwargs(args, settings))
    if args.format == "csv":
        _write(counts_csv([(args.n, args.d, args.cls, len(items))]), args.output)
    else:
        _write(emit_lines(items, args.label_mode), args.output)
    return 0


def _cmd_digraph(args: argparse.Namespace, settings: Settings) -> int:
    fragment = settings.fragment_check and not args.no_fragment_check
    g = class_digraph(
        args.n, args.d, args.cls, use_fragment_check=fragment, **_run_kwargs(args, settings)
    )
    _write(to_dot(g) if args.format == "dot" else emit_digraph(g), args.output)
    return 0


def _cmd_flips(args: argparse.Namespace, settings: Settings) -> int:
    doc = parse_document(_read(args.input), args.input)
    q = doc.cubillage
    fragment = settings.fragment_check and not args.no_fragment_check
    raising = Direction(args.direction) is Direction.RAISE
    if args.type_a:
        packets = raising_flips_A(q) if raising else lowering_flips_A(q)
        flips = [SymFlip.type_a(p) for p in packets]
    elif raising:
        flips = symmetric_raising_flips(q, fragment)
    else:
        flips = symmetric_lowering_flips(q, fragment)
    objects = [flip_object(f, q.n, doc.label_mode) for f in flips]
    _write(json.dumps(objects, separators=(",", ":")), args.output)
    return 0


def _cmd_map(args: argparse.Namespace, settings: Settings) -> int:
    doc = parse_document(_read(args.input), args.input)
    image = reduce_middle(doc.cubillage) if args.map == "red" else core(doc.cubillage)
    _write(doc.emit_like(image), args.output)
    return 0


def _cmd_lift(args: argparse.Namespace, settings: Settings) -> int:
    g = class_digraph(args.n, args.d, args.cls, **_run_kwargs(args, settings))
    limit = args.limit if args.limit is not None else settings.chain_limit
    chains = maximal_chains(g, limit)
    if chains.truncated:
        print(f"Warning: maximal chains truncated at {limit}", file=sys.stderr)
    if args.chain_index is not None:
        if not 0 <= args.chain_index < len(chains):
            raise InvalidInputError(
                f"chain index {args.chain_index} outside 0..{len(chains) - 1}"
            )
        lifts = [chain_lift(g, chains.chains[args.chain_index])]
    else:
        seen = {}
        for chain in chains:
            q = chain_lift(g, chain)
            seen.setdefault(q.members, q)
        lifts = sorted(seen.values(), key=lambda q: q.canonical_key())
    _write(emit_lines(lifts), args.output)
    return 0


def _check_params(args: argparse.Namespace) -> tuple[int, ...] | None:
    if args.name in ("counts", "fixtures", "all"):
        return None
    if args.name == "morphisms":
        if args.m is None and args.d is None:
            return None
        if args.m is None or args.d is None:
            raise InvalidInputError("morphisms needs both --m and --d")
        return (args.m, args.d)
    if args.n is None and args.d is None:
        return None
    if args.n is None or args.d is None:
        raise InvalidInputError(f"{args.name} needs both --n and --d")
    return (args.n, args.d)


def _cmd_check(args: argparse.Namespace, settings: Settings) -> int:
    t0 = time.monotonic()
    failed = 0

    def progress(current: int, total: int, report: CheckReport) -> None:
        nonlocal failed
        failed += report.failed
        _write(json.dumps(report.to_dict(), separators=(",", ":")), None)
        sys.stdout.flush()
        params = ",".join(str(v) for v in report.parameters.values())
        sys.stderr.write(
            f"[{current:3d}/{total}] {report.check_id}({params}) {report.verdict.value}"
            f"  {report.runtime:.1f}s\n"
        )

    reports: list[CheckReport] = run_check(
        args.name, _check_params(args), progress_callback=progress, **_run_kwargs(args, settings)
    )
    elapsed = time.monotonic() - t0
    sys.stderr.write(
        f"{len(reports)} checks, {failed} failed in {int(elapsed)//60:02d}:{int(elapsed)%60:02d}\n"
    )
    return 1 if failed else 0


def _cmd_export(args: argparse.Namespace, settings: Settings) -> int:
    if args.trellis:
        if args.n is None or args.d is None:
            raise InvalidInputError("--trellis needs --n and --d")
        _write(trellis_json(args.n, args.d), args.output)
        return 0
    if not args.input:
        raise InvalidInputError("export needs --input or --trellis")
    text = _read(args.input)
    if args.format == "svg":
        _write(to_svg(parse_cubillage(text, args.input)), args.output)
    else:
        _write(to_dot(parse_digraph(text, args.input)), args.output)
    return 0


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="zonocube",
        description="Cubillages of cyclic zonotopes: enumeration, flips, digraphs and checks",
    )
    sub = ap.add_subparsers(dest="command", required=True)
    classes = [c.value for c in CubillageClass]

    p = sub.add_parser("enumerate", help="list all cubillages of a class")
    _add_size(p)
    p.add_argument("--class", dest="cls", choices=classes, default="all")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--label-mode", choices=[m.value for m in LabelMode], default="natural")
    p.add_argument("--output", help="write to a file instead of stdout")
    _add_run(p)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("digraph", help="build the flip digraph of a class")
    _add_size(p)
    p.add_argument("--class", dest="cls", choices=["all", "symmetric"], default="symmetric")
    p.add_argument("--format", choices=["json", "dot"], default="json")
    p.add_argument("--no-fragment-check", action="store_true",
                   help="detect barrel flips by validity alone")
    p.add_argument("--output")
    _add_run(p)
    p.set_defaults(func=_cmd_digraph)

    p = sub.add_parser("flips", help="list the flips applicable to a cubillage document")
    p.add_argument("--input", required=True, help="cubillage document, or - for stdin")
    p.add_argument("--direction", choices=[x.value for x in Direction], default="raise")
    p.add_argument("--type-a", action="store_true", help="type-A flips instead of symmetric ones")
    p.add_argument("--no-fragment-check", action="store_true")
    p.add_argument("--output")
    p.set_defaults(func=_cmd_flips)

    p = sub.add_parser("map", help="apply red or cor to a cubillage document")
    p.add_argument("--input", required=True)
    p.add_argument("--map", choices=["red", "cor"], required=True)
    p.add_argument("--output")
    p.set_defaults(func=_cmd_map)

    p = sub.add_parser("lift", help="lift maximal chains of a digraph one dimension up")
    _add_size(p)
    p.add_argument("--class", dest="cls", choices=["all", "symmetric"], default="symmetric")
    p.add_argument("--limit", type=int, default=None, help="max chains (ZONOCUBE_CHAIN_LIMIT)")
    p.add_argument("--chain-index", type=int, default=None, help="lift only this chain")
    p.add_argument("--output")
    _add_run(p)
    p.set_defaults(func=_cmd_lift)

    p = sub.add_parser("check", help="run a named verification suite")
    _add_check_arguments(p)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("export", help="render DOT, SVG or trellis JSON")
    p.add_argument("--input", help="digraph document (dot) or cubillage document (svg)")
    p.add_argument("--format", choices=["dot", "svg"], default="dot")
    p.add_argument("--trellis", action="store_true", help="export the trellis of --n/--d")
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--output")
    p.set_defaults(func=_cmd_export)
    return ap


def _add_check_arguments(p: argparse.ArgumentParser) -> None:
    p.add_argument("name", choices=[*SUITES, "all"])
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--m", type=int, help="half the color count, for morphisms")
    _add_run(p)


def _dispatch(args: argparse.Namespace) -> int:
    settings = _settings()
    if settings is None:
        return 2
    try:
        return args.func(args, settings)
    except ZonocubeError as exc:
        print(exc.tool_message(), file=sys.stderr)
        return exit_code_for(exc)


def main(argv: list[str] | None = None) -> int:
    """Subcommand CLI; exit 0 ok, 1 check failure, 2 bad input, 3 budget."""
    return _dispatch(_parser().parse_args(argv))


def check_main(argv: list[str] | None = None) -> int:
    """CLI entry point for running verification suites."""
    ap = argparse.ArgumentParser(prog="zonocube-check", description="Run verification suites")
    _add_check_arguments(ap)
    ap.set_defaults(func=_cmd_check)
    return _dispatch(ap.parse_args(argv))


if __name__ == "__main__":
    raise SystemExit(main())
