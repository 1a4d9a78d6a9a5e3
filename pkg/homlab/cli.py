"""
Command line interface.

    homlab count --from c1.dg --to c1.dg --strict
    homlab expand --graph g.dg --weight g.w --nu 2 --poset --out g2.dg
    homlab catalog gen --kind posets --max-n 5 --out posets5.cat
    homlab verify --check thm7 --max-n 4 --report thm7.txt

Exit codes: 0 on success, 1 when a check finds violations, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import TYPE_CHECKING

from .bootstrap import setup
from .catalog import KINDS, generate
from .checks import ALIASES, available_checks, run_all, run_check
from .errors import HomLabError
from .formats import format_digraph, read_digraph, read_weight
from .homs import count_homs, enumerate_homs
from .shells import capsule_system, phi
from .taxonomy import classify
from .utils import homlab_logger
from .weights import expand

if TYPE_CHECKING:
    from .typing import Optional, Sequence


__all__ = [
    "build_parser",
    "main",
]


EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_USAGE = 2


def _emit(args: argparse.Namespace, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_count(args: argparse.Namespace) -> int:
    source, target = read_digraph(args.source), read_digraph(args.target)
    _emit(args, f"{count_homs(source, target, strict=args.strict)}\n")
    return EXIT_OK


def cmd_enumerate(args: argparse.Namespace) -> int:
    source, target = read_digraph(args.source), read_digraph(args.target)
    homs = enumerate_homs(source, target, strict=args.strict)
    _emit(args, "".join(f"{xi.to_text()}\n" for xi in homs))
    return EXIT_OK


def cmd_expand(args: argparse.Namespace) -> int:
    graph = read_digraph(args.graph)
    alpha = read_weight(args.weight, graph)
    expansion = expand(graph, alpha, args.nu, poset_variant=args.poset)
    _emit(args, format_digraph(expansion.result))
    return EXIT_OK


def cmd_classify(args: argparse.Namespace) -> int:
    report = classify(read_digraph(args.graph), args.n, method=args.method)
    _emit(args, report.to_json() + "\n")
    return EXIT_OK


def cmd_shells(args: argparse.Namespace) -> int:
    capsules = capsule_system(read_digraph(args.graph), strategy=args.strategy, bounds=args.bounds)
    if capsules is None:
        _emit(args, "no capsule\n")
    else:
        _emit(args, "".join(f"{capsule.to_text()}\n" for capsule in capsules))
    return EXIT_OK


def cmd_phi(args: argparse.Namespace) -> int:
    value = phi(read_digraph(args.graph), strategy=args.strategy, bounds=args.bounds)
    _emit(args, f"{value}\n")
    return EXIT_OK


def cmd_catalog_gen(args: argparse.Namespace) -> int:
    catalog = generate(args.kind, args.max_n, jobs=args.jobs)
    if args.out:
        catalog.save(args.out)
    else:
        sys.stdout.write(catalog.to_text())
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    options = {"max_n": args.max_n, "target_max_n": args.target_max_n, "jobs": args.jobs}
    if args.check == "all":
        reports = run_all(**options)
    else:
        reports = [run_check(args.check, **options)]

    text = "".join(report.render() for report in reports)
    if args.report:
        Path(args.report).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK if all(report.passed for report in reports) else EXIT_VIOLATIONS


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", default=None, help="Write output to this file instead of stdout.")
    parser.add_argument("--jobs", type=int, default=None, help="Worker processes (default: JOBS setting).")
    parser.add_argument("--log-level", default="WARNING", help="Level of the homlab logger (default: WARNING).")


def _add_shell_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--strategy", choices=["frontier", "full"], default=None, help="Shell choice.")
    parser.add_argument("--bounds", choices=["first", "last"], default=None, help="Capsule bound choice.")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="homlab",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    for name, func, help_text in (
        ("count", cmd_count, "Number of homomorphisms from one digraph to another."),
        ("enumerate", cmd_enumerate, "List the homomorphisms, one image per line."),
    ):
        sub = subparsers.add_parser(name, help=help_text)
        sub.add_argument("--from", dest="source", required=True, help="Source digraph file.")
        sub.add_argument("--to", dest="target", required=True, help="Target digraph file.")
        sub.add_argument("--strict", action="store_true", help="Only strict homomorphisms.")
        _add_common(sub)
        sub.set_defaults(func=func)

    sub = subparsers.add_parser("expand", help="Clamp arc weights into a digraph.")
    sub.add_argument("--graph", required=True, help="Digraph file.")
    sub.add_argument("--weight", required=True, help="Arc weight file.")
    sub.add_argument("--nu", type=int, required=True, help="Exponent.")
    sub.add_argument("--poset", action="store_true", help="Keep the expansion a poset.")
    _add_common(sub)
    sub.set_defaults(func=cmd_expand)

    sub = subparsers.add_parser("classify", help="Class memberships as a JSON line.")
    sub.add_argument("--graph", required=True, help="Digraph file.")
    sub.add_argument("--n", type=int, default=None, help="Height for the height classes (default: own height).")
    sub.add_argument("--method", choices=["sum_condition", "direct"], default="sum_condition", help="Test for R.")
    _add_common(sub)
    sub.set_defaults(func=cmd_classify)

    for name, func, help_text in (
        ("shells", cmd_shells, "Capsule data of the components off the longest paths."),
        ("phi", cmd_phi, "Ratio of strict homomorphisms to their profile class."),
    ):
        sub = subparsers.add_parser(name, help=help_text)
        sub.add_argument("--graph", required=True, help="Digraph file.")
        _add_shell_options(sub)
        _add_common(sub)
        sub.set_defaults(func=func)

    catalog = subparsers.add_parser("catalog", help="Catalogs of small digraphs.")
    catalog_commands = catalog.add_subparsers(dest="catalog_command", required=True)
    sub = catalog_commands.add_parser("gen", help="Generate a catalog file.")
    sub.add_argument("--kind", required=True, help=f"One of {', '.join(KINDS)}.")
    sub.add_argument("--max-n", type=int, required=True, help="Largest vertex count.")
    _add_common(sub)
    sub.set_defaults(func=cmd_catalog_gen)

    checks = [*available_checks(), *sorted(ALIASES), "all"]
    sub = subparsers.add_parser("verify", help="Run catalog sweeps.")
    sub.add_argument("--check", choices=checks, default="all", help="Check to run (default: all).")
    sub.add_argument("--max-n", type=int, default=None, help="Largest source digraph.")
    sub.add_argument("--target-max-n", type=int, default=None, help="Largest target digraph.")
    sub.add_argument("--report", default=None, help="Write the report to this file instead of stdout.")
    _add_common(sub)
    sub.set_defaults(func=cmd_verify)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup(log_level=args.log_level.upper())
    try:
        return args.func(args)
    except (HomLabError, ValueError, OSError) as error:
        homlab_logger.error(str(error))  # noqa: TRY400
        sys.stderr.write(f"homlab: {error}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
