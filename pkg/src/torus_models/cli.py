"""
Command-line interface.

    torus-models [--window LO..HI] [--denominator-bound N] [--seed S] [--json] [--verbose]
                 {build, check, export, demo} ...

Exit codes: 0 when every law passes, 1 when some law fails, 2 when an input
cannot be built.
"""

import argparse
import asyncio
import logging
import sys
from pathlib import Path
from typing import Sequence

from pydantic import ValidationError

from torus_models import __version__
from torus_models.errors import ConstructionError, UncertifiedLocalizationError
from torus_models.export import export, report_json
from torus_models.instances import Instance, gen_module, gen_standard_instance, mutate
from torus_models.models.reports import LawReport
from torus_models.settings import EngineSettings
from torus_models.workbench import SUITE_NAMES, Workbench

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_LAW_FAILURE = 1
EXIT_CONSTRUCTION_ERROR = 2


def _add_instance_args(parser: argparse.ArgumentParser):
    parser.add_argument("--rank", type=int, choices=(1, 2), default=1, help="Rank of the ambient torus")
    parser.add_argument(
        "--universe",
        choices=("standard", "minimal"),
        default="standard",
        help="Subgroup universe: {1,C2,C3,T} / the diamond plus C2×1, or {1,T} / the diamond",
    )
    parser.add_argument(
        "--euler-variant",
        choices=("RRc", "RRcb-diagonal", "RRcb-componentwise"),
        default=None,
        help="Euler system of the connected-subgroup diagrams",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="torus-models",
        description="Build algebraic models of rational torus-equivariant homotopy and check their laws.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "--window",
        type=EngineSettings.parse_window,
        default=None,
        metavar="LO..HI",
        help="Degree window for windowed checks (default -20..40)",
    )
    parser.add_argument("--denominator-bound", type=int, default=None, metavar="N", help="Denominator bound (default 8)")
    parser.add_argument("--seed", type=int, default=None, metavar="S", help="Seed for generated modules (default 0)")
    parser.add_argument("--json", action="store_true", help="Print JSON instead of text")
    parser.add_argument("--verbose", action="store_true", help="Log law verdicts")

    commands = parser.add_subparsers(dest="command", required=True)

    build = commands.add_parser("build", help="Build an instance and print its summary")
    _add_instance_args(build)

    check = commands.add_parser("check", help="Run law suites on an instance")
    _add_instance_args(check)
    check.add_argument(
        "--suite",
        action="append",
        choices=SUITE_NAMES + ("all",),
        default=None,
        help="Suite to run; repeat for several (default all)",
    )
    check.add_argument("--mutate", action="store_true", help="Replace one Euler class by zero first")
    check.add_argument("--timings", action="store_true", help="Keep wall times in JSON reports")

    exp = commands.add_parser("export", help="Write a DOT or JSON export")
    _add_instance_args(exp)
    exp.add_argument("what", choices=("poset-dot", "diagram-json", "report-json", "instance-json"))
    exp.add_argument("--poset", default="sigma_a", help="Poset for poset-dot, e.g. sigma_a or flag(sigma_c)")
    exp.add_argument(
        "--module",
        choices=("free", "shift", "torsion", "vertex", "random-qce"),
        default=None,
        help="Generated ℝ_c^f-module for diagram-json (default the ring itself)",
    )
    exp.add_argument("--at", default=None, help="Subgroup carrying a torsion or vertex module")
    exp.add_argument("--suite", action="append", choices=SUITE_NAMES + ("all",), default=None)
    exp.add_argument("-o", "--out", type=Path, default=None, help="Output file (default stdout)")

    demo = commands.add_parser("demo", help="Canned demonstrations")
    demo.add_argument("name", choices=("rank1",))
    return parser


def settings_from(ns: argparse.Namespace) -> EngineSettings:
    values: dict = {}
    if ns.window is not None:
        values["window_lo"], values["window_hi"] = ns.window
    if ns.denominator_bound is not None:
        values["denominator_bound"] = ns.denominator_bound
    if ns.seed is not None:
        values["seed"] = ns.seed
    if getattr(ns, "euler_variant", None):
        values["euler_variant"] = ns.euler_variant
    return EngineSettings(**values)


def _summary(instance: Instance) -> str:
    lines = [
        f"instance {instance.name} (rank {instance.rank}, {instance.variant})",
        f"  universe: {', '.join(h.name for h in instance.universe)}",
        f"  closure added: {', '.join(h.name for h in instance.closure_added) or 'nothing'}",
        f"  |Σ_a| = {len(instance.sigma_a)}, |Σ_c| = {len(instance.sigma_c)}, |Σ_d| = {len(instance.sigma_d)}",
        f"  flags: {len(instance.ra_f.index)} over Σ_a, {len(instance.rc_f.index)} over Σ_c, "
        f"{len(instance.rd_f.index)} over Σ_d",
    ]
    return "\n".join(lines)


def _report_text(reports: list[LawReport]) -> str:
    lines = []
    for report in reports:
        lines.append(f"{report.suite} on {report.instance}:")
        for law in report.laws:
            mark = "pass" if law.verdict == "pass-on-window" else "FAIL"
            line = f"  {mark} {law.name}"
            if law.witness:
                line += f": {law.witness}"
            lines.append(line)
    return "\n".join(lines)


def _emit(text: str):
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _run(workbench: Workbench, instance: Instance, suites: list[str] | None) -> list[LawReport]:
    return asyncio.run(workbench.run_suite(instance, suites or ["all"]))


def _exit_code(reports: list[LawReport]) -> int:
    return EXIT_OK if all(r.passed for r in reports) else EXIT_LAW_FAILURE


def _instance(ns: argparse.Namespace, settings: EngineSettings) -> Instance:
    return gen_standard_instance(ns.rank, ns.universe, settings)


def _dispatch(ns: argparse.Namespace, settings: EngineSettings) -> int:
    if ns.command == "build":
        instance = _instance(ns, settings)
        _emit(export(instance, "instance-json") if ns.json else _summary(instance))
        return EXIT_OK

    if ns.command == "check":
        instance = _instance(ns, settings)
        if ns.mutate:
            instance = mutate(instance)
        reports = _run(Workbench(settings), instance, ns.suite)
        _emit(report_json(reports, timings=ns.timings) if ns.json else _report_text(reports))
        return _exit_code(reports)

    if ns.command == "export":
        instance = _instance(ns, settings)
        reports = None
        module = None
        if ns.what == "report-json":
            reports = _run(Workbench(settings), instance, ns.suite)
        if ns.module is not None:
            module = gen_module(ns.module, instance, at=ns.at)
        text = export(instance, ns.what, poset=ns.poset, module=module, reports=reports)
        if ns.out is None:
            _emit(text)
        else:
            ns.out.write_text(text, encoding="utf-8")
        return _exit_code(reports) if reports is not None else EXIT_OK

    # demo rank1: the finite rank-1 instance and every suite that applies to it
    instance = gen_standard_instance(1, "standard", settings)
    reports = _run(Workbench(settings), instance, ["all"])
    if ns.json:
        _emit(report_json(reports))
    else:
        _emit(_summary(instance))
        _emit(_report_text(reports))
    return _exit_code(reports)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(list(argv) if argv is not None else None)
    logging.basicConfig(
        level=logging.INFO if ns.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        settings = settings_from(ns)
    except ValidationError as e:
        print(f"error: invalid settings: {e}", file=sys.stderr)
        return EXIT_CONSTRUCTION_ERROR
    try:
        return _dispatch(ns, settings)
    except (ConstructionError, UncertifiedLocalizationError) as e:
        logger.debug("construction failed", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONSTRUCTION_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
