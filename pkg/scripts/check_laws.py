import asyncio
import sys
from pathlib import Path
from typing import List, Sequence, Tuple

# Configuration
PROJECT_ROOT = Path(__file__).parent.parent

# Add package source to path for importing
sys.path.append(str(PROJECT_ROOT / "src"))

from torus_models.errors import ConstructionError, UncertifiedLocalizationError  # noqa: E402
from torus_models.instances import gen_standard_instance, mutate  # noqa: E402
from torus_models.settings import EngineSettings  # noqa: E402
from torus_models.workbench import Workbench  # noqa: E402

STANDARD_INSTANCES: List[Tuple[int, str]] = [(1, "standard"), (1, "minimal"), (2, "standard")]


class LawIssue:
    def __init__(self, kind: str, message: str, instance: str):
        self.kind = kind
        self.message = message
        self.instance = instance

    def __repr__(self):
        return f"[{self.kind}] {self.instance}: {self.message}"


async def _sweep(specs: Sequence[Tuple[int, str]], settings: EngineSettings) -> List[LawIssue]:
    workbench = Workbench(settings)
    issues: List[LawIssue] = []
    for rank, universe in specs:
        name = f"rank{rank}-{universe}"
        try:
            instance = gen_standard_instance(rank, universe, settings)
            reports = await workbench.run_suite(instance, "all")
        except (ConstructionError, UncertifiedLocalizationError) as e:
            issues.append(LawIssue("CONSTRUCTION_ERROR", str(e), name))
            continue
        for report in reports:
            for law in report.laws:
                if not law.anchor:
                    issues.append(LawIssue("MISSING_ANCHOR", f"{report.suite}/{law.name}", name))
                if law.verdict == "fail":
                    issues.append(LawIssue("LAW_FAILURE", f"{report.suite}/{law.name}: {law.witness}", name))

        if rank == 1:
            mutated = mutate(instance)
            (report,) = await workbench.run_suite(mutated, "euler")
            if report.passed:
                issues.append(LawIssue("MUTATION_UNDETECTED", "the euler suite passed a zero Euler class", mutated.name))
    return issues


def find_law_issues(
    specs: Sequence[Tuple[int, str]] = STANDARD_INSTANCES, settings: EngineSettings | None = None
) -> List[LawIssue]:
    """
    Runs every applicable suite on the standard instances.

    Reports failing laws, laws without an anchor, instances that cannot be
    built, and a mutated rank-1 instance that the euler suite does not catch.
    """
    return asyncio.run(_sweep(specs, settings or EngineSettings()))


if __name__ == "__main__":
    print("🔍 Checking laws on the standard instances...")
    for rank, universe in STANDARD_INSTANCES:
        print(f"INSTANCE: rank{rank}-{universe}")
    print()

    issues = find_law_issues()

    if issues:
        print(f"⚠️  Found {len(issues)} law issues:")
        for issue in issues:
            print(issue)
        sys.exit(1)
    else:
        print("✅ Every law holds on the window.")
        sys.exit(0)
