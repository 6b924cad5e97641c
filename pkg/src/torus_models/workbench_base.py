import asyncio
import logging
import time
from typing import TYPE_CHECKING, Callable, NamedTuple

from torus_models.errors import ConstructionError, PreconditionError, UncertifiedLocalizationError, enrich
from torus_models.models.reports import LawReport, LawResult
from torus_models.settings import EngineSettings

if TYPE_CHECKING:
    from torus_models.instances import Instance

logger = logging.getLogger(__name__)


class Law(NamedTuple):
    """A named check; `check` returns None when the law holds, else a witness."""

    name: str
    anchor: str
    check: Callable[[], str | None]


class WorkbenchBase:
    """Base class for the Workbench, provides law execution and timing."""

    def __init__(self, settings: EngineSettings | None = None):
        self.settings: EngineSettings = settings or EngineSettings()
        """Settings every suite runs with."""

    def _run_law(self, suite: str, instance: "Instance", law: Law) -> LawResult:
        """
        Runs one law and wraps its outcome.

        A witness turns into a `fail` verdict. Construction and certification
        errors are not verdicts: they are enriched with the law and re-raised.
        """
        start = time.perf_counter()
        try:
            witness = law.check()
        except (ConstructionError, UncertifiedLocalizationError) as e:
            raise enrich(e, f"{suite}/{law.name} on {instance.name}")
        elapsed = time.perf_counter() - start

        if witness is None:
            logger.info("%s/%s on %s: pass-on-window (%.2fs)", suite, law.name, instance.name, elapsed)
            return LawResult(name=law.name, anchor=law.anchor, verdict="pass-on-window", wall_time=elapsed)
        logger.warning("%s/%s on %s: fail: %s", suite, law.name, instance.name, witness)
        return LawResult(
            name=law.name, anchor=law.anchor, verdict="fail", witness=witness, wall_time=elapsed
        )


class SuiteBase:
    """Base class for all law suites (posets, euler, adjunctions, ...)."""

    name: str = ""
    """Suite id used in reports and on the command line."""

    ranks: tuple[int, ...] = (1, 2)
    """Ranks of the instances the suite applies to."""

    def __init__(self, workbench: WorkbenchBase):
        self._workbench = workbench

    @property
    def settings(self) -> EngineSettings:
        return self._workbench.settings

    def applies_to(self, instance: "Instance") -> bool:
        return instance.rank in self.ranks

    def laws(self, instance: "Instance") -> list[Law]:
        """The laws of this suite on an instance, in execution order."""
        raise NotImplementedError

    def _run_law(self, instance: "Instance", law: Law) -> LawResult:
        """Delegates the law to the main workbench instance."""
        return self._workbench._run_law(self.name, instance, law)

    def _run_all(self, instance: "Instance") -> LawReport:
        results = [self._run_law(instance, law) for law in self.laws(instance)]
        settings = self._workbench.settings
        return LawReport(
            suite=self.name, instance=instance.name, window=(settings.window_lo, settings.window_hi), laws=results
        )

    async def run(self, instance: "Instance") -> LawReport:
        """
        Runs every law of the suite on an instance.

        The work happens on a worker thread so that several suites can be
        awaited together.

        Raises:
            PreconditionError: if the suite does not apply to the instance's rank.
            ConstructionError: if an object a law needs cannot be built.
        """
        if not self.applies_to(instance):
            raise PreconditionError(
                f"suite {self.name} runs in rank {', '.join(map(str, self.ranks))}, not {instance.rank}"
            )
        return await asyncio.to_thread(self._run_all, instance)
