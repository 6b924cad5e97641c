"""
Main workbench module.

This module provides the `Workbench` class, the primary entry point for running
law suites. It aggregates one suite object per family of laws, all sharing the
workbench's `EngineSettings`.
"""

import asyncio
import logging
from typing import Iterable

from torus_models.errors import PreconditionError
from torus_models.instances import Instance
from torus_models.models.reports import LawReport
from torus_models.settings import EngineSettings
from torus_models.suites import (
    AdjunctionsSuite,
    EquivalencesSuite,
    EulerSuite,
    GammaVSuite,
    PosetsSuite,
    PredicatesSuite,
    Rank1Suite,
)
from torus_models.workbench_base import SuiteBase, WorkbenchBase

logger = logging.getLogger(__name__)

SUITE_NAMES = ("posets", "euler", "predicates", "adjunctions", "equivalences", "rank1", "gamma_v")


class Workbench(WorkbenchBase):
    """
    Runs law suites on instances.

    Args:
        settings: Window, bounds, caps and sample counts. Defaults to `EngineSettings()`.
    """

    def __init__(self, settings: EngineSettings | None = None):
        super().__init__(settings=settings)

        self.posets = PosetsSuite(self)
        """Suite for the subgroup posets, flags, pairs and cleavage."""

        self.euler = EulerSuite(self)
        """Suite for Euler systems and the coefficient systems they define."""

        self.predicates = PredicatesSuite(self)
        """Suite for the qc, e and middle-independence predicates."""

        self.adjunctions = AdjunctionsSuite(self)
        """Suite for the adjunctions around e, π_!, π_*, π_!^e and q_!^d."""

        self.equivalences = EquivalencesSuite(self)
        """Suite for the round trips between the four models."""

        self.rank1 = Rank1Suite(self)
        """Suite for the rank-1 model with its infinite fiber."""

        self.gamma_v = GammaVSuite(self)
        """Suite for the extended functor Γ_v."""

    def suite(self, name: str) -> SuiteBase:
        """
        Looks a suite up by id.

        Raises:
            PreconditionError: for unknown ids.
        """
        if name not in SUITE_NAMES:
            raise PreconditionError(f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)} or all")
        return getattr(self, name)

    def _select(self, instance: Instance, names: Iterable[str]) -> list[SuiteBase]:
        names = list(names)
        if "all" in names:
            return [self.suite(n) for n in SUITE_NAMES if self.suite(n).applies_to(instance)]
        return [self.suite(n) for n in names]

    async def run_suite(self, instance: Instance, names: str | Iterable[str] = ("all",)) -> list[LawReport]:
        """
        Runs the selected suites on one instance, in the given order.

        ``all`` selects every suite that applies to the instance's rank; an empty
        selection gives an empty list.

        Args:
            instance: The instance.
            names: A suite id, a list of ids, or ``all``.

        Returns:
            One report per suite.

        Raises:
            PreconditionError: for unknown ids, or a suite named explicitly that
                does not apply to the instance's rank.
        """
        if isinstance(names, str):
            names = [names]
        suites = self._select(instance, names)
        logger.debug("running %s on %s", ", ".join(s.name for s in suites) or "nothing", instance.name)
        return list(await asyncio.gather(*(s.run(instance) for s in suites)))

    async def run_many(self, instances: Iterable[Instance], names: str | Iterable[str] = ("all",)) -> list[LawReport]:
        """Runs the same selection on several instances concurrently; reports come back in instance order."""
        if isinstance(names, str):
            names = [names]
        names = list(names)
        batches = await asyncio.gather(*(self.run_suite(i, names) for i in instances))
        return [report for batch in batches for report in batch]
