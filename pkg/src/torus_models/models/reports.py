from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict

Verdict = Literal["pass-on-window", "fail"]


class PredicateReport(BaseModel):
    """
    Outcome of a module predicate (qc, e, qce, middle-independence, p-module).
    """

    model_config = ConfigDict(frozen=True)

    predicate: str
    """Name of the predicate, e.g. `qc` or `middle-independent`."""

    verdict: Verdict
    """`pass-on-window` when every check held on the degree window, `fail` otherwise."""

    witness: Optional[str] = None
    """
    A concrete counterexample for failures: the flag or pair where the structure
    map is not an extension of scalars, and the degree or generator involved.
    """

    window: tuple[int, int]
    """The inclusive degree window `(lo, hi)` the verdict refers to."""

    @property
    def passed(self) -> bool:
        return self.verdict == "pass-on-window"


class LawResult(BaseModel):
    """
    A single law checked by a suite.
    """

    name: str
    """Short law name, stable across runs."""

    anchor: str
    """Quoted statement the law encodes."""

    verdict: Verdict
    """Outcome on the configured window."""

    witness: Optional[str] = None
    """Counterexample for failures."""

    wall_time: float = 0.0
    """Seconds spent on the law. Excluded from digests."""


class LawReport(BaseModel):
    """
    The report of one suite on one instance.
    """

    suite: str
    """Suite id (`posets`, `euler`, `predicates`, `adjunctions`, `equivalences`, `rank1`, `gamma_v`)."""

    instance: str
    """Name of the instance the suite ran on."""

    window: tuple[int, int]
    """Degree window used by the windowed laws."""

    laws: list[LawResult] = []
    """Laws in their fixed execution order."""

    @property
    def passed(self) -> bool:
        return all(law.verdict == "pass-on-window" for law in self.laws)

    @property
    def failures(self) -> list[LawResult]:
        return [law for law in self.laws if law.verdict == "fail"]
