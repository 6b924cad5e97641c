"""
Engine configuration.

A single frozen `EngineSettings` value is threaded through builders, functors and
suites. The CLI builds one from its global flags; library callers construct it
directly or use the defaults.
"""

import re
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

EulerVariant = Literal["RRc", "RRcb-diagonal", "RRcb-componentwise"]

_WINDOW_RE = re.compile(r"^\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*$")


class EngineSettings(BaseModel):
    """Degree window, denominator bound, size caps and sampling knobs."""

    model_config = ConfigDict(frozen=True)

    window_lo: int = Field(
        default=-20,
        description="Lowest cohomological degree examined by windowed checks.",
    )
    window_hi: int = Field(
        default=40,
        description="Highest cohomological degree examined by windowed checks.",
    )
    denominator_bound: int = Field(
        default=8,
        ge=0,
        description="Largest power of an inverted element allowed in a denominator. \
            Also bounds the nilpotency search for torsion certificates.",
    )
    seed: int = Field(
        default=0,
        description="Seed for every random generator (module corpus, sampled maps).",
    )
    max_subgroups: int = Field(
        default=64,
        ge=1,
        description="Cap on the size of a closed subgroup universe.",
    )
    max_flags: int = Field(
        default=5000,
        ge=1,
        description="Cap on the number of flags in a flag poset.",
    )
    euler_variant: EulerVariant = Field(
        default="RRcb-componentwise",
        description="Which standard Euler system the connected-subgroup diagrams use.",
    )
    adjunction_samples: int = Field(
        default=20,
        ge=1,
        description="Number of corpus modules each adjunction law is checked on.",
    )
    rank1_objects: int = Field(
        default=10,
        ge=1,
        description="Number of hand-built rank-1 model objects used by the rank-1 suite.",
    )
    hom_samples: int = Field(
        default=10,
        ge=1,
        description="Number of (T, M) pairs used for the Hom-bijectivity law of the extended functor.",
    )
    corpus_size: int = Field(
        default=50,
        ge=1,
        description="Number of generated modules in the predicate corpus.",
    )

    @model_validator(mode="after")
    def _check_window(self) -> "EngineSettings":
        if self.window_lo > self.window_hi:
            raise ValueError(
                f"empty degree window {self.window_lo}..{self.window_hi}"
            )
        return self

    @property
    def window(self) -> range:
        """The degree window as an inclusive range."""
        return range(self.window_lo, self.window_hi + 1)

    @staticmethod
    def parse_window(text: str) -> tuple[int, int]:
        """
        Parses a window flag of the form ``LO..HI``.

        Args:
            text: The flag value, e.g. ``-20..40``.

        Returns:
            The pair ``(lo, hi)``.
        """
        match = _WINDOW_RE.match(text)
        if not match:
            raise ValueError(f"window must look like LO..HI, got {text!r}")
        lo, hi = int(match.group(1)), int(match.group(2))
        if lo > hi:
            raise ValueError(f"empty degree window {text!r}")
        return lo, hi
