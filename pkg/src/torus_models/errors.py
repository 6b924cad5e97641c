"""
Exception hierarchy for the engine.

Law failures are reported as data (see `torus_models.models.reports`), never raised.
Everything raised here means the inputs could not be built or a computation
could not be certified.
"""


class TorusModelsError(Exception):
    """Base class for every error raised by the engine."""


class ConstructionError(TorusModelsError):
    """An object could not be constructed from the given data."""


class PreconditionError(ConstructionError):
    """An operation was called outside its domain."""


class RankMismatchError(PreconditionError):
    """Two subgroups or lattices live in tori of different rank."""


class CapExceededError(ConstructionError):
    """A universe or flag poset grew beyond the configured size cap."""


class MiddleIndependenceError(ConstructionError):
    """A flag module is not middle-independent where it must be."""


class MissingStructureError(ConstructionError):
    """A pi-structure or F-q-structure is required but absent."""


class TransitivityError(ConstructionError):
    """An Euler system fails the transitivity law."""


class UncertifiedLocalizationError(TorusModelsError):
    """An inverted element has no valid regularity certificate on its target."""


class DenominatorBoundError(UncertifiedLocalizationError):
    """A fraction needs a denominator power beyond the configured bound."""


def enrich(e: Exception, detail: str) -> Exception:
    """Appends context to an exception message in place and returns it."""
    if e.args:
        e.args = (f"{e.args[0]} - Details: {detail}",) + e.args[1:]
    else:
        e.args = (f"Details: {detail}",)
    return e
