import json
import logging
from typing import Any, Callable

from torus_models.errors import PreconditionError

logger = logging.getLogger(__name__)


class FunctorBox:
    """
    A named functor between categories of module diagrams.

    Application is pure; every call emits a JSON trace line at DEBUG with
    digests of the input and output diagrams.

    Args:
        name: Name used in traces and reports, e.g. ``π_!``.
        apply: The object function.
        on_maps: The morphism function, when the functor is applied to maps.
        domain: Description of the source category.
        codomain: Description of the target category.
    """

    def __init__(
        self,
        name: str,
        apply: Callable[..., Any],
        on_maps: Callable[..., Any] | None = None,
        domain: str = "",
        codomain: str = "",
    ):
        self.name = name
        self._apply = apply
        self._on_maps = on_maps
        self.domain = domain
        self.codomain = codomain

    def __call__(self, m, *args, **kwargs):
        out = self._apply(m, *args, **kwargs)
        if logger.isEnabledFor(logging.DEBUG):
            trace(self.name, m, out)
        return out

    def on_maps(self, phi, *args, **kwargs):
        if self._on_maps is None:
            raise PreconditionError(f"{self.name} is only implemented on objects")
        return self._on_maps(phi, *args, **kwargs)

    def __repr__(self):
        return f"FunctorBox({self.name}: {self.domain or '?'} → {self.codomain or '?'})"


def trace(name: str, source, target) -> str:
    """Logs and returns the JSON trace line of one functor application."""
    from torus_models.export import digest

    line = json.dumps(
        {"functor": name, "input": digest(source), "output": digest(target)},
        ensure_ascii=False,
        sort_keys=True,
    )
    logger.debug(line)
    return line
