"""
The equivalence between modules on pair categories and middle-independent
modules on flag posets.

(fN)(F) = N(f(F) ⊇ l(F)); p sends a middle-independent flag module M to the
pair module with (pM)(K ⊇ L) = M(K ⊃ L), its maps transported through the
merged flag by inverting the middle face.
"""

import logging

from torus_models.diagrams import (
    DiagramMap,
    ModuleDiagram,
    RingDiagram,
    coefficient_to_pairs,
    flag_of_pair,
    is_middle_independent,
    pairs_to_flags,
    transport_pair_map,
)
from torus_models.errors import MiddleIndependenceError, PreconditionError
from torus_models.functors.base import FunctorBox
from torus_models.posets import Flag, PairObj
from torus_models.settings import EngineSettings

logger = logging.getLogger(__name__)


def _flags_of(n: ModuleDiagram, ring: RingDiagram | None, settings: EngineSettings) -> ModuleDiagram:
    if n.ring.flavor != "p":
        raise PreconditionError(f"f applies to pair modules, {n.name} lives on {n.index.name}")
    ring = ring or pairs_to_flags(n.ring, settings.max_flags)
    values = {f: n.values[PairObj(f.first, f.last)] for f in ring.index.nodes}
    maps = {}
    for e, f, _ in ring.index.edges:
        maps[(e, f)] = n.map_between(PairObj(e.first, e.last), PairObj(f.first, f.last))
    return ModuleDiagram(f"f({n.name})", ring, values, maps, settings)


def _pairs_of(m: ModuleDiagram, ring: RingDiagram | None, settings: EngineSettings) -> ModuleDiagram:
    if m.ring.flavor != "f":
        raise PreconditionError(f"p applies to flag modules, {m.name} lives on {m.index.name}")
    report = is_middle_independent(m, settings)
    if not report.passed:
        raise MiddleIndependenceError(f"{m.name} is not middle-independent: {report.witness}")
    ring = ring or coefficient_to_pairs(m.ring)
    values = {p: m.values[flag_of_pair(p.first, p.last)] for p in ring.index.nodes}
    maps = {}
    for p, q, _ in ring.index.edges:
        source, target = flag_of_pair(p.first, p.last), flag_of_pair(q.first, q.last)
        if source.is_subflag_of(target):
            maps[(p, q)] = m.map_between(source, target)
        else:
            maps[(p, q)] = transport_pair_map(m, p, q)
    return ModuleDiagram(f"p({m.name})", ring, values, maps, settings)


def functor_f(
    n: ModuleDiagram, ring: RingDiagram | None = None, settings: EngineSettings | None = None
) -> ModuleDiagram:
    """
    The flag module of a pair module.

    Args:
        n: A module over R^p.
        ring: The flag ring diagram to land in; built from ``n.ring`` when omitted.
    """
    return F(n, ring, settings or n.settings)


def functor_p(
    m: ModuleDiagram, ring: RingDiagram | None = None, settings: EngineSettings | None = None
) -> ModuleDiagram:
    """
    The pair module of a middle-independent flag module.

    Raises:
        MiddleIndependenceError: if some middle face of `m` is not an isomorphism.
    """
    return P(m, ring, settings or m.settings)


def pair_vertex(f: Flag) -> PairObj:
    return PairObj(f.first, f.last)


def functor_f_map(phi: DiagramMap, source: ModuleDiagram, target: ModuleDiagram) -> DiagramMap:
    """f on a map of pair modules: the component at F is the one at (f(F) ⊇ l(F))."""
    components = {f: phi.components[pair_vertex(f)] for f in source.index.nodes}
    return DiagramMap(f"f({phi.name})", source, target, components)


def functor_p_map(phi: DiagramMap, source: ModuleDiagram, target: ModuleDiagram) -> DiagramMap:
    """p on a map of flag modules: the component at (K ⊇ L) is the one at (K ⊃ L)."""
    components = {p: phi.components[flag_of_pair(p.first, p.last)] for p in source.index.nodes}
    return DiagramMap(f"p({phi.name})", source, target, components)


F = FunctorBox("f", _flags_of, on_maps=functor_f_map, domain="R^p-modules", codomain="R^f-modules")
P = FunctorBox("p", _pairs_of, on_maps=functor_p_map, domain="middle-independent R^f-modules", codomain="R^p-modules")
