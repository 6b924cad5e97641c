"""
Passage between the pair models over Σ_a and over Σ_c.

q_!^d gathers a module over ℝ_a^p into one over ℝ_c^p:
(q_!^d N)(K ⊇ L) = ∏_{L̃ ∈ 𝓕/L} ext N(L̃ ⊇ L̃), with horizontal maps the
localizations and vertical maps the 𝓕-q-structure lifts. e_q reads the
component L̃ of M(qK̃ ⊇ qL̃) back.
"""

import logging
from dataclasses import dataclass, field
from typing import Hashable

from torus_models.diagrams import DiagramMap, ModuleDiagram, RingDiagram, is_qc
from torus_models.errors import ConstructionError, MissingStructureError, PreconditionError
from torus_models.functors.base import FunctorBox
from torus_models.functors.euler_adapted import pair_lift
from torus_models.modules import ModuleMap, ModuleValue, canonical_map, extend, invert
from torus_models.posets import MultiplicitySystem, PairObj, node_label
from torus_models.settings import EngineSettings

logger = logging.getLogger(__name__)


@dataclass
class FqStructure:
    """The lifts N(L̃ ⊇ L̃) → ext N(M̃ ⊇ M̃) for cotoral M̃ < L̃ in Σ_a."""

    module: ModuleDiagram
    lifts: dict[tuple[Hashable, Hashable], ModuleMap] = field(default_factory=dict)

    def lift(self, ltilde: Hashable, mtilde: Hashable) -> ModuleMap:
        if (ltilde, mtilde) not in self.lifts:
            if not self.module.index.base.lt(mtilde, ltilde):
                raise MissingStructureError(
                    f"{self.module.name} has no lift from {node_label(ltilde)} to {node_label(mtilde)}"
                )
            self.lifts[(ltilde, mtilde)] = pair_lift(self.module, ltilde, mtilde)
        return self.lifts[(ltilde, mtilde)]


def fq_structure(n: ModuleDiagram, settings: EngineSettings | None = None) -> FqStructure:
    """
    The 𝓕-q-structure of a module whose horizontal maps are extensions of scalars.

    Raises:
        MissingStructureError: if `n` is not qc.
    """
    report = is_qc(n, settings or n.settings)
    if not report.passed:
        raise MissingStructureError(f"{n.name} carries no 𝓕-q-structure: {report.witness}")
    return FqStructure(n)


def _q_shriek_d(
    n: ModuleDiagram,
    system: MultiplicitySystem,
    ring: RingDiagram,
    structure: FqStructure | None = None,
) -> ModuleDiagram:
    if n.ring.flavor != "p" or ring.flavor != "p":
        raise PreconditionError("q_!^d maps pair modules to pair modules")
    structure = structure or fq_structure(n)
    values = {}
    for p in ring.index.nodes:
        rv = ring.value(p)
        pieces = []
        for ltilde, component in zip(rv.labels, rv.components):
            vertex = n.values[PairObj(ltilde, ltilde)]
            pieces.append(extend(vertex.pieces[0], component))
        values[p] = ModuleValue(rv.labels, tuple(pieces))
    maps = {}
    for a, b, tag in ring.index.edges:
        reindex = ring.maps[(a, b)].reindex
        if tag == "horizontal":
            maps[(a, b)] = canonical_map(values[a], values[b], reindex)
            continue
        images = []
        for j, i in enumerate(reindex):
            mtilde = values[b].labels[j]
            ltilde = values[a].labels[i]
            if ltilde != system.pushforward(mtilde, a.last):
                raise ConstructionError(f"factor {node_label(mtilde)} of {b} does not read from i_* of it")
            images.append(structure.lift(ltilde, mtilde).images[0])
        maps[(a, b)] = ModuleMap(values[a], values[b], reindex, tuple(images))
    return ModuleDiagram(f"q_!^d({n.name})", ring, values, maps, n.settings)


def _e_q(m: ModuleDiagram, system: MultiplicitySystem, ring: RingDiagram) -> ModuleDiagram:
    q = system.q
    values = {}
    for p in ring.index.nodes:
        big = m.values[PairObj(q(p.first), q(p.last))]
        t = big.labels.index(p.last)
        values[p] = ModuleValue(ring.value(p).labels, (big.pieces[t],))
    maps = {}
    for a, b, _ in ring.index.edges:
        mm = m.map_between(PairObj(q(a.first), q(a.last)), PairObj(q(b.first), q(b.last)))
        t = mm.target.labels.index(b.last)
        if mm.reindex[t] != mm.source.labels.index(a.last):
            raise ConstructionError(f"e_{node_label(b.last)} is not a refinement of e_{node_label(a.last)}")
        maps[(a, b)] = ModuleMap(values[a], values[b], (0,), (mm.images[t],))
    return ModuleDiagram(f"e({m.name})", ring, values, maps, m.settings)


def counit_e_q_shriek_d(e_pushed: ModuleDiagram, n: ModuleDiagram) -> DiagramMap:
    """ε: e q_!^d N → N, through the horizontal maps (L̃ ⊇ L̃) → (K̃ ⊇ L̃)."""
    components = {}
    for p in n.index.nodes:
        structure = n.map_between(PairObj(p.last, p.last), p)
        components[p] = ModuleMap(e_pushed.values[p], n.values[p], (0,), structure.images)
    return DiagramMap(f"ε({n.name})", e_pushed, n, components)


def comparison_q_shriek_d_e(pushed_e: ModuleDiagram, m: ModuleDiagram) -> DiagramMap:
    """q_!^d e M → M, through the horizontal maps (L ⊇ L) → (K ⊇ L) of M."""
    components = {}
    for p in m.index.nodes:
        structure = m.map_between(PairObj(p.last, p.last), p)
        source = pushed_e.values[p]
        components[p] = ModuleMap(source, m.values[p], tuple(range(len(source))), structure.images)
    return DiagramMap(f"q_!^d e({m.name}) → {m.name}", pushed_e, m, components)


def unit_e_q_shriek_d(m: ModuleDiagram, pushed_e: ModuleDiagram, settings: EngineSettings) -> DiagramMap:
    """
    η: M → q_!^d e M for qc M, the inverse of the comparison.

    Raises:
        PreconditionError: if a component of the comparison cannot be inverted.
    """
    comparison = comparison_q_shriek_d_e(pushed_e, m)
    components = {p: invert(c, settings) for p, c in comparison.components.items()}
    return DiagramMap(f"η({m.name})", m, pushed_e, components)


def e_q_map(phi: DiagramMap, system: MultiplicitySystem, source: ModuleDiagram, target: ModuleDiagram) -> DiagramMap:
    """e_q on a map of modules over ℝ_c^p."""
    q = system.q
    components = {}
    for p in source.index.nodes:
        c = phi.components[PairObj(q(p.first), q(p.last))]
        t = c.target.labels.index(p.last)
        components[p] = ModuleMap(source.values[p], target.values[p], (0,), (c.images[t],))
    return DiagramMap(f"e({phi.name})", source, target, components)


def q_shriek_d_map(phi: DiagramMap, source: ModuleDiagram, target: ModuleDiagram) -> DiagramMap:
    """q_!^d on a map of modules over ℝ_a^p: factor L̃ takes the vertex component at L̃."""
    components = {}
    for p in source.index.nodes:
        value = source.values[p]
        images = tuple(phi.components[PairObj(lt, lt)].images[0] for lt in value.labels)
        components[p] = ModuleMap(value, target.values[p], tuple(range(len(value))), images)
    return DiagramMap(f"q_!^d({phi.name})", source, target, components)


Q_SHRIEK_D = FunctorBox("q_!^d", _q_shriek_d, on_maps=q_shriek_d_map, domain="qc ℝ_a^p-modules", codomain="ℝ_c^p-modules")
E_Q = FunctorBox("e_q", _e_q, on_maps=e_q_map, domain="ℝ_c^p-modules", codomain="ℝ_a^p-modules")


def q_shriek_d(
    n: ModuleDiagram,
    system: MultiplicitySystem,
    ring: RingDiagram,
    structure: FqStructure | None = None,
) -> ModuleDiagram:
    """
    q_!^d N over the pair diagram ℝ_c^p.

    Raises:
        MissingStructureError: if no structure is given and `n` is not qc.
    """
    return Q_SHRIEK_D(n, system, ring, structure)


def e_q(m: ModuleDiagram, system: MultiplicitySystem, ring: RingDiagram) -> ModuleDiagram:
    """
    (eM)(K̃ ⊇ L̃) = e_{L̃} M(qK̃ ⊇ qL̃), over ℝ_a^p.

    Raises:
        ConstructionError: if a component ring differs from ℝ_a^p there.
    """
    return E_Q(m, system, ring)
