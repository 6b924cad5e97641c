"""
The Euler-adapted pushforward π_!^e on rings and modules, flag and pair versions.

(π_!^e M)(F̄) has one block per flag G over F̄, equal to the extension of
M((l(G))) to R^f(G). A face Ē → F̄ is the canonical map when it keeps the last
term of G and otherwise goes through the lift M((K)) → ext M((L)) supplied by
a π-structure. Over finite fibers the continuity condition is empty, so
π_!^eR agrees with π_!R factor by factor; the comparison is still made.
"""

import logging
from dataclasses import dataclass, field
from typing import Hashable

from torus_models.diagrams import (
    DiagramMap,
    ModuleDiagram,
    RingDiagram,
    is_qc,
    splitting_to_coefficient,
)
from torus_models.errors import (
    ConstructionError,
    MissingStructureError,
    PreconditionError,
)
from torus_models.functors.base import FunctorBox
from torus_models.functors.pushforward import _offsets, pi_shriek_ring
from torus_models.modules import (
    ModuleMap,
    ModuleValue,
    apply_images,
    concatenate,
    extend_value,
    factor_through,
)
from torus_models.posets import (
    Flag,
    PairObj,
    PosetMap,
    flag_poset,
    node_label,
    pair_category,
    subflag_over,
)
from torus_models.rings import EulerSystem, RingHom, RingValue, SplittingDiagram, _saturation
from torus_models.settings import EngineSettings

logger = logging.getLogger(__name__)


def check_maximal_condition(pi: PosetMap):
    """
    π must send the top to the top and maximal elements to maximal elements.

    Raises:
        PreconditionError: naming the offending element.
    """
    if pi(pi.domain.top) != pi.codomain.top:
        raise PreconditionError(f"{pi.name} does not send the top element to the top element")
    maximal_bar = set(pi.codomain.maximal_proper())
    for h in pi.domain.maximal_proper():
        if pi(h) not in maximal_bar:
            raise PreconditionError(f"{pi.name} sends maximal {node_label(h)} to a non-maximal element")


def continuity_mismatches(rf: RingDiagram) -> list[str]:
    """
    Flags where the nested localization ∪_t 𝓔_{K_t/K_{t+1}}, pulled to the last
    term, differs from 𝓔_{f(F)/l(F)}.
    """
    rs, system = rf.splitting, rf.euler
    mismatches = []
    for f in rf.index.nodes:
        value = rf.value(f)
        for j, component in enumerate(value.components):
            forms: set = set()
            for upper, lower in zip(f.terms, f.terms[1:]):
                step = system.inverted(upper, lower)
                forms |= set(step[rs.source_component(lower, f.last, j)])
            if _saturation(forms) != _saturation(component.inverted):
                mismatches.append(f"{f} factor {j}")
    return mismatches


def _copy_pushed(pushed: RingDiagram, name: str) -> RingDiagram:
    diagram = RingDiagram(name, pushed.index, pushed.values, pushed.maps, pushed.flavor)
    diagram.splitting = pushed.splitting
    diagram.euler = pushed.euler
    diagram.fiber_blocks = pushed.fiber_blocks
    diagram.pushed_from = pushed.pushed_from
    diagram.euler_adapted = True
    diagram.pi = pushed.pi
    diagram.fibers = pushed.fibers
    return diagram


def pi_shriek_e_ring(rf: RingDiagram, pi: PosetMap, settings: EngineSettings | None = None) -> RingDiagram:
    """
    π_!^eR from the coefficient system R^f of a splitting diagram and Euler system.

    Raises:
        PreconditionError: if the maximal-element condition fails.
        ConstructionError: if the componentwise comparison with π_!R fails.
    """
    if rf.splitting is None or rf.euler is None:
        raise PreconditionError(f"{rf.name} was not built from a splitting diagram")
    check_maximal_condition(pi)
    mismatches = continuity_mismatches(rf)
    if mismatches:
        raise ConstructionError(f"π_!^e{rf.name} differs from π_!{rf.name} at {', '.join(mismatches[:3])}")
    pushed = pi_shriek_ring(rf, pi, settings)
    return _copy_pushed(pushed, f"{pi.name}_!^e{rf.name}")


def pi_shriek_e_rings(
    rs: SplittingDiagram, system: EulerSystem, pi: PosetMap, settings: EngineSettings | None = None
) -> RingDiagram:
    """π_!^eR on flag(Σ̄), starting from R^s and 𝓔."""
    settings = settings or EngineSettings()
    rf = splitting_to_coefficient(rs, system, flag_poset(rs.sigma, settings.max_flags))
    return pi_shriek_e_ring(rf, pi, settings)


def _extension_through(m: ModuleDiagram, k: Hashable, l: Hashable) -> tuple[ModuleValue, ModuleMap]:
    """ext M((L)) over R^f(K ⊃ L), with its map to M(K ⊃ L) induced by ∂₀."""
    q = m.map_between(Flag((l,)), Flag((k, l)))
    extended, _ = extend_value(m.values[Flag((l,))], q.target.ring, q.reindex)
    through = ModuleMap(extended, q.target, tuple(range(len(q.target))), q.images)
    return extended, through


@dataclass
class PiStructure:
    """
    A transitive system of lifts M((K)) → ext M((L)) over R^f(K ⊃ L), one for
    every L < K, through the quasicoherence maps.
    """

    module: ModuleDiagram
    """The module the lifts belong to."""

    lifts: dict[tuple[Hashable, Hashable], ModuleMap] = field(default_factory=dict)
    """The lift for every pair (K, L) with L < K."""

    def lift(self, k: Hashable, l: Hashable) -> ModuleMap:
        try:
            return self.lifts[(k, l)]
        except KeyError:
            raise MissingStructureError(
                f"no lift from {node_label(k)} to {node_label(l)} for {self.module.name}"
            ) from None

    def triangle_witness(self, settings: EngineSettings) -> str | None:
        """Composing each lift with the ∂₀ map recovers the structure map (K) → (K ⊃ L)."""
        m = self.module
        for (k, l), lift in self.lifts.items():
            _, through = _extension_through(m, k, l)
            if not lift.compose(through).equals(m.map_between(Flag((k,)), Flag((k, l))), settings.denominator_bound):
                return f"triangle at {node_label(k)} ⊃ {node_label(l)} does not commute"
        return None

    def transitivity_witness(self, settings: EngineSettings) -> str | None:
        """The lift H → L is the lift H → K followed by the extended lift K → L."""
        rs = self.module.ring.splitting
        bound = settings.denominator_bound
        for (h, l), direct in self.lifts.items():
            for k in self.module.index.base.nodes:
                if (h, k) not in self.lifts or (k, l) not in self.lifts:
                    continue
                upper, lower = self.lifts[(h, k)], self.lifts[(k, l)]
                for j, piece in enumerate(direct.target.pieces):
                    i = rs.source_component(k, l, j)
                    if lower.reindex[j] != i or direct.reindex[j] != upper.reindex[i]:
                        return f"{node_label(h)} ⊃ {node_label(k)} ⊃ {node_label(l)}: factor {j} reads the wrong source"
                    for a, x in zip(direct.images[j], upper.images[i]):
                        if not piece.equal(a, apply_images(piece, lower.images[j], x), bound):
                            return f"lifts are not transitive on {node_label(h)} ⊃ {node_label(k)} ⊃ {node_label(l)}"
        return None


def canonical_pi_structure(m: ModuleDiagram, settings: EngineSettings | None = None) -> PiStructure:
    """
    The π-structure of a quasicoherent module on a poset with a bottom element:
    the lift is the structure map followed by the inverse of the ∂₀ extension.

    Raises:
        PreconditionError: if Σ has no bottom element or `m` is not qc.
    """
    settings = settings or m.settings
    sigma = m.index.base
    if sigma.bottom is None:
        raise PreconditionError(f"{sigma.name} has no bottom element, so no canonical π-structure")
    report = is_qc(m, settings)
    if not report.passed:
        raise PreconditionError(f"{m.name} is not qc: {report.witness}")
    lifts = {}
    for l in sigma.nodes:
        for k in sigma.above(l):
            _, through = _extension_through(m, k, l)
            along = m.map_between(Flag((k,)), Flag((k, l)))
            lifts[(k, l)] = factor_through(through, along, settings)
    logger.debug("canonical π-structure on %s: %d lifts", m.name, len(lifts))
    return PiStructure(m, lifts)


def _pi_shriek_e(
    m: ModuleDiagram,
    pi: PosetMap,
    structure: PiStructure | None = None,
    ring: RingDiagram | None = None,
) -> ModuleDiagram:
    settings = m.settings
    if structure is None:
        if m.index.base.bottom is None:
            raise MissingStructureError(f"{m.name} needs an explicit π-structure")
        structure = canonical_pi_structure(m, settings)
    rf = m.ring
    ring = ring or pi_shriek_e_ring(rf, pi, settings)
    fibers = ring.fibers
    extended = {}
    values = {}
    for fbar in ring.index.nodes:
        parts = []
        for g in fibers[fbar]:
            vertex = Flag((g.last,))
            extended[g], _ = extend_value(m.values[vertex], rf.value(g), rf.map_between(vertex, g).reindex)
            parts.append(extended[g])
        values[fbar] = concatenate(parts, ring.value(fbar).labels)
    sizes = {g: len(rf.value(g)) for g in rf.index.nodes}
    maps = {}
    for ebar, fbar, _ in ring.index.edges:
        offsets = _offsets(fibers[ebar], sizes)
        reindex, images = [], []
        for g in fibers[fbar]:
            e = subflag_over(g, ebar, pi)
            local = rf.map_between(e, g).reindex
            for j, i in enumerate(local):
                reindex.append(offsets[e] + i)
                target_piece = extended[g].pieces[j]
                if e.last == g.last:
                    images.append(target_piece.generators())
                    continue
                lift = structure.lift(e.last, g.last)
                if lift.reindex[j] != rf.map_between(Flag((e.last,)), e).reindex[i]:
                    raise ConstructionError(f"lift {e.last} → {g.last} does not match the ring map at {g}")
                images.append(lift.images[j])
        maps[(ebar, fbar)] = ModuleMap(values[ebar], values[fbar], tuple(reindex), tuple(images))
    return ModuleDiagram(f"{pi.name}_!^e({m.name})", ring, values, maps, settings)


def counit_e_pi_shriek_e(e_pushed: ModuleDiagram, m: ModuleDiagram) -> DiagramMap:
    """ε: e π_!^e M → M, through the structure maps (l(F)) → F."""
    components = {}
    for f in m.index.nodes:
        structure = m.map_between(Flag((f.last,)), f)
        source = e_pushed.values[f]
        components[f] = ModuleMap(source, m.values[f], tuple(range(len(source))), structure.images)
    return DiagramMap(f"ε({m.name})", e_pushed, m, components)


def comparison_pi_shriek_e(pushed_e: ModuleDiagram, mbar: ModuleDiagram) -> DiagramMap:
    """
    π_!^e e M̄ → M̄ for a module over π_!R, through the structure maps of M̄ out
    of the length-0 flags.
    """
    ring = mbar.ring
    pi, fibers = ring.pi, ring.fibers
    components = {}
    for fbar in mbar.index.nodes:
        images = []
        position = 0
        for g in fibers[fbar]:
            vertex_bar = Flag((pi(g.last),))
            mm = mbar.map_between(vertex_bar, fbar)
            block_start = ring.fiber_blocks[vertex_bar].index(Flag((g.last,)))
            local = ring.pushed_from.map_between(Flag((g.last,)), g).reindex
            for j, i in enumerate(local):
                if mm.reindex[position] != block_start + i:
                    raise ConstructionError(f"{mbar.name}: block {g} does not read from ({node_label(g.last)})")
                images.append(mm.images[position])
                position += 1
        source = pushed_e.values[fbar]
        components[fbar] = ModuleMap(source, mbar.values[fbar], tuple(range(len(source))), tuple(images))
    return DiagramMap(f"π_!^e e({mbar.name}) → {mbar.name}", pushed_e, mbar, components)


# pair version


def pi_shriek_e_pairs_ring(rp: RingDiagram, pi: PosetMap, settings: EngineSettings | None = None) -> RingDiagram:
    """
    (π_!^eR)(K̄ ⊇ L̄) = ∏_K ∏_{L ⊆ K, πL = L̄} R^p(K ⊇ L) on qp(Σ̄).

    Raises:
        PreconditionError: if a structure map has no unique intermediate pair to read from.
    """
    if rp.flavor != "p":
        raise PreconditionError(f"{rp.name} is not a pair diagram")
    check_maximal_condition(pi)
    sigma = rp.index.base
    pairs_bar = pair_category(pi.codomain)
    fibers = {pbar: [] for pbar in pairs_bar.nodes}
    for p in rp.index.nodes:
        fibers[PairObj(pi(p.first), pi(p.last))].append(p)
    values = {}
    for pbar, fiber in fibers.items():
        labels = tuple((p, label) for p in fiber for label in rp.value(p).labels)
        values[pbar] = RingValue(labels, tuple(c for p in fiber for c in rp.value(p).components))
    sizes = {p: len(rp.value(p)) for p in rp.index.nodes}
    maps = {}
    for abar, bbar, tag in pairs_bar.edges:
        offsets = _offsets(fibers[abar], sizes)
        reindex = []
        for b in fibers[bbar]:
            a = _pair_source(sigma, fibers[abar], b, tag)
            reindex.extend(offsets[a] + i for i in rp.map_between(a, b).reindex)
        maps[(abar, bbar)] = RingHom(values[abar], values[bbar], tuple(reindex))
    diagram = RingDiagram(f"{pi.name}_!^e{rp.name}", pairs_bar, values, maps, "p")
    diagram.splitting = rp.splitting
    diagram.euler = rp.euler
    diagram.fiber_blocks = {pbar: tuple(label[0] for label in v.labels) for pbar, v in values.items()}
    diagram.pushed_from = rp
    diagram.euler_adapted = True
    diagram.pi = pi
    diagram.fibers = fibers
    return diagram


def _pair_source(sigma, candidates: list[PairObj], b: PairObj, tag: str) -> PairObj:
    """The unique pair over the source that maps to `b` along a horizontal or vertical edge."""
    if tag == "horizontal":
        found = [a for a in candidates if a.last == b.last and sigma.leq(a.first, b.first)]
    else:
        found = [a for a in candidates if a.first == b.first and sigma.leq(b.last, a.last)]
    if len(found) != 1:
        raise PreconditionError(f"{len(found)} pairs map to {b} along a {tag} edge, expected exactly one")
    return found[0]


def pair_lift(n: ModuleDiagram, l: Hashable, m_: Hashable) -> ModuleMap:
    """N(L ⊇ L) → ext N(M ⊇ M) over R^p(L ⊇ M), through the horizontal qc map."""
    horizontal = n.map_between(PairObj(m_, m_), PairObj(l, m_))
    extended, _ = extend_value(n.values[PairObj(m_, m_)], horizontal.target.ring, horizontal.reindex)
    through = ModuleMap(extended, horizontal.target, tuple(range(len(horizontal.target))), horizontal.images)
    along = n.map_between(PairObj(l, l), PairObj(l, m_))
    return factor_through(through, along, n.settings)


def _pi_shriek_e_pairs(n: ModuleDiagram, pi: PosetMap, ring: RingDiagram | None = None) -> ModuleDiagram:
    settings = n.settings
    report = is_qc(n, settings)
    if not report.passed:
        raise MissingStructureError(f"{n.name} is not qc, so it carries no π-structure: {report.witness}")
    rp = n.ring
    ring = ring or pi_shriek_e_pairs_ring(rp, pi, settings)
    sigma = rp.index.base
    fibers = ring.fibers
    extended = {}
    values = {}
    for pbar in ring.index.nodes:
        parts = []
        for p in fibers[pbar]:
            vertex = PairObj(p.last, p.last)
            extended[p], _ = extend_value(n.values[vertex], rp.value(p), rp.map_between(vertex, p).reindex)
            parts.append(extended[p])
        values[pbar] = concatenate(parts, ring.value(pbar).labels)
    sizes = {p: len(rp.value(p)) for p in rp.index.nodes}
    lifts: dict = {}
    maps = {}
    for abar, bbar, tag in ring.index.edges:
        offsets = _offsets(fibers[abar], sizes)
        reindex, images = [], []
        for b in fibers[bbar]:
            a = _pair_source(sigma, fibers[abar], b, tag)
            local = rp.map_between(a, b).reindex
            for j, i in enumerate(local):
                reindex.append(offsets[a] + i)
                if a.last == b.last:
                    images.append(extended[b].pieces[j].generators())
                    continue
                key = (a.last, b.last)
                if key not in lifts:
                    lifts[key] = pair_lift(n, *key)
                images.append(lifts[key].images[j])
        maps[(abar, bbar)] = ModuleMap(values[abar], values[bbar], tuple(reindex), tuple(images))
    return ModuleDiagram(f"{pi.name}_!^e({n.name})", ring, values, maps, settings)


def counit_e_pi_shriek_e_pairs(e_pushed: ModuleDiagram, n: ModuleDiagram) -> DiagramMap:
    """ε: e π_!^e N → N on pairs, through the horizontal maps (L ⊇ L) → (K ⊇ L)."""
    components = {}
    for p in n.index.nodes:
        structure = n.map_between(PairObj(p.last, p.last), p)
        source = e_pushed.values[p]
        components[p] = ModuleMap(source, n.values[p], tuple(range(len(source))), structure.images)
    return DiagramMap(f"ε({n.name})", e_pushed, n, components)


def comparison_pi_shriek_e_pairs(pushed_e: ModuleDiagram, nbar: ModuleDiagram) -> DiagramMap:
    """π_!^e e N̄ → N̄ on pairs, through the horizontal maps of N̄ out of (L̄ ⊇ L̄)."""
    ring = nbar.ring
    rp, fibers = ring.pushed_from, ring.fibers
    components = {}
    for pbar in nbar.index.nodes:
        vertex_bar = PairObj(pbar.last, pbar.last)
        mm = nbar.map_between(vertex_bar, pbar)
        images = []
        position = 0
        for p in fibers[pbar]:
            block_start = ring.fiber_blocks[vertex_bar].index(PairObj(p.last, p.last))
            for i in rp.map_between(PairObj(p.last, p.last), p).reindex:
                if mm.reindex[position] != block_start + i:
                    raise ConstructionError(f"{nbar.name}: block {p} does not read from its vertex")
                images.append(mm.images[position])
                position += 1
        source = pushed_e.values[pbar]
        components[pbar] = ModuleMap(source, nbar.values[pbar], tuple(range(len(source))), tuple(images))
    return DiagramMap(f"π_!^e e({nbar.name}) → {nbar.name}", pushed_e, nbar, components)


PI_SHRIEK_E = FunctorBox("π_!^e", _pi_shriek_e, domain="qc π-continuous R-modules", codomain="modules over π_!^eR")
PI_SHRIEK_E_PAIRS = FunctorBox(
    "π_!^e(pairs)", _pi_shriek_e_pairs, domain="qc R^p-modules", codomain="modules over π_!^eR^p"
)


def pi_shriek_e(
    m: ModuleDiagram,
    pi: PosetMap,
    structure: PiStructure | None = None,
    ring: RingDiagram | None = None,
) -> ModuleDiagram:
    """
    π_!^eM for a qc flag module with a π-structure.

    Raises:
        MissingStructureError: if no structure is given and Σ has no bottom element.
    """
    return PI_SHRIEK_E(m, pi, structure, ring)


def pi_shriek_e_pairs(n: ModuleDiagram, pi: PosetMap, ring: RingDiagram | None = None) -> ModuleDiagram:
    """π_!^eN for a qc pair module; the lifts invert the horizontal maps."""
    return PI_SHRIEK_E_PAIRS(n, pi, ring)
