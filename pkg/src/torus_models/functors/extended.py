"""
The associated extended module Γ_v M = k^!M and its universal map λ: k^!M → M.

Vertices are filled in order of increasing codimension. At the top k^!M = M;
at L the value is the pullback of

    M((L)) → ∏_{K ⊋ L} M((K ⊃ L)) ← ∏_{K ⊋ L} ext k^!M((K)),

taken factor by factor of R(G/L). Localized sides only admit denominators up to
u^N for the configured bound N, which keeps every degree piece finite-dimensional
in any rank. A flag F takes the extension of the value at its first term, so
the result is extended by construction.
"""

import logging
from dataclasses import dataclass, field
from typing import Hashable

from torus_models.diagrams import (
    DiagramMap,
    ModuleDiagram,
    RingDiagram,
    identity_diagram_map,
)
from torus_models.errors import ConstructionError, PreconditionError
from torus_models.functors.base import FunctorBox
from torus_models.limits import Leg, Pullback, pullback
from torus_models.modules import (
    Element,
    ModuleMap,
    ModuleValue,
    apply_images,
    extend,
    extend_value,
    preimage,
)
from torus_models.posets import Flag, node_label
from torus_models.settings import EngineSettings
from torus_models.subgroups import ClosedSubgroup

logger = logging.getLogger(__name__)


def _codim(node: Hashable) -> int:
    if isinstance(node, ClosedSubgroup):
        return node.codim
    raise PreconditionError(f"{node_label(node)} carries no codimension")


@dataclass
class Extended:
    """Γ_v M together with the data that defines it."""

    module: ModuleDiagram
    """The extended module k^!M."""

    counit: DiagramMap
    """λ: k^!M → M."""

    pullbacks: dict[tuple[Hashable, int], Pullback] = field(default_factory=dict)
    """The pullback at every vertex L and factor j below the top."""

    uppers: dict[Hashable, list[Hashable]] = field(default_factory=dict)
    """The elements K ⊋ L used in the pullback at L, in cospan order."""


def _gamma_v(m: ModuleDiagram) -> Extended:
    settings = m.settings
    rf = m.ring
    if rf.flavor != "f":
        raise PreconditionError(f"Γ_v applies to flag modules, {m.name} lives on {m.index.name}")
    sigma = m.index.base
    vertices = sorted(sigma.nodes, key=lambda k: (_codim(k), k.sort_key()))
    top = sigma.top
    if vertices[0] != top:
        raise PreconditionError(f"{sigma.name} is not graded by codimension from its top")

    values: dict = {}
    lam: dict = {}
    pullbacks: dict = {}
    uppers: dict = {}
    # images of the generators of k^!M((L)) factor j in ext k^!M((K)) over R^f(K ⊃ L)
    to_upper: dict[tuple[Hashable, Hashable], list] = {}

    top_flag = Flag((top,))
    values[top_flag] = m.values[top_flag]
    lam[top_flag] = ModuleMap(
        values[top_flag],
        m.values[top_flag],
        tuple(range(len(values[top_flag]))),
        tuple(p.generators() for p in values[top_flag].pieces),
    )
    for l in vertices[1:]:
        vertex = Flag((l,))
        above = sorted(sigma.above(l), key=lambda k: (_codim(k), k.sort_key()))
        uppers[l] = above
        source = m.values[vertex]
        pieces, first_images = [], []
        columns: dict = {k: [] for k in above}
        for j, a_piece in enumerate(source.pieces):
            cospans = []
            for k in above:
                pair = Flag((k, l))
                f_map = m.map_between(vertex, pair)
                upper = values[Flag((k,))]
                i = rf.splitting.source_component(k, l, j)
                c_piece = m.values[pair].pieces[j]
                b_piece = extend(upper.pieces[i], c_piece.ring)
                through = lam[Flag((k,))].compose(m.map_between(Flag((k,)), pair))
                g_images = through.images[j]
                cospans.append((Leg(a_piece, c_piece, f_map.images[j]), Leg(b_piece, c_piece, g_images)))
            pb = pullback(a_piece, cospans, settings)
            pullbacks[(l, j)] = pb
            pieces.append(pb.piece)
            first_images.append(pb.to_first)
            for k, column in zip(above, pb.to_others):
                columns[k].append(column)
        values[vertex] = ModuleValue(source.labels, tuple(pieces))
        lam[vertex] = ModuleMap(values[vertex], source, tuple(range(len(source))), tuple(first_images))
        for k in above:
            to_upper[(k, l)] = columns[k]
        logger.debug("Γ_v(%s) at %s: %s", m.name, node_label(l), values[vertex].describe())

    for f in m.index.nodes:
        if f.length == 0:
            continue
        head = Flag((f.first,))
        values[f], _ = extend_value(values[head], rf.value(f), rf.map_between(head, f).reindex)
        through = lam[head].compose(m.map_between(head, f))
        lam[f] = ModuleMap(values[f], m.values[f], tuple(range(len(values[f]))), through.images)

    maps = {}
    for e, f, _ in m.index.edges:
        reindex = rf.maps[(e, f)].reindex
        if e.first == f.first:
            images = tuple(values[f].pieces[j].generators() for j in range(len(reindex)))
        else:
            jump = Flag((f.first, e.first))
            to_jump = rf.map_between(jump, f).reindex
            images = tuple(to_upper[(f.first, e.first)][to_jump[j]] for j in range(len(reindex)))
        maps[(e, f)] = ModuleMap(values[e], values[f], reindex, images)
    module = ModuleDiagram(f"Γ_v({m.name})", rf, values, maps, settings)
    counit = DiagramMap(f"λ({m.name})", module, m, lam)
    return Extended(module, counit, pullbacks, uppers)


def gamma_v(m: ModuleDiagram) -> Extended:
    """
    Γ_v M with λ: Γ_v M → M.

    Raises:
        PreconditionError: if the index poset is not graded by codimension.
    """
    return GAMMA_V(m)


def lift_through_counit(phi: DiagramMap, extended: Extended, settings: EngineSettings) -> DiagramMap:
    """
    The unique ψ: T → Γ_v M with λ∘ψ = φ, for T extended.

    At a vertex L the image of a generator is the tuple (φ(g), ψ_K(g)_K) solved
    in the pullback; ψ_K(g) is read through the extension T((K)) ≅ T((K ⊃ L)).

    Raises:
        ConstructionError: if some tuple does not lie in the pullback.
    """
    t = phi.source
    target = extended.module
    sigma = t.index.base
    components: dict = {}
    for k in sorted(sigma.nodes, key=lambda x: (_codim(x), x.sort_key())):
        vertex = Flag((k,))
        if k == sigma.top:
            phi_top = phi.components[vertex]
            components[vertex] = ModuleMap(t.values[vertex], target.values[vertex], phi_top.reindex, phi_top.images)
            continue
        source = t.values[vertex]
        images = []
        for j, s_piece in enumerate(source.pieces):
            pb = extended.pullbacks[(k, j)]
            column = []
            for g_index, g in enumerate(s_piece.generators()):
                parts: list[Element] = [phi.components[vertex].images[j][g_index]]
                for upper, side in zip(extended.uppers[k], pb.sides[1:]):
                    pair = Flag((upper, k))
                    into_pair = t.map_between(vertex, pair)
                    extension = t.map_between(Flag((upper,)), pair)
                    i = extension.reindex[j]
                    y = into_pair.images[j][g_index]
                    x = preimage(t.values[Flag((upper,))].pieces[i], t.values[pair].pieces[j], extension.images[j], y, settings)
                    parts.append(apply_images(side.piece, components[Flag((upper,))].images[i], x))
                column.append(pb.solve(parts, s_piece.degrees[g_index]))
            images.append(tuple(column))
        components[vertex] = ModuleMap(source, target.values[vertex], tuple(range(len(source))), tuple(images))
    for f in t.index.nodes:
        if f.length == 0:
            continue
        head = Flag((f.first,))
        into = t.map_between(head, f)
        # T(F) is the extension of T((f(F))); ψ_F is the extension of ψ there
        images = []
        for j, i in enumerate(into.reindex):
            column = []
            for g in t.values[f].pieces[j].generators():
                x = preimage(t.values[head].pieces[i], t.values[f].pieces[j], into.images[j], g, settings)
                column.append(apply_images(target.values[f].pieces[j], components[head].images[i], x))
            images.append(tuple(column))
        components[f] = ModuleMap(t.values[f], target.values[f], tuple(range(len(t.values[f]))), tuple(images))
    return DiagramMap(f"lift({phi.name})", t, target, components)


def hom_bijection_witness(phi: DiagramMap, extended: Extended, settings: EngineSettings) -> str | None:
    """
    Lifts φ: T → M through λ and checks λ∘ψ = φ; when T is Γ_v M and φ = λ,
    also checks that the lift is the identity.
    """
    psi = lift_through_counit(phi, extended, settings)
    witness = psi.naturality_witness(settings)
    if witness:
        return f"lift of {phi.name} is not natural: {witness}"
    if not psi.compose(extended.counit).equals(phi, settings):
        return f"λ∘lift({phi.name}) ≠ {phi.name}"
    if phi.source is extended.module and phi is extended.counit:
        if not psi.equals(identity_diagram_map(extended.module), settings):
            return "the lift of λ is not the identity"
    return None


def gamma_d_rank1(m: ModuleDiagram, rc_f: RingDiagram, d_map, settings: EngineSettings | None = None) -> ModuleDiagram:
    """
    Γ^f_d = d_!^e ∘ Γ_v ∘ e on rank-1 modules over ℝ_d^f.

    Raises:
        ConstructionError: outside rank 1.
    """
    from torus_models.functors.euler_adapted import pi_shriek_e
    from torus_models.functors.pushforward import apply_e

    settings = settings or m.settings
    rank = rc_f.index.base.top.ambient_rank
    if rank != 1:
        raise ConstructionError(f"Γ^f_d is only built in rank 1, not rank {rank}")
    inner = gamma_v(apply_e(m, rc_f)).module
    return pi_shriek_e(inner, d_map, ring=m.ring)


GAMMA_V = FunctorBox("Γ_v", _gamma_v, domain="R^f-modules", codomain="extended R^f-modules")
