"""
Pushforward along a poset map π: Σ → Σ̄ with finite fibers.

(π_!M)(F̄) is the product of M(F) over the flags F with πF = F̄. A structure
map Ē → F̄ is assembled block by block: the block of G reads from the unique
subflag E of G over Ē. Every factor of π_!R carries the label (F, inner label),
so the fiber idempotents e_F are read off the labels.

With finite fibers the sum and the product coincide and π_* = π_!; the
submodule description of π_* is still computed and checked against it.
"""

import logging
from typing import Hashable

from torus_models import linalg
from torus_models.diagrams import (
    DiagramMap,
    ModuleDiagram,
    RingDiagram,
    identity_diagram_map,
    label_comparison,
)
from torus_models.errors import ConstructionError, PreconditionError
from torus_models.functors.base import FunctorBox
from torus_models.limits import Coordinates
from torus_models.modules import (
    Element,
    ModuleMap,
    ModuleValue,
    _common_denominator,
    concatenate,
    restrict_value,
)
from torus_models.posets import Flag, PairObj, PosetMap, flag_poset, node_label, subflag_over
from torus_models.rings import RingHom, RingValue, poly_degree
from torus_models.settings import EngineSettings

logger = logging.getLogger(__name__)


def _image(pi: PosetMap, node: Hashable) -> Hashable:
    if isinstance(node, Flag):
        return pi.apply_flag(node)
    if isinstance(node, PairObj):
        return PairObj(pi(node.first), pi(node.last))
    return pi(node)


def flag_fibers(domain: list[Flag], flags_bar: list[Flag], pi: PosetMap) -> dict[Flag, list[Flag]]:
    """The flags over every flag of Σ̄, in domain order; flags with non-strict images are skipped."""
    fibers: dict[Flag, list[Flag]] = {fbar: [] for fbar in flags_bar}
    for f in domain:
        image = tuple(pi(t) for t in f.terms)
        if any(not pi.codomain.lt(b, a) for a, b in zip(image, image[1:])):
            continue
        fibers[Flag(image)].append(f)
    return fibers


def _offsets(fiber: list, sizes: dict) -> dict:
    out, offset = {}, 0
    for f in fiber:
        out[f] = offset
        offset += sizes[f]
    return out


def pi_shriek_ring(rf: RingDiagram, pi: PosetMap, settings: EngineSettings | None = None) -> RingDiagram:
    """
    π_!R^f on flag(Σ̄).

    Raises:
        PreconditionError: if `rf` is not a flag diagram over the domain of π.
    """
    settings = settings or EngineSettings()
    if rf.flavor != "f" or rf.index.base.nodes != pi.domain.nodes:
        raise PreconditionError(f"{rf.name} is not a flag diagram over {pi.domain.name}")
    flags_bar = flag_poset(pi.codomain, settings.max_flags)
    fibers = flag_fibers(rf.index.nodes, flags_bar.nodes, pi)
    sizes = {f: len(rf.value(f)) for f in rf.index.nodes}
    values = {}
    for fbar, fiber in fibers.items():
        labels = tuple((f, label) for f in fiber for label in rf.value(f).labels)
        components = tuple(c for f in fiber for c in rf.value(f).components)
        values[fbar] = RingValue(labels, components)
    maps = {}
    for ebar, fbar, _ in flags_bar.edges:
        offsets = _offsets(fibers[ebar], sizes)
        reindex = []
        for g in fibers[fbar]:
            e = subflag_over(g, ebar, pi)
            reindex.extend(offsets[e] + i for i in rf.map_between(e, g).reindex)
        maps[(ebar, fbar)] = RingHom(values[ebar], values[fbar], tuple(reindex))
    diagram = RingDiagram(f"{pi.name}_!{rf.name}", flags_bar, values, maps, "f")
    diagram.splitting = rf.splitting
    diagram.euler = rf.euler
    diagram.fiber_blocks = {fbar: tuple(label[0] for label in v.labels) for fbar, v in values.items()}
    diagram.pushed_from = rf
    diagram.pi = pi
    diagram.fibers = fibers
    logger.debug(
        "%s: %d flags, largest fiber %d", diagram.name, len(flags_bar), max(map(len, fibers.values()), default=0)
    )
    return diagram


def _assemble(m: ModuleDiagram, ring: RingDiagram, name: str) -> ModuleDiagram:
    pi, fibers = ring.pi, ring.fibers
    values = {
        fbar: concatenate([m.values[f] for f in fibers[fbar]], ring.value(fbar).labels)
        for fbar in ring.index.nodes
    }
    sizes = {f: len(m.values[f]) for f in m.index.nodes}
    maps = {}
    for ebar, fbar, _ in ring.index.edges:
        offsets = _offsets(fibers[ebar], sizes)
        reindex, images = [], []
        for g in fibers[fbar]:
            e = subflag_over(g, ebar, pi)
            mm = m.map_between(e, g)
            reindex.extend(offsets[e] + i for i in mm.reindex)
            images.extend(mm.images)
        maps[(ebar, fbar)] = ModuleMap(values[ebar], values[fbar], tuple(reindex), tuple(images))
    return ModuleDiagram(name, ring, values, maps, m.settings, check=False)


def _pi_shriek(m: ModuleDiagram, pi: PosetMap, ring: RingDiagram | None = None) -> ModuleDiagram:
    ring = ring or pi_shriek_ring(m.ring, pi, m.settings)
    return _assemble(m, ring, f"{pi.name}_!({m.name})")


def _block_positions(value: ModuleValue | RingValue, block: Hashable) -> list[int]:
    return [i for i, label in enumerate(value.labels) if label[0] == block]


def restrict_map(mm: ModuleMap, source_block: Hashable, target_block: Hashable, source: ModuleValue, target: ModuleValue) -> ModuleMap:
    """
    The part of a map between pushed-forward values from one block to another.

    Raises:
        ConstructionError: if a factor of the target block reads outside the source block.
    """
    src = _block_positions(mm.source, source_block)
    local = {p: n for n, p in enumerate(src)}
    reindex, images = [], []
    for p in _block_positions(mm.target, target_block):
        i = mm.reindex[p]
        if i not in local:
            raise ConstructionError(
                f"e_{node_label(target_block)} is not a refinement of e_{node_label(source_block)}"
            )
        reindex.append(local[i])
        images.append(mm.images[p])
    return ModuleMap(source, target, tuple(reindex), tuple(images))


def _apply_e(mbar: ModuleDiagram, ring: RingDiagram | None = None) -> ModuleDiagram:
    pushed = mbar.ring
    if pushed.pi is None or pushed.pushed_from is None:
        raise PreconditionError(f"{pushed.name} carries no fiber idempotents")
    ring = ring or pushed.pushed_from
    pi = pushed.pi
    values = {}
    for x in ring.index.nodes:
        big = mbar.values[_image(pi, x)]
        positions = _block_positions(big, x)
        values[x] = restrict_value(big, positions, [big.labels[i][1] for i in positions])
    maps = {}
    for x, y, _ in ring.index.edges:
        mm = mbar.map_between(_image(pi, x), _image(pi, y))
        maps[(x, y)] = restrict_map(mm, x, y, values[x], values[y])
    return ModuleDiagram(f"e({mbar.name})", ring, values, maps, mbar.settings, check=False)


def pi_star_ring(rf: RingDiagram, pi: PosetMap, target: RingDiagram | None = None, settings: EngineSettings | None = None) -> RingDiagram:
    """
    The ring diagram π_* lands in: `target` after checking that e recovers `rf`
    from it, otherwise π_!R.

    Raises:
        PreconditionError: if `target` does not map to π_!R by an isomorphism after e.
    """
    pushed = pi_shriek_ring(rf, pi, settings)
    if target is None:
        return pushed
    for fbar in pushed.index.nodes:
        if target.value(fbar) != pushed.value(fbar):
            raise PreconditionError(
                f"{target.name} does not agree with {pushed.name} at {fbar} after applying e"
            )
    return target


def _pi_star(x: ModuleDiagram, pi: PosetMap, target: RingDiagram | None = None) -> ModuleDiagram:
    ring = pi_star_ring(x.ring, pi, target, x.settings)
    if ring.pi is None:
        ring.pi, ring.pushed_from = pi, x.ring
        ring.fibers = flag_fibers(x.index.nodes, ring.index.nodes, pi)
    return _assemble(x, ring, f"{pi.name}_*({x.name})")


def sandwich_witness(x: ModuleDiagram, pushed: ModuleDiagram) -> str | None:
    """
    ⊕_{πF=F̄} X(F) ⊆ (π_*X)(F̄) ⊆ ∏_{πF=F̄} X(F) at every flag of Σ̄.

    With finite fibers the sum and the product are the same factors; both
    inclusions hold exactly when every block of the value is the value of X
    at that flag and nothing else is present.
    """
    fibers = pushed.ring.fibers
    for fbar in pushed.index.nodes:
        value = pushed.values[fbar]
        seen = 0
        for f in fibers[fbar]:
            positions = _block_positions(value, f)
            block = restrict_value(value, positions, [value.labels[i][1] for i in positions])
            if block != x.values[f]:
                return f"{fbar}: the block of {f} is not X({f})"
            seen += len(positions)
        if seen != len(value):
            return f"{fbar}: factors outside the product over the fiber"
    return None


def _generated_rows(coords: Coordinates, images: tuple[Element, ...], degrees: tuple[int, ...], e: int, bound: int) -> list:
    """Numerator rows of the submodule generated by `images` in degree e."""
    piece = coords.piece
    u = piece.ring.unit_denominator
    n = bound if piece.inverted_count else 0
    shift = 2 * n * piece.inverted_count
    rows = []
    for y, d in zip(images, degrees):
        p2 = e - d + shift
        if p2 < 0 or p2 % 2:
            continue
        for a in piece.ring.base.monomials(p2 // 2):
            z = Element(tuple(c * a for c in y.numerators), y.denominator * u ** n)
            rows.append(coords.vector(z, e))
    return rows


def intersections_witness(x: ModuleDiagram, pi: PosetMap, settings: EngineSettings) -> str | None:
    """
    For every F̄, every subflag Ē and every G over F̄ with E the subflag of G over Ē:
    the intersection of the submodules of X(G) generated by the vertices of E
    equals the submodule generated by X(E), degree by degree on the window.
    """
    ring = pi_shriek_ring(x.ring, pi, settings)
    bound = settings.denominator_bound
    for fbar in ring.index.nodes:
        subflags = [e for e in ring.index.nodes if e.is_subflag_of(fbar)]
        for g in ring.fibers[fbar]:
            target = x.values[g]
            for ebar in subflags:
                e_flag = subflag_over(g, ebar, pi)
                sources = [Flag((t,)) for t in e_flag.terms]
                along = {s: x.map_between(s, g) for s in sources + [e_flag]}
                for j, piece in enumerate(target.pieces):
                    if piece.ring.is_zero_ring:
                        continue
                    images = {s: mm.images[j] for s, mm in along.items()}
                    level = (bound if piece.inverted_count else 0) + max(
                        poly_degree(_common_denominator(imgs, piece.one)) for imgs in images.values()
                    )
                    coords = Coordinates(piece, level, bound)
                    degrees = {s: x.values[s].pieces[along[s].reindex[j]].degrees for s in along}
                    for deg in settings.window:
                        width = coords.width(deg)
                        if not width:
                            continue
                        rels = coords.relations(deg)
                        vertex_spaces = [
                            _generated_rows(coords, images[s], degrees[s], deg, bound) + rels
                            for s in sources
                        ]
                        lhs = linalg.intersect(vertex_spaces, width)
                        rhs = _generated_rows(coords, images[e_flag], degrees[e_flag], deg, bound) + rels
                        r_lhs, r_rhs = linalg.rank(lhs, width), linalg.rank(rhs, width)
                        if r_lhs != r_rhs or linalg.rank(lhs + rhs, width) != r_lhs:
                            return f"{fbar} at {g}, subflag {ebar}, factor {j}, degree {deg}"
    return None


def pi_shriek_map(phi: DiagramMap, source: ModuleDiagram, target: ModuleDiagram) -> DiagramMap:
    """π_! (or π_*) on a map of diagrams over the domain, blockwise."""
    fibers = source.ring.fibers
    components = {}
    for fbar in source.index.nodes:
        sizes = {f: len(phi.source.values[f]) for f in fibers[fbar]}
        offsets = _offsets(fibers[fbar], sizes)
        reindex, images = [], []
        for f in fibers[fbar]:
            component = phi.components[f]
            reindex.extend(offsets[f] + i for i in component.reindex)
            images.extend(component.images)
        components[fbar] = ModuleMap(source.values[fbar], target.values[fbar], tuple(reindex), tuple(images))
    return DiagramMap(f"{source.ring.pi.name}_!({phi.name})", source, target, components)


def apply_e_map(phi: DiagramMap, source: ModuleDiagram, target: ModuleDiagram) -> DiagramMap:
    """e on a map of diagrams over π_!R, block by block."""
    pi = phi.source.ring.pi
    components = {
        x: restrict_map(phi.components[_image(pi, x)], x, x, source.values[x], target.values[x])
        for x in source.index.nodes
    }
    return DiagramMap(f"e({phi.name})", source, target, components)


def shriek_unit(mbar: ModuleDiagram, pushed_e: ModuleDiagram) -> DiagramMap:
    """η: M̄ → π_! e M̄."""
    return label_comparison(f"η({mbar.name})", mbar, pushed_e)


def shriek_counit(e_pushed: ModuleDiagram, m: ModuleDiagram) -> DiagramMap:
    """ε: e π_! M → M, and likewise the unit X → e π_* X read backwards."""
    return label_comparison(f"ε({m.name})", e_pushed, m)


def shriek_triangles_witness(m: ModuleDiagram, mbar: ModuleDiagram, pi: PosetMap, settings: EngineSettings) -> str | None:
    """
    Both triangular identities of e ⊣ π_!, at M over Σ and at M̄ over π_!R.

    (εe)∘(eη) = 1 at M̄ and (π_!ε)∘(ηπ_!) = 1 at M.
    """
    e_bar = apply_e(mbar)
    pe_bar = pi_shriek(e_bar, pi, mbar.ring)
    e_pe_bar = apply_e(pe_bar, mbar.ring.pushed_from)
    eta = shriek_unit(mbar, pe_bar)
    first = apply_e_map(eta, e_bar, e_pe_bar).compose(shriek_counit(e_pe_bar, e_bar))
    if not first.equals(identity_of(e_bar), settings):
        return f"(εe)∘(eη) ≠ 1 at {mbar.name}"
    pm = pi_shriek(m, pi)
    e_pm = apply_e(pm)
    pe_pm = pi_shriek(e_pm, pi, pm.ring)
    second = shriek_unit(pm, pe_pm).compose(pi_shriek_map(shriek_counit(e_pm, m), pe_pm, pm))
    if not second.equals(identity_of(pm), settings):
        return f"(π_!ε)∘(ηπ_!) ≠ 1 at {m.name}"
    return None


def star_triangles_witness(x: ModuleDiagram, xbar: ModuleDiagram, pi: PosetMap, settings: EngineSettings) -> str | None:
    """
    Both triangular identities of π_* ⊣ e, with unit η: X → eπ_*X and counit
    ε: π_*eX̄ → X̄.
    """
    e_bar = apply_e(xbar)
    pe_bar = pi_star(e_bar, pi, xbar.ring)
    e_pe_bar = apply_e(pe_bar, xbar.ring.pushed_from)
    first = label_comparison("η", e_bar, e_pe_bar).compose(
        apply_e_map(label_comparison("ε", pe_bar, xbar), e_pe_bar, e_bar)
    )
    if not first.equals(identity_of(e_bar), settings):
        return f"(eε)∘(ηe) ≠ 1 at {xbar.name}"
    px = pi_star(x, pi)
    e_px = apply_e(px)
    pe_px = pi_star(e_px, pi, px.ring)
    second = pi_shriek_map(label_comparison("η", x, e_px), px, pe_px).compose(
        label_comparison("ε", pe_px, px)
    )
    if not second.equals(identity_of(px), settings):
        return f"(επ_*)∘(π_*η) ≠ 1 at {x.name}"
    return None


def identity_of(m: ModuleDiagram) -> DiagramMap:
    return identity_diagram_map(m)


PI_SHRIEK = FunctorBox("π_!", _pi_shriek, on_maps=pi_shriek_map, domain="R-modules", codomain="p-modules over π_!R")
PI_STAR = FunctorBox("π_*", _pi_star, domain="R-modules", codomain="modules over R̄")
E = FunctorBox("e", _apply_e, on_maps=apply_e_map, domain="modules over π_!R", codomain="R-modules")


def pi_shriek(m: ModuleDiagram, pi: PosetMap, ring: RingDiagram | None = None) -> ModuleDiagram:
    """π_!M, over `ring` when given (it must be π_!R)."""
    return PI_SHRIEK(m, pi, ring)


def pi_star(x: ModuleDiagram, pi: PosetMap, target: RingDiagram | None = None) -> ModuleDiagram:
    """π_*X over `target` (checked against π_!R), or over π_!R."""
    return PI_STAR(x, pi, target)


def apply_e(mbar: ModuleDiagram, ring: RingDiagram | None = None) -> ModuleDiagram:
    """
    (eM̄)(x) = e_x M̄(πx), over `ring` or the diagram M̄'s ring was pushed from.

    Raises:
        PreconditionError: if the ring of M̄ carries no fiber idempotents.
    """
    return E(mbar, ring)
