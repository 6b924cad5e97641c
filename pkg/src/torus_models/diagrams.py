"""
Diagrams of rings over flag and pair posets, modules over them, and the module predicates.

Structure maps are stored on the generating edges of the index poset; the map
between any two comparable nodes is the composite along a path of generating
edges. Functoriality (independence of the path) is checked on construction.
"""

import logging
from collections import deque
from typing import Hashable, Iterable, Literal

from torus_models.errors import (
    ConstructionError,
    MiddleIndependenceError,
    PreconditionError,
)
from torus_models.models.reports import PredicateReport
from torus_models.modules import (
    ModuleMap,
    ModuleValue,
    Piece,
    canonical_map,
    certify,
    factor_through,
    identity_map,
    value_bijectivity_witness,
)
from torus_models.posets import Flag, PairObj, Poset, flag_poset, node_label, pair_category
from torus_models.rings import EulerSystem, RingHom, RingValue, SplittingDiagram
from torus_models.settings import EngineSettings

logger = logging.getLogger(__name__)

Flavor = Literal["s", "f", "p"]


def _path(index: Poset, a: Hashable, b: Hashable, cache: dict) -> list[tuple[Hashable, Hashable]]:
    """A path of generating edges from a to b (BFS, deterministic)."""
    key = (a, b)
    if key in cache:
        return cache[key]
    if a == b:
        return []
    if not index.leq(a, b):
        raise PreconditionError(f"{node_label(a)} ≰ {node_label(b)}")
    outgoing = cache.setdefault("__out__", {})
    if not outgoing:
        for x, y, _ in index.edges:
            outgoing.setdefault(x, []).append(y)
    previous = {a: None}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        if x == b:
            break
        for y in outgoing.get(x, []):
            if y not in previous and index.leq(y, b):
                previous[y] = x
                queue.append(y)
    if b not in previous:
        raise ConstructionError(f"no generating path from {node_label(a)} to {node_label(b)}")
    path = []
    node = b
    while previous[node] is not None:
        path.append((previous[node], node))
        node = previous[node]
    path.reverse()
    cache[key] = path
    return path


def flag_of_pair(k: Hashable, l: Hashable) -> Flag:
    return Flag((k,)) if k == l else Flag((k, l))


def _merged_flag(*terms: Hashable) -> Flag:
    out = []
    for t in terms:
        if not out or out[-1] != t:
            out.append(t)
    return Flag(tuple(out))


class RingDiagram:
    """
    A diagram of product rings over an index poset.

    Args:
        name: Name used in exports.
        index: The index poset (base, flag or pair poset).
        values: Ring value at every node.
        maps: Ring maps on the generating edges, keyed by ``(a, b)``.
        flavor: ``s`` (splitting), ``f`` (coefficient system on flags) or ``p`` (pairs).
    """

    def __init__(
        self,
        name: str,
        index: Poset,
        values: dict[Hashable, RingValue],
        maps: dict[tuple[Hashable, Hashable], RingHom],
        flavor: Flavor,
    ):
        self.name = name
        self.index = index
        self.values = values
        self.maps = maps
        self.flavor: Flavor = flavor

        self.splitting: SplittingDiagram | None = None
        """The splitting diagram this was built from, when there is one."""

        self.euler: EulerSystem | None = None
        """The Euler system used for the localizations, when there is one."""

        self.fiber_blocks: dict[Hashable, tuple] | None = None
        """For pushed-forward diagrams: the block label of every factor at every node."""

        self.pushed_from: RingDiagram | None = None
        """For pushed-forward diagrams: the diagram that was pushed forward."""

        self.euler_adapted = False
        """Whether this is an Euler-adapted pushforward π_!^eR, whose modules must be pqc."""

        self.pi = None
        """For pushed-forward diagrams: the poset map pushed along."""

        self.fibers: dict[Hashable, list] | None = None
        """For pushed-forward diagrams: the domain nodes over every node, in factor order."""

        self._paths: dict = {}
        self._check()

    def value(self, node: Hashable) -> RingValue:
        return self.values[node]

    def map_between(self, a: Hashable, b: Hashable) -> RingHom:
        value = self.values[a]
        result = RingHom(value, value, tuple(range(len(value))))
        for x, y in _path(self.index, a, b, self._paths):
            result = result.compose(self.maps[(x, y)])
        return result

    def _check(self):
        for a, b, _ in self.index.edges:
            hom = self.maps.get((a, b))
            if hom is None:
                raise ConstructionError(f"{self.name}: no map on {node_label(a)} → {node_label(b)}")
            if hom.source != self.values[a] or hom.target != self.values[b]:
                raise ConstructionError(
                    f"{self.name}: map on {node_label(a)} → {node_label(b)} has the wrong ends"
                )
        for a, c, reindexes in _two_step_composites(self.index, lambda x, y: self.maps[(x, y)].reindex):
            if len(set(reindexes)) > 1:
                raise ConstructionError(
                    f"{self.name} is not functorial from {node_label(a)} to {node_label(c)}"
                )


def _two_step_composites(index: Poset, reindex_of) -> Iterable:
    outgoing: dict = {}
    for x, y, _ in index.edges:
        outgoing.setdefault(x, []).append(y)
    for a in index.nodes:
        by_target: dict = {}
        for b in outgoing.get(a, []):
            first = reindex_of(a, b)
            for c in outgoing.get(b, []):
                second = reindex_of(b, c)
                by_target.setdefault(c, []).append(tuple(first[i] for i in second))
        for c, composites in by_target.items():
            if len(composites) > 1:
                yield a, c, composites


class ModuleDiagram:
    """
    A module over a ring diagram: a module value at every node and module maps
    on the generating edges, each over the corresponding ring map.

    Args:
        name: Name used in exports and reports.
        ring: The ring diagram.
        values: Module value at every node, over the ring value there.
        maps: Module maps on the generating edges.
        settings: Used for the functoriality check and the regularity certificates.
        check: Verify commuting squares on construction.

    Raises:
        ConstructionError: if a value or map does not match the ring diagram.
        UncertifiedLocalizationError: if an inverted form is neither regular nor
            nilpotent on some localized value.
    """

    def __init__(
        self,
        name: str,
        ring: RingDiagram,
        values: dict[Hashable, ModuleValue],
        maps: dict[tuple[Hashable, Hashable], ModuleMap],
        settings: EngineSettings | None = None,
        check: bool = True,
    ):
        self.name = name
        self.ring = ring
        self.values = values
        self.maps = maps
        self.settings = settings or EngineSettings()
        self._paths: dict = {}
        self._between: dict = {}
        self._check_shape()
        self.certificates: dict[tuple[Hashable, int], dict[str, str]] = {
            (node, j): certify(piece, self.settings)
            for node, value in values.items()
            for j, piece in enumerate(value.pieces)
            if piece.ring.inverted and piece.rank
        }
        """Regularity certificates of every localized factor, keyed by (node, factor)."""
        if check:
            self.check_functoriality()

    @property
    def index(self) -> Poset:
        return self.ring.index

    def value(self, node: Hashable) -> ModuleValue:
        return self.values[node]

    def map_between(self, a: Hashable, b: Hashable) -> ModuleMap:
        key = (a, b)
        if key not in self._between:
            result = identity_map(self.values[a])
            for x, y in _path(self.index, a, b, self._paths):
                result = result.compose(self.maps[(x, y)])
            self._between[key] = result
        return self._between[key]

    def _check_shape(self):
        for node in self.index.nodes:
            if node not in self.values:
                raise ConstructionError(f"{self.name}: no value at {node_label(node)}")
            if self.values[node].ring != self.ring.value(node):
                raise ConstructionError(
                    f"{self.name}: value at {node_label(node)} is not over "
                    f"{self.ring.value(node).describe()}"
                )
        for a, b, _ in self.index.edges:
            m = self.maps.get((a, b))
            if m is None:
                raise ConstructionError(f"{self.name}: no map on {node_label(a)} → {node_label(b)}")
            if m.reindex != self.ring.maps[(a, b)].reindex:
                raise ConstructionError(
                    f"{self.name}: map on {node_label(a)} → {node_label(b)} is not over the ring map"
                )

    def check_functoriality(self):
        """Compares the composites along all two-step paths with common ends."""
        bound = self.settings.denominator_bound
        outgoing: dict = {}
        for x, y, _ in self.index.edges:
            outgoing.setdefault(x, []).append(y)
        for a in self.index.nodes:
            composites: dict = {}
            for b in outgoing.get(a, []):
                for c in outgoing.get(b, []):
                    composites.setdefault(c, []).append(self.maps[(a, b)].compose(self.maps[(b, c)]))
            for c, maps in composites.items():
                for other in maps[1:]:
                    if not maps[0].equals(other, bound):
                        raise ConstructionError(
                            f"{self.name} is not functorial from {node_label(a)} to {node_label(c)}"
                        )


def splitting_to_coefficient(
    rs: SplittingDiagram, system: EulerSystem, flags: Poset | None = None, max_flags: int = 5000
) -> RingDiagram:
    """
    The coefficient system R^f(F) = 𝓔⁻¹_{f(F)/l(F)} R(G/l(F)) on flag(Σ).

    Raises:
        TransitivityError: if the Euler system is not transitive.
    """
    system.check_transitive()
    flags = flags or flag_poset(rs.sigma, max_flags)
    values = {f: system.localized_value(f.first, f.last) for f in flags.nodes}
    maps = {}
    for e, f, _ in flags.edges:
        reindex = tuple(rs.source_component(e.last, f.last, j) for j in range(len(values[f])))
        maps[(e, f)] = RingHom(values[e], values[f], reindex)
    diagram = RingDiagram(f"{rs.name}^f", flags, values, maps, "f")
    diagram.splitting = rs
    diagram.euler = system
    return diagram


def check_ring_middle_independence(rf: RingDiagram) -> list[str]:
    """Flags whose ring differs from that of (f(F) ⊃ l(F))."""
    bad = []
    for f in rf.index.nodes:
        short = flag_of_pair(f.first, f.last)
        if rf.value(f) != rf.value(short):
            bad.append(str(f))
    return bad


def _transport_reindex(diagram, p: PairObj, q: PairObj) -> tuple[int, ...]:
    """Reindexing of the pair map p → q read off the flag diagram."""
    big = _merged_flag(q.first, p.first, p.last, q.last)
    to_big = diagram.map_between(flag_of_pair(p.first, p.last), big).reindex
    from_q = diagram.map_between(flag_of_pair(q.first, q.last), big).reindex
    inverse = {i: j for j, i in enumerate(from_q)}
    return tuple(to_big[inverse[j]] for j in range(len(from_q)))


def coefficient_to_pairs(rf: RingDiagram) -> RingDiagram:
    """
    R^p(K ⊇ L) = R^f(K ⊃ L), with maps transported through the flag (H ⊇ K ⊇ L ⊇ M).

    Raises:
        MiddleIndependenceError: if some flag value depends on its middle terms.
    """
    bad = check_ring_middle_independence(rf)
    if bad:
        raise MiddleIndependenceError(f"{rf.name} is not middle-independent at {', '.join(bad)}")
    sigma = rf.index.base
    pairs = pair_category(sigma)
    values = {p: rf.value(flag_of_pair(p.first, p.last)) for p in pairs.nodes}
    maps = {
        (p, q): RingHom(values[p], values[q], _transport_reindex(rf, p, q))
        for p, q, _ in pairs.edges
    }
    diagram = RingDiagram(f"{rf.name.removesuffix('^f')}^p", pairs, values, maps, "p")
    diagram.splitting = rf.splitting
    diagram.euler = rf.euler
    return diagram


def pairs_to_flags(rp: RingDiagram, max_flags: int = 5000) -> RingDiagram:
    """The flag diagram F ↦ R^p(f(F) ⊇ l(F))."""
    flags = flag_poset(rp.index.base, max_flags)
    values = {f: rp.value(PairObj(f.first, f.last)) for f in flags.nodes}
    maps = {}
    for e, f, _ in flags.edges:
        hom = rp.map_between(PairObj(e.first, e.last), PairObj(f.first, f.last))
        maps[(e, f)] = RingHom(values[e], values[f], hom.reindex)
    diagram = RingDiagram(f"{rp.name.removesuffix('^p')}^f", flags, values, maps, "f")
    diagram.splitting = rp.splitting
    diagram.euler = rp.euler
    return diagram


def ring_as_module(ring: RingDiagram, settings: EngineSettings | None = None, shift: int = 0) -> ModuleDiagram:
    """The ring diagram as a module over itself, with its generator in degree `shift`."""

    values = {
        node: ModuleValue(v.labels, tuple(Piece(c, (shift,)) for c in v.components))
        for node, v in ring.values.items()
    }
    maps = {
        (a, b): canonical_map(values[a], values[b], hom.reindex) for (a, b), hom in ring.maps.items()
    }
    return ModuleDiagram(ring.name if not shift else f"Σ^{shift}{ring.name}", ring, values, maps, settings, check=False)


def _edge_kind(index: Poset, a: Hashable, b: Hashable, tag: str) -> str:
    """``qc``, ``e`` or ``middle`` for a generating edge."""
    if tag == "horizontal":
        return "qc"
    if tag == "vertical":
        return "e"
    if tag.startswith("face:"):
        i = int(tag.split(":")[1])
        if i == 0:
            return "qc"
        if i == b.length:
            return "e"
        return "middle"
    raise PreconditionError(f"edge tag {tag!r} carries no predicate")


def _edges_report(m: ModuleDiagram, kinds: set, name: str, settings: EngineSettings) -> PredicateReport:
    window = (settings.window_lo, settings.window_hi)
    for a, b, tag in m.index.edges:
        if _edge_kind(m.index, a, b, tag) not in kinds:
            continue
        witness = value_bijectivity_witness(m.maps[(a, b)], settings)
        if witness:
            logger.info("%s fails for %s at %s → %s", name, m.name, node_label(a), node_label(b))
            return PredicateReport(
                predicate=name,
                verdict="fail",
                witness=f"{node_label(a)} → {node_label(b)} ({tag}): {witness}",
                window=window,
            )
    return PredicateReport(predicate=name, verdict="pass-on-window", window=window)


def is_qc(m: ModuleDiagram, settings: EngineSettings) -> PredicateReport:
    """∂₀ (flags) or horizontal (pairs) structure maps are extensions of scalars."""
    return _edges_report(m, {"qc"}, "qc", settings)


def is_extended(m: ModuleDiagram, settings: EngineSettings) -> PredicateReport:
    """∂_s (flags) or vertical (pairs) structure maps are extensions of scalars."""
    return _edges_report(m, {"e"}, "e", settings)


def is_qce(m: ModuleDiagram, settings: EngineSettings) -> PredicateReport:
    qc = is_qc(m, settings)
    if not qc.passed:
        return qc.model_copy(update={"predicate": "qce"})
    e = is_extended(m, settings)
    return e.model_copy(update={"predicate": "qce"})


def is_middle_independent(m: ModuleDiagram, settings: EngineSettings) -> PredicateReport:
    """Middle faces induce isomorphisms (vacuous on pair diagrams)."""
    return _edges_report(m, {"middle"}, "middle-independent", settings)


def _last_vertex(node: Hashable) -> Hashable:
    if isinstance(node, Flag):
        return Flag((node.last,))
    if isinstance(node, PairObj):
        return PairObj(node.last, node.last)
    raise PreconditionError(f"{node_label(node)} has no last term")


def is_p_module(m: ModuleDiagram, settings: EngineSettings) -> PredicateReport:
    """
    M(F̄) → ∏_{πF=F̄} e_F M(F̄) is bijective.

    Over finite products every factor belongs to exactly one block, so the
    first check is that the module factors are partitioned by the fiber
    idempotents. Over π_!^eR the unit M → π_!^e eM must be an isomorphism as
    well (pqc): every value is the extension of the value at the last vertex,
    ∏_F R(F) ⊗ e_{l(F)} M(l̄(F̄)), through the structure map from that vertex.
    """
    window = (settings.window_lo, settings.window_hi)
    blocks = m.ring.fiber_blocks
    if blocks is None:
        raise PreconditionError(f"{m.ring.name} carries no fiber idempotents")
    for node in m.index.nodes:
        value = m.values[node]
        expected = blocks[node]
        if len(value.labels) != len(expected) or any(
            label[0] != block for label, block in zip(value.labels, expected)
        ):
            return PredicateReport(
                predicate="p-module",
                verdict="fail",
                witness=f"{node_label(node)}: factors do not split along the fiber idempotents",
                window=window,
            )
    if m.ring.euler_adapted:
        for node in m.index.nodes:
            vertex = _last_vertex(node)
            if vertex == node:
                continue
            witness = value_bijectivity_witness(m.map_between(vertex, node), settings)
            if witness:
                logger.info("p-module fails for %s: unit at %s", m.name, node_label(node))
                return PredicateReport(
                    predicate="p-module",
                    verdict="fail",
                    witness=f"{node_label(node)} is not the extension of {node_label(vertex)}: {witness}",
                    window=window,
                )
    return PredicateReport(predicate="p-module", verdict="pass-on-window", window=window)


def determination_witness(m: ModuleDiagram, settings: EngineSettings, last: bool) -> str | None:
    """
    Whether M(F) is the extension of M(l(F)) (last) or of M(f(F)) (first), over
    every flag, along the possibly non-generating map from the vertex.
    """
    for f in m.index.nodes:
        if not isinstance(f, Flag) or f.length == 0:
            continue
        vertex = Flag((f.last,)) if last else Flag((f.first,))
        witness = value_bijectivity_witness(m.map_between(vertex, f), settings)
        if witness:
            return f"{f}: {witness}"
    return None


def phi(m: ModuleDiagram, k: Hashable) -> ModuleValue:
    """φ^K M, the value on the length-0 flag (K) or the pair (K ⊇ K)."""
    sample = m.index.nodes[0]
    if isinstance(sample, Flag):
        return m.values[Flag((k,))]
    if isinstance(sample, PairObj):
        return m.values[PairObj(k, k)]
    return m.values[k]


def transport_pair_map(m: ModuleDiagram, p: PairObj, q: PairObj) -> ModuleMap:
    """
    For a middle-independent flag module, the map M(p) → M(q) between pairs:
    the map into the merged flag followed by the inverse of the middle iso.
    """
    big = _merged_flag(q.first, p.first, p.last, q.last)
    along = m.map_between(flag_of_pair(p.first, p.last), big)
    through = m.map_between(flag_of_pair(q.first, q.last), big)
    return factor_through(through, along, m.settings)


class DiagramMap:
    """
    A map of module diagrams over the same ring diagram: one module map per node,
    each over the identity of the ring value there.
    """

    def __init__(self, name: str, source: ModuleDiagram, target: ModuleDiagram, components: dict):
        self.name = name
        self.source = source
        self.target = target
        self.components: dict[Hashable, ModuleMap] = components
        for node in source.index.nodes:
            if node not in components:
                raise ConstructionError(f"{name}: no component at {node_label(node)}")

    def naturality_witness(self, settings: EngineSettings) -> str | None:
        """The first generating edge whose square does not commute."""
        bound = settings.denominator_bound
        for a, b, _ in self.source.index.edges:
            left = self.components[a].compose(self.target.maps[(a, b)])
            right = self.source.maps[(a, b)].compose(self.components[b])
            if not left.equals(right, bound):
                return f"square at {node_label(a)} → {node_label(b)} does not commute"
        return None

    def iso_witness(self, settings: EngineSettings) -> str | None:
        """The first node where the component is not bijective."""
        for node in self.source.index.nodes:
            witness = value_bijectivity_witness(self.components[node], settings)
            if witness:
                return f"{node_label(node)}: {witness}"
        return None

    def compose(self, after: "DiagramMap") -> "DiagramMap":
        """`after` ∘ self."""
        return DiagramMap(
            f"{after.name}∘{self.name}",
            self.source,
            after.target,
            {n: self.components[n].compose(after.components[n]) for n in self.source.index.nodes},
        )

    def equals(self, other: "DiagramMap", settings: EngineSettings) -> bool:
        bound = settings.denominator_bound
        return all(
            self.components[n].equals(other.components[n], bound) for n in self.source.index.nodes
        )


def identity_diagram_map(m: ModuleDiagram) -> DiagramMap:
    return DiagramMap(f"id({m.name})", m, m, {n: identity_map(m.values[n]) for n in m.index.nodes})


def label_comparison(name: str, source: ModuleDiagram, target: ModuleDiagram) -> DiagramMap:
    """
    The map matching factors by label and generators by position, for diagrams
    whose values agree up to the order of the factors.

    Raises:
        ConstructionError: if a label is missing or the generator degrees differ.
    """
    components = {}
    for node in source.index.nodes:
        a, b = source.values[node], target.values[node]
        try:
            reindex = [a.labels.index(label) for label in b.labels]
        except ValueError:
            raise ConstructionError(f"{name}: factor labels differ at {node_label(node)}") from None
        components[node] = canonical_map(a, b, reindex)
    return DiagramMap(name, source, target, components)


def same_diagram(a: ModuleDiagram, b: ModuleDiagram, settings: EngineSettings) -> str | None:
    """
    Whether two module diagrams over the same index agree on the nose: equal values
    and equal structure maps on every generating edge.
    """
    for node in a.index.nodes:
        if node not in b.values:
            return f"{node_label(node)} missing"
        if a.values[node] != b.values[node]:
            return f"values differ at {node_label(node)}"
    for key, m in a.maps.items():
        if not m.equals(b.maps[key], settings.denominator_bound):
            return f"structure maps differ on {node_label(key[0])} → {node_label(key[1])}"
    return None
