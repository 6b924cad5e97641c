"""
Standard instances and the module corpus used by the law suites.

An `Instance` bundles a closed subgroup universe, the posets Σ_a, Σ_c, Σ_d with
the maps q and d, and the ring diagrams of the four models:

    𝒜^p_a over ℝ_a^p on qp(Σ_a)     𝒜^p_c over ℝ_c^p on qp(Σ_c)
    𝒜^f_c over ℝ_c^f on flag(Σ_c)   𝒜^f_d over ℝ_d^f = d_!^e ℝ_c^f on flag(Σ_d)
"""

import dataclasses
import logging
import random
from dataclasses import dataclass, field
from typing import Hashable, Literal, Sequence

from torus_models.diagrams import (
    ModuleDiagram,
    RingDiagram,
    coefficient_to_pairs,
    ring_as_module,
    splitting_to_coefficient,
)
from torus_models.errors import ConstructionError, PreconditionError, enrich
from torus_models.functors.euler_adapted import pi_shriek_e_ring
from torus_models.modules import Element, ModuleMap, ModuleValue, Piece
from torus_models.posets import (
    Flag,
    MultiplicitySystem,
    Poset,
    PosetMap,
    build_sigma_a,
    build_sigma_c,
    dimension_map,
    flag_poset,
    node_label,
    quotient_map_q,
)
from torus_models.rings import (
    EulerSystem,
    SplittingDiagram,
    borel_splitting,
    euler_system_standard,
    multiplicity_splitting,
    mutate_euler,
)
from torus_models.settings import EngineSettings
from torus_models.subgroups import (
    ClosedSubgroup,
    close_universe,
    cyclic,
    dim,
    subgroup,
    torus,
    trivial,
)

logger = logging.getLogger(__name__)

ModuleKind = Literal["free", "shift", "torsion", "vertex", "random-qce"]


@dataclass
class Instance:
    """A fully built desk-scale instance of the four models."""

    name: str
    """Name used in reports and exports, e.g. ``rank1-standard``."""

    rank: int
    """Rank r of the ambient torus T^r."""

    settings: EngineSettings
    """Settings the diagrams were built with."""

    universe: list[ClosedSubgroup]
    """The closed subgroup universe, in deterministic order."""

    closure_added: list[ClosedSubgroup]
    """Members added by closing the generating universe."""

    sigma_a: Poset
    sigma_c: Poset
    sigma_d: Poset

    q: PosetMap
    """Identity components Σ_a → Σ_c."""

    d: PosetMap
    """Dimension Σ_c → Σ_d."""

    multiplicity: MultiplicitySystem
    """The sets 𝓕/K with their pushforwards."""

    ra_s: SplittingDiagram
    rc_s: SplittingDiagram

    euler_a: EulerSystem
    """Euler system on ℝ_a^s."""

    euler_c: EulerSystem
    """Euler system on ℝ_c^s, of the configured variant."""

    ra_f: RingDiagram
    ra_p: RingDiagram
    rc_f: RingDiagram
    rc_p: RingDiagram
    rd_f: RingDiagram

    samples: dict[str, ModuleDiagram] = field(default_factory=dict)
    """The ring diagrams of the four models as modules over themselves."""

    _corpora: dict = field(default_factory=dict, repr=False)

    @property
    def variant(self) -> str:
        return self.euler_c.variant

    @property
    def dq(self) -> PosetMap:
        """The composite Σ_a → Σ_d."""
        return PosetMap(
            "dq", self.sigma_a, self.sigma_d, {h: self.d(self.q(h)) for h in self.sigma_a.nodes}
        )

    def subgroup(self, name: str) -> ClosedSubgroup:
        """
        Looks a universe member up by name.

        Raises:
            PreconditionError: if no member has that name.
        """
        for h in self.universe:
            if h.name == name:
                return h
        known = ", ".join(h.name for h in self.universe)
        raise PreconditionError(f"{self.name} has no subgroup {name!r} (members: {known})")

    def rings(self) -> dict[str, RingDiagram]:
        """The ring diagrams of the four models, keyed by model name."""
        return {"A_a^p": self.ra_p, "A_c^p": self.rc_p, "A_c^f": self.rc_f, "A_d^f": self.rd_f}

    def corpus(self, model: str, size: int | None = None) -> list[ModuleDiagram]:
        """The cached module corpus over the ring diagram of one model."""
        size = self.settings.corpus_size if size is None else size
        key = (model, size)
        if key not in self._corpora:
            self._corpora[key] = module_corpus(self, self.rings()[model], size)
        return self._corpora[key]


def _rank1_universe(spec: str) -> list[ClosedSubgroup]:
    if spec == "standard":
        return [trivial(1), cyclic(2), cyclic(3), torus(1)]
    if spec == "minimal":
        return [trivial(1), torus(1)]
    raise PreconditionError(f"unknown rank-1 universe {spec!r}")


def _rank2_universe(spec: str) -> list[ClosedSubgroup]:
    diamond = [
        trivial(2),
        subgroup([[0, 1]], 2, "T×1"),
        subgroup([[1, 0]], 2, "1×T"),
        torus(2),
    ]
    if spec == "minimal":
        return diamond
    if spec == "standard":
        return diamond + [subgroup([[2, 0], [0, 1]], 2, "C2×1")]
    raise PreconditionError(f"unknown rank-2 universe {spec!r}")


def _name_added(h: ClosedSubgroup, universe: list[ClosedSubgroup]) -> ClosedSubgroup:
    if h.name and h.name not in {g.name for g in universe if g is not h}:
        return h
    rows = ";".join(",".join(str(x) for x in row) for row in h.annihilator.basis.entries)
    return h.named(f"Λ[{rows}]")


def gen_standard_instance(
    rank: int,
    universe_spec: str | Sequence[ClosedSubgroup] = "standard",
    settings: EngineSettings | None = None,
) -> Instance:
    """
    Builds an instance from a named or explicit subgroup universe.

    Args:
        rank: 1 or 2.
        universe_spec: ``standard`` ({1, C2, C3, T} in rank 1, the diamond plus
            C2×1 in rank 2), ``minimal`` ({1, T}, or the bare diamond), or
            explicit generators.
        settings: Caps and the Euler variant.

    Raises:
        PreconditionError: for other ranks or unknown universe names.
        CapExceededError: if the closure grows beyond the subgroup cap.
    """
    settings = settings or EngineSettings()
    if rank not in (1, 2):
        raise PreconditionError(f"standard instances exist in rank 1 and 2, not {rank}")
    if isinstance(universe_spec, str):
        generators = _rank1_universe(universe_spec) if rank == 1 else _rank2_universe(universe_spec)
        name = f"rank{rank}-{universe_spec}"
    else:
        generators = list(universe_spec)
        name = f"rank{rank}-custom"
    if any(h.ambient_rank != rank for h in generators):
        raise PreconditionError(f"universe members must live in T^{rank}")

    closed, added = close_universe(generators, settings.max_subgroups)
    closed = [_name_added(h, closed) for h in closed]
    added_keys = {h.annihilator for h in added}
    added = [h for h in closed if h.annihilator in added_keys]
    if added:
        logger.info("%s: closure added %s", name, ", ".join(h.name for h in added))

    try:
        sigma_a = build_sigma_a(closed)
        sigma_c = build_sigma_c([h for h in closed if h.is_connected])
        q = quotient_map_q(sigma_a, sigma_c)
        d = dimension_map(sigma_c)
        system = MultiplicitySystem(q)
        ra_s = borel_splitting(sigma_a)
        rc_s = multiplicity_splitting(system)
        euler_a = euler_system_standard(ra_s, settings.euler_variant)
        euler_c = euler_system_standard(rc_s, settings.euler_variant)
        ra_f = splitting_to_coefficient(ra_s, euler_a, flag_poset(sigma_a, settings.max_flags))
        rc_f = splitting_to_coefficient(rc_s, euler_c, flag_poset(sigma_c, settings.max_flags))
        ra_p = coefficient_to_pairs(ra_f)
        rc_p = coefficient_to_pairs(rc_f)
        rd_f = pi_shriek_e_ring(rc_f, d, settings)
    except ConstructionError as e:
        raise enrich(e, f"building instance {name}")

    instance = Instance(
        name=name,
        rank=rank,
        settings=settings,
        universe=closed,
        closure_added=added,
        sigma_a=sigma_a,
        sigma_c=sigma_c,
        sigma_d=d.codomain,
        q=q,
        d=d,
        multiplicity=system,
        ra_s=ra_s,
        rc_s=rc_s,
        euler_a=euler_a,
        euler_c=euler_c,
        ra_f=ra_f,
        ra_p=ra_p,
        rc_f=rc_f,
        rc_p=rc_p,
        rd_f=rd_f,
    )
    instance.samples = {model: ring_as_module(r, settings) for model, r in instance.rings().items()}
    logger.debug(
        "%s: |Σ_a| = %d, |Σ_c| = %d, %d flags over Σ_c",
        name, len(sigma_a), len(sigma_c), len(rc_f.index),
    )
    return instance


def mutate(instance: Instance) -> Instance:
    """A copy whose ℝ_c Euler system has one generator replaced by zero."""
    return dataclasses.replace(
        instance,
        name=f"{instance.name}+mutated",
        euler_c=mutate_euler(instance.euler_c),
    )


def compare_vertex_values(instance: Instance) -> list[str]:
    """
    Vertices of flag(Σ_d) where (dq)_!^e ℝ_a^f and ℝ_d^f have different factors.

    Factors are matched by the subgroup they belong to.
    """
    via_a = pi_shriek_e_ring(instance.ra_f, instance.dq, instance.settings)
    mismatches = []
    for n in instance.sigma_d.nodes:
        vertex = Flag((n,))
        left = sorted(
            zip(via_a.value(vertex).labels, via_a.value(vertex).components),
            key=lambda pair: pair[0][1].sort_key(),
        )
        right = sorted(
            zip(instance.rd_f.value(vertex).labels, instance.rd_f.value(vertex).components),
            key=lambda pair: pair[0][1].sort_key(),
        )
        left_keys = [(label[1].annihilator, c) for label, c in left]
        right_keys = [(label[1].annihilator, c) for label, c in right]
        if left_keys != right_keys:
            mismatches.append(f"({n}): {via_a.value(vertex).describe()} vs {instance.rd_f.value(vertex).describe()}")
    return mismatches


# module corpus


def _last(node: Hashable) -> Hashable:
    if not hasattr(node, "last"):
        raise PreconditionError(f"modules are generated over flag or pair diagrams, not at {node_label(node)}")
    return node.last


def _transport(source: Piece, target: Piece) -> tuple[Element, ...]:
    """Generator i ↦ generator i, or zero when the target has fewer generators."""
    return tuple(target.generator(g) if g < target.rank else target.zero() for g in range(source.rank))


def _supported(
    ring: RingDiagram, k: ClosedSubgroup | int, length: int, settings: EngineSettings, name: str
) -> ModuleDiagram:
    values = {}
    for node in ring.index.nodes:
        rv = ring.value(node)
        pieces = []
        for component in rv.components:
            if _last(node) != k:
                pieces.append(Piece(component, ()))
                continue
            if length == 0:
                pieces.append(Piece(component, (0,)))
                continue
            gens = component.base.generators
            if not gens:
                raise PreconditionError(f"torsion at {node_label(k)} needs a proper subgroup")
            pieces.append(Piece(component, (0,), tuple((g ** length,) for g in gens)))
        values[node] = ModuleValue(rv.labels, tuple(pieces))
    maps = {}
    for (a, b), hom in ring.maps.items():
        images = tuple(
            _transport(values[a].pieces[i], values[b].pieces[j]) for j, i in enumerate(hom.reindex)
        )
        maps[(a, b)] = ModuleMap(values[a], values[b], hom.reindex, images)
    return ModuleDiagram(name, ring, values, maps, settings)


def _identity(n: int, one, zero) -> list[list]:
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def _matmul(a: list[list], b: list[list], zero) -> list[list]:
    n = len(a)
    return [[sum((a[i][t] * b[t][j] for t in range(n)), zero) for j in range(n)] for i in range(n)]


def _unitriangular_inverse(u: list[list], one, zero) -> list[list]:
    n = len(u)
    nil = [[-u[i][j] if i != j else zero for j in range(n)] for i in range(n)]
    result = _identity(n, one, zero)
    power = _identity(n, one, zero)
    for _ in range(n - 1):
        power = _matmul(power, nil, zero)
        result = [[result[i][j] + power[i][j] for j in range(n)] for i in range(n)]
    return result


def _random_unitriangular(component, degrees: tuple[int, ...], rng: random.Random) -> list[list]:
    base = component.base
    one, zero = base.ambient.one, base.ambient.zero
    u = _identity(len(degrees), one, zero)
    for i in range(len(degrees)):
        for j in range(i + 1, len(degrees)):
            for mono in base.monomials((degrees[i] - degrees[j]) // 2):
                u[i][j] += rng.randint(-2, 2) * mono
    return u


def _random_qce(ring: RingDiagram, seed: int, settings: EngineSettings, name: str) -> ModuleDiagram:
    rng = random.Random(seed)
    degrees = tuple(sorted((rng.choice((0, 2, 4)) for _ in range(rng.randint(1, 3))), reverse=True))
    frames: dict = {}
    values = {}
    for node in ring.index.nodes:
        rv = ring.value(node)
        values[node] = ModuleValue(rv.labels, tuple(Piece(c, degrees) for c in rv.components))
        for label, component in zip(rv.labels, rv.components):
            key = (_last(node), label)
            if key not in frames:
                frames[key] = _random_unitriangular(component, degrees, rng)
    maps = {}
    for (a, b), hom in ring.maps.items():
        images = []
        target = values[b]
        for j, i in enumerate(hom.reindex):
            piece = target.pieces[j]
            one, zero = piece.one, piece.zero_poly
            u_a = frames[(_last(a), values[a].labels[i])]
            u_b = frames[(_last(b), target.labels[j])]
            # b^a_i = Σ U_a[i][t] e_t and e = U_b⁻¹ b^b, so the matrix is U_a U_b⁻¹
            matrix = _matmul(u_a, _unitriangular_inverse(u_b, one, zero), zero)
            images.append(tuple(Element(tuple(row), one) for row in matrix))
        maps[(a, b)] = ModuleMap(values[a], target, hom.reindex, tuple(images))
    return ModuleDiagram(name, ring, values, maps, settings)


def gen_module(
    kind: ModuleKind,
    instance: Instance,
    ring: RingDiagram | None = None,
    *,
    at: str | None = None,
    length: int = 1,
    shift: int = 2,
    seed: int | None = None,
) -> ModuleDiagram:
    """
    Generates a test module over one of the instance's flag or pair diagrams.

    Args:
        kind: ``free`` (the ring), ``shift`` (the ring with generator in degree
            `shift`), ``torsion`` (R/(x_1^length, …, x_n^length) at the vertex `at`,
            zero after any localization and elsewhere), ``vertex`` (free at `at`, zero
            elsewhere) or ``random-qce`` (a twisted free module, qce by
            construction).
        instance: The instance.
        ring: The ring diagram; defaults to ℝ_c^f.
        at: Name of the subgroup (or dimension) carrying a torsion or vertex module.
        length: Nilpotency length of the torsion relation.
        shift: Generator degree for ``shift``.
        seed: Seed for ``random-qce``; defaults to the settings seed.

    Raises:
        PreconditionError: for invalid parameters.
    """
    settings = instance.settings
    ring = ring or instance.rc_f
    if kind == "free":
        return ring_as_module(ring, settings)
    if kind == "shift":
        if shift % 2:
            raise PreconditionError(f"odd shift {shift}: generators live in even degrees")
        return ring_as_module(ring, settings, shift)
    if kind in ("torsion", "vertex"):
        if at is None:
            raise PreconditionError(f"{kind} modules need a subgroup")
        if kind == "torsion" and length < 1:
            raise PreconditionError(f"torsion length must be positive, got {length}")
        base = ring.index.base
        k = int(at) if base is instance.sigma_d else instance.subgroup(at)
        if k not in base:
            raise PreconditionError(f"{at} is not a node of {base.name}")
        return _supported(
            ring, k, length if kind == "torsion" else 0, settings, f"{kind}({at}, {length})@{ring.name}"
        )
    if kind == "random-qce":
        seed = settings.seed if seed is None else seed
        return _random_qce(ring, seed, settings, f"random-qce({seed})@{ring.name}")
    raise PreconditionError(f"unknown module kind {kind!r}")


def module_corpus(instance: Instance, ring: RingDiagram, size: int, seed: int | None = None) -> list[ModuleDiagram]:
    """
    A deterministic list of `size` modules cycling through every kind.

    Torsion modules sit at the proper vertices; the rest of the list is filled
    with random-qce modules of consecutive seeds.
    """
    seed = instance.settings.seed if seed is None else seed
    base = ring.index.base
    proper = [k for k in base.nodes if k != base.top]
    corpus = [gen_module("free", instance, ring), gen_module("shift", instance, ring, shift=2)]
    for k in proper:
        label = str(k) if isinstance(k, int) else k.name
        corpus.append(gen_module("torsion", instance, ring, at=label, length=1))
        corpus.append(gen_module("torsion", instance, ring, at=label, length=2))
        corpus.append(gen_module("vertex", instance, ring, at=label))
    n = 0
    while len(corpus) < size:
        corpus.append(gen_module("random-qce", instance, ring, seed=seed + n))
        n += 1
    return corpus[:size]
