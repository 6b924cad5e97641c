"""
Graded commutative rings: Borel cohomology rings of torus quotients, their
localizations at linear forms, finite products, and Euler systems.

All rings of rank r live inside one ambient polynomial ring ℚ[x_1, …, x_r]
(``c`` when r = 1) with every variable in cohomological degree 2. The ring
H*(BG/K) is the subring generated by the linear forms of the annihilator
basis Λ(K); inflation along L ⊆ K is the inclusion of subrings induced by
Λ(K) ⊆ Λ(L). Two subgroups with the same identity component have the same
rational annihilator span and therefore the same ring.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations_with_replacement
from math import lcm
from typing import Hashable, Iterable, Literal, Sequence

from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement, PolyRing, ring

from torus_models import linalg
from torus_models.errors import (
    ConstructionError,
    PreconditionError,
    TransitivityError,
    UncertifiedLocalizationError,
)
from torus_models.lattice import IntMatrix, index_in_saturation, saturate
from torus_models.posets import Poset, node_label
from torus_models.subgroups import (
    Character,
    ClosedSubgroup,
    contains,
    identity_component,
    join_istar,
)

logger = logging.getLogger(__name__)

Variant = Literal["RRc", "RRcb-diagonal", "RRcb-componentwise"]


@lru_cache(maxsize=None)
def ambient_ring(ambient_rank: int) -> tuple[PolyRing, tuple[PolyElement, ...]]:
    """The ambient coordinate ring of rank r and its variables."""
    if ambient_rank < 1:
        raise PreconditionError(f"no ambient ring for rank {ambient_rank}")
    if ambient_rank == 1:
        names = "c"
    elif ambient_rank == 2:
        names = "x,y"
    else:
        names = ",".join(f"x{i}" for i in range(1, ambient_rank + 1))
    R, *gens = ring(names, QQ)
    return R, tuple(gens)


def linear_form(vector: Sequence[int], ambient_rank: int) -> PolyElement:
    """c_1 of the character with exponent vector `vector`."""
    R, gens = ambient_ring(ambient_rank)
    result = R.zero
    for v, g in zip(vector, gens):
        if v:
            result += g * v
    return result


def normalize_form(f: PolyElement) -> PolyElement:
    """Scales a nonzero polynomial to leading coefficient 1."""
    if not f:
        return f
    return f.monic()


def poly_degree(f: PolyElement) -> int:
    """Polynomial degree of a homogeneous element (0 for constants and zero)."""
    if not f:
        return 0
    return max(sum(m) for m in f.monoms())


@lru_cache(maxsize=None)
def ambient_monomials(ambient_rank: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """Exponent vectors of the ambient monomials of a given polynomial degree."""
    if degree < 0:
        return ()
    if ambient_rank == 1:
        return ((degree,),)
    out = []
    for first in range(degree, -1, -1):
        for rest in ambient_monomials(ambient_rank - 1, degree - first):
            out.append((first,) + rest)
    return tuple(out)


class BorelRing:
    """
    The rational Borel cohomology H*(BG/K) of a torus quotient.

    Args:
        subgroup: The subgroup K. Rings of subgroups sharing an identity
            component compare equal.
    """

    def __init__(self, subgroup: ClosedSubgroup):
        self.subgroup = subgroup
        """The subgroup K with ring H*(BG/K)."""

        self.ambient_rank = subgroup.ambient_rank

    @cached_property
    def key(self):
        """Identity of the ring: the saturated annihilator."""
        return saturate(self.subgroup.annihilator)

    @cached_property
    def generators(self) -> tuple[PolyElement, ...]:
        """Degree 2 generators, one per row of the annihilator basis."""
        return tuple(
            linear_form(row, self.ambient_rank) for row in self.subgroup.annihilator.basis.entries
        )

    @property
    def ambient(self) -> PolyRing:
        return ambient_ring(self.ambient_rank)[0]

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def __eq__(self, other):
        return isinstance(other, BorelRing) and other.key == self.key

    def __hash__(self):
        return hash(("BorelRing", self.key))

    def monomials(self, degree: int) -> list[PolyElement]:
        """Products of `degree` generators; they span the ring in that polynomial degree."""
        if degree < 0:
            return []
        if degree == 0:
            return [self.ambient.one]
        return _subring_monomials(self.generators, degree)

    def contains_poly(self, f: PolyElement) -> bool:
        """Whether an ambient polynomial lies in this subring."""
        by_degree: dict[int, PolyElement] = {}
        for monom, coeff in f.terms():
            d = sum(monom)
            by_degree[d] = by_degree.get(d, self.ambient.zero) + self.ambient({monom: coeff})
        for d, part in by_degree.items():
            coords = ambient_monomials(self.ambient_rank, d)
            rows = [poly_vector(m, coords) for m in self.monomials(d)]
            if not linalg.in_span(rows, poly_vector(part, coords), len(coords)):
                return False
        return True

    def __repr__(self):
        return f"BorelRing({self.subgroup.name})"


def _subring_monomials(generators: tuple[PolyElement, ...], degree: int) -> list[PolyElement]:
    out = []
    for combo in combinations_with_replacement(range(len(generators)), degree):
        m = generators[0].ring.one
        for i in combo:
            m = m * generators[i]
        out.append(m)
    return out


def poly_vector(f: PolyElement, coords: Sequence[tuple[int, ...]]) -> list:
    """Dense coefficient vector of a homogeneous polynomial in monomial coordinates."""
    index = {m: i for i, m in enumerate(coords)}
    vec = [QQ(0)] * len(coords)
    for monom, coeff in f.terms():
        vec[index[monom]] = coeff
    return vec


def borel_ring(k: ClosedSubgroup) -> BorelRing:
    """H*(BG/K; ℚ) with generators from the canonical basis of Λ(K)."""
    return BorelRing(k)


@dataclass(frozen=True)
class RingMap:
    """Inflation H*(BG/K) → H*(BG/L) for L ⊆ K, an inclusion of subrings."""

    source: BorelRing
    target: BorelRing
    coordinates: IntMatrix
    """Each Λ(K) basis vector written in the Λ(L) basis."""

    @property
    def generator_images(self) -> tuple[PolyElement, ...]:
        """Images of the source generators as polynomials in the target generators."""
        R = self.target.ambient
        images = []
        for row in self.coordinates.entries:
            image = R.zero
            for c, g in zip(row, self.target.generators):
                if c:
                    image += g * c
            images.append(image)
        return tuple(images)

    def __call__(self, f: PolyElement) -> PolyElement:
        return f

    def compose(self, after: "RingMap") -> "RingMap":
        """
        `after` ∘ self.

        Raises:
            PreconditionError: if `after` does not start where self ends.
        """
        if after.source.subgroup != self.target.subgroup:
            raise PreconditionError(
                f"cannot compose {self.source.subgroup.name} → {self.target.subgroup.name} "
                f"with a map out of {after.source.subgroup.name}"
            )
        return inflation(self.source.subgroup, after.target.subgroup)


def inflation(k: ClosedSubgroup, l: ClosedSubgroup) -> RingMap:
    """
    The inflation map from G/K to G/L.

    Raises:
        PreconditionError: if l is not contained in k.
    """
    if not contains(k, l):
        raise PreconditionError(f"inflation needs {l.name} ⊆ {k.name}")
    coords = l.annihilator.coordinates(k.annihilator)
    return RingMap(borel_ring(k), borel_ring(l), coords)


@dataclass(frozen=True)
class LocalRing:
    """
    A localization S⁻¹A of a Borel ring at finitely many linear forms.

    Inverting the zero form gives the zero ring.
    """

    base: BorelRing
    inverted: frozenset = field(default_factory=frozenset)
    """Normalized linear forms that are inverted."""

    @property
    def is_zero_ring(self) -> bool:
        return any(not f for f in self.inverted)

    @cached_property
    def ordered_inverted(self) -> tuple[PolyElement, ...]:
        return tuple(sorted(self.inverted, key=lambda f: str(f)))

    @cached_property
    def unit_denominator(self) -> PolyElement:
        """u, the product of the inverted forms."""
        u = self.base.ambient.one
        for f in self.ordered_inverted:
            u = u * f
        return u

    def is_unit_form(self, f: PolyElement) -> bool:
        """Whether a linear form (or constant) is a unit here."""
        if self.is_zero_ring:
            return True
        if not f:
            return False
        if f.is_ground:
            return True
        return normalize_form(f) in self.inverted

    def is_unit(self, f: PolyElement) -> bool:
        """Whether a product of linear forms is a unit here."""
        if self.is_zero_ring or (f and f.is_ground):
            return True
        if not f:
            return False
        rest = f
        for g in self.ordered_inverted:
            while True:
                q, r = rest.div(g)
                if r:
                    break
                rest = q
        return rest.is_ground

    def describe(self) -> str:
        gens = ", ".join(str(g) for g in self.base.generators) or "1"
        if not self.inverted:
            return f"Q[{gens}]"
        inv = ", ".join(str(f) for f in self.ordered_inverted)
        return f"Q[{gens}][1/({inv})]"

    def __repr__(self):
        return f"LocalRing({self.describe()})"


def local(base: BorelRing, forms: Iterable[PolyElement] = ()) -> LocalRing:
    return LocalRing(base, frozenset(normalize_form(f) for f in forms))


@dataclass(frozen=True)
class RingValue:
    """A finite product of local rings with labelled factors (idempotents implicit)."""

    labels: tuple[Hashable, ...]
    components: tuple[LocalRing, ...]

    def __post_init__(self):
        if len(self.labels) != len(self.components):
            raise ConstructionError("labels and components differ in length")

    def __len__(self):
        return len(self.components)

    def index(self, label: Hashable) -> int:
        return self.labels.index(label)

    def idempotent(self, label: Hashable) -> tuple[int, ...]:
        """The idempotent e_label as a 0/1 tuple."""
        i = self.index(label)
        return tuple(1 if j == i else 0 for j in range(len(self.labels)))

    def describe(self) -> str:
        return " × ".join(c.describe() for c in self.components) or "0"


@dataclass(frozen=True)
class RingHom:
    """
    A map of finite products: target factor j receives source factor reindex[j]
    by the inclusion of subrings followed by localization.
    """

    source: RingValue
    target: RingValue
    reindex: tuple[int, ...]

    def __post_init__(self):
        if len(self.reindex) != len(self.target):
            raise ConstructionError("reindex does not cover the target factors")
        for j, i in enumerate(self.reindex):
            src, tgt = self.source.components[i], self.target.components[j]
            if tgt.is_zero_ring:
                continue
            if not _span_le(src.base, tgt.base):
                raise ConstructionError(
                    f"factor {j}: {src.describe()} is not a subring of {tgt.describe()}"
                )
            for f in src.inverted:
                if not tgt.is_unit_form(f):
                    raise ConstructionError(
                        f"factor {j}: {f} is inverted in the source but not in the target"
                    )

    def compose(self, after: "RingHom") -> "RingHom":
        """`after` ∘ self."""
        return RingHom(self.source, after.target, tuple(self.reindex[i] for i in after.reindex))

    def __call__(self, element: Sequence["LocalizedElement"]) -> tuple["LocalizedElement", ...]:
        return tuple(
            LocalizedElement(self.target.components[j], element[i].numerator, element[i].denominator)
            for j, i in enumerate(self.reindex)
        )


def _span_le(small: BorelRing, big: BorelRing) -> bool:
    """Whether the ring of `small` is a subring of the ring of `big` (Λ spans nested)."""
    return small.key <= big.key


def ring_hom(source: RingValue, target: RingValue, reindex: Sequence[int]) -> RingHom:
    return RingHom(source, target, tuple(reindex))


@dataclass(frozen=True)
class LocalizedElement:
    """A fraction numerator/denominator in a local ring."""

    ring: LocalRing
    numerator: PolyElement
    denominator: PolyElement

    def __post_init__(self):
        if not self.ring.is_unit(self.denominator):
            raise UncertifiedLocalizationError(
                f"{self.denominator} is not a product of inverted elements of {self.ring.describe()}"
            )

    def __mul__(self, other: "LocalizedElement") -> "LocalizedElement":
        return LocalizedElement(
            self.ring, self.numerator * other.numerator, self.denominator * other.denominator
        )

    def __add__(self, other: "LocalizedElement") -> "LocalizedElement":
        return LocalizedElement(
            self.ring,
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    def is_unit(self) -> bool:
        return self.ring.is_unit(self.numerator)

    def __str__(self):
        if self.denominator == 1:
            return str(self.numerator)
        return f"({self.numerator})/({self.denominator})"


def localize(x: PolyElement, ring: BorelRing, gens: Iterable[PolyElement] = ()) -> LocalizedElement:
    """x/1 in the localization of `ring` at `gens`."""
    target = local(ring, gens)
    return LocalizedElement(target, x, ring.ambient.one)


def equal(a: LocalizedElement, b: LocalizedElement) -> bool:
    """Fraction equality; Borel rings are domains, so cross-multiplication decides it."""
    if a.ring != b.ring:
        raise PreconditionError("compared elements of different rings")
    if a.ring.is_zero_ring:
        return True
    return a.numerator * b.denominator == b.numerator * a.denominator


class SplittingDiagram:
    """
    A Σ-splitting diagram of product rings with inflation maps.

    Factor j of the value at L inflates from factor `source_component(K, L, j)`
    of the value at K, for L ≤ K.

    Args:
        sigma: The index poset.
        fibers: The labels (subgroups) of the factors at each node.
        pushforward: The label at K that a label at L inflates from.
    """

    def __init__(self, name: str, sigma: Poset, fibers: dict, pushforward):
        self.name = name
        self.sigma = sigma
        self.fibers: dict[Hashable, tuple[ClosedSubgroup, ...]] = {
            k: tuple(v) for k, v in fibers.items()
        }
        self._pushforward = pushforward
        self._check_functorial()

    def value(self, k: Hashable) -> RingValue:
        labels = self.fibers[k]
        return RingValue(labels, tuple(LocalRing(borel_ring(t)) for t in labels))

    def source_component(self, k: Hashable, l: Hashable, j: int) -> int:
        if k == l:
            return j
        target = self._pushforward(self.fibers[l][j], k)
        return self.fibers[k].index(target)

    def inflation_hom(self, k: Hashable, l: Hashable) -> RingHom:
        """The structure map R(G/K) → R(G/L)."""
        return RingHom(
            self.value(k),
            self.value(l),
            tuple(self.source_component(k, l, j) for j in range(len(self.fibers[l]))),
        )

    def _check_functorial(self):
        sigma = self.sigma
        for l in sigma.nodes:
            for k in sigma.above(l):
                for h in sigma.above(k):
                    for j in range(len(self.fibers[l])):
                        direct = self.source_component(h, l, j)
                        via = self.source_component(h, k, self.source_component(k, l, j))
                        if direct != via:
                            raise ConstructionError(
                                f"{self.name}: inflation from {node_label(h)} to {node_label(l)} "
                                f"does not factor through {node_label(k)}"
                            )


def borel_splitting(sigma: Poset, name: str = "R_a") -> SplittingDiagram:
    """One Borel ring per node, e.g. ℝ_a on Σ_a."""
    return SplittingDiagram(name, sigma, {k: (k,) for k in sigma.nodes}, lambda lt, k: k)


def multiplicity_splitting(system, name: str = "R_c") -> SplittingDiagram:
    """
    ℝ_c(G/K) = ∏_{K̃ ∈ 𝓕/K} H*(BG/K̃), with termwise inflation along i_*.

    Args:
        system: A `MultiplicitySystem` over Σ_c.
    """
    return SplittingDiagram(name, system.base, system.fibers, system.pushforward)


def termwise_inflation(diagram: SplittingDiagram) -> dict[Hashable, RingHom]:
    """
    The identification ∏_{K̃} H*(BG/K̃) ≅ ∏_{K̃} H*(BG/K) at every node.

    Raises:
        ConstructionError: if some factor is not identified with the ring of its identity component.
    """
    result = {}
    for k in diagram.sigma.nodes:
        value = diagram.value(k)
        connected = RingValue(
            value.labels,
            tuple(LocalRing(borel_ring(identity_component(t))) for t in value.labels),
        )
        for a, b in zip(value.components, connected.components):
            if a.base != b.base:
                raise ConstructionError(f"termwise inflation at {node_label(k)} is not an isomorphism")
        result[k] = RingHom(value, connected, tuple(range(len(value))))
    return result


def euler_class(alpha: Character, htilde: ClosedSubgroup, h: ClosedSubgroup) -> PolyElement:
    """
    The Euler class c(α)(H̃) in H*(BG/H).

    For α = v^n with v the faithful character of G/H, this is n·c_1(v) when
    |H̃/H| divides n and the unit otherwise.

    Raises:
        PreconditionError: if H is not the codimension 1 identity component of H̃,
            or α is not a character of G/H.
    """
    if identity_component(htilde) != h:
        raise PreconditionError(f"{h.name} is not the identity component of {htilde.name}")
    if h.codim != 1:
        raise PreconditionError(f"{h.name} does not have codimension 1")
    if alpha.ambient_rank != h.ambient_rank or alpha.is_trivial():
        raise PreconditionError("α must be a nontrivial character of the same rank")
    if not h.annihilator.contains_vector(alpha.vector):
        raise PreconditionError(f"α = {alpha.vector} is not a character of G/{h.name}")
    R, _ = ambient_ring(h.ambient_rank)
    if htilde.annihilator.contains_vector(alpha.vector):
        return linear_form(alpha.vector, h.ambient_rank)
    return R.one


Element = tuple[PolyElement, ...]


class EulerSystem:
    """
    Chosen Euler classes for the maximal proper elements of Σ and the derived
    multiplicative sets 𝓔_{K/L}.

    Args:
        diagram: The splitting diagram.
        generators: For each maximal H, elements of R(G/H) (one polynomial per factor).
        variant: Name recorded in reports.
    """

    def __init__(self, diagram: SplittingDiagram, generators: dict, variant: str = "custom"):
        self.diagram = diagram
        self.variant = variant
        self.generators: dict[Hashable, tuple[Element, ...]] = {
            h: tuple(tuple(g) for g in gens) for h, gens in generators.items()
        }
        sigma = diagram.sigma
        for h in self.generators:
            if h not in sigma.maximal_proper():
                raise ConstructionError(f"{node_label(h)} is not a maximal element")

    @property
    def sigma(self) -> Poset:
        return self.diagram.sigma

    def inverted(self, k: Hashable, l: Hashable) -> tuple[frozenset, ...]:
        """
        Generators of 𝓔_{K/L}, factor by factor of R(G/L), as normalized linear forms.

        The zero form marks a factor that the localization kills.
        """
        sigma = self.sigma
        if not sigma.leq(l, k):
            raise PreconditionError(f"𝓔 needs {node_label(l)} ≤ {node_label(k)}")
        count = len(self.diagram.fibers[l])
        forms: list[set] = [set() for _ in range(count)]
        for h, gens in self.generators.items():
            if not sigma.leq(l, h) or sigma.leq(k, h):
                continue
            for j in range(count):
                source = self.diagram.source_component(h, l, j)
                for g in gens:
                    value = g[source]
                    if not value:
                        forms[j].add(value)
                    elif not value.is_ground:
                        forms[j].update(_linear_factors(value))
        return tuple(frozenset(f) for f in forms)

    def localized_value(self, k: Hashable, l: Hashable) -> RingValue:
        """𝓔⁻¹_{K/L} R(G/L)."""
        value = self.diagram.value(l)
        return RingValue(
            value.labels,
            tuple(LocalRing(c.base, s) for c, s in zip(value.components, self.inverted(k, l))),
        )

    def transitivity_check(self, h: Hashable, k: Hashable, l: Hashable) -> bool:
        """
        Whether 𝓔_{H/L} and ⟨infl 𝓔_{H/K}, 𝓔_{K/L}⟩ have the same units.

        Raises:
            PreconditionError: unless h ⊇ k ⊇ l.
        """
        sigma = self.sigma
        if not (sigma.leq(l, k) and sigma.leq(k, h)):
            raise PreconditionError(
                f"transitivity needs {node_label(h)} ⊇ {node_label(k)} ⊇ {node_label(l)}"
            )
        direct = self.inverted(h, l)
        upper = self.inverted(h, k)
        lower = self.inverted(k, l)
        for j in range(len(direct)):
            combined = set(lower[j]) | set(upper[self.diagram.source_component(k, l, j)])
            if _saturation(direct[j]) != _saturation(combined):
                logger.debug(
                    "transitivity fails at %s ⊇ %s ⊇ %s factor %d",
                    node_label(h), node_label(k), node_label(l), j,
                )
                return False
        return True

    def check_transitive(self):
        """Runs every transitivity check; raises on the first failure."""
        sigma = self.sigma
        for l in sigma.nodes:
            for k in [l] + sigma.above(l):
                for h in [k] + sigma.above(k):
                    if not self.transitivity_check(h, k, l):
                        raise TransitivityError(
                            f"{self.variant}: 𝓔 is not transitive on "
                            f"{node_label(h)} ⊇ {node_label(k)} ⊇ {node_label(l)}"
                        )

    def regularity_failures(self) -> list[str]:
        """Euler classes that are zero divisors (zero factors) in their ring."""
        failures = []
        for h, gens in self.generators.items():
            for n, g in enumerate(gens):
                for label, value in zip(self.diagram.fibers[h], g):
                    if not value:
                        failures.append(f"generator {n} at {node_label(h)} vanishes at {node_label(label)}")
        return failures


def _linear_factors(f: PolyElement) -> set:
    if poly_degree(f) == 1:
        return {normalize_form(f)}
    _, factors = f.factor_list()
    result = set()
    for g, _ in factors:
        if poly_degree(g) != 1:
            raise ConstructionError(f"Euler class {f} is not a product of linear forms")
        result.add(normalize_form(g))
    return result


def _saturation(forms: Iterable[PolyElement]) -> frozenset:
    """Normalized generators; every set containing zero saturates to the whole ring."""
    forms = frozenset(forms)
    if any(not f for f in forms):
        return frozenset({"zero"})
    return forms


def euler_system_standard(diagram: SplittingDiagram, variant: Variant) -> EulerSystem:
    """
    The standard Euler system of the given variant.

    ``RRc`` uses the classes c(v^n) for n up to the lcm of the fiber orders;
    ``RRcb-diagonal`` uses (c, …, c); ``RRcb-componentwise`` uses the tuples
    that are c at one factor and 1 elsewhere. All three localize alike.

    Raises:
        ConstructionError: if a maximal element does not have codimension 1.
    """
    sigma = diagram.sigma
    maximal = sigma.maximal_proper()
    if not maximal:
        raise ConstructionError("no maximal elements to attach Euler classes to")
    generators = {}
    for h in maximal:
        labels = diagram.fibers[h]
        if any(identity_component(t).codim != 1 for t in labels):
            raise ConstructionError(f"maximal element {node_label(h)} does not have codimension 1")
        h0 = identity_component(labels[0])
        v = Character(h0.annihilator.basis.entries[0])
        c = linear_form(v.vector, h0.ambient_rank)
        one = c.ring.one
        if variant == "RRcb-diagonal":
            gens = [tuple(c for _ in labels)]
        elif variant == "RRcb-componentwise":
            gens = [tuple(c if i == t else one for i in range(len(labels))) for t in range(len(labels))]
        elif variant == "RRc":
            order = lcm(*(index_in_saturation(t.annihilator) for t in labels))
            gens = [
                tuple(euler_class(v ** n, t, identity_component(t)) for t in labels)
                for n in range(1, order + 1)
            ]
        else:
            raise ConstructionError(f"unknown Euler variant {variant!r}")
        generators[h] = gens
    system = EulerSystem(diagram, generators, variant)
    logger.debug("Euler system %s on %s: %d maximal elements", variant, diagram.name, len(maximal))
    return system


def same_localization(a: EulerSystem, b: EulerSystem) -> list[str]:
    """Pairs (K ⊇ L) where two Euler systems on one diagram localize differently."""
    sigma = a.sigma
    differences = []
    for l in sigma.nodes:
        for k in [l] + sigma.above(l):
            if [_saturation(s) for s in a.inverted(k, l)] != [_saturation(s) for s in b.inverted(k, l)]:
                differences.append(f"({node_label(k)} ⊇ {node_label(l)})")
    return differences


def mutate_euler(system: EulerSystem) -> EulerSystem:
    """A copy with the first Euler class of the first maximal element replaced by zero."""
    generators = dict(system.generators)
    h = next(iter(generators))
    gens = list(generators[h])
    zero = gens[0][0].ring.zero
    gens[0] = tuple(zero for _ in gens[0])
    generators[h] = tuple(gens)
    return EulerSystem(system.diagram, generators, f"{system.variant}+zero")
