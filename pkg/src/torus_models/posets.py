"""
Finite posets of subgroups, their flag complexes and pair categories.

Nodes are hashable values: `ClosedSubgroup` for Σ_a and Σ_c, integers for the
dimension chain Σ_d, `Flag` for flag posets and `PairObj` for pair categories.
Every poset carries its generating edges with a tag, which is what diagrams
attach structure maps to.
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Hashable, Iterable, Sequence

from torus_models.errors import CapExceededError, ConstructionError, PreconditionError
from torus_models.subgroups import (
    ClosedSubgroup,
    contains,
    dim,
    identity_component,
    is_cotoral,
    join_istar,
)

logger = logging.getLogger(__name__)

Node = Hashable


def node_label(node: Node) -> str:
    if isinstance(node, ClosedSubgroup):
        return node.name
    return str(node)


@dataclass(frozen=True)
class Flag:
    """A strictly decreasing chain H_0 ⊃ H_1 ⊃ … ⊃ H_s."""

    terms: tuple[Node, ...]

    @property
    def length(self) -> int:
        """The length s = |F| (one less than the number of terms)."""
        return len(self.terms) - 1

    @property
    def first(self) -> Node:
        return self.terms[0]

    @property
    def last(self) -> Node:
        return self.terms[-1]

    def is_subflag_of(self, other: "Flag") -> bool:
        return set(self.terms) <= set(other.terms)

    def __str__(self):
        return "(" + " ⊃ ".join(node_label(t) for t in self.terms) + ")"


@dataclass(frozen=True)
class PairObj:
    """A pair (K ⊇ L) of the pair category."""

    first: Node
    last: Node

    @property
    def is_vertex(self) -> bool:
        return self.first == self.last

    def __str__(self):
        return f"({node_label(self.first)} ⊇ {node_label(self.last)})"


class Poset:
    """
    A finite poset with tagged generating edges.

    Args:
        name: Name used in exports.
        nodes: The nodes, in the deterministic order used everywhere downstream.
        leq: The order relation.
        edges: Generating edges ``(a, b, tag)`` with a < b. Defaults to the Hasse
            diagram with tag ``cover``.
        require_top: Whether a maximum must exist.
    """

    def __init__(
        self,
        name: str,
        nodes: Sequence[Node],
        leq: Callable[[Node, Node], bool],
        edges: Iterable[tuple[Node, Node, str]] | None = None,
        require_top: bool = True,
    ):
        self.name = name
        """Name used in exports and reports."""

        self.nodes: tuple[Node, ...] = tuple(nodes)
        """Nodes in deterministic order."""

        self._leq = leq
        self._index = {n: i for i, n in enumerate(self.nodes)}
        if len(self._index) != len(self.nodes):
            raise ConstructionError(f"poset {name} has repeated nodes")

        self.top: Node | None = self._find_top()
        """The maximum, when it exists."""

        if require_top and self.top is None:
            raise ConstructionError(f"poset {name} has no top element")

        self.edges: tuple[tuple[Node, Node, str], ...] = (
            tuple(edges) if edges is not None else tuple((a, b, "cover") for a, b in self.covers())
        )
        """Generating edges (a, b, tag) with a < b."""

    def __contains__(self, node: Node) -> bool:
        return node in self._index

    def __len__(self) -> int:
        return len(self.nodes)

    def index(self, node: Node) -> int:
        return self._index[node]

    def leq(self, a: Node, b: Node) -> bool:
        return self._leq(a, b)

    def lt(self, a: Node, b: Node) -> bool:
        return a != b and self._leq(a, b)

    def _find_top(self) -> Node | None:
        for t in self.nodes:
            if all(self._leq(x, t) for x in self.nodes):
                return t
        return None

    @property
    def bottom(self) -> Node | None:
        for b in self.nodes:
            if all(self._leq(b, x) for x in self.nodes):
                return b
        return None

    def below(self, node: Node) -> list[Node]:
        """Nodes strictly below `node`, in node order."""
        return [x for x in self.nodes if self.lt(x, node)]

    def above(self, node: Node) -> list[Node]:
        """Nodes strictly above `node`, in node order."""
        return [x for x in self.nodes if self.lt(node, x)]

    def covers(self) -> list[tuple[Node, Node]]:
        """Hasse diagram: pairs a < b with nothing strictly between."""
        result = []
        for a in self.nodes:
            ups = self.above(a)
            for b in ups:
                if not any(self.lt(c, b) for c in ups if c != b):
                    result.append((a, b))
        return result

    def maximal_proper(self) -> list[Node]:
        """Maximal elements among the nodes other than the top."""
        rest = [x for x in self.nodes if x != self.top]
        return [x for x in rest if not any(self.lt(x, y) for y in rest)]

    def check_partial_order(self) -> list[str]:
        """Exhaustive check of the order axioms; returns the violations found."""
        issues = []
        for a in self.nodes:
            if not self._leq(a, a):
                issues.append(f"not reflexive at {node_label(a)}")
        for a, b in combinations(self.nodes, 2):
            if self._leq(a, b) and self._leq(b, a):
                issues.append(f"not antisymmetric: {node_label(a)}, {node_label(b)}")
        for a in self.nodes:
            for b in self.above(a):
                for c in self.above(b):
                    if not self._leq(a, c):
                        issues.append(
                            f"not transitive: {node_label(a)} ≤ {node_label(b)} ≤ {node_label(c)}"
                        )
        return issues

    def __repr__(self):
        return f"Poset({self.name}, {len(self.nodes)} nodes)"


def _subgroup_nodes(universe: Iterable[ClosedSubgroup]) -> list[ClosedSubgroup]:
    members: dict = {}
    for h in universe:
        members.setdefault(h.annihilator, h)
    return sorted(members.values(), key=ClosedSubgroup.sort_key)


def _require_top(universe: list[ClosedSubgroup]):
    if not universe:
        raise ConstructionError("empty subgroup universe")
    r = universe[0].ambient_rank
    if not any(h.annihilator.rank == 0 for h in universe):
        raise ConstructionError(f"universe is missing the top element T^{r}")


def build_sigma_c(universe: Iterable[ClosedSubgroup]) -> Poset:
    """
    The poset Σ_c of connected subgroups under containment.

    Raises:
        ConstructionError: if a member is not connected or the torus is missing.
    """
    nodes = _subgroup_nodes(universe)
    _require_top(nodes)
    for h in nodes:
        if not h.is_connected:
            raise ConstructionError(f"{h.name} is not connected")
    return Poset("sigma_c", nodes, lambda a, b: contains(b, a))


def build_sigma_a(universe: Iterable[ClosedSubgroup]) -> Poset:
    """The poset Σ_a of subgroups under the cotoral order."""
    nodes = _subgroup_nodes(universe)
    _require_top(nodes)
    return Poset("sigma_a", nodes, lambda a, b: is_cotoral(a, b))


def build_sigma_d(r: int) -> Poset:
    """The chain Σ_d = [0, r] of dimensions."""
    if r < 0:
        raise PreconditionError(f"negative rank {r}")
    return Poset("sigma_d", list(range(r + 1)), lambda a, b: a <= b)


class PosetMap:
    """
    A monotone surjection between posets sending top to top.

    Args:
        domain: Source poset.
        codomain: Target poset.
        assignment: Image of every domain node.
        euler_compatible: Also require maximal proper elements to map onto the
            maximal proper elements of the codomain.
    """

    def __init__(
        self,
        name: str,
        domain: Poset,
        codomain: Poset,
        assignment: dict[Node, Node],
        euler_compatible: bool = True,
    ):
        self.name = name
        self.domain = domain
        self.codomain = codomain
        self.assignment = dict(assignment)
        self.euler_compatible = euler_compatible
        self._validate()

    def _validate(self):
        for x in self.domain.nodes:
            if x not in self.assignment or self.assignment[x] not in self.codomain:
                raise ConstructionError(f"{self.name}: no image for {node_label(x)}")
        for a, b, _ in self.domain.edges:
            if not self.codomain.leq(self.assignment[a], self.assignment[b]):
                raise ConstructionError(
                    f"{self.name} is not monotone on {node_label(a)} < {node_label(b)}"
                )
        image = set(self.assignment.values())
        missing = [y for y in self.codomain.nodes if y not in image]
        if missing:
            raise ConstructionError(
                f"{self.name} is not surjective; missing {', '.join(map(node_label, missing))}"
            )
        if self.assignment[self.domain.top] != self.codomain.top:
            raise ConstructionError(f"{self.name} does not send top to top")
        if self.euler_compatible:
            maxi = {self.assignment[x] for x in self.domain.maximal_proper()}
            if maxi != set(self.codomain.maximal_proper()):
                raise ConstructionError(
                    f"{self.name} does not map maximal elements onto maximal elements"
                )

    def __call__(self, node: Node) -> Node:
        return self.assignment[node]

    def fiber(self, node: Node) -> list[Node]:
        return [x for x in self.domain.nodes if self.assignment[x] == node]

    def apply_flag(self, f: Flag) -> Flag:
        """The image flag; images must stay strictly decreasing."""
        image = tuple(self.assignment[t] for t in f.terms)
        for a, b in zip(image[1:], image[:-1]):
            if not self.codomain.lt(a, b):
                raise PreconditionError(f"{self.name} does not keep {f} strict")
        return Flag(image)

    def flag_fiber(self, fbar: Flag, domain_flags: Iterable[Flag]) -> list[Flag]:
        """Flags of the domain mapping onto `fbar`, in the given order."""
        return [f for f in domain_flags if len(f.terms) == len(fbar.terms) and self.apply_flag(f) == fbar]


def identity_map(sigma: Poset) -> PosetMap:
    return PosetMap("id", sigma, sigma, {x: x for x in sigma.nodes})


def dimension_map(sigma_c: Poset) -> PosetMap:
    """
    The dimension function d: Σ_c → [0, r].

    Raises:
        ConstructionError: if some dimension in [0, r] is not hit.
    """
    r = sigma_c.nodes[0].ambient_rank
    target = build_sigma_d(r)
    return PosetMap("d", sigma_c, target, {h: dim(h) for h in sigma_c.nodes})


def quotient_map_q(sigma_a: Poset, sigma_c: Poset) -> PosetMap:
    """
    The identity-component map q: Σ_a → Σ_c.

    Raises:
        ConstructionError: if an identity component is missing from Σ_c.
    """
    assignment = {}
    for h in sigma_a.nodes:
        h0 = identity_component(h)
        if h0 not in sigma_c:
            raise ConstructionError(f"identity component of {h.name} is not in sigma_c")
        assignment[h] = sigma_c.nodes[sigma_c.index(h0)]
    return PosetMap("q", sigma_a, sigma_c, assignment)


class MultiplicitySystem:
    """
    The finite sets 𝓕/K of subgroups with identity component K, with pushforwards.

    Args:
        q: The identity-component map Σ_a → Σ_c.
    """

    def __init__(self, q: PosetMap):
        self.q = q
        self.base: Poset = q.codomain
        """The poset of connected subgroups."""

        self.fibers: dict[Node, tuple[ClosedSubgroup, ...]] = {
            k: tuple(q.fiber(k)) for k in self.base.nodes
        }
        """𝓕/K for every K in the base."""

        self._validate()

    def pushforward(self, ltilde: ClosedSubgroup, k: ClosedSubgroup) -> ClosedSubgroup:
        """i_*(L̃) = L̃·K, returned as the universe member."""
        result = join_istar(ltilde, k)
        for member in self.fibers[k]:
            if member == result:
                return member
        raise ConstructionError(f"{result.name} is missing from the universe")

    def _validate(self):
        top = self.base.top
        if len(self.fibers[top]) != 1:
            raise ConstructionError("the fiber over the top element is not a singleton")
        sigma_a = self.q.domain
        for k, fiber in self.fibers.items():
            for a, b in combinations(fiber, 2):
                if sigma_a.leq(a, b) or sigma_a.leq(b, a):
                    raise ConstructionError(
                        f"fiber over {node_label(k)} has comparable {a.name}, {b.name}"
                    )
        for l in self.base.nodes:
            for k in self.base.above(l):
                image = {self.pushforward(lt, k) for lt in self.fibers[l]}
                if image != set(self.fibers[k]):
                    raise ConstructionError(
                        f"i_* from {node_label(l)} to {node_label(k)} is not surjective"
                    )


def flags(sigma: Poset, s: int) -> list[Flag]:
    """
    All s-flags of a poset, in deterministic order.

    Args:
        sigma: The poset.
        s: The flag length (s + 1 terms).
    """
    if s < 0:
        raise PreconditionError(f"negative flag length {s}")
    chains: list[tuple[Node, ...]] = [(x,) for x in reversed(sigma.nodes)]
    for _ in range(s):
        chains = [c + (y,) for c in chains for y in reversed(sigma.below(c[-1]))]
    return [Flag(c) for c in chains]


def all_flags(sigma: Poset, max_flags: int = 5000) -> list[Flag]:
    """Every flag of every length, shortest first."""
    result: list[Flag] = []
    s = 0
    while True:
        layer = flags(sigma, s)
        if not layer:
            break
        result.extend(layer)
        if len(result) > max_flags:
            raise CapExceededError(f"flag poset of {sigma.name} exceeds {max_flags} flags")
        s += 1
    return result


def face(f: Flag, i: int) -> Flag:
    """
    The face ∂_i F obtained by omitting the i-th term.

    Raises:
        PreconditionError: if i is outside [0, |F|] or F has a single term.
    """
    if f.length == 0:
        raise PreconditionError(f"{f} has no faces")
    if not 0 <= i <= f.length:
        raise PreconditionError(f"face index {i} out of range for {f}")
    return Flag(f.terms[:i] + f.terms[i + 1:])


def flag_poset(sigma: Poset, max_flags: int = 5000) -> Poset:
    """The poset flag(Σ) ordered by subflags, generated by the faces."""
    nodes = all_flags(sigma, max_flags)
    edges = [
        (face(f, i), f, f"face:{i}") for f in nodes if f.length > 0 for i in range(f.length + 1)
    ]
    poset = Poset(
        f"flag({sigma.name})",
        nodes,
        lambda e, f: e.is_subflag_of(f),
        edges=edges,
        require_top=False,
    )
    poset.base = sigma
    logger.debug("flag poset of %s: %d flags", sigma.name, len(nodes))
    return poset


def subflag_over(f: Flag, ebar: Flag, pi: PosetMap) -> Flag:
    """
    The unique subflag E of F with π(E) = Ē.

    Raises:
        PreconditionError: if Ē is not a subflag of π(F).
    """
    fbar = pi.apply_flag(f)
    if not ebar.is_subflag_of(fbar):
        raise PreconditionError(f"{ebar} is not a subflag of {fbar}")
    wanted = set(ebar.terms)
    return Flag(tuple(t for t, tb in zip(f.terms, fbar.terms) if tb in wanted))


def pair_category(sigma: Poset) -> Poset:
    """
    The pair category qp(Σ): pairs (K ⊇ L), ordered by (K⊇L) ≤ (H⊇M) iff H ⊇ K ⊇ L ⊇ M.

    Horizontal generators increase the first term, vertical ones decrease the last.
    """
    nodes = [
        PairObj(k, l) for k in reversed(sigma.nodes) for l in reversed(sigma.nodes) if sigma.leq(l, k)
    ]

    def leq(a: PairObj, b: PairObj) -> bool:
        return sigma.leq(a.first, b.first) and sigma.leq(b.last, a.last)

    edges = []
    covers = sigma.covers()
    for p in nodes:
        for a, b in covers:
            if a == p.first:
                edges.append((p, PairObj(b, p.last), "horizontal"))
            if b == p.last:
                edges.append((p, PairObj(p.first, a), "vertical"))
    poset = Poset(f"qp({sigma.name})", nodes, leq, edges=edges, require_top=False)
    poset.base = sigma
    return poset
