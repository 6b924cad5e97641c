"""
Closed subgroups of the torus T^r, encoded by their annihilator lattices.

A closed subgroup H ⊆ T^r is determined by the characters vanishing on it, a
sublattice Λ(H) ⊆ Z^r. Every order relation used by the posets reduces to
lattice algebra: containment reverses inclusion of annihilators, the identity
component is the saturation, and cotorality is torsion-freeness of a quotient.
"""

import logging
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from torus_models.errors import CapExceededError, PreconditionError, RankMismatchError
from torus_models.lattice import Lattice, is_saturated, quotient_invariants, saturate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Character:
    """A character of T^r, i.e. a vector in Z^r."""

    vector: tuple[int, ...]

    @classmethod
    def of(cls, *entries: int) -> "Character":
        return cls(tuple(int(x) for x in entries))

    @property
    def ambient_rank(self) -> int:
        return len(self.vector)

    def __mul__(self, n: int) -> "Character":
        return Character(tuple(n * x for x in self.vector))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Character":
        """Tensor power, written multiplicatively as in z^n."""
        return self * n

    def is_trivial(self) -> bool:
        return not any(self.vector)


@dataclass(frozen=True)
class ClosedSubgroup:
    """
    A closed subgroup of T^r.

    Identity is by the canonical annihilator basis; the display name is carried
    along for reports and exports only.
    """

    ambient_rank: int
    """Rank r of the ambient torus."""

    annihilator: Lattice
    """Characters of T^r vanishing on the subgroup."""

    display_name: str = field(default="", compare=False)
    """Human readable name used in exports (not part of identity)."""

    def __post_init__(self):
        if self.annihilator.ambient_rank != self.ambient_rank:
            raise RankMismatchError(
                f"annihilator lives in Z^{self.annihilator.ambient_rank}, "
                f"subgroup in T^{self.ambient_rank}"
            )

    @property
    def name(self) -> str:
        return self.display_name or f"H{self.annihilator.basis}"

    @property
    def codim(self) -> int:
        return self.annihilator.rank

    @property
    def is_connected(self) -> bool:
        return is_saturated(self.annihilator)

    def sort_key(self) -> tuple:
        """Deterministic order: by dimension, then by canonical basis."""
        return (dim(self), self.annihilator.basis.entries)

    def named(self, name: str) -> "ClosedSubgroup":
        return ClosedSubgroup(self.ambient_rank, self.annihilator, name)

    def __str__(self):
        return self.name


def subgroup(rows: Iterable[Sequence[int]], ambient_rank: int, name: str = "") -> ClosedSubgroup:
    """The subgroup whose annihilator is spanned by `rows`."""
    return ClosedSubgroup(ambient_rank, Lattice.span(list(rows), ambient_rank), name)


def torus(ambient_rank: int) -> ClosedSubgroup:
    """The whole torus T^r (annihilator 0)."""
    name = "T" if ambient_rank == 1 else f"T^{ambient_rank}"
    return ClosedSubgroup(ambient_rank, Lattice.zero(ambient_rank), name)


def trivial(ambient_rank: int) -> ClosedSubgroup:
    """The trivial subgroup (annihilator Z^r)."""
    return ClosedSubgroup(ambient_rank, Lattice.full(ambient_rank), "1")


def cyclic(order: int) -> ClosedSubgroup:
    """The cyclic subgroup C_n of the circle."""
    if order < 1:
        raise PreconditionError(f"cyclic group order must be positive, got {order}")
    if order == 1:
        return trivial(1)
    return subgroup([[order]], 1, f"C{order}")


def _check_rank(h: ClosedSubgroup, k: ClosedSubgroup):
    if h.ambient_rank != k.ambient_rank:
        raise RankMismatchError(
            f"{h.name} ⊆ T^{h.ambient_rank} and {k.name} ⊆ T^{k.ambient_rank}"
        )


def contains(h: ClosedSubgroup, k: ClosedSubgroup) -> bool:
    """
    Whether h ⊇ k.

    Args:
        h: The candidate larger subgroup.
        k: The candidate smaller subgroup.

    Returns:
        True exactly when annihilator(h) ⊆ annihilator(k).
    """
    _check_rank(h, k)
    return h.annihilator <= k.annihilator


def dim(h: ClosedSubgroup) -> int:
    """Dimension r − rank(annihilator)."""
    return h.ambient_rank - h.annihilator.rank


def identity_component(h: ClosedSubgroup) -> ClosedSubgroup:
    """The identity component, whose annihilator is the saturation of h's."""
    if h.is_connected:
        return h
    sat = saturate(h.annihilator)
    if sat.rank == h.ambient_rank:
        return trivial(h.ambient_rank)
    return ClosedSubgroup(h.ambient_rank, sat, f"{h.name}°")


def is_cotoral(l: ClosedSubgroup, k: ClosedSubgroup) -> bool:
    """
    Whether l ⊆ k with k/l a torus.

    The quotient is a torus exactly when annihilator(l)/annihilator(k) is
    torsion-free, read off from its Smith invariants.
    """
    _check_rank(l, k)
    if not contains(k, l):
        return False
    return all(d in (0, 1) for d in quotient_invariants(l.annihilator, k.annihilator))


def join_istar(ltilde: ClosedSubgroup, k: ClosedSubgroup) -> ClosedSubgroup:
    """
    The pushforward i_*(L̃) = L̃·K.

    Args:
        ltilde: A subgroup whose identity component lies in k.
        k: A connected subgroup.

    Returns:
        The unique subgroup with identity component k containing ltilde cotorally.
    """
    _check_rank(ltilde, k)
    if not k.is_connected:
        raise PreconditionError(f"join_istar needs a connected target, got {k.name}")
    if not contains(k, identity_component(ltilde)):
        raise PreconditionError(
            f"identity component of {ltilde.name} is not contained in {k.name}"
        )
    annihilator = ltilde.annihilator.intersect(k.annihilator)
    if annihilator == k.annihilator:
        return k
    if annihilator == ltilde.annihilator:
        return ltilde
    return ClosedSubgroup(ltilde.ambient_rank, annihilator, f"{ltilde.name}·{k.name}")


def close_universe(
    universe: Iterable[ClosedSubgroup], max_subgroups: int = 64
) -> tuple[list[ClosedSubgroup], list[ClosedSubgroup]]:
    """
    Closes a universe under identity components and join_istar.

    Args:
        universe: The generating subgroups (must contain the whole torus).
        max_subgroups: Size cap; exceeding it is a construction error.

    Returns:
        The closed universe in deterministic order, and the members that were added.
    """
    members: dict[Lattice, ClosedSubgroup] = {}
    for h in universe:
        members.setdefault(h.annihilator, h)
    original = set(members)
    changed = True
    while changed:
        changed = False
        current = list(members.values())
        candidates = [identity_component(h) for h in current]
        connected = [h for h in current if h.is_connected] + [
            c for c in candidates if c.is_connected
        ]
        for lt in current:
            lt0 = identity_component(lt)
            for k in connected:
                if contains(k, lt0):
                    candidates.append(join_istar(lt, k))
        for c in candidates:
            if c.annihilator not in members:
                members[c.annihilator] = c
                changed = True
                if len(members) > max_subgroups:
                    raise CapExceededError(
                        f"subgroup universe exceeds {max_subgroups} members"
                    )
    closed = sorted(members.values(), key=ClosedSubgroup.sort_key)
    added = [h for h in closed if h.annihilator not in original]
    logger.debug("closed universe: %d members, %d added", len(closed), len(added))
    return closed, added
