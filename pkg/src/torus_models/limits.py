"""
Pullbacks of graded modules, computed degree by degree on the window.

The pullback of A → C_K ← B_K (one cospan per K, all sharing A) is the module
of tuples (a, b_1, …, b_n) with f_K(a) = g_K(b_K). Every degree piece is a
finite-dimensional kernel; generators and relations are then read off in
increasing degree. Degrees outside the window are not examined, so the result
agrees with the true pullback on the window only.
"""

import logging
from dataclasses import dataclass, field
from typing import Sequence

from sympy.polys.domains import QQ

from torus_models import linalg
from torus_models.errors import ConstructionError, PreconditionError
from torus_models.modules import (
    Element,
    Piece,
    _common_denominator,
    apply_images,
    frame,
    numerator_vector,
    relation_rows,
    simplify,
    spanning_numerators,
    to_level,
)
from torus_models.rings import LocalRing, poly_degree
from torus_models.settings import EngineSettings

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Leg:
    """A map of pieces given by the images of the source generators."""

    source: Piece
    target: Piece
    images: tuple[Element, ...]


class Coordinates:
    """
    Degree-e coordinates of a piece: numerators over u^level, multiplied by the
    power of u that kills torsion.
    """

    def __init__(self, piece: Piece, level: int, bound: int):
        self.piece = piece
        self.level = level
        self.kill = piece.kill_power(bound)
        self.shift = 2 * (level + self.kill) * piece.inverted_count

    def spanning(self, e: int) -> list[Element]:
        u = self.piece.ring.unit_denominator ** self.level
        out = []
        for i, m in spanning_numerators(self.piece, e + 2 * self.level * self.piece.inverted_count):
            nums = tuple(m if j == i else self.piece.zero_poly for j in range(self.piece.rank))
            out.append(Element(nums, u))
        return out

    def vector(self, x: Element, e: int) -> list:
        nums = to_level(self.piece, x, self.level)
        u_k = self.piece.ring.unit_denominator ** self.kill
        return numerator_vector(self.piece, tuple(n * u_k for n in nums), e + self.shift)

    def width(self, e: int) -> int:
        return len(frame(self.piece, e + self.shift))

    def relations(self, e: int) -> list:
        return [list(r) for r in relation_rows(self.piece, e + self.shift)]


@dataclass(frozen=True)
class Pullback:
    piece: Piece
    """The pullback, over the (unlocalized) ring of the shared source."""

    to_first: tuple[Element, ...]
    """Images of the generators in the shared source A."""

    to_others: tuple[tuple[Element, ...], ...]
    """Images of the generators in each B_K."""

    sides: tuple[Coordinates, ...] = field(default=(), compare=False, repr=False)

    def solve(self, parts: Sequence[Element], degree: int) -> Element:
        """
        The element of the pullback with the given homogeneous components (a, b_1, …, b_n).

        Raises:
            ConstructionError: if the tuple does not lie in the pullback in this degree.
        """
        span = [
            (g, m)
            for g, d in enumerate(self.piece.degrees)
            if degree >= d and (degree - d) % 2 == 0
            for m in self.piece.ring.base.monomials((degree - d) // 2)
        ]
        rows = []
        for g, m in span:
            images = [self.to_first[g]] + [column[g] for column in self.to_others]
            rows.append(_pair_vector(self.sides, [x.scale(m) for x in images], degree))
        width = sum(s.width(degree) for s in self.sides)
        target = _pair_vector(self.sides, parts, degree)
        coeffs = linalg.express(rows + _side_relations(self.sides, degree), target, width)
        if coeffs is None:
            raise ConstructionError(f"tuple of degree {degree} is not in the pullback")
        nums = [self.piece.zero_poly for _ in self.piece.degrees]
        for (g, m), c in zip(span, coeffs):
            if c:
                nums[g] += m * c
        return Element(tuple(nums), self.piece.one)


def _pad(vec: list, before: int, after: int) -> list:
    return [QQ(0)] * before + list(vec) + [QQ(0)] * after


def _pair_vector(sides: Sequence[Coordinates], parts: Sequence[Element], e: int) -> list:
    vec: list = []
    for side, x in zip(sides, parts):
        vec.extend(side.vector(x, e))
    return vec


def _side_relations(sides: Sequence[Coordinates], e: int) -> list:
    widths = [s.width(e) for s in sides]
    total = sum(widths)
    rows, offset = [], 0
    for side, w in zip(sides, widths):
        for r in side.relations(e):
            rows.append(_pad(r, offset, total - offset - w))
        offset += w
    return rows


def pullback(
    first: Piece, cospans: Sequence[tuple[Leg, Leg]], settings: EngineSettings
) -> Pullback:
    """
    The pullback of first → C_K ← B_K over all cospans, on the window.

    Args:
        first: The shared source A, over an unlocalized ring.
        cospans: Pairs (f_K: A → C_K, g_K: B_K → C_K).
        settings: Window and denominator bound.

    Raises:
        PreconditionError: if A is localized or a cospan does not share A and C_K.
    """
    if first.ring.inverted:
        raise PreconditionError(f"pullback source {first.describe()} must not be localized")
    bound = settings.denominator_bound
    a_side = Coordinates(first, 0, bound)
    b_sides, c_sides, legs = [], [], []
    for f, g in cospans:
        if f.source != first or f.target != g.target:
            raise PreconditionError("cospan legs do not share their ends")
        n = bound if g.source.inverted_count else 0
        b_sides.append(Coordinates(g.source, n, bound))
        legs.append((f, g))
        if f.target.ring.is_zero_ring:
            c_sides.append(None)
            continue
        level_c = n + poly_degree(_common_denominator(f.images, f.target.one)) + poly_degree(
            _common_denominator(g.images, g.target.one)
        )
        c_sides.append(Coordinates(f.target, level_c, bound))

    sides = [a_side] + b_sides
    ring = LocalRing(first.ring.base)
    degrees: list[int] = []
    to_first: list[Element] = []
    to_others: list[list[Element]] = [[] for _ in b_sides]

    for e in settings.window:
        spans = [side.spanning(e) for side in sides]
        count = sum(len(s) for s in spans)
        if not count:
            continue
        cond_widths = [c.width(e) if c else 0 for c in c_sides]
        cond_total = sum(cond_widths)
        rows = []
        for x in spans[0]:
            row = []
            for (f, _), c in zip(legs, c_sides):
                row.extend(c.vector(apply_images(f.target, f.images, x), e) if c else [])
            rows.append(row)
        offset = 0
        for k, ((_, g), c, w) in enumerate(zip(legs, c_sides, cond_widths)):
            for x in spans[k + 1]:
                v = [-t for t in c.vector(apply_images(g.target, g.images, x), e)] if c else []
                rows.append(_pad(v, offset, cond_total - offset - w))
            offset += w
        offset = 0
        for c, w in zip(c_sides, cond_widths):
            if c:
                for r in c.relations(e):
                    rows.append(_pad(r, offset, cond_total - offset - w))
            offset += w
        if cond_total:
            kernel = linalg.left_kernel(rows, cond_total)
        else:
            kernel = [[QQ(1) if i == j else QQ(0) for i in range(len(rows))] for j in range(count)]
        candidates = []
        for coeffs in kernel:
            coeffs = coeffs[:count]
            if not any(coeffs):
                continue
            parts = []
            position = 0
            for side, span in zip(sides, spans):
                nums = list(side.piece.zero().numerators)
                for element in span:
                    c = coeffs[position]
                    position += 1
                    if c:
                        nums = [a + b * c for a, b in zip(nums, element.numerators)]
                parts.append(Element(tuple(nums), side.piece.ring.unit_denominator ** side.level))
            candidates.append(parts)
        if not candidates:
            continue
        width = sum(s.width(e) for s in sides)
        generated = []
        for d, parts in zip(degrees, zip(to_first, *to_others)):
            if e < d or (e - d) % 2:
                continue
            for m in ring.base.monomials((e - d) // 2):
                generated.append(_pair_vector(sides, [p.scale(m) for p in parts], e))
        candidate_rows = [_pair_vector(sides, parts, e) for parts in candidates]
        for i in linalg.complement_basis(candidate_rows, generated + _side_relations(sides, e), width):
            parts = candidates[i]
            degrees.append(e)
            to_first.append(parts[0])
            for k, b in enumerate(parts[1:]):
                to_others[k].append(b)

    relations = _relations(ring, degrees, to_first, to_others, sides, settings)
    piece = Piece(ring, tuple(degrees), tuple(relations))
    logger.debug("pullback over %s: generators in degrees %s, %d relations", ring.describe(), degrees, len(relations))
    return Pullback(
        piece,
        tuple(simplify(first, x) for x in to_first),
        tuple(tuple(simplify(side.piece, x) for x in column) for side, column in zip(b_sides, to_others)),
        tuple(sides),
    )


def _relations(ring, degrees, to_first, to_others, sides, settings) -> list:
    """Relations among the chosen generators, added degree by degree when not already implied."""
    relations: list[tuple] = []
    R = ring.base.ambient
    for e in settings.window:
        span = []
        for g, d in enumerate(degrees):
            if e >= d and (e - d) % 2 == 0:
                span.extend((g, m) for m in ring.base.monomials((e - d) // 2))
        if not span:
            continue
        rows = []
        for g, m in span:
            parts = [to_first[g]] + [column[g] for column in to_others]
            rows.append(_pair_vector(sides, [p.scale(m) for p in parts], e))
        width = sum(s.width(e) for s in sides)
        kernel = linalg.left_kernel(rows + _side_relations(sides, e), width)
        current = Piece(ring, tuple(degrees), tuple(relations))
        existing = relation_rows(current, e)
        for coeffs in kernel:
            coeffs = coeffs[: len(span)]
            if not any(coeffs):
                continue
            entries = [R.zero for _ in degrees]
            for (g, m), c in zip(span, coeffs):
                if c:
                    entries[g] += m * c
            vec = numerator_vector(current, entries, e)
            if linalg.in_span(existing, vec, len(frame(current, e))):
                continue
            relations.append(tuple(entries))
            current = Piece(ring, tuple(degrees), tuple(relations))
            existing = relation_rows(current, e)
    return relations
