"""
Graded modules over localized Borel rings, and maps between them.

A `Piece` is a presented module S⁻¹(A^n / Rel) over a `LocalRing` S⁻¹A, given
by generator degrees and homogeneous relation vectors with entries in A.
A `ModuleValue` is a finite product of pieces aligned with the factors of a
`RingValue`; a `ModuleMap` is a map of such products over a `RingHom`.

Exact questions (equality, bijectivity, preimages) reduce to rational linear
algebra in one cohomological degree at a time, in coordinates of the ambient
monomials. Elements of localized modules are written with denominators that
are powers of u, the product of the inverted forms; denominators beyond the
configured bound are not searched, so a failed check is definitive while a
pass holds on the window.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from typing import Hashable, Iterable, Sequence

from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement

from torus_models import linalg
from torus_models.errors import (
    ConstructionError,
    DenominatorBoundError,
    PreconditionError,
    UncertifiedLocalizationError,
)
from torus_models.rings import (
    LocalRing,
    RingHom,
    RingValue,
    ambient_monomials,
    poly_degree,
)
from torus_models.settings import EngineSettings

logger = logging.getLogger(__name__)

Poly = PolyElement


@dataclass(frozen=True)
class Element:
    """A fraction (n_1, …, n_k)/s in a piece; s is a product of inverted forms."""

    numerators: tuple[Poly, ...]
    denominator: Poly

    def is_zero_numerator(self) -> bool:
        return not any(self.numerators)

    def scale(self, f: Poly) -> "Element":
        return Element(tuple(n * f for n in self.numerators), self.denominator)

    def __str__(self):
        body = ", ".join(str(n) for n in self.numerators)
        if self.denominator == 1:
            return f"({body})"
        return f"({body})/({self.denominator})"


def add_elements(a: Element, b: Element) -> Element:
    if a.denominator == b.denominator:
        return Element(tuple(x + y for x, y in zip(a.numerators, b.numerators)), a.denominator)
    d = a.denominator.lcm(b.denominator)
    fa, fb = d.exquo(a.denominator), d.exquo(b.denominator)
    return Element(
        tuple(x * fa + y * fb for x, y in zip(a.numerators, b.numerators)), d
    )


@dataclass(frozen=True)
class Piece:
    """
    The module S⁻¹(A^n / Rel) over a local ring.

    Generators sit in the given cohomological degrees; relation vectors are
    homogeneous with entries in the base ring A.
    """

    ring: LocalRing
    degrees: tuple[int, ...]
    relations: tuple[tuple[Poly, ...], ...] = ()

    def __post_init__(self):
        for rel in self.relations:
            if len(rel) != len(self.degrees):
                raise ConstructionError("relation length differs from the number of generators")
            if not any(rel):
                raise ConstructionError("zero relation vector")
            self.relation_degree(rel)

    @property
    def rank(self) -> int:
        return len(self.degrees)

    @property
    def ambient_rank(self) -> int:
        return self.ring.base.ambient_rank

    @property
    def one(self) -> Poly:
        return self.ring.base.ambient.one

    @property
    def zero_poly(self) -> Poly:
        return self.ring.base.ambient.zero

    def zero(self) -> Element:
        return Element(tuple(self.zero_poly for _ in self.degrees), self.one)

    def generator(self, i: int) -> Element:
        return Element(
            tuple(self.one if j == i else self.zero_poly for j in range(self.rank)), self.one
        )

    def generators(self) -> tuple[Element, ...]:
        return tuple(self.generator(i) for i in range(self.rank))

    def relation_degree(self, rel: Sequence[Poly]) -> int:
        degrees = set()
        for d, entry in zip(self.degrees, rel):
            for monom, _ in entry.terms():
                degrees.add(d + 2 * sum(monom))
        if len(degrees) != 1:
            raise ConstructionError(f"relation {tuple(map(str, rel))} is not homogeneous")
        return degrees.pop()

    @property
    def inverted_count(self) -> int:
        return len(self.ring.inverted)

    def kill_power(self, bound: int) -> int:
        """Power of u used to test vanishing: torsion needs it, free pieces do not."""
        if self.relations and self.inverted_count:
            return bound
        return 0

    def degrees_of(self, x: Element) -> dict[int, tuple[Poly, ...]]:
        """Splits a numerator vector into homogeneous parts by cohomological degree."""
        R = self.ring.base.ambient
        parts: dict[int, list] = defaultdict(lambda: [R.zero for _ in self.degrees])
        for i, (d, n) in enumerate(zip(self.degrees, x.numerators)):
            for monom, coeff in n.terms():
                parts[d + 2 * sum(monom)][i] += R({monom: coeff})
        return {e: tuple(v) for e, v in parts.items()}

    def equal(self, a: Element, b: Element, bound: int) -> bool:
        """Fraction equality: u^N (a·t − b·s) ∈ Rel."""
        if self.ring.is_zero_ring:
            return True
        diff = Element(
            tuple(x * b.denominator - y * a.denominator for x, y in zip(a.numerators, b.numerators)),
            self.one,
        )
        if diff.is_zero_numerator():
            return True
        if not self.relations:
            return False
        k = self.kill_power(bound)
        u_k = self.ring.unit_denominator ** k
        shift = 2 * k * self.inverted_count
        for e, part in self.degrees_of(diff).items():
            vec = numerator_vector(self, tuple(p * u_k for p in part), e + shift)
            if not linalg.in_span(relation_rows(self, e + shift), vec, len(frame(self, e + shift))):
                return False
        return True

    def is_zero(self, x: Element, bound: int) -> bool:
        return self.equal(x, self.zero(), bound)

    def describe(self) -> str:
        gens = ", ".join(f"g{i}[{d}]" for i, d in enumerate(self.degrees)) or "0"
        text = f"{self.ring.describe()}<{gens}>"
        if self.relations:
            rels = "; ".join("(" + ", ".join(str(p) for p in r) + ")" for r in self.relations)
            text += f"/({rels})"
        return text


@lru_cache(maxsize=8192)
def frame(piece: Piece, e: int) -> tuple[tuple[int, tuple[int, ...]], ...]:
    """Coordinates of numerator vectors of cohomological degree e: (generator, monomial)."""
    coords = []
    for i, d in enumerate(piece.degrees):
        if (e - d) % 2 == 0 and e >= d:
            for m in ambient_monomials(piece.ambient_rank, (e - d) // 2):
                coords.append((i, m))
    return tuple(coords)


@lru_cache(maxsize=8192)
def _frame_index(piece: Piece, e: int) -> dict:
    return {c: n for n, c in enumerate(frame(piece, e))}


def numerator_vector(piece: Piece, numerators: Sequence[Poly], e: int) -> list:
    """Dense coordinates of a homogeneous numerator vector of degree e."""
    index = _frame_index(piece, e)
    vec = [QQ(0)] * len(index)
    for i, n in enumerate(numerators):
        for monom, coeff in n.terms():
            vec[index[(i, monom)]] += coeff
    return vec


@lru_cache(maxsize=8192)
def relation_rows(piece: Piece, e: int) -> tuple[tuple, ...]:
    """Rows spanning the A-submodule Rel in numerator degree e."""
    rows = []
    for rel in piece.relations:
        er = piece.relation_degree(rel)
        if e < er or (e - er) % 2:
            continue
        for m in piece.ring.base.monomials((e - er) // 2):
            rows.append(tuple(numerator_vector(piece, tuple(r * m for r in rel), e)))
    return tuple(rows)


def spanning_numerators(piece: Piece, e: int) -> list[tuple[int, Poly]]:
    """A-module spanning set of numerators of degree e: (generator, subring monomial)."""
    out = []
    for i, d in enumerate(piece.degrees):
        if e >= d and (e - d) % 2 == 0:
            for m in piece.ring.base.monomials((e - d) // 2):
                out.append((i, m))
    return out


def _unit_vector(piece: Piece, i: int, f: Poly) -> tuple[Poly, ...]:
    return tuple(f if j == i else piece.zero_poly for j in range(piece.rank))


def simplify(piece: Piece, x: Element) -> Element:
    """Cancels inverted forms common to the denominator and every numerator."""
    if x.is_zero_numerator():
        return piece.zero()
    nums, den = list(x.numerators), x.denominator
    for f in piece.ring.ordered_inverted:
        if not f:
            continue
        while True:
            q, r = den.div(f)
            if r:
                break
            divided = []
            for n in nums:
                qn, rn = n.div(f)
                if rn:
                    break
                divided.append(qn)
            else:
                nums, den = divided, q
                continue
            break
    c = den.LC
    if c != 1:
        nums = [n.quo_ground(c) for n in nums]
        den = den.quo_ground(c)
    return Element(tuple(nums), den)


def extend(piece: Piece, ring: LocalRing) -> Piece:
    """Extension of scalars: same generators and relations over a larger ring."""
    if not (piece.ring.base.key <= ring.base.key):
        raise PreconditionError(f"{ring.describe()} does not contain {piece.ring.describe()}")
    for f in piece.ring.inverted:
        if not ring.is_unit_form(f):
            raise PreconditionError(f"{f} is not a unit in {ring.describe()}")
    return Piece(ring, piece.degrees, piece.relations)


def free_piece(ring: LocalRing, degrees: Iterable[int]) -> Piece:
    return Piece(ring, tuple(degrees))


def _blocks(piece: Piece) -> list[list[int]]:
    parent = list(range(piece.rank))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for rel in piece.relations:
        support = [i for i, r in enumerate(rel) if r]
        for i in support[1:]:
            parent[find(i)] = find(support[0])
    groups: dict[int, list[int]] = defaultdict(list)
    for i in range(piece.rank):
        groups[find(i)].append(i)
    return list(groups.values())


def _sub_piece(piece: Piece, block: list[int], ring: LocalRing) -> Piece:
    rels = tuple(
        tuple(rel[i] for i in block) for rel in piece.relations if any(rel[i] for i in block)
    )
    return Piece(ring, tuple(piece.degrees[i] for i in block), rels)


def certify(piece: Piece, settings: EngineSettings) -> dict[str, str]:
    """
    Regularity certificates for every inverted form on every block of generators.

    A form is certified on a block either as a nonzerodivisor (multiplication is
    injective on every window degree) or as nilpotent (a power up to the
    denominator bound kills every generator).

    Returns:
        Mapping ``"form@block"`` to ``"nonzerodivisor"`` or ``"nilpotent"``.

    Raises:
        UncertifiedLocalizationError: if some form is neither on some block.
    """
    return dict(_certify(piece, settings.denominator_bound, settings.window_lo, settings.window_hi))


@lru_cache(maxsize=4096)
def _certify(piece: Piece, bound: int, lo: int, hi: int) -> tuple[tuple[str, str], ...]:
    if piece.ring.is_zero_ring:
        return (("0", "nilpotent"),)
    certificates: list[tuple[str, str]] = []
    unlocalized = LocalRing(piece.ring.base)
    for block in _blocks(piece):
        sub = _sub_piece(piece, block, unlocalized)
        for f in piece.ring.ordered_inverted:
            key = f"{f}@{block}"
            if not sub.relations:
                certificates.append((key, "nonzerodivisor"))
            elif _is_nilpotent(sub, f, bound):
                certificates.append((key, "nilpotent"))
            elif _is_nonzerodivisor(sub, f, range(lo, hi + 1)):
                certificates.append((key, "nonzerodivisor"))
            else:
                raise UncertifiedLocalizationError(
                    f"{f} is neither regular nor nilpotent on generators {block} of {piece.describe()}"
                )
    logger.debug("certified %s: %s", piece.describe(), certificates)
    return tuple(certificates)


def _is_nilpotent(piece: Piece, f: Poly, bound: int) -> bool:
    for k in range(1, max(bound, 1) + 1):
        fk = f ** k
        if all(
            linalg.in_span(
                relation_rows(piece, d + 2 * k),
                numerator_vector(piece, _unit_vector(piece, i, fk), d + 2 * k),
                len(frame(piece, d + 2 * k)),
            )
            for i, d in enumerate(piece.degrees)
        ):
            return True
    return False


def _is_nonzerodivisor(piece: Piece, f: Poly, window: range) -> bool:
    for e in window:
        span = spanning_numerators(piece, e)
        if not span:
            continue
        width_e = len(frame(piece, e))
        width_f = len(frame(piece, e + 2))
        source = [numerator_vector(piece, _unit_vector(piece, i, m), e) for i, m in span]
        image = [numerator_vector(piece, _unit_vector(piece, i, m * f), e + 2) for i, m in span]
        dim = linalg.quotient_rank(source, relation_rows(piece, e), width_e)
        if linalg.quotient_rank(image, relation_rows(piece, e + 2), width_f) != dim:
            return False
    return True


@dataclass(frozen=True)
class ModuleValue:
    """A finite product of pieces, one per factor of the ring value."""

    labels: tuple[Hashable, ...]
    pieces: tuple[Piece, ...]

    def __post_init__(self):
        if len(self.labels) != len(self.pieces):
            raise ConstructionError("labels and pieces differ in length")

    @property
    def ring(self) -> RingValue:
        return RingValue(self.labels, tuple(p.ring for p in self.pieces))

    def __len__(self):
        return len(self.pieces)

    def zero(self) -> tuple[Element, ...]:
        return tuple(p.zero() for p in self.pieces)

    def generators(self) -> list[tuple[int, int]]:
        """(factor, generator) pairs."""
        return [(j, i) for j, p in enumerate(self.pieces) for i in range(p.rank)]

    def equal(self, a: Sequence[Element], b: Sequence[Element], bound: int) -> bool:
        return all(p.equal(x, y, bound) for p, x, y in zip(self.pieces, a, b))

    def describe(self) -> str:
        return " × ".join(p.describe() for p in self.pieces) or "0"


def single(piece: Piece, label: Hashable = None) -> ModuleValue:
    return ModuleValue((label,), (piece,))


def apply_images(target: Piece, images: Sequence[Element], x: Element) -> Element:
    """Σ_k x_k · images_k / s, the image of x under the map g_k ↦ images_k."""
    d = _common_denominator(images, target.one)
    nums = [target.zero_poly for _ in target.degrees]
    for coeff, img in zip(x.numerators, _cleared(images, d)):
        if not coeff:
            continue
        for i, n in enumerate(img):
            if n:
                nums[i] += n * coeff
    return simplify(target, Element(tuple(nums), x.denominator * d))


@dataclass(frozen=True)
class ModuleMap:
    """
    A map of module values over the ring map with the same reindexing.

    ``images[j]`` lists the images of the generators of source piece
    ``reindex[j]`` as elements of target piece j.
    """

    source: ModuleValue
    target: ModuleValue
    reindex: tuple[int, ...]
    images: tuple[tuple[Element, ...], ...]

    def __post_init__(self):
        if len(self.reindex) != len(self.target) or len(self.images) != len(self.target):
            raise ConstructionError("module map does not cover the target factors")
        for j, i in enumerate(self.reindex):
            if len(self.images[j]) != self.source.pieces[i].rank:
                raise ConstructionError(f"factor {j}: wrong number of generator images")

    @property
    def ring_hom(self) -> RingHom:
        return RingHom(self.source.ring, self.target.ring, self.reindex)

    def apply(self, x: Sequence[Element]) -> tuple[Element, ...]:
        return tuple(
            apply_images(self.target.pieces[j], self.images[j], x[i])
            for j, i in enumerate(self.reindex)
        )

    def compose(self, after: "ModuleMap") -> "ModuleMap":
        """`after` ∘ self."""
        images = []
        reindex = []
        for j, i in enumerate(after.reindex):
            k = self.reindex[i]
            reindex.append(k)
            images.append(
                tuple(
                    apply_images(after.target.pieces[j], after.images[j], self_img)
                    for self_img in self.images[i]
                )
            )
        return ModuleMap(self.source, after.target, tuple(reindex), tuple(images))

    def equals(self, other: "ModuleMap", bound: int) -> bool:
        if self.reindex != other.reindex:
            return False
        for j, piece in enumerate(self.target.pieces):
            for a, b in zip(self.images[j], other.images[j]):
                if not piece.equal(a, b, bound):
                    return False
        return True


def identity_map(value: ModuleValue) -> ModuleMap:
    return ModuleMap(
        value,
        value,
        tuple(range(len(value))),
        tuple(p.generators() for p in value.pieces),
    )


def canonical_map(source: ModuleValue, target: ModuleValue, reindex: Sequence[int]) -> ModuleMap:
    """Generator i of source factor reindex[j] ↦ generator i of target factor j."""
    images = []
    for j, i in enumerate(reindex):
        tgt = target.pieces[j]
        src = source.pieces[i]
        if src.degrees != tgt.degrees:
            raise ConstructionError(f"factor {j}: generator degrees differ")
        images.append(tgt.generators())
    return ModuleMap(source, target, tuple(reindex), tuple(images))


def zero_value(ring: RingValue) -> ModuleValue:
    return ModuleValue(ring.labels, tuple(Piece(c, ()) for c in ring.components))


def _common_denominator(images: Sequence[Element], one: Poly) -> Poly:
    d = one
    for img in images:
        if not img.denominator.is_ground:
            d = d.lcm(img.denominator)
    return d


def _cleared(images: Sequence[Element], d: Poly) -> list[tuple[Poly, ...]]:
    out = []
    for img in images:
        if img.denominator.is_ground:
            factor = d * (1 / img.denominator.LC)
        else:
            factor = d.exquo(img.denominator)
        out.append(tuple(n * factor for n in img.numerators))
    return out


def bijectivity_witness(
    source: Piece, target: Piece, images: Sequence[Element], settings: EngineSettings
) -> str | None:
    """
    Checks that the map ext(source) → target with g_i ↦ images_i is bijective.

    Surjectivity is decided on generators; injectivity degree by degree on the
    window. Returns None when bijective, otherwise a witness description.
    """
    if target.ring.is_zero_ring:
        return None
    ext = extend(source, target.ring)
    bound = settings.denominator_bound
    s = target.inverted_count
    d = _common_denominator(images, target.one)
    deg_d = poly_degree(d)
    cleared = _cleared(images, d)
    u = target.ring.unit_denominator

    # surjectivity: each target generator is hit
    n = bound if s else 0
    k = target.kill_power(bound)
    for j, dj in enumerate(target.degrees):
        e_num = dj + 2 * (deg_d + n * s + k * s)
        rows = []
        for i, di in enumerate(ext.degrees):
            p2 = dj - di + 2 * n * s
            if p2 < 0 or p2 % 2:
                continue
            for m in target.ring.base.monomials(p2 // 2):
                f = m * u ** k
                rows.append(numerator_vector(target, tuple(c * f for c in cleared[i]), e_num))
        rows.extend(relation_rows(target, e_num))
        goal = numerator_vector(
            target, _unit_vector(target, j, d * u ** (n + k)), e_num
        )
        if not linalg.in_span(rows, goal, len(frame(target, e_num))):
            return f"generator {j} (degree {dj}) of {target.describe()} is not in the image"

    # injectivity: ker(source → target) ⊆ ker(source → source)
    ks = ext.kill_power(bound)
    for e in settings.window:
        span = []
        for i, di in enumerate(ext.degrees):
            p2 = e - di + 2 * n * s
            if p2 < 0 or p2 % 2:
                continue
            span.extend((i, m) for m in ext.ring.base.monomials(p2 // 2))
        if not span:
            continue
        ea = e + 2 * (n * s + deg_d + k * s)
        eb = e + 2 * (n * s + ks * s)
        wa, wb = len(frame(target, ea)), len(frame(ext, eb))
        rows_a, rows_b = [], []
        for i, m in span:
            fa = m * u ** k
            rows_a.append(numerator_vector(target, tuple(c * fa for c in cleared[i]), ea))
            rows_b.append(numerator_vector(ext, _unit_vector(ext, i, m * u ** ks), eb))
        rel_a = relation_rows(target, ea)
        rel_b = relation_rows(ext, eb)
        joint = [a + b for a, b in zip(rows_a, rows_b)]
        joint += [list(r) + [QQ(0)] * wb for r in rel_a]
        joint += [[QQ(0)] * wa + list(r) for r in rel_b]
        rank_joint = linalg.rank(joint, wa + wb) - linalg.rank(rel_a, wa) - linalg.rank(rel_b, wb)
        rank_a = linalg.quotient_rank(rows_a, rel_a, wa)
        if rank_joint != rank_a:
            return f"kernel in degree {e}: {ext.describe()} → {target.describe()}"
    return None


def preimage(
    source: Piece, target: Piece, images: Sequence[Element], y: Element, settings: EngineSettings
) -> Element:
    """
    An element x of ext(source) with Σ x_i·images_i = y.

    Raises:
        DenominatorBoundError: if no preimage exists with denominator u^N, N ≤ bound.
    """
    ext = extend(source, target.ring)
    if target.ring.is_zero_ring or target.is_zero(y, settings.denominator_bound):
        return ext.zero()
    s = target.inverted_count
    bound = settings.denominator_bound
    d = _common_denominator(images, target.one)
    deg_d = poly_degree(d)
    cleared = _cleared(images, d)
    u = target.ring.unit_denominator
    k = target.kill_power(bound)
    sy = y.denominator
    deg_sy = poly_degree(sy)
    total = ext.zero()
    for e_y, part in target.degrees_of(Element(y.numerators, target.one)).items():
        e = e_y - 2 * deg_sy
        solved = None
        for n in range(0, (bound if s else 0) + 1):
            e_num = e_y + 2 * (deg_d + n * s + k * s)
            span = []
            for i, di in enumerate(ext.degrees):
                p2 = e - di + 2 * n * s
                if p2 < 0 or p2 % 2:
                    continue
                span.extend((i, m) for m in ext.ring.base.monomials(p2 // 2))
            rows = [
                numerator_vector(target, tuple(c * m * sy * u ** k for c in cleared[i]), e_num)
                for i, m in span
            ]
            rels = list(relation_rows(target, e_num))
            goal = numerator_vector(target, tuple(p * d * u ** (n + k) for p in part), e_num)
            coeffs = linalg.express(rows + rels, goal, len(frame(target, e_num)))
            if coeffs is None:
                continue
            nums = [ext.zero_poly for _ in ext.degrees]
            for (i, m), c in zip(span, coeffs):
                if c:
                    nums[i] += m * c
            solved = Element(tuple(nums), u ** n)
            break
        if solved is None:
            raise DenominatorBoundError(
                f"no preimage of {y} in degree {e} with denominator power ≤ {bound}"
            )
        total = add_elements(total, solved)
    return simplify(ext, total)


def value_bijectivity_witness(m: ModuleMap, settings: EngineSettings) -> str | None:
    """Factorwise bijectivity of ext(source) → target for a module map."""
    for j, i in enumerate(m.reindex):
        witness = bijectivity_witness(m.source.pieces[i], m.target.pieces[j], m.images[j], settings)
        if witness:
            return f"factor {j}: {witness}"
    return None


def invert(m: ModuleMap, settings: EngineSettings) -> ModuleMap:
    """
    The inverse of a factorwise bijective map whose reindexing is a permutation.

    Raises:
        PreconditionError: if the reindexing is not a permutation.
    """
    if sorted(m.reindex) != list(range(len(m.source))) or len(m.source) != len(m.target):
        raise PreconditionError("only maps with a permutation reindexing can be inverted")
    for j, i in enumerate(m.reindex):
        if m.source.pieces[i].ring != m.target.pieces[j].ring:
            raise PreconditionError(f"factor {j}: inverse needs equal rings on both sides")
    inverse_index = [0] * len(m.reindex)
    for j, i in enumerate(m.reindex):
        inverse_index[i] = j
    images = []
    for i, j in enumerate(inverse_index):
        src, tgt = m.source.pieces[i], m.target.pieces[j]
        images.append(
            tuple(preimage(src, tgt, m.images[j], g, settings) for g in tgt.generators())
        )
    return ModuleMap(m.target, m.source, tuple(inverse_index), tuple(images))


def factor_through(
    through: ModuleMap, along: ModuleMap, settings: EngineSettings
) -> ModuleMap:
    """
    The map φ with `through` ∘ φ = `along`, for `through` factorwise bijective
    with a permutation reindexing.
    """
    return along.compose(invert(through, settings))


def restrict_value(value: ModuleValue, indices: Sequence[int], labels: Sequence[Hashable] | None = None) -> ModuleValue:
    """The product of the selected factors, optionally relabelled."""
    pieces = tuple(value.pieces[i] for i in indices)
    return ModuleValue(tuple(labels) if labels is not None else tuple(value.labels[i] for i in indices), pieces)


def concatenate(values: Sequence[ModuleValue], labels: Sequence[Hashable]) -> ModuleValue:
    """The product of several module values, with new labels for the factors."""
    pieces = tuple(p for v in values for p in v.pieces)
    return ModuleValue(tuple(labels), pieces)


def extend_value(value: ModuleValue, ring: RingValue, reindex: Sequence[int]) -> tuple[ModuleValue, ModuleMap]:
    """
    Extension of scalars along a ring map: factor j is piece reindex[j] over ring factor j.

    Returns the extended value and the canonical map into it.
    """
    pieces = tuple(extend(value.pieces[i], ring.components[j]) for j, i in enumerate(reindex))
    extended = ModuleValue(ring.labels, pieces)
    return extended, canonical_map(value, extended, reindex)


def to_level(piece: Piece, x: Element, level: int) -> tuple[Poly, ...]:
    """
    Numerators of x rewritten over u^level.

    Raises:
        DenominatorBoundError: if the denominator of x does not divide u^level.
    """
    target = piece.ring.unit_denominator ** level
    factor, rest = target.div(x.denominator)
    if rest:
        raise DenominatorBoundError(f"{x.denominator} does not divide u^{level} in {piece.ring.describe()}")
    return tuple(n * factor for n in x.numerators)
