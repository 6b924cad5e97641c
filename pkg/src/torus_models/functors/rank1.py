"""
The rank-1 model with its infinite fiber {C_i : i ≥ 1}.

Objects are finitely presented: every family indexed by i ≥ 1 is given by a
tail, valid for all but finitely many i, and a finite table of exceptional
components. A computation over all i therefore only visits the exceptional
indices and one generic index. Components are Laurent polynomials in c.

𝒜^p_c objects are N → P ← V with N an 𝒪_𝓕 = ∏_i ℚ[c_i]-module spanned by
homogeneous sections, recorded through their images in P = 𝓔⁻¹𝒪_𝓕 ⊗ V, plus
torsion summands supported at single indices. 𝒜^p_a objects are the families
(N_i → P_i ← V) with the continuity structure κ: V → 𝓔⁻¹∏_i N_i.
"""

import logging
from dataclasses import dataclass
from typing import Any, Iterable, Literal, Optional, Sequence

import sympy

from torus_models.errors import ConstructionError, PreconditionError

logger = logging.getLogger(__name__)

c = sympy.Symbol("c")
"""The generator of H*(BT/C_i) = ℚ[c_i], shared by every index."""

GENERIC = None
"""The index standing for every i outside the exceptional ones."""

Index = Optional[int]


def _clean(x: Any) -> sympy.Expr:
    return sympy.expand(sympy.cancel(sympy.sympify(x, locals={"c": c})))


def is_integral(x: sympy.Expr) -> bool:
    """Whether a Laurent polynomial in c has no negative powers."""
    x = _clean(x)
    if x == 0:
        return True
    return all(t.as_coeff_exponent(c)[1] >= 0 for t in sympy.Add.make_args(x))


def monomial(x: sympy.Expr) -> tuple[sympy.Rational, int] | None:
    """
    (q, k) with x = q·c^k, or None for zero.

    Raises:
        ConstructionError: if x is not a single monomial.
    """
    x = _clean(x)
    if x == 0:
        return None
    coeff, exponent = x.as_coeff_exponent(c)
    if coeff.has(c) or not exponent.is_integer:
        raise ConstructionError(f"{x} is not homogeneous")
    return sympy.Rational(coeff), int(exponent)


@dataclass(frozen=True)
class AeFamily:
    """
    A family (x_i)_{i ≥ 1} of Laurent polynomials in c, equal to `tail` at every
    index outside `exceptional`.

    The family lies in 𝓔⁻¹∏_i ℚ[c_i] exactly when the tail is integral: finitely
    many components may carry denominators, never infinitely many.
    """

    exceptional: tuple[tuple[int, sympy.Expr], ...] = ()
    """Sorted (index, component) pairs whose component differs from the tail."""

    tail: sympy.Expr = sympy.Integer(0)
    """The component at every other index."""

    def __post_init__(self):
        tail = _clean(self.tail)
        table = {}
        for i, x in self.exceptional:
            if int(i) < 1:
                raise PreconditionError(f"family index {i} is not positive")
            x = _clean(x)
            if x != tail:
                table[int(i)] = x
        object.__setattr__(self, "tail", tail)
        object.__setattr__(self, "exceptional", tuple(sorted(table.items())))

    @classmethod
    def of(cls, tail: Any = 0, exceptional: dict | None = None) -> "AeFamily":
        return cls(tuple((exceptional or {}).items()), tail)

    @classmethod
    def supported(cls, index: int, value: Any) -> "AeFamily":
        """e_i·value: zero away from one index."""
        return cls(((index, value),), 0)

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.exceptional)

    def component(self, i: Index) -> sympy.Expr:
        if i is GENERIC:
            return self.tail
        return dict(self.exceptional).get(i, self.tail)

    @property
    def is_member(self) -> bool:
        """Membership in 𝓔⁻¹∏_i ℚ[c_i]."""
        return is_integral(self.tail)

    def non_integral_indices(self) -> list[str]:
        bad = [str(i) for i, x in self.exceptional if not is_integral(x)]
        if not is_integral(self.tail):
            bad.append("all but finitely many")
        return bad

    def _combine(self, other: "AeFamily", op) -> "AeFamily":
        keys = sorted(set(self.indices) | set(other.indices))
        return AeFamily(
            tuple((i, op(self.component(i), other.component(i))) for i in keys),
            op(self.tail, other.tail),
        )

    def __add__(self, other: "AeFamily") -> "AeFamily":
        return self._combine(other, lambda a, b: a + b)

    def __mul__(self, other: "AeFamily") -> "AeFamily":
        return self._combine(other, lambda a, b: a * b)

    def __neg__(self) -> "AeFamily":
        return AeFamily(tuple((i, -x) for i, x in self.exceptional), -self.tail)

    @property
    def is_zero(self) -> bool:
        return self.tail == 0 and not self.exceptional

    def to_json(self) -> dict:
        return {"tail": str(self.tail), "exceptional": {str(i): str(x) for i, x in self.exceptional}}

    @classmethod
    def parse(cls, data: Any) -> "AeFamily":
        """Reads ``{"tail": ..., "exceptional": {i: ...}}`` or a bare tail."""
        if isinstance(data, AeFamily):
            return data
        if isinstance(data, dict):
            table = {int(i): x for i, x in (data.get("exceptional") or {}).items()}
            return cls.of(data.get("tail", 0), table)
        return cls.of(data)

    def __str__(self):
        if not self.exceptional:
            return f"({self.tail}, …)"
        head = ", ".join(f"{i}: {x}" for i, x in self.exceptional)
        return f"({head}; else {self.tail})"


def strictness_witness() -> AeFamily:
    """The family (c_i⁻¹)_i: in ∏_i 𝓔⁻¹ℚ[c_i] but not in 𝓔⁻¹∏_i ℚ[c_i]."""
    return AeFamily.of(1 / c)


def euler_family(n: int) -> AeFamily:
    """The Euler class of z^n: c at every C_i with i | n, the unit elsewhere."""
    if n < 1:
        raise PreconditionError(f"z^{n} has no Euler class family")
    return AeFamily.of(1, {i: c for i in range(1, n + 1) if n % i == 0})


def representatives(families: Iterable[AeFamily], extra: Iterable[int] = ()) -> list[Index]:
    """The exceptional indices of all the families, then the generic index."""
    keys: set[int] = set(extra)
    for family in families:
        keys.update(family.indices)
    return sorted(keys) + [GENERIC]


def _at(i: Index) -> str:
    return "generic i" if i is GENERIC else f"C{i}"


@dataclass(frozen=True)
class Torsion:
    """A summand ℚ[c]/c^length generated in `degree`, supported at C_index."""

    index: int
    degree: int
    length: int

    def __post_init__(self):
        if self.index < 1 or self.length < 1:
            raise ConstructionError(f"invalid torsion summand {self}")


def _torsion_at(torsion: Sequence[Torsion], i: Index) -> list[tuple[int, int]]:
    return sorted((t.degree, t.length) for t in torsion if t.index == i)


def _matrix(rows: Sequence[Sequence[AeFamily]], i: Index, width: int) -> sympy.Matrix:
    return sympy.Matrix(len(rows), width, lambda r, s: rows[r][s].component(i))


def _inverse(m: sympy.Matrix) -> sympy.Matrix:
    return m.inv().applyfunc(_clean)


def _check_degree(x: sympy.Expr, expected: int, what: str):
    mono = monomial(x)
    if mono is not None and 2 * mono[1] != expected:
        raise ConstructionError(f"{what} = {x} should have degree {expected}")


def _determinant_witness(m: sympy.Matrix, generic: bool) -> str | None:
    """None when m is invertible over ℚ[c, c⁻¹] (over ℚ[c] at the generic index)."""
    if m.rows != m.cols:
        return f"{m.rows} generators against {m.cols} basis vectors"
    if m.rows == 0:
        return None
    det = _clean(m.det())
    if det == 0:
        return "determinant is zero"
    q, k = monomial(det)
    if generic and k != 0:
        return f"determinant {det} is not a unit of ℚ[c]"
    return None


@dataclass(frozen=True)
class Rank1AObject:
    """
    An object of 𝒜^p_a(T): free parts of N_i with generators in `degrees_at(i)`,
    torsion summands, V, and κ(v) = Σ_p κ[v][p]·g_p in 𝓔⁻¹∏_i N_i.
    """

    name: str
    v_degrees: tuple[int, ...]
    tail_degrees: tuple[int, ...]
    exceptional_degrees: tuple[tuple[int, tuple[int, ...]], ...] = ()
    kappa: tuple[tuple[AeFamily, ...], ...] = ()
    torsion: tuple[Torsion, ...] = ()

    def degrees_at(self, i: Index) -> tuple[int, ...]:
        if i is GENERIC:
            return self.tail_degrees
        return dict(self.exceptional_degrees).get(i, self.tail_degrees)

    def indices(self) -> list[Index]:
        families = [x for row in self.kappa for x in row]
        extra = [i for i, _ in self.exceptional_degrees] + [t.index for t in self.torsion]
        return representatives(families, extra)

    def kappa_at(self, i: Index) -> sympy.Matrix:
        return _matrix(self.kappa, i, len(self.degrees_at(i)))

    def validate(self) -> "Rank1AObject":
        """
        Raises:
            ConstructionError: if κ is not almost everywhere integral, not homogeneous,
                or not an isomorphism after inverting c.
        """
        n = len(self.v_degrees)
        if len(self.kappa) != n:
            raise ConstructionError(f"{self.name}: κ has {len(self.kappa)} rows for dim V = {n}")
        for r, row in enumerate(self.kappa):
            for p, x in enumerate(row):
                if not x.is_member:
                    raise ConstructionError(
                        f"{self.name}: κ(v{r})[{p}] = {x} is not almost everywhere integral"
                    )
        for i in self.indices():
            degrees = self.degrees_at(i)
            if len(degrees) != n:
                raise ConstructionError(f"{self.name}: N at {_at(i)} has rank {len(degrees)}, V has dimension {n}")
            m = self.kappa_at(i)
            for r in range(n):
                for p in range(n):
                    _check_degree(m[r, p], self.v_degrees[r] - degrees[p], f"{self.name}: κ(v{r})[{p}] at {_at(i)}")
            witness = _determinant_witness(m, generic=i is GENERIC)
            if witness:
                raise ConstructionError(f"{self.name}: κ at {_at(i)} is not an isomorphism: {witness}")
        return self


@dataclass(frozen=True)
class Section:
    """A homogeneous section of N, by its image Σ_v coordinates[v]·v in 𝓔⁻¹𝒪_𝓕 ⊗ V."""

    degree: int
    coordinates: tuple[AeFamily, ...]

    def active(self, i: Index) -> bool:
        return any(x.component(i) != 0 for x in self.coordinates)


@dataclass(frozen=True)
class Rank1CObject:
    """An object N → P ← V of 𝒜^p_c(T)."""

    name: str
    v_degrees: tuple[int, ...]
    sections: tuple[Section, ...] = ()
    torsion: tuple[Torsion, ...] = ()

    def indices(self) -> list[Index]:
        families = [x for s in self.sections for x in s.coordinates]
        return representatives(families, [t.index for t in self.torsion])

    def active(self, i: Index) -> list[Section]:
        """The sections that generate e_iN (free part) at index i, in order."""
        return [s for s in self.sections if s.active(i)]

    def matrix_at(self, i: Index) -> sympy.Matrix:
        """Rows: generators of e_iN; columns: their coordinates in P_i = ℚ[c, c⁻¹] ⊗ V."""
        return _matrix([s.coordinates for s in self.active(i)], i, len(self.v_degrees))

    def validate(self) -> "Rank1CObject":
        """
        Raises:
            ConstructionError: if a section leaves 𝓔⁻¹𝒪_𝓕 ⊗ V, is not homogeneous, or
                the qc (𝓔⁻¹N ≅ P) or e (e_iN → P_i after inverting c) certificates fail.
        """
        n = len(self.v_degrees)
        for k, s in enumerate(self.sections):
            if len(s.coordinates) != n:
                raise ConstructionError(f"{self.name}: section {k} has {len(s.coordinates)} coordinates")
            for v, x in enumerate(s.coordinates):
                if not x.is_member:
                    raise ConstructionError(f"{self.name}: section {k} does not lie in 𝓔⁻¹𝒪 ⊗ V ({x})")
        for i in self.indices():
            for k, s in enumerate(self.active(i)):
                for v, x in enumerate(s.coordinates):
                    _check_degree(x.component(i), s.degree - self.v_degrees[v], f"{self.name}: section {k}[{v}] at {_at(i)}")
            witness = _determinant_witness(self.matrix_at(i), generic=i is GENERIC)
            if witness:
                kind = "qc certificate" if i is GENERIC else "e certificate"
                raise ConstructionError(f"{self.name}: {kind} fails at {_at(i)}: {witness}")
        return self


Rank1Object = Rank1AObject | Rank1CObject


def rank1_e(obj: Rank1CObject) -> Rank1AObject:
    """
    e: 𝒜^p_c → 𝒜^p_a. The components are e_iN; κ is V → P ≅ 𝓔⁻¹N → 𝓔⁻¹∏_i e_iN,
    read off by inverting the section matrix at every representative index.
    """
    obj.validate()
    n = len(obj.v_degrees)
    inverses = {i: _inverse(obj.matrix_at(i)) if n else sympy.zeros(0, 0) for i in obj.indices()}
    exceptional = [i for i in inverses if i is not GENERIC]
    kappa = tuple(
        tuple(
            AeFamily(tuple((i, inverses[i][v, p]) for i in exceptional), inverses[GENERIC][v, p])
            for p in range(n)
        )
        for v in range(n)
    )
    tail = tuple(s.degree for s in obj.active(GENERIC))
    degrees = tuple((i, tuple(s.degree for s in obj.active(i))) for i in exceptional)
    result = Rank1AObject(
        f"e({obj.name})",
        obj.v_degrees,
        tail,
        tuple((i, d) for i, d in degrees if d != tail),
        kappa,
        obj.torsion,
    )
    return result.validate()


def rank1_gamma_qd(obj: Rank1AObject) -> Rank1CObject:
    """
    Γq_!^d: 𝒜^p_a → 𝒜^p_c. N is the pullback of 𝓔⁻¹𝒪 ⊗ V → 𝓔⁻¹∏_i N_i ← ∏_i N_i
    and P = 𝓔⁻¹N. Because κ is invertible over ℚ[c] at the generic index, every
    family in ∏_i N_i lies in the pullback; N is spanned by the generators at each
    exceptional index (supported there) and the generic generators (zero there).
    """
    obj.validate()
    n = len(obj.v_degrees)
    indices = obj.indices()
    exceptional = [i for i in indices if i is not GENERIC]
    inverses = {i: _inverse(obj.kappa_at(i)) if n else sympy.zeros(0, 0) for i in indices}
    sections = []
    for i in exceptional:
        for p, degree in enumerate(obj.degrees_at(i)):
            sections.append(Section(degree, tuple(AeFamily.supported(i, inverses[i][p, v]) for v in range(n))))
    for p, degree in enumerate(obj.tail_degrees):
        sections.append(
            Section(
                degree,
                tuple(AeFamily(tuple((i, 0) for i in exceptional), inverses[GENERIC][p, v]) for v in range(n)),
            )
        )
    result = Rank1CObject(f"Γq_!^d({obj.name})", obj.v_degrees, tuple(sections), obj.torsion)
    return result.validate()


def pullback_contains(obj: Rank1AObject, family: Sequence[AeFamily]) -> bool:
    """
    Whether a family of elements of ∏_i P_i, given by coordinates on V, comes
    from 𝓔⁻¹𝒪 ⊗ V, i.e. lies in the pullback square.
    """
    if len(family) != len(obj.v_degrees):
        raise PreconditionError("family has the wrong number of coordinates")
    return all(x.is_member for x in family)


def _transition_witness(
    a: sympy.Matrix, b: sympy.Matrix, a_degrees: Sequence[int], b_degrees: Sequence[int], where: str
) -> str | None:
    """
    a and b express two bases of a free ℚ[c]-module inside the same ℚ[c, c⁻¹]-module;
    the identity on the ambient restricts to an isomorphism exactly when a·b⁻¹ is
    integral with unit determinant.
    """
    if sorted(a_degrees) != sorted(b_degrees):
        return f"{where}: generator degrees {list(a_degrees)} ≠ {list(b_degrees)}"
    if a.rows == 0:
        return None
    t = (a * _inverse(b)).applyfunc(_clean)
    for x in t:
        if not is_integral(x):
            return f"{where}: transition entry {x} is not integral"
    if _determinant_witness(t, generic=True):
        return f"{where}: transition is not invertible over ℚ[c]"
    return None


def c_iso_witness(x: Rank1CObject, y: Rank1CObject) -> str | None:
    """Whether the identity on P and V restricts to an isomorphism N_x ≅ N_y."""
    if x.v_degrees != y.v_degrees:
        return f"V differs: {x.v_degrees} vs {y.v_degrees}"
    for i in representatives([], [j for j in x.indices() + y.indices() if j is not GENERIC]):
        a, b = x.active(i), y.active(i)
        if len(a) != len(b):
            return f"{_at(i)}: {len(a)} generators against {len(b)}"
        witness = _transition_witness(
            x.matrix_at(i), y.matrix_at(i), [s.degree for s in a], [s.degree for s in b], _at(i)
        )
        if witness:
            return witness
        if i is not GENERIC and _torsion_at(x.torsion, i) != _torsion_at(y.torsion, i):
            return f"{_at(i)}: torsion differs"
    return None


def a_iso_witness(x: Rank1AObject, y: Rank1AObject) -> str | None:
    """Whether maps N_i → N'_i with κ' = f∘κ exist and are isomorphisms at every i."""
    if x.v_degrees != y.v_degrees:
        return f"V differs: {x.v_degrees} vs {y.v_degrees}"
    if not x.v_degrees:
        return None if sorted(_torsion_key(x)) == sorted(_torsion_key(y)) else "torsion differs"
    for i in representatives([], [j for j in x.indices() + y.indices() if j is not GENERIC]):
        witness = _transition_witness(
            _inverse(x.kappa_at(i)), _inverse(y.kappa_at(i)), x.degrees_at(i), y.degrees_at(i), _at(i)
        )
        if witness:
            return witness
        if i is not GENERIC and _torsion_at(x.torsion, i) != _torsion_at(y.torsion, i):
            return f"{_at(i)}: torsion differs"
    return None


def _torsion_key(obj: Rank1Object) -> list[tuple[int, int, int]]:
    return [(t.index, t.degree, t.length) for t in obj.torsion]


def round_trip_witness(obj: Rank1Object) -> str | None:
    """Γq_!^d∘e ≅ 1 on 𝒜^p_c objects and e∘Γq_!^d ≅ 1 on 𝒜^p_a objects."""
    if isinstance(obj, Rank1CObject):
        return c_iso_witness(obj, rank1_gamma_qd(rank1_e(obj)))
    return a_iso_witness(obj, rank1_e(rank1_gamma_qd(obj)))


def square_is_pullback_witness(obj: Rank1CObject) -> str | None:
    """
    N → ∏_i e_iN over P → 𝓔⁻¹∏_i e_iN is a pullback: N agrees with the pullback
    built from its components, and the strictness family (c_i⁻¹)·v, which lies in
    ∏_i P_i, is not in the image of P.
    """
    witness = c_iso_witness(obj, rank1_gamma_qd(rank1_e(obj)))
    if witness:
        return witness
    components = rank1_e(obj)
    for v in range(len(obj.v_degrees)):
        family = [strictness_witness() if w == v else AeFamily() for w in range(len(obj.v_degrees))]
        if pullback_contains(components, family):
            return f"(c_i⁻¹)·v{v} was accepted by the pullback"
    return None


def rank1_model_objects(kind: Literal["A_c^p", "A_a^p"], data: dict) -> Rank1Object:
    """
    Builds and validates a rank-1 model object from plain data.

    ``A_c^p``: ``name``, ``v_degrees``, ``sections`` (``degree``, ``coordinates``),
    ``torsion`` (``index``, ``degree``, ``length``).
    ``A_a^p``: ``name``, ``v_degrees``, ``tail_degrees``, ``exceptional_degrees``
    (index → degrees), ``kappa`` (rows of families), ``torsion``.
    Families are ``{"tail": expr, "exceptional": {index: expr}}`` or a bare expression in c.

    Raises:
        ConstructionError: if the certificates fail.
    """
    torsion = tuple(Torsion(int(t["index"]), int(t["degree"]), int(t["length"])) for t in data.get("torsion", ()))
    if kind == "A_c^p":
        sections = tuple(
            Section(int(s["degree"]), tuple(AeFamily.parse(x) for x in s["coordinates"]))
            for s in data.get("sections", ())
        )
        return Rank1CObject(data["name"], tuple(data.get("v_degrees", ())), sections, torsion).validate()
    if kind == "A_a^p":
        exceptional = tuple(
            sorted((int(i), tuple(d)) for i, d in (data.get("exceptional_degrees") or {}).items())
        )
        kappa = tuple(tuple(AeFamily.parse(x) for x in row) for row in data.get("kappa", ()))
        return Rank1AObject(
            data["name"],
            tuple(data.get("v_degrees", ())),
            tuple(data.get("tail_degrees", ())),
            exceptional,
            kappa,
            torsion,
        ).validate()
    raise PreconditionError(f"unknown rank-1 model {kind!r}")


HAND_BUILT: list[dict] = [
    {"name": "R", "v_degrees": [0], "sections": [{"degree": 0, "coordinates": ["1"]}]},
    {"name": "Σ²R", "v_degrees": [2], "sections": [{"degree": 2, "coordinates": ["1"]}]},
    {
        "name": "R⊕Σ²R",
        "v_degrees": [0, 2],
        "sections": [
            {"degree": 0, "coordinates": ["1", "0"]},
            {"degree": 2, "coordinates": ["0", "1"]},
        ],
    },
    {"name": "torsion at C2", "v_degrees": [], "torsion": [{"index": 2, "degree": 0, "length": 1}]},
    {
        "name": "shifted at C1",
        "v_degrees": [0],
        "sections": [
            {"degree": 0, "coordinates": [{"tail": "1", "exceptional": {1: "0"}}]},
            {"degree": 2, "coordinates": [{"tail": "0", "exceptional": {1: "c"}}]},
        ],
    },
    {
        "name": "unitriangular",
        "v_degrees": [0, 2],
        "sections": [
            {"degree": 0, "coordinates": ["1", "0"]},
            {"degree": 2, "coordinates": ["c", "1"]},
        ],
    },
    {
        "name": "shifted at C3 by 4",
        "v_degrees": [0],
        "sections": [
            {"degree": 0, "coordinates": [{"tail": "1", "exceptional": {3: "0"}}]},
            {"degree": 4, "coordinates": [{"tail": "0", "exceptional": {3: "c**2"}}]},
        ],
    },
    {
        "name": "two exceptions",
        "v_degrees": [0],
        "sections": [
            {"degree": 0, "coordinates": [{"tail": "1", "exceptional": {2: "0", 6: "0"}}]},
            {"degree": 2, "coordinates": [{"tail": "0", "exceptional": {2: "c"}}]},
            {"degree": -2, "coordinates": [{"tail": "0", "exceptional": {6: "1/c"}}]},
        ],
    },
    {
        "name": "R⊕torsion at C3",
        "v_degrees": [0],
        "sections": [{"degree": 0, "coordinates": ["1"]}],
        "torsion": [{"index": 3, "degree": 2, "length": 2}],
    },
    {"name": "zero", "v_degrees": []},
]
"""Hand-built 𝒜^p_c(T) objects used by the rank-1 laws."""

DIAGONAL_UNIT: dict = {"name": "diagonal unit", "v_degrees": [0], "tail_degrees": [0], "kappa": [["1"]]}
"""The 𝒜^p_a object N_i = ℚ[c_i], V = ℚ, κ the diagonal unit."""


def hand_built_objects(count: int | None = None) -> list[Rank1CObject]:
    """The first `count` hand-built 𝒜^p_c objects (all of them by default)."""
    data = HAND_BUILT if count is None else HAND_BUILT[:count]
    return [rank1_model_objects("A_c^p", d) for d in data]


def ring_object() -> Rank1CObject:
    """R = (𝒪_𝓕 → 𝓔⁻¹𝒪_𝓕 ← ℚ)."""
    return rank1_model_objects("A_c^p", HAND_BUILT[0])
