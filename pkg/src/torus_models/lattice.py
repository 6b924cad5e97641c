"""
Exact integer lattice arithmetic.

Lattices are row lattices in Z^r stored by a canonical Hermite normal form, so two
lattices are equal exactly when their stored bases are equal. Normal forms come
from sympy's `DomainMatrix` machinery; kernels and saturations use unimodular row
reduction with extended gcds.
"""

from dataclasses import dataclass
from typing import Iterable, Sequence

from sympy import Matrix
from sympy.core.intfunc import igcdex
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import hermite_normal_form, invariant_factors

from torus_models.errors import PreconditionError, RankMismatchError


@dataclass(frozen=True)
class IntMatrix:
    """An integer matrix with arbitrary-precision entries, stored row by row."""

    entries: tuple[tuple[int, ...], ...]
    """Rows of the matrix."""

    cols: int
    """Number of columns, kept explicitly so empty matrices still know their width."""

    def __post_init__(self):
        for row in self.entries:
            if len(row) != self.cols:
                raise PreconditionError(
                    f"row {row} has length {len(row)}, expected {self.cols}"
                )

    @classmethod
    def of(cls, rows: Iterable[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        """Builds a matrix from any nested sequence of integers."""
        entries = tuple(tuple(int(x) for x in row) for row in rows)
        if cols is None:
            if not entries:
                raise PreconditionError("width of an empty matrix must be given")
            cols = len(entries[0])
        return cls(entries, cols)

    @property
    def rows(self) -> int:
        return len(self.entries)

    def transpose(self) -> "IntMatrix":
        return IntMatrix.of(
            [[row[j] for row in self.entries] for j in range(self.cols)], self.rows
        )

    def stack(self, other: "IntMatrix") -> "IntMatrix":
        if other.cols != self.cols:
            raise RankMismatchError(f"cannot stack width {self.cols} on {other.cols}")
        return IntMatrix(self.entries + other.entries, self.cols)

    def to_domain_matrix(self) -> DomainMatrix:
        return DomainMatrix(
            [[ZZ(x) for x in row] for row in self.entries], (self.rows, self.cols), ZZ
        )

    def to_list(self) -> list[list[int]]:
        return [list(row) for row in self.entries]

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(map(str, r)) + "]" for r in self.entries) + "]"


def hnf(m: IntMatrix) -> IntMatrix:
    """
    Canonical row Hermite normal form of the row lattice of `m`.

    Zero rows are dropped, pivots are positive and entries are reduced against
    the pivots, so the result depends only on the lattice spanned by the rows.

    Args:
        m: Any integer matrix.

    Returns:
        A matrix whose rows are the canonical basis of the row lattice.
    """
    nonzero = [row for row in m.entries if any(row)]
    if not nonzero:
        return IntMatrix((), m.cols)
    columns = IntMatrix(tuple(nonzero), m.cols).transpose().to_domain_matrix()
    reduced = hermite_normal_form(columns).to_Matrix()
    return IntMatrix.of(
        [[int(reduced[i, j]) for i in range(reduced.rows)] for j in range(reduced.cols)],
        m.cols,
    )


def _row_reduce(rows: list[list[int]], width: int) -> int:
    """
    Unimodular row reduction of the first `width` columns, in place.

    Returns the number of pivot rows; every later row is zero in those columns.
    """
    pivot = 0
    for col in range(width):
        if pivot == len(rows):
            break
        for i in range(pivot + 1, len(rows)):
            a, b = rows[pivot][col], rows[i][col]
            if b == 0:
                continue
            x, y, g = igcdex(a, b)
            top, other = rows[pivot], rows[i]
            rows[pivot] = [x * u + y * v for u, v in zip(top, other)]
            rows[i] = [(b // g) * u - (a // g) * v for u, v in zip(top, other)]
        if rows[pivot][col] != 0:
            pivot += 1
    return pivot


def integer_kernel(a: IntMatrix) -> IntMatrix:
    """A Z-basis (as rows) of {v in Z^n : a v = 0}."""
    n = a.cols
    rows = [
        [a.entries[i][j] for i in range(a.rows)] + [1 if k == j else 0 for k in range(n)]
        for j in range(n)
    ]
    pivots = _row_reduce(rows, a.rows)
    return IntMatrix.of([row[a.rows:] for row in rows[pivots:]], n)


@dataclass(frozen=True)
class Lattice:
    """A sublattice of Z^r, stored by its canonical Hermite basis."""

    ambient_rank: int
    """The rank r of the ambient lattice Z^r."""

    basis: IntMatrix
    """Canonical basis rows; equal lattices have equal bases."""

    @classmethod
    def span(cls, rows: Iterable[Sequence[int]], ambient_rank: int) -> "Lattice":
        """The lattice spanned by the given integer vectors."""
        return cls(ambient_rank, hnf(IntMatrix.of(list(rows), ambient_rank)))

    @classmethod
    def full(cls, ambient_rank: int) -> "Lattice":
        return cls.span(
            [[1 if i == j else 0 for j in range(ambient_rank)] for i in range(ambient_rank)],
            ambient_rank,
        )

    @classmethod
    def zero(cls, ambient_rank: int) -> "Lattice":
        return cls(ambient_rank, IntMatrix((), ambient_rank))

    @property
    def rank(self) -> int:
        return self.basis.rows

    def _check(self, other: "Lattice"):
        if other.ambient_rank != self.ambient_rank:
            raise RankMismatchError(
                f"lattices in Z^{self.ambient_rank} and Z^{other.ambient_rank}"
            )

    def __le__(self, other: "Lattice") -> bool:
        """Lattice inclusion."""
        self._check(other)
        return hnf(other.basis.stack(self.basis)) == other.basis

    def intersect(self, other: "Lattice") -> "Lattice":
        """Intersection, computed from the kernel of the stacked bases."""
        self._check(other)
        if self.rank == 0 or other.rank == 0:
            return Lattice.zero(self.ambient_rank)
        k1 = self.rank
        negated = IntMatrix.of([[-x for x in row] for row in other.basis.entries], self.ambient_rank)
        kernel = integer_kernel(self.basis.stack(negated).transpose())
        rows = [
            [
                sum(coeffs[i] * self.basis.entries[i][j] for i in range(k1))
                for j in range(self.ambient_rank)
            ]
            for coeffs in kernel.entries
        ]
        return Lattice.span(rows, self.ambient_rank)

    def contains_vector(self, v: Sequence[int]) -> bool:
        return Lattice.span(list(self.basis.entries) + [list(v)], self.ambient_rank) == self

    def coordinates(self, sub: "Lattice") -> IntMatrix:
        """
        Coordinates of the basis of `sub` in the basis of this lattice.

        Raises:
            PreconditionError: if `sub` is not contained in this lattice.
        """
        if not sub <= self:
            raise PreconditionError("coordinates requested for a non-sublattice")
        if sub.rank == 0:
            return IntMatrix((), self.rank)
        basis = Matrix(self.basis.to_list()).T
        target = Matrix(sub.basis.to_list()).T
        solution, params = basis.gauss_jordan_solve(target)
        if params.shape[0]:
            raise PreconditionError("lattice basis is not independent")
        return IntMatrix.of(
            [[int(solution[i, j]) for i in range(solution.rows)] for j in range(solution.cols)],
            self.rank,
        )

    def __str__(self):
        return f"Lattice({self.basis})"


def saturate(l: Lattice) -> Lattice:
    """
    The saturation l_Q ∩ Z^r.

    Computed as the integer kernel of the integer kernel, i.e. the double
    orthogonal complement.
    """
    if l.rank == 0:
        return l
    orthogonal = integer_kernel(l.basis)
    if orthogonal.rows == 0:
        return Lattice.full(l.ambient_rank)
    return Lattice(l.ambient_rank, hnf(integer_kernel(orthogonal)))


def is_saturated(l: Lattice) -> bool:
    return saturate(l) == l


def quotient_invariants(sup: Lattice, sub: Lattice) -> tuple[int, ...]:
    """
    Smith invariants of sup/sub for sub ⊆ sup.

    Nonzero entries different from 1 are torsion orders; zeros count free rank.
    """
    coords = sup.coordinates(sub)
    if coords.rows == 0:
        return tuple(0 for _ in range(sup.rank))
    invs = tuple(abs(int(x)) for x in invariant_factors(coords.to_domain_matrix()))
    return invs + tuple(0 for _ in range(sup.rank - len(invs)))


def index_in_saturation(l: Lattice) -> int:
    """The finite index [saturate(l) : l]."""
    invs = quotient_invariants(saturate(l), l)
    index = 1
    for d in invs:
        if d:
            index *= d
    return index
