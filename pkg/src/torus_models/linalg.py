"""
Rational linear algebra over sympy's `DomainMatrix`.

Vectors are plain lists of rationals (``QQ`` elements or ints). Matrices are
given as lists of rows together with an explicit width, so empty row sets are
handled uniformly.
"""

from typing import Sequence

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

Vector = list


def to_matrix(rows: Sequence[Sequence], width: int) -> DomainMatrix:
    return DomainMatrix([[QQ(x) for x in row] for row in rows], (len(rows), width), QQ)


def rank(rows: Sequence[Sequence], width: int) -> int:
    if not rows or width == 0:
        return 0
    return to_matrix(rows, width).rank()


def quotient_rank(rows: Sequence[Sequence], relations: Sequence[Sequence], width: int) -> int:
    """Rank of the span of `rows` modulo the span of `relations`."""
    return rank(list(rows) + list(relations), width) - rank(relations, width)


def express(rows: Sequence[Sequence], target: Sequence, width: int) -> list | None:
    """
    Coefficients c with sum(c_i * rows_i) == target, or None.

    Free coefficients are set to zero, so the answer is deterministic.
    """
    if not any(target):
        return [QQ(0)] * len(rows)
    if not rows:
        return None
    n = len(rows)
    augmented = [[QQ(rows[i][k]) for i in range(n)] + [QQ(target[k])] for k in range(width)]
    reduced, pivots = DomainMatrix(augmented, (width, n + 1), QQ).rref()
    if n in pivots:
        return None
    dense = reduced.to_list()
    coeffs = [QQ(0)] * n
    for r, col in enumerate(pivots):
        coeffs[col] = dense[r][n]
    return coeffs


def in_span(rows: Sequence[Sequence], target: Sequence, width: int) -> bool:
    return express(rows, target, width) is not None


def left_kernel(rows: Sequence[Sequence], width: int) -> list[list]:
    """A basis of {c : sum(c_i * rows_i) == 0}."""
    n = len(rows)
    if n == 0:
        return []
    if width == 0:
        return [[QQ(1) if i == j else QQ(0) for i in range(n)] for j in range(n)]
    columns = DomainMatrix(
        [[QQ(rows[i][k]) for i in range(n)] for k in range(width)], (width, n), QQ
    )
    return [list(row) for row in columns.nullspace().to_list()]


def combine(coeffs: Sequence, rows: Sequence[Sequence], width: int) -> list:
    out = [QQ(0)] * width
    for c, row in zip(coeffs, rows):
        if c:
            for k in range(width):
                if row[k]:
                    out[k] += c * row[k]
    return out


def complement_basis(rows: Sequence[Sequence], sub: Sequence[Sequence], width: int) -> list[int]:
    """Indices of `rows` extending a basis of span(sub) to a basis of span(sub + rows)."""
    chosen: list[int] = []
    current = list(sub)
    r = rank(current, width)
    for i, row in enumerate(rows):
        r_new = rank(current + [row], width)
        if r_new > r:
            chosen.append(i)
            current.append(row)
            r = r_new
    return chosen


def intersect(spaces: Sequence[Sequence[Sequence]], width: int) -> list[list]:
    """Spanning rows of the intersection of the row spaces."""
    if not spaces:
        raise ValueError("intersection of no subspaces")
    current = [list(r) for r in spaces[0]]
    for other in spaces[1:]:
        if not current or not other:
            return []
        kernel = left_kernel(list(current) + list(other), width)
        current = [combine(c[: len(current)], current, width) for c in kernel]
        current = [r for r in current if any(r)]
    return current
