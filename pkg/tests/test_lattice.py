import pytest
from hypothesis import given
from hypothesis import strategies as st

from torus_models.errors import PreconditionError, RankMismatchError
from torus_models.lattice import (
    IntMatrix,
    Lattice,
    hnf,
    index_in_saturation,
    integer_kernel,
    is_saturated,
    quotient_invariants,
    saturate,
)

rows2 = st.lists(st.lists(st.integers(-9, 9), min_size=2, max_size=2), min_size=0, max_size=3)


@given(rows2)
def test_hnf_is_canonical(rows):
    """Spanning sets of the same lattice give the same basis, whatever their order."""
    a = Lattice.span(rows, 2)
    b = Lattice.span(list(reversed(rows)) + [[0, 0]], 2)
    assert a == b
    assert hnf(a.basis) == a.basis


@given(rows2, rows2)
def test_intersection_is_contained_in_both(r1, r2):
    a, b = Lattice.span(r1, 2), Lattice.span(r2, 2)
    meet = a.intersect(b)
    assert meet <= a
    assert meet <= b


@given(rows2)
def test_saturation_contains_lattice(rows):
    l = Lattice.span(rows, 2)
    sat = saturate(l)
    assert l <= sat
    assert sat.rank == l.rank
    assert is_saturated(sat)


def test_inclusion():
    assert Lattice.span([[2]], 1) <= Lattice.full(1)
    assert not Lattice.full(1) <= Lattice.span([[2]], 1)
    assert Lattice.zero(2) <= Lattice.span([[1, 1]], 2)


def test_integer_kernel():
    kernel = integer_kernel(IntMatrix.of([[1, 2]]))
    assert kernel.rows == 1
    (v,) = kernel.entries
    assert v[0] + 2 * v[1] == 0
    assert abs(v[1]) == 1


def test_index_in_saturation():
    assert index_in_saturation(Lattice.span([[2]], 1)) == 2
    assert index_in_saturation(Lattice.span([[2, 0], [0, 3]], 2)) == 6
    assert index_in_saturation(Lattice.span([[1, 1]], 2)) == 1


def test_quotient_invariants():
    invs = quotient_invariants(Lattice.full(1), Lattice.span([[3]], 1))
    assert invs == (3,)
    invs = quotient_invariants(Lattice.full(2), Lattice.span([[1, 0]], 2))
    assert sorted(invs) == [0, 1]


def test_coordinates_of_non_sublattice():
    with pytest.raises(PreconditionError):
        Lattice.span([[2]], 1).coordinates(Lattice.full(1))


def test_rank_mismatch():
    with pytest.raises(RankMismatchError):
        Lattice.full(1) <= Lattice.full(2)


def test_empty_matrix_needs_width():
    with pytest.raises(PreconditionError):
        IntMatrix.of([])
