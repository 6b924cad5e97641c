import pytest

from torus_models.errors import CapExceededError, PreconditionError, RankMismatchError
from torus_models.subgroups import (
    close_universe,
    contains,
    cyclic,
    dim,
    identity_component,
    is_cotoral,
    join_istar,
    subgroup,
    torus,
    trivial,
)


def test_containment_rank1():
    t, c2, c6, one = torus(1), cyclic(2), cyclic(6), trivial(1)
    assert contains(t, c2)
    assert contains(c6, c2)
    assert not contains(c2, c6)
    assert contains(c2, one)
    assert dim(t) == 1 and dim(c2) == 0


def test_identity_components():
    assert identity_component(cyclic(3)) == trivial(1)
    assert identity_component(torus(1)) == torus(1)
    c2x1 = subgroup([[2, 0], [0, 1]], 2)
    assert identity_component(c2x1) == trivial(2)
    circle_times_c2 = subgroup([[0, 2]], 2)
    assert identity_component(circle_times_c2) == subgroup([[0, 1]], 2)


def test_cotoral():
    """Cotorality needs containment and a torsion-free quotient."""
    assert is_cotoral(cyclic(2), torus(1))
    assert is_cotoral(trivial(1), torus(1))
    assert not is_cotoral(trivial(1), cyclic(2))
    assert not is_cotoral(torus(1), cyclic(2))
    assert is_cotoral(subgroup([[2, 0], [0, 1]], 2), subgroup([[2, 0]], 2))
    assert not is_cotoral(trivial(2), subgroup([[2, 0], [0, 1]], 2))


def test_join_istar():
    assert join_istar(cyclic(2), torus(1)) == torus(1)
    c2x1 = subgroup([[2, 0], [0, 1]], 2)
    k = subgroup([[0, 1]], 2)
    assert join_istar(c2x1, k) == k
    assert join_istar(c2x1, trivial(2)) == c2x1


def test_join_istar_needs_connected_target():
    with pytest.raises(PreconditionError):
        join_istar(trivial(1), cyclic(2))


def test_close_universe_adds_missing_members():
    diamond_plus = [
        trivial(2),
        subgroup([[0, 1]], 2),
        subgroup([[1, 0]], 2),
        torus(2),
        subgroup([[2, 0], [0, 1]], 2),
    ]
    closed, added = close_universe(diamond_plus)
    assert subgroup([[2, 0]], 2) in closed
    assert subgroup([[2, 0]], 2) in added
    assert all(h in closed for h in diamond_plus)


def test_close_universe_is_idempotent():
    closed, _ = close_universe([trivial(1), cyclic(2), cyclic(3), torus(1)])
    again, added = close_universe(closed)
    assert again == closed
    assert added == []


def test_close_universe_cap():
    """The closure of the diamond plus C2×1 needs a sixth member."""
    generators = [trivial(2), subgroup([[0, 1]], 2), subgroup([[1, 0]], 2), torus(2), subgroup([[2, 0], [0, 1]], 2)]
    with pytest.raises(CapExceededError):
        close_universe(generators, max_subgroups=5)


def test_rank_mismatch():
    with pytest.raises(RankMismatchError):
        contains(torus(1), torus(2))


def test_cyclic_order():
    assert cyclic(1) == trivial(1)
    with pytest.raises(PreconditionError):
        cyclic(0)
