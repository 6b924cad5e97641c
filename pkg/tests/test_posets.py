import pytest
from hypothesis import given
from hypothesis import strategies as st

from torus_models.errors import CapExceededError, ConstructionError, PreconditionError
from torus_models.posets import (
    Flag,
    MultiplicitySystem,
    PairObj,
    all_flags,
    build_sigma_a,
    build_sigma_c,
    face,
    flag_poset,
    flags,
    pair_category,
    quotient_map_q,
    subflag_over,
)
from torus_models.suites.posets import brute_cotoral, cleavage_witness
from torus_models.subgroups import cyclic, torus, trivial


def universe_of(orders):
    return [trivial(1), torus(1)] + [cyclic(n) for n in sorted(set(orders))]


@given(st.lists(st.integers(2, 6), max_size=4))
def test_sigma_a_is_a_partial_order(orders):
    sigma = build_sigma_a(universe_of(orders))
    assert sigma.check_partial_order() == []
    assert sigma.top == torus(1)


@given(st.lists(st.integers(2, 6), max_size=3))
def test_cotoral_matches_character_search(orders):
    universe = universe_of(orders)
    sigma = build_sigma_a(universe)
    for l in universe:
        for k in universe:
            assert sigma.leq(l, k) == brute_cotoral(l, k)


def test_rank1_shape(rank1):
    """Every finite subgroup sits directly below T and nothing else is comparable."""
    sigma = rank1.sigma_a
    assert {(a.name, b.name) for a, b, _ in sigma.edges} == {("1", "T"), ("C2", "T"), ("C3", "T")}
    assert len(rank1.sigma_c) == 2
    assert rank1.sigma_d.nodes == (0, 1)


def test_multiplicity_fibers(rank1):
    system = rank1.multiplicity
    bottom = rank1.sigma_c.bottom
    assert [h.name for h in system.fibers[bottom]] == ["1", "C2", "C3"]
    assert len(system.fibers[rank1.sigma_c.top]) == 1
    assert system.pushforward(cyclic(2), torus(1)) == torus(1)


def test_fiber_over_trivial_group():
    """The fiber over the trivial group collects the finite subgroups."""
    sigma_a = build_sigma_a([trivial(1), torus(1), cyclic(2)])
    sigma_c = build_sigma_c([trivial(1), torus(1)])
    system = MultiplicitySystem(quotient_map_q(sigma_a, sigma_c))
    assert set(system.fibers[trivial(1)]) == {trivial(1), cyclic(2)}


def test_sigma_c_rejects_disconnected():
    with pytest.raises(ConstructionError):
        build_sigma_c([trivial(1), cyclic(2), torus(1)])


def test_missing_top():
    with pytest.raises(ConstructionError):
        build_sigma_a([trivial(1), cyclic(2)])


def test_flags_of_sigma_c(rank1):
    sigma = rank1.sigma_c
    t, one = sigma.top, sigma.bottom
    assert flags(sigma, 0) == [Flag((t,)), Flag((one,))]
    assert flags(sigma, 1) == [Flag((t, one))]
    assert flags(sigma, 2) == []
    assert len(all_flags(sigma)) == 3


def test_faces(rank1):
    t, one = rank1.sigma_c.top, rank1.sigma_c.bottom
    f = Flag((t, one))
    assert face(f, 0) == Flag((one,))
    assert face(f, 1) == Flag((t,))
    with pytest.raises(PreconditionError):
        face(f, 2)
    with pytest.raises(PreconditionError):
        face(Flag((t,)), 0)


def test_flag_poset_edges_are_faces(rank1):
    poset = flag_poset(rank1.sigma_c)
    assert len(poset) == 3
    assert sorted(tag for _, _, tag in poset.edges) == ["face:0", "face:1"]
    assert poset.check_partial_order() == []


def test_flag_cap(rank2):
    with pytest.raises(CapExceededError):
        flag_poset(rank2.sigma_a, max_flags=5)


def test_pair_category(rank1):
    t, one = rank1.sigma_c.top, rank1.sigma_c.bottom
    qp = pair_category(rank1.sigma_c)
    assert set(qp.nodes) == {PairObj(t, t), PairObj(t, one), PairObj(one, one)}
    assert qp.leq(PairObj(one, one), PairObj(t, one))
    assert qp.leq(PairObj(t, t), PairObj(t, one))
    assert not qp.leq(PairObj(one, one), PairObj(t, t))
    tags = sorted(tag for _, _, tag in qp.edges)
    assert tags == ["horizontal", "vertical"]


def test_subflag_over(rank1):
    t = rank1.sigma_a.top
    f = Flag((t, cyclic(2)))
    assert subflag_over(f, Flag((0,)), rank1.dq) == Flag((cyclic(2),))
    assert subflag_over(f, Flag((1, 0)), rank1.dq) == f


def test_cleavage(rank1, rank2):
    for instance in (rank1, rank2):
        assert cleavage_witness(instance.q, instance.ra_f.index.nodes) is None
        assert cleavage_witness(instance.d, instance.rc_f.index.nodes) is None


def test_dimension_map(rank2):
    d = rank2.d
    assert d(rank2.sigma_c.top) == 2
    assert d(rank2.sigma_c.bottom) == 0
    assert sorted(d(k) for k in rank2.sigma_c.nodes) == [0, 1, 1, 2]
