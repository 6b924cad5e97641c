import pytest

from torus_models.diagrams import identity_diagram_map, is_middle_independent, same_diagram
from torus_models.errors import PreconditionError
from torus_models.functors.flags_pairs import functor_f, functor_f_map, functor_p, functor_p_map
from torus_models.instances import gen_module
from torus_models.posets import Flag, PairObj


def test_f_reads_the_outer_pair(rank1):
    n = rank1.samples["A_c^p"]
    f = functor_f(n, rank1.rc_f)
    top, bottom = rank1.sigma_c.top, rank1.sigma_c.bottom
    assert f.values[Flag((top, bottom))] == n.values[PairObj(top, bottom)]
    assert f.values[Flag((bottom,))] == n.values[PairObj(bottom, bottom)]


def test_round_trips(rank1, rank2, settings):
    for instance in (rank1, rank2):
        rf, rp = instance.rc_f, instance.rc_p
        for n in instance.corpus("A_c^p")[:4]:
            assert same_diagram(functor_p(functor_f(n, rf), rp), n, settings) is None
        for m in instance.corpus("A_c^f")[:4]:
            if is_middle_independent(m, settings).passed:
                assert same_diagram(functor_f(functor_p(m, rp), rf), m, settings) is None


def test_middle_faces_are_inverted(rank2, settings):
    m = gen_module("random-qce", rank2, seed=1)
    back = functor_f(functor_p(m, rank2.rc_p), rank2.rc_f)
    assert same_diagram(back, m, settings) is None


def test_on_maps(rank1):
    n = rank1.samples["A_c^p"]
    f = functor_f(n, rank1.rc_f)
    phi = functor_f_map(identity_diagram_map(n), f, f)
    assert phi.equals(identity_diagram_map(f), n.settings)
    psi = functor_p_map(phi, n, n)
    assert psi.equals(identity_diagram_map(n), n.settings)


def test_wrong_flavor(rank1):
    with pytest.raises(PreconditionError):
        functor_f(rank1.samples["A_c^f"])
    with pytest.raises(PreconditionError):
        functor_p(rank1.samples["A_c^p"])
