import pytest

from torus_models.diagrams import same_diagram
from torus_models.errors import MissingStructureError, PreconditionError
from torus_models.functors.multiplicity import (
    comparison_q_shriek_d_e,
    counit_e_q_shriek_d,
    e_q,
    e_q_map,
    fq_structure,
    q_shriek_d,
    unit_e_q_shriek_d,
)
from torus_models.suites.adjunctions import map_witness


def test_counit_is_iso(rank1, rank2, settings):
    for instance in (rank1, rank2):
        system = instance.multiplicity
        for n in instance.corpus("A_a^p")[:4]:
            pushed = q_shriek_d(n, system, instance.rc_p)
            counit = counit_e_q_shriek_d(e_q(pushed, system, instance.ra_p), n)
            assert map_witness(counit, settings) is None


def test_comparison_is_iso_and_e_of_it_is_the_counit(rank1, settings):
    system, ra_p, rc_p = rank1.multiplicity, rank1.ra_p, rank1.rc_p
    for m in rank1.corpus("A_c^p")[:4]:
        em = e_q(m, system, ra_p)
        pushed = q_shriek_d(em, system, rc_p)
        comparison = comparison_q_shriek_d_e(pushed, m)
        assert map_witness(comparison, settings) is None
        e_pushed = e_q(pushed, system, ra_p)
        assert e_q_map(comparison, system, e_pushed, em).equals(counit_e_q_shriek_d(e_pushed, em), settings)


def test_unit_inverts_the_comparison(rank1, settings):
    system = rank1.multiplicity
    m = rank1.samples["A_c^p"]
    pushed = q_shriek_d(e_q(m, system, rank1.ra_p), system, rank1.rc_p)
    eta = unit_e_q_shriek_d(m, pushed, settings)
    round_trip = eta.compose(comparison_q_shriek_d_e(pushed, m))
    assert round_trip.naturality_witness(settings) is None
    assert round_trip.iso_witness(settings) is None


def test_ring_goes_to_ring(rank1, settings):
    """q_!^d of ℝ_a^p is ℝ_c^p as a module."""
    system = rank1.multiplicity
    pushed = q_shriek_d(rank1.samples["A_a^p"], system, rank1.rc_p)
    assert same_diagram(pushed, rank1.samples["A_c^p"], settings) is None


def test_lifts_only_go_down(rank1):
    structure = fq_structure(rank1.samples["A_a^p"])
    top, bottom = rank1.sigma_a.top, rank1.sigma_c.bottom
    assert structure.lift(top, bottom).images
    with pytest.raises(MissingStructureError):
        structure.lift(bottom, top)


def test_pair_modules_only(rank1):
    with pytest.raises(PreconditionError):
        q_shriek_d(rank1.samples["A_c^f"], rank1.multiplicity, rank1.rc_p)
