import pytest

from torus_models.diagrams import ModuleDiagram, is_p_module, is_qc, is_qce
from torus_models.errors import PreconditionError
from torus_models.functors.euler_adapted import (
    canonical_pi_structure,
    check_maximal_condition,
    comparison_pi_shriek_e,
    comparison_pi_shriek_e_pairs,
    continuity_mismatches,
    counit_e_pi_shriek_e,
    counit_e_pi_shriek_e_pairs,
    pi_shriek_e,
    pi_shriek_e_pairs,
    pi_shriek_e_pairs_ring,
    pi_shriek_e_ring,
)
from torus_models.functors.pushforward import apply_e
from torus_models.modules import ModuleMap, zero_value
from torus_models.posets import PosetMap, build_sigma_d
from torus_models.suites.adjunctions import map_witness


def test_nested_localizations_are_continuous(rank1, rank2):
    for instance in (rank1, rank2):
        assert continuity_mismatches(instance.rc_f) == []
        check_maximal_condition(instance.d)


def test_maximal_condition_names_the_element(rank2):
    """Sending one circle to dimension 0 leaves it off the maximal proper elements."""
    sigma = rank2.sigma_c
    circles = [k for k in sigma.nodes if rank2.d(k) == 1]
    assignment = {k: rank2.d(k) for k in sigma.nodes}
    assignment[circles[1]] = 0
    skewed = PosetMap("skewed", sigma, build_sigma_d(2), assignment, euler_compatible=False)
    with pytest.raises(PreconditionError, match="maximal"):
        check_maximal_condition(skewed)


def test_euler_adapted_ring_has_the_pushed_shape(rank1, settings):
    ring = pi_shriek_e_ring(rank1.rc_f, rank1.d, settings)
    assert ring.index.nodes == rank1.rd_f.index.nodes
    for fbar in ring.index.nodes:
        assert len(ring.value(fbar)) == len(rank1.rd_f.value(fbar))


def test_canonical_structure(rank1, rank2, settings):
    for instance in (rank1, rank2):
        for m in instance.corpus("A_c^f")[:4]:
            if not is_qc(m, settings).passed:
                continue
            structure = canonical_pi_structure(m, settings)
            assert structure.triangle_witness(settings) is None
            assert structure.transitivity_witness(settings) is None


def test_one_lift_per_strict_pair(rank1, settings):
    structure = canonical_pi_structure(rank1.samples["A_c^f"], settings)
    top, bottom = rank1.sigma_c.top, rank1.sigma_c.bottom
    assert set(structure.lifts) == {(top, bottom)}


def test_counit_and_comparison_are_isos(rank1, rank2, settings):
    for instance in (rank1, rank2):
        d, rf, rd = instance.d, instance.rc_f, instance.rd_f
        for m in instance.corpus("A_c^f")[:4]:
            if not is_qce(m, settings).passed:
                continue
            pushed = pi_shriek_e(m, d, ring=rd)
            assert is_p_module(pushed, settings).passed
            e_pushed = apply_e(pushed, rf)
            assert map_witness(counit_e_pi_shriek_e(e_pushed, m), settings) is None
            again = pi_shriek_e(e_pushed, d, ring=rd)
            assert map_witness(comparison_pi_shriek_e(again, pushed), settings) is None


def test_pair_version(rank1, settings):
    d, rp = rank1.d, rank1.rc_p
    ring = pi_shriek_e_pairs_ring(rp, d, settings)
    for n in rank1.corpus("A_c^p")[:4]:
        if not is_qce(n, settings).passed:
            continue
        pushed = pi_shriek_e_pairs(n, d, ring)
        assert is_p_module(pushed, settings).passed
        e_pushed = apply_e(pushed, rp)
        assert map_witness(counit_e_pi_shriek_e_pairs(e_pushed, n), settings) is None
        again = pi_shriek_e_pairs(e_pushed, d, ring)
        assert map_witness(comparison_pi_shriek_e_pairs(again, pushed), settings) is None


def test_pair_ring_needs_pairs(rank1, settings):
    with pytest.raises(PreconditionError):
        pi_shriek_e_pairs_ring(rank1.rc_f, rank1.d, settings)


def _vertices_only(m: ModuleDiagram) -> ModuleDiagram:
    """The values on the length-0 flags, with the zero module on every longer flag."""
    values = {f: v if f.length == 0 else zero_value(m.ring.value(f)) for f, v in m.values.items()}
    maps = {}
    for (a, b), mm in m.maps.items():
        images = tuple(
            tuple(values[b].pieces[j].zero() for _ in range(values[a].pieces[i].rank))
            for j, i in enumerate(mm.reindex)
        )
        maps[(a, b)] = ModuleMap(values[a], values[b], mm.reindex, images)
    return ModuleDiagram(f"{m.name} on vertices", m.ring, values, maps, m.settings)


def test_missing_components_are_not_pqc(rank1, settings):
    pushed = pi_shriek_e(rank1.samples["A_c^f"], rank1.d, ring=rank1.rd_f)
    assert is_p_module(pushed, settings).passed
    report = is_p_module(_vertices_only(pushed), settings)
    assert not report.passed
    assert "is not the extension of (0)" in report.witness
