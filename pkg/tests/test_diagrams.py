import pytest

from torus_models.diagrams import (
    check_ring_middle_independence,
    coefficient_to_pairs,
    identity_diagram_map,
    is_extended,
    is_middle_independent,
    is_qc,
    is_qce,
    pairs_to_flags,
    ring_as_module,
    same_diagram,
)
from torus_models.errors import PreconditionError
from torus_models.instances import gen_module
from torus_models.posets import Flag
from torus_models.rings import ambient_ring


def test_rings_are_qce(rank1, rank2, settings):
    for instance in (rank1, rank2):
        for model, m in instance.samples.items():
            assert is_qce(m, settings).passed, model


def test_ring_middle_independence(rank2):
    assert check_ring_middle_independence(rank2.rc_f) == []
    assert check_ring_middle_independence(rank2.ra_f) == []


def test_pairs_and_flags_agree_on_values(rank2):
    back = pairs_to_flags(rank2.rc_p)
    for f in rank2.rc_f.index.nodes:
        assert back.value(f) == rank2.rc_f.value(f)
    again = coefficient_to_pairs(back)
    for p in rank2.rc_p.index.nodes:
        assert again.value(p) == rank2.rc_p.value(p)


def test_torsion_at_the_bottom(rank1):
    """torsion(1, 2) in rank 1 is ℚ[c]/c² at the vertex (1) and vanishes on (T ⊃ 1)."""
    _, (c,) = ambient_ring(1)
    m = gen_module("torsion", rank1, at="1", length=2)
    bottom, top = rank1.sigma_c.bottom, rank1.sigma_c.top
    value = m.value(Flag((bottom,)))
    # one factor per member of the fiber {1, C2, C3}, each killed by the square of its generator
    assert [tuple(rel[0].monic() for rel in piece.relations) for piece in value.pieces] == [(c ** 2,)] * 3
    assert all(piece.rank == 0 for piece in m.value(Flag((top,))).pieces)
    for piece in m.value(Flag((top, bottom))).pieces:
        assert piece.is_zero(piece.generator(0), 8)


def test_torsion_and_vertex_verdicts(rank1, rank2, settings):
    for instance in (rank1, rank2):
        for k in instance.sigma_c.nodes:
            if k == instance.sigma_c.top:
                continue
            torsion = gen_module("torsion", instance, at=k.name, length=1)
            assert is_qce(torsion, settings).passed
            vertex = gen_module("vertex", instance, at=k.name)
            assert is_qc(vertex, settings).passed
            report = is_extended(vertex, settings)
            assert not report.passed
            assert report.witness


def test_random_modules_are_qce_and_middle_independent(rank2, settings):
    for seed in range(3):
        m = gen_module("random-qce", rank2, seed=seed)
        assert is_qce(m, settings).passed
        assert is_middle_independent(m, settings).passed


def test_same_diagram(rank1, settings):
    assert same_diagram(rank1.samples["A_c^f"], ring_as_module(rank1.rc_f, settings), settings) is None
    shifted = gen_module("shift", rank1, shift=2)
    assert same_diagram(rank1.samples["A_c^f"], shifted, settings) is not None


def test_identity_is_iso(rank1, settings):
    phi = identity_diagram_map(rank1.samples["A_c^p"])
    assert phi.naturality_witness(settings) is None
    assert phi.iso_witness(settings) is None


def test_gen_module_preconditions(rank1):
    with pytest.raises(PreconditionError):
        gen_module("shift", rank1, shift=1)
    with pytest.raises(PreconditionError):
        gen_module("torsion", rank1, at="1", length=0)
    with pytest.raises(PreconditionError):
        gen_module("vertex", rank1)
    with pytest.raises(PreconditionError):
        gen_module("torsion", rank1, at="C5")
    with pytest.raises(PreconditionError):
        gen_module("torsion", rank1, at="T")
    with pytest.raises(PreconditionError):
        gen_module("bogus", rank1)
