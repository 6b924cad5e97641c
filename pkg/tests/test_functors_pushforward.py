import json
import logging

import pytest

from torus_models.diagrams import is_p_module, same_diagram
from torus_models.errors import PreconditionError
from torus_models.functors.base import trace
from torus_models.functors.pushforward import (
    PI_STAR,
    apply_e,
    intersections_witness,
    pi_shriek,
    pi_shriek_ring,
    pi_star,
    sandwich_witness,
    shriek_triangles_witness,
    star_triangles_witness,
)
from torus_models.instances import gen_module
from torus_models.posets import Flag


def test_pushed_ring_blocks(rank1, settings):
    """Over Σ_d = [0, 1] the vertex (0) collects the flag (1) and (1 ⊃ 0) collects (T ⊃ 1)."""
    pushed = pi_shriek_ring(rank1.rc_f, rank1.d, settings)
    top, bottom = rank1.sigma_c.top, rank1.sigma_c.bottom
    assert len(pushed.index) == 3
    assert set(pushed.fiber_blocks[Flag((0,))]) == {Flag((bottom,))}
    assert set(pushed.fiber_blocks[Flag((1, 0))]) == {Flag((top, bottom))}
    assert len(pushed.value(Flag((0,)))) == 3


def test_pushed_ring_needs_matching_domain(rank1, settings):
    with pytest.raises(PreconditionError):
        pi_shriek_ring(rank1.ra_f, rank1.d, settings)


def test_e_after_shriek_is_identity(rank1, rank2, settings):
    for instance in (rank1, rank2):
        pushed = pi_shriek_ring(instance.rc_f, instance.d, settings)
        for m in instance.corpus("A_c^f")[:6]:
            shrieked = pi_shriek(m, instance.d, pushed)
            assert is_p_module(shrieked, settings).passed
            assert same_diagram(apply_e(shrieked), m, settings) is None


def test_pi_star_sits_between_sum_and_product(rank2, settings):
    for m in rank2.corpus("A_c^f")[:4]:
        assert sandwich_witness(m, pi_star(m, rank2.d)) is None
        assert intersections_witness(m, rank2.d, settings) is None


def test_triangle_identities(rank1, settings):
    pushed = pi_shriek_ring(rank1.rc_f, rank1.d, settings)
    free = gen_module("free", rank1)
    torsion = gen_module("torsion", rank1, at="1", length=2)
    mbar = pi_shriek(torsion, rank1.d, pushed)
    assert shriek_triangles_witness(free, mbar, rank1.d, settings) is None
    assert star_triangles_witness(free, mbar, rank1.d, settings) is None


def test_functor_without_maps():
    with pytest.raises(PreconditionError):
        PI_STAR.on_maps(None)


def test_trace_line(rank1, caplog):
    m = rank1.samples["A_c^f"]
    with caplog.at_level(logging.DEBUG, logger="torus_models.functors.base"):
        line = trace("π_!", m, m)
    record = json.loads(line)
    assert record["functor"] == "π_!"
    assert record["input"] == record["output"]
    assert line in caplog.text
