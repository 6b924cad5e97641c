import pytest

from torus_models.diagrams import is_extended, is_p_module
from torus_models.errors import ConstructionError, PreconditionError
from torus_models.functors.extended import gamma_d_rank1, gamma_v, hom_bijection_witness
from torus_models.instances import gen_module, gen_standard_instance
from torus_models.settings import EngineSettings
from torus_models.suites.gamma_v import scaled


def test_output_is_extended(rank1, settings):
    for m in rank1.corpus("A_c^f")[:6]:
        assert is_extended(gamma_v(m).module, settings).passed, m.name


def test_counit_is_iso_on_extended_modules(rank1, settings):
    free = rank1.samples["A_c^f"]
    assert is_extended(free, settings).passed
    extended = gamma_v(free)
    assert extended.counit.naturality_witness(settings) is None
    assert extended.counit.iso_witness(settings) is None


def test_counit_fails_off_extended_modules(rank1, settings):
    vertex = gen_module("vertex", rank1, at="1")
    assert not is_extended(vertex, settings).passed
    assert gamma_v(vertex).counit.iso_witness(settings) is not None


def test_one_pullback_per_factor_below_the_top(rank1):
    extended = gamma_v(rank1.samples["A_c^f"])
    bottom, top = rank1.sigma_c.bottom, rank1.sigma_c.top
    assert set(extended.pullbacks) == {(bottom, j) for j in range(3)}
    assert extended.uppers[bottom] == [top]


def test_hom_bijection(rank1, settings):
    for k, m in enumerate(rank1.corpus("A_c^f")[:3], start=1):
        extended = gamma_v(m)
        phi = extended.counit if k == 1 else scaled(extended.counit, k)
        assert hom_bijection_witness(phi, extended, settings) is None


def test_gamma_v_in_rank_two():
    """R comes back as R; localized sides are read with denominators up to the bound."""
    settings = EngineSettings(window_lo=0, window_hi=6, denominator_bound=3)
    instance = gen_standard_instance(2, "standard", settings)
    free = instance.samples["A_c^f"]
    extended = gamma_v(free)
    assert is_extended(extended.module, settings).passed
    assert extended.counit.naturality_witness(settings) is None
    assert extended.counit.iso_witness(settings) is None
    sigma = instance.sigma_c
    assert extended.uppers[sigma.bottom][0] == sigma.top
    assert len(extended.uppers[sigma.bottom]) == len(sigma.nodes) - 1


def test_gamma_v_needs_flags(rank1):
    with pytest.raises(PreconditionError):
        gamma_v(rank1.samples["A_c^p"])


def test_gamma_d_in_rank_one(rank1, settings):
    g = gamma_d_rank1(rank1.samples["A_d^f"], rank1.rc_f, rank1.d, settings)
    assert is_extended(g, settings).passed
    assert is_p_module(g, settings).passed


def test_gamma_d_outside_rank_one(rank2, settings):
    with pytest.raises(ConstructionError, match="rank 1"):
        gamma_d_rank1(rank2.samples["A_d^f"], rank2.rc_f, rank2.d, settings)
