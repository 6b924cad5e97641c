import pytest

from torus_models.errors import PreconditionError, UncertifiedLocalizationError
from torus_models.rings import (
    BorelRing,
    LocalizedElement,
    ambient_ring,
    borel_ring,
    equal,
    euler_class,
    euler_system_standard,
    inflation,
    linear_form,
    local,
    localize,
    mutate_euler,
    same_localization,
    termwise_inflation,
)
from torus_models.subgroups import Character, cyclic, subgroup, torus, trivial
from torus_models.suites.euler import VARIANTS, transitivity_witness


def test_euler_class_of_powers():
    """The class of z^n at C_m is n·c when m divides n and 1 otherwise."""
    R, (c,) = ambient_ring(1)
    z = Character.of(1)
    assert euler_class(z ** 2, cyclic(2), trivial(1)) == 2 * c
    assert euler_class(z ** 3, cyclic(2), trivial(1)) == R.one
    assert euler_class(z, trivial(1), trivial(1)) == c


def test_euler_class_preconditions():
    with pytest.raises(PreconditionError):
        euler_class(Character.of(1), cyclic(2), cyclic(2))
    with pytest.raises(PreconditionError):
        euler_class(Character.of(0), cyclic(2), trivial(1))


def test_borel_rings_of_one_identity_component_agree():
    assert borel_ring(cyclic(2)) == borel_ring(trivial(1))
    assert borel_ring(torus(1)) != borel_ring(trivial(1))
    assert borel_ring(torus(1)).ngens == 0


def test_borel_subring_membership():
    _, (x, y) = ambient_ring(2)
    ring = BorelRing(subgroup([[1, 1]], 2))
    assert ring.contains_poly((x + y) ** 2)
    assert not ring.contains_poly(x)


def test_inflation_needs_containment():
    inflation(torus(1), cyclic(2))
    with pytest.raises(PreconditionError):
        inflation(cyclic(2), torus(1))


def test_inflations_compose_end_to_end():
    composite = inflation(torus(1), cyclic(2)).compose(inflation(cyclic(2), trivial(1)))
    assert composite.source.subgroup == torus(1)
    assert composite.target.subgroup == trivial(1)
    with pytest.raises(PreconditionError, match="cannot compose"):
        inflation(torus(1), cyclic(2)).compose(inflation(cyclic(4), trivial(1)))


def test_localization_units():
    _, (c,) = ambient_ring(1)
    ring = local(borel_ring(trivial(1)), [c])
    assert ring.is_unit(c ** 3)
    assert ring.is_unit(2 * c)
    assert not local(borel_ring(trivial(1))).is_unit(c)
    zero_ring = local(borel_ring(trivial(1)), [c.ring.zero])
    assert zero_ring.is_zero_ring


def test_fractions():
    _, (c,) = ambient_ring(1)
    ring = local(borel_ring(trivial(1)), [c])
    a = LocalizedElement(ring, c, c ** 2)
    b = LocalizedElement(ring, c.ring.one, c)
    assert equal(a, b)
    assert equal(a * localize(c, borel_ring(trivial(1)), [c]), localize(c.ring.one, borel_ring(trivial(1)), [c]))
    with pytest.raises(UncertifiedLocalizationError):
        LocalizedElement(local(borel_ring(trivial(1))), c, c)


def test_linear_form():
    _, (x, y) = ambient_ring(2)
    assert linear_form((2, -1), 2) == 2 * x - y


def test_termwise_inflation(rank1, rank2):
    for instance in (rank1, rank2):
        homs = termwise_inflation(instance.rc_s)
        assert set(homs) == set(instance.sigma_c.nodes)


def test_standard_systems_are_transitive(rank1, rank2):
    for instance in (rank1, rank2):
        for variant in VARIANTS:
            system = euler_system_standard(instance.rc_s, variant)
            assert transitivity_witness(system) is None
            assert system.regularity_failures() == []


def test_variants_localize_alike(rank1, rank2):
    for instance in (rank1, rank2):
        systems = [euler_system_standard(instance.rc_s, v) for v in VARIANTS]
        for other in systems[1:]:
            assert same_localization(systems[0], other) == []


def test_rrc_classes_at_c2(rank1):
    """In RRc the classes at the fiber {1, C2, C3} cycle with n."""
    _, (c,) = ambient_ring(1)
    system = euler_system_standard(rank1.rc_s, "RRc")
    bottom = rank1.sigma_c.bottom
    gens = system.generators[bottom]
    assert len(gens) == 6
    # z^2 at (1, C2, C3)
    assert gens[1] == (2 * c, 2 * c, c.ring.one)
    # z^3
    assert gens[2] == (3 * c, c.ring.one, 3 * c)


def test_mutated_system_is_not_regular(rank1):
    mutated = mutate_euler(rank1.euler_c)
    assert mutated.variant.endswith("+zero")
    assert mutated.regularity_failures()
    top, bottom = rank1.sigma_c.top, rank1.sigma_c.bottom
    assert mutated.localized_value(top, bottom).components[0].is_zero_ring
