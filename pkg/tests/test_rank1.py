import pytest

from torus_models.errors import ConstructionError, PreconditionError
from torus_models.functors.rank1 import (
    DIAGONAL_UNIT,
    GENERIC,
    HAND_BUILT,
    AeFamily,
    a_iso_witness,
    c,
    c_iso_witness,
    euler_family,
    hand_built_objects,
    pullback_contains,
    rank1_e,
    rank1_gamma_qd,
    rank1_model_objects,
    ring_object,
    round_trip_witness,
    square_is_pullback_witness,
    strictness_witness,
)


def test_family_normalises_its_table():
    family = AeFamily.of(1, {2: 1, 3: c})
    assert family.exceptional == ((3, c),)
    assert family.component(7) == 1
    assert family.component(GENERIC) == 1
    with pytest.raises(PreconditionError):
        AeFamily.of(0, {0: c})


def test_euler_family():
    """The class of z^6 is c at the divisors of 6."""
    family = euler_family(6)
    assert family.indices == (1, 2, 3, 6)
    assert family.component(2) == c
    assert family.component(4) == 1
    with pytest.raises(PreconditionError):
        euler_family(0)


def test_strictness():
    assert not strictness_witness().is_member
    assert strictness_witness().non_integral_indices() == ["all but finitely many"]
    finitely_many = AeFamily.supported(3, 1 / c)
    assert finitely_many.is_member
    assert finitely_many.non_integral_indices() == ["3"]
    assert not (euler_family(2) * strictness_witness()).is_member


def test_family_parse():
    family = AeFamily.parse({"tail": "c", "exceptional": {"2": "1/c"}})
    assert family == AeFamily.of(c, {2: 1 / c})
    assert AeFamily.parse(family.to_json()) == family
    assert AeFamily.parse("c**2").tail == c**2


def test_round_trips():
    objects = hand_built_objects()
    assert len(objects) == len(HAND_BUILT)
    for obj in objects:
        assert round_trip_witness(obj) is None, obj.name
        assert round_trip_witness(rank1_e(obj)) is None, obj.name


def test_squares_are_pullbacks():
    for obj in hand_built_objects():
        assert square_is_pullback_witness(obj) is None, obj.name


def test_e_of_a_shifted_object():
    """At C1 the generator sits in degree 2, so κ there is c⁻¹."""
    shifted = next(o for o in hand_built_objects() if o.name == "shifted at C1")
    components = rank1_e(shifted)
    assert components.degrees_at(1) == (2,)
    assert components.degrees_at(GENERIC) == (0,)
    assert components.kappa[0][0].component(1) == 1 / c
    assert components.kappa[0][0].tail == 1


def test_isomorphism_witnesses():
    ring = ring_object()
    shifted = next(o for o in hand_built_objects() if o.name == "shifted at C1")
    assert c_iso_witness(ring, ring) is None
    assert c_iso_witness(ring, shifted) is not None
    assert "V differs" in c_iso_witness(ring, hand_built_objects(2)[1])
    unit = rank1_model_objects("A_a^p", DIAGONAL_UNIT)
    assert a_iso_witness(unit, rank1_e(ring)) is None
    assert c_iso_witness(rank1_gamma_qd(unit), ring) is None


def test_pullback_membership():
    components = rank1_e(ring_object())
    assert not pullback_contains(components, [strictness_witness()])
    assert pullback_contains(components, [AeFamily.supported(2, 1 / c)])
    with pytest.raises(PreconditionError):
        pullback_contains(components, [])


def test_generic_kappa_must_be_a_unit():
    data = {"name": "c at every index", "v_degrees": [2], "tail_degrees": [0], "kappa": [["c"]]}
    with pytest.raises(ConstructionError, match="not an isomorphism"):
        rank1_model_objects("A_a^p", data)


def test_sections_must_be_almost_integral():
    data = {"name": "1/c everywhere", "v_degrees": [0], "sections": [{"degree": -2, "coordinates": ["1/c"]}]}
    with pytest.raises(ConstructionError):
        rank1_model_objects("A_c^p", data)


def test_degrees_are_checked():
    data = {"name": "wrong degree", "v_degrees": [0], "sections": [{"degree": 0, "coordinates": ["c"]}]}
    with pytest.raises(ConstructionError, match="degree"):
        rank1_model_objects("A_c^p", data)


def test_unknown_model():
    with pytest.raises(PreconditionError):
        rank1_model_objects("A_d^f", {"name": "x"})
