import pytest

from torus_models.errors import ConstructionError, PreconditionError, UncertifiedLocalizationError
from torus_models.instances import gen_module
from torus_models.modules import (
    Element,
    Piece,
    add_elements,
    certify,
    extend,
    free_piece,
    simplify,
)
from torus_models.rings import ambient_ring, borel_ring, local
from torus_models.subgroups import trivial

_, (c,) = ambient_ring(1)
ONE = c.ring.one
POLY = local(borel_ring(trivial(1)))
LAURENT = local(borel_ring(trivial(1)), [c])


def test_torsion_piece():
    """ℚ[c]/c² is killed by c² and not by c."""
    piece = Piece(POLY, (0,), ((c ** 2,),))
    g = piece.generator(0)
    assert not piece.is_zero(g, 8)
    assert not piece.is_zero(g.scale(c), 8)
    assert piece.is_zero(g.scale(c ** 2), 8)


def test_torsion_dies_after_inverting_c():
    piece = Piece(LAURENT, (0,), ((c,),))
    assert piece.is_zero(piece.generator(0), 8)


def test_free_piece_has_no_zero_divisors():
    piece = free_piece(LAURENT, (0, 2))
    assert not piece.is_zero(piece.generator(1).scale(c ** 3), 8)
    assert piece.rank == 2


def test_fraction_equality():
    piece = free_piece(LAURENT, (0,))
    a = Element((c,), c ** 2)
    b = Element((ONE,), c)
    assert piece.equal(a, b, 8)
    assert simplify(piece, a) == b


def test_add_elements_with_different_denominators():
    total = add_elements(Element((ONE,), c), Element((ONE,), c ** 2))
    assert total.denominator == c ** 2
    assert total.numerators == (c + 1,)


def test_relations_must_be_homogeneous():
    with pytest.raises(ConstructionError):
        Piece(POLY, (0, 2), ((c, c),))
    with pytest.raises(ConstructionError):
        Piece(POLY, (0,), ((c.ring.zero,),))
    with pytest.raises(ConstructionError):
        Piece(POLY, (0,), ((c, c),))


def test_extension_of_scalars():
    piece = Piece(POLY, (0,), ((c ** 2,),))
    extended = extend(piece, LAURENT)
    assert extended.relations == piece.relations
    assert extended.is_zero(extended.generator(0), 8)
    with pytest.raises(PreconditionError):
        extend(free_piece(LAURENT, (0,)), POLY)


def test_describe():
    assert "c" in Piece(POLY, (0,), ((c ** 2,),)).describe()
    assert free_piece(POLY, ()).describe().endswith("<0>")


def test_regularity_certificates(settings):
    assert certify(Piece(LAURENT, (0,), ((c ** 2,),)), settings) == {"c@[0]": "nilpotent"}
    assert certify(free_piece(LAURENT, (0, 2)), settings) == {
        "c@[0]": "nonzerodivisor",
        "c@[1]": "nonzerodivisor",
    }


def test_zero_divisor_that_is_not_nilpotent(settings):
    """x kills y in ℚ[x,y]/(xy) but no power of x kills the generator."""
    _, (x, y) = ambient_ring(2)
    piece = Piece(local(borel_ring(trivial(2)), [x]), (0,), ((x * y,),))
    with pytest.raises(UncertifiedLocalizationError, match="neither regular nor nilpotent"):
        certify(piece, settings)


def test_diagrams_carry_certificates(rank1):
    torsion = gen_module("torsion", rank1, at="1", length=2)
    assert torsion.certificates
    assert "nilpotent" in {kind for cert in torsion.certificates.values() for kind in cert.values()}
    free = rank1.samples["A_c^f"]
    assert all(kind == "nonzerodivisor" for cert in free.certificates.values() for kind in cert.values())
