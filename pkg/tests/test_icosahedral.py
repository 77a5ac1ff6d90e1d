"""Binary icosahedral group: order, census, special orbits, and the
normalized invariant forms."""

from e8nash.cyclo import Z5
from e8nash.generic import Poly
from e8nash.icosahedral import (
    Mat2, ProjPoint, identity, generators, group, element_order,
    order_census, orbit, stabilizer, special_orbits, orbit_form,
    transform_form, is_invariant, invariant_forms, quotient_map,
)
from e8nash.algebra import PowerSeries


def test_group_order():
    assert len(group()) == 120


def test_generators_in_sl2():
    for g in generators():
        det = g.a * g.d - g.b * g.c
        assert det == Z5.one()


def test_order_census():
    assert order_census() == {1: 1, 2: 1, 3: 20, 4: 30, 5: 24, 6: 20, 10: 24}


def test_minus_identity_is_central():
    e = identity()
    minus = next(g for g in group() if element_order(g) == 2)
    for h in generators():
        assert minus * h == h * minus
    assert minus * minus == e


def test_special_orbit_sizes():
    so = special_orbits()
    assert len(so["V"]) == 12
    assert len(so["F"]) == 20
    assert len(so["E"]) == 30


def test_orbit_stabilizer_theorem():
    so = special_orbits()
    for key, size in (("V", 12), ("F", 20), ("E", 30)):
        p = so[key][0]
        assert len(stabilizer(p)) * size == 120
        assert len(orbit(p)) == size


def test_invariant_form_degrees():
    Eh, Fh, Vh = invariant_forms()
    assert Eh.total_degree() == 30
    assert Fh.total_degree() == 20
    assert Vh.total_degree() == 12


def test_forms_are_invariant():
    for f in invariant_forms():
        assert is_invariant(f)


def test_forms_vanish_on_their_orbits():
    so = special_orbits()
    Eh, Fh, Vh = invariant_forms()
    for f, key in ((Eh, "E"), (Fh, "F"), (Vh, "V")):
        for p in so[key][:3]:
            val = f.substitute({"u": _embed(p.u), "v": _embed(p.v)})
            # substitute with constants gives a constant poly
            assert val.is_zero() or val.constant_value().is_zero()


def _embed(c):
    return Poly({(): c})


def test_syzygy_exact():
    Eh, Fh, Vh = invariant_forms()
    assert (Eh ** 2 + Fh ** 3 + Vh ** 5).is_zero()


def test_orbit_form_descends():
    so = special_orbits()
    f = orbit_form(so["V"])
    assert f.total_degree() == 12
    assert is_invariant(f)


def test_non_invariant_form_detected():
    u = Poly.var("u")
    assert not is_invariant(u ** 12)


def test_quotient_map_lands_on_surface():
    # image of any parametrized branch satisfies x^2 + y^3 + z^5 = 0
    us = PowerSeries.from_terms("t", {0: 1, 1: 2})
    vs = PowerSeries.from_terms("t", {1: 1})
    x, y, z = quotient_map(us, vs)
    rel = x * x + y * y * y + z * z * z * z * z
    assert not rel.coeffs


def test_transform_form_is_group_action():
    g1, g2 = generators()
    p = Poly.var("u") ** 2 + Poly.var("u") * Poly.var("v")
    lhs = transform_form(p, g1 * g2)
    rhs = transform_form(transform_form(p, g2), g1)
    assert lhs == rhs
