import pytest
from hypothesis import given, settings

from gawb import catalog
from gawb.parse import parse_poly as pp
from gawb.poly import Poly
from gawb.quotient import (
    AlgebraPresentation,
    MismatchedPresentationsError,
    NotAUnitError,
    PresentationError,
    RationalPoint,
    SamplingError,
    SmoothnessVerdict,
    sample_point,
    smoothness_check,
    unit_ideal_test,
)

from conftest import polys


@pytest.fixture(scope="module")
def x22():
    return catalog.xmn_presentation(2, 2)


def test_normal_form_with_fiber_priority():
    pres = AlgebraPresentation(["v", "u", "x", "y"], ["x^2*v - y^2*u - 1"])
    e = pres.element("x^2*v")
    assert e == pres.element("y^2*u + 1")
    assert e.numer == pp("y^2*u + 1")
    assert pres.zero().numer.is_zero()
    assert pres.element("(x^2*v - y^2*u - 1)*u").is_zero()


def test_normal_form_idempotent_projection(x22):
    e = x22.element("x^2*v*u + y^2")
    again = x22._make(e.numer, e.denom)
    assert again.numer == e.numer
    a = x22.element("x^2*v")
    b = x22.element("y^2*u")
    assert (a + b).numer == a.numer + b.numer


def test_equality_modulo_relation(x22):
    assert x22.element("x^2*v") == x22.element("y^2*u + 1")
    assert x22.var("x") != x22.var("y")
    loc = catalog.xmn_presentation(1, 1, inverted=["x"])
    u1 = loc.element("y*x^-1")
    assert u1 * loc.var("x") == loc.var("y")


def test_localization_bookkeeping():
    loc = catalog.xmn_presentation(2, 2, inverted=["x", "y"])
    e = loc.element("u*x^-2")
    assert e.denom == (2, 0)
    f = e + loc.element("v*y^-2")
    assert f.denom == (2, 2)
    with pytest.raises(NotAUnitError):
        loc.element("v*u^-1")


def test_unit_ideal_certificate(x22):
    cert = unit_ideal_test(x22, ["x", "y"])
    assert cert.ok
    expanded = cert.expand([pp("x"), pp("y")], x22.relations)
    assert expanded == Poly.const(1)
    plain = AlgebraPresentation(["x", "y"])
    assert not unit_ideal_test(plain, ["x"]).ok


def test_unit_ideal_rejects_localized_elements():
    loc = catalog.xmn_presentation(2, 2, inverted=["x"])
    with pytest.raises(ValueError):
        unit_ideal_test(loc, [loc.element("u*x^-1")])


def test_smoothness_verdicts(x22):
    assert smoothness_check(x22).verdict == SmoothnessVerdict.SMOOTH_EVERYWHERE
    cusp = AlgebraPresentation(["x", "y"], ["x^2 - y^3"])
    rep = smoothness_check(cusp, puncture=("x", "y"))
    assert rep.verdict == SmoothnessVerdict.SMOOTH_OFF_PUNCTURE
    assert rep.puncture_powers == {"x": 1, "y": 2}
    double = AlgebraPresentation(["x", "y"], ["x^2"])
    assert smoothness_check(double).verdict == SmoothnessVerdict.INCONCLUSIVE


def test_sample_point_solves_relation(x22):
    pt = sample_point(x22, seed=1)
    assert x22.element("x^2*v - y^2*u").evaluate(pt) == 1
    pt2 = sample_point(x22, seed=1)
    assert pt.assignment == pt2.assignment  # deterministic in the seed


def test_sample_point_avoids_inverted_loci():
    loc = catalog.xmn_presentation(1, 1, inverted=["x"])
    for s in range(5):
        assert sample_point(loc, seed=s).assignment["x"] != 0


def test_sample_point_reciprocal_relation():
    uv = AlgebraPresentation(["u", "v"], ["u*v - 1"])
    pt = sample_point(uv, seed=3)
    assert pt.assignment["u"] * pt.assignment["v"] == 1


def test_sample_point_needs_single_relation():
    pres, _ = catalog.zmnk_presentation(1, 1, 1)
    with pytest.raises(SamplingError):
        sample_point(pres, seed=0)


def test_rational_point_validation(x22):
    with pytest.raises(ValueError):
        RationalPoint(x22, {"x": 1, "y": 1, "u": 1, "v": 1})


def test_presentation_text_roundtrip():
    text = "vars: x,y,u,v; invert: x; relations: x^2*v - y^2*u - 1"
    pres = AlgebraPresentation.from_text(text)
    assert AlgebraPresentation.from_text(pres.to_text()) == pres
    # canonical form is stable
    assert AlgebraPresentation.from_text(pres.to_text()).to_text() == pres.to_text()


def test_presentation_validation():
    with pytest.raises(PresentationError):
        AlgebraPresentation(["x", "x"])
    with pytest.raises(PresentationError):
        AlgebraPresentation(["x"], ["0"])
    with pytest.raises(PresentationError):
        AlgebraPresentation(["x"], ["x"], inverted=["x"])  # x is 0 mod (x)


def test_mismatched_presentations():
    a = catalog.xmn_presentation(1, 1)
    b = catalog.xmn_presentation(2, 1)
    with pytest.raises(MismatchedPresentationsError):
        a.var("x") + b.var("x")


def test_simplified_cancels_denominators():
    loc = catalog.xmn_presentation(2, 2, inverted=["x"])
    e = loc.element("x^3*u*x^-2").simplified()
    assert e.denom == (0,)
    assert e == loc.element("x*u")


@settings(max_examples=40, deadline=None)
@given(polys(variables=("x", "y", "u", "v"), max_terms=4, max_deg=2),
       polys(variables=("x", "y", "u", "v"), max_terms=3, max_deg=2))
def test_equality_soundness_on_points(p, q):
    # adding a multiple of the relation never changes equality or values
    pres = catalog.xmn_presentation(2, 2)
    rel = pres.relations[0]
    e1 = pres.element(p)
    e2 = pres.element(p + q * rel)
    assert e1 == e2
    for k in range(5):
        pt = sample_point(pres, seed=97 + k)
        assert e1.evaluate(pt) == e2.evaluate(pt)


def test_equality_soundness_100_points():
    pres = catalog.xmn_presentation(2, 2)
    rel = pres.relations[0]
    e1 = pres.element("x*u + y^2*v")
    e2 = pres.element(pp("x*u + y^2*v") + pp("x*y - 1") * rel)
    assert e1 == e2
    for k in range(100):
        pt = sample_point(pres, seed=4200 + k)
        assert e1.evaluate(pt) == e2.evaluate(pt)


def test_equality_completeness_on_points():
    # unequal elements must be separated by some sample point
    import random
    pres = catalog.xmn_presentation(2, 2)
    rng = random.Random(31)
    from conftest import seeded_poly
    for _ in range(20):
        e1 = pres.element(seeded_poly(rng, pres.variables, 3, 2))
        e2 = pres.element(seeded_poly(rng, pres.variables, 3, 2))
        equal = e1 == e2
        separated = False
        for k in range(100):
            pt = sample_point(pres, seed=9000 + k)
            if e1.evaluate(pt) != e2.evaluate(pt):
                separated = True
                break
        assert equal == (not separated)
