import random

import pytest

from gawb.parse import parse_poly as pp
from gawb.surfaces import (
    CommonZeroError,
    classify_xfg,
    classify_xmn,
    delta_class,
    fiber_class,
    hirzebruch,
    intersect,
    scroll,
    sdm_boundary_class,
    section_u_class,
    section_v_class,
    self_intersection,
)
from gawb.resultant import NonHomogeneousError


def test_hirzebruch_form():
    f2 = hirzebruch(2)
    C, F = f2.divisor(1, 0), fiber_class(f2)
    assert self_intersection(C) == -2
    assert intersect(C, F) == 1
    assert self_intersection(F) == 0
    assert self_intersection(f2.divisor(1, 3)) == 4


def test_scroll_relations():
    s = scroll(3, 1)
    assert intersect(section_v_class(s), section_u_class(s)) == 0
    assert self_intersection(section_u_class(s)) == 2
    assert self_intersection(section_v_class(s)) == -2
    assert self_intersection(delta_class(s)) == 4
    assert section_v_class(scroll(2, 2)) == section_u_class(scroll(2, 2))


def test_delta_equals_both_expressions():
    for m in range(1, 7):
        for n in range(1, m + 1):
            s = scroll(m, n)
            via_v = section_v_class(s) + fiber_class(s).scale(m)
            via_u = section_u_class(s) + fiber_class(s).scale(n)
            assert via_v == via_u == delta_class(s)


def test_sdm_boundary():
    assert sdm_boundary_class(2, 2)[1] == 4
    assert sdm_boundary_class(3, 1)[1] == 4
    assert sdm_boundary_class(1, 1)[1] == 2
    cls, _ = sdm_boundary_class(3, 1)
    assert cls.surface.k == 2 and cls.coeffs == (1, 3)


def test_classify_xmn():
    assert classify_xmn(2, 2, 3, 1).verdict == "IsomorphicByTheorem"
    assert classify_xmn(2, 2, 3, 1).d == 4
    assert classify_xmn(4, 1, 1, 4).verdict == "IsomorphicByTheorem"
    assert classify_xmn(2, 2, 2, 1).verdict == "Inconclusive"
    with pytest.raises(ValueError):
        classify_xmn(0, 1, 1, 1)


def test_classify_symmetries():
    rng = random.Random(5)
    for _ in range(50):
        m, n, p, q = (rng.randint(1, 6) for _ in range(4))
        assert classify_xmn(m, n, p, q).verdict == classify_xmn(p, q, m, n).verdict
        assert classify_xmn(m, n, p, q).verdict == classify_xmn(n, m, q, p).verdict


def test_classify_xfg():
    r = classify_xfg(pp("x^2 + y^2"), pp("y^3"))
    assert (r.m, r.n) == (2, 3)
    assert r.resultant_nonzero
    assert r.delta_square == 5
    assert r.surface.name() == "Scroll(3,2)"
    pure = classify_xfg(pp("x^3"), pp("y^2"))
    assert (pure.m, pure.n) == (3, 2)


def test_classify_xfg_errors():
    with pytest.raises(CommonZeroError):
        classify_xfg(pp("x*y"), pp("x^2"))
    with pytest.raises(NonHomogeneousError):
        classify_xfg(pp("x^2 + y"), pp("y^2"))


def test_bilinearity_and_symmetry():
    rng = random.Random(9)
    for surf in (hirzebruch(0), hirzebruch(3), scroll(4, 2)):
        for _ in range(40):
            a = surf.divisor(rng.randint(-5, 5), rng.randint(-5, 5))
            b = surf.divisor(rng.randint(-5, 5), rng.randint(-5, 5))
            c = surf.divisor(rng.randint(-5, 5), rng.randint(-5, 5))
            assert intersect(a, b) == intersect(b, a)
            assert intersect(a + b, c) == intersect(a, c) + intersect(b, c)
            k = rng.randint(-3, 3)
            assert intersect(a.scale(k), b) == k * intersect(a, b)


def test_class_json():
    cls, _ = sdm_boundary_class(3, 1)
    assert cls.to_json() == {"surface": "F2", "coeffs": [1, 3]}


def test_mismatched_surfaces_rejected():
    with pytest.raises(ValueError):
        intersect(hirzebruch(1).divisor(1, 0), hirzebruch(2).divisor(1, 0))
