"""Acceptance gate: one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -v` (add -s to see the lines as
they are produced).  Runtime bounds are asserted where the criteria state
them; all arithmetic checks are exact.
"""

import time
import pytest

import test_properties
from gawb import catalog, claims, p1bundles, surfaces, sweeps
from gawb.derivations import (
    GroupLaw,
    descends_to_quotient,
    exponential,
    nilpotency_certificate,
    verify_action,
)
from gawb.parse import parse_poly as pp
from gawb.poly import Poly, mono
from gawb.resultant import binary_resultant
from gawb.surfaces import CommonZeroError

GRID33 = [(m, n) for m in range(1, 4) for n in range(1, 4)]
GRID_HALF5 = [(m, n) for m in range(1, 6) for n in range(1, m + 1)]


def announce(line: str):
    print("\n" + line, flush=True)


def timed(fn):
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def test_criterion_1_derivation_action_suite():
    def body():
        for m, n in GRID33:
            pres, d = catalog.xmn(m, n)
            assert descends_to_quotient(d)
            assert nilpotency_certificate(d).indices == {"u": 2, "v": 2, "x": 1, "y": 1}
            act = exponential(d, "t")
            r = act.ring
            t = r.var("t")
            assert act.images["x"] == r.var("x")
            assert act.images["y"] == r.var("y")
            assert act.images["u"] == r.var("u") + t * r.element(Poly.monomial(mono(x=m)))
            assert act.images["v"] == r.var("v") + t * r.element(Poly.monomial(mono(y=n)))
            assert verify_action(catalog.gm_action(m, n), GroupLaw.multiplicative()).passed
            rep = verify_action(catalog.gd_action(m, n), GroupLaw.semidirect(m + n))
            assert rep.passed
            assert "twist-identity" in {c.name for c in rep.checks}

    elapsed = timed(body)
    assert elapsed < 10.0, f"criterion 1 took {elapsed:.1f}s (budget 10s)"
    announce(f"ACCEPTANCE 1 PASS: derivation/action suite on 3x3 grid in {elapsed:.1f}s")


def test_criterion_2_trivialization_suite():
    for m, n in GRID33:
        rep = p1bundles.verify_trivialization(m, n, points=20, seed=2)
        assert rep.passed, (m, n, rep.identity_residuals, rep.invariance_residuals)
        assert rep.points_checked == 20 and rep.point_failures == 0
    announce("ACCEPTANCE 2 PASS: chart identities verified symbolically and at 20 points per case")


def test_criterion_3_splitting_grid():
    documented = []

    def body():
        for m, n in GRID_HALF5:
            M = p1bundles.transition_matrix(m, n)
            split = p1bundles.birkhoff_split(M).splitting
            scanned = p1bundles.splitting_by_h0_scan(M)
            assert split == scanned
            assert (split.a1, split.a2) == (-n, -m)
            assert split.hirzebruch_index == 2 * m - (m + n)
            h0_m1 = p1bundles.h0_twist(M, m - 1)[0]
            if m > n:
                assert h0_m1 == m - n
                documented.append((m, n, h0_m1))
            else:
                assert h0_m1 == 0

    elapsed = timed(body)
    assert elapsed < 5.0, f"criterion 3 took {elapsed:.1f}s (budget 5s)"
    announce(
        f"ACCEPTANCE 3 PASS: splitting grid dual-method agreement in {elapsed:.1f}s; "
        f"normalization claim fails as documented at {len(documented)} grid points (value m-n)"
    )


def test_criterion_4_intersection_suite():
    for m, n in GRID_HALF5:
        assert surfaces.sdm_boundary_class(m, n)[1] == m + n
        s = surfaces.scroll(m, n)
        assert surfaces.self_intersection(surfaces.delta_class(s)) == m + n
        idx = p1bundles.birkhoff_split(p1bundles.transition_matrix(m, n)).splitting.hirzebruch_index
        assert idx == m - n == 2 * m - (m + n)
    announce("ACCEPTANCE 4 PASS: boundary squares m+n and three-way index consistency, exactly")


def test_criterion_5_affineness_sweep():
    t0 = time.perf_counter()
    summary = sweeps.affineness_sweep(max_m=3, max_n=3)
    elapsed = time.perf_counter() - t0
    expected_total = sum(
        sweeps.count_sweep_polys(m, n)
        for m in range(1, 4) for n in range(1, 4) if m * n > 1
    )
    assert summary.total == expected_total
    assert elapsed < 60.0, f"criterion 5 took {elapsed:.1f}s (budget 60s)"
    announce(
        f"ACCEPTANCE 5 PASS: {summary.total} affineness certificates verified in {elapsed:.1f}s "
        f"(termination, q0(0) != 0, witness membership)"
    )


def test_criterion_6_worked_example():
    only = [
        "example-x22-kernel-a",
        "example-x22-kernel-b",
        "example-x22-delta-section",
        "example-x22-delta-w",
        "example-x22-unit-ideal",
        "example-x22-cocycle-identity",
        "example-x22-cocycle-class",
    ]
    report = claims.run_claims(claims.RunConfig(seed=6, points=20), only=only)
    by_id = {r.claim_id: r for r in report.records}
    # no engine failures: symbolic and point oracles agreed on every claim
    assert all(r.status != claims.FAIL for r in report.records), [
        (r.claim_id, r.actual) for r in report.records if r.status == claims.FAIL
    ]
    assert by_id["example-x22-unit-ideal"].status == claims.PASS
    for cid in ("example-x22-kernel-a", "example-x22-kernel-b",
                "example-x22-delta-section", "example-x22-delta-w",
                "example-x22-cocycle-identity"):
        rec = by_id[cid]
        assert rec.status == claims.DISCREPANCY
        assert "residual" in rec.actual or "-a^3/6" in rec.actual
    assert "-a^3/6" in by_id["example-x22-kernel-a"].actual
    cls = by_id["example-x22-cocycle-class"]
    assert cls.status == claims.DISCREPANCY
    assert "{(3,1): 1}" in cls.actual and "coboundary" in cls.actual
    announce(
        "ACCEPTANCE 6 PASS: worked-example identities computed symbolically and at 20 points; "
        "residuals documented (delta(a) = -a^3/6); class claim resolved for 1/(a^3 b)"
    )


def test_criterion_7_classification_endpoints():
    assert surfaces.classify_xmn(2, 2, 3, 1).verdict == "IsomorphicByTheorem"
    r = surfaces.classify_xfg(pp("x^2 + y^2"), pp("y^3"))
    assert (r.m, r.n) == (2, 3)
    assert binary_resultant(pp("x^2 + y^2"), pp("y^3")) != 0
    with pytest.raises(CommonZeroError) as e:
        surfaces.classify_xfg(pp("x*y"), pp("x^2"))
    assert "zero" in str(e.value)
    announce("ACCEPTANCE 7 PASS: classification endpoints and common-zero diagnosis")


def test_criterion_8_property_suites_and_full_run():
    counts = {
        "ring axioms": test_properties.check_ring_axioms(),
        "groebner idempotence": test_properties.check_groebner_idempotence(),
        "cocycle linearity": test_properties.check_cocycle_linearity(),
        "leibniz": test_properties.check_leibniz(),
        "exp composition": test_properties.check_exp_composition(),
        "birkhoff validity": test_properties.check_birkhoff_validity(),
    }
    assert all(v >= 200 for v in counts.values())
    t0 = time.perf_counter()
    report = claims.run_claims(claims.RunConfig(seed=42))
    elapsed = time.perf_counter() - t0
    assert report.ok, [r.claim_id for r in report.records if r.status == claims.FAIL]
    assert len(report.records) >= 20
    assert elapsed < 180.0, f"verify-paper took {elapsed:.1f}s (budget 180s)"
    announce(
        f"ACCEPTANCE 8 PASS: six property suites at >= 200 seeded cases each; "
        f"full verify-paper ({len(report.records)} claims) in {elapsed:.1f}s"
    )
