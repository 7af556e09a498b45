import random
from fractions import Fraction

import pytest

from gawb.p1bundles import (
    GdElement,
    NonMonomialDeterminantError,
    SplittingType,
    TorsorTransition,
    TransitionMatrix2,
    birkhoff_split,
    gd_identity,
    gd_inverse,
    gd_multiply,
    generator_involution_check,
    h0_twist,
    sdm_from_mn,
    splitting_by_h0_scan,
    torsor_class,
    torsor_witness,
    transition_matrix,
    u_poly,
    verify_trivialization,
)
from gawb.poly import Poly, mono


def test_gd_multiplication():
    g = gd_multiply(GdElement(2, 3, 1), GdElement(5, 7, 1))
    assert (g.lam, g.t) == (10, 17)
    assert gd_multiply(gd_identity(3), GdElement(4, 5, 3)) == GdElement(4, 5, 3)


def test_gd_inverse():
    gi = gd_inverse(GdElement(2, 3, 2))
    assert (gi.lam, gi.t) == (Fraction(1, 2), Fraction(-3, 4))
    assert gd_multiply(GdElement(2, 3, 2), gi) == gd_identity(2)


def test_gd_requires_matching_twist():
    with pytest.raises(ValueError):
        gd_multiply(GdElement(1, 0, 2), GdElement(1, 0, 3))


def test_gd_symbolic_axioms():
    lam = [Poly.variable(f"l{i}") for i in (1, 2, 3)]
    ts = [Poly.variable(f"t{i}") for i in (1, 2, 3)]
    for d in range(1, 7):
        g = [GdElement(lam[i], ts[i], d) for i in range(3)]
        assert gd_multiply(gd_multiply(g[0], g[1]), g[2]) == gd_multiply(g[0], gd_multiply(g[1], g[2]))
        inv = gd_inverse(g[0])
        prod = gd_multiply(g[0], inv)
        assert prod.lam == Poly.const(1) and prod.t == Poly.zero()


def test_torsor_class_extraction():
    assert torsor_class(TorsorTransition(4, u_poly("u^2"))).coefficients == (0, 1, 0)
    assert torsor_class(TorsorTransition(4, u_poly("1 + u^4"))).coefficients == (0, 0, 0)
    assert torsor_class(TorsorTransition(2, u_poly("u"))).coefficients == (1,)


def test_torsor_witness_reconstruction():
    tt = TorsorTransition(4, u_poly("3 + u^-2 + 5*u^4 + u^6"))
    assert torsor_class(tt).is_trivial()
    s0, s1 = torsor_witness(tt)
    assert u_poly("u^4") * s0 - s1 == tt.phi
    assert s0.is_regular(("u",))


def test_sdm_from_mn():
    for (m, n, phi) in [(2, 2, "u^2"), (3, 1, "u^3"), (1, 1, "u")]:
        sdm = sdm_from_mn(m, n)
        assert sdm.d == m + n
        assert sdm.torsor.phi == u_poly(phi)
        assert sdm.l_multiplier == u_poly("u")
        assert sdm.matrix().entries[0][0] == u_poly(f"u^{m+n}")


def test_h0_examples():
    M = transition_matrix(2, 2)
    assert h0_twist(M, 1)[0] == 0
    dim, basis = h0_twist(M, 2)
    assert dim == 2
    M31 = transition_matrix(3, 1)
    dim3, basis3 = h0_twist(M31, 3)
    assert dim3 >= 1
    Mj = M31.twist(3)
    for g1, g2 in basis3:
        h1 = Mj.entries[0][0] * g1 + Mj.entries[0][1] * g2
        h2 = Mj.entries[1][0] * g1 + Mj.entries[1][1] * g2
        for h in (h1, h2):
            assert all(dict(m).get("u", 0) <= 0 for m in h.terms)


def test_birkhoff_examples():
    assert birkhoff_split(transition_matrix(2, 2)).splitting == SplittingType(-2, -2)
    assert birkhoff_split(transition_matrix(3, 1)).splitting == SplittingType(-1, -3)
    diag = TransitionMatrix2(((u_poly("u^3"), Poly.zero()), (Poly.zero(), u_poly("u^-1"))))
    assert birkhoff_split(diag).splitting == SplittingType(1, -3)


def test_splitting_sum_matches_determinant():
    M = transition_matrix(4, 2)
    fac = birkhoff_split(M)
    assert fac.exponents[0] + fac.exponents[1] == M.det_exponent


def test_non_monomial_determinant_rejected():
    with pytest.raises(NonMonomialDeterminantError):
        TransitionMatrix2(((u_poly("u + 1"), Poly.zero()), (Poly.zero(), u_poly("1"))))


def test_grid_agreement():
    for m in range(1, 6):
        for n in range(1, m + 1):
            M = transition_matrix(m, n)
            b = birkhoff_split(M).splitting
            assert b == splitting_by_h0_scan(M)
            assert (b.a1, b.a2) == (-n, -m)
            assert b.hirzebruch_index == 2 * m - (m + n)


def test_matrix_json_roundtrip():
    M = transition_matrix(3, 2)
    assert TransitionMatrix2.from_json(M.to_json()).entries == M.entries


def test_involution():
    for m, n in [(1, 1), (2, 2), (3, 1), (4, 2)]:
        assert generator_involution_check(m, n)


def test_trivialization_reports():
    for m, n in [(1, 1), (2, 2), (3, 1)]:
        rep = verify_trivialization(m, n, points=20, seed=11)
        assert rep.passed, (m, n, rep.identity_residuals, rep.invariance_residuals)
        assert rep.points_checked == 20 and rep.point_failures == 0


def _random_unit_matrix(rng, regular_in_u=True):
    # product of elementary shears and constant scalings: invertible over
    # C[u] (or C[u^-1]) with constant determinant
    ident = [[Poly.const(1), Poly.zero()], [Poly.zero(), Poly.const(1)]]
    M = ident
    for _ in range(rng.randint(1, 3)):
        f = Poly.zero()
        for _ in range(rng.randint(1, 2)):
            e = rng.randint(0, 3) if regular_in_u else -rng.randint(0, 3)
            f = f + Poly.monomial(mono(u=e) if e else (), rng.randint(-3, 3))
        side = rng.random() < 0.5
        shear = [[Poly.const(1), f if side else Poly.zero()],
                 [Poly.zero() if side else f, Poly.const(1)]]
        M = [[M[i][0] * shear[0][j] + M[i][1] * shear[1][j] for j in range(2)] for i in range(2)]
    c = rng.choice([1, -1, 2, Fraction(1, 2)])
    M[0] = [p.scale(c) for p in M[0]]
    return M


def test_birkhoff_on_random_conjugates():
    # left * diag * right with known exponents must be recovered exactly
    rng = random.Random(20240)
    for _ in range(60):
        e1, e2 = rng.randint(-3, 3), rng.randint(-3, 3)
        L = _random_unit_matrix(rng, regular_in_u=False)
        R = _random_unit_matrix(rng, regular_in_u=True)
        D = [[Poly.monomial(mono(u=e1) if e1 else ()), Poly.zero()],
             [Poly.zero(), Poly.monomial(mono(u=e2) if e2 else ())]]
        prod = L
        for B in (D, R):
            prod = [[prod[i][0] * B[0][j] + prod[i][1] * B[1][j] for j in range(2)] for i in range(2)]
        M = TransitionMatrix2(tuple(tuple(row) for row in prod))
        fac = birkhoff_split(M)
        expected = sorted((-e1, -e2), reverse=True)
        assert (fac.splitting.a1, fac.splitting.a2) == tuple(expected)


def test_torsor_class_linear_in_phi():
    rng = random.Random(77)
    for _ in range(50):
        d = rng.randint(2, 6)
        phi1 = Poly.zero()
        phi2 = Poly.zero()
        for _ in range(4):
            phi1 = phi1 + Poly.monomial(mono(u=rng.randint(-3, d + 3)) or (), rng.randint(-4, 4))
            phi2 = phi2 + Poly.monomial(mono(u=rng.randint(-3, d + 3)) or (), rng.randint(-4, 4))
        c1 = torsor_class(TorsorTransition(d, phi1)).coefficients
        c2 = torsor_class(TorsorTransition(d, phi2)).coefficients
        csum = torsor_class(TorsorTransition(d, phi1 + phi2)).coefficients
        assert csum == tuple(a + b for a, b in zip(c1, c2))


def test_gd_element_validation():
    with pytest.raises(ValueError):
        GdElement(0, 1, 2)
    with pytest.raises(ValueError):
        GdElement(Poly.zero(), Poly.const(1), 2)
    with pytest.raises(ValueError):
        GdElement(1, 0, 0)


def test_splitting_type_sorted():
    with pytest.raises(ValueError):
        SplittingType(-3, -1)


def test_birkhoff_h0_agreement_on_dense_matrices():
    # dense random products: the factorization and the independent h0 scan
    # must agree on every instance of modest exponent spread
    rng = random.Random(990017)
    done = 0
    while done < 10:
        e1, e2 = rng.randint(-2, 2), rng.randint(-2, 2)
        L = _random_unit_matrix(rng, regular_in_u=False)
        R = _random_unit_matrix(rng, regular_in_u=True)
        D = [[Poly.monomial(mono(u=e1) if e1 else ()), Poly.zero()],
             [Poly.zero(), Poly.monomial(mono(u=e2) if e2 else ())]]
        prod = L
        for B in (D, R):
            prod = [[prod[i][0] * B[0][j] + prod[i][1] * B[1][j] for j in range(2)]
                    for i in range(2)]
        M = TransitionMatrix2(tuple(tuple(row) for row in prod))
        if M.exponent_spread() > 7:
            continue
        fac = birkhoff_split(M)
        scan = splitting_by_h0_scan(M)
        assert fac.splitting == scan
        assert (fac.splitting.a1, fac.splitting.a2) == tuple(sorted((-e1, -e2), reverse=True))
        done += 1
