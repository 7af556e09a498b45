"""Multivariate division and a small Buchberger kernel.

Only regular polynomials (nonnegative exponents) are accepted; callers that
need localization must clear denominators first.  The basis returned by
``buchberger`` is the reduced Groebner basis, so normal forms are canonical.
An optional cofactor mode tracks, for every basis element, an exact
representation in terms of the input generators; this is what powers
unit-ideal certificates.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .poly import Mono, Poly, TermOrder, mono_div, mono_divides, mono_lcm, mono_mul

DEFAULT_SPAIR_BUDGET = 20_000


class GroebnerBudgetExceeded(RuntimeError):
    def __init__(self, budget: int):
        super().__init__(f"S-polynomial budget of {budget} exceeded")
        self.budget = budget


def leading_term(p: Poly, order: TermOrder) -> Tuple[Mono, Fraction]:
    if not p.terms:
        raise ValueError("zero polynomial has no leading term")
    key = order.key
    lm = max(p.terms, key=key)
    return lm, p.terms[lm]


def _check_regular(polys: Sequence[Poly]):
    for p in polys:
        if not p.is_regular():
            raise ValueError("Groebner operations require nonnegative exponents; localize explicitly")


def reduce_poly(
    p: Poly, divisors: Sequence[Poly], order: TermOrder
) -> Tuple[List[Poly], Poly]:
    """Full multivariate division: p = sum(q_i * divisors_i) + r.

    No term of r is divisible by any divisor's leading monomial.  The
    quotients make the identity exact, which is checked by callers that need
    certificates.
    """
    _check_regular([p])
    _check_regular(divisors)
    key = order.key
    lead = []
    for d in divisors:
        if d.is_zero():
            lead.append(None)
        else:
            lead.append(leading_term(d, order))
    quotients = [Poly.zero() for _ in divisors]
    remainder: dict = {}
    work = dict(p.terms)
    while work:
        m = max(work, key=key)
        c = work.pop(m)
        for i, lt in enumerate(lead):
            if lt is None:
                continue
            lm, lc = lt
            if mono_divides(lm, m):
                qm = mono_div(m, lm)
                qc = Fraction(c) / Fraction(lc)
                quotients[i] = quotients[i] + Poly.monomial(qm, qc)
                for tm, tc in divisors[i].terms.items():
                    if tm == lm:
                        continue
                    mm = mono_mul(tm, qm)
                    n = work.get(mm, 0) - qc * tc
                    if n:
                        work[mm] = n
                    elif mm in work:
                        del work[mm]
                break
        else:
            remainder[m] = c
    return quotients, Poly(remainder)


def normal_form(p: Poly, basis: Sequence[Poly], order: TermOrder, check: bool = True) -> Poly:
    """Remainder of division by the basis, without quotient bookkeeping."""
    if check:
        _check_regular([p])
        _check_regular(basis)
    key = order.key
    lead = [leading_term(d, order) + (d,) for d in basis if not d.is_zero()]
    remainder: dict = {}
    work = dict(p.terms)
    while work:
        m = max(work, key=key)
        c = work.pop(m)
        for lm, lc, d in lead:
            if mono_divides(lm, m):
                qm = mono_div(m, lm)
                qc = Fraction(c) / Fraction(lc)
                for tm, tc in d.terms.items():
                    if tm == lm:
                        continue
                    mm = mono_mul(tm, qm)
                    n = work.get(mm, 0) - qc * tc
                    if n:
                        work[mm] = n
                    elif mm in work:
                        del work[mm]
                break
        else:
            remainder[m] = c
    return Poly(remainder)


def s_polynomial(f: Poly, g: Poly, order: TermOrder) -> Poly:
    lmf, lcf = leading_term(f, order)
    lmg, lcg = leading_term(g, order)
    l = mono_lcm(lmf, lmg)
    return f.mul_monomial(mono_div(l, lmf), Fraction(1) / Fraction(lcf)) - g.mul_monomial(
        mono_div(l, lmg), Fraction(1) / Fraction(lcg)
    )


class GroebnerBasis:
    """Reduced Groebner basis plus (optionally) cofactors over the inputs."""

    __slots__ = ("polys", "order", "cofactors", "generators")

    def __init__(self, polys, order, cofactors=None, generators=None):
        self.polys = tuple(polys)
        self.order = order
        self.cofactors = cofactors
        self.generators = None if generators is None else tuple(generators)

    def normal_form(self, p: Poly) -> Poly:
        return normal_form(p, self.polys, self.order)

    def contains(self, p: Poly) -> bool:
        return self.normal_form(p).is_zero()

    def is_unit_ideal(self) -> bool:
        return len(self.polys) == 1 and self.polys[0].is_constant() and not self.polys[0].is_zero()


def buchberger(
    gens: Sequence[Poly],
    order: TermOrder,
    budget: int = DEFAULT_SPAIR_BUDGET,
    with_cofactors: bool = False,
) -> GroebnerBasis:
    """Buchberger with normal pair selection and the coprimality criterion."""
    _check_regular(gens)
    gens = [g for g in gens]
    ngens = len(gens)

    basis: List[Poly] = []
    cof: List[List[Poly]] = []

    def unit_cof(i: int) -> List[Poly]:
        return [Poly.const(1) if j == i else Poly.zero() for j in range(ngens)]

    def reduce_with_cof(p: Poly, pc: Optional[List[Poly]]):
        qs, r = reduce_poly(p, basis, order)
        if with_cofactors:
            rc = list(pc)
            for q, bc in zip(qs, cof):
                if q.is_zero():
                    continue
                for j in range(ngens):
                    rc[j] = rc[j] - q * bc[j]
            return r, rc
        return r, None

    for i, g in enumerate(gens):
        if g.is_zero():
            continue
        r, rc = reduce_with_cof(g, unit_cof(i) if with_cofactors else None)
        if not r.is_zero():
            basis.append(r)
            if with_cofactors:
                cof.append(rc)

    pairs = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}
    spent = 0
    key = order.key
    while pairs:
        i, j = min(
            pairs,
            key=lambda ij: (key(mono_lcm(leading_term(basis[ij[0]], order)[0],
                                         leading_term(basis[ij[1]], order)[0])), ij),
        )
        pairs.discard((i, j))
        lmi = leading_term(basis[i], order)[0]
        lmj = leading_term(basis[j], order)[0]
        if mono_lcm(lmi, lmj) == mono_mul(lmi, lmj):
            continue  # coprime leading monomials: S-poly reduces to zero
        spent += 1
        if spent > budget:
            raise GroebnerBudgetExceeded(budget)
        s = s_polynomial(basis[i], basis[j], order)
        if with_cofactors:
            lmf, lcf = leading_term(basis[i], order)
            lmg, lcg = leading_term(basis[j], order)
            l = mono_lcm(lmf, lmg)
            mf = Poly.monomial(mono_div(l, lmf), Fraction(1) / Fraction(lcf))
            mg = Poly.monomial(mono_div(l, lmg), Fraction(1) / Fraction(lcg))
            sc = [mf * a - mg * b for a, b in zip(cof[i], cof[j])]
        else:
            sc = None
        r, rc = reduce_with_cof(s, sc)
        if r.is_zero():
            continue
        new = len(basis)
        basis.append(r)
        if with_cofactors:
            cof.append(rc)
        for k in range(new):
            pairs.add((k, new))

    return _interreduce(basis, cof if with_cofactors else None, order, gens)


def _interreduce(basis, cof, order, gens) -> GroebnerBasis:
    # drop elements whose leading monomial is divisible by another's
    items = list(range(len(basis)))
    keep = []
    lms = [leading_term(b, order)[0] if not b.is_zero() else None for b in basis]
    for i in items:
        if basis[i].is_zero():
            continue
        if any(
            j != i and not basis[j].is_zero() and mono_divides(lms[j], lms[i])
            and not (lms[j] == lms[i] and j > i)
            for j in items
        ):
            continue
        keep.append(i)

    polys = [basis[i] for i in keep]
    cofs = None if cof is None else [cof[i] for i in keep]

    # fully reduce each element against the others, then normalize to monic
    changed = True
    while changed:
        changed = False
        for i in range(len(polys)):
            others = polys[:i] + polys[i + 1:]
            qs, r = reduce_poly(polys[i], others, order)
            if r != polys[i]:
                changed = True
                if cofs is not None:
                    rc = list(cofs[i])
                    other_cofs = cofs[:i] + cofs[i + 1:]
                    for q, bc in zip(qs, other_cofs):
                        if q.is_zero():
                            continue
                        for j in range(len(rc)):
                            rc[j] = rc[j] - q * bc[j]
                    cofs[i] = rc
                polys[i] = r
        nonzero = [i for i, p in enumerate(polys) if not p.is_zero()]
        polys = [polys[i] for i in nonzero]
        if cofs is not None:
            cofs = [cofs[i] for i in nonzero]

    for i in range(len(polys)):
        _, lc = leading_term(polys[i], order)
        if lc != 1:
            inv = Fraction(1) / Fraction(lc)
            polys[i] = polys[i].scale(inv)
            if cofs is not None:
                cofs[i] = [c.scale(inv) for c in cofs[i]]

    idx = sorted(range(len(polys)), key=lambda i: order.key(leading_term(polys[i], order)[0]))
    polys = [polys[i] for i in idx]
    if cofs is not None:
        cofs = [cofs[i] for i in idx]
    return GroebnerBasis(polys, order, cofs, gens)


def ideal_member(p: Poly, basis: GroebnerBasis) -> Tuple[bool, Poly, List[Poly]]:
    """Membership via normal form; returns (member, remainder, quotients)."""
    qs, r = reduce_poly(p, basis.polys, basis.order)
    return r.is_zero(), r, qs
