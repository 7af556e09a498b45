import random
from fractions import Fraction

import hypothesis.strategies as st

from gawb.poly import Poly, mono_from_map

COEFFS = st.one_of(
    st.integers(min_value=-9, max_value=9),
    st.fractions(min_value=-9, max_value=9, max_denominator=7),
)


@st.composite
def monomials(draw, variables=("x", "y"), max_deg=4, laurent=False):
    lo = -max_deg if laurent else 0
    exps = {v: draw(st.integers(min_value=lo, max_value=max_deg)) for v in variables}
    return mono_from_map(exps)


@st.composite
def polys(draw, variables=("x", "y"), max_terms=5, max_deg=4, laurent=False):
    n = draw(st.integers(min_value=0, max_value=max_terms))
    p = Poly.zero()
    for _ in range(n):
        m = draw(monomials(variables, max_deg, laurent))
        c = draw(COEFFS)
        p = p + Poly.monomial(m, c)
    return p


def seeded_poly(rng: random.Random, variables=("x", "y"), max_terms=5, max_deg=4,
                laurent=False, nonzero=False):
    """Deterministic random polynomial for the seeded 200-case suites."""
    while True:
        p = Poly.zero()
        for _ in range(rng.randint(0, max_terms)):
            lo = -max_deg if laurent else 0
            exps = {v: rng.randint(lo, max_deg) for v in variables}
            num = rng.randint(-9, 9)
            den = rng.randint(1, 7)
            c = Fraction(num, den) if den > 1 else num
            p = p + Poly.monomial(mono_from_map(exps), c)
        if not nonzero or not p.is_zero():
            return p
