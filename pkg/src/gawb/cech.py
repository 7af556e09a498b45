"""Cech 1-cocycle algebra for the two-chart cover of the punctured plane.

A Laurent polynomial in the chart variables is a 1-cocycle for the cover
{x != 0}, {y != 0}.  Its cohomology class is the projection onto the span of
x^-i y^-j with i, j >= 1: every other monomial is regular on one of the two
charts and hence a coboundary.  Nontrivial classes have a unique normal form
p(x, y) * x^-m y^-n with deg_x p < m, deg_y p < n, and each of these
determines a hypersurface total space together with an affineness
certificate computed by the Case 1 / Case 2 transform recursion.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from . import catalog, groebner
from .derivations import Derivation
from .parse import parse_poly
from .poly import Coeff, Poly, TermOrder, mono, mono_from_map
from .quotient import (
    AlgebraPresentation,
    RingElement,
    UnitCertificate,
    unit_ideal_test,
)


@dataclass(frozen=True)
class CocycleClass:
    """Class in H^1 of the punctured plane: coefficients on x^-i y^-j, i,j >= 1."""

    coefficients: Tuple[Tuple[Tuple[int, int], Coeff], ...]

    @staticmethod
    def from_dict(d: Dict[Tuple[int, int], Coeff]) -> "CocycleClass":
        items = tuple(sorted((ij, c) for ij, c in d.items() if c))
        for (i, j), _ in items:
            if i < 1 or j < 1:
                raise ValueError("class indices must satisfy i, j >= 1")
        return CocycleClass(items)

    def as_dict(self) -> Dict[Tuple[int, int], Coeff]:
        return dict(self.coefficients)

    def is_trivial(self) -> bool:
        return not self.coefficients

    def __add__(self, other: "CocycleClass") -> "CocycleClass":
        d = self.as_dict()
        for ij, c in other.coefficients:
            d[ij] = d.get(ij, 0) + c
        return CocycleClass.from_dict(d)

    def scale(self, c: Coeff) -> "CocycleClass":
        return CocycleClass.from_dict({ij: c * k for ij, k in self.coefficients})

    def to_json(self) -> dict:
        return {
            "terms": [
                {"i": i, "j": j, "c": str(c)} for (i, j), c in self.coefficients
            ]
        }

    @staticmethod
    def from_json(data: dict) -> "CocycleClass":
        d: Dict[Tuple[int, int], Coeff] = {}
        for t in data.get("terms", []):
            d[(int(t["i"]), int(t["j"]))] = Fraction(t["c"])
        return CocycleClass.from_dict(d)


def _check_chart_support(g: Poly, x: str, y: str):
    extra = g.variables() - {x, y}
    if extra:
        raise ValueError(f"cocycle mentions non-chart variables {sorted(extra)}")


def class_of(g: Poly, x: str = "x", y: str = "y") -> CocycleClass:
    """Project onto the doubly-negative part: the H^1 class of the cocycle."""
    _check_chart_support(g, x, y)
    d: Dict[Tuple[int, int], Coeff] = {}
    for m, c in g.terms.items():
        e = dict(m)
        ex, ey = e.get(x, 0), e.get(y, 0)
        if ex < 0 and ey < 0:
            d[(-ex, -ey)] = c
    return CocycleClass.from_dict(d)


def is_coboundary(g: Poly, x: str = "x", y: str = "y") -> Tuple[bool, Optional[Tuple[Poly, Poly]]]:
    """Trivial-class test with a 0-cochain witness g = g_plus - g_minus.

    g_plus is regular on the chart {x != 0} (no negative powers of y) and
    g_minus on {y != 0}; the witness exists exactly when the class vanishes.
    """
    _check_chart_support(g, x, y)
    if not class_of(g, x, y).is_trivial():
        return False, None
    plus: Dict = {}
    minus: Dict = {}
    for m, c in g.terms.items():
        e = dict(m)
        if e.get(y, 0) >= 0:
            plus[m] = c
        else:
            minus[m] = -c
    g_plus, g_minus = Poly(plus), Poly(minus)
    assert g_plus - g_minus == g
    return True, (g_plus, g_minus)


@dataclass(frozen=True)
class NormalFormMNP:
    """Cocycle normal form p(x,y) x^-m y^-n with deg_x p < m, deg_y p < n."""

    m: int
    n: int
    p: Poly

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError("m, n must be >= 1")
        if self.p.is_zero():
            raise ValueError("p must be nonzero")
        if not self.p.is_regular():
            raise ValueError("p must be a regular polynomial")
        extra = self.p.variables() - {"x", "y"}
        if extra:
            raise ValueError(f"p mentions {sorted(extra)}")
        if self.p.degree_in("x") >= self.m or self.p.degree_in("y") >= self.n:
            raise ValueError("normal form requires deg_x p < m and deg_y p < n")

    def cocycle(self) -> Poly:
        return self.p.mul_monomial(mono(x=-self.m, y=-self.n))


def normal_form_mnp(c: CocycleClass) -> NormalFormMNP:
    """m = max i, n = max j over the support; p collects the shifted terms."""
    if c.is_trivial():
        raise ValueError("the trivial class has no (m, n, p) normal form")
    m = max(i for (i, _), _ in c.coefficients)
    n = max(j for (_, j), _ in c.coefficients)
    terms: Dict = {}
    for (i, j), coeff in c.coefficients:
        terms[mono(x=m - i, y=n - j)] = coeff
    return NormalFormMNP(m, n, Poly(terms))


def bundle_from_cocycle(nf: NormalFormMNP) -> Tuple[AlgebraPresentation, Derivation]:
    """Total-space presentation x^m v - y^n u - p plus its translation derivation."""
    pres = catalog.xmnp_presentation(nf.m, nf.n, nf.p)
    return pres, catalog.translation_derivation(pres, nf.m, nf.n)


# -- affineness certificates --------------------------------------------------


@dataclass(frozen=True)
class Case1Step:
    a: int
    q0: Poly
    fiber_var: str
    relation: Poly
    witness_numer: Poly  # witness = witness_numer / y
    witness_power: int   # least k with witness * x^k in the coordinate ring

    def presentation(self) -> AlgebraPresentation:
        return AlgebraPresentation(("x", "y", "u", self.fiber_var), [self.relation])


@dataclass(frozen=True)
class Case2Step:
    b: int
    new_n: int
    new_p: Poly
    old_fiber_var: str
    new_fiber_var: str   # substitution: old = y^b * new
    relation: Poly

    def presentation(self) -> AlgebraPresentation:
        return AlgebraPresentation(("x", "y", "u", self.new_fiber_var), [self.relation])


@dataclass(frozen=True)
class AffinenessCertificate:
    m: int
    n: int
    p: Poly
    trace: Tuple[Union[Case1Step, Case2Step], ...]
    outcome: str                 # "HypersurfaceInA4" | "UnitCertificate"
    q0: Optional[Poly] = None

    @property
    def steps(self) -> int:
        return len(self.trace)


class CertificateError(RuntimeError):
    pass


_ORDER_CACHE: Dict[str, TermOrder] = {}


def _fiber_order(fiber: str) -> TermOrder:
    o = _ORDER_CACHE.get(fiber)
    if o is None:
        o = TermOrder("degrevlex", ("x", "y", "u", fiber))
        _ORDER_CACHE[fiber] = o
    return o


_Y = Poly.variable("y")
_X = Poly.variable("x")


def _hypersurface_relation(m: int, n: int, p: Poly, fiber: str) -> Poly:
    terms = dict(p.terms)
    neg = {mo: -c for mo, c in terms.items()}
    neg[mono_from_map({"x": m, fiber: 1})] = 1
    neg[mono_from_map({"y": n, "u": 1})] = -1
    return Poly(neg)


def _split_y(p: Poly) -> Tuple[int, Poly]:
    """p = y^b * p' with p' having a nonzero y-free part; returns (b, p')."""
    b = p.min_exponent("y")
    if b == 0:
        return 0, p
    return b, p.mul_monomial(mono(y=-b))


def _y_free_part(p: Poly) -> Poly:
    return Poly({m: c for m, c in p.terms.items() if dict(m).get("y", 0) == 0})


def affineness_certificate(nf: NormalFormMNP, verify: bool = True) -> AffinenessCertificate:
    """Run the Case 1 / Case 2 transform recursion for X(m, n, p).

    Case 2 strips the full power y^b from p (replacing the fiber coordinate v
    by w = v / y^b and n by n - b); Case 1 writes the y-free part of p as
    x^a q0 with q0(0) != 0 and terminates with the unit certificate, recording
    the transform witness (x^(m-a) * fiber - q0) / y together with the least
    power k such that witness * x^k lies in the coordinate ring (checked by
    ideal membership against (y) + (relation)).
    """
    m, n, p = nf.m, nf.n, nf.p

    p00 = p.coeff_of(())
    if p00 != 0:
        return AffinenessCertificate(m, n, p, (), "HypersurfaceInA4")

    trace: List[Union[Case1Step, Case2Step]] = []
    fiber = "v"
    cur_n, cur_p = n, p
    max_steps = p.degree_in("y") + 1
    fresh = 0

    while True:
        if len(trace) >= max_steps:
            raise CertificateError("recursion exceeded its termination bound")
        p0 = _y_free_part(cur_p)
        if p0.is_zero():
            # Case 2: strip y^b
            b, new_p = _split_y(cur_p)
            if b < 1 or b >= cur_n:
                raise CertificateError("invalid Case 2 shape")
            new_fiber = "w" if fresh == 0 else f"w{fresh}"
            fresh += 1
            cur_n -= b
            cur_p = new_p
            relation = _hypersurface_relation(m, cur_n, cur_p, new_fiber)
            trace.append(
                Case2Step(
                    b=b, new_n=cur_n, new_p=cur_p,
                    old_fiber_var=fiber, new_fiber_var=new_fiber,
                    relation=relation,
                )
            )
            fiber = new_fiber
            continue
        # Case 1: p0 = x^a q0, q0(0) != 0
        a = p0.min_exponent("x")
        q0 = p0.mul_monomial(mono(x=-a)) if a else p0
        if q0.coeff_of(()) == 0:
            raise CertificateError("internal error: q0(0) = 0 after multiplicity split")
        relation = _hypersurface_relation(m, cur_n, cur_p, fiber)
        witness = Poly.monomial(mono_from_map({"x": m - a, fiber: 1})) - q0
        power = _witness_power(witness, a, relation, fiber, verify)
        trace.append(
            Case1Step(
                a=a, q0=q0, fiber_var=fiber, relation=relation,
                witness_numer=witness, witness_power=power,
            )
        )
        cert = AffinenessCertificate(m, n, p, tuple(trace), "UnitCertificate", q0=q0)
        if verify:
            _check_case1_identity(witness, a, cur_n, cur_p, relation, fiber)
        return cert


def _witness_power(witness: Poly, a: int, relation: Poly, fiber: str, verify: bool) -> int:
    """Least k with (witness / y) * x^k in A, i.e. witness * x^k in (y, relation).

    Only the generator x^k of (x, y)^k needs an ideal-membership check; the
    mixed generators x^i y^(k-i) land in A for syntactic reasons.
    """
    if not verify:
        return a
    order = _fiber_order(fiber)
    # Reduced Groebner basis of (y, relation): y together with the relation's
    # y-free part.  Their leading monomials y and x^m*fiber are coprime, so
    # Buchberger's coprimality criterion certifies the pair as a basis.
    f = Poly({m: c for m, c in relation.terms.items() if dict(m).get("y", 0) == 0})
    basis = (_Y, f)
    w = witness
    for k in range(0, a + 1):
        if groebner.normal_form(w, basis, order, check=False).is_zero():
            return k
        w = w * _X
    raise CertificateError("witness membership scan failed up to k = a")


def _check_case1_identity(witness, a, cur_n, cur_p, relation, fiber):
    """witness * x^a - relation must be divisible by y, on the nose.

    The quotient by y is the chart expression y^(n-1) u + sum_{i>=1} p_i
    y^(i-1), so divisibility witnesses witness * x^a in (y, relation) with
    explicit cofactors."""
    diff = witness.mul_monomial(mono(x=a)) - relation
    if any(dict(m).get("y", 0) < 1 for m in diff.terms):
        raise CertificateError("Case 1 transform identity failed")


# -- cocycle attached to a locally trivial action ------------------------------


class ActionCocycleError(RuntimeError):
    pass


@dataclass
class ActionCocycleReport:
    localized: AlgebraPresentation
    deltas: List[RingElement]
    unit_certificate: UnitCertificate
    fractions: List[RingElement]
    differences: Dict[Tuple[int, int], RingElement]
    invariance_residuals: Dict[Tuple[int, int], str]
    laurent: Dict[Tuple[int, int], Optional[Poly]]
    classes: Dict[Tuple[int, int], Optional[CocycleClass]]

    @property
    def invariant(self) -> bool:
        return not any(self.invariance_residuals.values())


def laurent_from_element(e: RingElement, chart_vars: Sequence[str]) -> Optional[Poly]:
    """Express numer / denominators as a Laurent polynomial in the chart
    variables, when the denominators are powers of single chart variables and
    the numerator only involves chart variables."""
    if e.numer.variables() - set(chart_vars):
        return None
    shift: Dict[str, int] = {}
    scale: Coeff = 1
    for f, a in zip(e.ring.inverted, e.denom):
        if not a:
            continue
        if not f.is_single_term():
            return None
        mo, c = f.single_term()
        if any(v not in chart_vars for v, _ in mo):
            return None
        for v, exp in mo:
            shift[v] = shift.get(v, 0) - a * exp
        if c != 1:
            scale = scale * (Fraction(1) / Fraction(c)) ** a
    out = e.numer.mul_monomial(tuple(sorted((v, s) for v, s in shift.items() if s)), scale)
    return out


def action_cocycle(
    pres: AlgebraPresentation,
    d: Derivation,
    a_list: Sequence[Union[RingElement, Poly, str]],
    chart_vars: Optional[Sequence[str]] = None,
) -> ActionCocycleReport:
    """Build and check the cocycle family a_i/delta(a_i) - a_j/delta(a_j).

    Requires each delta(a_i) to be a nonzero kernel element; the family is
    locally trivializing when the delta(a_i) generate the unit ideal, which is
    certified.  Each pairwise difference is checked to be a delta-invariant of
    the doubly localized ring.
    """
    elems = [pres.element(a) if not isinstance(a, RingElement) else pres.lift(a) for a in a_list]
    deltas = [d.apply(e).simplified() for e in elems]
    for i, de in enumerate(deltas):
        if de.is_zero():
            raise ActionCocycleError(f"delta(a_{i}) = 0")
        if not de.is_regular():
            raise ActionCocycleError(f"delta(a_{i}) has denominators; expected a regular kernel element")
        if not d.apply(de).is_zero():
            raise ActionCocycleError(f"delta(a_{i}) is not in the kernel of delta")
    cert = unit_ideal_test(pres, deltas)
    if not cert.ok:
        raise ActionCocycleError(
            "the delta(a_i) do not generate the unit ideal; this witness set "
            "does not certify local triviality"
        )
    localized = pres.with_inverted([de.numer for de in deltas])
    dloc = Derivation(localized, {v: localized.lift(img) for v, img in d.images.items()})
    fractions = []
    for e, de in zip(elems, deltas):
        fractions.append(localized.lift(e).divide_by_inverted(de.numer))
    differences: Dict[Tuple[int, int], RingElement] = {}
    invariance: Dict[Tuple[int, int], str] = {}
    laurent: Dict[Tuple[int, int], Optional[Poly]] = {}
    classes: Dict[Tuple[int, int], Optional[CocycleClass]] = {}
    for i in range(len(fractions)):
        for j in range(i + 1, len(fractions)):
            g = fractions[i] - fractions[j]
            differences[(i, j)] = g
            resid = dloc.apply(g)
            invariance[(i, j)] = "" if resid.is_zero() else resid.render()
            lp = laurent_from_element(g, chart_vars) if chart_vars else None
            laurent[(i, j)] = lp
            if lp is not None and chart_vars is not None and len(chart_vars) == 2:
                classes[(i, j)] = class_of(lp, chart_vars[0], chart_vars[1])
            else:
                classes[(i, j)] = None
    return ActionCocycleReport(
        localized=localized,
        deltas=deltas,
        unit_certificate=cert,
        fractions=fractions,
        differences=differences,
        invariance_residuals=invariance,
        laurent=laurent,
        classes=classes,
    )


def parse_cocycle(text: str, x: str = "x", y: str = "y") -> Poly:
    return parse_poly(text, (x, y))
