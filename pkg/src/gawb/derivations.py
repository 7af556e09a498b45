"""Derivations on presented algebras, their exponentials, and action axioms.

A derivation is given by images of the generators and extended by the Leibniz
rule; on localized elements the quotient rule is applied.  Exponentials of
certified-nilpotent derivations produce substitution maps over the ring
extended by the flow parameter.  ``verify_action`` checks group-action axioms
symbolically; actions compose left-to-right, i.e. acting by g and then by g'
must equal acting by the product g*g' of the declared law.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .poly import Poly
from .quotient import (
    AlgebraPresentation,
    MismatchedPresentationsError,
    PolyLike,
    RingElement,
)


class NotNilpotentWithinBound(RuntimeError):
    def __init__(self, variable: str, bound: int):
        super().__init__(
            f"derivative tower of {variable!r} did not vanish within {bound} iterations"
        )
        self.variable = variable
        self.bound = bound


class Derivation:
    """Images of every generator; extended to the algebra by Leibniz."""

    def __init__(
        self,
        ring: AlgebraPresentation,
        images: Mapping[str, Union[RingElement, PolyLike]],
    ):
        self.ring = ring
        self.images: Dict[str, RingElement] = {}
        missing = set(ring.variables) - set(images)
        if missing:
            raise ValueError(f"no image given for generators {sorted(missing)}")
        extra = set(images) - set(ring.variables)
        if extra:
            raise ValueError(f"images given for unknown variables {sorted(extra)}")
        for v, e in images.items():
            self.images[v] = ring.element(e) if not isinstance(e, RingElement) else ring.lift(e)

    def extend_to(self, ring2: AlgebraPresentation) -> "Derivation":
        """Zero-extend to an enlarged presentation (new variables are constants)."""
        images = {v: ring2.lift(e) for v, e in self.images.items()}
        for v in ring2.variables:
            if v not in images:
                images[v] = ring2.zero()
        return Derivation(ring2, images)

    def apply_poly(self, p: Poly) -> RingElement:
        out = self.ring.zero()
        for v in p.variables():
            img = self.images.get(v)
            if img is None:
                raise ValueError(f"polynomial mentions {v!r} which has no image")
            if img.is_zero():
                continue
            out = out + img * self.ring.element(p.differentiate(v))
        return out

    def apply(self, e: Union[RingElement, PolyLike]) -> RingElement:
        """Leibniz on the representative, quotient rule on the denominator."""
        if not isinstance(e, RingElement):
            e = self.ring.element(e)
        else:
            e = self.ring.lift(e)
        base = self.apply_poly(e.numer)
        if any(e.denom):
            inv_d = self.ring._make(Poly.const(1), e.denom)
            corr = self.ring.zero()
            for i, (f, a) in enumerate(zip(self.ring.inverted, e.denom)):
                if not a:
                    continue
                term = self.apply_poly(f).divide_by_inverted(f)
                corr = corr + a * term
            numer_elem = self.ring._make(e.numer, (0,) * len(e.denom))
            return (base - numer_elem * corr) * inv_d
        return base

    def __repr__(self):
        body = "; ".join(
            f"{v} -> {self.images[v].render()}" for v in self.ring.variables
        )
        return f"Derivation({body!r})"

    def to_text(self) -> str:
        return "der: " + "; ".join(
            f"{v} -> {self.images[v].render()}" for v in self.ring.variables
        )

    @staticmethod
    def from_text(ring: AlgebraPresentation, text: str) -> "Derivation":
        body = text.strip()
        if body.startswith("der:"):
            body = body[len("der:"):]
        images: Dict[str, PolyLike] = {}
        for part in body.split(";"):
            part = part.strip()
            if not part:
                continue
            if "->" not in part:
                raise ValueError(f"malformed derivation entry {part!r}")
            v, img = part.split("->", 1)
            images[v.strip()] = img.strip()
        return Derivation(ring, images)


def descends_to_quotient(d: Derivation) -> bool:
    """True iff every relation is mapped into the relation ideal."""
    return all(d.apply_poly(r).is_zero() for r in d.ring.relations)


@dataclass(frozen=True)
class NilpotencyCertificate:
    indices: Dict[str, int]
    bound: int

    def max_index(self) -> int:
        return max(self.indices.values(), default=0)


def nilpotency_certificate(d: Derivation, bound: int = 64) -> NilpotencyCertificate:
    indices: Dict[str, int] = {}
    for v in d.ring.variables:
        e = d.ring.var(v)
        k = 0
        while not e.is_zero():
            e = d.apply(e)
            k += 1
            if k > bound:
                raise NotNilpotentWithinBound(v, bound)
        indices[v] = k
    return NilpotencyCertificate(indices, bound)


def is_slice(d: Derivation, s: Union[RingElement, PolyLike]) -> bool:
    return d.apply(s) == d.ring.one()


def kernel_member(d: Derivation, e: Union[RingElement, PolyLike]) -> bool:
    return d.apply(e).is_zero()


class ActionMap:
    """Substitution map over the base ring extended by group parameters.

    ``unit_params`` are adjoined as invertible (Laurent) variables; images are
    given for every base generator, and parameters map to themselves.
    """

    def __init__(
        self,
        base: AlgebraPresentation,
        params: Sequence[str],
        images: Mapping[str, RingElement],
        unit_params: Sequence[str] = (),
        ring: Optional[AlgebraPresentation] = None,
    ):
        self.base = base
        self.params = tuple(params)
        self.unit_params = tuple(p for p in self.params if p in set(unit_params))
        self.ring = ring if ring is not None else extend_with_params(
            base, self.params, self.unit_params
        )
        self.images: Dict[str, RingElement] = {}
        missing = set(base.variables) - set(images)
        if missing:
            raise ValueError(f"no image for generators {sorted(missing)}")
        for v in base.variables:
            self.images[v] = self.ring.lift(images[v]) if isinstance(images[v], RingElement) else self.ring.element(images[v])

    def apply_to(self, e: Union[RingElement, PolyLike]) -> RingElement:
        if not isinstance(e, RingElement):
            e = self.ring.element(e)
        else:
            e = self.ring.lift(e)
        return e.substitute(self.images)

    def transport(self, ring2: AlgebraPresentation, rename: Optional[Mapping[str, str]] = None) -> "ActionMap":
        """Re-express this map in another parameter extension of the same base."""
        rename = dict(rename or {})
        name_map = {p: rename.get(p, p) for p in self.params}
        poly_map = {old: Poly.variable(new) for old, new in name_map.items() if old != new}
        new_images: Dict[str, RingElement] = {}
        for v, img in self.images.items():
            numer = img.numer.substitute(poly_map) if poly_map else img.numer
            elem = ring2.element(numer)
            for f, a in zip(img.ring.inverted, img.denom):
                if not a:
                    continue
                f2 = f.substitute(poly_map) if poly_map else f
                elem = elem.divide_by_inverted(f2, a)
            new_images[v] = elem
        return ActionMap(
            self.base,
            [name_map[p] for p in self.params],
            new_images,
            unit_params=[name_map[p] for p in self.unit_params],
            ring=ring2,
        )

    def specialize_params(self, values: Mapping[str, Union[int, Fraction]]) -> "ActionMap":
        remaining = [p for p in self.params if p not in values]
        sub = {p: self.ring.element(Fraction(v)) for p, v in values.items()}
        ring2 = extend_with_params(self.base, remaining, [p for p in self.unit_params if p in remaining])
        images2: Dict[str, RingElement] = {}
        for v, img in self.images.items():
            spec = img.substitute(sub)
            elem = ring2.element(spec.numer)
            for f, a in zip(self.ring.inverted, spec.denom):
                if not a:
                    continue
                elem = elem.divide_by_inverted(f, a)
            images2[v] = elem
        return ActionMap(self.base, remaining, images2,
                         unit_params=[p for p in self.unit_params if p in remaining], ring=ring2)

    def is_identity(self) -> bool:
        return all(self.images[v] == self.ring.var(v) for v in self.base.variables)

    def __repr__(self):
        body = "; ".join(f"{v} -> {self.images[v].render()}" for v in self.base.variables)
        return f"ActionMap(params={self.params}, {body!r})"


def extend_with_params(
    base: AlgebraPresentation, params: Sequence[str], unit_params: Sequence[str] = ()
) -> AlgebraPresentation:
    units = [p for p in params if p in set(unit_params)]
    return base.extend(list(params), extra_inverted=[Poly.variable(p) for p in units])


def exponential(d: Derivation, t: str = "t", bound: int = 64) -> ActionMap:
    """exp(t*d) as a substitution map; requires a nilpotency certificate."""
    cert = nilpotency_certificate(d, bound)
    ext = extend_with_params(d.ring, [t])
    tvar = ext.var(t)
    images: Dict[str, RingElement] = {}
    for v in d.ring.variables:
        term = d.ring.var(v)
        total = ext.lift(term)
        tk = ext.one()
        for k in range(1, cert.indices[v]):
            term = d.apply(term)
            tk = tk * tvar
            total = total + ext.lift(term) * tk * Fraction(1, math.factorial(k))
        images[v] = total
    return ActionMap(d.ring, [t], images)


def compose_actions(first: "ActionMap", second: "ActionMap") -> Dict[str, RingElement]:
    """Images of 'act by first, then by second' (both over the same ring)."""
    if first.ring != second.ring:
        raise MismatchedPresentationsError("actions must be transported to a common ring")
    base_map = {v: first.images[v] for v in first.base.variables}
    return {v: second.images[v].substitute(base_map) for v in second.base.variables}


@dataclass(frozen=True)
class GroupLaw:
    kind: str  # "additive" | "multiplicative" | "semidirect"
    twist: Optional[int] = None

    @staticmethod
    def additive() -> "GroupLaw":
        return GroupLaw("additive")

    @staticmethod
    def multiplicative() -> "GroupLaw":
        return GroupLaw("multiplicative")

    @staticmethod
    def semidirect(d: int) -> "GroupLaw":
        return GroupLaw("semidirect", d)


@dataclass
class ActionCheck:
    name: str
    passed: bool
    residuals: Dict[str, str] = field(default_factory=dict)


@dataclass
class ActionReport:
    law: GroupLaw
    checks: List[ActionCheck]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> List[ActionCheck]:
        return [c for c in self.checks if not c.passed]


def _residuals(pairs: Mapping[str, Tuple[RingElement, RingElement]]) -> Dict[str, str]:
    out = {}
    for g, (lhs, rhs) in pairs.items():
        if lhs != rhs:
            out[g] = (lhs - rhs).render()
    return out


def verify_action(action: ActionMap, law: GroupLaw) -> ActionReport:
    """Symbolic identity, relation-preservation, composition, and (for the
    semidirect law) twist checks.  Per-generator residuals are reported
    instead of failing fast.
    """
    checks: List[ActionCheck] = []
    base = action.base

    if law.kind == "additive":
        if len(action.params) != 1:
            raise ValueError("additive law expects a single translation parameter")
        identity_values = {action.params[0]: 0}
    elif law.kind == "multiplicative":
        if len(action.params) != 1 or action.params[0] not in action.unit_params:
            raise ValueError("multiplicative law expects a single invertible parameter")
        identity_values = {action.params[0]: 1}
    elif law.kind == "semidirect":
        if law.twist is None:
            raise ValueError("semidirect law needs a twist exponent")
        if len(action.params) != 2 or action.params[0] not in action.unit_params:
            raise ValueError("semidirect law expects parameters (scale, translation)")
        identity_values = {action.params[0]: 1, action.params[1]: 0}
    else:
        raise ValueError(f"unknown law {law.kind!r}")

    ident = action.specialize_params(identity_values)
    pairs = {
        v: (ident.images[v], ident.ring.var(v)) for v in base.variables
    }
    res = _residuals(pairs)
    checks.append(ActionCheck("identity", not res, res))

    rel_res: Dict[str, str] = {}
    for i, r in enumerate(base.relations):
        img = _apply_images_to_poly(r, action.images, action.ring)
        if not img.is_zero():
            rel_res[f"relation[{i}]"] = img.render()
    checks.append(ActionCheck("relations-preserved", not rel_res, rel_res))

    params1 = action.params
    params2 = tuple(f"{p}_2" for p in params1)
    ring_both = extend_with_params(
        base, params1 + params2, action.unit_params + tuple(f"{p}_2" for p in action.unit_params)
    )
    a1 = action.transport(ring_both)
    a2 = action.transport(ring_both, rename={p: q for p, q in zip(params1, params2)})
    composed = compose_actions(a1, a2)

    if law.kind == "additive":
        product = {params1[0]: ring_both.var(params1[0]) + ring_both.var(params2[0])}
    elif law.kind == "multiplicative":
        product = {params1[0]: ring_both.var(params1[0]) * ring_both.var(params2[0])}
    else:
        lam1, t1 = (ring_both.var(p) for p in params1)
        lam2, t2 = (ring_both.var(p) for p in params2)
        product = {
            params1[0]: lam1 * lam2,
            params1[1]: t1 + lam1 ** law.twist * t2,
        }
    target = {v: a1.images[v].substitute(product) for v in base.variables}
    res = _residuals({v: (composed[v], target[v]) for v in base.variables})
    checks.append(ActionCheck("composition", not res, res))

    if law.kind == "semidirect":
        lam_name, t_name = params1
        scale_part = action.specialize_params({t_name: 0})
        trans_part = action.specialize_params({lam_name: 1})
        ring_twist = extend_with_params(base, [lam_name, t_name], [lam_name])
        s_map = scale_part.transport(ring_twist)
        e_map = trans_part.transport(ring_twist)
        lhs = compose_actions(e_map, s_map)  # translate, then scale
        lam = ring_twist.var(lam_name)
        twisted_t = lam.unit_inverse() ** law.twist * ring_twist.var(t_name)
        e_twisted_images = {
            v: e_map.images[v].substitute({t_name: twisted_t}) for v in base.variables
        }
        e_twisted = ActionMap(base, [lam_name, t_name], e_twisted_images,
                              unit_params=[lam_name], ring=ring_twist)
        rhs = compose_actions(s_map, e_twisted)  # scale, then twisted translate
        res = _residuals({v: (lhs[v], rhs[v]) for v in base.variables})
        checks.append(ActionCheck("twist-identity", not res, res))

    return ActionReport(law, checks)


def _apply_images_to_poly(
    p: Poly, images: Mapping[str, RingElement], ring: AlgebraPresentation
) -> RingElement:
    """Formal substitution of images into a raw polynomial (no pre-reduction)."""
    out = ring.zero()
    for m, c in p.terms.items():
        acc = ring.element(Poly.const(c))
        for v, e in m:
            img = images.get(v)
            if img is None:
                img = ring.var(v)
            acc = acc * img ** e
        out = out + acc
    return out
