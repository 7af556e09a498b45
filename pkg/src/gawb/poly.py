"""Sparse multivariate Laurent polynomials with exact rational coefficients.

A monomial is a sorted tuple of ``(variable, exponent)`` pairs with nonzero
integer exponents (negative exponents allowed).  A polynomial is a dict from
monomials to nonzero coefficients; coefficients are ``int`` or
``fractions.Fraction`` and all arithmetic is exact.  The zero polynomial has
an empty term dict.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

Coeff = Union[int, Fraction]
Mono = tuple  # tuple[tuple[str, int], ...], sorted by variable name

ONE_MONO: Mono = ()


class LaurentSubstitutionError(ValueError):
    """Raised when a negatively-exponented variable is mapped to a non-unit."""


def mono(**exps: int) -> Mono:
    return mono_from_map(exps)


def mono_from_map(exps: Mapping[str, int]) -> Mono:
    return tuple(sorted((v, e) for v, e in exps.items() if e != 0))


def mono_mul(a: Mono, b: Mono) -> Mono:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        n = d.get(v, 0) + e
        if n:
            d[v] = n
        else:
            del d[v]
    return tuple(sorted(d.items()))


def mono_pow(a: Mono, k: int) -> Mono:
    if k == 0:
        return ONE_MONO
    return tuple((v, e * k) for v, e in a)


def mono_divides(a: Mono, b: Mono) -> bool:
    """Whether a | b as regular monomials (componentwise exponents)."""
    db = dict(b)
    return all(0 < e <= db.get(v, 0) for v, e in a)


def mono_div(a: Mono, b: Mono) -> Mono:
    """a / b; exponents may go negative."""
    return mono_mul(a, tuple((v, -e) for v, e in b))


def mono_lcm(a: Mono, b: Mono) -> Mono:
    d = dict(a)
    for v, e in b:
        d[v] = max(d.get(v, 0), e)
    return tuple(sorted(d.items()))


def mono_degree(m: Mono, variables: Optional[Iterable[str]] = None) -> int:
    if variables is None:
        return sum(e for _, e in m)
    vs = set(variables)
    return sum(e for v, e in m if v in vs)


def mono_is_regular(m: Mono, variables: Optional[Iterable[str]] = None) -> bool:
    if variables is None:
        return all(e >= 0 for _, e in m)
    vs = set(variables)
    return all(e >= 0 for v, e in m if v in vs)


class TermOrder:
    """Total order on monomials: degrevlex or lex over a variable priority list.

    Earlier variables in the priority list are larger.  The key function is
    usable on Laurent monomials too (for canonical printing); well-foundedness
    only holds on regular monomials.
    """

    __slots__ = ("kind", "variables", "_pos", "_cache")

    def __init__(self, kind: str, variables: Iterable[str]):
        if kind not in ("degrevlex", "lex"):
            raise ValueError(f"unknown term order kind: {kind!r}")
        self.kind = kind
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variables in term order")
        self._pos = {v: i for i, v in enumerate(self.variables)}
        self._cache: dict = {}

    def key(self, m: Mono):
        k = self._cache.get(m)
        if k is None:
            exps = [0] * len(self.variables)
            pos = self._pos
            for v, e in m:
                if v not in pos:
                    raise ValueError(f"variable {v!r} not covered by term order")
                exps[pos[v]] = e
            if self.kind == "lex":
                k = tuple(exps)
            else:
                k = (sum(exps), tuple(-e for e in reversed(exps)))
            self._cache[m] = k
        return k

    def sorted_monos(self, monos: Iterable[Mono], reverse: bool = True):
        return sorted(monos, key=self.key, reverse=reverse)

    def __eq__(self, other):
        return (
            isinstance(other, TermOrder)
            and self.kind == other.kind
            and self.variables == other.variables
        )

    def __hash__(self):
        return hash((self.kind, self.variables))

    def __repr__(self):
        return f"TermOrder({self.kind!r}, {self.variables!r})"


def degrevlex(*variables: str) -> TermOrder:
    return TermOrder("degrevlex", variables)


def lex(*variables: str) -> TermOrder:
    return TermOrder("lex", variables)


class Poly:
    """Immutable-by-convention sparse polynomial.  Do not mutate ``terms``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Mono, Coeff]] = None):
        d = {}
        if terms:
            for m, c in terms.items():
                if c:
                    d[m] = c
        self.terms = d

    @staticmethod
    def _raw(terms: dict) -> "Poly":
        p = Poly.__new__(Poly)
        p.terms = terms
        return p

    @staticmethod
    def zero() -> "Poly":
        return Poly._raw({})

    @staticmethod
    def const(c: Coeff) -> "Poly":
        return Poly._raw({ONE_MONO: c} if c else {})

    @staticmethod
    def variable(name: str, exp: int = 1) -> "Poly":
        if exp == 0:
            return Poly.const(1)
        return Poly._raw({((name, exp),): 1})

    @staticmethod
    def monomial(m: Mono, c: Coeff = 1) -> "Poly":
        return Poly._raw({m: c} if c else {})

    # -- queries ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and ONE_MONO in self.terms)

    def constant_value(self) -> Coeff:
        if not self.terms:
            return 0
        if len(self.terms) == 1 and ONE_MONO in self.terms:
            return self.terms[ONE_MONO]
        raise ValueError("polynomial is not constant")

    def is_single_term(self) -> bool:
        return len(self.terms) == 1

    def single_term(self) -> tuple[Mono, Coeff]:
        if len(self.terms) != 1:
            raise ValueError("polynomial is not a single term")
        return next(iter(self.terms.items()))

    def variables(self) -> set:
        vs = set()
        for m in self.terms:
            for v, _ in m:
                vs.add(v)
        return vs

    def is_regular(self, variables: Optional[Iterable[str]] = None) -> bool:
        return all(mono_is_regular(m, variables) for m in self.terms)

    def degree(self, variables: Optional[Iterable[str]] = None) -> int:
        """Max total degree over terms (0 for the zero polynomial)."""
        if not self.terms:
            return 0
        return max(mono_degree(m, variables) for m in self.terms)

    def degree_in(self, var: str) -> int:
        deg = 0
        for m in self.terms:
            for v, e in m:
                if v == var and e > deg:
                    deg = e
        return deg

    def min_exponent(self, var: str) -> int:
        """Smallest exponent of var over terms (0 if var absent from a term)."""
        best = None
        for m in self.terms:
            e = dict(m).get(var, 0)
            if best is None or e < best:
                best = e
        return 0 if best is None else best

    def coeff_of(self, m: Mono) -> Coeff:
        return self.terms.get(m, 0)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other) -> "Poly":
        other = _coerce(other)
        if not self.terms:
            return other
        if not other.terms:
            return self
        d = dict(self.terms)
        for m, c in other.terms.items():
            n = d.get(m, 0) + c
            if n:
                d[m] = n
            else:
                del d[m]
        return Poly._raw(d)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "Poly":
        return _coerce(other) + (-self)

    def __mul__(self, other) -> "Poly":
        other = _coerce(other)
        a, b = self.terms, other.terms
        if not a or not b:
            return Poly.zero()
        if len(a) > len(b):
            a, b = b, a
        d: dict = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = mono_mul(m1, m2)
                n = d.get(m, 0) + c1 * c2
                if n:
                    d[m] = n
                elif m in d:
                    del d[m]
        return Poly._raw(d)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if not isinstance(k, int):
            raise TypeError("polynomial power must be an integer")
        if k < 0:
            m, c = self.single_term_or_laurent_error()
            inv = Poly.monomial(mono_pow(m, -1), _invert_coeff(c))
            return inv ** (-k)
        result = Poly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def single_term_or_laurent_error(self) -> tuple[Mono, Coeff]:
        if len(self.terms) != 1:
            raise LaurentSubstitutionError(
                "negative power requires a single-term (unit) polynomial"
            )
        return next(iter(self.terms.items()))

    def scale(self, c: Coeff) -> "Poly":
        if not c:
            return Poly.zero()
        return Poly._raw({m: k * c for m, k in self.terms.items()})

    def mul_monomial(self, m: Mono, c: Coeff = 1) -> "Poly":
        if not c:
            return Poly.zero()
        return Poly._raw({mono_mul(t, m): k * c for t, k in self.terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self):
        return f"Poly({render_poly(self)!r})"

    # -- calculus and structure ----------------------------------------------

    def differentiate(self, var: str) -> "Poly":
        """Formal partial derivative (valid for Laurent exponents too)."""
        d: dict = {}
        for m, c in self.terms.items():
            e = dict(m).get(var, 0)
            if e == 0:
                continue
            nm = mono_mul(m, ((var, -1),))
            n = d.get(nm, 0) + c * e
            if n:
                d[nm] = n
            elif nm in d:
                del d[nm]
        return Poly._raw(d)

    def substitute(self, mapping: Mapping[str, "Poly"]) -> "Poly":
        """Ring-homomorphic substitution.

        A variable occurring with a negative exponent may only be mapped to a
        single-term polynomial (a unit in the Laurent ring).
        """
        out = Poly.zero()
        for m, c in self.terms.items():
            acc = Poly.const(c)
            residual: list = []
            for v, e in m:
                target = mapping.get(v)
                if target is None:
                    residual.append((v, e))
                else:
                    acc = acc * (target ** e)
            if residual:
                acc = acc.mul_monomial(tuple(residual))
            out = out + acc
        return out

    def evaluate(self, assignment: Mapping[str, Coeff]) -> Coeff:
        """Exact evaluation; every variable must be assigned.

        Negative exponents require the assigned value to be nonzero.
        """
        total: Coeff = 0
        for m, c in self.terms.items():
            val: Coeff = c
            for v, e in m:
                if v not in assignment:
                    raise KeyError(f"no value assigned to variable {v!r}")
                x = Fraction(assignment[v])
                if e < 0:
                    if x == 0:
                        raise ZeroDivisionError(f"variable {v!r} is 0 with negative exponent")
                    val *= Fraction(1) / x ** (-e)
                else:
                    val *= x ** e
            total += val
        return total

    def homogeneous_degree(self, variables: Iterable[str]) -> Optional[int]:
        """Common total degree in the given variables, or None if mixed.

        Requires the polynomial to be regular in those variables; the zero
        polynomial has no well-defined degree and yields None.
        """
        vs = tuple(variables)
        if not self.is_regular(vs):
            raise ValueError("polynomial must be regular in the selected variables")
        if not self.terms:
            return None
        degs = {mono_degree(m, vs) for m in self.terms}
        return degs.pop() if len(degs) == 1 else None


def _coerce(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly.const(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to Poly")


def _invert_coeff(c: Coeff) -> Coeff:
    return Fraction(1) / Fraction(c)


def _render_coeff(c: Coeff) -> str:
    return str(c)


def render_mono(m: Mono, priority: Optional[Sequence] = None) -> str:
    if not m:
        return "1"
    factors = list(m)
    if priority is not None:
        pos = {v: i for i, v in enumerate(priority)}
        factors.sort(key=lambda ve: pos.get(ve[0], len(pos)))
    parts = []
    for v, e in factors:
        parts.append(v if e == 1 else f"{v}^{e}")
    return "*".join(parts)


def render_poly(p: Poly, order: Optional[TermOrder] = None) -> str:
    """Canonical text form: terms sorted descending by the term order."""
    if not p.terms:
        return "0"
    if order is None:
        order = TermOrder("degrevlex", sorted(p.variables()))
    parts = []
    for m in order.sorted_monos(p.terms.keys()):
        c = p.terms[m]
        neg = c < 0
        ac = -c if neg else c
        if m == ONE_MONO:
            body = _render_coeff(ac)
        elif ac == 1:
            body = render_mono(m, order.variables)
        else:
            body = f"{_render_coeff(ac)}*{render_mono(m, order.variables)}"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(parts)
