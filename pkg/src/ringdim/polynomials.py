"""Exact multivariate polynomials over a pluggable coefficient field.

A ``PolynomialRing`` pairs a coefficient field object with an ordered tuple
of variable names.  The field object mediates all coefficient arithmetic
(see ``fields`` for the protocol), so this module never assumes a concrete
element type: rationals are ``Fraction``, prime-field elements are canonical
ints, rational functions are reduced numerator/denominator pairs.

Polynomials are immutable values; every operation returns a fresh one.
That is what makes it safe for ideal presentations to cache Groebner bases
and for concurrent evaluations to share structures.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .errors import (
    ArityMismatchError,
    RingMismatchError,
    VariableCapError,
    ZeroPolynomialError,
)
from .orderings import GREVLEX, MonomialOrder, monomial_key

# Ring variables plus coefficient-field variables; the dimension kernel
# enumerates variable subsets, which is exponential in this count.
MAX_TOTAL_VARIABLES = 12


# -- exponent-vector helpers -------------------------------------------------

def monomial_mul(u: tuple[int, ...], v: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(a + b for a, b in zip(u, v))


def monomial_divides(u: tuple[int, ...], v: tuple[int, ...]) -> bool:
    return all(a <= b for a, b in zip(u, v))


def monomial_div(u: tuple[int, ...], v: tuple[int, ...]) -> tuple[int, ...]:
    quotient = tuple(a - b for a, b in zip(u, v))
    if any(e < 0 for e in quotient):
        raise ArityMismatchError(f"monomial {v} does not divide {u}")
    return quotient


def monomial_lcm(u: tuple[int, ...], v: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(max(a, b) for a, b in zip(u, v))


def monomial_degree(u: tuple[int, ...]) -> int:
    return sum(u)


class PolynomialRing:
    """An ordered polynomial ring over a coefficient field.

    Equality is structural: same field, same variable names in the same
    order.  ``unchecked`` skips the variable cap for internally constructed
    helper rings (tag variables, Rabinowitsch variables); user-facing
    constructions keep the cap so subset enumeration stays tractable.
    """

    __slots__ = ("field", "variables", "_index")

    def __init__(self, field, variables: Iterable[str], *, unchecked: bool = False):
        self.field = field
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"duplicate ring variables in {self.variables}")
        function_vars = tuple(getattr(field, "function_variables", ()))
        clash = set(self.variables) & set(function_vars)
        if clash:
            raise ValueError(f"ring variables shadow coefficient-field variables: {sorted(clash)}")
        total = len(self.variables) + len(function_vars)
        if not unchecked and total > MAX_TOTAL_VARIABLES:
            raise VariableCapError(
                f"{total} variables exceed the cap of {MAX_TOTAL_VARIABLES}; "
                "construct with unchecked=True to override"
            )
        self._index = {name: i for i, name in enumerate(self.variables)}

    @property
    def arity(self) -> int:
        return len(self.variables)

    def __eq__(self, other):
        return (
            isinstance(other, PolynomialRing)
            and self.field == other.field
            and self.variables == other.variables
        )

    def __hash__(self):
        return hash((self.field, self.variables))

    def __repr__(self):
        return f"PolynomialRing({self.field!r}, {self.variables!r})"

    def variable_index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(f"{name!r} is not a variable of {self!r}") from None

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(self.field.one)

    def constant(self, c) -> "Polynomial":
        return Polynomial(self, {(0,) * self.arity: c})

    def from_int(self, n: int) -> "Polynomial":
        return self.constant(self.field.from_int(n))

    def variable(self, name_or_index) -> "Polynomial":
        i = name_or_index if isinstance(name_or_index, int) else self.variable_index(name_or_index)
        exps = tuple(1 if j == i else 0 for j in range(self.arity))
        return Polynomial(self, {exps: self.field.one})

    def monomial(self, exps: tuple[int, ...], coeff=None) -> "Polynomial":
        return Polynomial(self, {tuple(exps): self.field.one if coeff is None else coeff})

    def extend(self, extra: Iterable[str]) -> "PolynomialRing":
        return PolynomialRing(self.field, self.variables + tuple(extra), unchecked=True)


class Polynomial:
    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolynomialRing, terms: Mapping[tuple[int, ...], object]):
        is_zero = ring.field.is_zero
        clean = {}
        arity = ring.arity
        for exps, c in terms.items():
            if len(exps) != arity:
                raise ArityMismatchError(f"monomial {exps} has arity {len(exps)}, ring has {arity}")
            if not is_zero(c):
                clean[tuple(exps)] = c
        self.ring = ring
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring: PolynomialRing, terms: dict) -> "Polynomial":
        # fast path: caller guarantees normalized terms of the right arity
        p = object.__new__(cls)
        p.ring = ring
        p.terms = terms
        p._hash = None
        return p

    # -- structure ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(monomial_degree(e) == 0 for e in self.terms)

    def constant_value(self):
        """The coefficient of the unit monomial (field zero if absent)."""
        return self.terms.get((0,) * self.ring.arity, self.ring.field.zero)

    def total_degree(self) -> int:
        if not self.terms:
            raise ZeroPolynomialError("zero polynomial has no degree")
        return max(monomial_degree(e) for e in self.terms)

    def support(self) -> frozenset[int]:
        """Indices of the variables that actually occur."""
        seen = set()
        for exps in self.terms:
            for i, e in enumerate(exps):
                if e:
                    seen.add(i)
        return frozenset(seen)

    def degree_in(self, i: int) -> int:
        return max((exps[i] for exps in self.terms), default=0)

    def leading(self, order: MonomialOrder) -> tuple[tuple[int, ...], object]:
        """Leading (monomial, coefficient) under ``order``."""
        if not self.terms:
            raise ZeroPolynomialError("zero polynomial has no leading term")
        best = None
        for exps in self.terms:
            if best is None or order.compare(exps, best) > 0:
                best = exps
        return best, self.terms[best]

    def coefficient_of(self, i: int, d: int) -> "Polynomial":
        """Coefficient of x_i^d, as a polynomial with x_i cleared."""
        out = {}
        for exps, c in self.terms.items():
            if exps[i] == d:
                cleared = exps[:i] + (0,) + exps[i + 1:]
                out[cleared] = c
        return Polynomial._raw(self.ring, out)

    # -- arithmetic ----------------------------------------------------------

    def _check_ring(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise RingMismatchError(f"operands live in {self.ring!r} and {other.ring!r}")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check_ring(other)
        field = self.ring.field
        out = dict(self.terms)
        for exps, c in other.terms.items():
            if exps in out:
                s = field.add(out[exps], c)
                if field.is_zero(s):
                    del out[exps]
                else:
                    out[exps] = s
            else:
                out[exps] = c
        return Polynomial._raw(self.ring, out)

    def __neg__(self) -> "Polynomial":
        neg = self.ring.field.neg
        return Polynomial._raw(self.ring, {e: neg(c) for e, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check_ring(other)
        field = self.ring.field
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = monomial_mul(e1, e2)
                prod = field.mul(c1, c2)
                if exps in out:
                    s = field.add(out[exps], prod)
                    if field.is_zero(s):
                        del out[exps]
                    else:
                        out[exps] = s
                elif not field.is_zero(prod):
                    out[exps] = prod
        return Polynomial._raw(self.ring, out)

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative polynomial power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        field = self.ring.field
        if field.is_zero(c):
            return self.ring.zero()
        return Polynomial._raw(self.ring, {e: field.mul(c, v) for e, v in self.terms.items()})

    def mul_term(self, coeff, exps: tuple[int, ...]) -> "Polynomial":
        field = self.ring.field
        if field.is_zero(coeff):
            return self.ring.zero()
        return Polynomial._raw(
            self.ring,
            {monomial_mul(e, exps): field.mul(coeff, c) for e, c in self.terms.items()},
        )

    def monic(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        _, lc = self.leading(order)
        if self.ring.field.is_one(lc):
            return self
        return self.scale(self.ring.field.inv(lc))

    def substitute(self, values: Mapping[int, "Polynomial"]) -> "Polynomial":
        """Replace variables by polynomials of the same ring."""
        ring = self.ring
        result = ring.zero()
        for exps, c in self.terms.items():
            factor = ring.constant(c)
            kept = list(exps)
            for i, e in enumerate(exps):
                if e and i in values:
                    kept[i] = 0
                    factor = factor * values[i] ** e
            result = result + factor.mul_term(ring.field.one, tuple(kept))
        return result

    def map_to(self, target: PolynomialRing, var_map: Mapping[int, int], coeff_map=None) -> "Polynomial":
        """Reinterpret in ``target``, sending variable i to var_map[i].

        Every variable actually occurring must be mapped; coefficients pass
        through ``coeff_map`` (identity when the fields agree).
        """
        out: dict = {}
        field = target.field
        for exps, c in self.terms.items():
            new = [0] * target.arity
            for i, e in enumerate(exps):
                if e:
                    if i not in var_map:
                        raise ValueError(f"variable index {i} has no image in target ring")
                    new[var_map[i]] = e
            value = coeff_map(c) if coeff_map else c
            key = tuple(new)
            if key in out:
                value = field.add(out[key], value)
            if field.is_zero(value):
                out.pop(key, None)
            else:
                out[key] = value
        return Polynomial._raw(target, out)

    # -- identity ------------------------------------------------------------

    def sort_key(self):
        """Deterministic total key; used to canonicalize generator lists."""
        key = self.ring.field.element_key
        return tuple(sorted((e, key(c)) for e, c in self.terms.items()))

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            key = self.ring.field.element_key
            self._hash = hash((self.ring, frozenset((e, key(c)) for e, c in self.terms.items())))
        return self._hash

    def __repr__(self):
        return format_polynomial(self)


# -- text form ----------------------------------------------------------------

def format_polynomial(p: Polynomial) -> str:
    """Canonical text: terms in descending grevlex order, `^` powers.

    The output parses back to an equal polynomial, so reports diff cleanly.
    """
    if p.is_zero():
        return "0"
    field = p.ring.field
    names = p.ring.variables
    items = sorted(p.terms.items(), key=lambda item: monomial_key(GREVLEX)(item[0]), reverse=True)
    pieces: list[str] = []
    for exps, c in items:
        negative, body = field.display_split(c)
        factors = []
        for name, e in zip(names, exps):
            if e == 1:
                factors.append(name)
            elif e:
                factors.append(f"{name}^{e}")
        if not factors:
            text = body
        elif field.is_one(c):
            text = "*".join(factors)
        elif negative and field.is_one(field.neg(c)):
            text = "*".join(factors)
        else:
            text = body + "*" + "*".join(factors)
        if not pieces:
            pieces.append(f"-{text}" if negative else text)
        else:
            pieces.append(f"- {text}" if negative else f"+ {text}")
    return " ".join(pieces)


# -- division and gcd ----------------------------------------------------------

def exact_divide(p: Polynomial, q: Polynomial) -> Polynomial | None:
    """Quotient p/q when q divides p exactly, else None."""
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return p
    p._check_ring(q)
    field = p.ring.field
    lq, cq = q.leading(GREVLEX)
    quotient: dict = {}
    rest = p
    while rest:
        lr, cr = rest.leading(GREVLEX)
        if not monomial_divides(lq, lr):
            return None
        exps = monomial_div(lr, lq)
        coeff = field.div(cr, cq)
        quotient[exps] = coeff
        rest = rest - q.mul_term(coeff, exps)
    return Polynomial._raw(p.ring, quotient)


def _content(p: Polynomial, i: int) -> Polynomial:
    parts = [p.coefficient_of(i, d) for d in range(p.degree_in(i) + 1)]
    parts = [q for q in parts if not q.is_zero()]
    g = parts[0]
    for q in parts[1:]:
        g = polynomial_gcd(g, q)
    return g


def _pseudo_rem(f: Polynomial, g: Polynomial, i: int) -> Polynomial:
    n = g.degree_in(i)
    lc_g = g.coefficient_of(i, n)
    rest = f
    while not rest.is_zero() and rest.degree_in(i) >= n:
        d = rest.degree_in(i)
        lc_r = rest.coefficient_of(i, d)
        shift = tuple(d - n if j == i else 0 for j in range(f.ring.arity))
        rest = rest * lc_g - (lc_r * g).mul_term(f.ring.field.one, shift)
    return rest


def polynomial_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Multivariate gcd over a field, by primitive pseudo-remainder sequences.

    The result is monic under grevlex, so it is canonical.  Only what
    rational-function normalization needs: operands stay small here.
    """
    if f.is_zero() and g.is_zero():
        return f
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    f._check_ring(g)
    occurring = f.support() | g.support()
    if not occurring:
        return f.ring.one()
    i = max(occurring)
    if f.degree_in(i) < g.degree_in(i):
        f, g = g, f
    cf, cg = _content(f, i), _content(g, i)
    content = polynomial_gcd(cf, cg)
    a = exact_divide(f, cf)
    b = exact_divide(g, cg)
    while not b.is_zero() and b.degree_in(i) > 0:
        r = _pseudo_rem(a, b, i)
        if r.is_zero():
            prim = exact_divide(b, _content(b, i))
            return (content * prim).monic()
        a, b = b, exact_divide(r, _content(r, i))
    if b.is_zero():
        prim = exact_divide(a, _content(a, i))
        return (content * prim).monic()
    # remainder dropped to degree 0 in x_i: the primitive parts are coprime
    return content.monic()
