"""Coefficient fields: the rationals, prime fields, and one transcendental
layer of rational functions over either.

Element representations are deliberately plain: ``Fraction`` for Q, canonical
ints in [0, p) for F_p, and gcd-reduced numerator/denominator polynomial
pairs for rational function fields.  Field objects mediate all arithmetic so
the polynomial layer never needs to know which representation it is holding.

Every field object provides:
    zero, one, characteristic, function_variables
    from_int, add, sub, mul, neg, inv, div, is_zero, is_one
    element_key      -- hashable/sortable canonical key
    display_split    -- (is_negative, unsigned text) for the printer
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import TowerDepthError
from .orderings import GREVLEX
from .polynomials import Polynomial, PolynomialRing, format_polynomial, exact_divide, polynomial_gcd


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class RationalField:
    """The field Q, with Fraction elements."""

    characteristic = 0
    function_variables: tuple[str, ...] = ()

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def from_int(self, n: int):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in Q")
        return 1 / a

    def div(self, a, b):
        return a / b

    def is_zero(self, a) -> bool:
        return a == 0

    def is_one(self, a) -> bool:
        return a == 1

    def element_key(self, a):
        return ("q", a)

    def display_split(self, a) -> tuple[bool, str]:
        return a < 0, str(abs(a))

    def __repr__(self):
        return "Q"


QQ = RationalField()


@dataclass(frozen=True)
class PrimeField:
    """F_p for prime p; elements are canonical ints in [0, p)."""

    p: int
    function_variables: tuple[str, ...] = ()

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def from_int(self, n: int):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverse of zero in F_{self.p}")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def is_one(self, a) -> bool:
        return a % self.p == 1

    def element_key(self, a):
        return ("fp", a % self.p)

    def display_split(self, a) -> tuple[bool, str]:
        return False, str(a % self.p)

    def __repr__(self):
        return f"Fp({self.p})"


def normalize_rational_function(num: Polynomial, den: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Canonical form of num/den: gcd-reduced, denominator monic (grevlex).

    Canonicality makes rational-function equality a syntactic check, and the
    reduction after every operation keeps Groebner runs over function fields
    from drowning in coefficient growth.
    """
    if den.is_zero():
        raise ZeroDivisionError("rational function with zero denominator")
    if num.is_zero():
        return num.ring.zero(), num.ring.one()
    g = polynomial_gcd(num, den)
    if not g.is_constant():
        num = exact_divide(num, g)
        den = exact_divide(den, g)
    _, lc = den.leading(GREVLEX)
    field = den.ring.field
    if not field.is_one(lc):
        inv = field.inv(lc)
        num = num.scale(inv)
        den = den.scale(inv)
    return num, den


class RatFunc:
    """A reduced fraction of polynomials in the function-field variables."""

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial):
        self.num, self.den = normalize_rational_function(num, den)

    @classmethod
    def _reduced(cls, num: Polynomial, den: Polynomial) -> "RatFunc":
        r = object.__new__(cls)
        r.num, r.den = num, den
        return r

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def __eq__(self, other):
        return isinstance(other, RatFunc) and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if self.den == self.den.ring.one():
            return f"({format_polynomial(self.num)})"
        return f"({format_polynomial(self.num)})/({format_polynomial(self.den)})"


@dataclass(frozen=True)
class RationalFunctionField:
    """K(t_1, .., t_m) for K in {Q, F_p}: a single transcendental layer.

    Stacking a function field on a function field is rejected; a tower
    K(u)(v) is always represented flattened as K(u, v).
    """

    base: RationalField | PrimeField
    variables: tuple[str, ...]

    def __post_init__(self):
        if isinstance(self.base, RationalFunctionField):
            raise TowerDepthError("rational function fields cannot be nested; merge the variables")
        if not isinstance(self.base, (RationalField, PrimeField)):
            raise TypeError(f"unsupported base field {self.base!r}")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"duplicate function-field variables {self.variables}")
        if not self.variables:
            raise ValueError("a rational function field needs at least one variable")

    @property
    def characteristic(self) -> int:
        return self.base.characteristic

    @property
    def function_variables(self) -> tuple[str, ...]:
        return self.variables

    @property
    def poly_ring(self) -> PolynomialRing:
        return PolynomialRing(self.base, self.variables, unchecked=True)

    @property
    def zero(self) -> RatFunc:
        ring = self.poly_ring
        return RatFunc._reduced(ring.zero(), ring.one())

    @property
    def one(self) -> RatFunc:
        ring = self.poly_ring
        return RatFunc._reduced(ring.one(), ring.one())

    def from_int(self, n: int) -> RatFunc:
        ring = self.poly_ring
        return RatFunc._reduced(ring.from_int(n), ring.one())

    def from_base(self, c) -> RatFunc:
        ring = self.poly_ring
        return RatFunc._reduced(ring.constant(c), ring.one())

    def from_polynomial(self, num: Polynomial, den: Polynomial | None = None) -> RatFunc:
        return RatFunc(num, den if den is not None else num.ring.one())

    def generator(self, name: str) -> RatFunc:
        ring = self.poly_ring
        return RatFunc._reduced(ring.variable(name), ring.one())

    def add(self, a: RatFunc, b: RatFunc) -> RatFunc:
        return RatFunc(a.num * b.den + b.num * a.den, a.den * b.den)

    def sub(self, a: RatFunc, b: RatFunc) -> RatFunc:
        return RatFunc(a.num * b.den - b.num * a.den, a.den * b.den)

    def mul(self, a: RatFunc, b: RatFunc) -> RatFunc:
        return RatFunc(a.num * b.num, a.den * b.den)

    def neg(self, a: RatFunc) -> RatFunc:
        return RatFunc._reduced(-a.num, a.den)

    def inv(self, a: RatFunc) -> RatFunc:
        if a.num.is_zero():
            raise ZeroDivisionError(f"inverse of zero in {self!r}")
        return RatFunc(a.den, a.num)

    def div(self, a: RatFunc, b: RatFunc) -> RatFunc:
        return self.mul(a, self.inv(b))

    def is_zero(self, a: RatFunc) -> bool:
        return a.num.is_zero()

    def is_one(self, a: RatFunc) -> bool:
        return a.num == a.num.ring.one() and a.den == a.den.ring.one()

    def element_key(self, a: RatFunc):
        return ("rf", a.num.sort_key(), a.den.sort_key())

    def display_split(self, a: RatFunc) -> tuple[bool, str]:
        ring = a.num.ring
        if a.den == ring.one() and a.num.is_constant():
            return self.base.display_split(a.num.constant_value())
        _, lc = a.num.leading(GREVLEX)
        neg, _ = self.base.display_split(lc)
        num = -a.num if neg else a.num
        if a.den == ring.one():
            return neg, f"({format_polynomial(num)})"
        return neg, f"({format_polynomial(num)})/({format_polynomial(a.den)})"

    def __repr__(self):
        return f"FunField({self.base!r}; {','.join(self.variables)})"


CoefficientField = RationalField | PrimeField | RationalFunctionField


def merged_function_field(field: CoefficientField, extra: tuple[str, ...]) -> RationalFunctionField:
    """Adjoin fresh transcendentals to a field, flattening any existing layer."""
    if isinstance(field, RationalFunctionField):
        return RationalFunctionField(field.base, field.variables + extra)
    return RationalFunctionField(field, extra)


def embed_coefficient(source: CoefficientField, target: RationalFunctionField):
    """Coefficient map for re-reading polynomials over a larger function field.

    Supports K -> K(t..) and K(u..) -> K(u.., t..), the two shapes the
    generic-fiber construction needs.
    """
    if isinstance(source, RationalFunctionField):
        if source.base != target.base or source.variables != target.variables[: len(source.variables)]:
            raise ValueError(f"cannot embed {source!r} into {target!r}")
        pad = len(target.variables) - len(source.variables)
        tring = target.poly_ring
        var_map = {i: i for i in range(len(source.variables))}

        def lift(c: RatFunc) -> RatFunc:
            num = c.num.map_to(tring, var_map)
            den = c.den.map_to(tring, var_map)
            return RatFunc._reduced(num, den)

        return lift if pad else (lambda c: c)
    if source != target.base:
        raise ValueError(f"cannot embed {source!r} into {target!r}")
    return target.from_base
