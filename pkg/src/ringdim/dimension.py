"""Krull dimension of affine algebras and their element localizations.

The core computation is combinatorial: the dimension of K[X]/I equals the
largest variable subset meeting the leading-term ideal of I only in zero.
The subset scan is exhaustive, which the global variable cap keeps cheap,
and it is certifiable: tests re-derive it with an independent brute-force
oracle straight from monomial generators.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Iterable

from .errors import EmptyRingError, ZeroPolynomialError
from .fields import CoefficientField, embed_coefficient, merged_function_field
from .ideals import Budget, IdealPresentation, fresh_variable, ideal_quotient
from .orderings import GREVLEX, MonomialOrder
from .polynomials import Polynomial, PolynomialRing


class Infinity:
    """Order-compatible marker for countably infinite transcendence degree."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return isinstance(other, Infinity)

    def __gt__(self, other):
        return not isinstance(other, Infinity)

    def __ge__(self, other):
        return True

    def __eq__(self, other):
        return isinstance(other, Infinity)

    def __hash__(self):
        return hash("Infinity")

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __repr__(self):
        return "inf"


INF = Infinity()


@dataclass(frozen=True)
class DimensionValue:
    """Exact integer, empty ring, infinite, or an honest interval.

    The empty ring is its own case rather than a -1 sentinel: the dimension
    theorems all presuppose a nonzero ring and conflating the cases breeds
    silent bugs.
    """

    kind: str  # "exact" | "empty" | "infinite" | "interval"
    lo: object = None
    hi: object = None

    @classmethod
    def exact(cls, d: int) -> "DimensionValue":
        if isinstance(d, Infinity):
            return cls.infinite()
        if d < 0:
            raise ValueError("negative dimension")
        return cls("exact", d, d)

    @classmethod
    def empty_ring(cls) -> "DimensionValue":
        return cls("empty")

    @classmethod
    def infinite(cls) -> "DimensionValue":
        return cls("infinite", INF, INF)

    @classmethod
    def interval(cls, lo, hi) -> "DimensionValue":
        if isinstance(lo, Infinity):
            return cls.infinite()
        if lo == hi:
            return cls.exact(lo)
        if hi < lo:
            raise ValueError(f"interval [{lo}, {hi}] is empty")
        return cls("interval", lo, hi)

    @property
    def is_exact(self) -> bool:
        return self.kind == "exact"

    @property
    def value(self) -> int:
        if self.kind != "exact":
            raise ValueError(f"{self} is not an exact dimension")
        return self.lo

    def __str__(self):
        if self.kind == "exact":
            return str(self.lo)
        if self.kind == "empty":
            return "empty-ring"
        if self.kind == "infinite":
            return "inf"
        return f"[{self.lo}, {self.hi}]"


@dataclass(frozen=True)
class AffineAlgebra:
    """K[X_1..X_n]/I, presented by an ideal in an explicit polynomial ring."""

    presentation: IdealPresentation

    @property
    def ring(self) -> PolynomialRing:
        return self.presentation.ring

    @property
    def field(self) -> CoefficientField:
        return self.presentation.ring.field

    @classmethod
    def polynomial_ring(cls, ring: PolynomialRing) -> "AffineAlgebra":
        return cls(IdealPresentation.zero_ideal(ring))

    def __repr__(self):
        return f"AffineAlgebra({self.ring.variables} over {self.field!r} mod {self.presentation!r})"


def independent_set_dimension(leading_monomials: Iterable[tuple[int, ...]], arity: int) -> int:
    """Largest subset U of variables such that no monomial's support fits
    inside U; scanning sizes top-down makes the common cases quick."""
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in leading_monomials]
    if any(not s for s in supports):
        raise ValueError("a constant leading term means the unit ideal; handle it earlier")
    for size in range(arity, -1, -1):
        for subset in combinations(range(arity), size):
            u = frozenset(subset)
            if all(not s <= u for s in supports):
                return size
    raise AssertionError("unreachable: the empty subset is always independent")


def dim_affine(A: AffineAlgebra, order: MonomialOrder = GREVLEX, budget: Budget | None = None) -> DimensionValue:
    """Exact Krull dimension via independent sets of the leading-term ideal."""
    basis = A.presentation.groebner_basis(order, budget)
    if not basis:
        return DimensionValue.exact(A.ring.arity)
    if len(basis) == 1 and basis[0].is_constant():
        return DimensionValue.empty_ring()
    leads = [g.leading(order)[0] for g in basis]
    return DimensionValue.exact(independent_set_dimension(leads, A.ring.arity))


def rabinowitsch_presentation(A: AffineAlgebra, f: Polynomial, budget: Budget | None = None) -> AffineAlgebra:
    """The localization A[1/f] presented as K[X, Y]/(I, f*Y - 1)."""
    if f.ring != A.ring:
        raise ValueError("localizing element must live in the algebra's ring")
    if A.presentation.contains(f, budget=budget):
        raise ZeroPolynomialError("cannot invert an element that is zero in the algebra")
    name = fresh_variable("Y", A.ring.variables)
    ext = A.ring.extend((name,))
    var_map = {i: i for i in range(A.ring.arity)}
    lifted = [g.map_to(ext, var_map) for g in A.presentation.generators if not g.is_zero()]
    relation = f.map_to(ext, var_map) * ext.variable(A.ring.arity) - ext.one()
    return AffineAlgebra(IdealPresentation(ext, lifted + [relation]))


def dim_localization(A: AffineAlgebra, f: Polynomial, budget: Budget | None = None) -> DimensionValue:
    """dim A[1/f], computed on the Rabinowitsch presentation."""
    return dim_affine(rabinowitsch_presentation(A, f, budget), budget=budget)


def dim_poly_localization(n: int, f: Polynomial, budget: Budget | None = None) -> DimensionValue:
    """dim K[X_1..X_n][1/f] for nonzero f; always n, but recomputed exactly."""
    if f.is_zero():
        raise ZeroPolynomialError("cannot localize a polynomial ring at zero")
    if f.ring.arity != n:
        raise ValueError(f"f lives in a {f.ring.arity}-variable ring, not {n}")
    return dim_localization(AffineAlgebra.polynomial_ring(f.ring), f, budget)


class ZeroDivisorStatus(Enum):
    NON_ZERO_DIVISOR = "non-zero-divisor"
    ZERO_DIVISOR = "zero-divisor"
    ZERO_ELEMENT = "zero-element"


def zero_divisor_status(A: AffineAlgebra, f: Polynomial, budget: Budget | None = None) -> ZeroDivisorStatus:
    """Three-way test: f may be a unit-of-nothing (zero in A), a genuine
    zero-divisor, or a non-zero-divisor, decided by whether (I : f) = I."""
    if f.ring != A.ring:
        raise ValueError("element must live in the algebra's ring")
    if f.is_zero() or A.presentation.contains(f, budget=budget):
        return ZeroDivisorStatus.ZERO_ELEMENT
    quotient = ideal_quotient(A.presentation, f, budget)
    # I is always contained in (I : f); equality needs only the reverse check
    if all(A.presentation.contains(g, budget=budget) for g in quotient.generators):
        return ZeroDivisorStatus.NON_ZERO_DIVISOR
    return ZeroDivisorStatus.ZERO_DIVISOR


def is_zero_divisor(A: AffineAlgebra, f: Polynomial, budget: Budget | None = None) -> bool:
    """Boolean form; zero elements count as zero-divisors by convention."""
    return zero_divisor_status(A, f, budget) is not ZeroDivisorStatus.NON_ZERO_DIVISOR


def height_of_prime(P: IdealPresentation, certificate=None, budget: Budget | None = None) -> int:
    """Height of a prime of K[X_1..X_n] as n minus the quotient dimension.

    Primality is the caller's obligation (see chains for certificate forms);
    the formula needs it, this function does not re-verify it.
    """
    dim = dim_affine(AffineAlgebra(P), budget=budget)
    if dim.kind == "empty":
        raise EmptyRingError("the unit ideal has no height")
    return P.ring.arity - dim.value


def dim_generic_fiber(A: AffineAlgebra, n: int, budget: Budget | None = None) -> DimensionValue:
    """dim of K(T_1..T_n) tensor A over K: the same presentation re-read with
    n fresh transcendentals adjoined to the coefficient field.

    An existing rational-function layer is merged rather than stacked, so
    the tower stays one level deep.
    """
    if n < 0:
        raise ValueError("negative transcendental count")
    if n == 0:
        return dim_affine(A, budget=budget)
    taken = set(A.ring.variables) | set(getattr(A.field, "function_variables", ()))
    fresh = []
    for _ in range(n):
        name = fresh_variable("T", taken)
        taken.add(name)
        fresh.append(name)
    target_field = merged_function_field(A.field, tuple(fresh))
    lift = embed_coefficient(A.field, target_field)
    new_ring = PolynomialRing(target_field, A.ring.variables, unchecked=True)
    var_map = {i: i for i in range(A.ring.arity)}
    gens = [g.map_to(new_ring, var_map, coeff_map=lift) for g in A.presentation.generators]
    return dim_affine(AffineAlgebra(IdealPresentation(new_ring, gens)), budget=budget)


def trdeg_affine_domain(A: AffineAlgebra, certificate=None, budget: Budget | None = None) -> int:
    """Transcendence degree of Frac(A) over the base field, for A a domain.

    Equal to dim A; the domain certificate travels with the caller and is
    surfaced in reports, not re-derived here.
    """
    dim = dim_affine(A, budget=budget)
    if dim.kind == "empty":
        raise EmptyRingError("the zero ring has no fraction field")
    return dim.value
