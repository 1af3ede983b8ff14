"""Symbolic ring expressions and the dimension inference rules.

``evaluate`` walks a ring-construction tree, applies every rule whose
hypotheses it can establish, intersects the resulting bounds, and returns a
``DimensionResult`` whose trace names each applied rule with a citation for
the classical fact behind it.  Whenever the expression flattens to an affine
presentation the Groebner kernel computes the dimension outright and the
closed rules become cross-checks; a disagreement raises
``InconsistentBoundsError`` (exit code 3 in the CLI), because it can only
mean a bug.

Interval results are first-class: when the hypotheses of an equality rule
fail, the best provable bounds are reported with their citations instead of
guessing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .dimension import (
    INF,
    AffineAlgebra,
    DimensionValue,
    Infinity,
    dim_affine,
    dim_generic_fiber,
    zero_divisor_status,
    ZeroDivisorStatus,
)
from .errors import InconsistentBoundsError
from .fields import (
    CoefficientField,
    PrimeField,
    RationalField,
    RationalFunctionField,
    merged_function_field,
)
from .ideals import Budget, IdealPresentation
from .polynomials import Polynomial, PolynomialRing

# rule identifiers (stable strings: they appear in reports and tests)
RULE_FIELD = "field-dim-zero"
RULE_TRDEG_SUM = "field-tensor-trdeg-sum"
RULE_TENSOR_INF = "tensor-infinite"
RULE_TENSOR_LB = "tensor-lower-bound"
RULE_TENSOR_UB = "tensor-upper-bound"
RULE_TENSOR_EQ = "tensor-trdeg-equality"
RULE_INTEGRAL = "integral-extension"
RULE_FFLAT = "faithfully-flat-bound"
RULE_POLY_EXT = "polynomial-extension"
RULE_QUOT_UB = "quotient-upper-bound"
RULE_LOC_POLY = "polynomial-localization"
RULE_LOC_NZD = "nzd-localization"
RULE_LOC_KERNEL = "kernel-localization"
RULE_LOC_UB = "localization-upper-bound"
RULE_UNIT_LOC = "unit-localization"
RULE_KERNEL = "kernel-groebner"
RULE_FIBER = "generic-fiber-kernel"
RULE_DOMAIN_TRDEG = "affine-domain-trdeg"
RULE_EMPTY = "empty-ring"
RULE_LOC_ZERO = "localization-at-zero"
RULE_FRAC = "fraction-field"
RULE_TENSOR_UNIT = "tensor-unit"

CITATIONS = {
    RULE_FIELD: "fields have Krull dimension zero",
    RULE_TRDEG_SUM: "dimension of a tensor product of finitely many field extensions (Sharp-Vamos)",
    RULE_TENSOR_INF: "two countable algebraically independent families force chains of every length",
    RULE_TENSOR_LB: "explicit prime chain over the adjoined indeterminates",
    RULE_TENSOR_UB: "dim A[X_1..X_n] = dim A + n for Noetherian A (Matsumura, Thm 15.4)",
    RULE_TENSOR_EQ: "chain lower bound meets the Noetherian polynomial upper bound",
    RULE_INTEGRAL: "integral extensions preserve Krull dimension (Matsumura, Ex 9.2)",
    RULE_FFLAT: "a faithfully flat algebra dominates the dimension of its base (Matsumura, Thms 7.3/9.5)",
    RULE_POLY_EXT: "dim A[X_1..X_n] = dim A + n for Noetherian A (Matsumura, Thm 15.4)",
    RULE_QUOT_UB: "quotients never raise Krull dimension",
    RULE_LOC_POLY: "dim K[X_1..X_n][1/f] = n for nonzero f",
    RULE_LOC_NZD: "inverting a non-zero-divisor preserves the dimension of an affine algebra",
    RULE_LOC_KERNEL: "Rabinowitsch presentation computed by the Groebner kernel",
    RULE_LOC_UB: "localization never raises Krull dimension",
    RULE_UNIT_LOC: "inverting elements that are already units changes nothing",
    RULE_KERNEL: "independent-set dimension of the leading-term ideal",
    RULE_FIBER: "purely transcendental base extension preserves affine dimension",
    RULE_DOMAIN_TRDEG: "dim of an affine domain equals trdeg of its fraction field",
    RULE_EMPTY: "the zero ring has no prime ideals",
    RULE_LOC_ZERO: "inverting zero annihilates the ring",
    RULE_FRAC: "the fraction field of a domain is a field",
    RULE_TENSOR_UNIT: "tensoring with the base ring is the identity",
}


# -- expression tree -----------------------------------------------------------

@dataclass(frozen=True)
class FieldExtensionDescriptor:
    """A field extension given by a chosen transcendence basis plus monic
    algebraic relations adjoined afterwards.

    The basis is recorded by fiat: ``basis_names`` label algebraically
    independent elements, and each ``(symbol, minimal_polynomial)`` entry may
    mention only the basis and earlier symbols.  Monic minimal polynomials
    double as the integrality certificate for the algebraic part.
    """

    base: CoefficientField
    trdeg: object  # int or INF
    basis_names: tuple[str, ...] = ()
    algebraic_part: tuple[tuple[str, Polynomial], ...] = ()

    def __post_init__(self):
        if isinstance(self.trdeg, Infinity):
            if self.algebraic_part:
                raise ValueError("infinite-trdeg extensions carry no algebraic part")
            if self.basis_names:
                raise ValueError("an infinite transcendence basis is never materialized")
            return
        if self.trdeg < 0:
            raise ValueError("negative transcendence degree")
        if len(self.basis_names) != self.trdeg:
            raise ValueError("one basis name per transcendental")
        symbols = [name for name, _ in self.algebraic_part]
        if len(set(symbols)) != len(symbols):
            raise ValueError("duplicate algebraic symbols")
        ring = self.ambient_ring
        for j, (name, poly) in enumerate(self.algebraic_part):
            idx = ring.variable_index(name)
            d = poly.degree_in(idx)
            if d < 1:
                raise ValueError(f"minimal polynomial for {name} is constant in {name}")
            allowed = {ring.variable_index(s) for s, _ in self.algebraic_part[: j + 1]}
            if not poly.support() <= allowed:
                raise ValueError(f"minimal polynomial for {name} uses later symbols")
            lead = poly.coefficient_of(idx, d)
            if lead != ring.one():
                raise ValueError(f"minimal polynomial for {name} is not monic")

    @property
    def flat_field(self) -> CoefficientField:
        if isinstance(self.trdeg, Infinity):
            raise ValueError("infinite extensions have no flat coefficient field")
        if not self.basis_names:
            return self.base
        return merged_function_field(self.base, self.basis_names)

    @property
    def ambient_ring(self) -> PolynomialRing:
        return PolynomialRing(self.flat_field, tuple(s for s, _ in self.algebraic_part), unchecked=True)

    @property
    def is_purely_transcendental(self) -> bool:
        return not self.algebraic_part


class RingExpr:
    """Base class for ring-construction syntax trees."""

    __slots__ = ()


@dataclass(frozen=True)
class BaseField(RingExpr):
    coefficients: CoefficientField


@dataclass(frozen=True)
class FieldExt(RingExpr):
    descriptor: FieldExtensionDescriptor


@dataclass(frozen=True)
class PolyExt(RingExpr):
    base: RingExpr
    variables: tuple[str, ...]


@dataclass(frozen=True)
class Quotient(RingExpr):
    base: RingExpr
    relations: tuple[Polynomial, ...]


@dataclass(frozen=True)
class LocElement(RingExpr):
    base: RingExpr
    element: Polynomial


@dataclass(frozen=True)
class LocSubringComplement(RingExpr):
    """Localization at S = R[t_1..t_n] - {0} for declared independent t_i."""

    base: RingExpr
    subring_generators: tuple[Polynomial, ...]


@dataclass(frozen=True)
class Tensor(RingExpr):
    legs: tuple[RingExpr, ...]
    over: CoefficientField


@dataclass(frozen=True)
class FracField(RingExpr):
    base: RingExpr


@dataclass(frozen=True)
class TraceEntry:
    rule: str
    citation: str
    detail: str = ""


@dataclass
class DimensionResult:
    """A dimension with its derivation trace and optional kernel witness."""

    value: DimensionValue
    trace: tuple[TraceEntry, ...]
    flattened: AffineAlgebra | None = None


def _entry(rule: str, detail: str = "") -> TraceEntry:
    return TraceEntry(rule, CITATIONS[rule], detail)


class _Claims:
    """Accumulates rule outcomes; raises on contradiction when finishing."""

    def __init__(self):
        self.lo = 0
        self.hi = INF
        self.exact = None
        self.exact_rule = None
        self.empty = False
        self.trace: list[TraceEntry] = []

    def note(self, rule: str, detail: str = ""):
        self.trace.append(_entry(rule, detail))

    def lower(self, v, rule: str, detail: str = ""):
        self.note(rule, detail)
        if v > self.lo:
            self.lo = v

    def upper(self, v, rule: str, detail: str = ""):
        self.note(rule, detail)
        if v < self.hi:
            self.hi = v

    def exactly(self, v, rule: str, detail: str = ""):
        self.note(rule, detail)
        if self.exact is not None and self.exact != v:
            raise InconsistentBoundsError(
                f"rules {self.exact_rule} and {rule} disagree: {self.exact} vs {v}"
            )
        if self.exact is None:
            self.exact = v
            self.exact_rule = rule
        if v > self.lo:
            self.lo = v
        if v < self.hi:
            self.hi = v

    def mark_empty(self, rule: str = RULE_EMPTY, detail: str = ""):
        self.note(rule, detail)
        self.empty = True

    def finish(self, flattened: AffineAlgebra | None = None) -> DimensionResult:
        if self.empty:
            return DimensionResult(DimensionValue.empty_ring(), tuple(self.trace), flattened)
        if self.lo > self.hi:
            raise InconsistentBoundsError(
                f"lower bound {self.lo} exceeds upper bound {self.hi}; trace: "
                + "; ".join(e.rule for e in self.trace)
            )
        if self.exact is not None:
            value = DimensionValue.infinite() if isinstance(self.exact, Infinity) else DimensionValue.exact(self.exact)
        else:
            value = DimensionValue.interval(self.lo, self.hi)
        return DimensionResult(value, tuple(self.trace), flattened)


# -- structural helpers ----------------------------------------------------------

def trdeg_of(descriptor: FieldExtensionDescriptor):
    """Declared transcendence degree; the algebraic part contributes zero."""
    return descriptor.trdeg


def field_trdeg_over(big: CoefficientField, small: CoefficientField):
    """trdeg of one representable field over another, or None if the two do
    not sit in a recognized tower."""
    if big == small:
        return 0
    if isinstance(big, RationalFunctionField):
        if big.base == small:
            return len(big.variables)
        if (
            isinstance(small, RationalFunctionField)
            and small.base == big.base
            and big.variables[: len(small.variables)] == small.variables
        ):
            return len(big.variables) - len(small.variables)
    return None


def contained_subfield_trdeg(expr: RingExpr, over: CoefficientField):
    """Largest transcendence degree over ``over`` of a subfield the
    expression structurally contains, or None when nothing is recognized.

    Subfields survive every construction here as long as the result is a
    nonzero ring, because a field maps injectively into any nonzero algebra.
    """
    if isinstance(expr, BaseField):
        return field_trdeg_over(expr.coefficients, over)
    if isinstance(expr, FieldExt):
        base_t = field_trdeg_over(expr.descriptor.base, over)
        if base_t is None:
            return None
        return base_t + expr.descriptor.trdeg
    if isinstance(expr, Quotient):
        if any(r.is_constant() and not r.is_zero() for r in expr.relations):
            return None  # visibly the zero ring: it contains no field at all
        return contained_subfield_trdeg(expr.base, over)
    if isinstance(expr, (PolyExt, LocElement, LocSubringComplement, FracField)):
        return contained_subfield_trdeg(expr.base, over)
    if isinstance(expr, Tensor):
        legs = [contained_subfield_trdeg(leg, over) for leg in expr.legs]
        legs = [t for t in legs if t is not None]
        return max(legs, default=None)
    return None


def noetherian_flag(expr: RingExpr) -> bool:
    """Structural Noetherian certificate: affine constructions and their
    localizations are flagged; infinite-trdeg extensions never are."""
    if isinstance(expr, BaseField):
        return True
    if isinstance(expr, FieldExt):
        return not isinstance(expr.descriptor.trdeg, Infinity)
    if isinstance(expr, (PolyExt, Quotient, LocElement, LocSubringComplement, FracField)):
        return noetherian_flag(expr.base)
    if isinstance(expr, Tensor):
        return all(noetherian_flag(leg) for leg in expr.legs)
    return False


def structurally_domain(expr: RingExpr) -> bool:
    if isinstance(expr, (BaseField, FieldExt)):
        return True
    if isinstance(expr, PolyExt):
        return structurally_domain(expr.base)
    if isinstance(expr, LocElement):
        return structurally_domain(expr.base) and not expr.element.is_zero()
    if isinstance(expr, (LocSubringComplement, FracField)):
        return structurally_domain(expr.base)
    return False


def flatten_affine(expr: RingExpr) -> AffineAlgebra | None:
    """An affine presentation of the expression over its own coefficient
    field, when one exists within tower limits."""
    if isinstance(expr, BaseField):
        if isinstance(expr.coefficients, (RationalField, PrimeField, RationalFunctionField)):
            return AffineAlgebra.polynomial_ring(PolynomialRing(expr.coefficients, ()))
        return None
    if isinstance(expr, FieldExt):
        d = expr.descriptor
        if isinstance(d.trdeg, Infinity):
            return None
        ring = d.ambient_ring
        rels = [p for _, p in d.algebraic_part]
        if not rels:
            return AffineAlgebra.polynomial_ring(ring)
        return AffineAlgebra(IdealPresentation(ring, rels))
    if isinstance(expr, PolyExt):
        inner = flatten_affine(expr.base)
        if inner is None:
            return None
        ext = inner.ring.extend(expr.variables)
        var_map = {i: i for i in range(inner.ring.arity)}
        gens = [g.map_to(ext, var_map) for g in inner.presentation.generators]
        return AffineAlgebra(IdealPresentation(ext, gens))
    if isinstance(expr, Quotient):
        inner = flatten_affine(expr.base)
        if inner is None:
            return None
        gens = [g for g in inner.presentation.generators if not g.is_zero()]
        gens += [r for r in expr.relations]
        if not gens:
            return AffineAlgebra.polynomial_ring(inner.ring)
        return AffineAlgebra(IdealPresentation(inner.ring, gens))
    if isinstance(expr, LocElement):
        inner = flatten_affine(expr.base)
        if inner is None:
            return None
        from .dimension import rabinowitsch_presentation

        return rabinowitsch_presentation(inner, expr.element)
    if isinstance(expr, Tensor):
        flats = []
        for leg in expr.legs:
            flat = flatten_affine(leg)
            if flat is None or flat.field != expr.over:
                return None
            flats.append(flat)
        combined = flats[0]
        for other in flats[1:]:
            combined = tensor_flatten_affine(combined, other)
        return combined
    return None


def tensor_flatten_affine(a: AffineAlgebra, b: AffineAlgebra) -> AffineAlgebra:
    """Tensor over the shared base field, realized by juxtaposing variables
    (renamed canonically on collision) and uniting the two generator sets."""
    if a.field != b.field:
        raise ValueError(f"tensor legs over different base fields: {a.field!r} vs {b.field!r}")
    names = list(a.ring.variables)
    b_names = []
    taken = set(names) | set(getattr(a.field, "function_variables", ()))
    for name in b.ring.variables:
        candidate = name
        k = 1
        while candidate in taken:
            candidate = f"{name}_{k}"
            k += 1
        taken.add(candidate)
        b_names.append(candidate)
    ring = PolynomialRing(a.field, tuple(names + b_names), unchecked=True)
    a_map = {i: i for i in range(a.ring.arity)}
    b_map = {i: len(names) + i for i in range(b.ring.arity)}
    gens = [g.map_to(ring, a_map) for g in a.presentation.generators if not g.is_zero()]
    gens += [g.map_to(ring, b_map) for g in b.presentation.generators if not g.is_zero()]
    if not gens:
        return AffineAlgebra.polynomial_ring(ring)
    return AffineAlgebra(IdealPresentation(ring, gens))


# -- closed rules -----------------------------------------------------------------

def field_tensor_dimension(trdegs: Sequence[object]) -> DimensionValue:
    """Dimension of a tensor product of field extensions from their
    transcendence degrees: sum of all but the largest, infinite when at
    least two factors have infinite degree.

    The formula is symmetric, so the required ascending normalization is
    just a sort; ties need no care.
    """
    ts = sorted(trdegs)
    if not ts:
        raise ValueError("a tensor product needs at least one factor")
    if len(ts) >= 2 and isinstance(ts[-2], Infinity):
        return DimensionValue.infinite()
    return DimensionValue.exact(sum(ts[:-1], 0))


def tensor_lower_bound(
    n: int,
    algebra: RingExpr,
    witnesses: Sequence[Polynomial],
    localized_dim: DimensionValue,
    over: CoefficientField | None = None,
    budget: Budget | None = None,
) -> tuple[object, TraceEntry]:
    """Lower bound n + dim S^-1 A for adjoining n indeterminates, witnessed
    by n elements of A algebraically independent over ``over``.

    Independence is verified through the kernel when A flattens to an affine
    presentation over that very field; when A is only affine over a larger
    field (so the claim is not kernel-checkable) the assumption is recorded
    in the trace instead.
    """
    if len(witnesses) != n:
        raise ValueError(f"{n} witnesses expected, got {len(witnesses)}")
    checked = "assumed independent"
    if n > 0:
        flat = flatten_affine(algebra)
        if flat is not None and (over is None or flat.field == over):
            from .chains import verify_algebraic_independence

            if not verify_algebraic_independence(flat, list(witnesses), budget):
                raise ValueError("witnesses are not algebraically independent over the base")
            checked = "independence verified by elimination"
    if localized_dim.kind == "empty":
        raise ValueError("localized algebra is the zero ring")
    bound = n + localized_dim.lo
    return bound, _entry(RULE_TENSOR_LB, f"n={n} + dim S^-1 A >= {bound} ({checked})")


def tensor_upper_bound(n: int, algebra_dim: DimensionValue, noetherian: bool) -> tuple[object, TraceEntry] | None:
    """Upper bound dim A + n; only emitted with a Noetherian flag."""
    if not noetherian or algebra_dim.kind == "empty":
        return None
    bound = algebra_dim.hi + n
    return bound, _entry(RULE_TENSOR_UB, f"dim A + n <= {bound}")


def tensor_infinite_applicable(leg_trdeg, other_subfield_trdeg) -> bool:
    """The countably-infinite rule fires when the extension leg and the
    algebra both contain countable independent families."""
    return isinstance(leg_trdeg, Infinity) and isinstance(other_subfield_trdeg, Infinity)


def tensor_equality(
    n: int, algebra_dim: DimensionValue, subfield_trdeg, noetherian: bool
) -> tuple[DimensionValue, TraceEntry] | None:
    """Exact n + dim A for adjoining n indeterminates to a Noetherian
    algebra containing a subfield of transcendence degree >= n: the chain
    lower bound meets the polynomial upper bound.

    None when a hypothesis is missing; callers fall back to honest bounds.
    """
    if not noetherian or not algebra_dim.is_exact or isinstance(algebra_dim.value, Infinity):
        return None
    if subfield_trdeg is None:
        return None
    if not isinstance(subfield_trdeg, Infinity) and subfield_trdeg < n:
        return None
    value = DimensionValue.exact(n + algebra_dim.value)
    return value, _entry(RULE_TENSOR_EQ, f"n={n}, dim A={algebra_dim.value}")


def integral_extension_rule(descriptor: FieldExtensionDescriptor) -> TraceEntry | None:
    """Dimension-equality rule across an integral extension; the syntactic
    certificate is the monic shape of the adjoined minimal polynomials,
    which descriptor construction already enforced.  Inapplicable (None)
    when there is nothing algebraic to cross."""
    if not descriptor.algebraic_part:
        return None
    names = ",".join(s for s, _ in descriptor.algebraic_part)
    return _entry(RULE_INTEGRAL, f"algebraic part ({names}) crossed without changing dimension")


def faithfully_flat_lower_bound(
    larger: RingExpr, smaller: RingExpr, budget: Budget | None = None
) -> tuple[object, TraceEntry] | None:
    """dim(larger) >= dim(smaller) for the two supported faithful-flatness
    shapes: enlarging a purely transcendental tensor leg, and tensoring with
    one more leg (every algebra over a field is a free module).

    Returns None when neither shape matches; this rule never guesses.
    """
    if larger == smaller:
        d = evaluate(smaller, budget).value
        return d.lo, _entry(RULE_FFLAT, "identical expressions")
    if not (isinstance(larger, Tensor) and isinstance(smaller, Tensor)) or larger.over != smaller.over:
        return None
    if len(larger.legs) == len(smaller.legs):
        # shape (a): one purely transcendental leg grew, the rest agree
        grown = [
            (big, small)
            for big, small in zip(larger.legs, smaller.legs)
            if big != small
        ]
        if grown and all(
            isinstance(big, FieldExt)
            and isinstance(small, FieldExt)
            and big.descriptor.is_purely_transcendental
            and small.descriptor.is_purely_transcendental
            and big.descriptor.base == small.descriptor.base
            and big.descriptor.trdeg >= small.descriptor.trdeg
            for big, small in grown
        ):
            d = evaluate(smaller, budget).value
            if d.kind == "empty":
                return None
            return d.lo, _entry(RULE_FFLAT, "purely transcendental leg enlarged")
        return None
    # shape (b): larger has extra legs; the common legs must match
    small_legs = list(smaller.legs)
    big_legs = list(larger.legs)
    for leg in small_legs:
        if leg in big_legs:
            big_legs.remove(leg)
        else:
            return None
    d = evaluate(smaller, budget).value
    if d.kind == "empty":
        return None
    return d.lo, _entry(RULE_FFLAT, "extra tensor legs are free module extensions")


# -- evaluation --------------------------------------------------------------------

def evaluate(expr: RingExpr, budget: Budget | None = None) -> DimensionResult:
    """Apply every applicable rule to the expression and intersect bounds."""
    budget = budget or Budget()
    return _eval(expr, budget)


def _eval(expr: RingExpr, budget: Budget) -> DimensionResult:
    if isinstance(expr, (BaseField, FieldExt)):
        claims = _Claims()
        detail = ""
        if isinstance(expr, FieldExt):
            detail = f"trdeg {expr.descriptor.trdeg} extension; a field as a ring"
        claims.exactly(0, RULE_FIELD, detail)
        return claims.finish(flatten_affine(expr))

    if isinstance(expr, PolyExt):
        return _eval_poly_ext(expr, budget)
    if isinstance(expr, Quotient):
        return _eval_quotient(expr, budget)
    if isinstance(expr, LocElement):
        return _eval_loc_element(expr, budget)
    if isinstance(expr, LocSubringComplement):
        return _eval_loc_subring(expr, budget)
    if isinstance(expr, Tensor):
        return _eval_tensor(expr, budget)
    if isinstance(expr, FracField):
        return _eval_frac(expr, budget)
    raise TypeError(f"unknown ring expression {expr!r}")


def _kernel_exact(claims: _Claims, flat: AffineAlgebra, budget: Budget, rule: str = RULE_KERNEL, detail: str = ""):
    d = dim_affine(flat, budget=budget)
    if d.kind == "empty":
        claims.mark_empty(detail="the presented ideal is the unit ideal")
    else:
        claims.exactly(d.value, rule, detail)
    return d


def _eval_poly_ext(expr: PolyExt, budget: Budget) -> DimensionResult:
    claims = _Claims()
    flat = flatten_affine(expr)
    if flat is not None:
        _kernel_exact(claims, flat, budget)
        return claims.finish(flat)
    sub = _eval(expr.base, budget)
    n = len(expr.variables)
    if sub.value.kind == "empty":
        claims.mark_empty(detail="polynomials over the zero ring")
        return claims.finish()
    claims.trace.extend(sub.trace)
    claims.lower(sub.value.lo + n, RULE_POLY_EXT, f"chains extend by {n} across the new variables")
    if noetherian_flag(expr.base) and not isinstance(sub.value.hi, Infinity):
        claims.upper(sub.value.hi + n, RULE_POLY_EXT, "Noetherian-flagged base")
    return claims.finish()


def _eval_quotient(expr: Quotient, budget: Budget) -> DimensionResult:
    claims = _Claims()
    flat = flatten_affine(expr)
    if flat is not None:
        _kernel_exact(claims, flat, budget)
        return claims.finish(flat)
    if any(r.is_constant() and not r.is_zero() for r in expr.relations):
        claims.mark_empty(detail="a unit among the relations")
        return claims.finish()
    sub = _eval(expr.base, budget)
    if sub.value.kind == "empty":
        claims.mark_empty(detail="quotient of the zero ring")
        return claims.finish()
    claims.trace.extend(sub.trace)
    claims.upper(sub.value.hi, RULE_QUOT_UB, "no kernel presentation available")
    return claims.finish()


def _eval_loc_element(expr: LocElement, budget: Budget) -> DimensionResult:
    claims = _Claims()
    base_flat = flatten_affine(expr.base)
    if base_flat is None:
        sub = _eval(expr.base, budget)
        if sub.value.kind == "empty":
            claims.mark_empty(detail="localizing the zero ring")
            return claims.finish()
        claims.trace.extend(sub.trace)
        claims.upper(sub.value.hi, RULE_LOC_UB)
        return claims.finish()
    f = expr.element
    if base_flat.presentation.contains(f, budget=budget):
        claims.mark_empty(RULE_LOC_ZERO, "the element is zero in the algebra")
        return claims.finish(base_flat)
    flat = flatten_affine(expr)
    if base_flat.presentation.is_zero_ideal(budget):
        n = base_flat.ring.arity
        claims.exactly(n, RULE_LOC_POLY, f"polynomial ring in {n} variables")
        kernel = dim_affine(flat, budget=budget)
        claims.exactly(kernel.value, RULE_KERNEL, "Rabinowitsch cross-check")
        return claims.finish(flat)
    status = zero_divisor_status(base_flat, f, budget)
    kernel = dim_affine(flat, budget=budget)
    if status is ZeroDivisorStatus.NON_ZERO_DIVISOR:
        base_dim = dim_affine(base_flat, budget=budget)
        claims.exactly(base_dim.value, RULE_LOC_NZD, "non-zero-divisor certified by ideal quotient")
        claims.exactly(kernel.value, RULE_KERNEL, "Rabinowitsch cross-check")
    else:
        claims.exactly(kernel.value, RULE_LOC_KERNEL, "zero-divisor: no preservation rule, kernel value only")
    return claims.finish(flat)


def _eval_loc_subring(expr: LocSubringComplement, budget: Budget) -> DimensionResult:
    claims = _Claims()
    sub = _eval(expr.base, budget)
    if sub.value.kind == "empty":
        claims.mark_empty(detail="localizing the zero ring")
        return claims.finish()
    claims.trace.extend(sub.trace)
    gens = expr.subring_generators
    if gens and all(g.is_constant() and not g.is_zero() for g in gens):
        # subring generated inside the coefficient field: S consists of units
        if sub.value.is_exact:
            claims.exactly(sub.value.value, RULE_UNIT_LOC, "subring generators lie in the coefficient field")
        else:
            claims.lower(sub.value.lo, RULE_UNIT_LOC)
            claims.upper(sub.value.hi, RULE_UNIT_LOC)
        return claims.finish(sub.flattened)
    claims.upper(sub.value.hi, RULE_LOC_UB, "no unit certificate for the multiplicative set")
    return claims.finish()


def _eval_frac(expr: FracField, budget: Budget) -> DimensionResult:
    claims = _Claims()
    if structurally_domain(expr.base):
        claims.exactly(0, RULE_FRAC, "base is structurally a domain")
        return claims.finish()
    sub = _eval(expr.base, budget)
    if sub.value.kind == "empty":
        claims.mark_empty(detail="the zero ring has no fraction field")
        return claims.finish()
    claims.trace.extend(sub.trace)
    claims.upper(sub.value.hi, RULE_LOC_UB, "total quotient ring; domain not certified")
    return claims.finish()


def _transcendental_leg(leg: RingExpr, over: CoefficientField):
    """(trdeg over the base, descriptor-or-None) when the leg is a field
    whose transcendence degree over ``over`` is structurally known."""
    if isinstance(leg, BaseField):
        t = field_trdeg_over(leg.coefficients, over)
        return None if t is None else (t, None)
    if isinstance(leg, FieldExt):
        base_t = field_trdeg_over(leg.descriptor.base, over)
        if base_t is None:
            return None
        return base_t + leg.descriptor.trdeg, leg.descriptor
    return None


def _eval_tensor(expr: Tensor, budget: Budget) -> DimensionResult:
    claims = _Claims()
    over = expr.over
    if not expr.legs:
        raise ValueError("a tensor product needs at least one factor")

    if len(expr.legs) == 1:
        # a one-factor tensor over the base field is the factor itself
        inner = _eval(expr.legs[0], budget)
        trace = inner.trace + (_entry(RULE_TENSOR_UNIT),)
        return DimensionResult(inner.value, trace, inner.flattened)

    subfields = [contained_subfield_trdeg(leg, over) for leg in expr.legs]
    infinite_legs = sum(1 for t in subfields if isinstance(t, Infinity))
    if infinite_legs >= 2:
        claims.note(
            RULE_TENSOR_INF,
            "two factors contain countably infinite independent families",
        )
        claims.note(RULE_FFLAT, "enlarging the transcendental leg keeps every finite lower bound")
        return DimensionResult(DimensionValue.infinite(), tuple(claims.trace))

    field_legs = [_transcendental_leg(leg, over) for leg in expr.legs]
    if all(t is not None for t in field_legs):
        trdegs = [t for t, _ in field_legs]
        for _, desc in field_legs:
            if desc is not None and desc.algebraic_part:
                entry = integral_extension_rule(desc)
                claims.trace.append(entry)
        value = field_tensor_dimension(trdegs)
        if value.kind == "infinite":
            claims.note(RULE_TRDEG_SUM, f"trdegs {trdegs}: at least two infinite factors")
            return DimensionResult(DimensionValue.infinite(), tuple(claims.trace))
        claims.exactly(value.value, RULE_TRDEG_SUM, f"trdegs {sorted(trdegs)}: sum of all but the largest")
        flat = flatten_affine(expr)
        if flat is not None:
            _kernel_exact(claims, flat, budget, detail="affine cross-check of the trdeg formula")
            return claims.finish(flat)
        return claims.finish()

    flat = flatten_affine(expr)
    if flat is not None:
        _kernel_exact(claims, flat, budget)
        return claims.finish(flat)

    # one transcendental field leg against affine legs: the generic fiber
    trans = [(i, t) for i, t in enumerate(field_legs) if t is not None]
    if len(trans) == 1:
        i, (t, desc) = trans[0]
        rest = [leg for j, leg in enumerate(expr.legs) if j != i]
        rest_flat = [flatten_affine(leg) for leg in rest]
        if not isinstance(t, Infinity) and all(
            f is not None and f.field == over for f in rest_flat
        ):
            combined = rest_flat[0]
            for other in rest_flat[1:]:
                combined = tensor_flatten_affine(combined, other)
            if desc is not None and desc.algebraic_part:
                claims.trace.append(integral_extension_rule(desc))
            fiber = dim_generic_fiber(combined, t, budget)
            if fiber.kind == "empty":
                claims.mark_empty(detail="affine legs present the zero ring")
                return claims.finish()
            claims.exactly(fiber.value, RULE_FIBER, f"kernel dimension over the extended base ({t} fresh transcendentals)")
            base_dim = dim_affine(combined, budget=budget)
            ub = tensor_upper_bound(t, base_dim, True)
            if ub is not None:
                bound, entry = ub
                claims.trace.append(entry)
                if bound < claims.hi:
                    claims.hi = bound
            return claims.finish(combined)

        # the algebra legs may contain a subfield supplying independent witnesses
        rest_expr = rest[0] if len(rest) == 1 else Tensor(tuple(rest), over)
        sub_t = contained_subfield_trdeg(rest_expr, over)
        if not isinstance(t, Infinity) and noetherian_flag(rest_expr):
            inner = _eval(rest_expr, budget)
            claims.trace.extend(inner.trace)
            if inner.value.kind == "empty":
                claims.mark_empty()
                return claims.finish()
            if inner.value.is_exact and not isinstance(inner.value.value, Infinity):
                if desc is not None and desc.algebraic_part:
                    claims.trace.append(integral_extension_rule(desc))
                d = inner.value.value
                s = 0 if sub_t is None or isinstance(sub_t, Infinity) else min(sub_t, t)
                detail = f"subfield of trdeg {sub_t} supplies {s} independent witnesses; S^-1 A = A"
                claims.lower(s + d, RULE_TENSOR_LB, detail)
                claims.note(RULE_UNIT_LOC, "the witnesses generate a subfield, so S is made of units")
                if 0 < s < t:
                    claims.note(RULE_FFLAT, f"enlarging the transcendental leg from {s} to {t} keeps the bound")
                claims.upper(d + t, RULE_TENSOR_UB, "Noetherian-flagged algebra leg")
                equality = tensor_equality(t, inner.value, sub_t, True)
                if equality is not None:
                    claims.exactly(equality[0].value, RULE_TENSOR_EQ, f"n={t}, dim A={d}")
                return claims.finish(inner.flattened)

    # fallback: free-module faithful flatness gives the best leg lower bound
    best = None
    for leg in expr.legs:
        inner = _eval(leg, budget)
        if inner.value.kind == "empty":
            claims.mark_empty(detail="one tensor factor is the zero ring")
            return claims.finish()
        lo = inner.value.lo
        if best is None or lo > best:
            best = lo
    claims.lower(best, RULE_FFLAT, "every factor is a free module over the base field")
    if isinstance(best, Infinity):
        return DimensionResult(DimensionValue.infinite(), tuple(claims.trace))
    return claims.finish()
