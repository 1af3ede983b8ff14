from __future__ import annotations

from itertools import permutations, product

import pytest

from ringdim import (
    INF,
    DimensionValue,
    FieldExtensionDescriptor,
    InconsistentBoundsError,
    QQ,
    evaluate,
    faithfully_flat_lower_bound,
    field_tensor_dimension,
    flatten_affine,
    integral_extension_rule,
    parse_polynomial,
    parse_ring_expr,
    tensor_flatten_affine,
    tensor_lower_bound,
    tensor_upper_bound,
    trdeg_of,
)
from ringdim.calculus import (
    RULE_FIBER,
    RULE_KERNEL,
    RULE_LOC_NZD,
    RULE_LOC_POLY,
    RULE_TENSOR_EQ,
    RULE_TENSOR_INF,
    RULE_TENSOR_LB,
    RULE_TENSOR_UB,
    RULE_TRDEG_SUM,
    RULE_UNIT_LOC,
    _Claims,
    contained_subfield_trdeg,
    noetherian_flag,
)


def rules_of(result):
    return [t.rule for t in result.trace]


# -- the tensor trdeg formula -------------------------------------------------

def test_formula_spot_values():
    assert field_tensor_dimension([1, 1]) == DimensionValue.exact(1)
    assert field_tensor_dimension([1, 2, 4]) == DimensionValue.exact(3)
    assert field_tensor_dimension([2, INF]) == DimensionValue.exact(2)
    assert field_tensor_dimension([INF, INF]) == DimensionValue.infinite()


def test_formula_degenerate_cases():
    assert field_tensor_dimension([5]) == DimensionValue.exact(0)
    assert field_tensor_dimension([INF]) == DimensionValue.exact(0)
    assert field_tensor_dimension([0, 0, 0]) == DimensionValue.exact(0)
    assert field_tensor_dimension([0, 3]) == DimensionValue.exact(0)
    with pytest.raises(ValueError):
        field_tensor_dimension([])


def test_formula_permutation_invariance_exhaustive():
    values = [0, 1, 2, 3, INF]
    for n in (2, 3, 4):
        for combo in product(values, repeat=n):
            base = field_tensor_dimension(list(combo))
            for perm in permutations(combo):
                assert field_tensor_dimension(list(perm)) == base


def test_trdeg_of():
    assert trdeg_of(FieldExtensionDescriptor(QQ, 2, ("s1", "s2"))) == 2
    assert trdeg_of(FieldExtensionDescriptor(QQ, INF)) == INF
    d = parse_ring_expr("Ext(Q; 1; a^2 - 2)").descriptor
    assert trdeg_of(d) == 1  # the algebraic part contributes nothing


# -- evaluate on closed shapes ---------------------------------------------------

def test_evaluate_field_tensor():
    r = evaluate(parse_ring_expr("Tensor(Ext(Q; 1), Ext(Q; 1))"))
    assert r.value == DimensionValue.exact(1)
    assert RULE_TRDEG_SUM in rules_of(r)


def test_evaluate_infinite_tensor():
    r = evaluate(parse_ring_expr("Tensor(Ext(Q; inf), Ext(Q; inf))"))
    assert r.value == DimensionValue.infinite()
    assert RULE_TENSOR_INF in rules_of(r)


def test_evaluate_infinite_algebra_leg():
    # the countable case with an algebra leg that merely contains the family
    r = evaluate(parse_ring_expr("Tensor(Ext(Q; inf), Poly(Ext(Q; inf); y))"))
    assert r.value == DimensionValue.infinite()
    assert RULE_TENSOR_INF in rules_of(r)


def test_evaluate_generic_fiber_with_recorded_upper_bound():
    r = evaluate(parse_ring_expr("Tensor(Ext(Q; 1), Quot(Poly(Q; x,y); x*y))"))
    assert r.value == DimensionValue.exact(1)
    assert RULE_FIBER in rules_of(r)
    assert RULE_TENSOR_UB in rules_of(r)
    assert RULE_TENSOR_EQ not in rules_of(r)


def test_evaluate_guard_rejects_equality_without_subfield():
    r = evaluate(parse_ring_expr("Tensor(Ext(Q; 1), Poly(Q; y))"))
    assert r.value == DimensionValue.exact(1)  # not 2
    assert RULE_TENSOR_EQ not in rules_of(r)


def test_evaluate_tensor_equality_with_subfield():
    r = evaluate(parse_ring_expr("Tensor(Ext(Q; 1), Poly(FunField(Q; u); y))"))
    assert r.value == DimensionValue.exact(2)
    rules = rules_of(r)
    assert RULE_TENSOR_EQ in rules and RULE_TENSOR_LB in rules and RULE_TENSOR_UB in rules


def test_evaluate_tensor_equality_field_case():
    # two transcendentals against a trdeg-3 field: the formula and the
    # equality rule describe the same ring
    r = evaluate(parse_ring_expr("Tensor(Ext(Q; 2), Ext(Q; 3))"))
    assert r.value == DimensionValue.exact(2)


def test_evaluate_interval_when_subfield_too_small():
    r = evaluate(parse_ring_expr("Tensor(Ext(Q; 2), Poly(FunField(Q; u); y))"))
    assert r.value == DimensionValue.interval(2, 3)
    rules = rules_of(r)
    assert RULE_TENSOR_LB in rules and RULE_TENSOR_UB in rules


def test_evaluate_localization_shapes():
    r = evaluate(parse_ring_expr("Loc(Poly(Q; x,y); x^2 + y^2)"))
    assert r.value == DimensionValue.exact(2)
    assert RULE_LOC_POLY in rules_of(r) and RULE_KERNEL in rules_of(r)

    r = evaluate(parse_ring_expr("Loc(Quot(Poly(Q; x,y); x*y); x + y)"))
    assert r.value == DimensionValue.exact(1)
    assert RULE_LOC_NZD in rules_of(r)

    r = evaluate(parse_ring_expr("Loc(Quot(Poly(Q; x,y); x*y); x)"))
    assert r.value == DimensionValue.exact(1)  # zero divisor: kernel only
    assert RULE_LOC_NZD not in rules_of(r)

    r = evaluate(parse_ring_expr("Loc(Quot(Poly(Q; x,y); x*y); x*y)"))
    assert r.value == DimensionValue.empty_ring()


def test_evaluate_quotients_and_fields():
    assert evaluate(parse_ring_expr("Q")).value == DimensionValue.exact(0)
    assert evaluate(parse_ring_expr("Ext(Q; inf)")).value == DimensionValue.exact(0)
    assert evaluate(parse_ring_expr("Quot(Poly(Q; x,y); y^2 - x^3)")).value == DimensionValue.exact(1)
    assert evaluate(parse_ring_expr("Quot(Poly(Q; x); x^2 - 2)")).value == DimensionValue.exact(0)
    assert evaluate(parse_ring_expr("Quot(Poly(Q; x); 1)")).value == DimensionValue.empty_ring()


def test_evaluate_poly_over_infinite_extension_gives_lower_bound_only():
    # an infinite-trdeg extension is deliberately not Noetherian-flagged, so
    # the polynomial layer adds to the lower bound but pins no upper bound
    r = evaluate(parse_ring_expr("Poly(Ext(Q; inf); y)"))
    assert r.value.kind == "interval"
    assert r.value.lo == 1


def test_evaluate_locsub_units():
    r = evaluate(parse_ring_expr("LocSub(Poly(FunField(Q; u); y); u)"))
    assert r.value == DimensionValue.exact(1)
    assert RULE_UNIT_LOC in rules_of(r)


def test_evaluate_locsub_nonunits_bounds():
    r = evaluate(parse_ring_expr("LocSub(Poly(Q; u, y); u)"))
    assert r.value.kind == "interval"
    assert r.value.lo == 0 and r.value.hi == 2


def test_evaluate_frac_field():
    assert evaluate(parse_ring_expr("Frac(Poly(Q; x, y))")).value == DimensionValue.exact(0)
    r = evaluate(parse_ring_expr("Frac(Quot(Poly(Q; x,y); x*y))"))
    assert r.value.kind == "interval"  # not certified a domain: honest bounds


def test_evaluate_deterministic_traces():
    text = "Tensor(Ext(Q; 1), Quot(Poly(Q; x,y); x*y))"
    a = evaluate(parse_ring_expr(text))
    b = evaluate(parse_ring_expr(text))
    assert [(t.rule, t.citation, t.detail) for t in a.trace] == [
        (t.rule, t.citation, t.detail) for t in b.trace
    ]
    assert a.value == b.value


# -- flattening ----------------------------------------------------------------

def test_tensor_flatten_polynomial_rings():
    a = flatten_affine(parse_ring_expr("Poly(Q; x)"))
    b = flatten_affine(parse_ring_expr("Poly(Q; y)"))
    combined = tensor_flatten_affine(a, b)
    assert combined.ring.variables == ("x", "y")
    assert combined.presentation.is_zero_ideal()


def test_tensor_flatten_renames_collisions():
    a = flatten_affine(parse_ring_expr("Poly(Q; x)"))
    combined = tensor_flatten_affine(a, a)
    assert combined.ring.variables == ("x", "x_1")


def test_tensor_flatten_field_mismatch():
    a = flatten_affine(parse_ring_expr("Poly(Q; x)"))
    b = flatten_affine(parse_ring_expr("Poly(FunField(Q; t); y)"))
    with pytest.raises(ValueError):
        tensor_flatten_affine(a, b)


def test_tensor_of_quadratic_extensions_dimension_zero():
    r = evaluate(parse_ring_expr("Tensor(Quot(Poly(Q; a); a^2-2), Quot(Poly(Q; b); b^2-2))"))
    assert r.value == DimensionValue.exact(0)
    assert RULE_KERNEL in rules_of(r)


def test_tensor_with_base_field_is_identity():
    r = evaluate(parse_ring_expr("Tensor(Quot(Poly(Q; x,y); x*y), Q)"))
    assert r.value == DimensionValue.exact(1)


# -- public rule functions --------------------------------------------------------

def test_tensor_lower_bound_verifies_independence():
    expr = parse_ring_expr("Poly(Q; u, v)")
    ring = flatten_affine(expr).ring
    u, v = ring.variable("u"), ring.variable("v")
    bound, entry = tensor_lower_bound(2, expr, [u, v], DimensionValue.exact(0))
    assert bound == 2 and entry.rule == RULE_TENSOR_LB
    with pytest.raises(ValueError):
        tensor_lower_bound(2, expr, [u, u**2], DimensionValue.exact(0))


def test_tensor_lower_bound_degenerate():
    expr = parse_ring_expr("Poly(Q; u)")
    bound, _ = tensor_lower_bound(0, expr, [], DimensionValue.exact(1))
    assert bound == 1


def test_tensor_upper_bound_needs_noetherian_flag():
    assert tensor_upper_bound(1, DimensionValue.exact(1), True)[0] == 2
    assert tensor_upper_bound(1, DimensionValue.exact(1), False) is None
    assert tensor_upper_bound(0, DimensionValue.exact(3), True)[0] == 3


def test_integral_extension_rule():
    with_alg = parse_ring_expr("Ext(Q; 1; a^2 - 2)").descriptor
    entry = integral_extension_rule(with_alg)
    assert entry is not None and entry.rule == "integral-extension"
    without = parse_ring_expr("Ext(Q; 1)").descriptor
    assert integral_extension_rule(without) is None


def test_integral_extension_in_tensor_evaluation():
    r = evaluate(parse_ring_expr("Tensor(Ext(Q; 1; a^2 - 2), Ext(Q; 1))"))
    assert r.value == DimensionValue.exact(1)
    assert "integral-extension" in rules_of(r)


def test_faithfully_flat_shapes():
    small = parse_ring_expr("Tensor(Ext(Q; 1), Ext(Q; 1))")
    large = parse_ring_expr("Tensor(Ext(Q; 2), Ext(Q; 1))")
    bound, entry = faithfully_flat_lower_bound(large, small)
    assert bound == 1 and entry.rule == "faithfully-flat-bound"
    assert faithfully_flat_lower_bound(small, small)[0] == 1
    extra = parse_ring_expr("Tensor(Ext(Q; 1), Ext(Q; 1), Ext(Q; 0))")
    assert faithfully_flat_lower_bound(extra, small)[0] == 1
    # shrinking a transcendental leg is not a supported flatness shape
    bigger = parse_ring_expr("Tensor(Ext(Q; 1), Ext(Q; 2))")
    assert faithfully_flat_lower_bound(small, bigger) is None


def test_noetherian_flagging():
    assert noetherian_flag(parse_ring_expr("Quot(Poly(Q; x,y); x*y)"))
    assert noetherian_flag(parse_ring_expr("Loc(Poly(Q; x); x)"))
    assert not noetherian_flag(parse_ring_expr("Ext(Q; inf)"))
    assert not noetherian_flag(parse_ring_expr("Tensor(Ext(Q; inf), Ext(Q; 1))"))


def test_contained_subfield_trdeg():
    assert contained_subfield_trdeg(parse_ring_expr("Poly(FunField(Q; u); y)"), QQ) == 1
    assert contained_subfield_trdeg(parse_ring_expr("Poly(Q; y)"), QQ) == 0
    assert contained_subfield_trdeg(parse_ring_expr("Ext(Q; inf)"), QQ) == INF
    assert (
        contained_subfield_trdeg(parse_ring_expr("Quot(Poly(FunField(Q; u,v); y); y^2 - 2)"), QQ)
        == 2
    )


def test_claims_detect_contradictions():
    claims = _Claims()
    claims.exactly(1, RULE_KERNEL)
    with pytest.raises(InconsistentBoundsError):
        claims.exactly(2, RULE_TRDEG_SUM)
    claims2 = _Claims()
    claims2.lower(3, RULE_TENSOR_LB)
    claims2.upper(2, RULE_TENSOR_UB)
    with pytest.raises(InconsistentBoundsError):
        claims2.finish()


def test_tensor_infinite_applicability():
    from ringdim.calculus import tensor_infinite_applicable

    assert tensor_infinite_applicable(INF, INF)
    assert not tensor_infinite_applicable(INF, 3)
    assert not tensor_infinite_applicable(2, INF)


def test_tensor_lower_bound_records_assumption_over_smaller_base():
    # A = Q(u)[y] with witness u: independent over Q, but A is only affine
    # over Q(u), so the claim is recorded as an assumption rather than checked
    expr = parse_ring_expr("Poly(FunField(Q; u); y)")
    ring = flatten_affine(expr).ring
    u = parse_polynomial("u", ring)
    bound, entry = tensor_lower_bound(1, expr, [u], DimensionValue.exact(1), over=QQ)
    assert bound == 2
    assert "assumed" in entry.detail


def test_symbolic_zero_ring_is_not_infinite():
    # a visibly-unit relation over a symbolic base must yield the empty
    # ring, not trip the countable-family rule through its dead subfield
    expr = parse_ring_expr("Tensor(Ext(Q; inf), Quot(Poly(Ext(Q; inf); y); 2))")
    assert evaluate(expr).value == DimensionValue.empty_ring()
    alone = parse_ring_expr("Quot(Poly(Ext(Q; inf); y); 2)")
    assert evaluate(alone).value == DimensionValue.empty_ring()


def test_faithfully_flat_infinite_enlargement():
    # growing the transcendental leg all the way to a countable basis keeps
    # every finite lower bound
    small = parse_ring_expr("Tensor(Ext(Q; 2), Ext(Q; 2))")
    large = parse_ring_expr("Tensor(Ext(Q; inf), Ext(Q; 2))")
    bound, entry = faithfully_flat_lower_bound(large, small)
    assert bound == 2
    assert entry.rule == "faithfully-flat-bound"


def test_tensor_equality_rule_function():
    from ringdim import tensor_equality

    value, entry = tensor_equality(1, DimensionValue.exact(1), 1, True)
    assert value == DimensionValue.exact(2)
    assert entry.rule == RULE_TENSOR_EQ
    assert tensor_equality(2, DimensionValue.exact(1), 1, True) is None  # subfield too small
    assert tensor_equality(1, DimensionValue.exact(1), 1, False) is None  # not Noetherian-flagged
    assert tensor_equality(1, DimensionValue.interval(0, 2), 1, True) is None
    value, _ = tensor_equality(1, DimensionValue.exact(0), INF, True)
    assert value == DimensionValue.exact(1)


def test_evaluate_prime_field_tensors():
    r = evaluate(parse_ring_expr("Tensor(Ext(Fp(5); 1), Ext(Fp(5); 1))"))
    assert r.value == DimensionValue.exact(1)
    r = evaluate(parse_ring_expr("Tensor(Quot(Poly(Fp(5); a); a^2-2), Quot(Poly(Fp(5); b); b^2-2))"))
    assert r.value == DimensionValue.exact(0)


def test_evaluate_mixed_algebraic_and_funfield_quotient():
    # Q(s1)(a) tensor (Q(u)[y]/(y^2 - u)) over Q: both legs have trdeg 1,
    # so the answer is 1 whichever route proves it
    text = "Tensor(Ext(Q; 1; a^2 - s1), Quot(Poly(FunField(Q; u); y); y^2 - u))"
    r = evaluate(parse_ring_expr(text))
    assert r.value == DimensionValue.exact(1)
    assert "integral-extension" in rules_of(r)


def test_evaluate_empty_funfield_quotient_leg():
    text = "Tensor(Ext(Q; 1), Quot(Poly(FunField(Q; u); y); y^2 - u, y^2 - u - 1))"
    r = evaluate(parse_ring_expr(text))
    assert r.value == DimensionValue.empty_ring()
