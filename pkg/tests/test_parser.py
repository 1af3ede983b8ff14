from __future__ import annotations

import pytest

from ringdim import (
    BaseField,
    FieldExt,
    LocElement,
    ParseError,
    PolynomialRing,
    PrimeField,
    QQ,
    Quotient,
    RationalFunctionField,
    Tensor,
    format_polynomial,
    format_ring_expr,
    parse_polynomial,
    parse_ring_expr,
)


# -- polynomial text -----------------------------------------------------------

@pytest.fixture
def ring_qt():
    return PolynomialRing(RationalFunctionField(QQ, ("t",)), ("x", "y", "z"))


def test_parse_documented_example(ring_qt):
    p = parse_polynomial("3/2*x^2*y - t*z + 1", ring_qt)
    assert format_polynomial(p) == "3/2*x^2*y - (t)*z + 1"
    assert parse_polynomial(format_polynomial(p), ring_qt) == p


def test_parse_juxtaposition_and_parens():
    ring = PolynomialRing(QQ, ("x",))
    x = ring.variable("x")
    assert parse_polynomial("3x", ring) == x.scale(QQ.from_int(3))
    assert parse_polynomial("2(x + 1)", ring) == x.scale(QQ.from_int(2)) + ring.from_int(2)
    assert parse_polynomial("(x + 1)^2", ring) == x**2 + x.scale(QQ.from_int(2)) + ring.one()
    assert parse_polynomial("-x + x", ring).is_zero()


def test_parse_rational_coefficient_over_prime_field():
    ring = PolynomialRing(PrimeField(5), ("x",))
    p = parse_polynomial("3/2*x", ring)
    assert p == ring.variable("x").scale(4)  # 3 * inv(2) = 9 = 4 mod 5


def test_parse_division_restrictions(ring_qt):
    # dividing by a coefficient (even a function-field one) is fine
    p = parse_polynomial("(t^2 + 1)/(t)*z", ring_qt)
    assert not p.is_zero()
    with pytest.raises(ParseError):
        parse_polynomial("x/y", ring_qt)
    with pytest.raises(ParseError):
        parse_polynomial("x/0", ring_qt)


def test_parse_unknown_identifier_position():
    ring = PolynomialRing(QQ, ("x",))
    with pytest.raises(ParseError) as err:
        parse_polynomial("x + bogus", ring)
    assert err.value.line == 1
    assert err.value.column == 5


def test_parse_syntax_error_position():
    ring = PolynomialRing(QQ, ("x",))
    with pytest.raises(ParseError) as err:
        parse_polynomial("x + + 1", ring)
    assert err.value.column == 5
    with pytest.raises(ParseError):
        parse_polynomial("x + ", ring)
    with pytest.raises(ParseError):
        parse_polynomial("x ? 1", ring)


# -- ring expressions -----------------------------------------------------------

def test_grammar_examples():
    e = parse_ring_expr("Tensor(Ext(Q; 1), Ext(Q; 1))")
    assert isinstance(e, Tensor) and e.over == QQ
    assert all(isinstance(leg, FieldExt) for leg in e.legs)

    e = parse_ring_expr("Loc(Quot(Poly(Q; x,y); x*y); x+y)")
    assert isinstance(e, LocElement)
    assert isinstance(e.base, Quotient)

    e = parse_ring_expr("Tensor(Ext(Q; inf), Ext(Q; inf))")
    legs = e.legs
    from ringdim import INF

    assert legs[0].descriptor.trdeg == INF


def test_field_forms():
    assert parse_ring_expr("Q") == BaseField(QQ)
    assert parse_ring_expr("Fp(7)") == BaseField(PrimeField(7))
    ff = parse_ring_expr("FunField(Q; t,u)")
    assert ff == BaseField(RationalFunctionField(QQ, ("t", "u")))
    with pytest.raises(ParseError):
        parse_ring_expr("Fp(6)")
    with pytest.raises(ParseError):
        parse_ring_expr("FunField(FunField(Q; t); u)")


def test_ext_with_minimal_polynomials():
    e = parse_ring_expr("Ext(Q; 1; a^2 - s1)")
    d = e.descriptor
    assert d.trdeg == 1 and d.basis_names == ("s1",)
    assert [name for name, _ in d.algebraic_part] == ["a"]
    with pytest.raises(ParseError):
        parse_ring_expr("Ext(Q; 0; 2*a^2 - 1)")  # not monic
    with pytest.raises(ParseError):
        parse_ring_expr("Ext(Q; inf; a^2 - 2)")  # no algebraic part over inf
    with pytest.raises(ParseError):
        parse_ring_expr("Ext(Q; 0; a*b - 1)")  # two new symbols at once


def test_tensor_base_inference_and_validation():
    e = parse_ring_expr("Tensor(Ext(Q; 1), Poly(FunField(Q; u); y))")
    assert e.over == QQ
    e = parse_ring_expr("Tensor(Poly(FunField(Q; u); y), Poly(FunField(Q; u); z))")
    assert e.over == RationalFunctionField(QQ, ("u",))
    with pytest.raises(ParseError):
        parse_ring_expr("Tensor(Poly(Q; x), Poly(Fp(5); y))")
    with pytest.raises(ParseError):
        parse_ring_expr("Tensor(Poly(Q; x), Poly(Q; y); Fp(5))")


def test_quotient_needs_polynomial_context():
    with pytest.raises(ParseError):
        parse_ring_expr("Quot(Tensor(Poly(Q; x), Poly(Q; y)); x*y)")
    with pytest.raises(ParseError):
        parse_ring_expr("Quot(Ext(Q; inf); x)")


def test_unknown_identifier_in_relations():
    with pytest.raises(ParseError):
        parse_ring_expr("Quot(Poly(Q; x); w - 1)")


def test_round_trip_corpus():
    corpus = [
        "Q",
        "Fp(5)",
        "FunField(Q; t)",
        "FunField(Fp(7); t,u)",
        "Ext(Q; 0)",
        "Ext(Q; 1)",
        "Ext(Q; 2)",
        "Ext(Q; inf)",
        "Ext(Fp(5); 1)",
        "Ext(Q; 1; a^2 - 2)",
        "Ext(Q; 1; a^2 - s1)",
        "Ext(Q; 2; a^2 - s1, b^3 - a)",
        "Poly(Q; x)",
        "Poly(Q; x,y)",
        "Poly(Q; x,y,z)",
        "Poly(Fp(5); x,y)",
        "Poly(FunField(Q; t); x)",
        "Poly(Ext(Q; 1); y)",
        "Poly(Ext(Q; inf); y)",
        "Quot(Poly(Q; x); x^2 - 2)",
        "Quot(Poly(Q; x,y); x*y)",
        "Quot(Poly(Q; x,y); y^2 - x^3)",
        "Quot(Poly(Q; x,y,z); x*z, y*z)",
        "Quot(Poly(Fp(5); x,y); x*y - 1)",
        "Quot(Poly(FunField(Q; t); x); x^2 - t)",
        "Loc(Poly(Q; x); x)",
        "Loc(Poly(Q; x,y); x*y)",
        "Loc(Poly(Q; x,y); x^2 + y^2)",
        "Loc(Quot(Poly(Q; x,y); x*y); x + y)",
        "Loc(Quot(Poly(Q; x,y); x*y); x)",
        "LocSub(Poly(Q; u,y); u)",
        "LocSub(Poly(FunField(Q; u); y); u)",
        "LocSub(Poly(Q; u,v,y); u, v)",
        "Frac(Poly(Q; x))",
        "Frac(Quot(Poly(Q; x,y); y^2 - x^3))",
        "Tensor(Ext(Q; 1), Ext(Q; 1))",
        "Tensor(Ext(Q; 1), Ext(Q; 2), Ext(Q; 4))",
        "Tensor(Ext(Q; inf), Ext(Q; inf))",
        "Tensor(Ext(Q; 2), Ext(Q; inf))",
        "Tensor(Ext(Q; 1), Quot(Poly(Q; x,y); x*y))",
        "Tensor(Ext(Q; 1), Poly(FunField(Q; u); y))",
        "Tensor(Ext(Q; 2), Poly(FunField(Q; u); y))",
        "Tensor(Quot(Poly(Q; a); a^2 - 2), Quot(Poly(Q; b); b^2 - 2))",
        "Tensor(Poly(Q; x), Poly(Q; y), Poly(Q; z))",
        "Tensor(Ext(Q; 1; a^2 - 2), Ext(Q; 1))",
        "Tensor(Ext(Fp(5); 1), Ext(Fp(5); 1))",
        "Tensor(Quot(Poly(Q; x,y); x*y), Q)",
        "Poly(Quot(Poly(Q; x); x^2 - 2); y)",
        "Quot(Poly(Quot(Poly(Q; x); x^2 - 2); y); y^2 - x)",
        "Loc(Poly(Fp(5); x,y,z); x^2 + y^2 + z^2 + 1)",
        "Tensor(Ext(Q; 3), Ext(Q; 0))",
        "Frac(Poly(FunField(Q; t); x))",
        "LocSub(Quot(Poly(Q; u,y); y^2 - u); u)",
        "Quot(Poly(Q; x,y); 3/2*x^2*y - x + 1)",
    ]
    assert len(corpus) >= 50
    for text in corpus:
        expr = parse_ring_expr(text)
        printed = format_ring_expr(expr)
        again = parse_ring_expr(printed)
        assert again == expr, text
        assert format_ring_expr(again) == printed, text


def test_trailing_input_rejected():
    with pytest.raises(ParseError):
        parse_ring_expr("Q extra")
    with pytest.raises(ParseError):
        parse_ring_expr("Poly(Q; x))")
