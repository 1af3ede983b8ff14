"""Text syntax for polynomials and ring expressions.

Polynomials use the usual infix notation with `^` for powers; `*` may be
omitted between a coefficient and a variable.  Identifiers resolve to ring
variables or, over a rational function field, to coefficient generators.
Division is permitted exactly when the divisor involves no ring variables,
which is what makes `3/2*x` and `(t^2+1)/(t)*z` parse while `x/y` is
rejected.

Ring expressions follow a small constructor grammar, one form per node:

    expr  := field
           | Ext(field; trdeg [; minpolys])
           | Poly(expr; vars) | Quot(expr; polys) | Loc(expr; poly)
           | LocSub(expr; polys) | Tensor(expr, expr .. [; field])
           | Frac(expr)
    field := Q | Fp(prime) | FunField(field; vars)
    trdeg := integer | inf

`Ext` auto-names its transcendence basis s1..sk; minimal polynomials may
mention those names and earlier adjoined symbols, and must be monic in the
one new symbol they introduce.  Printing and parsing round-trip exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .calculus import (
    BaseField,
    FieldExt,
    FieldExtensionDescriptor,
    FracField,
    LocElement,
    LocSubringComplement,
    PolyExt,
    Quotient,
    RingExpr,
    Tensor,
)
from .dimension import INF, Infinity
from .errors import ParseError
from .fields import (
    CoefficientField,
    PrimeField,
    QQ,
    RationalField,
    RationalFunctionField,
)
from .polynomials import Polynomial, PolynomialRing, format_polynomial


# -- lexing ---------------------------------------------------------------------

_PUNCT = {
    "(": "LPAREN",
    ")": "RPAREN",
    ";": "SEMI",
    ",": "COMMA",
    "^": "CARET",
    "*": "STAR",
    "/": "SLASH",
    "+": "PLUS",
    "-": "MINUS",
}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, col = 1, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        if ch in _PUNCT:
            tokens.append(Token(_PUNCT[ch], ch, line, col))
            col += 1
            i += 1
            continue
        if ch.isdigit():
            start = i
            while i < len(text) and text[i].isdigit():
                i += 1
            tokens.append(Token("INT", text[start:i], line, col))
            col += i - start
            continue
        if ch.isalpha() or ch == "_":
            start = i
            while i < len(text) and (text[i].isalnum() or text[i] == "_"):
                i += 1
            tokens.append(Token("IDENT", text[start:i], line, col))
            col += i - start
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("EOF", "", line, col))
    return tokens


class _Cursor:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "EOF":
            self.pos += 1
        return tok

    def expect(self, kind: str, what: str = "") -> Token:
        tok = self.peek()
        if tok.kind != kind:
            wanted = what or kind
            raise ParseError(f"expected {wanted}, found {tok.text or 'end of input'!r}", tok.line, tok.column)
        return self.next()


# -- polynomial expressions -------------------------------------------------------

# AST nodes: ("int", n) ("var", name, line, col) ("neg", x)
#            ("add"|"sub"|"mul", l, r) ("div", l, r, line, col) ("pow", x, n)

def _parse_poly_expr(cur: _Cursor):
    node = _parse_poly_term(cur) if cur.peek().kind != "MINUS" else None
    if node is None:
        cur.next()
        node = ("neg", _parse_poly_term(cur))
    while cur.peek().kind in ("PLUS", "MINUS"):
        op = cur.next()
        rhs = _parse_poly_term(cur)
        node = ("add" if op.kind == "PLUS" else "sub", node, rhs)
    return node


def _parse_poly_term(cur: _Cursor):
    node = _parse_poly_factor(cur)
    while True:
        tok = cur.peek()
        if tok.kind == "STAR":
            cur.next()
            node = ("mul", node, _parse_poly_factor(cur))
        elif tok.kind == "SLASH":
            cur.next()
            node = ("div", node, _parse_poly_factor(cur), tok.line, tok.column)
        elif tok.kind in ("IDENT", "LPAREN"):
            # juxtaposition: 3x, 2(x+1)
            node = ("mul", node, _parse_poly_factor(cur))
        else:
            return node


def _parse_poly_factor(cur: _Cursor):
    node = _parse_poly_atom(cur)
    if cur.peek().kind == "CARET":
        cur.next()
        tok = cur.expect("INT", "an integer exponent")
        node = ("pow", node, int(tok.text))
    return node


def _parse_poly_atom(cur: _Cursor):
    tok = cur.peek()
    if tok.kind == "INT":
        cur.next()
        return ("int", int(tok.text))
    if tok.kind == "IDENT":
        cur.next()
        return ("var", tok.text, tok.line, tok.column)
    if tok.kind == "LPAREN":
        cur.next()
        node = _parse_poly_expr(cur)
        cur.expect("RPAREN", "')'")
        return node
    raise ParseError(f"expected a polynomial, found {tok.text or 'end of input'!r}", tok.line, tok.column)


def poly_ast_identifiers(ast) -> list[str]:
    kind = ast[0]
    if kind == "int":
        return []
    if kind == "var":
        return [ast[1]]
    if kind == "neg":
        return poly_ast_identifiers(ast[1])
    if kind == "pow":
        return poly_ast_identifiers(ast[1])
    out = poly_ast_identifiers(ast[1])
    for name in poly_ast_identifiers(ast[2]):
        if name not in out:
            out.append(name)
    return out


def poly_ast_to_polynomial(ast, ring: PolynomialRing) -> Polynomial:
    kind = ast[0]
    if kind == "int":
        return ring.from_int(ast[1])
    if kind == "var":
        name = ast[1]
        if name in ring.variables:
            return ring.variable(name)
        field = ring.field
        if isinstance(field, RationalFunctionField) and name in field.variables:
            return ring.constant(field.generator(name))
        raise ParseError(f"unknown identifier {name!r}", ast[2], ast[3])
    if kind == "neg":
        return -poly_ast_to_polynomial(ast[1], ring)
    if kind == "add":
        return poly_ast_to_polynomial(ast[1], ring) + poly_ast_to_polynomial(ast[2], ring)
    if kind == "sub":
        return poly_ast_to_polynomial(ast[1], ring) - poly_ast_to_polynomial(ast[2], ring)
    if kind == "mul":
        return poly_ast_to_polynomial(ast[1], ring) * poly_ast_to_polynomial(ast[2], ring)
    if kind == "pow":
        return poly_ast_to_polynomial(ast[1], ring) ** ast[2]
    if kind == "div":
        num = poly_ast_to_polynomial(ast[1], ring)
        den = poly_ast_to_polynomial(ast[2], ring)
        if den.is_zero():
            raise ParseError("division by zero", ast[3], ast[4])
        if not den.is_constant():
            raise ParseError("division only by coefficients, not ring variables", ast[3], ast[4])
        return num.scale(ring.field.inv(den.constant_value()))
    raise AssertionError(f"unknown AST node {kind}")


def parse_polynomial(text: str, ring: PolynomialRing) -> Polynomial:
    cur = _Cursor(tokenize(text))
    ast = _parse_poly_expr(cur)
    tok = cur.peek()
    if tok.kind != "EOF":
        raise ParseError(f"unexpected trailing input {tok.text!r}", tok.line, tok.column)
    return poly_ast_to_polynomial(ast, ring)


# -- ring expressions --------------------------------------------------------------

_KEYWORDS = {"Q", "Fp", "FunField", "Ext", "Poly", "Quot", "Loc", "LocSub", "Tensor", "Frac", "inf"}


def _parse_field(cur: _Cursor) -> CoefficientField:
    tok = cur.expect("IDENT", "a field (Q, Fp(p), FunField(..))")
    if tok.text == "Q":
        return QQ
    if tok.text == "Fp":
        cur.expect("LPAREN", "'('")
        p = cur.expect("INT", "a prime")
        cur.expect("RPAREN", "')'")
        try:
            return PrimeField(int(p.text))
        except ValueError as exc:
            raise ParseError(str(exc), p.line, p.column) from None
    if tok.text == "FunField":
        cur.expect("LPAREN", "'('")
        base = _parse_field(cur)
        cur.expect("SEMI", "';'")
        names = _parse_name_list(cur)
        cur.expect("RPAREN", "')'")
        if isinstance(base, RationalFunctionField):
            raise ParseError("function fields do not nest; merge the variables", tok.line, tok.column)
        try:
            return RationalFunctionField(base, tuple(names))
        except ValueError as exc:
            raise ParseError(str(exc), tok.line, tok.column) from None
    raise ParseError(f"unknown field {tok.text!r}", tok.line, tok.column)


def _parse_name_list(cur: _Cursor) -> list[str]:
    names = [cur.expect("IDENT", "a variable name").text]
    while cur.peek().kind == "COMMA":
        cur.next()
        names.append(cur.expect("IDENT", "a variable name").text)
    return names


def _parse_poly_list_asts(cur: _Cursor) -> list:
    asts = [_parse_poly_expr(cur)]
    while cur.peek().kind == "COMMA":
        cur.next()
        asts.append(_parse_poly_expr(cur))
    return asts


def _build_ext(cur: _Cursor, open_tok: Token) -> tuple[RingExpr, PolynomialRing | None]:
    base = _parse_field(cur)
    cur.expect("SEMI", "';'")
    tok = cur.peek()
    if tok.kind == "IDENT" and tok.text == "inf":
        cur.next()
        trdeg: object = INF
    else:
        trdeg = int(cur.expect("INT", "a transcendence degree or 'inf'").text)
    minpoly_asts: list = []
    if cur.peek().kind == "SEMI":
        cur.next()
        minpoly_asts = _parse_poly_list_asts(cur)
    cur.expect("RPAREN", "')'")
    if isinstance(trdeg, Infinity):
        if minpoly_asts:
            raise ParseError("infinite extensions take no minimal polynomials", open_tok.line, open_tok.column)
        descriptor = FieldExtensionDescriptor(base, INF)
        return FieldExt(descriptor), None
    basis = tuple(f"s{i + 1}" for i in range(trdeg))
    known = set(basis) | set(getattr(base, "function_variables", ()))
    symbols: list[str] = []
    for ast in minpoly_asts:
        fresh = [n for n in poly_ast_identifiers(ast) if n not in known and n not in symbols]
        if len(fresh) != 1:
            raise ParseError(
                "each minimal polynomial must introduce exactly one new symbol",
                open_tok.line,
                open_tok.column,
            )
        symbols.append(fresh[0])
    flat = _merged(base, basis)
    ring = PolynomialRing(flat, tuple(symbols))
    minpolys = tuple(
        (name, poly_ast_to_polynomial(ast, ring)) for name, ast in zip(symbols, minpoly_asts)
    )
    try:
        descriptor = FieldExtensionDescriptor(base, trdeg, basis, minpolys)
    except ValueError as exc:
        raise ParseError(str(exc), open_tok.line, open_tok.column) from None
    return FieldExt(descriptor), descriptor.ambient_ring


def _merged(base: CoefficientField, extra: tuple[str, ...]) -> CoefficientField:
    if not extra:
        return base
    if isinstance(base, RationalFunctionField):
        return RationalFunctionField(base.base, base.variables + extra)
    return RationalFunctionField(base, extra)


def _field_chain(expr: RingExpr) -> list[CoefficientField]:
    """Fields the expression is naturally an algebra over, outermost first."""
    if isinstance(expr, BaseField):
        chain = [expr.coefficients]
    elif isinstance(expr, FieldExt):
        chain = [expr.descriptor.base]
    elif isinstance(expr, Tensor):
        chain = [expr.over]
    else:
        return _field_chain(expr.base)
    last = chain[-1]
    if isinstance(last, RationalFunctionField):
        chain.append(last.base)
    return chain


def _parse_expr(cur: _Cursor) -> tuple[RingExpr, PolynomialRing | None]:
    tok = cur.peek()
    if tok.kind != "IDENT":
        raise ParseError(f"expected a ring expression, found {tok.text or 'end of input'!r}", tok.line, tok.column)
    head = tok.text
    if head in ("Q", "Fp", "FunField"):
        field = _parse_field(cur)
        return BaseField(field), PolynomialRing(field, ())
    cur.next()
    if head not in _KEYWORDS:
        raise ParseError(f"unknown constructor {head!r}", tok.line, tok.column)
    open_tok = cur.expect("LPAREN", "'('")

    if head == "Ext":
        return _build_ext(cur, open_tok)

    if head == "Poly":
        base, ambient = _parse_expr(cur)
        cur.expect("SEMI", "';'")
        names = _parse_name_list(cur)
        cur.expect("RPAREN", "')'")
        new_ambient = None
        if ambient is None and isinstance(base, FieldExt):
            # polynomials over an infinite extension parse with coefficients
            # in the extension's base field; the tree stays symbolic
            ambient = PolynomialRing(base.descriptor.base, ())
        if ambient is not None:
            try:
                new_ambient = PolynomialRing(ambient.field, ambient.variables + tuple(names))
            except ValueError as exc:
                raise ParseError(str(exc), open_tok.line, open_tok.column) from None
        return PolyExt(base, tuple(names)), new_ambient

    if head == "Quot":
        base, ambient = _parse_expr(cur)
        cur.expect("SEMI", "';'")
        asts = _parse_poly_list_asts(cur)
        cur.expect("RPAREN", "')'")
        if ambient is None:
            raise ParseError("cannot form polynomial relations over this base", open_tok.line, open_tok.column)
        rels = tuple(poly_ast_to_polynomial(ast, ambient) for ast in asts)
        return Quotient(base, rels), ambient

    if head == "Loc":
        base, ambient = _parse_expr(cur)
        cur.expect("SEMI", "';'")
        ast = _parse_poly_expr(cur)
        cur.expect("RPAREN", "')'")
        if ambient is None:
            raise ParseError("cannot form a localizing element over this base", open_tok.line, open_tok.column)
        return LocElement(base, poly_ast_to_polynomial(ast, ambient)), ambient

    if head == "LocSub":
        base, ambient = _parse_expr(cur)
        cur.expect("SEMI", "';'")
        asts = _parse_poly_list_asts(cur)
        cur.expect("RPAREN", "')'")
        if ambient is None:
            raise ParseError("cannot form subring generators over this base", open_tok.line, open_tok.column)
        gens = tuple(poly_ast_to_polynomial(ast, ambient) for ast in asts)
        return LocSubringComplement(base, gens), ambient

    if head == "Tensor":
        legs = []
        leg, _ = _parse_expr(cur)
        legs.append(leg)
        while cur.peek().kind == "COMMA":
            cur.next()
            leg, _ = _parse_expr(cur)
            legs.append(leg)
        over = None
        if cur.peek().kind == "SEMI":
            cur.next()
            over = _parse_field(cur)
        cur.expect("RPAREN", "')'")
        if over is None:
            chains = [_field_chain(leg) for leg in legs]
            for candidate in chains[0]:
                if all(candidate in chain for chain in chains[1:]):
                    over = candidate
                    break
            if over is None:
                raise ParseError(
                    "tensor legs share no base field; declare one with '; field'",
                    open_tok.line,
                    open_tok.column,
                )
        else:
            for leg in legs:
                if over not in _field_chain(leg):
                    raise ParseError(
                        "a tensor leg is not an algebra over the declared base field",
                        open_tok.line,
                        open_tok.column,
                    )
        return Tensor(tuple(legs), over), None

    if head == "Frac":
        base, _ambient = _parse_expr(cur)
        cur.expect("RPAREN", "')'")
        return FracField(base), None

    raise ParseError(f"unknown constructor {head!r}", tok.line, tok.column)


def parse_ring_expr(text: str) -> RingExpr:
    """Parse the constructor grammar into a ring expression tree."""
    cur = _Cursor(tokenize(text))
    expr, _ = _parse_expr(cur)
    tok = cur.peek()
    if tok.kind != "EOF":
        raise ParseError(f"unexpected trailing input {tok.text!r}", tok.line, tok.column)
    return expr


def ambient_ring_of(text: str) -> PolynomialRing | None:
    """The polynomial-parsing context of an expression (None for symbolic
    bases such as infinite extensions, tensors, and fraction fields)."""
    cur = _Cursor(tokenize(text))
    _, ambient = _parse_expr(cur)
    return ambient


# -- printing -----------------------------------------------------------------------

def format_field(field: CoefficientField) -> str:
    if isinstance(field, RationalField):
        return "Q"
    if isinstance(field, PrimeField):
        return f"Fp({field.p})"
    if isinstance(field, RationalFunctionField):
        return f"FunField({format_field(field.base)}; {','.join(field.variables)})"
    raise TypeError(f"unknown field {field!r}")


def format_ring_expr(expr: RingExpr) -> str:
    """Canonical text that parses back to an equal expression."""
    if isinstance(expr, BaseField):
        return format_field(expr.coefficients)
    if isinstance(expr, FieldExt):
        d = expr.descriptor
        trdeg = "inf" if isinstance(d.trdeg, Infinity) else str(d.trdeg)
        if not d.algebraic_part:
            return f"Ext({format_field(d.base)}; {trdeg})"
        polys = ", ".join(format_polynomial(p) for _, p in d.algebraic_part)
        return f"Ext({format_field(d.base)}; {trdeg}; {polys})"
    if isinstance(expr, PolyExt):
        return f"Poly({format_ring_expr(expr.base)}; {','.join(expr.variables)})"
    if isinstance(expr, Quotient):
        rels = ", ".join(format_polynomial(p) for p in expr.relations)
        return f"Quot({format_ring_expr(expr.base)}; {rels})"
    if isinstance(expr, LocElement):
        return f"Loc({format_ring_expr(expr.base)}; {format_polynomial(expr.element)})"
    if isinstance(expr, LocSubringComplement):
        gens = ", ".join(format_polynomial(p) for p in expr.subring_generators)
        return f"LocSub({format_ring_expr(expr.base)}; {gens})"
    if isinstance(expr, Tensor):
        legs = ", ".join(format_ring_expr(leg) for leg in expr.legs)
        return f"Tensor({legs}; {format_field(expr.over)})"
    if isinstance(expr, FracField):
        return f"Frac({format_ring_expr(expr.base)})"
    raise TypeError(f"unknown expression {expr!r}")
