"""Monomial orders on exponent vectors.

Monomials are plain tuples of non-negative integers, one entry per ring
variable.  Every order here is global (the unit monomial is minimal) and
multiplicative (u < v implies uw < vw), which is what the Groebner engine
relies on.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key

from .errors import ArityMismatchError


def _sign(a: int, b: int) -> int:
    return (a > b) - (a < b)


def _grevlex(u: tuple[int, ...], v: tuple[int, ...]) -> int:
    du, dv = sum(u), sum(v)
    if du != dv:
        return _sign(du, dv)
    # ties broken by the rightmost differing exponent, smaller entry wins
    for a, b in zip(reversed(u), reversed(v)):
        if a != b:
            return _sign(b, a)
    return 0


@dataclass(frozen=True)
class Lex:
    """Pure lexicographic order; the first variable is strongest."""

    def compare(self, u: tuple[int, ...], v: tuple[int, ...]) -> int:
        for a, b in zip(u, v):
            if a != b:
                return _sign(a, b)
        return 0


@dataclass(frozen=True)
class GrevLex:
    """Graded reverse lexicographic order."""

    def compare(self, u: tuple[int, ...], v: tuple[int, ...]) -> int:
        return _grevlex(u, v)


@dataclass(frozen=True)
class BlockElimination:
    """Elimination order for the variables whose indices lie in ``block``.

    Any monomial touching a block variable sorts above every block-free
    monomial; inside each part the tie-break is grevlex.  Computing a basis
    under this order makes the block-free basis elements generate the
    elimination ideal.
    """

    block: frozenset[int]

    def compare(self, u: tuple[int, ...], v: tuple[int, ...]) -> int:
        ub = tuple(e if i in self.block else 0 for i, e in enumerate(u))
        vb = tuple(e if i in self.block else 0 for i, e in enumerate(v))
        c = _grevlex(ub, vb)
        if c:
            return c
        ur = tuple(e if i not in self.block else 0 for i, e in enumerate(u))
        vr = tuple(e if i not in self.block else 0 for i, e in enumerate(v))
        return _grevlex(ur, vr)


LEX = Lex()
GREVLEX = GrevLex()

MonomialOrder = Lex | GrevLex | BlockElimination


def compare(u: tuple[int, ...], v: tuple[int, ...], order: MonomialOrder) -> int:
    """Total-order comparison of two exponent vectors of equal arity."""
    if len(u) != len(v):
        raise ArityMismatchError(f"cannot compare arities {len(u)} and {len(v)}")
    return order.compare(u, v)


def monomial_key(order: MonomialOrder):
    """Sort key turning an order into something usable with sorted()/max()."""
    return cmp_to_key(order.compare)
