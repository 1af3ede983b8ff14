from __future__ import annotations

import random

from hypothesis import settings

from ringdim import Polynomial, PolynomialRing

settings.register_profile("ci", max_examples=60, deadline=None)
settings.load_profile("ci")


def random_polynomial(
    rng: random.Random,
    ring: PolynomialRing,
    max_degree: int = 3,
    max_terms: int = 4,
    nonzero: bool = False,
) -> Polynomial:
    """Small sparse polynomial with coefficients the field builds from ints."""
    while True:
        terms = {}
        for _ in range(rng.randint(0 if not nonzero else 1, max_terms)):
            exps = [0] * ring.arity
            degree = rng.randint(0, max_degree)
            for _ in range(degree):
                if ring.arity:
                    exps[rng.randrange(ring.arity)] += 1
            coeff = ring.field.from_int(rng.choice([-3, -2, -1, 1, 1, 2, 3]))
            key = tuple(exps)
            terms[key] = ring.field.add(terms.get(key, ring.field.zero), coeff)
        p = Polynomial(ring, terms)
        if not nonzero or not p.is_zero():
            return p
