"""Explicit prime-ideal chains as machine-checkable lower-bound certificates.

Given an affine algebra A, a base chain of primes, and elements t_1..t_n of
A that are algebraically independent over the coefficient field, adjoining
fresh indeterminates X_i and the relations X_i - t_i extends the chain one
strict step per witness.  Every step carries three pieces of evidence:

  * strictness  -- a generator of the next link with nonzero normal form
                   modulo the previous one;
  * avoidance   -- the link meets the pure-X subring only in zero, checked
                   by elimination (and, as a second independent route, by
                   evaluating X_i at t_i and testing membership);
  * primality   -- a substitution-transfer certificate: killing X_i - t_i
                   is an isomorphism onto the base quotient, so primality
                   travels down to the base prime's own certificate.

A fully verified chain of k strict steps certifies dimension >= k for the
ring localized away from the pure-X polynomials, which is exactly the lower
bound the tensor rules consume.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .dimension import AffineAlgebra
from .errors import CertificateError
from .fields import CoefficientField
from .ideals import Budget, IdealPresentation, eliminate
from .polynomials import Polynomial, PolynomialRing


@dataclass(frozen=True)
class PrimalityCertificate:
    """Supported primality evidence.

    kind is one of:
      zero-ideal-in-domain   -- the zero ideal of a polynomial ring
      principal-irreducible  -- one generator plus irreducibility evidence
      substitution-transfer  -- base prime plus relations X_i - t_i
      asserted               -- caller-supplied, always flagged in reports
    """

    kind: str
    base_prime: IdealPresentation | None = None
    substitutions: tuple[tuple[int, Polynomial], ...] = ()  # (variable index, value)
    generator: Polynomial | None = None
    note: str = ""

    KINDS = ("zero-ideal-in-domain", "principal-irreducible", "substitution-transfer", "asserted")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise CertificateError(f"unknown primality certificate kind {self.kind!r}")

    @property
    def flagged(self) -> bool:
        return self.kind == "asserted"


@dataclass(frozen=True)
class ChainStepEvidence:
    strictness_witness: Polynomial | None  # None only for the first link
    avoidance_checked: bool
    primality: PrimalityCertificate


@dataclass(frozen=True)
class ChainCertificate:
    ring: PolynomialRing
    links: tuple[IdealPresentation, ...]
    evidence: tuple[ChainStepEvidence, ...]
    witness_variables: tuple[str, ...]  # the adjoined X_i
    witnesses: tuple[Polynomial, ...]  # the t_i, as elements of the extended ring

    def length(self) -> int:
        return len(self.links) - 1


def verify_algebraic_independence(A: AffineAlgebra, elements: Sequence[Polynomial], budget: Budget | None = None) -> bool:
    """True when no nonzero polynomial relation over the coefficient field
    holds among the elements in A: the kernel of K[W] -> A is zero,
    computed by eliminating A's variables from I + (W_i - t_i)."""
    if not elements:
        return True
    ring = A.ring
    tags = []
    taken = set(ring.variables) | set(getattr(ring.field, "function_variables", ()))
    for k in range(len(elements)):
        name = f"indepvar{k}"
        if name in taken:
            raise CertificateError("tag variable collision")
        tags.append(name)
    ext = ring.extend(tuple(tags))
    var_map = {i: i for i in range(ring.arity)}
    gens = [g.map_to(ext, var_map) for g in A.presentation.generators if not g.is_zero()]
    for k, t in enumerate(elements):
        if t.ring != ring:
            raise CertificateError("witness outside the algebra's ring")
        gens.append(ext.variable(ring.arity + k) - t.map_to(ext, var_map))
    ideal = IdealPresentation(ext, gens) if gens else IdealPresentation.zero_ideal(ext)
    contracted = eliminate(ideal, tags, budget)
    return contracted.is_zero_ideal(budget)


def build_chain(
    A: AffineAlgebra,
    base_chain: Sequence[IdealPresentation],
    witnesses: Sequence[Polynomial],
    fresh_variables: Sequence[str],
    base_certificates: Sequence[PrimalityCertificate] | None = None,
    budget: Budget | None = None,
) -> ChainCertificate:
    """Extend a strictly ascending chain of primes of A by one link per
    witness, adjoining X_i - t_i in A[X_1..X_n].

    The base chain's primality certificates are taken as given (or asserted);
    each new link gets a substitution-transfer certificate referring to the
    top base prime.  Strictness of every step is verified on the spot.
    """
    if len(witnesses) != len(fresh_variables):
        raise ValueError("one fresh variable per witness")
    if not base_chain:
        raise ValueError("base chain must contain at least one prime (possibly the zero ideal)")
    ring = A.ring
    for name in fresh_variables:
        if name in ring.variables:
            raise ValueError(f"fresh variable {name} already in the ring")
    for t in witnesses:
        if t.ring != ring:
            raise ValueError("witnesses must be elements of the algebra's ring")
    if base_certificates is None:
        base_certificates = []
        for link in base_chain:
            if link.is_zero_ideal(budget):
                base_certificates.append(PrimalityCertificate("zero-ideal-in-domain"))
            else:
                base_certificates.append(PrimalityCertificate("asserted", note="base chain prime taken as given"))
    if len(base_certificates) != len(base_chain):
        raise ValueError("one certificate per base link")

    ext = ring.extend(tuple(fresh_variables))
    var_map = {i: i for i in range(ring.arity)}
    lifted_witnesses = tuple(t.map_to(ext, var_map) for t in witnesses)

    def lift_link(link: IdealPresentation) -> list[Polynomial]:
        if link.ring != ring:
            raise ValueError("base chain links must live in the algebra's ring")
        gens = [g.map_to(ext, var_map) for g in link.generators if not g.is_zero()]
        # the algebra's own relations are part of every link upstairs
        gens += [g.map_to(ext, var_map) for g in A.presentation.generators if not g.is_zero()]
        return gens

    links: list[IdealPresentation] = []
    evidence: list[ChainStepEvidence] = []
    for link, cert in zip(base_chain, base_certificates):
        gens = lift_link(link)
        links.append(IdealPresentation(ext, gens) if gens else IdealPresentation.zero_ideal(ext))
        evidence.append(ChainStepEvidence(None, False, cert))

    top_base = links[len(base_chain) - 1]
    relations: list[Polynomial] = []
    substitutions: list[tuple[int, Polynomial]] = []
    for k, (name, t_ext) in enumerate(zip(fresh_variables, lifted_witnesses)):
        idx = ring.arity + k
        relations.append(ext.variable(idx) - t_ext)
        substitutions.append((idx, t_ext))
        gens = [g for g in top_base.generators if not g.is_zero()] + list(relations)
        links.append(IdealPresentation(ext, gens))
        cert = PrimalityCertificate(
            "substitution-transfer",
            base_prime=top_base,
            substitutions=tuple(substitutions),
        )
        evidence.append(ChainStepEvidence(None, False, cert))

    # verify strictness and record witnesses
    checked: list[ChainStepEvidence] = [evidence[0]]
    for i in range(1, len(links)):
        witness = _strictness_witness(links[i], links[i - 1], budget)
        if witness is None:
            raise CertificateError(f"chain step {i} is not strict")
        checked.append(ChainStepEvidence(witness, False, evidence[i].primality))

    cert = ChainCertificate(ext, tuple(links), tuple(checked), tuple(fresh_variables), lifted_witnesses)
    if not verify_avoidance(cert, fresh_variables, budget=budget):
        raise CertificateError("chain meets the multiplicative set: avoidance failed")
    verified = tuple(
        ChainStepEvidence(e.strictness_witness, True, e.primality) for e in cert.evidence
    )
    return ChainCertificate(ext, tuple(links), verified, tuple(fresh_variables), lifted_witnesses)


def _strictness_witness(bigger: IdealPresentation, smaller: IdealPresentation, budget: Budget | None) -> Polynomial | None:
    """First generator of the bigger link (canonical scan order) with
    nonzero normal form modulo the smaller link."""
    for g in sorted(bigger.generators, key=Polynomial.sort_key):
        if g.is_zero():
            continue
        if not smaller.contains(g, budget=budget):
            return g
    return None


def verify_strictness(cert: ChainCertificate, budget: Budget | None = None) -> bool:
    for i in range(1, len(cert.links)):
        w = cert.evidence[i].strictness_witness
        if w is None:
            return False
        if not cert.links[i].contains(w, budget=budget):
            return False
        if cert.links[i - 1].contains(w, budget=budget):
            return False
    return True


def verify_avoidance(
    cert: ChainCertificate,
    t_variables: Sequence[str],
    base: CoefficientField | None = None,
    budget: Budget | None = None,
) -> bool:
    """Every link meets the polynomial subring on the adjoined variables
    only in zero; computed by elimination onto those variables."""
    if base is not None and base != cert.ring.field:
        raise CertificateError("multiplicative-set base field does not match the chain ring")
    for link in cert.links:
        if link.is_zero_ideal(budget):
            continue
        if link.is_unit_ideal(budget):
            return False
        contracted = eliminate(link, t_variables, budget)
        if not contracted.is_zero_ideal(budget):
            return False
    return True


def verify_avoidance_by_evaluation(cert: ChainCertificate, budget: Budget | None = None) -> bool:
    """Second, independent route to avoidance: substituting X_i -> t_i must
    send every link into the top base prime, and the witnesses must be
    algebraically independent, so a nonzero pure-X member would evaluate to
    a nonzero element of the base prime inside the multiplicative set."""
    ring = cert.ring
    n_base = ring.arity - len(cert.witness_variables)
    substitution = {
        n_base + k: t for k, t in enumerate(cert.witnesses)
    }
    base_top = None
    for link, e in zip(cert.links, cert.evidence):
        if e.primality.kind == "substitution-transfer":
            base_top = e.primality.base_prime
            break
    if base_top is None:
        base_top = cert.links[-1]
    for link in cert.links:
        for g in link.generators:
            image = g.substitute(substitution)
            if not base_top.contains(image, budget=budget):
                return False
    base_ring_names = ring.variables[:n_base]
    base_ring = PolynomialRing(ring.field, base_ring_names, unchecked=True)
    down_map = {i: i for i in range(n_base)}
    algebra = AffineAlgebra(
        IdealPresentation(base_ring, [g.map_to(base_ring, down_map) for g in base_top.generators])
        if not base_top.is_zero_ideal(budget)
        else IdealPresentation.zero_ideal(base_ring)
    )
    lowered = []
    for t in cert.witnesses:
        if not t.support() <= set(range(n_base)):
            return False
        lowered.append(t.map_to(base_ring, down_map))
    return verify_algebraic_independence(algebra, lowered, budget)


def verify_substitution_transfer(cert: PrimalityCertificate, extended: IdealPresentation, budget: Budget | None = None) -> bool:
    """Soundness of the transfer step: each substituted variable must not
    appear in its value, each relation X_i - t_i must die under the
    evaluation map, and every generator of the extended ideal must land in
    the base prime."""
    if cert.kind != "substitution-transfer":
        raise CertificateError("not a substitution-transfer certificate")
    if cert.base_prime is None:
        raise CertificateError("substitution-transfer needs a base prime")
    ring = extended.ring
    subs = dict(cert.substitutions)
    for idx, value in cert.substitutions:
        if value.ring != ring:
            raise CertificateError("substitution value in the wrong ring")
        if any(i in subs for i in value.support()):
            raise CertificateError("substitution value mentions a substituted variable")
    for g in extended.generators:
        image = g.substitute(subs)
        if not cert.base_prime.contains(image, budget=budget):
            return False
    for idx, value in cert.substitutions:
        relation = ring.variable(idx) - value
        if not relation.substitute(subs).is_zero():
            return False
    return True


def verify_chain(cert: ChainCertificate, budget: Budget | None = None) -> dict[str, bool]:
    """Run every verification step; the lower bound is only available when
    all of them pass."""
    results = {
        "strictness": verify_strictness(cert, budget),
        "avoidance": verify_avoidance(cert, cert.witness_variables, budget=budget),
        "substitution_transfer": True,
        "evaluation_witness": True,
    }
    for link, e in zip(cert.links, cert.evidence):
        if e.primality.kind == "substitution-transfer":
            if not verify_substitution_transfer(e.primality, link, budget):
                results["substitution_transfer"] = False
    try:
        results["evaluation_witness"] = verify_avoidance_by_evaluation(cert, budget)
    except CertificateError:
        results["evaluation_witness"] = False
    return results


def certified_lower_bound(cert: ChainCertificate, budget: Budget | None = None) -> int:
    """Length of a fully verified chain: a dimension lower bound for the
    ring localized at the polynomials in the adjoined variables.  Refuses
    to emit a number if any verification step fails."""
    results = verify_chain(cert, budget)
    failed = [name for name, ok in results.items() if not ok]
    if failed:
        raise CertificateError(f"chain verification failed: {', '.join(failed)}")
    return cert.length()
