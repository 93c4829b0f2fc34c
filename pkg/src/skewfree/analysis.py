"""Structural probes on a free skew extension.

Megainjectivity quantifies over every nonzero coefficient and every level r,
so the probes here are semi-decisions: a returned witness is a proof, while
"nothing found" only covers the sampled regime, which the verdict records.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from typing import Optional

from .errors import NonzeroDerivation, SkewError, Unsupported
from .linalg import field_solve, solve_right_dependence
from .rings import Integers, IntegersMod, Poly, Rationals, RingElem, TruncPoly
from .skewpoly import NEG_INF, SkewPoly, deg, random_skewpoly
from .structure import (
    Extension,
    diag_is_automorphism,
    diag_is_injective,
    sigma_power,
)
from .words import DEFAULT_WORD_CAP, Word, word_from_index

DEFAULT_RANDOM_SAMPLES = 32


def _q(text: str) -> str:
    """Record value: bare when it has no spaces, JSON-quoted otherwise."""
    return json.dumps(text) if (" " in text or '"' in text) else text


# -- verdicts ----------------------------------------------------------------

@dataclass(frozen=True)
class DependenceWitness:
    """sigma^(r)(a) b = 0 with a != 0 and b != 0."""

    a: RingElem
    r: int
    b: tuple
    method: str = "solver"

    def verify(self, ext: Extension) -> bool:
        return bool(self.a) and any(self.b) and not any(sigma_power(ext.sigma, self.a, self.r).apply(self.b))

    def records(self) -> str:
        return f"verdict=DependenceWitness a={_q(str(self.a))} r={self.r} b={_q(','.join(map(str, self.b)))} method={self.method}"

    def __str__(self):
        return f"DependenceWitness(a={self.a}, r={self.r}, b=({', '.join(map(str, self.b))}))"


@dataclass(frozen=True)
class NoDependenceFound:
    r_max: int
    samples: str
    certificate: Optional[str] = None

    def records(self) -> str:
        cert = self.certificate or "none"
        return f"verdict=NoDependenceFound r_max={self.r_max} samples={_q(self.samples)} certificate={_q(cert)}"

    def __str__(self):
        tail = f"; structurally certified: {self.certificate}" if self.certificate else ""
        return f"NoDependenceFound(r_max={self.r_max}, samples={self.samples}{tail})"


@dataclass(frozen=True)
class PrimeCertified:
    method: str
    exact: bool
    witnesses: tuple = ()

    def records(self) -> str:
        return f"verdict=PrimeCertified exact={str(self.exact).lower()} pairs={len(self.witnesses)} method={_q(self.method)}"

    def __str__(self):
        kind = "exact" if self.exact else "sampled"
        return f"PrimeCertified({kind}: {self.method}; {len(self.witnesses)} witnessed pairs)"


@dataclass(frozen=True)
class NotPrime:
    a: RingElem
    b: RingElem
    evidence: str

    def records(self) -> str:
        return f"verdict=NotPrime a={_q(str(self.a))} b={_q(str(self.b))} evidence={_q(self.evidence)}"

    def __str__(self):
        return f"NotPrime(a={self.a}, b={self.b}; {self.evidence})"


@dataclass(frozen=True)
class Inconclusive:
    reason: str

    def records(self) -> str:
        return f"verdict=Inconclusive reason={_q(self.reason)}"

    def __str__(self):
        return f"Inconclusive({self.reason})"


@dataclass(frozen=True)
class Unit:
    inverse: SkewPoly

    def __str__(self):
        return f"Unit(inverse={self.inverse})"


@dataclass(frozen=True)
class NotUnit:
    reason: str

    def __str__(self):
        return f"NotUnit({self.reason})"


@dataclass(frozen=True)
class NotUnitCertified:
    degree_bound: int
    reason: str

    def __str__(self):
        return f"NotUnitCertified(no inverse up to degree {self.degree_bound}; {self.reason})"


@dataclass(frozen=True)
class DegreeDropPair:
    """f = a, g = sum w_j b_j with deg(f g) < r when delta != 0."""

    f: SkewPoly
    g: SkewPoly
    r: int


# -- sampling -----------------------------------------------------------------

def sample_coefficients(ext: Extension, seed: int = 0, count: int = DEFAULT_RANDOM_SAMPLES,
                        degree: int = 3) -> list:
    """Ring generators, entries of the sigma/delta generator images, then random elements."""
    ring = ext.ring
    out = []
    seen = set()

    def add(x):
        if x and x not in seen:
            seen.add(x)
            out.append(x)

    for g in ring.generators():
        add(g)
    for img in ext.sigma.gen_images.values():
        for row in img.to_rows():
            for x in row:
                add(x)
    for vec in ext.delta.gen_images.values():
        for x in vec:
            add(x)
    rng = random.Random(seed)
    for _ in range(count):
        add(ring.random_element(rng, degree))
    if not out:
        add(ring.one())
    return out


# -- megainjectivity ------------------------------------------------------------

def structural_certificate(ext: Extension) -> Optional[str]:
    """A reason why sigma is megainjective for all a and r, if one applies.

    Over a field every sigma^(r)(a), a != 0, is invertible.  Over a domain a
    triangular sigma with injective diagonal maps gives triangular
    sigma^(r)(a) with nonzero diagonal.
    """
    ring, sigma = ext.ring, ext.sigma
    if ring.is_field:
        return "coefficients form a field"
    if ring.is_domain() and sigma.is_upper_triangular():
        if all(diag_is_injective(sigma, i) is True for i in range(1, ext.n + 1)):
            return "domain with triangular sigma and injective diagonal maps"
    return None


def _random_dependence(m, rng, tries: int = 2000):
    ring = m.ring
    for _ in range(tries):
        b = [ring.random_element(rng, 2) if rng.random() < 0.7 else ring.zero() for _ in range(m.cols)]
        if any(b) and not any(m.apply(b)):
            return b
    return None


def megainjective_probe(ext: Extension, r_max: int = 3, seed: int = 0,
                        samples: int = DEFAULT_RANDOM_SAMPLES, cap: int = DEFAULT_WORD_CAP):
    """Search for a, r, b with sigma^(r)(a) b = 0 (a, b nonzero)."""
    ring, sigma = ext.ring, ext.sigma
    if not ring.is_domain():
        pair = ring.zero_divisor_pair()
        if pair is not None:
            a, c = pair
            sc = sigma(c)
            if sc.is_zero():
                b = [ring.zero()] * ext.n
                b[0] = ring.one()
                w = DependenceWitness(c, 1, tuple(b), "sigma kills a nonzero element")
            else:
                j = next(j for j in range(ext.n) if any(sc.column(j)))
                w = DependenceWitness(a, 1, tuple(sc.column(j)), "zero-divisor pair of R")
            assert w.verify(ext)
            return w
    coeffs = sample_coefficients(ext, seed, samples)
    rng = random.Random(seed)
    for r in range(1, r_max + 1):
        for a in coeffs:
            m = sigma_power(sigma, a, r, cap)
            try:
                b = solve_right_dependence(m)
                method = "solver"
            except Unsupported:
                b = _random_dependence(m, rng)
                method = "random search"
            if b is not None:
                w = DependenceWitness(a, r, tuple(b), method)
                assert w.verify(ext)
                return w
    desc = f"{len(coeffs)} coefficients (seed {seed})"
    return NoDependenceFound(r_max, desc, structural_certificate(ext))


def witness_polynomials(ext: Extension, w: DependenceWitness):
    """f = a and g = sum_j w_j b_j over the lex listing of words of length r."""
    f = SkewPoly.constant(ext, w.a)
    terms = {}
    for j, bj in enumerate(w.b, start=1):
        if bj:
            terms[word_from_index(j, w.r, ext.n)] = bj
    return f, SkewPoly(ext, terms)


def zero_divisor_from_witness(ext: Extension, w: DependenceWitness):
    """Zero divisors (f, g) built from a dependence witness when delta = 0."""
    f, g = witness_polynomials(ext, w)
    if not ext.delta.is_zero():
        raise NonzeroDerivation("delta != 0: the witness only gives a degree drop",
                                DegreeDropPair(f, g, w.r))
    if not f or not g or (f * g):
        raise SkewError(f"witness {w} does not yield zero divisors")
    return f, g


# -- degree additivity ----------------------------------------------------------

@dataclass
class DegreeDrop:
    f: SkewPoly
    g: SkewPoly
    expected: int
    actual: object
    witness: Optional[DependenceWitness]


@dataclass
class AdditivityReport:
    samples: int
    drops: list = field(default_factory=list)
    violations: list = field(default_factory=list)
    unexplained: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations and not self.unexplained

    def __str__(self):
        return (f"degree additivity: {self.samples} pairs, {len(self.drops)} drops, "
                f"{len(self.violations)} violations, {len(self.unexplained)} unexplained")


def _top_vector(g: SkewPoly, r: int) -> list:
    if r == 0:
        return [g.coeff(())]
    n = g.ext.n
    return [g.coeff(word_from_index(j, r, n)) for j in range(1, n ** r + 1)]


def explain_drop(ext: Extension, f: SkewPoly, g: SkewPoly) -> Optional[DependenceWitness]:
    """A dependence witness read off the top coefficients of f and g.

    The top component of f g is sum over top words v of f of
    v * sum_i w_i (sigma^(r)(b_v) c)_i with c the top coefficient vector of g,
    so a drop forces sigma^(r)(b_v) c = 0 for each top b_v.
    """
    r = deg(g)
    c = _top_vector(g, r)
    top = [a for w, a in f.terms.items() if len(w) == deg(f)]
    for a in top:
        if r == 0:
            if not a * c[0]:
                return DependenceWitness(a, 0, tuple(c), "zero divisors in R")
            continue
        w = DependenceWitness(a, r, tuple(c), "leading coefficients")
        if w.verify(ext):
            return w
    return None


def degree_additivity_check(ext: Extension, samples: int = 200, seed: int = 0,
                            max_deg: int = 2, pairs=None) -> AdditivityReport:
    """deg(fg) <= deg f + deg g always; every strict drop must come from a dependence."""
    rng = random.Random(seed)
    if pairs is None:
        pairs = []
        # the structured pairs (generator, variable) host the textbook drops
        for a in sample_coefficients(ext, seed, 0):
            for j in range(1, ext.n + 1):
                pairs.append((SkewPoly.constant(ext, a), SkewPoly.var(ext, j)))
        while len(pairs) < samples:
            pairs.append((random_skewpoly(ext, rng, max_deg), random_skewpoly(ext, rng, max_deg)))
    report = AdditivityReport(len(pairs))
    for f, g in pairs:
        if not f or not g:
            continue
        expected = deg(f) + deg(g)
        actual = deg(f * g)
        if actual > expected:
            report.violations.append((f, g))
        elif actual < expected:
            w = explain_drop(ext, f, g)
            report.drops.append(DegreeDrop(f, g, expected, actual, w))
            if w is None:
                report.unexplained.append((f, g))
    return report


# -- primeness -----------------------------------------------------------------

def _ring_basis(ring):
    """Elements spanning R additively, for finite-rank rings; None otherwise."""
    if isinstance(ring, (IntegersMod, Integers, Rationals)):
        return [ring.one()]
    if isinstance(ring, TruncPoly):
        return [ring.t() ** i for i in range(ring.k)]
    return None


def _monomial_samples(ring, degree: int = 2) -> list:
    if isinstance(ring, TruncPoly):
        return [ring.t() ** i for i in range(ring.k)]
    if isinstance(ring, Poly):
        nv = len(ring.vars)
        return [ring.monomial(e) for d in range(degree + 1)
                for e in itertools.product(range(d + 1), repeat=nv) if sum(e) == d]
    return [ring.one()]


def _word_search(ext: Extension, a: RingElem, b: RingElem, degree_bound: int):
    """Deglex-first word w, |w| <= bound, with sigma_w(a) b != 0.

    Words are explored level by level on the distinct values of sigma_w(a),
    so repeated orbit values are pruned.
    """
    n = ext.n
    level = {a: ()}
    for length in range(degree_bound + 1):
        for value, letters in sorted(level.items(), key=lambda kv: kv[1]):
            if value * b:
                return Word(letters, n)
        if length == degree_bound:
            break
        nxt = {}
        for value, letters in sorted(level.items(), key=lambda kv: kv[1]):
            for j in range(1, n + 1):
                img = ext.sigma.diag(j, value)
                if img and img not in nxt:
                    nxt[img] = letters + (j,)
        if not nxt:
            break
        level = nxt
    return None


def prime_probe(ext: Extension, degree_bound: int = 4, seed: int = 0,
                samples: int = 8):
    """Test the criterion "a S b != 0 for all nonzero a, b" for triangular sigma."""
    sigma, ring = ext.sigma, ext.ring
    if not sigma.is_upper_triangular():
        return Inconclusive("precondition unverified: sigma is not upper triangular "
                            "(a triangularizing conjugation would give an isomorphic presentation)")
    bad = [i for i in range(1, ext.n + 1) if diag_is_automorphism(sigma, i) is not True]
    if bad:
        return Inconclusive(f"precondition unverified: diagonal maps {bad} not shown to be automorphisms")
    if ring.is_domain():
        return PrimeCertified("R is a domain, so a*1*b = ab != 0 for all nonzero a, b", True)
    if sigma.is_scalar() and ext.delta.is_zero():
        # a w = w a, so a S b = 0 exactly when a b = 0
        pair = ring.zero_divisor_pair()
        basis = _ring_basis(ring)
        if pair is not None and basis is not None:
            a, b = pair
            if all(not (a * c * b) for c in basis):
                return NotPrime(a, b, f"scalar sigma, delta = 0: a*c*b = 0 for all {len(basis)} basis elements c")
    # basis monomials first: pairs like (t^(k-1), t) are the usual obstructions
    coeffs = list(dict.fromkeys(_monomial_samples(ring) + sample_coefficients(ext, seed, samples)))
    witnesses = []
    for a, b in itertools.product(coeffs, repeat=2):
        w = _word_search(ext, a, b, degree_bound)
        if w is None:
            return Inconclusive(f"sigma_w({a})*{b} = 0 for all |w| <= {degree_bound}")
        witnesses.append((a, b, w))
    return PrimeCertified(f"sigma_w(a)*b != 0 found for {len(witnesses)} sampled pairs", False, tuple(witnesses))


@dataclass
class TransferReport:
    zero_delta: object
    full: object

    @property
    def skipped(self) -> bool:
        return not isinstance(self.zero_delta, PrimeCertified)

    @property
    def passed(self) -> bool:
        return self.skipped or not isinstance(self.full, NotPrime)

    def __str__(self):
        state = "skipped" if self.skipped else ("pass" if self.passed else "FAIL")
        return f"graded transfer {state}: delta=0 -> {self.zero_delta}; delta -> {self.full}"


def graded_transfer_check(ext: Extension, degree_bound: int = 4, seed: int = 0) -> TransferReport:
    """Primeness with delta = 0 must not be refuted once delta is switched back on."""
    return TransferReport(prime_probe(ext.with_delta(), degree_bound, seed),
                          prime_probe(ext, degree_bound, seed))


# -- units ---------------------------------------------------------------------------

def _coefficient_basis(ring, bound: int):
    """An F-basis of the coefficients allowed in the inverse search, or None."""
    if ring.is_field:
        return [ring.one()], ring
    if isinstance(ring, TruncPoly) and ring.base.is_field:
        return [ring.t() ** i for i in range(ring.k)], ring.base
    if isinstance(ring, Poly):
        nv = len(ring.vars)
        exps = [e for d in range(bound + 1) for e in itertools.product(range(d + 1), repeat=nv) if sum(e) == d]
        return [ring.monomial(e) for e in exps], ring.base
    return None


def _right_inverse(f: SkewPoly, degree_bound: int):
    ext = f.ext
    ring = ext.ring
    basis = _coefficient_basis(ring, degree_bound)
    if basis is None:
        return None, f"no linear inverse search over {ring}"
    elems, field_ = basis
    columns = []
    unknowns = []
    for k in range(degree_bound + 1):
        for letters in itertools.product(range(1, ext.n + 1), repeat=k):
            fw = f * SkewPoly.monomial(ext, letters)
            for e in elems:
                col = {}
                for u, c in (fw * e).terms.items():
                    for exps, val in ring.monomials(c.value):
                        col[(u.letters, exps)] = field_.elem(val)
                columns.append(col)
                unknowns.append((letters, e))
    keys = sorted({k for col in columns for k in col}, key=lambda k: (len(k[0]), k))
    one_key = ((), next(iter(ring.monomials(ring.one().value)))[0])
    if one_key not in keys:
        return None, "no product f*g with deg g <= bound has a constant term"
    rows = [[col.get(k, field_.zero()) for col in columns] for k in keys]
    rhs = [field_.one() if k == one_key else field_.zero() for k in keys]
    x = field_solve(rows, rhs, len(columns), field_)
    if x is None:
        return None, "linear system inconsistent"
    g = SkewPoly.zero(ext)
    for (letters, e), lam in zip(unknowns, x):
        if lam:
            g = g + SkewPoly.monomial(ext, letters, e * ring.embed_base(lam.value))
    return g, ""


def unit_probe(ext: Extension, f: SkewPoly, degree_bound: int = 3):
    if not f:
        return NotUnit("zero is not a unit")
    ring = ext.ring
    d = deg(f)
    if d == 0:
        inv = ring.try_invert(f.constant_term())
        if inv is not None:
            return Unit(SkewPoly.constant(ext, inv))
    cert = structural_certificate(ext)
    if cert is not None and ring.is_domain():
        # deg is a degree function here, so units have degree 0
        if d > 0:
            return NotUnit(f"degree {d} > 0 and deg is additive ({cert})")
        return NotUnit(f"constant {f.constant_term()} is not a unit of R and units of S lie in R ({cert})")
    g, why = _right_inverse(f, degree_bound)
    if g is None:
        return NotUnitCertified(degree_bound, why)
    if g * f == SkewPoly.one(ext):
        return Unit(g)
    return NotUnitCertified(degree_bound, f"right inverse {g} found but it is not a left inverse")


def deg_text(x) -> str:
    return "-inf" if x == NEG_INF else str(x)
