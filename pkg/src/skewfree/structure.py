"""Ring homomorphisms R -> M_n(R), right sigma-derivations R -> R^n and the
extension data (R, n, sigma, delta) they define.

Both maps are stored by their values on the ring generators and extended
algorithmically: sigma by substitution, delta by the right Leibniz rule
``delta(t p) = delta(t) sigma(p) + t delta(p)``.  Scalars of the prime
subring are forced: ``sigma(c) = c I`` and ``delta(c) = 0``.
"""

from __future__ import annotations

import itertools
import random
import threading
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import CapExceeded, DomainError, InvalidStructure, NotTriangular
from .linalg import RingMatrix, determinant
from .rings import Integers, IntegersMod, Poly, Rationals, Ring, RingElem, TruncPoly
from .words import DEFAULT_WORD_CAP, Word

DEFAULT_SAMPLE_BUDGET = 64
DEFAULT_NILPOTENCE_CAP = 64


def _exp_unit(nvars: int, i: int) -> tuple:
    return tuple(1 if k == i else 0 for k in range(nvars))


class SigmaHom:
    """A ring homomorphism sigma: R -> M_n(R) given on ring generators."""

    def __init__(self, ring: Ring, n: int, gen_images: Optional[dict] = None, validate: bool = True):
        if n < 1:
            raise DomainError("arity must be positive")
        self.ring = ring
        self.n = n
        images = {}
        gen_images = dict(gen_images or {})
        for name in gen_images:
            if name not in ring.gen_names:
                raise DomainError(f"{name!r} is not a generator of {ring}")
        for name, gen in zip(ring.gen_names, ring.generators()):
            img = gen_images.get(name)
            if img is None:
                img = RingMatrix.scalar(gen, n)
            elif not isinstance(img, RingMatrix):
                img = RingMatrix.from_rows(ring, img)
            if img.ring != ring or img.rows != n or img.cols != n:
                raise DomainError(f"sigma({name}) must be a {n}x{n} matrix over {ring}")
            images[name] = img
        self.gen_images = images
        self._images = [images[name] for name in ring.gen_names]
        self._mono_cache = {}
        self._cache = {}
        self._lock = threading.Lock()
        if validate:
            problem = self.structural_violation()
            if problem is not None:
                raise InvalidStructure(problem[0], problem[1])

    @classmethod
    def scalar(cls, ring: Ring, n: int) -> "SigmaHom":
        return cls(ring, n, {})

    def structural_violation(self):
        """Return ``(message, witness)`` if the generator images cannot define
        a homomorphism on R, else None."""
        imgs = self._images
        names = self.ring.gen_names
        for (i, a), (j, b) in itertools.combinations(enumerate(imgs), 2):
            if a * b != b * a:
                return (f"sigma({names[i]}) and sigma({names[j]}) do not commute",
                        (self.ring.generators()[i], self.ring.generators()[j]))
        if isinstance(self.ring, TruncPoly):
            k = self.ring.k
            if not (imgs[0] ** k).is_zero():
                t = self.ring.t()
                return (f"sigma({self.ring.var})^{k} != 0", (t ** (k - 1), t))
        return None

    def _monomial(self, exps: tuple) -> RingMatrix:
        m = self._mono_cache.get(exps)
        if m is None:
            m = RingMatrix.identity(self.ring, self.n)
            for img, e in zip(self._images, exps):
                if e:
                    m = m * (img ** e)
            self._mono_cache[exps] = m
        return m

    def __call__(self, a: RingElem) -> RingMatrix:
        if a.ring != self.ring:
            raise DomainError(f"{a} is not in {self.ring}")
        m = self._cache.get(a)
        if m is not None:
            return m
        ring = self.ring
        acc = RingMatrix.zeros(ring, self.n, self.n)
        for exps, c in ring.monomials(a.value):
            mono = self._monomial(exps) if any(exps) else RingMatrix.identity(ring, self.n)
            acc = acc + mono * ring.embed_base(c)
        with self._lock:
            if len(self._cache) > 50_000:
                self._cache.clear()
            self._cache[a] = acc
        return acc

    eval = __call__

    def entry(self, i: int, j: int, a: RingElem) -> RingElem:
        """sigma_ij(a) with 1-based indices."""
        return self(a)[i - 1, j - 1]

    def diag(self, i: int, a: RingElem) -> RingElem:
        return self(a)[i - 1, i - 1]

    def is_scalar(self) -> bool:
        return all(img == RingMatrix.scalar(g, self.n)
                   for img, g in zip(self._images, self.ring.generators()))

    def is_upper_triangular(self) -> bool:
        return all(not img[i, j] for img in self._images
                   for i in range(self.n) for j in range(i))

    def is_diagonal(self) -> bool:
        return all(not img[i, j] for img in self._images
                   for i in range(self.n) for j in range(self.n) if i != j)

    def __eq__(self, other):
        return (isinstance(other, SigmaHom) and self.ring == other.ring
                and self.n == other.n and self._images == other._images)

    def __hash__(self):
        return hash((self.ring, self.n, tuple(self._images)))

    def __repr__(self):
        body = ", ".join(f"{k} -> {v}" for k, v in self.gen_images.items()) or "scalar"
        return f"SigmaHom({body})"


class SigmaDerivation:
    """A right sigma-derivation delta: R -> R^n given on ring generators.

    ``inner`` records the vector c when built by :func:`delta_inner`.
    """

    def __init__(self, sigma: SigmaHom, gen_images: Optional[dict] = None,
                 inner: Optional[Sequence[RingElem]] = None, validate: bool = True):
        ring, n = sigma.ring, sigma.n
        self.sigma = sigma
        self.ring = ring
        self.n = n
        self.inner = tuple(inner) if inner is not None else None
        gen_images = dict(gen_images or {})
        for name in gen_images:
            if name not in ring.gen_names:
                raise DomainError(f"{name!r} is not a generator of {ring}")
        images = {}
        for name in ring.gen_names:
            vec = gen_images.get(name)
            if vec is None:
                vec = [ring.zero()] * n
            vec = [ring.coerce(x) for x in vec]
            if len(vec) != n:
                raise DomainError(f"delta({name}) must have {n} components")
            images[name] = tuple(vec)
        self.gen_images = images
        self._images = [images[name] for name in ring.gen_names]
        self._gens = ring.generators()
        self._mono_cache = {}
        self._cache = {}
        self._lock = threading.Lock()
        if validate:
            problem = self.structural_violation()
            if problem is not None:
                raise InvalidStructure(problem[0], problem[1])

    @classmethod
    def zero(cls, sigma: SigmaHom) -> "SigmaDerivation":
        return cls(sigma, {})

    def is_zero(self) -> bool:
        return not any(x for vec in self._images for x in vec)

    def structural_violation(self):
        ring, sigma = self.ring, self.sigma
        gens = self._gens
        names = ring.gen_names
        for i, j in itertools.combinations(range(len(gens)), 2):
            lhs = _vec_add(sigma(gens[j]).left_apply(self._images[i]),
                           [gens[i] * x for x in self._images[j]])
            rhs = _vec_add(sigma(gens[i]).left_apply(self._images[j]),
                           [gens[j] * x for x in self._images[i]])
            if lhs != rhs:
                return (f"delta is inconsistent on {names[i]}*{names[j]} = {names[j]}*{names[i]}",
                        (gens[i], gens[j]))
        if isinstance(ring, TruncPoly):
            if any(self._monomial((ring.k,))):
                t = ring.t()
                return (f"delta({ring.var}^{ring.k}) != 0", (t ** (ring.k - 1), t))
        return None

    def _monomial(self, exps: tuple) -> tuple:
        """delta of the formal monomial prod t_i^e_i."""
        v = self._mono_cache.get(exps)
        if v is not None:
            return v
        ring, n = self.ring, self.n
        i = next((k for k, e in enumerate(exps) if e), None)
        if i is None:
            v = tuple([ring.zero()] * n)
        else:
            rest = exps[:i] + (exps[i] - 1,) + exps[i + 1:]
            # delta(t_i * p) = delta(t_i) sigma(p) + t_i delta(p)
            sig = self.sigma._monomial(rest) if any(rest) else RingMatrix.identity(ring, n)
            first = sig.left_apply(self._images[i])
            second = [self._gens[i] * x for x in self._monomial(rest)]
            v = tuple(_vec_add(first, second))
        self._mono_cache[exps] = v
        return v

    def __call__(self, a: RingElem) -> list:
        if a.ring != self.ring:
            raise DomainError(f"{a} is not in {self.ring}")
        v = self._cache.get(a)
        if v is not None:
            return list(v)
        ring = self.ring
        if self.inner is not None:
            # inner: delta(a) = a c - c sigma(a)
            v = _vec_sub([a * c for c in self.inner], self.sigma(a).left_apply(self.inner))
        else:
            v = [ring.zero()] * self.n
            for exps, c in ring.monomials(a.value):
                if any(exps):
                    s = ring.embed_base(c)
                    v = _vec_add(v, [s * x for x in self._monomial(exps)])
        with self._lock:
            if len(self._cache) > 50_000:
                self._cache.clear()
            self._cache[a] = tuple(v)
        return list(v)

    eval = __call__

    def component(self, j: int, a: RingElem) -> RingElem:
        """delta_j(a), 1-based."""
        return self(a)[j - 1]

    def __eq__(self, other):
        return (isinstance(other, SigmaDerivation) and self.sigma == other.sigma
                and self._images == other._images)

    def __hash__(self):
        return hash((self.sigma, tuple(self._images)))

    def __repr__(self):
        if self.is_zero():
            return "SigmaDerivation(0)"
        body = ", ".join(f"{k} -> [{', '.join(map(str, v))}]" for k, v in self.gen_images.items())
        return f"SigmaDerivation({body})"


def _vec_add(u, v):
    return [a + b for a, b in zip(u, v)]


def _vec_sub(u, v):
    return [a - b for a, b in zip(u, v)]


@dataclass
class LawReport:
    law: str
    passed: bool
    checked: int
    counterexample: Optional[tuple] = None
    detail: str = ""

    def __str__(self):
        status = "pass" if self.passed else "FAIL"
        out = f"{self.law}: {status} ({self.checked} checks)"
        if self.counterexample is not None:
            out += " witness=(" + ", ".join(str(x) for x in self.counterexample) + ")"
        if self.detail:
            out += f" {self.detail}"
        return out


@dataclass
class Extension:
    """The data (R, n, sigma, delta) of a free skew extension."""

    ring: Ring
    n: int
    sigma: SigmaHom
    delta: SigmaDerivation
    validation: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if self.sigma.ring != self.ring or self.delta.ring != self.ring:
            raise DomainError("sigma, delta and the extension must share the ring")
        if self.sigma.n != self.n or self.delta.n != self.n:
            raise DomainError("sigma, delta and the extension must share the arity")
        if self.delta.sigma != self.sigma:
            raise DomainError("delta must be a derivation for this sigma")

    @classmethod
    def build(cls, ring: Ring, n: int, sigma_images=None, delta_images=None,
              inner=None, check_laws: bool = False, seed: int = 0) -> "Extension":
        sigma = SigmaHom(ring, n, sigma_images)
        if inner is not None:
            delta = delta_inner(sigma, [ring.coerce(c) for c in inner])
        else:
            delta = SigmaDerivation(sigma, delta_images)
        ext = cls(ring, n, sigma, delta)
        if check_laws:
            ext.run_validation(seed=seed)
        return ext

    def run_validation(self, budget: int = DEFAULT_SAMPLE_BUDGET, seed: int = 0) -> dict:
        hom = validate_hom(self.sigma, budget, seed)
        leib = validate_leibniz(self.delta, budget, seed)
        self.validation = {"hom": hom, "leibniz": leib}
        return self.validation

    def with_delta(self, delta: Optional[SigmaDerivation] = None) -> "Extension":
        """Same ring and sigma with another derivation (zero by default)."""
        return Extension(self.ring, self.n, self.sigma, delta or SigmaDerivation.zero(self.sigma))

    def __hash__(self):
        return hash((self.ring, self.n, self.sigma, self.delta))

    def __eq__(self, other):
        return (isinstance(other, Extension) and self.ring == other.ring and self.n == other.n
                and self.sigma == other.sigma and self.delta == other.delta)

    def __str__(self):
        return f"{self.ring}<x1..x{self.n}; {self.sigma!r}, {self.delta!r}>"


# -- operations ---------------------------------------------------------------

def sigma_eval(sigma: SigmaHom, a: RingElem) -> RingMatrix:
    return sigma(a)


def delta_eval(delta: SigmaDerivation, a: RingElem) -> list:
    return delta(a)


def delta_inner(sigma: SigmaHom, c: Sequence[RingElem]) -> SigmaDerivation:
    """The inner right sigma-derivation a -> a c - c sigma(a)."""
    ring = sigma.ring
    c = [ring.coerce(x) for x in c]
    if len(c) != sigma.n:
        raise DomainError(f"inner vector must have {sigma.n} entries")
    images = {}
    for name, g in zip(ring.gen_names, ring.generators()):
        images[name] = _vec_sub([g * x for x in c], sigma(g).left_apply(c))
    return SigmaDerivation(sigma, images, inner=c)


def sigma_power(sigma: SigmaHom, a: RingElem, r: int, cap: int = DEFAULT_WORD_CAP) -> RingMatrix:
    """sigma^(r)(a): replace each entry of sigma^(r-1)(a) by its n x n sigma-block."""
    if r < 1:
        raise DomainError("r must be positive")
    n = sigma.n
    if n ** r > cap:
        raise CapExceeded(f"sigma^({r}) has size {n}^{r} > cap {cap}")
    m = sigma(a)
    for _ in range(r - 1):
        size = m.rows
        new = [None] * (size * n) ** 2
        big = size * n
        for k in range(size):
            for l in range(size):
                block = sigma(m[k, l])
                for i in range(n):
                    for j in range(n):
                        new[(k * n + i) * big + (l * n + j)] = block[i, j]
        m = RingMatrix(sigma.ring, big, big, new)
    return m


def sigma_word(sigma: SigmaHom, w: Word, a: RingElem) -> RingElem:
    """sigma_w(a) = sigma_{j_r j_r}( ... sigma_{j_1 j_1}(a)) for w = x_{j_1}...x_{j_r}."""
    if not sigma.is_upper_triangular():
        raise NotTriangular("sigma_w needs an upper triangular sigma")
    for j in w.letters:
        a = sigma.diag(j, a)
    return a


def is_upper_triangular(sigma: SigmaHom) -> bool:
    return sigma.is_upper_triangular()


def _affine_parts(ring: Poly, image: RingElem):
    """(linear row, constant) if ``image`` has total degree <= 1, else None."""
    base = ring.base
    lin = [base.zero()] * len(ring.vars)
    const = base.zero()
    for exps, c in image.value:
        s = sum(exps)
        if s == 0:
            const = base.elem(c)
        elif s == 1:
            lin[exps.index(1)] = base.elem(c)
        else:
            return None
    return lin, const


def diag_is_automorphism(sigma: SigmaHom, i: int) -> Optional[bool]:
    """Whether sigma_ii is an automorphism of R; None when undecided."""
    if not sigma.is_upper_triangular():
        raise NotTriangular("diagonal maps are only endomorphisms for triangular sigma")
    ring = sigma.ring
    if isinstance(ring, (Integers, Rationals, IntegersMod)):
        return True
    images = [sigma.diag(i, g) for g in ring.generators()]
    if all(img == g for img, g in zip(images, ring.generators())):
        return True
    if isinstance(ring, Poly):
        parts = [_affine_parts(ring, img) for img in images]
        if any(p is None for p in parts):
            if len(ring.vars) == 1:
                # t -> p(t) with deg p >= 2 misses t in its image
                return False
            return None
        lin = RingMatrix.from_rows(ring.base, [p[0] for p in parts])
        return ring.base.try_invert(determinant(lin)) is not None
    if isinstance(ring, TruncPoly):
        coeffs = images[0].value
        base = ring.base
        c0 = coeffs[0] if coeffs else base._from_int(0)
        c1 = coeffs[1] if len(coeffs) > 1 else base._from_int(0)
        if not base._is_zero(c0):
            return None
        if base._is_zero(c1):
            # t -> t^2 u kills t^(k-1)
            return False
        return base.try_invert(base.elem(c1)) is not None or None
    return None


def diag_is_injective(sigma: SigmaHom, i: int) -> Optional[bool]:
    """Whether sigma_ii is injective on a domain; None when undecided."""
    ring = sigma.ring
    if isinstance(ring, (Integers, Rationals)) or (isinstance(ring, IntegersMod) and ring.is_field):
        return True
    if isinstance(ring, Poly):
        images = [sigma.diag(i, g) for g in ring.generators()]
        if len(ring.vars) == 1:
            return ring.total_degree(images[0]) >= 1
        if diag_is_automorphism(sigma, i):
            return True
        return None
    return None


def nilpotence_bound(delta: SigmaDerivation, a: RingElem, cap: int = DEFAULT_NILPOTENCE_CAP) -> Optional[int]:
    """Smallest p <= cap with (delta_{j_p} ... delta_{j_1})(a) = 0 for all j's.

    Breadth-first over composition words, pruning zeros and merging equal
    intermediate values. Returns None when the cap is exceeded.
    """
    if not a:
        return 1
    level = {a}
    for p in range(1, cap + 1):
        nxt = set()
        for x in level:
            for y in delta(x):
                if y:
                    nxt.add(y)
        if not nxt:
            return p
        level = nxt
    return None


# -- law validation ---------------------------------------------------------

def _samples(ring: Ring, budget: int, seed: int, degree: int = 4):
    rng = random.Random(seed)
    gens = ring.generators()
    base = [ring.one()] + gens
    pairs = [(a, b) for a in gens for b in gens]
    pairs += [(a, b) for a in base for b in gens]
    # powers of generators probe relations such as t^k = 0
    for g in gens:
        for e in range(1, degree + 2):
            pairs.append((g ** e, g))
    while len(pairs) < budget + len(gens) ** 2:
        pairs.append((ring.random_element(rng, degree), ring.random_element(rng, degree)))
    return pairs


def _formal_product_checks(ring: Ring):
    """Pairs of formal monomials whose product must respect ring relations."""
    out = []
    if isinstance(ring, Poly):
        nv = len(ring.vars)
        for i, j in itertools.combinations(range(nv), 2):
            out.append((_exp_unit(nv, i), _exp_unit(nv, j)))
    if isinstance(ring, TruncPoly):
        out.append(((ring.k - 1,), (1,)))
    return out


def validate_hom(sigma: SigmaHom, budget: int = DEFAULT_SAMPLE_BUDGET, seed: int = 0) -> LawReport:
    """Check sigma(ab) = sigma(a) sigma(b) and additivity on generators and samples."""
    checked = 0
    problem = sigma.structural_violation()
    if problem is not None:
        return LawReport("homomorphism", False, 1, problem[1], problem[0])
    if sigma(sigma.ring.one()) != RingMatrix.identity(sigma.ring, sigma.n):
        return LawReport("homomorphism", False, 1, (sigma.ring.one(),), "sigma(1) != I")
    for a, b in _samples(sigma.ring, budget, seed):
        checked += 1
        if sigma(a * b) != sigma(a) * sigma(b):
            return LawReport("homomorphism", False, checked, (a, b), "multiplicativity")
        if sigma(a + b) != sigma(a) + sigma(b):
            return LawReport("homomorphism", False, checked, (a, b), "additivity")
    return LawReport("homomorphism", True, checked)


def validate_leibniz(delta: SigmaDerivation, budget: int = DEFAULT_SAMPLE_BUDGET, seed: int = 0) -> LawReport:
    """Check delta(ab) = delta(a) sigma(b) + a delta(b) on generators and samples."""
    checked = 0
    problem = delta.structural_violation()
    if problem is not None:
        return LawReport("right-leibniz", False, 1, problem[1], problem[0])
    sigma = delta.sigma
    for a, b in _samples(delta.ring, budget, seed):
        checked += 1
        lhs = delta(a * b)
        rhs = _vec_add(sigma(b).left_apply(delta(a)), [a * x for x in delta(b)])
        if lhs != rhs:
            return LawReport("right-leibniz", False, checked, (a, b), "delta(ab) != delta(a)sigma(b) + a delta(b)")
        if delta(a + b) != _vec_add(delta(a), delta(b)):
            return LawReport("right-leibniz", False, checked, (a, b), "additivity")
    return LawReport("right-leibniz", True, checked)
