"""Elements of the free skew extension in right-coefficient normal form.

Every element is stored as a finitely supported map ``Word -> coefficient``
meaning ``sum(w * a_w)``. Products are normalised by pushing left
coefficients through words with the commutation rule
``r x_j = sum_i x_i sigma_ij(r) + delta_j(r)``.
"""

from __future__ import annotations

from typing import Iterable, Optional

from .errors import DomainError, ZeroPolynomial
from .rings import RingElem
from .structure import Extension
from .words import Word

NEG_INF = float("-inf")


def _acc(d: dict, key, value):
    if key in d:
        s = d[key] + value
        if s:
            d[key] = s
        else:
            del d[key]
    elif value:
        d[key] = value


class SkewPoly:
    """An immutable element ``sum(w * a_w)`` of a free skew extension."""

    __slots__ = ("ext", "_terms", "_hash")

    def __init__(self, ext: Extension, terms=None):
        self.ext = ext
        clean = {}
        ring, n = ext.ring, ext.n
        for w, a in (terms or {}).items():
            if not isinstance(w, Word):
                w = Word(w, n)
            elif w.n != n:
                raise DomainError(f"word {w} has arity {w.n}, extension has {n}")
            a = ring.coerce(a)
            _acc(clean, w, a)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ext: Extension, letter_terms: dict) -> "SkewPoly":
        """Build from ``{letters tuple: nonzero coeff}`` without checks."""
        p = object.__new__(cls)
        p.ext = ext
        n = ext.n
        p._terms = {Word._trusted(k, n): v for k, v in letter_terms.items()}
        p._hash = None
        return p

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, ext: Extension) -> "SkewPoly":
        return cls(ext)

    @classmethod
    def constant(cls, ext: Extension, a) -> "SkewPoly":
        return cls(ext, {Word.one(ext.n): ext.ring.coerce(a)})

    @classmethod
    def one(cls, ext: Extension) -> "SkewPoly":
        return cls.constant(ext, ext.ring.one())

    @classmethod
    def monomial(cls, ext: Extension, letters: Iterable[int], a=None) -> "SkewPoly":
        a = ext.ring.one() if a is None else ext.ring.coerce(a)
        return cls(ext, {Word(tuple(letters), ext.n): a})

    @classmethod
    def var(cls, ext: Extension, j: int) -> "SkewPoly":
        return cls.monomial(ext, (j,))

    # -- access ---------------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        """(word, coefficient) pairs in ascending deglex order."""
        return sorted(self._terms.items(), key=lambda kv: kv[0].key())

    def coeff(self, w) -> RingElem:
        if not isinstance(w, Word):
            w = Word(tuple(w), self.ext.n)
        return self._terms.get(w, self.ext.ring.zero())

    def constant_term(self) -> RingElem:
        return self.coeff(())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def _check(self, other: "SkewPoly"):
        if other.ext is not self.ext and other.ext != self.ext:
            raise DomainError("operands belong to different extensions")

    def _lift(self, other) -> Optional["SkewPoly"]:
        if isinstance(other, SkewPoly):
            self._check(other)
            return other
        if isinstance(other, (int, RingElem)):
            return SkewPoly.constant(self.ext, other)
        return None

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        d = {w.letters: a for w, a in self._terms.items()}
        for w, a in other._terms.items():
            _acc(d, w.letters, a)
        return SkewPoly._raw(self.ext, d)

    __radd__ = __add__

    def __neg__(self):
        return SkewPoly._raw(self.ext, {w.letters: -a for w, a in self._terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, RingElem)):
            r = self.ext.ring.coerce(other)
            d = {}
            for w, a in self._terms.items():
                _acc(d, w.letters, a * r)
            return SkewPoly._raw(self.ext, d)
        if isinstance(other, SkewPoly):
            return mul(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, RingElem)):
            return mul(SkewPoly.constant(self.ext, other), self)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = SkewPoly.one(self.ext)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, (int, RingElem)):
            other = SkewPoly.constant(self.ext, other)
        if not isinstance(other, SkewPoly):
            return NotImplemented
        return self.ext == other.ext and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- gradings -----------------------------------------------------------
    def deg(self):
        return deg(self)

    def ord(self) -> int:
        return ord_(self)

    def leading(self):
        return leading(self)

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"SkewPoly({render(self)})"


def render(f: SkewPoly) -> str:
    """Canonical text: terms from the deglex-largest word down, coefficients bracketed."""
    if not f._terms:
        return "0"
    parts = []
    for w, a in sorted(f._terms.items(), key=lambda kv: kv[0].key(), reverse=True):
        if not w.letters:
            parts.append(f"[{a}]")
        elif a == 1:
            parts.append(str(w))
        else:
            parts.append(f"{w}*[{a}]")
    return " + ".join(parts)


# -- rewriting ----------------------------------------------------------------

def _push(ext: Extension, a: RingElem, letters: tuple, memo: dict) -> dict:
    """Normal form of ``a * w`` as ``{letters: coeff}``."""
    if not letters:
        return {(): a}
    key = (a, letters)
    hit = memo.get(key)
    if hit is not None:
        return hit
    j = letters[0] - 1
    rest = letters[1:]
    out = {}
    S = ext.sigma(a)
    for i in range(ext.n):
        c = S[i, j]
        if c:
            prefix = (i + 1,)
            for w, v in _push(ext, c, rest, memo).items():
                _acc(out, prefix + w, v)
    d = ext.delta(a)[j]
    if d:
        for w, v in _push(ext, d, rest, memo).items():
            _acc(out, w, v)
    memo[key] = out
    return out


def push_left_coefficient(ext: Extension, a: RingElem, w: Word) -> SkewPoly:
    """Normal form of the product ``a * w``."""
    a = ext.ring.coerce(a)
    if w.n != ext.n:
        raise DomainError(f"word arity {w.n} does not match extension arity {ext.n}")
    if not a:
        return SkewPoly.zero(ext)
    return SkewPoly._raw(ext, dict(_push(ext, a, w.letters, {})))


def mul(f: SkewPoly, g: SkewPoly) -> SkewPoly:
    """``f * g`` computed as sum over term pairs of ``v * push(b_v, w) * c_w``."""
    f._check(g)
    ext = f.ext
    memo = {}
    out = {}
    for v, b in f._terms.items():
        vl = v.letters
        for w, c in g._terms.items():
            for u, coef in _push(ext, b, w.letters, memo).items():
                _acc(out, vl + u, coef * c)
    return SkewPoly._raw(ext, out)


def add(f: SkewPoly, g: SkewPoly) -> SkewPoly:
    return f + g


def sub(f: SkewPoly, g: SkewPoly) -> SkewPoly:
    return f - g


def deg(f: SkewPoly):
    """Largest word length carrying a nonzero coefficient; ``-inf`` for 0."""
    if not f._terms:
        return NEG_INF
    return max(len(w) for w in f._terms)


def ord_(f: SkewPoly) -> int:
    """Smallest word length carrying a nonzero coefficient."""
    if not f._terms:
        raise ZeroPolynomial("ord of the zero polynomial")
    return min(len(w) for w in f._terms)


ord = ord_  # noqa: A001  (public name mirrors the mathematical one)


def leading(f: SkewPoly):
    """Deglex-largest word with nonzero coefficient, and that coefficient."""
    if not f._terms:
        raise ZeroPolynomial("leading term of the zero polynomial")
    w = max(f._terms, key=Word.key)
    return w, f._terms[w]


def graded_component(f: SkewPoly, r: int) -> SkewPoly:
    return SkewPoly._raw(f.ext, {w.letters: a for w, a in f._terms.items() if len(w) == r})


def truncate(f: SkewPoly, q: int) -> SkewPoly:
    """Terms with word length <= q."""
    return SkewPoly._raw(f.ext, {w.letters: a for w, a in f._terms.items() if len(w) <= q})


def in_filtration(f: SkewPoly, m: int) -> bool:
    return deg(f) <= m


def supported_below(f: SkewPoly, w: Word) -> bool:
    """True when every word in the support of ``f`` is deglex-smaller than ``w``."""
    k = w.key()
    return all(u.key() < k for u in f._terms)


def random_skewpoly(ext: Extension, rng, max_deg: int = 3, coeff_degree: int = 3,
                    max_terms: int = 4) -> SkewPoly:
    """A sparse random element: up to ``max_terms`` words of length <= max_deg."""
    out = {}
    for _ in range(rng.randint(1, max_terms)):
        k = rng.randint(0, max_deg)
        letters = tuple(rng.randint(1, ext.n) for _ in range(k))
        _acc(out, letters, ext.ring.random_element(rng, coeff_degree))
    return SkewPoly._raw(ext, out)
