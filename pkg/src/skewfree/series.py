"""Truncated skew power series.

A series is only known up to words of some length q.  Products are well
defined when the derivation is locally nilpotent: a coefficient pushed through
a long enough word lands entirely in order > q, so only finitely many terms of
the second factor contribute to each coefficient of the product.
"""

from __future__ import annotations

from typing import Union

from .errors import DomainError, InsufficientTruncation, NilpotenceUnknown
from .rings import RingElem
from .skewpoly import SkewPoly, _acc, _push, render
from .structure import DEFAULT_NILPOTENCE_CAP, Extension, SigmaDerivation, nilpotence_bound
from .words import DEFAULT_WORD_CAP, Word, enumerate_words


class _AboveTruncation:
    """Marker: no stored term, so the order exceeds the truncation."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "AboveTruncation"


AboveTruncation = _AboveTruncation()


class TruncSeries:
    """Coefficients of all words of length <= trunc; longer words unspecified."""

    __slots__ = ("ext", "trunc", "_terms")

    def __init__(self, ext: Extension, trunc: int, terms=None):
        if trunc < 0:
            raise DomainError("truncation must be non-negative")
        self.ext = ext
        self.trunc = trunc
        d = {}
        for w, a in (terms or {}).items():
            letters = w.letters if isinstance(w, Word) else tuple(w)
            if len(letters) <= trunc:
                _acc(d, letters, ext.ring.coerce(a))
        self._terms = d

    @classmethod
    def from_poly(cls, p: SkewPoly, trunc: int) -> "TruncSeries":
        return cls(p.ext, trunc, {w.letters: a for w, a in p.terms.items()})

    def to_poly(self) -> SkewPoly:
        return SkewPoly._raw(self.ext, dict(self._terms))

    @property
    def terms(self) -> dict:
        return {Word._trusted(k, self.ext.n): v for k, v in self._terms.items()}

    def coeff(self, letters) -> RingElem:
        letters = tuple(letters)
        if len(letters) > self.trunc:
            raise DomainError(f"coefficient of a word longer than the truncation {self.trunc}")
        return self._terms.get(letters, self.ext.ring.zero())

    def truncate(self, q: int) -> "TruncSeries":
        if q > self.trunc:
            raise DomainError(f"cannot raise truncation from {self.trunc} to {q}")
        return TruncSeries(self.ext, q, self._terms)

    def __eq__(self, other):
        return (isinstance(other, TruncSeries) and self.ext == other.ext
                and self.trunc == other.trunc and self._terms == other._terms)

    def __hash__(self):
        return hash((self.trunc, frozenset(self._terms.items())))

    def __str__(self):
        return f"{render(self.to_poly())} + O({self.trunc + 1})"

    def __repr__(self):
        return f"TruncSeries({self})"


def _as_ext(obj) -> Extension:
    if isinstance(obj, Extension):
        return obj
    if isinstance(obj, SigmaDerivation):
        return Extension(obj.ring, obj.n, obj.sigma, obj)
    raise TypeError("expected an Extension or a SigmaDerivation")


def nq_bound(ext, a: RingElem, q: int, cap: int = DEFAULT_NILPOTENCE_CAP,
             word_cap: int = DEFAULT_WORD_CAP):
    """N_q(a): for every word w with |w| >= N_q, a*w is 0 or has order > q.

    N_0 is the nilpotence bound of a.  N_{q+1} = N_q + p where p is a joint
    nilpotence bound for the coefficients of length q+1 in a*w, |w| = N_q
    (longer coefficients already sit in order > q+1).  Returns None when a
    nilpotence search exceeds ``cap``.
    """
    ext = _as_ext(ext)
    a = ext.ring.coerce(a)
    if q < 0:
        raise DomainError("q must be non-negative")
    N = nilpotence_bound(ext.delta, a, cap)
    if N is None:
        return None
    if not a:
        return N
    memo = {}
    for level in range(q):
        coeffs = set()
        for w in enumerate_words(N, ext.n, word_cap):
            for u, c in _push(ext, a, w.letters, memo).items():
                if len(u) == level + 1:
                    coeffs.add(c)
        p = 0
        for c in coeffs:
            b = nilpotence_bound(ext.delta, c, cap)
            if b is None:
                return None
            p = max(p, b)
        N += p
    return N


def required_length(f: TruncSeries, q: int, cap: int = DEFAULT_NILPOTENCE_CAP) -> dict:
    """Per-term bounds: for each word v of f with |v| <= q, N_{q-|v|}(b_v)."""
    out = {}
    for v, b in f._terms.items():
        if len(v) > q:
            continue
        N = nq_bound(f.ext, b, q - len(v), cap)
        if N is None:
            raise NilpotenceUnknown(f"no nilpotence bound for {b} within cap {cap}")
        out[v] = N
    return out


def series_mul_trunc(f: TruncSeries, g: TruncSeries, q: int,
                     cap: int = DEFAULT_NILPOTENCE_CAP) -> TruncSeries:
    """Coefficients of f*g on words of length <= q.

    Only terms v*b_v*w*c_w with |v| <= q and |w| < N_{q-|v|}(b_v) can reach
    length <= q, so g must be known up to length s(q) - 1 where s(q) is the
    largest of those bounds.
    """
    if f.ext != g.ext:
        raise DomainError("operands belong to different extensions")
    if q < 0:
        raise DomainError("q must be non-negative")
    if f.trunc < q:
        raise InsufficientTruncation(f"left factor known to length {f.trunc} < q = {q}")
    bounds = required_length(f, q, cap)
    s = max(bounds.values(), default=0)
    if g.trunc < s - 1:
        raise InsufficientTruncation(
            f"right factor known to length {g.trunc}, products up to length {q} need {s - 1}")
    ext = f.ext
    memo = {}
    out = {}
    for v, b in f._terms.items():
        if v not in bounds:
            continue
        room = q - len(v)
        for w, c in g._terms.items():
            if len(w) >= bounds[v]:
                continue
            for u, coef in _push(ext, b, w, memo).items():
                if len(u) <= room:
                    _acc(out, v + u, coef * c)
    return TruncSeries(ext, q, out)


def ord_series(f: TruncSeries) -> Union[int, _AboveTruncation]:
    if not f._terms:
        return AboveTruncation
    return min(len(w) for w in f._terms)
