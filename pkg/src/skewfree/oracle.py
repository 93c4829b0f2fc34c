"""Multiplication oracle from the operator model of the extension.

Elements act on the right of finitely supported functions F -> R, where F is
the free monoid on z_1..z_n:

    (f x_j)(m z_i) = sigma_ij(f(m)) + delta_j(f(m z_i))
    (f x_j)(1)     = delta_j(f(1))
    (f r)(m)       = f(m) r

Feeding the characteristic function of the empty word through ``f`` and then
``g`` yields the function whose value at each word is the coefficient of that
word in ``f g``.  Nothing here calls the rewriting engine.
"""

from __future__ import annotations

from .errors import DomainError
from .rings import RingElem
from .skewpoly import SkewPoly
from .structure import Extension


class SupportedFunction:
    """A finitely supported function from words (letter tuples) to R."""

    __slots__ = ("ext", "values")

    def __init__(self, ext: Extension, values=None):
        self.ext = ext
        self.values = {k: v for k, v in (values or {}).items() if v}

    @classmethod
    def indicator(cls, ext: Extension, letters=()) -> "SupportedFunction":
        return cls(ext, {tuple(letters): ext.ring.one()})

    def __call__(self, letters) -> RingElem:
        return self.values.get(tuple(letters), self.ext.ring.zero())

    def support(self) -> set:
        return set(self.values)

    def __add__(self, other: "SupportedFunction") -> "SupportedFunction":
        out = dict(self.values)
        for k, v in other.values.items():
            out[k] = out[k] + v if k in out else v
        return SupportedFunction(self.ext, out)

    def __eq__(self, other):
        return isinstance(other, SupportedFunction) and self.values == other.values

    def __repr__(self):
        body = ", ".join(f"{''.join(f'z{i}' for i in k) or '1'}: {v}" for k, v in sorted(self.values.items()))
        return f"SupportedFunction({{{body}}})"


def apply_generator(f: SupportedFunction, j: int) -> SupportedFunction:
    """The right action of x_j."""
    ext = f.ext
    if not 1 <= j <= ext.n:
        raise DomainError(f"generator index {j} out of range")
    sigma, delta = ext.sigma, ext.delta
    out = {}

    def put(word, value):
        if value:
            out[word] = out[word] + value if word in out else value

    for m, value in f.values.items():
        # value feeds (f x_j)(m) via delta_j ...
        put(m, delta(value)[j - 1])
        # ... and (f x_j)(m z_i) via sigma_ij, for every i
        s = sigma(value)
        for i in range(1, ext.n + 1):
            put(m + (i,), s[i - 1, j - 1])
    return SupportedFunction(ext, out)


def apply_scalar(f: SupportedFunction, r: RingElem) -> SupportedFunction:
    """Pointwise right multiplication by r."""
    r = f.ext.ring.coerce(r)
    return SupportedFunction(f.ext, {m: v * r for m, v in f.values.items()})


def apply_element(f: SupportedFunction, p: SkewPoly) -> SupportedFunction:
    """Act by ``p = sum(w * a_w)``: for each term, generators of w in order, then a_w."""
    total = SupportedFunction(f.ext)
    for w, a in p.terms.items():
        h = f
        for j in w.letters:
            h = apply_generator(h, j)
        total = total + apply_scalar(h, a)
    return total


def oracle_mul(f: SkewPoly, g: SkewPoly) -> SkewPoly:
    """Normal form of ``f g`` read off from ``1bar . f . g``."""
    if f.ext != g.ext:
        raise DomainError("operands belong to different extensions")
    ext = f.ext
    h = apply_element(SupportedFunction.indicator(ext), f)
    h = apply_element(h, g)
    return SkewPoly(ext, {k: v for k, v in h.values.items()})
