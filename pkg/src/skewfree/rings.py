"""Exact commutative coefficient rings.

A ring descriptor (``Integers()``, ``Rationals()``, ``IntegersMod(m)``,
``Poly(base, vars)``, ``TruncPoly(base, var, k)``) owns the arithmetic on
canonical raw values; :class:`RingElem` pairs a descriptor with one such value
and provides the operator overloads used everywhere else.

Canonical values:

* ``Integers``      -- ``int``
* ``Rationals``     -- ``fractions.Fraction``
* ``IntegersMod``   -- ``int`` in ``range(m)``
* ``Poly``          -- tuple of ``(exponents, coeff)`` pairs, graded-lex ascending,
  no zero coefficients
* ``TruncPoly``     -- tuple of base coefficients ``c_0 .. c_d`` with ``d < k``
  and ``c_d != 0``
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Iterable, Optional

from .errors import DomainError


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    f = 3
    while f * f <= m:
        if m % f == 0:
            return False
        f += 2
    return True


def _smallest_factor(m: int) -> int:
    f = 2
    while f * f <= m:
        if m % f == 0:
            return f
        f += 1
    return m


class RingElem:
    """An immutable element of a coefficient ring."""

    __slots__ = ("ring", "value", "_hash")

    def __init__(self, ring: "Ring", value):
        self.ring = ring
        self.value = value
        self._hash = None

    def _other(self, other) -> "RingElem":
        if isinstance(other, RingElem):
            if other.ring is self.ring or other.ring == self.ring:
                return other
            raise DomainError(f"ring mismatch: {self.ring} vs {other.ring}")
        if isinstance(other, int):
            return self.ring.from_int(other)
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return RingElem(self.ring, self.ring._add(self.value, other.value))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        r = self.ring
        return RingElem(r, r._add(self.value, r._neg(other.value)))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return RingElem(self.ring, self.ring._neg(self.value))

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return RingElem(self.ring, self.ring._mul(self.value, other.value))

    def __rmul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return RingElem(self.ring, self.ring._mul(other.value, self.value))

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self):
        return not self.ring._is_zero(self.value)

    def is_zero(self) -> bool:
        return self.ring._is_zero(self.value)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.from_int(other)
        if not isinstance(other, RingElem):
            return NotImplemented
        return (self.ring is other.ring or self.ring == other.ring) and self.value == other.value

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.value))
        return self._hash

    def __str__(self):
        return self.ring.render(self.value)

    def __repr__(self):
        return f"RingElem({self.ring!r}, {self.ring.render(self.value)!r})"


class Ring:
    """Base descriptor. Subclasses implement the raw-value primitives."""

    kind = "ring"
    is_field = False

    # -- identity ---------------------------------------------------------
    def _key(self) -> tuple:
        raise NotImplementedError

    def __eq__(self, other):
        return type(self) is type(other) and self._key() == other._key()

    def __hash__(self):
        return hash((type(self).__name__, self._key()))

    # -- raw primitives ---------------------------------------------------
    def _add(self, x, y):
        raise NotImplementedError

    def _neg(self, x):
        raise NotImplementedError

    def _mul(self, x, y):
        raise NotImplementedError

    def _is_zero(self, x) -> bool:
        raise NotImplementedError

    def _from_int(self, n: int):
        raise NotImplementedError

    # -- element constructors --------------------------------------------
    def elem(self, value) -> RingElem:
        return RingElem(self, value)

    def zero(self) -> RingElem:
        return RingElem(self, self._from_int(0))

    def one(self) -> RingElem:
        return RingElem(self, self._from_int(1))

    def from_int(self, n: int) -> RingElem:
        return RingElem(self, self._from_int(n))

    def coerce(self, x) -> RingElem:
        if isinstance(x, RingElem):
            if x.ring != self:
                raise DomainError(f"{x} is not an element of {self}")
            return x
        if isinstance(x, int):
            return self.from_int(x)
        if isinstance(x, str):
            return self.parse(x)
        raise DomainError(f"cannot coerce {x!r} into {self}")

    def parse(self, text: str) -> RingElem:
        from .parsing import parse_ring_literal

        return parse_ring_literal(self, text)

    # -- structure --------------------------------------------------------
    @property
    def gen_names(self) -> tuple:
        """Names of the ring generators (polynomial variables)."""
        return ()

    def generators(self) -> list:
        return []

    def base_ring(self) -> "Ring":
        """Prime/base coefficient ring; ``self`` for the scalar rings."""
        return self

    def embed_base(self, c) -> RingElem:
        """Embed a raw base-ring value as a constant of this ring."""
        return RingElem(self, c)

    def monomials(self, value) -> list:
        """Expand a value as ``[(exponents, base_value), ...]``."""
        return [((), value)] if not self._is_zero(value) else []

    def is_domain(self) -> bool:
        raise NotImplementedError

    def try_invert(self, a: RingElem) -> Optional[RingElem]:
        raise NotImplementedError

    def zero_divisor_pair(self):
        """A pair ``(a, b)`` of nonzero elements with ``a*b == 0``, or None."""
        return None

    def random_element(self, rng: random.Random, degree: int = 3) -> RingElem:
        raise NotImplementedError

    def render(self, value) -> str:
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError

    def __repr__(self):
        return str(self)


class Integers(Ring):
    kind = "integers"

    def _key(self):
        return ()

    def _add(self, x, y):
        return x + y

    def _neg(self, x):
        return -x

    def _mul(self, x, y):
        return x * y

    def _is_zero(self, x):
        return x == 0

    def _from_int(self, n):
        return n

    def is_domain(self):
        return True

    def try_invert(self, a):
        return a if a.value in (1, -1) else None

    def zero_divisor_pair(self):
        return None

    def random_element(self, rng, degree=3):
        return RingElem(self, rng.randint(-5, 5))

    def render(self, value):
        return str(value)

    def to_json(self):
        return {"kind": "integers"}

    def __str__(self):
        return "ZZ"


class Rationals(Ring):
    kind = "rationals"
    is_field = True

    def _key(self):
        return ()

    def _add(self, x, y):
        return x + y

    def _neg(self, x):
        return -x

    def _mul(self, x, y):
        return x * y

    def _is_zero(self, x):
        return x == 0

    def _from_int(self, n):
        return Fraction(n)

    def coerce(self, x) -> RingElem:
        if isinstance(x, Fraction):
            return RingElem(self, x)
        return super().coerce(x)

    def is_domain(self):
        return True

    def try_invert(self, a):
        return RingElem(self, 1 / a.value) if a.value != 0 else None

    def random_element(self, rng, degree=3):
        return RingElem(self, Fraction(rng.randint(-5, 5), rng.choice((1, 1, 1, 2, 3))))

    def render(self, value):
        return str(value)

    def to_json(self):
        return {"kind": "rationals"}

    def __str__(self):
        return "QQ"


class IntegersMod(Ring):
    kind = "integers_mod"

    def __init__(self, modulus: int):
        if not isinstance(modulus, int) or modulus < 2:
            raise DomainError(f"modulus must be an integer >= 2, got {modulus!r}")
        self.modulus = modulus
        self.is_field = _is_prime(modulus)

    def _key(self):
        return (self.modulus,)

    def _add(self, x, y):
        return (x + y) % self.modulus

    def _neg(self, x):
        return (-x) % self.modulus

    def _mul(self, x, y):
        return (x * y) % self.modulus

    def _is_zero(self, x):
        return x == 0

    def _from_int(self, n):
        return n % self.modulus

    def is_domain(self):
        return self.is_field

    def try_invert(self, a):
        if math.gcd(a.value, self.modulus) != 1:
            return None
        return RingElem(self, pow(a.value, -1, self.modulus))

    def zero_divisor_pair(self):
        if self.is_field:
            return None
        p = _smallest_factor(self.modulus)
        return self.from_int(p), self.from_int(self.modulus // p)

    def random_element(self, rng, degree=3):
        return RingElem(self, rng.randrange(self.modulus))

    def render(self, value):
        return str(value)

    def to_json(self):
        return {"kind": "integers_mod", "modulus": self.modulus}

    def __str__(self):
        return f"ZZ/{self.modulus}"


def _render_poly_terms(terms, names, base: Ring) -> str:
    """Render ``[(exps, coeff), ...]`` (already in display order)."""
    if not terms:
        return "0"
    pieces = []
    for exps, c in terms:
        mono = "*".join(
            name if e == 1 else f"{name}^{e}" for name, e in zip(names, exps) if e
        )
        cstr = base.render(c)
        if not mono:
            body = cstr
        elif cstr == "1":
            body = mono
        elif cstr == "-1":
            body = "-" + mono
        elif "/" in cstr:
            body = f"{cstr}*{mono}"
        else:
            body = cstr + mono
        pieces.append(body)
    out = pieces[0]
    for p in pieces[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


class Poly(Ring):
    """Sparse multivariate polynomials over a field."""

    kind = "poly"

    def __init__(self, base: Ring, vars: Iterable[str]):
        vars = tuple(vars)
        if not isinstance(base, (Rationals, IntegersMod)) or not base.is_field:
            raise DomainError("Poly base must be Rationals or IntegersMod(p) with p prime")
        if not vars:
            raise DomainError("Poly needs at least one variable")
        if len(set(vars)) != len(vars):
            raise DomainError("Poly variable names must be distinct")
        self.base = base
        self.vars = vars
        self._zero_exp = (0,) * len(vars)

    def _key(self):
        return (self.base, self.vars)

    @staticmethod
    def _sortkey(item):
        exps = item[0]
        return (sum(exps), exps)

    def _canon(self, d: dict):
        b = self.base
        return tuple(sorted(((e, c) for e, c in d.items() if not b._is_zero(c)), key=self._sortkey))

    def _add(self, x, y):
        if not x:
            return y
        if not y:
            return x
        b = self.base
        d = dict(x)
        for e, c in y:
            d[e] = b._add(d[e], c) if e in d else c
        return self._canon(d)

    def _neg(self, x):
        b = self.base
        return tuple((e, b._neg(c)) for e, c in x)

    def _mul(self, x, y):
        if not x or not y:
            return ()
        b = self.base
        d = {}
        for e1, c1 in x:
            for e2, c2 in y:
                e = tuple(a + c for a, c in zip(e1, e2))
                p = b._mul(c1, c2)
                d[e] = b._add(d[e], p) if e in d else p
        return self._canon(d)

    def _is_zero(self, x):
        return not x

    def _from_int(self, n):
        c = self.base._from_int(n)
        return () if self.base._is_zero(c) else ((self._zero_exp, c),)

    @property
    def gen_names(self):
        return self.vars

    def generators(self):
        one = self.base._from_int(1)
        gens = []
        for i in range(len(self.vars)):
            e = tuple(1 if k == i else 0 for k in range(len(self.vars)))
            gens.append(RingElem(self, ((e, one),)))
        return gens

    def base_ring(self):
        return self.base

    def embed_base(self, c):
        return RingElem(self, () if self.base._is_zero(c) else ((self._zero_exp, c),))

    def monomial(self, exps, c=None) -> RingElem:
        if c is None:
            c = self.base._from_int(1)
        return RingElem(self, () if self.base._is_zero(c) else ((tuple(exps), c),))

    def monomials(self, value):
        return list(value)

    def total_degree(self, a: RingElem) -> int:
        return max((sum(e) for e, _ in a.value), default=-1)

    def is_domain(self):
        return True

    def try_invert(self, a):
        v = a.value
        if len(v) == 1 and not any(v[0][0]):
            inv = self.base.try_invert(RingElem(self.base, v[0][1]))
            return self.embed_base(inv.value)
        return None

    def random_element(self, rng, degree=3):
        d = {}
        for _ in range(rng.randint(1, 3)):
            total = rng.randint(0, degree)
            exps = [0] * len(self.vars)
            for _ in range(total):
                exps[rng.randrange(len(self.vars))] += 1
            c = self.base.random_element(rng).value
            e = tuple(exps)
            d[e] = self.base._add(d[e], c) if e in d else c
        return RingElem(self, self._canon(d))

    def render(self, value):
        return _render_poly_terms(list(reversed(value)), self.vars, self.base)

    def to_json(self):
        return {"kind": "poly", "base": self.base.to_json(), "vars": list(self.vars)}

    def __str__(self):
        return f"{self.base}[{','.join(self.vars)}]"

    # -- univariate helpers used for content removal ----------------------
    def _uni_dense(self, a: RingElem) -> list:
        deg = max((e[0] for e, _ in a.value), default=-1)
        coeffs = [self.base._from_int(0)] * (deg + 1)
        for e, c in a.value:
            coeffs[e[0]] = c
        return coeffs

    def _from_uni_dense(self, coeffs) -> RingElem:
        return RingElem(self, self._canon({(i,): c for i, c in enumerate(coeffs)}))

    def gcd(self, a: RingElem, b: RingElem) -> RingElem:
        """Monic gcd; univariate rings only."""
        if len(self.vars) != 1:
            raise DomainError("gcd is only implemented for univariate Poly")
        base = self.base
        f, g = self._uni_dense(a), self._uni_dense(b)
        while g:
            # f mod g
            inv_lead = base.try_invert(RingElem(base, g[-1])).value
            f = list(f)
            while len(f) >= len(g) and f:
                q = base._mul(f[-1], inv_lead)
                shift = len(f) - len(g)
                for i, c in enumerate(g):
                    f[i + shift] = base._add(f[i + shift], base._neg(base._mul(q, c)))
                while f and base._is_zero(f[-1]):
                    f.pop()
            f, g = g, f
        if not f:
            return self.zero()
        inv_lead = base.try_invert(RingElem(base, f[-1])).value
        return self._from_uni_dense([base._mul(c, inv_lead) for c in f])

    def exact_divide(self, a: RingElem, b: RingElem) -> RingElem:
        """``a / b`` for univariate polynomials when ``b`` divides ``a``."""
        base = self.base
        f, g = self._uni_dense(a), self._uni_dense(b)
        if not g:
            raise ZeroDivisionError("division by zero polynomial")
        inv_lead = base.try_invert(RingElem(base, g[-1])).value
        q = [base._from_int(0)] * max(len(f) - len(g) + 1, 0)
        f = list(f)
        while len(f) >= len(g) and f:
            c = base._mul(f[-1], inv_lead)
            shift = len(f) - len(g)
            q[shift] = c
            for i, gc in enumerate(g):
                f[i + shift] = base._add(f[i + shift], base._neg(base._mul(c, gc)))
            while f and base._is_zero(f[-1]):
                f.pop()
        if f:
            raise DomainError("exact_divide: remainder is nonzero")
        return self._from_uni_dense(q)


class TruncPoly(Ring):
    """``base[var] / (var^k)``."""

    kind = "trunc_poly"

    def __init__(self, base: Ring, var: str, k: int):
        if not isinstance(base, (Integers, Rationals, IntegersMod)):
            raise DomainError("TruncPoly base must be Integers, Rationals or IntegersMod")
        if not isinstance(k, int) or k < 2:
            raise DomainError("TruncPoly order must be an integer >= 2")
        self.base = base
        self.var = var
        self.k = k

    def _key(self):
        return (self.base, self.var, self.k)

    def _trim(self, coeffs):
        b = self.base
        coeffs = list(coeffs[: self.k])
        while coeffs and b._is_zero(coeffs[-1]):
            coeffs.pop()
        return tuple(coeffs)

    def _add(self, x, y):
        b = self.base
        n = max(len(x), len(y))
        z = b._from_int(0)
        return self._trim(
            [b._add(x[i] if i < len(x) else z, y[i] if i < len(y) else z) for i in range(n)]
        )

    def _neg(self, x):
        return tuple(self.base._neg(c) for c in x)

    def _mul(self, x, y):
        if not x or not y:
            return ()
        b = self.base
        out = [b._from_int(0)] * min(len(x) + len(y) - 1, self.k)
        for i, c1 in enumerate(x):
            if b._is_zero(c1):
                continue
            for j, c2 in enumerate(y):
                if i + j >= self.k:
                    break
                out[i + j] = b._add(out[i + j], b._mul(c1, c2))
        return self._trim(out)

    def _is_zero(self, x):
        return not x

    def _from_int(self, n):
        return self._trim([self.base._from_int(n)])

    @property
    def gen_names(self):
        return (self.var,)

    def generators(self):
        return [self.t()]

    def t(self) -> RingElem:
        b = self.base
        return RingElem(self, (b._from_int(0), b._from_int(1)))

    def base_ring(self):
        return self.base

    def embed_base(self, c):
        return RingElem(self, self._trim([c]))

    def monomial(self, exps, c=None) -> RingElem:
        b = self.base
        if c is None:
            c = b._from_int(1)
        (e,) = exps
        return RingElem(self, self._trim([b._from_int(0)] * e + [c]))

    def monomials(self, value):
        b = self.base
        return [((i,), c) for i, c in enumerate(value) if not b._is_zero(c)]

    def is_domain(self):
        return False

    def try_invert(self, a):
        b = self.base
        if not a.value:
            return None
        c0 = b.try_invert(RingElem(b, a.value[0]))
        if c0 is None:
            return None
        # a = c0^{-1} (1 + u) with u nilpotent; (1+u)^{-1} = sum (-u)^i, i < k
        unit = self.embed_base(c0.value)
        u = a * unit - 1
        term = self.one()
        acc = self.one()
        for _ in range(1, self.k):
            term = term * (-u)
            acc = acc + term
        return acc * unit

    def zero_divisor_pair(self):
        return self.t(), self.t() ** (self.k - 1)

    def random_element(self, rng, degree=3):
        n = min(self.k, degree + 1)
        return RingElem(self, self._trim([self.base.random_element(rng).value for _ in range(n)]))

    def render(self, value):
        terms = [((i,), c) for i, c in enumerate(value) if not self.base._is_zero(c)]
        return _render_poly_terms(list(reversed(terms)), (self.var,), self.base)

    def to_json(self):
        return {"kind": "trunc_poly", "base": self.base.to_json(), "var": self.var, "order": self.k}

    def __str__(self):
        return f"{self.base}[{self.var}]/({self.var}^{self.k})"


def ring_from_json(doc) -> Ring:
    """Build a descriptor from its JSON form (see ``Ring.to_json``)."""
    from .errors import SpecError

    if isinstance(doc, str):
        doc = {"kind": doc}
    if not isinstance(doc, dict) or "kind" not in doc:
        raise SpecError("ring descriptor must be an object with a 'kind'", "ring")
    kind = doc["kind"]
    try:
        if kind == "integers":
            return Integers()
        if kind == "rationals":
            return Rationals()
        if kind == "integers_mod":
            return IntegersMod(int(doc["modulus"]))
        if kind == "poly":
            return Poly(ring_from_json(doc.get("base", "rationals")), doc["vars"])
        if kind == "trunc_poly":
            return TruncPoly(ring_from_json(doc.get("base", "rationals")), doc["var"], int(doc["order"]))
    except KeyError as exc:
        raise SpecError(f"missing field {exc.args[0]!r}", f"ring.{kind}") from None
    except DomainError as exc:
        raise SpecError(str(exc), "ring") from None
    raise SpecError(f"unknown ring kind {kind!r}", "ring.kind")


# -- functional surface ----------------------------------------------------

def ring_arith(op: str, a: RingElem, b: RingElem) -> RingElem:
    if a.ring != b.ring:
        raise DomainError(f"ring mismatch: {a.ring} vs {b.ring}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    raise ValueError(f"unknown op {op!r}")


def try_invert(a: RingElem) -> Optional[RingElem]:
    """Two-sided inverse of ``a`` or ``None`` when ``a`` is not a unit."""
    return a.ring.try_invert(a)


def ring_is_domain(ring: Ring) -> bool:
    return ring.is_domain()
