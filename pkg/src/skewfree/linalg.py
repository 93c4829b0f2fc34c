"""Matrices over coefficient rings and the exact right-dependence solver."""

from __future__ import annotations

import itertools
from functools import reduce
from typing import Optional, Sequence

from .errors import CapExceeded, DomainError, NotInvertible, Unsupported
from .rings import Integers, IntegersMod, Poly, Ring, RingElem, TruncPoly

DEFAULT_SEARCH_CAP = 100_000


class RingMatrix:
    """Dense immutable matrix with entries in one commutative ring."""

    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring: Ring, rows: int, cols: int, entries: Sequence[RingElem]):
        if rows < 1 or cols < 1:
            raise DomainError("matrix dimensions must be positive")
        entries = tuple(entries)
        if len(entries) != rows * cols:
            raise DomainError(f"expected {rows * cols} entries, got {len(entries)}")
        for e in entries:
            if e.ring != ring:
                raise DomainError(f"entry {e} is not in {ring}")
        self.ring = ring
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, ring: Ring, rows) -> "RingMatrix":
        rows = [[ring.coerce(x) for x in row] for row in rows]
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise DomainError("ragged or empty matrix")
        return cls(ring, len(rows), len(rows[0]), [x for r in rows for x in r])

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "RingMatrix":
        one, zero = ring.one(), ring.zero()
        return cls(ring, n, n, [one if i == j else zero for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, ring: Ring, rows: int, cols: int) -> "RingMatrix":
        return cls(ring, rows, cols, [ring.zero()] * (rows * cols))

    @classmethod
    def scalar(cls, a: RingElem, n: int) -> "RingMatrix":
        z = a.ring.zero()
        return cls(a.ring, n, n, [a if i == j else z for i in range(n) for j in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def column(self, j: int) -> list:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def to_rows(self) -> list:
        return [self.row(i) for i in range(self.rows)]

    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def _check(self, other: "RingMatrix"):
        if self.ring != other.ring:
            raise DomainError(f"ring mismatch: {self.ring} vs {other.ring}")

    def __add__(self, other: "RingMatrix") -> "RingMatrix":
        self._check(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DomainError("shape mismatch in matrix addition")
        return RingMatrix(self.ring, self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def __neg__(self) -> "RingMatrix":
        return RingMatrix(self.ring, self.rows, self.cols, [-a for a in self.entries])

    def __sub__(self, other: "RingMatrix") -> "RingMatrix":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, RingElem):
            return RingMatrix(self.ring, self.rows, self.cols, [a * other for a in self.entries])
        self._check(other)
        if self.cols != other.rows:
            raise DomainError("shape mismatch in matrix product")
        zero = self.ring.zero()
        out = []
        for i in range(self.rows):
            row = self.row(i)
            for j in range(other.cols):
                acc = zero
                for k, a in enumerate(row):
                    if a:
                        b = other.entries[k * other.cols + j]
                        if b:
                            acc = acc + a * b
                out.append(acc)
        return RingMatrix(self.ring, self.rows, other.cols, out)

    def __pow__(self, k: int) -> "RingMatrix":
        result = RingMatrix.identity(self.ring, self.rows)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def apply(self, vector: Sequence[RingElem]) -> list:
        """Matrix times column vector."""
        if len(vector) != self.cols:
            raise DomainError("vector length does not match column count")
        zero = self.ring.zero()
        out = []
        for i in range(self.rows):
            acc = zero
            for a, b in zip(self.row(i), vector):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return out

    def left_apply(self, vector: Sequence[RingElem]) -> list:
        """Row vector times matrix."""
        if len(vector) != self.rows:
            raise DomainError("vector length does not match row count")
        zero = self.ring.zero()
        out = []
        for j in range(self.cols):
            acc = zero
            for i, a in enumerate(vector):
                if a:
                    b = self.entries[i * self.cols + j]
                    if b:
                        acc = acc + a * b
            out.append(acc)
        return out

    def __eq__(self, other):
        if not isinstance(other, RingMatrix):
            return NotImplemented
        return (self.ring == other.ring and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self):
        return hash((self.ring, self.rows, self.cols, self.entries))

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.to_rows()) + "]"

    __repr__ = __str__


# -- determinants and inverses ---------------------------------------------

def determinant(m: RingMatrix) -> RingElem:
    """Exact determinant by Laplace expansion memoised on column subsets."""
    if not m.is_square():
        raise DomainError("determinant of a non-square matrix")
    n = m.rows
    zero, one = m.ring.zero(), m.ring.one()
    memo = {}

    def minor(row: int, cols: tuple) -> RingElem:
        if row == n:
            return one
        key = (row, cols)
        if key in memo:
            return memo[key]
        acc = zero
        for pos, c in enumerate(cols):
            a = m[row, c]
            if not a:
                continue
            sub = minor(row + 1, cols[:pos] + cols[pos + 1:])
            if sub:
                acc = acc + a * sub if pos % 2 == 0 else acc - a * sub
        memo[key] = acc
        return acc

    return minor(0, tuple(range(n)))


def adjugate(m: RingMatrix) -> RingMatrix:
    n = m.rows
    if n == 1:
        return RingMatrix.identity(m.ring, 1)
    out = []
    for i in range(n):
        for j in range(n):
            # adj[i][j] = (-1)^(i+j) det(m without row j, column i)
            rows = [[m[r, c] for c in range(n) if c != i] for r in range(n) if r != j]
            d = determinant(RingMatrix.from_rows(m.ring, rows))
            out.append(d if (i + j) % 2 == 0 else -d)
    return RingMatrix(m.ring, n, n, out)


def matrix_inverse(m: RingMatrix) -> RingMatrix:
    """Inverse over the ring itself; raises NotInvertible otherwise."""
    if not m.is_square():
        raise NotInvertible("non-square matrix")
    det = determinant(m)
    inv = m.ring.try_invert(det)
    if inv is None:
        raise NotInvertible(f"determinant {det} is not a unit in {m.ring}")
    return adjugate(m) * inv


# -- linear algebra over a field -------------------------------------------

def field_rref(rows: list, ncols: int):
    """Reduced row echelon form over a field, in place. Returns pivot columns."""
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = rows[r][c].ring.try_invert(rows[r][c])
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def field_kernel_vector(rows: list, ncols: int, field: Ring) -> Optional[list]:
    """One nonzero kernel vector of a matrix over a field, or None."""
    rows = [list(r) for r in rows]
    pivots = field_rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    if not free:
        return None
    f = free[0]
    x = [field.zero()] * ncols
    x[f] = field.one()
    for i, c in enumerate(pivots):
        x[c] = -rows[i][f]
    return x


def field_solve(rows: list, rhs: list, ncols: int, field: Ring) -> Optional[list]:
    """Some solution of ``A x = rhs`` over a field, or None if inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots = field_rref(aug, ncols)
    for i in range(len(pivots), len(aug)):
        if aug[i][ncols]:
            return None
    x = [field.zero()] * ncols
    for i, c in enumerate(pivots):
        x[c] = aug[i][ncols]
    return x


# -- right dependence --------------------------------------------------------

def _content_free(vec: list, ring: Ring) -> list:
    """Divide out the common content where the ring has a cheap gcd."""
    nonzero = [v for v in vec if v]
    if not nonzero:
        return vec
    if isinstance(ring, Integers):
        from math import gcd

        g = reduce(gcd, (abs(v.value) for v in nonzero))
        lead = nonzero[0].value
        if lead < 0:
            g = -g
        return [ring.from_int(v.value // g) for v in vec]
    if isinstance(ring, Poly) and len(ring.vars) == 1:
        g = reduce(ring.gcd, nonzero)
        if g != ring.one():
            vec = [ring.exact_divide(v, g) if v else v for v in vec]
        lead = next(v for v in vec if v)
        # make the first nonzero entry monic
        lc = ring.base.try_invert(ring.base.elem(lead.value[-1][1]))
        return [v * ring.embed_base(lc.value) for v in vec]
    if ring.is_field:
        lead = nonzero[0]
        inv = ring.try_invert(lead)
        return [v * inv for v in vec]
    return vec


def _domain_dependence(m: RingMatrix) -> Optional[list]:
    """Fraction-free Gauss-Jordan over a commutative domain."""
    ring = m.ring
    rows = m.to_rows()
    ncols = m.cols
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        if ring.is_field:
            inv = ring.try_invert(rows[r][c])
            rows[r] = [x * inv for x in rows[r]]
        piv = rows[r][c]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                if ring.is_field:
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
                else:
                    rows[i] = _content_free([piv * a - f * b for a, b in zip(rows[i], rows[r])], ring)
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    if not free:
        return None
    f = free[0]
    involved = [i for i in range(len(pivots)) if rows[i][f]]
    x = [ring.zero()] * ncols
    x[f] = ring.one()
    for i in involved:
        x[f] = x[f] * rows[i][pivots[i]]
    for i in involved:
        acc = -rows[i][f]
        for k in involved:
            if k != i:
                acc = acc * rows[k][pivots[k]]
        x[pivots[i]] = acc
    return _content_free(x, ring)


def _truncpoly_field_dependence(m: RingMatrix) -> Optional[list]:
    """Reduce ``M b = 0`` over F[t]/(t^k) to an F-linear system of size (rows k) x (cols k)."""
    ring: TruncPoly = m.ring
    base, k = ring.base, ring.k
    zero = base.zero()
    lin = []
    for i in range(m.rows):
        coeffs = [[base.elem(c) for c in m[i, j].value] for j in range(m.cols)]
        for d in range(k):
            row = []
            for j in range(m.cols):
                cj = coeffs[j]
                for e in range(k):
                    row.append(cj[d - e] if 0 <= d - e < len(cj) else zero)
            lin.append(row)
    x = field_kernel_vector(lin, m.cols * k, base)
    if x is None:
        return None
    return [
        ring.elem(ring._trim([x[j * k + e].value for e in range(k)]))
        for j in range(m.cols)
    ]


def _finite_elements(ring: Ring) -> Optional[list]:
    if isinstance(ring, IntegersMod):
        return [ring.from_int(v) for v in range(ring.modulus)]
    if isinstance(ring, TruncPoly) and isinstance(ring.base, IntegersMod):
        m = ring.base.modulus
        return [ring.elem(ring._trim(list(c))) for c in itertools.product(range(m), repeat=ring.k)]
    return None


def _exhaustive_dependence(m: RingMatrix, cap: int) -> Optional[list]:
    elems = _finite_elements(m.ring)
    if elems is None:
        raise Unsupported(f"no dependence procedure for {m.ring}")
    if len(elems) ** m.cols > cap:
        raise Unsupported(f"exhaustive search over {len(elems)}^{m.cols} vectors exceeds cap {cap}")
    for vec in itertools.product(elems, repeat=m.cols):
        if any(vec) and not any(m.apply(vec)):
            return list(vec)
    return None


def solve_right_dependence(m: RingMatrix, cap: int = DEFAULT_SEARCH_CAP) -> Optional[list]:
    """A nonzero column vector ``b`` with ``m * b == 0``, or None if the columns
    are right-linearly independent.

    Raises :class:`Unsupported` when no decision procedure applies.
    """
    ring = m.ring
    if ring.is_domain():
        b = _domain_dependence(m)
    elif isinstance(ring, TruncPoly) and ring.base.is_field:
        b = _truncpoly_field_dependence(m)
    else:
        b = _exhaustive_dependence(m, cap)
    if b is not None:
        assert any(b) and not any(m.apply(b)), "dependence witness failed verification"
    return b


def fraction_field_rank(m: RingMatrix) -> int:
    """Rank over the fraction field of a commutative domain (fraction-free)."""
    if not m.ring.is_domain():
        raise Unsupported("rank over a fraction field needs a domain")
    rows = m.to_rows()
    r = 0
    for c in range(m.cols):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        for i in range(r + 1, len(rows)):
            if rows[i][c]:
                f = rows[i][c]
                rows[i] = [piv * a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def check_cap(count: int, cap: int, what: str = "enumeration"):
    if count > cap:
        raise CapExceeded(f"{what} of size {count} exceeds cap {cap}")
