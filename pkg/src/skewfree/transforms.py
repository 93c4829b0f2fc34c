"""Changes of variables and evaluation homomorphisms.

Any family a_1..a_n in an R-ring A with r a_j = sum_i a_i sigma_ij(r) + delta_j(r)
determines a unique R-ring map S -> A with x_j -> a_j, namely
sum w a_w -> sum rho(w) a_w where rho is the monoid map on words.  Basis
changes are such maps in both directions.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .errors import (
    DomainError,
    NotCentral,
    NotDiagonal,
    NotInvertible,
    NotScalarOnCenter,
    RelationCheckFailed,
)
from .linalg import RingMatrix, matrix_inverse
from .rings import RingElem
from .skewpoly import SkewPoly
from .structure import Extension, SigmaDerivation

RELATION_SAMPLES = 32


# -- target algebras ---------------------------------------------------------

class _Algebra:
    """Arithmetic of one of the supported targets: S, R or M_k(R)."""

    def __init__(self, kind: str, ring, ext=None, size=None):
        self.kind = kind
        self.ring = ring
        self.ext = ext
        self.size = size

    def embed(self, r: RingElem):
        if self.kind == "S":
            return SkewPoly.constant(self.ext, r)
        if self.kind == "R":
            return r
        return RingMatrix.scalar(r, self.size)

    def one(self):
        return self.embed(self.ring.one())

    def zero(self):
        return self.embed(self.ring.zero())

    def mul(self, x, y):
        return x * y

    def scale(self, x, r: RingElem):
        # right multiplication by the image of r
        return x * r if self.kind != "matrix" else x * RingMatrix.scalar(r, self.size)


def _algebra_for(ext: Extension, targets: Sequence, algebra=None) -> _Algebra:
    if len(targets) != ext.n:
        raise DomainError(f"need {ext.n} targets, got {len(targets)}")
    first = targets[0]
    kind = algebra
    if kind is None:
        if isinstance(first, SkewPoly):
            kind = "S"
        elif isinstance(first, RingMatrix):
            kind = "matrix"
        else:
            kind = "R"
    if kind == "S":
        tgt_ext = first.ext
        if tgt_ext.ring != ext.ring or any(not isinstance(a, SkewPoly) or a.ext != tgt_ext for a in targets):
            raise DomainError("targets must be elements of one extension over the same ring")
        return _Algebra("S", ext.ring, ext=tgt_ext)
    if kind == "matrix":
        size = first.rows
        if any(not isinstance(a, RingMatrix) or a.ring != ext.ring or a.rows != size or a.cols != size
               for a in targets):
            raise DomainError("targets must be square matrices of one size over the coefficient ring")
        return _Algebra("matrix", ext.ring, size=size)
    if kind == "R":
        if any(not isinstance(a, RingElem) or a.ring != ext.ring for a in targets):
            raise DomainError("targets must be elements of the coefficient ring")
        return _Algebra("R", ext.ring)
    raise DomainError(f"unknown target algebra {algebra!r}")


def _relation_samples(ext: Extension, seed: int, count: int) -> list:
    ring = ext.ring
    rng = random.Random(seed)
    return list(ring.generators()) + [ring.random_element(rng, 3) for _ in range(count)]


def check_relations(ext: Extension, targets: Sequence, algebra=None, seed: int = 0,
                    samples: int = RELATION_SAMPLES) -> _Algebra:
    """Verify r a_j = sum_i a_i sigma_ij(r) + delta_j(r); raise RelationCheckFailed."""
    alg = _algebra_for(ext, targets, algebra)
    n = ext.n
    for r in _relation_samples(ext, seed, samples):
        s = ext.sigma(r)
        d = ext.delta(r)
        left_r = alg.embed(r)
        for j in range(n):
            lhs = alg.mul(left_r, targets[j])
            rhs = alg.embed(d[j])
            for i in range(n):
                if s[i, j]:
                    rhs = rhs + alg.scale(targets[i], s[i, j])
            if lhs != rhs:
                raise RelationCheckFailed(j + 1, r)
    return alg


def eval_hom(ext: Extension, targets: Sequence, f: SkewPoly, algebra=None,
             check: bool = True, seed: int = 0):
    """phi(f) for the R-ring map with x_j -> targets[j-1]."""
    if f.ext != ext:
        raise DomainError("polynomial does not belong to the source extension")
    alg = check_relations(ext, targets, algebra, seed) if check else _algebra_for(ext, targets, algebra)
    cache = {(): alg.one()}

    def rho(letters):
        v = cache.get(letters)
        if v is None:
            v = alg.mul(rho(letters[:-1]), targets[letters[-1] - 1])
            cache[letters] = v
        return v

    total = alg.zero()
    for w, a in f.items():
        total = total + alg.scale(rho(w.letters), a)
    return total


# -- basis changes -------------------------------------------------------------

@dataclass(frozen=True)
class BasisChange:
    """New variables y_j of ``source`` presenting it as ``target``.

    ``forward[j]`` writes y_{j+1} in the x's (an element of ``source``);
    ``backward[j]`` writes x_{j+1} in the y's (an element of ``target``).
    """

    source: Extension
    target: Extension
    forward: tuple
    backward: tuple

    def describe(self) -> list:
        lines = [f"y{j} = {p}" for j, p in enumerate(self.forward, start=1)]
        lines += [f"x{j} = {_rename(str(p))}" for j, p in enumerate(self.backward, start=1)]
        return lines


def _rename(text: str) -> str:
    """Render a target polynomial with y's for its variables."""
    import re

    return re.sub(r"\bx(\d+)", r"y\1", text)


def map_through(bc: BasisChange, f: SkewPoly, direction: str = "backward") -> SkewPoly:
    """Rewrite f across the change of variables.

    ``backward``: f in the source (x's), result in the target (y's).
    ``forward``: f in the target (y's), result in the source (x's).
    """
    if direction == "backward":
        if f.ext != bc.source:
            raise DomainError("polynomial is not in the source extension")
        return eval_hom(bc.source, bc.backward, f, "S", check=False)
    if direction == "forward":
        if f.ext != bc.target:
            raise DomainError("polynomial is not in the target extension")
        return eval_hom(bc.target, bc.forward, f, "S", check=False)
    raise DomainError(f"direction must be 'forward' or 'backward', not {direction!r}")


def _check_central(ext: Extension, c: RingElem):
    for g in ext.ring.generators():
        if c * g != g * c:
            raise NotCentral(f"{c} does not commute with {g}")


def _finish(source: Extension, target: Extension, forward, backward, seed: int) -> BasisChange:
    # both substitutions must respect the defining relations
    check_relations(target, forward, "S", seed)
    check_relations(source, backward, "S", seed)
    bc = BasisChange(source, target, tuple(forward), tuple(backward))
    for j in range(source.n):
        x = SkewPoly.var(source, j + 1)
        if map_through(bc, map_through(bc, x, "backward"), "forward") != x:
            raise DomainError(f"substitutions are not mutually inverse on x{j + 1}")
    return bc


def kill_delta(ext: Extension, c, seed: int = 0) -> BasisChange:
    """y_j = x_j c - c x_j, which removes delta when c I - sigma(c) is invertible.

    In matrix form [y] = [x](c I - sigma(c)) - delta(c), and
    [x] = ([y] + delta(c)) (c I - sigma(c))^-1.
    """
    ring, n = ext.ring, ext.n
    c = ring.coerce(c)
    _check_central(ext, c)
    m = RingMatrix.scalar(c, n) - ext.sigma(c)
    try:
        minv = matrix_inverse(m)
    except NotInvertible:
        raise NotInvertible(f"c I - sigma(c) is not invertible for c = {c}") from None
    dc = ext.delta(c)
    target = ext.with_delta()
    forward = []
    for j in range(n):
        y = SkewPoly.constant(ext, -dc[j])
        for i in range(n):
            y = y + SkewPoly.monomial(ext, (i + 1,), m[i, j])
        forward.append(y)
    backward = []
    for j in range(n):
        x = SkewPoly.zero(target)
        const = ring.zero()
        for i in range(n):
            x = x + SkewPoly.monomial(target, (i + 1,), minv[i, j])
            const = const + dc[i] * minv[i, j]
        backward.append(x + SkewPoly.constant(target, const))
    return _finish(ext, target, forward, backward, seed)


def scalarize_sigma(ext: Extension, cs: Sequence, seed: int = 0) -> BasisChange:
    """y_j = x_j delta_j(c_j)^-1 for scalar sigma; the new derivations are ordinary."""
    ring, n, sigma = ext.ring, ext.n, ext.sigma
    cs = [ring.coerce(c) for c in cs]
    if len(cs) != n:
        raise DomainError(f"need {n} elements c_j, got {len(cs)}")
    if not sigma.is_diagonal():
        raise NotDiagonal("sigma must be diagonal")
    for g in ring.generators():
        if sigma(g) != RingMatrix.scalar(g, n):
            raise NotScalarOnCenter(f"sigma({g}) != {g} I on the central element {g}")
    for c in cs:
        _check_central(ext, c)
    invs = []
    for j, c in enumerate(cs):
        d = ext.delta(c)[j]
        inv = ring.try_invert(d)
        if inv is None:
            raise NotInvertible(f"delta_{j + 1}({c}) = {d} is not invertible")
        invs.append((d, inv))
    images = {}
    for name, vec in ext.delta.gen_images.items():
        images[name] = [x * invs[j][1] for j, x in enumerate(vec)]
    target = Extension(ring, n, sigma, SigmaDerivation(sigma, images))
    forward = [SkewPoly.monomial(ext, (j + 1,), invs[j][1]) for j in range(n)]
    backward = [SkewPoly.monomial(target, (j + 1,), invs[j][0]) for j in range(n)]
    return _finish(ext, target, forward, backward, seed)
