"""Text formats: ring literals, skew polynomial expressions and ring-spec files.

Skew expression grammar::

    expr   := term (("+" | "-") term)*
    term   := factor ("*" factor)*
    factor := "-" factor | atom ("^" nat)?
    atom   := var | coeff | "(" expr ")"
    var    := "x" nat
    coeff  := "[" ring-literal "]" | integer | integer "/" integer | ring-variable

Ring literals are commutative polynomial expressions in the ring variables,
with juxtaposition allowed for products (``2t^2 + 1/2*t``) and ``/`` meaning
multiplication by an inverse.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Union

from .errors import InvalidStructure, ParseError, SpecError
from .rings import Ring, RingElem, ring_from_json
from .skewpoly import SkewPoly
from .structure import Extension, SigmaDerivation, SigmaHom, delta_inner

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")
_XVAR = re.compile(r"x(\d+)$")


def _tokenize(text: str):
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        else:
            tokens.append(("op", m.group(3), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Cursor:
    def __init__(self, text: str, offset: int = 0):
        self.tokens = _tokenize(text)
        self.i = 0
        self.offset = offset

    @property
    def tok(self):
        return self.tokens[self.i]

    def peek_op(self, *ops) -> bool:
        kind, val, _ = self.tok
        return kind == "op" and val in ops

    def take(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect_op(self, op):
        kind, val, pos = self.tok
        if kind != "op" or val != op:
            self.error(f"expected {op!r}")
        self.i += 1

    def error(self, msg):
        kind, val, pos = self.tok
        found = "end of input" if kind == "end" else repr(val)
        raise ParseError(f"{msg}, found {found}", pos + self.offset)


# -- ring literals --------------------------------------------------------------

def parse_ring_literal(ring: Ring, text: str, offset: int = 0) -> RingElem:
    cur = _Cursor(text, offset)
    if cur.tok[0] == "end":
        cur.error("empty ring literal")
    value = _lit_expr(ring, cur)
    if cur.tok[0] != "end":
        cur.error("unexpected token in ring literal")
    return value


def _lit_expr(ring, cur):
    if cur.peek_op("+", "-"):
        sign = cur.take()[1]
        acc = _lit_term(ring, cur)
        if sign == "-":
            acc = -acc
    else:
        acc = _lit_term(ring, cur)
    while cur.peek_op("+", "-"):
        op = cur.take()[1]
        rhs = _lit_term(ring, cur)
        acc = acc + rhs if op == "+" else acc - rhs
    return acc


def _lit_starts_atom(cur) -> bool:
    kind, val, _ = cur.tok
    return kind in ("int", "name") or (kind == "op" and val == "(")


def _lit_term(ring, cur):
    acc = _lit_power(ring, cur)
    while True:
        if cur.peek_op("*"):
            cur.take()
            acc = acc * _lit_power(ring, cur)
        elif cur.peek_op("/"):
            pos = cur.tok[2]
            cur.take()
            d = _lit_power(ring, cur)
            inv = ring.try_invert(d)
            if inv is None:
                raise ParseError(f"{d} is not invertible in {ring}", pos + cur.offset)
            acc = acc * inv
        elif _lit_starts_atom(cur):
            acc = acc * _lit_power(ring, cur)
        else:
            return acc


def _lit_power(ring, cur):
    if cur.peek_op("-"):
        cur.take()
        return -_lit_power(ring, cur)
    base = _lit_atom(ring, cur)
    if cur.peek_op("^"):
        cur.take()
        kind, val, _ = cur.tok
        if kind != "int":
            cur.error("expected a non-negative integer exponent")
        cur.take()
        base = base ** int(val)
    return base


def _lit_atom(ring, cur):
    kind, val, pos = cur.tok
    if kind == "int":
        cur.take()
        return ring.from_int(int(val))
    if kind == "name":
        cur.take()
        names = ring.gen_names
        if val not in names:
            raise ParseError(f"unknown ring variable {val!r} for {ring}", pos + cur.offset)
        return ring.generators()[names.index(val)]
    if kind == "op" and val == "(":
        cur.take()
        v = _lit_expr(ring, cur)
        cur.expect_op(")")
        return v
    cur.error("expected a ring literal")


# -- skew expressions -------------------------------------------------------------

@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class Coeff:
    value: RingElem


@dataclass(frozen=True)
class Neg:
    arg: "ExprAst"


@dataclass(frozen=True)
class Add:
    left: "ExprAst"
    right: "ExprAst"


@dataclass(frozen=True)
class Sub:
    left: "ExprAst"
    right: "ExprAst"


@dataclass(frozen=True)
class Mul:
    left: "ExprAst"
    right: "ExprAst"


@dataclass(frozen=True)
class Pow:
    base: "ExprAst"
    exponent: int


ExprAst = Union[Var, Coeff, Neg, Add, Sub, Mul, Pow]


class _ExprParser:
    def __init__(self, text: str, ext: Extension):
        self.text = text
        self.ext = ext
        self.cur = _Cursor(text)

    def parse(self) -> ExprAst:
        if self.cur.tok[0] == "end":
            self.cur.error("empty expression")
        node = self.expr()
        if self.cur.tok[0] != "end":
            self.cur.error("unexpected token")
        return node

    def expr(self):
        node = self.term()
        while self.cur.peek_op("+", "-"):
            op = self.cur.take()[1]
            rhs = self.term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def term(self):
        node = self.factor()
        while self.cur.peek_op("*"):
            self.cur.take()
            node = Mul(node, self.factor())
        return node

    def factor(self):
        if self.cur.peek_op("-"):
            self.cur.take()
            return Neg(self.factor())
        node = self.atom()
        if self.cur.peek_op("^"):
            self.cur.take()
            kind, val, _ = self.cur.tok
            if kind != "int":
                self.cur.error("expected a non-negative integer exponent")
            self.cur.take()
            node = Pow(node, int(val))
        return node

    def atom(self):
        cur, ring = self.cur, self.ext.ring
        kind, val, pos = cur.tok
        if kind == "name":
            m = _XVAR.match(val)
            if m:
                idx = int(m.group(1))
                if not 1 <= idx <= self.ext.n:
                    raise ParseError(f"unknown variable {val!r} (arity {self.ext.n})", pos)
                cur.take()
                return Var(idx)
            if val in ring.gen_names:
                cur.take()
                return Coeff(ring.generators()[ring.gen_names.index(val)])
            raise ParseError(f"unknown variable {val!r}", pos)
        if kind == "int":
            cur.take()
            value = ring.from_int(int(val))
            if cur.peek_op("/"):
                cur.take()
                k2, v2, p2 = cur.tok
                if k2 != "int":
                    cur.error("expected an integer denominator")
                cur.take()
                inv = ring.try_invert(ring.from_int(int(v2)))
                if inv is None:
                    raise ParseError(f"{v2} is not invertible in {ring}", p2)
                value = value * inv
            return Coeff(value)
        if kind == "op" and val == "(":
            cur.take()
            node = self.expr()
            cur.expect_op(")")
            return node
        if kind == "op" and val == "[":
            close = self.text.find("]", pos)
            if close < 0:
                raise ParseError("unterminated '['", pos)
            inner = self.text[pos + 1:close]
            value = parse_ring_literal(ring, inner, offset=pos + 1)
            while cur.tok[0] != "end" and cur.tok[2] <= close:
                cur.take()
            return Coeff(value)
        cur.error("expected a variable, coefficient or '('")


def parse_expr(text: str, ext: Extension) -> ExprAst:
    return _ExprParser(text, ext).parse()


def normalize_expr(ast: ExprAst, ext: Extension) -> SkewPoly:
    """Evaluate an AST in the extension, pushing every coefficient to the right."""
    if isinstance(ast, Var):
        return SkewPoly.var(ext, ast.index)
    if isinstance(ast, Coeff):
        return SkewPoly.constant(ext, ast.value)
    if isinstance(ast, Neg):
        return -normalize_expr(ast.arg, ext)
    if isinstance(ast, Add):
        return normalize_expr(ast.left, ext) + normalize_expr(ast.right, ext)
    if isinstance(ast, Sub):
        return normalize_expr(ast.left, ext) - normalize_expr(ast.right, ext)
    if isinstance(ast, Mul):
        return normalize_expr(ast.left, ext) * normalize_expr(ast.right, ext)
    if isinstance(ast, Pow):
        return normalize_expr(ast.base, ext) ** ast.exponent
    raise TypeError(f"not an expression node: {ast!r}")


def parse_poly(text: str, ext: Extension) -> SkewPoly:
    return normalize_expr(parse_expr(text, ext), ext)


# -- ring-spec files --------------------------------------------------------------

def _lit(ring: Ring, value, path: str) -> RingElem:
    if isinstance(value, int) and not isinstance(value, bool):
        value = str(value)
    if not isinstance(value, str):
        raise SpecError("entries must be strings in the coefficient grammar", path)
    try:
        return parse_ring_literal(ring, value)
    except ParseError as exc:
        raise SpecError(str(exc), path) from None


def extension_from_doc(doc: dict, check_laws: bool = True, seed: int = 0) -> Extension:
    if not isinstance(doc, dict):
        raise SpecError("ring spec must be a JSON object")
    if "ring" not in doc:
        raise SpecError("missing field", "ring")
    ring = ring_from_json(doc["ring"])
    for name in ring.gen_names:
        if _XVAR.match(name):
            raise SpecError(f"ring variable {name!r} clashes with skew variables x<k>", "ring.vars")
    n = doc.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise SpecError("must be a positive integer", "n")

    sigma_doc = doc.get("sigma", {}) or {}
    if not isinstance(sigma_doc, dict):
        raise SpecError("must be an object mapping ring generators to matrices", "sigma")
    images = {}
    for name, rows in sigma_doc.items():
        path = f"sigma.{name}"
        if name not in ring.gen_names:
            raise SpecError(f"{name!r} is not a generator of {ring}", path)
        if not isinstance(rows, list) or len(rows) != n or any(not isinstance(r, list) or len(r) != n for r in rows):
            raise SpecError(f"must be a {n}x{n} matrix", path)
        images[name] = [[_lit(ring, x, f"{path}[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(rows)]
    try:
        sigma = SigmaHom(ring, n, images)
    except InvalidStructure as exc:
        raise SpecError(f"{exc} (witness: {', '.join(map(str, exc.witness or ()))})", "sigma") from None

    delta_doc = doc.get("delta", {}) or {}
    if not isinstance(delta_doc, dict):
        raise SpecError("must be an object", "delta")
    try:
        if "inner" in delta_doc:
            c = delta_doc["inner"]
            if not isinstance(c, list) or len(c) != n:
                raise SpecError(f"must list {n} entries", "delta.inner")
            delta = delta_inner(sigma, [_lit(ring, x, f"delta.inner[{i}]") for i, x in enumerate(c)])
        else:
            dimages = {}
            for name, vec in delta_doc.items():
                path = f"delta.{name}"
                if name not in ring.gen_names:
                    raise SpecError(f"{name!r} is not a generator of {ring}", path)
                if not isinstance(vec, list) or len(vec) != n:
                    raise SpecError(f"must list {n} entries", path)
                dimages[name] = [_lit(ring, x, f"{path}[{i}]") for i, x in enumerate(vec)]
            delta = SigmaDerivation(sigma, dimages)
    except InvalidStructure as exc:
        raise SpecError(f"{exc} (witness: {', '.join(map(str, exc.witness or ()))})", "delta") from None

    ext = Extension(ring, n, sigma, delta)
    if check_laws:
        reports = ext.run_validation(seed=seed)
        for key, rep in reports.items():
            if not rep.passed:
                raise SpecError(f"law check failed: {rep}", "sigma" if key == "hom" else "delta")
    return ext


def parse_ring_spec(text: str, check_laws: bool = True, seed: int = 0) -> Extension:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"invalid JSON: {exc}") from None
    return extension_from_doc(doc, check_laws=check_laws, seed=seed)


def load_ring_spec(path, check_laws: bool = True, seed: int = 0) -> Extension:
    with open(path, encoding="utf-8") as fh:
        return parse_ring_spec(fh.read(), check_laws=check_laws, seed=seed)


def extension_to_doc(ext: Extension) -> dict:
    """JSON document describing ``ext`` (inverse of :func:`extension_from_doc`)."""
    doc = {"ring": ext.ring.to_json(), "n": ext.n}
    sigma = {}
    for name, img in ext.sigma.gen_images.items():
        sigma[name] = [[str(x) for x in row] for row in img.to_rows()]
    if sigma:
        doc["sigma"] = sigma
    if ext.delta.inner is not None:
        doc["delta"] = {"inner": [str(c) for c in ext.delta.inner]}
    elif not ext.delta.is_zero():
        doc["delta"] = {name: [str(x) for x in vec] for name, vec in ext.delta.gen_images.items()}
    return doc
