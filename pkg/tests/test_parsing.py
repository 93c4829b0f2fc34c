import json
import random

import pytest

from skewfree.errors import ParseError, SpecError
from skewfree.parsing import (
    Add,
    Coeff,
    Mul,
    Pow,
    Var,
    extension_from_doc,
    extension_to_doc,
    normalize_expr,
    parse_expr,
    parse_poly,
    parse_ring_literal,
    parse_ring_spec,
)
from skewfree.rings import Poly, Rationals, TruncPoly
from skewfree.skewpoly import random_skewpoly, render

QT = Poly(Rationals(), ["t"])


def test_ring_literals():
    assert parse_ring_literal(QT, "2t^2 + 1/2*t - 1") == QT.parse("2*t^2 + (1/2)*t - 1")
    assert parse_ring_literal(QT, "-(t + 1)^2") == QT.parse("-t^2 - 2t - 1")
    T = TruncPoly(Rationals(), "t", 3)
    assert parse_ring_literal(T, "1/(1 + t)") == T.parse("1 - t + t^2")


@pytest.mark.parametrize("text", ["", "t +", "s", "1/t", "(t", "t^x", "2 $ 3"])
def test_ring_literal_errors(text):
    with pytest.raises(ParseError):
        parse_ring_literal(QT, text)


def test_error_position(configs):
    with pytest.raises(ParseError) as info:
        parse_poly("x1 + [t +]", configs("ore"))
    assert info.value.position == 9


def test_ast_shape(configs):
    ext = configs("triangular")
    ast = parse_expr("x1*[t]^2 + 3", ext)
    assert isinstance(ast, Add)
    assert isinstance(ast.left, Mul) and ast.left.left == Var(1)
    assert isinstance(ast.left.right, Pow) and ast.left.right.exponent == 2
    assert isinstance(ast.right, Coeff)


def test_spec_examples(configs):
    assert render(parse_poly("t*x2", configs("diag"))) == "0"
    assert render(parse_poly("x1*t + t*x1", configs("ore"))) == "x1*[2t] + [1]"
    assert render(parse_poly("(x1 + 1)^2", configs("z6"))) == "x1*x1 + x1*[2] + [1]"


def test_bare_coefficients(configs):
    ext = configs("triangular")
    assert parse_poly("3/2*x1", ext) == parse_poly("[3/2]*x1", ext)
    assert parse_poly("-x1", ext) == parse_poly("x1*[-1]", ext)
    assert parse_poly("t*x1", ext) == parse_poly("[t]*x1", ext)


@pytest.mark.parametrize("text", ["x3", "x0", "y", "x1 +", "x1^-1", "[t", "x1 x2"])
def test_expression_errors(configs, text):
    with pytest.raises(ParseError):
        parse_poly(text, configs("triangular"))


@pytest.mark.parametrize("name", ["ore", "diag", "triangular", "z6", "partials", "trunc_scalar"])
def test_render_round_trip(configs, name):
    ext = configs(name)
    rng = random.Random(17)
    for _ in range(25):
        f = random_skewpoly(ext, rng)
        assert parse_poly(render(f), ext) == f


def test_normalize_expr_direct(configs):
    ext = configs("ore")
    assert normalize_expr(parse_expr("t*x1", ext), ext) == parse_poly("x1*t + 1", ext)


def test_spec_defaults_and_round_trip(configs):
    ext = parse_ring_spec(json.dumps({"ring": {"kind": "poly", "base": "rationals", "vars": ["t"]}, "n": 2}))
    assert ext.delta.is_zero() and ext.sigma.is_scalar()
    for name in ("diag", "shift", "diag_auto_inner", "trunc_inner", "partials"):
        e = configs(name)
        assert extension_from_doc(extension_to_doc(e)) == e


@pytest.mark.parametrize("doc,path", [
    ({"n": 1}, "ring"),
    ({"ring": "rationals", "n": 0}, "n"),
    ({"ring": {"kind": "poly", "base": "rationals", "vars": ["t"]}, "n": 1, "sigma": {"s": [["t"]]}}, "sigma.s"),
    ({"ring": {"kind": "poly", "base": "rationals", "vars": ["t"]}, "n": 2, "sigma": {"t": [["t"]]}}, "sigma.t"),
    ({"ring": {"kind": "poly", "base": "rationals", "vars": ["t"]}, "n": 1, "delta": {"t": ["q"]}}, "delta.t[0]"),
    ({"ring": {"kind": "trunc_poly", "base": "rationals", "var": "t", "order": 2}, "n": 1,
      "sigma": {"t": [["1 + t"]]}}, "sigma"),
    ({"ring": {"kind": "poly", "base": "rationals", "vars": ["x1"]}, "n": 1}, "ring.vars"),
])
def test_spec_errors(doc, path):
    with pytest.raises(SpecError) as info:
        extension_from_doc(doc)
    assert info.value.path == path


def test_invalid_json():
    with pytest.raises(SpecError):
        parse_ring_spec("{not json")
