import inspect
import random

import pytest

from skewfree import oracle
from skewfree.oracle import SupportedFunction, apply_generator, apply_scalar, oracle_mul
from skewfree.parsing import parse_poly
from skewfree.skewpoly import random_skewpoly


def test_oracle_is_independent_of_rewriting():
    src = inspect.getsource(oracle)
    assert "_push" not in src and "push_left_coefficient" not in src
    assert "import mul" not in src and " mul(" not in src


def test_generator_action_on_indicator(configs):
    ext = configs("diag")
    t = ext.ring.parse("t")
    f = SupportedFunction(ext, {(): t})
    # (f x_2)(z_i) = sigma_i2(t): only sigma_22(t) = 0 could appear, so f x_2 = 0
    assert apply_generator(f, 2).values == {}
    assert apply_generator(f, 1).values == {(1,): t}


def test_ore_example(configs):
    ext = configs("ore")
    f, g = parse_poly("t", ext), parse_poly("x1^2", ext)
    assert oracle_mul(f, g) == parse_poly("x1^2*t + 2*x1", ext)


def test_scalar_action(configs):
    ext = configs("z6")
    f = SupportedFunction.indicator(ext)
    assert apply_scalar(f, 3).values == {(): ext.ring.from_int(3)}


@pytest.mark.parametrize("name", ["ore", "diag", "triangular", "z6", "shift", "partials", "trunc_scalar",
                                  "diag_auto_inner"])
def test_oracle_matches_rewriting(configs, name):
    ext = configs(name)
    rng = random.Random(sum(map(ord, name)))
    for _ in range(40):
        f, g = random_skewpoly(ext, rng), random_skewpoly(ext, rng)
        assert oracle_mul(f, g) == f * g
