import random

import pytest

from skewfree.errors import InvalidStructure, NotTriangular
from skewfree.linalg import RingMatrix
from skewfree.rings import IntegersMod, Poly, Rationals, TruncPoly
from skewfree.structure import (
    Extension,
    SigmaDerivation,
    SigmaHom,
    delta_inner,
    diag_is_automorphism,
    diag_is_injective,
    nilpotence_bound,
    sigma_power,
    sigma_word,
    validate_hom,
    validate_leibniz,
)
from skewfree.words import Word

QQ = Rationals()
QT = Poly(QQ, ["t"])


def test_sigma_substitution(configs):
    ext = configs("triangular")
    t = QT.parse("t")
    # [[t,1],[0,t]]^2 = [[t^2, 2t], [0, t^2]]
    assert ext.sigma(t * t).to_rows() == [[QT.parse("t^2"), QT.parse("2t")], [QT.zero(), QT.parse("t^2")]]
    assert ext.sigma(QT.parse("3")) == RingMatrix.scalar(QT.parse("3"), 2)


def test_sigma_power_block_layout(configs):
    sigma = configs("triangular").sigma
    a = QT.parse("t")
    big = sigma_power(sigma, a, 2)
    one = sigma(a)
    for k in range(2):
        for l in range(2):
            block = sigma(one[k, l])
            for i in range(2):
                for j in range(2):
                    assert big[2 * k + i, 2 * l + j] == block[i, j]


def test_sigma_power_multiplicative(configs):
    sigma = configs("triangular").sigma
    rng = random.Random(2)
    for _ in range(5):
        a, b = QT.random_element(rng, 2), QT.random_element(rng, 2)
        assert sigma_power(sigma, a * b, 2) == sigma_power(sigma, a, 2) * sigma_power(sigma, b, 2)


def test_truncpoly_sigma_must_be_nilpotent():
    T = TruncPoly(QQ, "t", 2)
    with pytest.raises(InvalidStructure):
        SigmaHom(T, 1, {"t": [["1"]]})
    SigmaHom(T, 1, {"t": [["t"]]})


def test_multivariate_images_must_commute():
    R = Poly(QQ, ["a", "b"])
    with pytest.raises(InvalidStructure):
        SigmaHom(R, 2, {"a": [["0", "1"], ["0", "0"]], "b": [["0", "0"], ["1", "0"]]})


def test_leibniz_on_ore(configs):
    ext = configs("ore")
    assert ext.delta(QT.parse("t^3")) == [QT.parse("3t^2")]
    assert validate_leibniz(ext.delta).passed


def test_twisted_leibniz_shift(configs):
    ext = configs("shift")
    # delta(t^2) = delta(t) sigma(t) + t delta(t) = (t + 1) + t
    assert ext.delta(QT.parse("t^2")) == [QT.parse("2t + 1")]
    assert validate_hom(ext.sigma).passed and validate_leibniz(ext.delta).passed


def test_inner_derivation(configs):
    ext = configs("diag_auto")
    c = [QT.parse("1"), QT.parse("t")]
    d = delta_inner(ext.sigma, c)
    a = QT.parse("t^2 + 1")
    expected = [a * c[j] - sum((c[i] * ext.sigma(a)[i, j] for i in range(2)), QT.zero()) for j in range(2)]
    assert d(a) == expected
    assert validate_leibniz(d).passed


def test_inner_on_commutative_identity_is_zero(configs):
    ext = configs("trunc_inner")
    assert ext.delta.is_zero()


def test_inconsistent_delta_rejected():
    R = Poly(QQ, ["a", "b"])
    sigma = SigmaHom.scalar(R, 1)
    with pytest.raises(InvalidStructure):
        # delta(ab) = 0*... + a*1 = a but delta(ba) = 1*a + b*1 = a + b
        SigmaDerivation(SigmaHom(R, 1, {"a": [["a"]], "b": [["0"]]}), {"a": ["1"], "b": ["1"]})
    SigmaDerivation(sigma, {"a": ["1"], "b": ["a"]})


def test_truncpoly_delta_must_kill_power():
    T = TruncPoly(QQ, "t", 2)
    sigma = SigmaHom.scalar(T, 1)
    with pytest.raises(InvalidStructure):
        SigmaDerivation(sigma, {"t": ["1"]})


def test_sigma_word_order(configs):
    ext = configs("diag_auto")
    t = QT.parse("t")
    # sigma_11 = id, sigma_22: t -> t + 1
    assert sigma_word(ext.sigma, Word((2, 2, 1), 2), t) == QT.parse("t + 2")
    with pytest.raises(NotTriangular):
        s = SigmaHom(QT, 2, {"t": [["t", "0"], ["1", "t"]]})
        sigma_word(s, Word((1,), 2), t)


def test_diag_automorphism_cases(configs):
    assert diag_is_automorphism(configs("diag_auto").sigma, 2) is True
    assert diag_is_automorphism(configs("diag").sigma, 2) is False
    assert diag_is_automorphism(SigmaHom(QT, 1, {"t": [["t^2"]]}), 1) is False
    assert diag_is_automorphism(SigmaHom(QT, 1, {"t": [["2t + 1"]]}), 1) is True
    assert diag_is_injective(SigmaHom(QT, 1, {"t": [["t^2"]]}), 1) is True
    assert diag_is_injective(configs("diag").sigma, 2) is False


def test_nilpotence_bounds(configs):
    ore = configs("ore")
    assert nilpotence_bound(ore.delta, QT.parse("t^2")) == 3
    assert nilpotence_bound(ore.delta, QT.zero()) == 1
    assert nilpotence_bound(configs("diag").delta, QT.parse("t")) == 1
    # t -> t + 1 twisted derivation with delta(t) = t never dies on t
    s = SigmaHom(QT, 1, {})
    grow = SigmaDerivation(s, {"t": ["t"]})
    assert nilpotence_bound(grow, QT.parse("t"), cap=10) is None


def test_extension_build_and_with_delta(configs):
    ext = Extension.build(IntegersMod(6), 2, check_laws=True)
    assert ext.sigma.is_scalar() and ext.delta.is_zero()
    assert configs("ore").with_delta().delta.is_zero()


def test_diag_automorphism_needs_unit_scaling():
    f5 = Poly(IntegersMod(5), ["t"])
    assert diag_is_automorphism(SigmaHom(f5, 1, {"t": [["5t + 1"]]}), 1) is False
    assert diag_is_automorphism(SigmaHom(f5, 1, {"t": [["3t + 1"]]}), 1) is True
    assert diag_is_automorphism(SigmaHom(QT, 1, {"t": [["2t"]]}), 1) is True
