import random

import pytest

from skewfree.errors import NotInvertible, Unsupported
from skewfree.linalg import (
    RingMatrix,
    adjugate,
    determinant,
    field_kernel_vector,
    fraction_field_rank,
    matrix_inverse,
    solve_right_dependence,
)
from skewfree.rings import Integers, IntegersMod, Poly, Rationals, TruncPoly

QQ = Rationals()
QT = Poly(QQ, ["t"])


def M(ring, rows):
    return RingMatrix.from_rows(ring, [[ring.coerce(x) for x in r] for r in rows])


def test_diag_t_zero_dependence():
    b = solve_right_dependence(M(QT, [["t", 0], [0, 0]]))
    assert b == [QT.zero(), QT.one()]


def test_independent_columns():
    assert solve_right_dependence(M(QT, [["t", 1], [0, "t"]])) is None


def test_integer_dependence_is_content_free():
    b = solve_right_dependence(M(Integers(), [[2, 4], [1, 2]]))
    assert b is not None and not any(M(Integers(), [[2, 4], [1, 2]]).apply(b))


def test_polynomial_dependence_verifies():
    m = M(QT, [["t", "t^2", 1], ["1", "t", "t + 1"]])
    b = solve_right_dependence(m)
    assert any(b) and not any(m.apply(b))


def test_truncpoly_over_field():
    T = TruncPoly(QQ, "t", 2)
    b = solve_right_dependence(M(T, [["t", 0], [0, "t"]]))
    assert any(b) and not any(M(T, [["t", 0], [0, "t"]]).apply(b))
    assert solve_right_dependence(M(T, [[1, 0], [0, 1]])) is None


def test_exhaustive_composite_modulus():
    Z6 = IntegersMod(6)
    b = solve_right_dependence(M(Z6, [[2, 0], [0, 1]]))
    assert any(b) and not any(M(Z6, [[2, 0], [0, 1]]).apply(b))


def test_unsupported_ring():
    T = TruncPoly(Integers(), "t", 3)
    with pytest.raises(Unsupported):
        solve_right_dependence(M(T, [["t", 1], [0, "t"]]))


def test_inverse_over_polynomials():
    m = M(QT, [[1, "t"], [0, 1]])
    assert matrix_inverse(m) * m == RingMatrix.identity(QT, 2)
    with pytest.raises(NotInvertible):
        matrix_inverse(M(QT, [["t", 0], [0, 1]]))


def test_adjugate_identity():
    rng = random.Random(3)
    for _ in range(10):
        m = RingMatrix.from_rows(QT, [[QT.random_element(rng, 2) for _ in range(3)] for _ in range(3)])
        assert m * adjugate(m) == RingMatrix.scalar(determinant(m), 3)


def test_inverse_large_unimodular():
    # upper unitriangular times lower unitriangular is unimodular
    n = 5
    rng = random.Random(5)
    U = RingMatrix.from_rows(QT, [[QT.one() if i == j else (QT.random_element(rng, 1) if j > i else QT.zero())
                                   for j in range(n)] for i in range(n)])
    L = RingMatrix.from_rows(QT, [[QT.one() if i == j else (QT.random_element(rng, 1) if j < i else QT.zero())
                                   for j in range(n)] for i in range(n)])
    m = U * L
    assert matrix_inverse(m) * m == RingMatrix.identity(QT, n)


def test_field_kernel():
    rows = [[QQ.coerce(1), QQ.coerce(2)], [QQ.coerce(2), QQ.coerce(4)]]
    x = field_kernel_vector(rows, 2, QQ)
    assert x is not None and all(not (r[0] * x[0] + r[1] * x[1]) for r in rows)


def test_rank():
    assert fraction_field_rank(M(QT, [["t", "t^2"], [1, "t"]])) == 1
    assert fraction_field_rank(M(QT, [["t", 1], [0, "t"]])) == 2


def test_random_witnesses_verify():
    rng = random.Random(11)
    for _ in range(30):
        rows = [[QT.random_element(rng, 2) for _ in range(3)] for _ in range(2)]
        m = RingMatrix.from_rows(QT, rows)
        b = solve_right_dependence(m)
        # 2 x 3 over a domain always has a dependence
        assert b is not None and any(b) and not any(m.apply(b))
