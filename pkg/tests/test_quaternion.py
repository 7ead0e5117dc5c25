from __future__ import annotations

from fractions import Fraction

import pytest

from e7forge.errors import AlgebraMismatch, NotSplitHere, SymbolMismatch
from e7forge.exact_arith import QuadField
from e7forge.quaternion import (
    QuaternionAlgebra,
    matmul4,
    nrd,
    qconj,
    qconj_trd_nrd,
    qmul,
    qtensor_to_end,
    sl1_structure,
    split_matrix_units,
    trd,
)


@pytest.fixture()
def hamilton():
    return QuaternionAlgebra(-1, -1)


def test_generator_relations(hamilton):
    Q = QuaternionAlgebra(2, -3)
    i, j, k = Q.unit(1), Q.unit(2), Q.unit(3)
    assert qmul(i, i) == Q.one * 2
    assert qmul(j, j) == Q.one * -3
    assert qmul(i, j) == k
    assert qmul(j, i) == -k
    assert qmul(k, k) == Q.one * 6


def test_norm_is_multiplicative():
    Q = QuaternionAlgebra(Fraction(1, 2), 5)
    x = Q.element(1, 2, -1, 3)
    y = Q.element(0, 1, 4, Fraction(1, 3))
    assert nrd(qmul(x, y)) == nrd(x) * nrd(y)
    assert qmul(x, qconj(x)) == Q.one * nrd(x)
    assert trd(x) == 2


def test_conjugate_trace_and_norm_together():
    Q = QuaternionAlgebra(Fraction(1, 2), 5)
    conjugate, trace, norm = qconj_trd_nrd(Q.element(1, 2, -1, 3))
    assert conjugate == Q.element(1, -2, 1, -3)
    assert trace == 2
    assert norm == Fraction(33, 2)


def test_mixing_algebras_raises(hamilton):
    other = QuaternionAlgebra(1, 1)
    with pytest.raises(AlgebraMismatch):
        _ = hamilton.unit(1) + other.unit(1)


def test_declared_split_needs_the_unit_presentation():
    with pytest.raises(ValueError):
        QuaternionAlgebra(-1, -1, declared_split=True)
    with pytest.raises(ValueError):
        QuaternionAlgebra(0, 1)


def test_matrix_units_of_the_split_algebra():
    Q = QuaternionAlgebra(1, 1, declared_split=True)
    units = split_matrix_units(Q)
    e11, e12, e21, e22 = units.as_tuple()
    assert qmul(e11, e11) == e11
    assert qmul(e12, e21) == e11
    assert qmul(e21, e12) == e22
    assert (e11 + e22) == Q.one
    assert qmul(e11, e22).is_zero()
    assert qmul(e12, e12).is_zero()
    assert trd(e12) == 0 and trd(e21) == 0


def test_hamilton_has_no_matrix_units_over_q(hamilton):
    with pytest.raises(NotSplitHere):
        split_matrix_units(hamilton)


def test_hamilton_splits_over_gaussian_rationals(hamilton):
    Q = hamilton.over(QuadField(-1))
    units = split_matrix_units(Q)
    assert qmul(units.e12, units.e21) == units.e11
    assert qmul(units.h, units.h) == Q.one


def test_tensor_to_end_is_bijective(hamilton):
    assert qtensor_to_end(hamilton).is_bijective()
    assert qtensor_to_end(QuaternionAlgebra(3, 7)).is_bijective()
    with pytest.raises(SymbolMismatch):
        qtensor_to_end(hamilton, QuaternionAlgebra(1, 1))


def test_tensor_image_is_multiplicative(hamilton):
    phi = qtensor_to_end(hamilton)
    x, y = hamilton.element(1, 2, 0, -1), hamilton.element(0, 1, 1, 3)
    u, v = hamilton.element(2, 0, 1, 0), hamilton.element(1, -1, 0, 1)
    left = phi.image(qmul(x, u), qmul(y, v))
    right = matmul4(phi.image(x, y), phi.image(u, v))
    assert left == right
    assert phi.is_multiplicative()
    assert qtensor_to_end(QuaternionAlgebra(-1, 3)).is_multiplicative()


def test_sl1_brackets(hamilton):
    table = sl1_structure(hamilton)
    assert table[(0, 1)] == {2: 2}
    assert table[(1, 2)] == {0: 2}
    assert table[(2, 0)] == {1: 2}
    assert table[(1, 0)] == {2: -2}


def test_casimir_weights(hamilton):
    assert hamilton.casimir_weights() == (Fraction(-1, 2), Fraction(-1, 2), Fraction(-1, 2))
