from __future__ import annotations

import random
from fractions import Fraction

import numpy as np
import pytest

from e7forge.errors import BadPrime, DivisionByZero, FieldMismatch
from e7forge.exact_arith import (
    RATIONALS,
    PrimeField,
    PrimeScalar,
    QuadExtScalar,
    QuadField,
    as_rational,
    field_ops,
    format_scalar,
    is_squarefree,
    matmul_mod,
    parse_field,
    parse_scalar,
    prime_pool,
    rank_mod_p,
    rational_sqrt,
    reduce_mod_p,
    scalar_inverse,
    square_class,
)


def test_as_rational_accepts_ints_and_strings():
    assert as_rational(3) == Fraction(3)
    assert as_rational(" -7/4 ") == Fraction(-7, 4)
    with pytest.raises(TypeError):
        as_rational(True)


def test_rational_sqrt():
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(Fraction(2)) is None
    assert rational_sqrt(Fraction(-1)) is None


def test_square_class_strips_squares():
    assert square_class(Fraction(-12)) == (1, {3: 1})
    assert square_class(Fraction(18, 25)) == (0, {2: 1})
    with pytest.raises(DivisionByZero):
        square_class(Fraction(0))


def test_is_squarefree():
    assert is_squarefree(-1)
    assert is_squarefree(6)
    assert not is_squarefree(12)
    assert not is_squarefree(1)


def test_quadratic_extension_arithmetic():
    root = QuadExtScalar(0, 1, 2)
    assert root * root == 2
    x = QuadExtScalar(1, 1, 2)
    assert x * x.inverse() == 1
    assert (x - x) == 0
    assert not (x - x)
    with pytest.raises(FieldMismatch):
        _ = x + QuadExtScalar(0, 1, 3)


def test_quadfield_sqrt_finds_irrational_roots():
    field = QuadField(-1)
    i = field.sqrt(-1)
    assert i is not None and i * i == -1
    assert field.sqrt(Fraction(-4)) * field.sqrt(Fraction(-4)) == -4
    assert field.sqrt(3) is None
    with pytest.raises(ValueError):
        QuadField(4)


def test_prime_field_sqrt():
    field = PrimeField(13)
    root = field.sqrt(10)
    assert root is not None and (root.residue * root.residue) % 13 == 10
    assert field.sqrt(2) is None


def test_scalar_inverse_of_zero_raises():
    with pytest.raises(DivisionByZero):
        scalar_inverse(Fraction(0))
    with pytest.raises(ZeroDivisionError):
        scalar_inverse(0)


def test_field_ops_rejects_mixed_fields():
    with pytest.raises(FieldMismatch):
        field_ops(QuadExtScalar(1, 1, 2), QuadExtScalar(1, 1, 5), "add")
    assert field_ops(Fraction(1, 2), Fraction(1, 3), "mul") == Fraction(1, 6)
    with pytest.raises(DivisionByZero):
        field_ops(Fraction(1), Fraction(0), "div")


def test_scalar_text_format():
    value = QuadExtScalar(Fraction(-1, 2), 3, -1)
    assert format_scalar(value) == "-1/2+3/1*sqrt(-1)"
    assert parse_scalar(format_scalar(value)) == value
    assert parse_scalar("5/3") == Fraction(5, 3)
    assert parse_field("QQ(sqrt(-1))") == QuadField(-1)
    assert parse_field("QQ") == RATIONALS


def test_prime_pool_lies_above_floor():
    primes = prime_pool(3)
    assert len(primes) == 3
    assert all(p > 2 ** 20 for p in primes)
    assert primes == sorted(set(primes))


def test_reduce_mod_p_detects_bad_prime():
    assert reduce_mod_p(Fraction(1, 2), 7) == 4
    with pytest.raises(BadPrime):
        reduce_mod_p(Fraction(1, 7), 7)


def test_rank_mod_p_sparse_rows():
    rows = [{0: 1, 1: 2}, {0: 2, 1: 4}, {2: Fraction(1, 3)}]
    assert rank_mod_p(rows, prime_pool(1)[0], 3) == 2


def test_matmul_mod_matches_integer_product():
    p = prime_pool(1)[0]
    rng = np.random.default_rng(0)
    left = rng.integers(0, p, size=(5, 7), dtype=np.int64)
    right = rng.integers(0, p, size=(7, 4), dtype=np.int64)
    expected = np.array(
        [[sum(int(left[r, k]) * int(right[k, c]) for k in range(7)) % p for c in range(4)] for r in range(5)]
    )
    assert (matmul_mod(left, right, p) == expected).all()


def _random_scalar(kind, rng):
    if kind == "prime":
        return PrimeScalar(rng.randrange(13), 13)
    x = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
    if kind == "rational":
        return x
    return QuadExtScalar(x, Fraction(rng.randint(-9, 9), rng.randint(1, 9)), -1)


@pytest.mark.parametrize("kind", ["rational", "quadratic", "prime"])
def test_field_axioms_on_random_triples(kind):
    rng = random.Random(11)
    for _ in range(50):
        a, b, c = (_random_scalar(kind, rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a + b == b + a
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert a + 0 == a and a * 1 == a
        assert not (a - a)
        if a:
            assert a * scalar_inverse(a) == 1
            assert (b / a) * a == b


def test_prime_field_sqrt_of_large_prime():
    p = prime_pool(1)[0]
    field = PrimeField(p)
    root = field.sqrt(2 * 2 * 7 * 7)
    assert root is not None and root.residue * root.residue % p == 196
    nonresidue = next(n for n in range(2, 100) if pow(n, (p - 1) // 2, p) == p - 1)
    assert field.sqrt(nonresidue) is None
    assert field.sqrt(0).residue == 0
