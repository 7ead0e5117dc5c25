from __future__ import annotations

import random
from fractions import Fraction

import pytest

from e7forge.errors import DivisionByZero, NotInSpan
from e7forge.exact_arith import QuadExtScalar, prime_pool, rank_mod_p
from e7forge.linalg import (
    SparseEchelon,
    Subspace,
    axpy,
    certified_rank,
    dense_inverse,
    exact_rank,
    modular_ranks,
    nullspace,
)


def test_axpy_drops_cancelled_entries():
    target = {0: Fraction(1), 1: Fraction(2)}
    axpy(target, -1, {0: Fraction(1)})
    assert target == {1: Fraction(2)}


def test_echelon_rows_are_fully_reduced():
    echelon = SparseEchelon()
    assert echelon.add({0: 2, 1: 1})
    assert echelon.add({0: 1, 2: 1})
    assert not echelon.add({0: 3, 1: 1, 2: 1})
    for pivot, row in echelon.rows.items():
        assert row[pivot] == 1
        assert all(row.get(other, 0) == 0 for other in echelon.rows if other != pivot)


def test_nullspace_vectors_annihilate_rows():
    rows = [{0: 1, 1: 1, 2: 1}, {1: 1, 3: -1}]
    kernel = nullspace(rows, 4)
    assert len(kernel) == 2
    for vector in kernel:
        for row in rows:
            assert sum(row.get(k, 0) * v for k, v in vector.items()) == 0


def test_subspace_coordinates_and_membership():
    span = Subspace([{0: 1, 1: 1}, {1: 1, 2: Fraction(1, 2)}])
    target = {0: 3, 1: 5, 2: 1}
    assert span.coordinates(target) == {0: 3, 1: 2}
    assert not span.contains({2: 1})
    with pytest.raises(NotInSpan):
        span.coordinates({2: 1})


def test_subspace_spanning_mode_reports_kept_indices():
    span = Subspace.spanned_by([{0: 1}, {0: 2}, {1: 1}])
    assert span.dim == 2
    assert span.kept == [0, 2]
    with pytest.raises(ValueError):
        Subspace([{0: 1}, {0: 2}])


def test_dense_inverse_roundtrip_and_singular():
    matrix = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(1)]]
    inverse = dense_inverse(matrix)
    assert inverse == [[1, -1], [-1, 2]]
    with pytest.raises(DivisionByZero):
        dense_inverse([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]])


def test_exact_rank_over_quadratic_field():
    s = QuadExtScalar(0, 1, 2)
    rows = [{0: s, 1: 1}, {0: 2, 1: s}]
    assert exact_rank(rows) == 1


def test_certified_rank_certificates():
    primes = prime_pool(2)
    rank, certificate = certified_rank([{0: 1}, {1: Fraction(1, 3)}], 2, primes)
    assert (rank, certificate) == (2, f"mod {primes[0]}")
    rank, certificate = certified_rank([{0: 1, 1: 1}, {0: 2, 1: 2}], 2, primes)
    assert (rank, certificate) == (1, "exact")
    s = QuadExtScalar(0, 1, 2)
    rank, certificate = certified_rank([{0: s}, {1: 1}], 2, primes)
    assert (rank, certificate) == (2, "exact")


def test_modular_rank_never_exceeds_exact_rank():
    rng = random.Random(5)
    p = 13
    for _ in range(12):
        nrows, ncols = rng.randint(1, 20), rng.randint(1, 20)
        generators = [
            {c: Fraction(rng.randint(-4, 4), rng.choice((1, 2, 3))) for c in range(ncols)}
            for _ in range(rng.randint(1, min(nrows, ncols)))
        ]
        rows = []
        for _ in range(nrows):
            row: dict = {}
            for generator in generators:
                axpy(row, rng.randint(-3, 3), generator)
            rows.append(row)
        exact = exact_rank(rows)
        assert exact <= len(generators)
        assert rank_mod_p(rows, p, ncols) <= exact


def test_modular_ranks_skip_bad_primes_and_irrational_entries():
    rows = [{0: Fraction(1, 7), 1: 1}, {1: 2}]
    assert modular_ranks(rows, 2, [7, 11]) == {"7": None, "11": 2}
    irrational = [{0: QuadExtScalar(1, 1, -1)}]
    assert modular_ranks(irrational, 1, prime_pool(2)) == {str(p): None for p in prime_pool(2)}
