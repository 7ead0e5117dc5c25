from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from e7forge.config import BOURBAKI_E7_FIXTURE
from e7forge.errors import (
    DegenerateOnS,
    GoldenFormatError,
    NotCartan,
    NotInSpan,
    NotSemisimpleOverField,
    Unrecognized,
)
from e7forge.jsonio import load_json
from e7forge.lie_core import (
    SCAlgebra,
    ad_eigendecomposition,
    algebra_from_payload,
    algebra_to_payload,
    base_change,
    bourbaki_cartan_matrix,
    classify_cartan_matrix,
    erase_extended_node,
    identify_type,
    is_closed,
    jacobi_check,
    killing,
    killing_complement,
    roots,
    subalgebra,
)
from e7forge.linalg import axpy
from e7forge.quaternion import QuaternionAlgebra, sl1_structure


def sl(n: int) -> SCAlgebra:
    """sl_n on e_ij (i != j) followed by h_i = e_ii - e_(i+1)(i+1)."""

    units = [(i, j) for i in range(n) for j in range(n) if i != j]
    names = [f"e{i + 1}{j + 1}" for i, j in units] + [f"h{i + 1}" for i in range(n - 1)]

    def matrix(index):
        m = [[0] * n for _ in range(n)]
        if index < len(units):
            i, j = units[index]
            m[i][j] = 1
        else:
            i = index - len(units)
            m[i][i], m[i + 1][i + 1] = 1, -1
        return m

    def coords(m):
        vector = {units.index((i, j)): Fraction(m[i][j]) for i, j in units if m[i][j]}
        running = 0
        for i in range(n - 1):
            running += m[i][i]
            if running:
                vector[len(units) + i] = Fraction(running)
        return vector

    def product(a, b):
        return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]

    table = {}
    for a, b in itertools.combinations(range(len(names)), 2):
        x, y = matrix(a), matrix(b)
        xy, yx = product(x, y), product(y, x)
        table[(a, b)] = coords([[xy[i][j] - yx[i][j] for j in range(n)] for i in range(n)])
    return SCAlgebra.from_table(names, table)


def direct_sum(left: SCAlgebra, right: SCAlgebra) -> SCAlgebra:
    shift = left.dim
    table = {}
    for (i, j, k, v) in left.entries():
        if i < j:
            table[(i, j)] = {**table.get((i, j), {}), k: v}
    for (i, j, k, v) in right.entries():
        if i < j:
            key = (i + shift, j + shift)
            table[key] = {**table.get(key, {}), k + shift: v}
    names = [f"{n}a" for n in left.names] + [f"{n}b" for n in right.names]
    return SCAlgebra.from_table(names, table)


def test_sl2_brackets_and_killing():
    L = sl(2)
    assert L.names == ("e12", "e21", "h1")
    e, f, h = L.unit("e12"), L.unit("e21"), L.unit("h1")
    assert L.bracket(h, e) == {0: 2}
    assert L.bracket(e, f) == {2: 1}
    form = killing(L)
    assert form.nondegenerate
    assert form.value(h, h) == 8
    assert form.value(e, f) == 4
    assert form.value(e, e) == 0


def test_sl3_killing_is_six_times_trace_form():
    L = sl(3)
    h1, h2 = L.unit("h1"), L.unit("h2")
    form = killing(L)
    assert form.value(h1, h1) == 12
    assert form.value(h1, h2) == -6


def test_jacobi_passes_on_sl3():
    report = jacobi_check(sl(3), mode="full")
    assert report.passed
    assert report.triples_checked == 56
    assert report.to_payload()["witness"] is None


def test_jacobi_reports_first_failing_triple():
    broken = SCAlgebra.from_table(["x", "y", "z"], {(0, 1): {0: 1}, (0, 2): {1: 1}})
    report = jacobi_check(broken, mode="full")
    assert not report.passed
    assert report.witness == ("x", "y", "z")
    assert "y" in report.residual


def test_jacobi_rejects_unknown_mode():
    with pytest.raises(ValueError):
        jacobi_check(sl(2), mode="partial")


def test_from_table_rejects_nonzero_self_bracket():
    with pytest.raises(ValueError):
        SCAlgebra.from_table(["x"], {(0, 0): {0: 1}})


def test_golden_payload_roundtrip():
    L = sl(3)
    back = algebra_from_payload(algebra_to_payload(L))
    assert back.names == L.names
    assert back.brackets == L.brackets
    assert back.field.name == "QQ"


def test_golden_rejects_broken_antisymmetry():
    payload = algebra_to_payload(sl(2))
    first = payload["c"][0]
    payload["c"][0] = [first[0], first[1], first[2], "7"]
    with pytest.raises(GoldenFormatError):
        algebra_from_payload(payload)


@pytest.mark.parametrize(
    "mutate",
    [
        lambda p: p.pop("c"),
        lambda p: p["c"].append([0, 1, 99, "1"]),
        lambda p: p["c"].append([0, 0, 1, "1"]),
        lambda p: p["c"].append([0, 1]),
        lambda p: p.update(dim=5),
    ],
)
def test_golden_rejects_malformed_payloads(mutate):
    payload = algebra_to_payload(sl(2))
    mutate(payload)
    with pytest.raises(GoldenFormatError):
        algebra_from_payload(payload)


def test_ad_eigendecomposition_of_sl2():
    L = sl(2)
    spaces = ad_eigendecomposition(L, L.unit("h1"))
    assert sorted(spaces) == [-2, 0, 2]
    assert spaces[2] == [{0: 1}]
    assert spaces[-2] == [{1: 1}]


def test_nilpotent_element_is_not_diagonalizable():
    L = sl(2)
    with pytest.raises(NotSemisimpleOverField):
        ad_eigendecomposition(L, L.unit("e12"))


def test_anisotropic_torus_has_no_rational_eigenspaces():
    Q = QuaternionAlgebra(-1, -1)
    L = SCAlgebra.from_table(["i", "j", "k"], sl1_structure(Q))
    assert jacobi_check(L).passed
    with pytest.raises(NotSemisimpleOverField):
        ad_eigendecomposition(L, L.unit("i"))


def test_base_change_keeps_structure_constants():
    L = base_change(sl(2), -1)
    assert L.field.name == "QQ(sqrt(-1))"
    assert jacobi_check(L).passed
    assert killing(L).value(L.unit("h1"), L.unit("h1")) == 8


def test_subalgebra_and_closure():
    L = sl(3)
    borel = [L.unit("e12"), L.unit("h1")]
    assert is_closed(L, borel)
    S = subalgebra(L, borel)
    assert S.dim == 2
    assert S.bracket({1: 1}, {0: 1}) == {0: 2}
    with pytest.raises(NotInSpan):
        subalgebra(L, [L.unit("e12"), L.unit("e21")])


def test_roots_and_type_of_sl3():
    L = sl(3)
    datum = roots(L, [L.unit("h1"), L.unit("h2")])
    assert len(datum.roots) == 6
    ident = identify_type(datum)
    assert ident.label == "A2"
    assert erase_extended_node(datum, ident, 0) == "A2"


def test_type_of_a_direct_sum():
    L = direct_sum(sl(2), sl(2))
    datum = roots(L, [L.unit("h1a"), L.unit("h1b")])
    assert identify_type(datum).label == "2A1"


def test_killing_complement_in_a_direct_sum():
    L = direct_sum(sl(2), sl(2))
    first = [{n: 1} for n in range(3)]
    complement = killing_complement(L, first)
    assert len(complement) == 3
    assert all(min(vector) >= 3 for vector in complement)


def test_bourbaki_e7_matches_fixture():
    fixture = load_json(BOURBAKI_E7_FIXTURE)
    matrix = bourbaki_cartan_matrix("E", 7)
    assert [[int(matrix[i, j]) for j in range(7)] for i in range(7)] == fixture["cartan_matrix"]
    label, components = classify_cartan_matrix(fixture["cartan_matrix"])
    assert label == "E7"
    assert components[0].nodes == list(range(7))


def test_classify_rejects_unknown_graphs():
    triangle = [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]
    with pytest.raises(Unrecognized):
        classify_cartan_matrix(triangle)


def test_killing_form_is_invariant():
    L = sl(3)
    form = killing(L)
    rng = random.Random(2)
    for _ in range(10):
        x, y, z = ({n: Fraction(rng.randint(-3, 3)) for n in rng.sample(range(L.dim), 3)} for _ in range(3))
        assert form.value(L.bracket(x, y), z) + form.value(y, L.bracket(x, z)) == 0


def test_type_does_not_depend_on_functional_or_cartan_order():
    L = sl(4)
    cartan = [L.unit("h1"), L.unit("h2"), L.unit("h3")]
    datum = roots(L, cartan)
    assert len(datum.roots) == 12
    labels = {identify_type(datum, seed=seed).label for seed in range(6)}
    labels.add(identify_type(datum, functional=[5, -3, 1]).label)
    for order in itertools.permutations(cartan):
        labels.add(identify_type(roots(L, list(order)), seed=1).label)
    assert labels == {"A3"}


@pytest.mark.parametrize(
    "names",
    [["h1"], ["h1", "h2", "h1+h2"], ["h1", "2h1"], ["h1", "e12"]],
)
def test_roots_reject_bad_cartan_lists(names):
    L = sl(3)
    h1, h2 = L.unit("h1"), L.unit("h2")
    elements = {
        "h1": h1,
        "h2": h2,
        "h1+h2": axpy(dict(h1), 1, h2),
        "2h1": {k: 2 * v for k, v in h1.items()},
        "e12": L.unit("e12"),
    }
    with pytest.raises(NotCartan):
        roots(L, [elements[name] for name in names])


def test_killing_complement_needs_a_nondegenerate_subspace():
    L = sl(3)
    with pytest.raises(DegenerateOnS):
        killing_complement(L, [L.unit("e12")])
    with pytest.raises(DegenerateOnS):
        killing_complement(L, [L.unit("e12"), L.unit("e13")])
