from __future__ import annotations

import dataclasses
from fractions import Fraction

import pytest

from e7forge.config import BOURBAKI_E7_FIXTURE, HAMILTON_FIXTURE
from e7forge.errors import LabelingRejected
from e7forge.fano import PLANE, POINT_NAMES, labeling_from_payload
from e7forge.jsonio import load_json
from e7forge.lie_core import (
    SCAlgebra,
    algebra_from_payload,
    erase_extended_node,
    highest_root,
    identify_type,
    jacobi_check,
    killing,
    roots,
)
from e7forge.manivel_e7 import (
    BLOCK,
    DIM,
    H_DIM,
    assemble,
    base_change_assembly,
    block_containment_violations,
    bracket_model,
    constant_name,
    golden_payload,
    h_subalgebra_check,
    line_subalgebra_check,
    solve_constants,
    split_cartan,
    v_index,
)


def test_layout_constants():
    assert (H_DIM, BLOCK, DIM) == (21, 16, 133)
    assert v_index(1, 0) == 21
    assert v_index(7, 15) == 132


def test_split_assembly_is_certified(split_assembly):
    A = split_assembly
    assert A.algebra.dim == 133
    assert A.algebra.names[:3] == ("Q:i", "Q:j", "Q:k")
    assert A.certificates["jacobi"]["passed"]
    assert A.certificates["killing"]["nondegenerate"]
    assert len(A.intertwiners) == 49
    assert all(space.dimension == 1 for space in A.intertwiners.values())


def test_split_brackets_stay_in_their_blocks(split_assembly):
    blocks = split_assembly.block_index
    assert blocks["Q:i"] == "Q"
    assert sorted(set(blocks.values())) == sorted(set(POINT_NAMES) | {PLANE.line_name(line) for line in PLANE.lines})
    assert block_containment_violations(split_assembly) == []


def test_hamilton_assembly_over_rationals(hamilton_assembly):
    A = hamilton_assembly
    assert A.algebra.field.name == "QQ"
    assert A.certificates["jacobi"]["passed"]
    assert A.certificates["killing"]["rank"] == 133
    assert block_containment_violations(A) == []
    assert sorted(split_cartan(A)) == sorted(["Q", "Q3", "H3"])


def test_rejected_labeling_is_not_assembled():
    payload = load_json(HAMILTON_FIXTURE)
    payload["points"]["H3"] = {"symbol": [-1, -1], "class": [1], "split": False}
    with pytest.raises(LabelingRejected) as info:
        assemble(labeling_from_payload(payload))
    assert info.value.violations


def test_line_subalgebras_of_split_form(split_assembly):
    for line in PLANE.lines:
        report = line_subalgebra_check(split_assembly, line)
        assert report["ok"], report
        assert report["dim"] == 37
        assert report["ideal_dim"] == 28
        assert report["ideal_type"] == "D4"
        assert report["ideal_roots"] == 24


def test_line_subalgebras_skip_type_over_anisotropic_points(hamilton_assembly):
    reports = [line_subalgebra_check(hamilton_assembly, line) for line in PLANE.lines]
    assert all(report["ok"] for report in reports)
    assert any(report["ideal_type"] is None for report in reports)


def test_h_is_seven_copies_of_sl2(split_assembly):
    report = h_subalgebra_check(split_assembly)
    assert report["ok"]
    assert report["type"] == "7A1"


def test_split_form_is_e7(split_assembly):
    cartan = split_cartan(split_assembly)
    assert sorted(cartan) == sorted(POINT_NAMES)
    datum = roots(split_assembly.algebra, [cartan[p] for p in POINT_NAMES])
    fixture = load_json(BOURBAKI_E7_FIXTURE)
    assert len(datum.roots) == fixture["root_count"]
    ident = identify_type(datum)
    assert ident.label == "E7"
    nodes = ident.components[0].nodes
    assert [[ident.cartan_matrix[i][j] for j in nodes] for i in nodes] == fixture["cartan_matrix"]
    _, coords = highest_root(datum, ident)
    assert coords == fixture["highest_root"]
    assert erase_extended_node(datum, ident, 1) == "A1+D6"
    assert erase_extended_node(datum, ident, 0) == "E7"


def test_golden_payload_reloads(split_assembly):
    payload = golden_payload(split_assembly)
    assert payload["dim"] == 133
    assert payload["labeling"]["class_rank"] == split_assembly.labeling.class_rank
    again = algebra_from_payload(payload)
    assert again.brackets == split_assembly.algebra.brackets


@pytest.mark.slow
def test_full_jacobi_on_split_form(split_assembly):
    report = jacobi_check(split_assembly.algebra, "full", threads=2)
    assert report.passed
    assert report.triples_checked == 133 * 132 * 131 // 6


@pytest.mark.slow
def test_hamilton_form_splits_over_gaussian_field(hamilton_assembly):
    A = base_change_assembly(hamilton_assembly, -1)
    assert A.algebra.field.name == "QQ(sqrt(-1))"
    cartan = split_cartan(A)
    assert sorted(cartan) == sorted(POINT_NAMES)
    assert killing(A.algebra).nondegenerate
    datum = roots(A.algebra, [cartan[p] for p in POINT_NAMES])
    assert len(datum.roots) == 126
    assert identify_type(datum).label == "E7"


def _rescale_block(L, line, factor):
    """Structure constants in the basis where V_line is multiplied by ``factor``."""

    block = set(range(v_index(line, 0), v_index(line, 0) + BLOCK))

    def weight(n):
        return factor if n in block else 1

    table = {}
    for i, j, k, value in L.entries():
        if i < j:
            table.setdefault((i, j), {})[k] = value * weight(i) * weight(j) / weight(k)
    return SCAlgebra.from_table(L.names, table, L.field)


def test_rescaling_one_block_keeps_the_type(split_assembly):
    L = _rescale_block(split_assembly.algebra, 3, Fraction(3))
    assert L.brackets != split_assembly.algebra.brackets
    assert jacobi_check(L, "sampled", samples=300, seed=4).passed
    cartan = split_cartan(split_assembly)
    datum = roots(L, [cartan[p] for p in POINT_NAMES])
    assert len(datum.roots) == 126
    assert identify_type(datum).label == "E7"


@pytest.mark.slow
def test_pairing_orientation_does_not_change_the_verdicts(split_labeling):
    reversed_pairs = {
        line: tuple((second, first) for first, second in split_labeling.pairing_at(line)) for line in PLANE.lines
    }
    labeling = dataclasses.replace(split_labeling, declared_pairings=reversed_pairs)
    A = assemble(labeling, certify=True, seed=0, threads=2)
    assert A.algebra.dim == 133
    assert A.certificates["jacobi"]["passed"]
    assert A.certificates["killing"]["rank"] == 133
    assert block_containment_violations(A) == []
    cartan = split_cartan(A)
    datum = roots(A.algebra, [cartan[p] for p in POINT_NAMES])
    assert len(datum.roots) == 126
    assert identify_type(datum).label == "E7"


@pytest.mark.slow
def test_solver_absorbs_a_sign_flipped_intertwiner(split_assembly):
    A = split_assembly
    name = constant_name(("c", PLANE.line_pairs()[0]))
    space = A.intertwiners[name]
    flipped = [{key: {k: -v for k, v in vector.items()} for key, vector in table.items()} for table in space.maps]
    intertwiners = dict(A.intertwiners)
    intertwiners[name] = dataclasses.replace(space, maps=flipped)
    model = bracket_model(A.labeling, A.modules, intertwiners)
    constants, _, jacobi = solve_constants(model, certify=True, threads=2)
    assert jacobi is not None and jacobi.passed
    assert killing(model.algebra(constants)).nondegenerate
