from __future__ import annotations

from fractions import Fraction

import pytest

from e7forge.fano import PLANE
from e7forge.tensor_split import (
    TensorSpace,
    build_valpha,
    casimir_value,
    check_module,
    clebsch_gordan_spins,
    cross_bracket_space,
    equivariant_map_space,
    identity,
    madd,
    matmul,
    mscale,
    proportionality,
    self_bracket_space,
    sl1_module,
    tensor_representation,
    trace_form_self_map,
)


def test_clebsch_gordan_and_casimir_values():
    assert clebsch_gordan_spins([Fraction(1), Fraction(1, 2), Fraction(1, 2)]) == [0, 1, 2]
    assert clebsch_gordan_spins([Fraction(1, 2)] * 2) == [0, 1]
    assert casimir_value(Fraction(1, 2)) == Fraction(3, 2)
    assert casimir_value(Fraction(1)) == 4


@pytest.mark.parametrize("line", PLANE.lines)
def test_valpha_modules_are_irreducible(split_labeling, hamilton_labeling, line):
    for labeling in (split_labeling, hamilton_labeling):
        report = check_module(build_valpha(labeling, line), labeling)
        assert report["commute"]
        assert report["homomorphism"]
        assert report["generated_dimension"] == 256
        assert report["tensor_iso"]
        assert report["ok"]


def test_casimir_acts_by_three_halves_on_valpha(hamilton_labeling):
    module = build_valpha(hamilton_labeling, 1)
    rep = module.representation
    for point, generators in rep.actions.items():
        casimir = [dict() for _ in range(rep.dim)]
        for weight, matrix in zip(rep.casimir[point], generators):
            casimir = madd(casimir, matmul(matrix, matrix), weight)
        assert casimir == mscale(identity(rep.dim), Fraction(3, 2))


def test_self_bracket_is_unique_up_to_scale(hamilton_labeling):
    module = build_valpha(hamilton_labeling, 1)
    for point in PLANE.quadruple(1):
        target = sl1_module(hamilton_labeling.symbol_at[point], point)
        projected = self_bracket_space(module, target, method="projector", seed=3)
        solved = self_bracket_space(module, target, method="linear")
        assert projected.dimension == solved.dimension == 1
        assert projected.method != solved.method
        assert proportionality(projected.maps[0], solved.maps[0]) is not None
        assert proportionality(trace_form_self_map(module, point), solved.maps[0]) is not None


def test_cross_bracket_space_is_a_line(split_labeling):
    alpha, beta = PLANE.line_pairs()[0]
    gamma = PLANE.third_line(alpha, beta)
    modules = {line: build_valpha(split_labeling, line) for line in (alpha, beta, gamma)}
    space = cross_bracket_space(modules[alpha], modules[beta], modules[gamma])
    assert space.dimension == 1
    assert space.prime is not None
    (single,) = space.maps
    assert all(len(key) == 2 for key in single)


def test_adjoint_module_has_scalar_endomorphisms_only(hamilton_labeling):
    rep = sl1_module(hamilton_labeling.symbol_at["Q1"], "Q1")
    space = equivariant_map_space(rep, rep, method="linear")
    assert space.dimension == 1


def test_projector_engine_needs_spin_data(split_labeling):
    module = build_valpha(split_labeling, 1)
    bare = tensor_representation([module.representation])
    with pytest.raises(ValueError):
        equivariant_map_space(TensorSpace((bare,)), module.representation, method="projector")
