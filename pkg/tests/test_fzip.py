"""Filtered Frobenius-zip objects: types, tensor algebra, isomorphism search."""

import random

import pytest

from fziplab.fields import GF
from fziplab.fzip import (
    FZip,
    SearchBudgetError,
    direct_sum_fzip,
    dual_fzip,
    is_isomorphic,
    point_fzip,
    random_fzip,
    tensor_fzip,
)
from fziplab.gmodule import standard_module, tensor_module, trivial_module
from fziplab.rootdata import Vec, type_A, type_C

GL2 = type_A(1, reductive=True, label="GL2")
GSP4 = type_C(2, reductive=True, label="GSp4")
F2, F3, F5 = GF(2), GF(3), GF(5)


def _split_zip(field, type_dict):
    """The standard split zip of a given type (identity transport)."""
    return random_fzip(field, type_dict, random.Random(0))


def test_point_zip_of_the_modular_datum():
    z = point_fzip(standard_module(GL2), Vec((1, 0)), F5)
    assert z.dim == 2
    assert z.zip_type() == {0: 1, 1: 1}
    assert z.validate() == []


def test_point_zip_of_the_siegel_datum():
    z = point_fzip(standard_module(GSP4), Vec((1, 1, 1)), F3)
    assert z.dim == 4
    assert z.zip_type() == {0: 2, 1: 2}
    assert z.d_type() == z.zip_type()
    assert z.validate() == []


def test_zip_requires_positive_characteristic():
    from fziplab.fields import QQ

    with pytest.raises(ValueError):
        point_fzip(standard_module(GL2), Vec((1, 0)), QQ)


def test_json_roundtrip():
    z = point_fzip(standard_module(GSP4), Vec((1, 1, 1)), F3)
    data = z.to_json()
    assert data["schema"] == "fzip/1"
    assert data["base"] == {"kind": "F", "p": 3, "e": 1}
    assert {c["i"] for c in data["C"]} == {0, 1, 2}
    again = FZip.from_json(data)
    assert again == z


@pytest.mark.parametrize("seed", [1, 2, 3])
@pytest.mark.parametrize(
    "field,type_dict",
    [(F2, {0: 1, 1: 2}), (F3, {-1: 1, 1: 1}), (F5, {0: 2, 2: 1})],
)
def test_random_zip_has_the_requested_type(field, type_dict, seed):
    z = random_fzip(field, type_dict, random.Random(seed))
    assert z.validate() == []
    assert z.zip_type() == type_dict
    assert z.dim == sum(type_dict.values())


def test_tensor_type_is_the_convolution():
    z1 = random_fzip(F3, {0: 1, 1: 1}, random.Random(7))
    z2 = random_fzip(F3, {0: 1, 2: 1}, random.Random(8))
    prod = tensor_fzip(z1, z2)
    assert prod.validate() == []
    assert prod.zip_type() == {0: 1, 1: 1, 2: 1, 3: 1}

    siegel = point_fzip(standard_module(GSP4), Vec((1, 1, 1)), F3)
    square = tensor_fzip(siegel, siegel)
    assert square.zip_type() == {0: 4, 1: 8, 2: 4}


def test_dual_reflects_the_type():
    z = random_fzip(F3, {0: 2, 1: 1, 3: 1}, random.Random(9))
    dz = dual_fzip(z)
    assert dz.validate() == []
    assert dz.zip_type() == {0: 2, -1: 1, -3: 1}
    back = dual_fzip(dz)
    assert back.zip_type() == z.zip_type()
    assert is_isomorphic(back, z)


def test_direct_sum_adds_types():
    z1 = random_fzip(F2, {0: 1, 1: 1}, random.Random(4))
    z2 = random_fzip(F2, {1: 1, 2: 1}, random.Random(5))
    s = direct_sum_fzip(z1, z2)
    assert s.validate() == []
    assert s.zip_type() == {0: 1, 1: 2, 2: 1}


def test_unit_for_the_tensor_product():
    unit = point_fzip(trivial_module(GL2), Vec((1, 0)), F3)
    assert unit.zip_type() == {0: 1}
    z = random_fzip(F3, {0: 1, 1: 1}, random.Random(11))
    assert is_isomorphic(tensor_fzip(unit, z), z)
    assert is_isomorphic(tensor_fzip(z, unit), z)


def test_point_zip_respects_tensor_products():
    std = standard_module(GL2)
    mu = Vec((1, 0))
    combined = point_fzip(tensor_module(std, std), mu, F5)
    split = tensor_fzip(point_fzip(std, mu, F5), point_fzip(std, mu, F5))
    assert combined.zip_type() == split.zip_type()
    assert is_isomorphic(combined, split)


def test_validate_reports_structural_problems():
    one, zero = F2.one(), F2.zero()
    full = [[one, zero], [zero, one]]
    e0, e1 = [one, zero], [zero, one]

    # C-graded dimensions disagree with D-graded dimensions
    bad = FZip(
        F2,
        2,
        {0: full, 1: [e0], 2: []},
        {-1: [], 0: [e0, e1], 1: full},
        {0: [[one]], 1: [[one]]},
    )
    assert any("graded dimensions differ" in p for p in bad.validate())

    # singular graded map
    sing = FZip(
        F2,
        2,
        {0: full, 1: [e0], 2: []},
        {-1: [], 0: [e1], 1: full},
        {0: [[zero]], 1: [[one]]},
    )
    assert any("not invertible" in p for p in sing.validate())

    # missing graded map
    missing = FZip(
        F2,
        2,
        {0: full, 1: [e0], 2: []},
        {-1: [], 0: [e1], 1: full},
        {1: [[one]]},
    )
    assert any("missing graded map" in p for p in missing.validate())


def test_isomorphism_distinguishes_filtration_positions():
    one, zero = F3.one(), F3.zero()
    full = [[one, zero], [zero, one]]
    e0, e1 = [one, zero], [zero, one]
    ident1 = [[one]]
    touching = FZip(F3, 2, {0: full, 1: [e0], 2: []}, {-1: [], 0: [e0], 1: full},
                    {0: ident1, 1: ident1})
    crossing = FZip(F3, 2, {0: full, 1: [e0], 2: []}, {-1: [], 0: [e1], 1: full},
                    {0: ident1, 1: ident1})
    assert touching.validate() == [] and crossing.validate() == []
    assert touching.zip_type() == crossing.zip_type()
    assert not is_isomorphic(touching, crossing)
    assert is_isomorphic(touching, touching)
    assert is_isomorphic(crossing, crossing)


def test_isomorphism_ignores_the_ambient_basis():
    z1 = random_fzip(F2, {0: 1, 1: 1}, random.Random(21))
    z2 = random_fzip(F2, {0: 1, 1: 1}, random.Random(22))
    # both are basis transports of the same split object
    assert is_isomorphic(z1, z2)


def test_type_mismatch_short_circuits():
    z1 = _split_zip(F2, {0: 1, 1: 1})
    z2 = _split_zip(F2, {0: 2})
    assert not is_isomorphic(z1, z2)


def test_search_budget_raises():
    z = random_fzip(F5, {0: 2, 1: 2}, random.Random(13))
    with pytest.raises(SearchBudgetError):
        is_isomorphic(z, z, budget=3)
