"""Truncated standard complexes, their filtrations, and the page bookkeeping."""

import dataclasses

import pytest

from fziplab.complexes import (
    bgg_page,
    euler_character_check,
    graded_compare,
    p_std_complex,
    std_complex,
)
from fziplab.fields import GF, QQ
from fziplab.gmodule import trivial_module, weyl_module
from fziplab.linalg import csc_from_coldict
from fziplab.parabolic import ParabolicData
from fziplab.rootdata import Vec, type_A, type_C

GL2 = type_A(1, reductive=True, label="GL2")
GL3 = type_A(2, reductive=True, label="GL3")
GSP4 = type_C(2, reductive=True, label="GSp4")

PD_GL2 = ParabolicData(GL2, Vec((1, 0)))
PD_GL3 = ParabolicData(GL3, Vec((1, 0, 0)))
PD_GSP4 = ParabolicData(GSP4, Vec((1, 1, 1)))


def test_trivial_module_complex_is_polynomial_multiplication():
    cx = std_complex(PD_GL2, trivial_module(GL2), 3)
    assert cx.length == 1
    assert [cx.term_dim(j) for j in range(2)] == [4, 4]
    # the only differential raises the polynomial degree by one, and the
    # top monomial falls off the truncation
    cols = {c: dict(cx.diffs[0].col(c)) for c in range(4)}
    assert cols == {0: {1: 1}, 1: {2: 1}, 2: {3: 1}, 3: {}}
    assert cx.c_levels(0) == (0, 0, 0, 0)
    assert cx.c_levels(1) == (-1, -1, -1, -1)
    assert cx.d_levels(1) == (1, 1, 1, 1)


def test_complex_shape_and_levels():
    module = weyl_module(GL3, Vec((1, 1, 0)))
    cx = std_complex(PD_GL3, module, 4)
    assert cx.length == len(PD_GL3.unipotent_roots) == 2
    mu = PD_GL3.mu
    for j in range(cx.length + 1):
        for idx, (mono, wedge, v) in enumerate(cx.bases[j]):
            level = int(module.weights[v].pair(mu)) - len(wedge)
            assert cx.c_levels(j)[idx] == level
            assert cx.d_levels(j)[idx] == -level
    census = cx.degree_weight_census()
    for j in range(cx.length + 1):
        total = sum(n for (jj, _, _), n in census.items() if jj == j)
        assert total == cx.term_dim(j)


def test_entry_weights_shift_by_the_acting_roots():
    module = weyl_module(GSP4, Vec((1, 0, 0)))
    cx = std_complex(PD_GSP4, module, 2)
    for j in (0, 1):
        mat = cx.diffs[j]
        src_w = [cx.entry_weight(j + 1, i) for i in range(cx.term_dim(j + 1))]
        dst_w = [cx.entry_weight(j, i) for i in range(cx.term_dim(j))]
        for c in range(mat.ncols):
            for r, _ in mat.col(c):
                assert dst_w[r] == src_w[c], "differentials preserve weights"


@pytest.mark.parametrize(
    "pdata,lam,dmax",
    [
        (PD_GL3, (1, 1, 0), 4),
        (PD_GSP4, (1, 0, 0), 3),
        (PD_GSP4, (1, 1, 0), 2),
    ],
)
def test_square_zero_and_filtrations(pdata, lam, dmax):
    module = weyl_module(pdata.datum, Vec(lam))
    for build in (std_complex, p_std_complex):
        cx = build(pdata, module, dmax)
        for field in (QQ, GF(5), GF(7)):
            ok, problems = cx.check_square_zero(field)
            assert ok, problems
            ok, problems = cx.check_filtration(field)
            assert ok, problems


def test_square_zero_holds_at_the_truncation_edge():
    """No interior restriction: the identity holds up to and including dmax."""
    module = weyl_module(GL2, Vec((3, 0)))
    for dmax in range(7):
        cx = std_complex(PD_GL2, module, dmax)
        ok, problems = cx.check_square_zero(QQ)
        assert ok, (dmax, problems)


def test_graded_compare_agrees_on_matching_pair():
    module = weyl_module(GSP4, Vec((1, 1, 0)))
    std = std_complex(PD_GSP4, module, 3)
    pstd = p_std_complex(PD_GSP4, module, 3)
    for p in (5, 7, 11):
        report = graded_compare(std, pstd, GF(p))
        assert report["schema"] == "gradedcompare/1"
        assert report["ok"], report["mismatches"][:3]
        assert not report["mismatches"]
    levels = {row["level"] for row in report["levels"]}
    assert levels == set(std.level_support())


def _perturb_first_level_preserving_entry(std, pstd):
    """Copy of pstd with one level-preserving entry of its first map bumped."""
    col_lv = std.c_levels(1)
    row_lv = std.c_levels(0)
    target = None
    for c in range(std.term_dim(1)):
        for r, _v in pstd.diffs[0].col(c):
            if row_lv[r] == col_lv[c]:
                target = (c, r)
                break
        if target:
            break
    assert target is not None
    c, r = target
    cols = {j: dict(pstd.diffs[0].col(j)) for j in range(pstd.term_dim(1))}
    cols[c][r] = cols[c].get(r, 0) + 1
    broken = csc_from_coldict(pstd.term_dim(0), pstd.term_dim(1), cols)
    return dataclasses.replace(pstd, diffs=(broken,) + pstd.diffs[1:])


def test_graded_compare_detects_level_preserving_corruption():
    module = weyl_module(GSP4, Vec((1, 0, 0)))
    std = std_complex(PD_GSP4, module, 3)
    pstd = p_std_complex(PD_GSP4, module, 3)
    bad = _perturb_first_level_preserving_entry(std, pstd)
    report = graded_compare(std, bad, GF(5))
    assert not report["ok"]
    kinds = {m["kind"] for m in report["mismatches"]}
    assert kinds == {"differential"}


def test_graded_compare_ignores_entries_that_die_in_the_quotient():
    """A polynomial-degree entry sits one level up and is invisible in the
    graded pieces; bumping it must not trip the comparison."""
    module = weyl_module(GSP4, Vec((1, 0, 0)))
    std = std_complex(PD_GSP4, module, 3)
    pstd = p_std_complex(PD_GSP4, module, 3)
    col_lv = std.c_levels(1)
    row_lv = std.c_levels(0)
    target = None
    for c in range(std.term_dim(1)):
        for r, _v in pstd.diffs[0].col(c):
            if row_lv[r] == col_lv[c] + 1:
                target = (c, r)
                break
        if target:
            break
    assert target is not None
    c, r = target
    cols = {j: dict(pstd.diffs[0].col(j)) for j in range(pstd.term_dim(1))}
    cols[c][r] += 1
    off = dataclasses.replace(
        pstd,
        diffs=(csc_from_coldict(pstd.term_dim(0), pstd.term_dim(1), cols),)
        + pstd.diffs[1:],
    )
    report = graded_compare(std, off, GF(5))
    assert report["ok"]


def test_dmax_validation():
    module = weyl_module(GL2, Vec((1, 0)))
    with pytest.raises(ValueError):
        std_complex(PD_GL2, module, -1)


def test_non_abelian_unipotent_is_rejected():
    borel = ParabolicData(GL3, Vec((2, 1, 0)))
    with pytest.raises(ValueError):
        std_complex(borel, weyl_module(GL3, Vec((1, 0, 0))), 2)


def test_bgg_page_rows_for_the_modular_curve_datum():
    page = bgg_page(PD_GL2, Vec((0, 0)))
    assert page.gradings == (0, 1)
    assert page.is_partition()
    entries = page.all_entries()
    assert sorted(e.length for e in entries) == [0, 1]
    for row in page.rows:
        for e in row.entries:
            assert row.grading == -int(e.dot_weight.pair(PD_GL2.mu))


def test_bgg_page_gradings_for_siegel(catalog):
    pdata = catalog["C2-siegel"]
    page = bgg_page(pdata, Vec((0, 0, 0)))
    assert page.gradings == (0, 1, 2, 3)
    assert page.is_partition()
    rho = pdata.datum.rho
    for row in page.rows:
        for e in row.entries:
            # the stored dot weight really is w(lam + rho) - rho
            assert e.dot_weight == e.w.act(rho) - rho


def test_bgg_page_filtration_steps_are_nested():
    page = bgg_page(PD_GSP4, Vec((1, 0, 0)))
    lo, hi = min(page.gradings), max(page.gradings)
    for i in range(lo, hi):
        assert set(page.hodge_step(i + 1)) <= set(page.hodge_step(i))
        assert set(page.conjugate_step(i)) <= set(page.conjugate_step(i + 1))
    assert set(page.hodge_step(lo)) == set(page.all_entries())


def test_bgg_page_json_reports_cohomological_degrees():
    page = bgg_page(PD_GL2, Vec((2, 0)), degree=1)
    data = page.to_json()
    assert data["schema"] == "bggpage/1"
    assert data["partition_ok"] is True
    degrees = [
        e["cohomological_degree"] for row in data["rows"] for e in row["entries"]
    ]
    assert sorted(degrees) == [0, 1]


def test_bgg_page_rejects_non_dominant_weight():
    with pytest.raises(ValueError):
        bgg_page(PD_GL3, Vec((0, 1, 0)))


@pytest.mark.parametrize(
    "pdata,lam,dmax",
    [
        (PD_GL2, (0, 0), 4),
        (PD_GL2, (2, 0), 4),
        (PD_GL3, (1, 0, 0), 3),
        (PD_GSP4, (1, 1, 0), 2),
    ],
)
def test_euler_characters_match_the_page(pdata, lam, dmax):
    module = weyl_module(pdata.datum, Vec(lam))
    std = std_complex(pdata, module, dmax)
    page = bgg_page(pdata, Vec(lam))
    report = euler_character_check(std, page)
    assert report["ok"], report["mismatches"][:3]
    assert report["strata_checked"] > 0


def test_euler_check_rejects_mismatched_weight():
    std = std_complex(PD_GL2, weyl_module(GL2, Vec((2, 0))), 3)
    page = bgg_page(PD_GL2, Vec((4, 0)))
    with pytest.raises(ValueError):
        euler_character_check(std, page)


def test_summary_shape():
    cx = std_complex(PD_GL2, weyl_module(GL2, Vec((1, 0))), 2)
    info = cx.summary()
    assert info["variant"] == "std"
    assert info["length"] == 1
    assert info["term_dims"] == [cx.term_dim(0), cx.term_dim(1)]
    assert set(info["level_histogram"]) == {"0", "1"}
