"""The nine release criteria, one test each, one summary line per criterion.

Criteria 1 to 3 share a single sweep over the verification matrix
(three data, every dominant weight of dimension at most 60 with central
part zero, four coefficient fields, every truncation bound up to 6).
The sweep charges construction and square-zero time to criterion 1,
filtration time to criterion 2, and graded-comparison time to criterion 3.

Each test prints its verdict line and registers it for the terminal
summary, so a plain ``pytest -v`` run ends with the nine lines together.
"""

import itertools
import random
import time
from fractions import Fraction

import pytest

import oracles
from conftest import record_acceptance
from fziplab.casimir import CasimirCollisionError, casimir_isotypic, isotypic_page_check
from fziplab.complexes import (
    bgg_page,
    euler_character_check,
    graded_compare,
    p_std_complex,
    std_complex,
)
from fziplab.fields import GF, QQ
from fziplab.fzip import (
    FZip,
    direct_sum_fzip,
    dual_fzip,
    is_isomorphic,
    point_fzip,
    random_fzip,
    tensor_fzip,
)
from fziplab.gmodule import kostant_check, standard_module, tensor_module, weyl_module
from fziplab.parabolic import ParabolicData
from fziplab.rootdata import Vec, is_p_small, type_C, weyl_dimension, zero_vec
from fziplab.catalog import builtin

MATRIX_DATA = ("A1-modular", "A2-picard-like", "C2-siegel")
MATRIX_FIELDS = (QQ, GF(5), GF(7), GF(11))
MATRIX_PRIMES = (5, 7, 11)
DMAX_VALUES = tuple(range(7))
DIM_BOUND = 60

_sweep_cache = {}


def _report(num, label, ok, elapsed, budget=None):
    verdict = "PASS" if ok else "FAIL"
    timing = f"{elapsed:.1f}s"
    if budget is not None:
        timing += f" (budget {budget}s)"
    line = f"criterion {num} [{verdict}] {label}: {timing}"
    print(line)
    record_acceptance(line)


def _weight_universe(datum, bound=DIM_BOUND):
    """Dominant weights with central part zero and dimension at most bound."""
    fws = datum.fundamental_weights()
    out = []
    seen = {(0,) * len(fws)}
    stack = [(0,) * len(fws)]
    while stack:
        coeffs = stack.pop()
        lam = zero_vec(datum.rank)
        for c, fw in zip(coeffs, fws):
            lam = lam + fw.scale(c)
        if weyl_dimension(datum, lam) > bound:
            continue
        out.append(lam)
        for i in range(len(fws)):
            nxt = coeffs[:i] + (coeffs[i] + 1,) + coeffs[i + 1 :]
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return sorted(out)


def _matrix_sweep():
    if _sweep_cache:
        return _sweep_cache
    t_axioms = t_filt = t_graded = 0.0
    axiom_failures = []
    filt_failures = []
    graded_failures = []
    universe_sizes = {}
    instances = 0
    for name in MATRIX_DATA:
        datum, mu = builtin(name)
        pdata = ParabolicData(datum, mu)
        universe = _weight_universe(datum)
        universe_sizes[name] = len(universe)
        for lam in universe:
            module = weyl_module(datum, lam)
            for dmax in DMAX_VALUES:
                tag = (name, lam, dmax)
                t0 = time.perf_counter()
                std = std_complex(pdata, module, dmax)
                pstd = p_std_complex(pdata, module, dmax)
                for field in MATRIX_FIELDS:
                    for cx in (std, pstd):
                        ok, problems = cx.check_square_zero(field)
                        if not ok:
                            axiom_failures.append((tag, str(field), problems[:1]))
                t_axioms += time.perf_counter() - t0
                instances += 1

                t0 = time.perf_counter()
                for field in MATRIX_FIELDS:
                    for cx in (std, pstd):
                        ok, problems = cx.check_filtration(field)
                        if not ok:
                            filt_failures.append((tag, str(field), problems[:1]))
                t_filt += time.perf_counter() - t0

                t0 = time.perf_counter()
                for p in MATRIX_PRIMES:
                    report = graded_compare(std, pstd, GF(p))
                    if not report["ok"]:
                        graded_failures.append((tag, p, report["mismatches"][:2]))
                t_graded += time.perf_counter() - t0
    _sweep_cache.update(
        {
            "t_axioms": t_axioms,
            "t_filt": t_filt,
            "t_graded": t_graded,
            "axiom_failures": axiom_failures,
            "filt_failures": filt_failures,
            "graded_failures": graded_failures,
            "universe_sizes": universe_sizes,
            "instances": instances,
        }
    )
    return _sweep_cache


def test_criterion_1_complex_axioms():
    sweep = _matrix_sweep()
    ok = not sweep["axiom_failures"] and sweep["t_axioms"] <= 120
    _report(
        1,
        f"square-zero over 4 fields on {sweep['instances']} truncations",
        ok,
        sweep["t_axioms"],
        budget=120,
    )
    assert sweep["universe_sizes"] == {
        "A1-modular": 60,
        "A2-picard-like": 33,
        "C2-siegel": 13,
    }, "the weight universe drifted; the matrix no longer covers what it should"
    assert not sweep["axiom_failures"], sweep["axiom_failures"][:3]
    assert sweep["t_axioms"] <= 120


def test_criterion_2_filtration_preservation():
    sweep = _matrix_sweep()
    ok = not sweep["filt_failures"]
    _report(
        2,
        f"filtrations preserved on {sweep['instances']} truncations",
        ok,
        sweep["t_filt"],
    )
    assert not sweep["filt_failures"], sweep["filt_failures"][:3]


def test_criterion_3_graded_comparison():
    sweep = _matrix_sweep()
    ok = not sweep["graded_failures"]
    _report(
        3,
        f"graded pieces agree at 3 primes on {sweep['instances']} truncations",
        ok,
        sweep["t_graded"],
    )
    assert not sweep["graded_failures"], sweep["graded_failures"][:3]


def test_criterion_4_wedge_character_identity(catalog):
    t0 = time.perf_counter()
    bad = []
    for name, pdata in catalog.items():
        ok, details = kostant_check(pdata)
        if not ok:
            bad.append((name, {a: d for a, d in details.items() if not d["match"]}))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed <= 10
    _report(4, "wedge powers match coset characters on all builtins", ok, elapsed, budget=10)
    assert not bad, bad
    assert elapsed <= 10


def test_criterion_5_coset_counts(catalog):
    t0 = time.perf_counter()
    data = [pd.datum for pd in catalog.values()]
    data.append(type_C(1, reductive=True, label="GSp2"))
    checked = 0
    bad = []
    for datum in data:
        simples = tuple(tuple(int(x) for x in r) for r in datum.simple_roots)
        cosimples = tuple(tuple(int(x) for x in c) for c in datum.simple_coroots)
        w_order = len(datum.weyl_elements)
        for levi_set in itertools.chain.from_iterable(
            itertools.combinations(range(datum.nsimple), k)
            for k in range(datum.nsimple + 1)
        ):
            mu = oracles.cocharacter_for_levi(simples, set(levi_set))
            pdata = ParabolicData(datum, Vec(mu))
            gens = [
                oracles.reflection_matrix(simples[i], cosimples[i], datum.rank)
                for i in levi_set
            ]
            levi_order = len(oracles.matrix_group(gens, datum.rank))
            if len(pdata.coset_reps) * levi_order != w_order:
                bad.append((datum.label, levi_set))
            checked += 1
    # the Siegel family: 2^g representatives for g = 1, 2, 3
    siegel = {
        1: data[-1],
        2: catalog["C2-siegel"].datum,
        3: catalog["C3-siegel"].datum,
    }
    for g, datum in siegel.items():
        mu = Vec((1,) * (g + 1))
        if len(ParabolicData(datum, mu).coset_reps) != 2**g:
            bad.append((datum.label, "siegel", g))
        checked += 1
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed <= 5
    _report(5, f"index counts for {checked} parabolic choices", ok, elapsed, budget=5)
    assert not bad, bad
    assert elapsed <= 5


def test_criterion_6_page_bookkeeping(catalog):
    t0 = time.perf_counter()
    bad = []
    for name, pdata in catalog.items():
        datum = pdata.datum
        dmax = 2 if name == "C3-siegel" else 3
        weights = [zero_vec(datum.rank)] + list(datum.fundamental_weights())
        for lam in weights:
            page = bgg_page(pdata, lam)
            if not page.is_partition():
                bad.append((name, tuple(lam), "partition"))
            for row in page.rows:
                for e in row.entries:
                    wlam = e.w.act(lam + datum.rho) - datum.rho
                    if wlam != e.dot_weight or row.grading != -int(wlam.pair(pdata.mu)):
                        bad.append((name, tuple(lam), "grading", e.w.word))
            std = std_complex(pdata, weyl_module(datum, lam), dmax)
            report = euler_character_check(std, page)
            if not report["ok"]:
                bad.append((name, tuple(lam), report["mismatches"][:2]))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed <= 60
    _report(6, "page partition, gradings, Euler characters", ok, elapsed, budget=60)
    assert not bad, bad[:3]
    assert elapsed <= 60


def test_criterion_7_casimir_extraction(catalog):
    t0 = time.perf_counter()
    bad = []
    pd_gl2 = catalog["A1-modular"]
    gl2 = pd_gl2.datum
    for m in range(9):
        lam = Vec((m, 0))
        cx = std_complex(pd_gl2, weyl_module(gl2, lam), 4)
        s = casimir_isotypic(cx, lam)
        if s.eigenvalue != m * (m + 1):
            bad.append(("A1-modular", m, "eigenvalue", str(s.eigenvalue)))
        report = isotypic_page_check(s, bgg_page(pd_gl2, lam), cx)
        if not report["ok"]:
            bad.append(("A1-modular", m, report["mismatches"][:2]))
    spots = [
        ("A2-picard-like", (1, 0, 0), 3),
        ("A2-picard-like", (1, 1, 0), 3),
        ("C2-siegel", (1, 0, 0), 2),
    ]
    for name, lam, dmax in spots:
        pdata = catalog[name]
        lam = Vec(lam)
        cx = std_complex(pdata, weyl_module(pdata.datum, lam), dmax)
        s = casimir_isotypic(cx, lam)
        report = isotypic_page_check(s, bgg_page(pdata, lam), cx)
        if not report["ok"]:
            bad.append((name, tuple(lam), report["mismatches"][:2]))

    # a genuine eigenvalue collision must raise, not mislabel strata
    lam = Vec((5, 0))
    cx = std_complex(pd_gl2, weyl_module(gl2, lam), 4)
    try:
        casimir_isotypic(cx, lam, p=5)
        bad.append(("A1-modular", 5, "collision not raised"))
    except CasimirCollisionError as err:
        if not err.details:
            bad.append(("A1-modular", 5, "collision without details"))
    # and the same weight passes at a prime that separates the eigenvalues
    s = casimir_isotypic(cx, lam, p=7)
    if not isotypic_page_check(s, bgg_page(pd_gl2, lam), cx)["ok"]:
        bad.append(("A1-modular", 5, "mod-7 page check"))

    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed <= 60
    _report(7, "isotypic slices match the page term list", ok, elapsed, budget=60)
    assert not bad, bad[:3]
    assert elapsed <= 60


def _lines(field):
    """All one-dimensional subspaces of the coordinate plane, as row lists."""
    one, zero = field.one(), field.zero()
    out = [[[one, e]] for e in field.elements()]
    out.append([[zero, one]])
    return out


def _units(field):
    return [e for e in field.elements() if not field.is_zero(e)]


def _gl2(field):
    from fziplab import linalg

    elems = list(field.elements())
    out = []
    for a, b, c, d in itertools.product(elems, repeat=4):
        m = [[a, b], [c, d]]
        if linalg.invert(m, field) is not None:
            out.append(m)
    return out


def _zip_universe(field):
    """Every zip of dimension at most 2 with filtration jumps inside {0, 1}."""
    one, zero = field.one(), field.zero()
    full2 = [[one, zero], [zero, one]]
    out = []
    for level in (0, 1):
        for u in _units(field):
            out.append(
                FZip(
                    field,
                    1,
                    {level: [[one]], level + 1: []},
                    {level - 1: [], level: [[one]]},
                    {level: [[u]]},
                )
            )
    for c_line in _lines(field):
        for d_line in _lines(field):
            for u0 in _units(field):
                for u1 in _units(field):
                    out.append(
                        FZip(
                            field,
                            2,
                            {0: full2, 1: c_line, 2: []},
                            {-1: [], 0: d_line, 1: full2},
                            {0: [[u0]], 1: [[u1]]},
                        )
                    )
    for level in (0, 1):
        for m in _gl2(field):
            out.append(
                FZip(
                    field,
                    2,
                    {level: full2, level + 1: []},
                    {level - 1: [], level: full2},
                    {level: m},
                )
            )
    return out


def test_criterion_8_zip_algebra():
    t0 = time.perf_counter()
    bad = []
    rng = random.Random(20240817)
    fields = (GF(2), GF(3), GF(5))

    def random_type(max_dim):
        support = rng.sample(range(-2, 3), rng.randint(1, 3))
        tau = {}
        total = 0
        for a in support:
            r = rng.randint(1, 2)
            if total + r > max_dim:
                break
            tau[a] = r
            total += r
        return tau or {0: 1}

    for k in range(500):
        field = fields[k % 3]
        z1 = random_fzip(field, random_type(4), rng)
        z2 = random_fzip(field, random_type(3), rng)
        if z1.validate() or z2.validate():
            bad.append((k, "random zip fails validation"))
            continue
        tau1, tau2 = z1.zip_type(), z2.zip_type()
        prod = tensor_fzip(z1, z2)
        expect = {}
        for a, r in tau1.items():
            for b, s in tau2.items():
                expect[a + b] = expect.get(a + b, 0) + r * s
        if prod.zip_type() != expect:
            bad.append((k, "tensor type", prod.zip_type(), expect))
        dz = dual_fzip(z1)
        if dz.zip_type() != {-a: r for a, r in tau1.items()}:
            bad.append((k, "dual type", dz.zip_type()))
        summed = direct_sum_fzip(z1, z2)
        expect_sum = dict(tau1)
        for a, r in tau2.items():
            expect_sum[a] = expect_sum.get(a, 0) + r
        if summed.zip_type() != expect_sum:
            bad.append((k, "sum type", summed.zip_type()))

    for field in (GF(2), GF(3)):
        universe = _zip_universe(field)
        n = len(universe)
        rel = []
        for i in range(n):
            row = 0
            for j in range(n):
                if is_isomorphic(universe[i], universe[j]):
                    row |= 1 << j
            rel.append(row)
        for i in range(n):
            if not rel[i] >> i & 1:
                bad.append((field.char, i, "not reflexive"))
        for i in range(n):
            for j in range(i + 1, n):
                if (rel[i] >> j & 1) != (rel[j] >> i & 1):
                    bad.append((field.char, i, j, "not symmetric"))
        for i in range(n):
            row = rel[i]
            j = 0
            rest = row
            while rest:
                if rest & 1 and (row | rel[j]) != row:
                    bad.append((field.char, i, j, "not transitive"))
                rest >>= 1
                j += 1

    # compatibility of the split-datum zip with tensor products
    gl2 = builtin("A1-modular")[0]
    std = standard_module(gl2)
    mu = Vec((1, 0))
    combined = point_fzip(tensor_module(std, std), mu, GF(5))
    split = tensor_fzip(point_fzip(std, mu, GF(5)), point_fzip(std, mu, GF(5)))
    if combined.zip_type() != split.zip_type():
        bad.append(("point tensor type",))
    elif not is_isomorphic(combined, split):
        bad.append(("point tensor iso",))

    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed <= 60
    _report(8, "type algebra on 500 zips, equivalence axioms exhaustively", ok, elapsed, budget=60)
    assert not bad, bad[:3]
    assert elapsed <= 60


def test_criterion_9_p_smallness_oracle(catalog):
    t0 = time.perf_counter()
    rng = random.Random(97)
    primes = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31)
    bad = []
    checked = 0
    for name, pdata in catalog.items():
        datum = pdata.datum
        simples = tuple(tuple(int(x) for x in r) for r in datum.simple_roots)
        cosimples = tuple(tuple(int(x) for x in c) for c in datum.simple_coroots)
        fws = datum.fundamental_weights()
        for _ in range(1000):
            lam = zero_vec(datum.rank)
            for fw in fws:
                lam = lam + fw.scale(rng.randint(0, 6))
            p = rng.choice(primes)
            mine = is_p_small(datum, lam, p)
            ref = oracles.brute_p_small(simples, cosimples, tuple(lam), p)
            if mine is not ref:
                bad.append((name, tuple(lam), p, mine, ref))
            checked += 1
        # the boundary: the zero weight is small exactly when p reaches h - 1
        h = datum.coxeter_number()
        zero = zero_vec(datum.rank)
        for p in primes:
            mine = is_p_small(datum, zero, p)
            expect = p >= h - 1
            ref = oracles.brute_p_small(simples, cosimples, tuple(zero), p)
            if mine is not expect or ref is not expect:
                bad.append((name, "boundary", p, mine, ref, expect))
            checked += 1
    elapsed = time.perf_counter() - t0
    ok = not bad
    _report(9, f"matches the brute-force oracle on {checked} pairs", ok, elapsed)
    assert not bad, bad[:3]
