"""Truncated standard complexes over a parabolic, with both filtrations.

Terms live on ``Sym(u_-) (x) Wedge^j(u_-) (x) V`` with the polynomial factor
cut at a total-degree bound, so every matrix here is a finite integer matrix.
Two differentials act on the same terms: the flat one (multiply into the
polynomial factor, or act on V, with alternating signs) and its
Frobenius-twisted sibling, identical entrywise but carrying the conjugate
filtration instead of the Hodge one.

Basis triples are (exponent tuple, wedge tuple, module index).  The Hodge
level of a triple is mu-weight(v) - j and the conjugate level is its
negative; both differentials preserve their filtrations exactly, and the
graded blocks at Hodge level a match the conjugate blocks at level -a.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .fields import Field
from .gmodule import GModule, root_lowering
from .linalg import IntCSC, csc_compose, csc_from_coldict, csc_mod
from .parabolic import ParabolicData
from .rootdata import (
    Vec,
    WeylElement,
    freudenthal_weights,
    is_dominant,
    weight_to_json,
    weyl_dimension,
    zero_vec,
)

Entry = tuple[tuple[int, ...], tuple[int, ...], int]


def _monomials(nvars: int, dmax: int) -> list[tuple[int, ...]]:
    """Exponent tuples with total degree <= dmax, sorted degree-then-lex."""
    if nvars == 0:
        return [()]
    out: list[tuple[int, ...]] = []
    for deg in range(dmax + 1):
        stack: list[tuple[tuple[int, ...], int]] = [((), deg)]
        level: list[tuple[int, ...]] = []
        while stack:
            prefix, rest = stack.pop()
            if len(prefix) == nvars - 1:
                level.append(prefix + (rest,))
                continue
            for e in range(rest, -1, -1):
                stack.append((prefix + (e,), rest - e))
        out.extend(sorted(level, reverse=True))
    return out


@dataclass(frozen=True)
class FilteredComplex:
    """Finite truncation of a standard complex with filtration levels.

    diffs[j-1] is the matrix taking homological degree j to degree j-1.
    levels[j][i] is the Hodge level of basis triple i in degree j; the
    conjugate level is its negative.
    """

    pdata: ParabolicData
    module: GModule
    dmax: int
    variant: str
    roots: tuple[Vec, ...]
    bases: tuple[tuple[Entry, ...], ...]
    levels: tuple[tuple[int, ...], ...]
    diffs: tuple[IntCSC, ...]

    @property
    def length(self) -> int:
        return len(self.bases) - 1

    def term_dim(self, j: int) -> int:
        return len(self.bases[j])

    def differential(self, j: int) -> IntCSC:
        """Matrix of the degree-j differential (into degree j-1)."""
        if not 1 <= j <= self.length:
            raise ValueError(f"no differential at degree {j}")
        return self.diffs[j - 1]

    def c_levels(self, j: int) -> tuple[int, ...]:
        return self.levels[j]

    def d_levels(self, j: int) -> tuple[int, ...]:
        return tuple(-v for v in self.levels[j])

    def level_support(self) -> list[int]:
        vals = {v for lev in self.levels for v in lev}
        return sorted(vals)

    def entry_weight(self, j: int, idx: int) -> Vec:
        mono, wedge, v = self.bases[j][idx]
        wt = self.module.weights[v]
        for gi, e in enumerate(mono):
            if e:
                wt = wt - self.roots[gi].scale(e)
        for gi in wedge:
            wt = wt - self.roots[gi]
        return wt

    def check_square_zero(self, field: Field) -> tuple[bool, list[str]]:
        """Whether consecutive differentials compose to zero over field."""
        problems = []
        p = field.char
        for j in range(2, self.length + 1):
            a = self.diffs[j - 2]
            b = self.diffs[j - 1]
            if p:
                prod = csc_mod(csc_compose(csc_mod(a, p), csc_mod(b, p)), p)
            else:
                prod = csc_compose(a, b)
            if not prod.is_zero():
                problems.append(f"square of differential nonzero at degree {j}")
        return not problems, problems

    def check_filtration(self, field: Field) -> tuple[bool, list[str]]:
        """Exact filtration preservation, columnwise on nonzero entries.

        The Hodge condition (output level >= input level) and the conjugate
        condition on negated levels are the same inequality, so one pass
        covers both variants.
        """
        problems = []
        p = field.char
        for j in range(1, self.length + 1):
            mat = csc_mod(self.diffs[j - 1], p) if p else self.diffs[j - 1]
            src = self.levels[j]
            dst = self.levels[j - 1]
            for c in range(mat.ncols):
                for r, _val in mat.col(c):
                    if dst[r] < src[c]:
                        problems.append(
                            f"degree {j} column {c} (level {src[c]}) hits "
                            f"row {r} (level {dst[r]})"
                        )
                        if len(problems) >= 20:
                            return False, problems
        return not problems, problems

    def degree_weight_census(self) -> dict[tuple[int, int, Vec], int]:
        """Counts of basis triples keyed by (homological degree, Sym degree, weight)."""
        census: dict[tuple[int, int, Vec], int] = {}
        for j, basis in enumerate(self.bases):
            for idx in range(len(basis)):
                s = sum(basis[idx][0])
                key = (j, s, self.entry_weight(j, idx))
                census[key] = census.get(key, 0) + 1
        return census

    def summary(self) -> dict:
        hist: dict[str, dict[str, int]] = {}
        for j in range(self.length + 1):
            counts: dict[str, int] = {}
            for v in self.levels[j]:
                counts[str(v)] = counts.get(str(v), 0) + 1
            hist[str(j)] = dict(sorted(counts.items(), key=lambda kv: int(kv[0])))
        return {
            "variant": self.variant,
            "length": self.length,
            "dmax": self.dmax,
            "module_dim": self.module.dim,
            "term_dims": [self.term_dim(j) for j in range(self.length + 1)],
            "nnz": [d.nnz for d in self.diffs],
            "level_histogram": hist,
        }


def _validate_parabolic(pdata: ParabolicData, module: GModule, dmax: int):
    if dmax < 0:
        raise ValueError("truncation bound must be nonnegative")
    if module.datum.rank != pdata.datum.rank or list(module.datum.simple_roots) != list(
        pdata.datum.simple_roots
    ):
        raise ValueError("module and parabolic live on different root data")
    if not module.e_cols or len(module.e_cols) != module.datum.nsimple:
        raise ValueError("module lacks a full set of raising operators")
    if not pdata.is_abelian_unipotent():
        raise ValueError("opposite unipotent radical is not abelian")
    if any(w != 1 for w in pdata.mu_weights()):
        raise ValueError("cocharacter must give every unipotent root weight one")


def _build(pdata: ParabolicData, module: GModule, dmax: int, variant: str) -> FilteredComplex:
    roots = tuple(r for r, _ in pdata.unipotent_roots)
    m = len(roots)
    mu = pdata.mu
    vlev = [int(w.pair(mu)) for w in module.weights]

    monos = _monomials(m, dmax)
    bases: list[tuple[Entry, ...]] = []
    index: list[dict[Entry, int]] = []
    levels: list[tuple[int, ...]] = []
    for j in range(m + 1):
        wedges = list(itertools.combinations(range(m), j))
        basis = [
            (e, S, v)
            for e in monos
            for S in wedges
            for v in range(module.dim)
        ]
        bases.append(tuple(basis))
        index.append({ent: i for i, ent in enumerate(basis)})
        levels.append(tuple(vlev[ent[2]] - j for ent in basis))

    lowering = [root_lowering(module, g) for g in roots]

    diffs = []
    for j in range(1, m + 1):
        cols: dict[int, dict[int, int]] = {}
        tgt = index[j - 1]
        for ci, (e, S, v) in enumerate(bases[j]):
            entries: dict[int, int] = {}
            deg = sum(e)
            for pos in range(j):
                gi = S[pos]
                sgn = 1 if pos % 2 == 0 else -1
                S2 = S[:pos] + S[pos + 1 :]
                if deg < dmax:
                    e2 = e[:gi] + (e[gi] + 1,) + e[gi + 1 :]
                    r = tgt[(e2, S2, v)]
                    entries[r] = entries.get(r, 0) + sgn
                for row, cval in lowering[gi].get(v, {}).items():
                    r = tgt[(e, S2, row)]
                    entries[r] = entries.get(r, 0) - sgn * cval
            if entries:
                cols[ci] = entries
        diffs.append(csc_from_coldict(len(bases[j - 1]), len(bases[j]), cols))

    return FilteredComplex(
        pdata=pdata,
        module=module,
        dmax=dmax,
        variant=variant,
        roots=roots,
        bases=tuple(bases),
        levels=tuple(levels),
        diffs=tuple(diffs),
    )


def std_complex(pdata: ParabolicData, module: GModule, dmax: int) -> FilteredComplex:
    """Truncated flat complex carrying the Hodge filtration."""
    _validate_parabolic(pdata, module, dmax)
    return _build(pdata, module, dmax, "std")


def p_std_complex(pdata: ParabolicData, module: GModule, dmax: int) -> FilteredComplex:
    """Twisted sibling of std_complex carrying the conjugate filtration.

    Over a prime field the coefficient twist is the identity, so the matrices
    agree with the flat ones; the filtration bookkeeping is mirrored.
    """
    _validate_parabolic(pdata, module, dmax)
    return _build(pdata, module, dmax, "p-std")


def graded_compare(std: FilteredComplex, pstd: FilteredComplex, field: Field) -> dict:
    """Compare Hodge-graded blocks of std with conjugate-graded blocks of pstd.

    Hodge level a pairs with conjugate level -a; the two graded subquotients
    sit on the same basis triples, and the report checks both the dimensions
    and the induced graded differential blocks (entries of the flat side
    pass through the field's Frobenius before comparison).
    """
    if std.variant != "std" or pstd.variant != "p-std":
        raise ValueError("arguments must be a std and a p-std complex in that order")
    if field.char == 0:
        raise ValueError("graded comparison needs a finite base field")
    if (
        std.dmax != pstd.dmax
        or std.module.dim != pstd.module.dim
        or std.roots != pstd.roots
    ):
        raise ValueError("complexes were not built from matching data")

    p = field.char
    support = std.level_support()

    # graded dimensions per (level, degree) on both sides
    dims_c: dict[tuple[int, int], int] = {}
    dims_d: dict[tuple[int, int], int] = {}
    for j in range(std.length + 1):
        for v in std.c_levels(j):
            dims_c[(v, j)] = dims_c.get((v, j), 0) + 1
        for v in pstd.d_levels(j):
            dims_d[(-v, j)] = dims_d.get((-v, j), 0) + 1

    bad_dims = {key for key in set(dims_c) | set(dims_d) if dims_c.get(key, 0) != dims_d.get(key, 0)}

    # one sparse pass per differential: the level-a block of the Hodge side,
    # twisted entrywise, must match the level-(-a) block of the conjugate
    # side on the same basis triples
    bad_blocks: set[tuple[int, int]] = set()
    for j in range(1, std.length + 1):
        col_lv = std.c_levels(j)
        row_lv = std.c_levels(j - 1)
        prow_lv = pstd.d_levels(j - 1)
        dmat = std.diffs[j - 1]
        pmat = pstd.diffs[j - 1]
        for c in range(std.term_dim(j)):
            a = col_lv[c]
            if (a, j) in bad_dims:
                continue
            flat = {r: field.frobenius(field.from_int(v))
                    for r, v in dmat.col(c) if row_lv[r] == a}
            twisted = {r: field.from_int(v)
                       for r, v in pmat.col(c) if prow_lv[r] == -a}
            flat = {r: v for r, v in flat.items() if v != field.zero()}
            twisted = {r: v for r, v in twisted.items() if v != field.zero()}
            if flat != twisted:
                bad_blocks.add((a, j))

    mismatches: list[dict] = []
    rows = []
    for a in support:
        degrees = []
        for j in range(std.length + 1):
            rec = {
                "degree": j,
                "dim_hodge": dims_c.get((a, j), 0),
                "dim_conjugate": dims_d.get((a, j), 0),
            }
            if (a, j) in bad_dims:
                rec["block_equal"] = False
                mismatches.append({"level": a, "degree": j, "kind": "dimension"})
            elif j >= 1 and dims_c.get((a, j), 0):
                rec["block_equal"] = (a, j) not in bad_blocks
                if not rec["block_equal"]:
                    mismatches.append({"level": a, "degree": j, "kind": "differential"})
            degrees.append(rec)
        rows.append({"level": a, "degrees": degrees})

    return {
        "schema": "gradedcompare/1",
        "pairing": "hodge level a with conjugate level -a",
        "characteristic": p,
        "levels": rows,
        "mismatches": mismatches,
        "ok": not mismatches,
    }


@dataclass(frozen=True)
class BGGEntry:
    w: WeylElement
    dot_weight: Vec
    length: int
    levi_dim: int
    levi_dominant: bool


@dataclass(frozen=True)
class BGGRow:
    grading: int
    entries: tuple[BGGEntry, ...]


@dataclass(frozen=True)
class BGGPage:
    """Coset-indexed page of graded pieces of cohomology.

    Each minimal coset representative w lands in the row graded by
    a = -<w.lam, mu>, contributing a Levi module of highest weight w.lam in
    cohomological degree i - length(w) once a degree i is fixed.
    """

    pdata: ParabolicData
    lam: Vec
    rows: tuple[BGGRow, ...]
    degree: int | None

    @property
    def gradings(self) -> tuple[int, ...]:
        return tuple(r.grading for r in self.rows)

    def all_entries(self) -> tuple[BGGEntry, ...]:
        return tuple(e for r in self.rows for e in r.entries)

    def hodge_step(self, i: int) -> tuple[BGGEntry, ...]:
        """Entries of the descending filtration step at i: rows with grading >= i."""
        return tuple(e for r in self.rows if r.grading >= i for e in r.entries)

    def conjugate_step(self, i: int) -> tuple[BGGEntry, ...]:
        """Entries of the ascending filtration step at i: rows with grading <= i."""
        return tuple(e for r in self.rows if r.grading <= i for e in r.entries)

    def is_partition(self) -> bool:
        words = [e.w.word for e in self.all_entries()]
        expected = sorted(w.word for w in self.pdata.coset_reps)
        return sorted(words) == expected

    def to_json(self) -> dict:
        rows = []
        for row in self.rows:
            entries = []
            for e in row.entries:
                rec = {
                    "word": list(e.w.word),
                    "dot_weight": weight_to_json(e.dot_weight),
                    "length": e.length,
                    "levi_dim": e.levi_dim,
                    "levi_dominant": e.levi_dominant,
                }
                if self.degree is not None:
                    rec["cohomological_degree"] = self.degree - e.length
                entries.append(rec)
            rows.append({"grading": row.grading, "entries": entries})
        support = [r.grading for r in self.rows]
        steps = {
            "hodge": {
                str(i): [list(e.w.word) for e in self.hodge_step(i)]
                for i in range(min(support), max(support) + 1)
            },
            "conjugate": {
                str(i): [list(e.w.word) for e in self.conjugate_step(i)]
                for i in range(min(support), max(support) + 1)
            },
        }
        out = {
            "schema": "bggpage/1",
            "weight": weight_to_json(self.lam),
            "cocharacter": weight_to_json(self.pdata.mu),
            "rows": rows,
            "filtration_steps": steps,
            "partition_ok": self.is_partition(),
        }
        if self.degree is not None:
            out["degree"] = self.degree
        return out


def bgg_page(pdata: ParabolicData, lam, degree: int | None = None) -> BGGPage:
    """Arrange coset representatives into rows graded by -<w.lam, mu>."""
    lam = Vec(lam)
    rd = pdata.datum
    if not is_dominant(rd, lam):
        raise ValueError(f"{lam} is not dominant")
    levi = pdata.levi_datum
    buckets: dict[int, list[BGGEntry]] = {}
    for w in pdata.coset_reps:
        wlam = w.dot(lam)
        grading = -int(wlam.pair(pdata.mu))
        ldom = all(wlam.pair(cv) >= 0 for _, cv in pdata.levi_roots)
        entry = BGGEntry(
            w=w,
            dot_weight=wlam,
            length=len(w.word),
            levi_dim=weyl_dimension(levi, wlam) if ldom else 0,
            levi_dominant=ldom,
        )
        buckets.setdefault(grading, []).append(entry)
    rows = tuple(
        BGGRow(grading=a, entries=tuple(buckets[a])) for a in sorted(buckets)
    )
    return BGGPage(pdata=pdata, lam=lam, rows=rows, degree=degree)


def euler_character_check(std: FilteredComplex, page: BGGPage) -> dict:
    """Alternating-sum comparison of the complex against the page's term list.

    For each polynomial degree s and each weight, the alternating sum of
    stratum dimensions over homological degree must equal the alternating
    sum, over page entries, of the weight multiplicity in
    Sym^s(u_-) (x) (Levi module of highest weight w.lam), signed by length.
    """
    if std.roots != tuple(r for r, _ in page.pdata.unipotent_roots):
        raise ValueError("complex and page use different parabolic data")
    lam = page.lam
    if std.module.dim != weyl_dimension(std.pdata.datum, lam):
        raise ValueError("module dimension does not match the page weight")
    if lam not in std.module.character():
        raise ValueError("page weight is not a weight of the module")

    lhs: dict[tuple[int, Vec], int] = {}
    for (j, s, wt), count in std.degree_weight_census().items():
        key = (s, wt)
        lhs[key] = lhs.get(key, 0) + (count if j % 2 == 0 else -count)

    sym_chars: list[dict[Vec, int]] = []
    for s in range(std.dmax + 1):
        char: dict[Vec, int] = {}
        for combo in itertools.combinations_with_replacement(std.roots, s):
            wt = zero_vec(len(std.pdata.mu))
            for g in combo:
                wt = wt - g
            char[wt] = char.get(wt, 0) + 1
        sym_chars.append(char)

    levi = page.pdata.levi_datum
    rhs: dict[tuple[int, Vec], int] = {}
    for entry in page.all_entries():
        if not entry.levi_dominant:
            raise ValueError(f"dot weight {entry.dot_weight} is not Levi-dominant")
        sign = 1 if entry.length % 2 == 0 else -1
        wchar = freudenthal_weights(levi, entry.dot_weight)
        for s in range(std.dmax + 1):
            for wt_s, m_s in sym_chars[s].items():
                for wt_w, m_w in wchar.items():
                    key = (s, wt_s + wt_w)
                    rhs[key] = rhs.get(key, 0) + sign * m_s * m_w

    mismatches = []
    for key in sorted(set(lhs) | set(rhs), key=lambda k: (k[0], k[1])):
        l, r = lhs.get(key, 0), rhs.get(key, 0)
        if l != r:
            s, wt = key
            mismatches.append(
                {"sym_degree": s, "weight": weight_to_json(wt), "lhs": l, "rhs": r}
            )

    return {
        "schema": "eulercheck/1",
        "strata_checked": len(set(lhs) | set(rhs)),
        "mismatches": mismatches,
        "ok": not mismatches,
    }
