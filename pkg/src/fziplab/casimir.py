"""Quadratic Casimir action on truncated standard complexes.

The Casimir element is assembled from the trace form of a reference module
(the direct sum of the standard modules of the non-torus factors): a Cartan
part acting diagonally by the dual-form norm of the total weight, plus one
term per positive root scaled by the trace pairing of its root vectors.
Raising vectors act on the polynomial factor by commuting through one
variable at a time, so all matrices are exact rational data.

The Casimir commutes with the differential, acts block-triangularly with
respect to polynomial degree, and its generalized eigenspace for the
eigenvalue of a dominant weight cuts out one coset summand per homological
degree.  When another Levi constituent of the wedge coefficients shares the
eigenvalue (exactly, or mod p in flagged mode) the extraction would silently
overcount, so that situation raises CasimirCollisionError instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .complexes import FilteredComplex
from .fields import GF, QQ
from .gmodule import (
    Cols,
    GModule,
    direct_sum_module,
    root_lowering,
    root_raising,
    standard_module,
)
from .rootdata import (
    RootDatum,
    Vec,
    freudenthal_weights,
    weight_to_json,
    weyl_dimension,
    zero_vec,
)

FCols = dict[int, dict[int, Fraction]]


class CasimirCollisionError(RuntimeError):
    """Eigenvalue of an unlinked constituent matches the target weight."""

    def __init__(self, message: str, details: list[dict]):
        super().__init__(message)
        self.details = details


def reference_module(datum: RootDatum) -> GModule:
    """Direct sum of the standard modules of all non-torus factors."""
    if datum.factors:
        parts = [
            standard_module(datum, factor=i)
            for i, fac in enumerate(datum.factors)
            if fac.kind != "torus"
        ]
        if not parts:
            raise ValueError("datum has no non-torus factor to build a trace form on")
        mod = parts[0]
        for part in parts[1:]:
            mod = direct_sum_module(mod, part)
        return mod
    return standard_module(datum)


@dataclass(frozen=True)
class TraceForm:
    """Trace form data: Cartan Gram matrix and per-root pairings."""

    datum: RootDatum
    gram: tuple[tuple[Fraction, ...], ...]
    gram_inv: tuple[tuple[Fraction, ...], ...]
    root_pairing: dict[Vec, Fraction]

    def dual_norm(self, xi: Vec, eta: Vec) -> Fraction:
        acc = Fraction(0)
        for k, xk in enumerate(xi):
            if not xk:
                continue
            for l, el in enumerate(eta):
                if el:
                    acc += Fraction(xk) * self.gram_inv[k][l] * Fraction(el)
        return acc

    def eigenvalue(self, lam: Vec) -> Fraction:
        """Casimir scalar on the highest-weight-lam module."""
        rho2 = self.datum.rho.scale(2)
        return self.dual_norm(lam, lam + rho2)


def trace_form(datum: RootDatum) -> TraceForm:
    ref = reference_module(datum)
    rank = datum.rank
    gram = [[Fraction(0)] * rank for _ in range(rank)]
    for wt in ref.weights:
        for k in range(rank):
            if wt[k]:
                for l in range(rank):
                    if wt[l]:
                        gram[k][l] += Fraction(wt[k]) * Fraction(wt[l])
    ginv = linalg.invert([row[:] for row in gram], QQ)
    if ginv is None:
        raise ValueError("trace form is degenerate on the Cartan subalgebra")

    pairing: dict[Vec, Fraction] = {}
    for beta, _ in datum.positive_roots:
        x = root_raising(ref, beta)
        y = root_lowering(ref, beta)
        t = Fraction(0)
        for v, col in y.items():
            for mid, c1 in col.items():
                c2 = x.get(mid, {}).get(v)
                if c2:
                    t += Fraction(c1) * Fraction(c2)
        if t == 0:
            raise ValueError(f"trace pairing vanishes on the root {beta}")
        pairing[beta] = t

    return TraceForm(
        datum=datum,
        gram=tuple(tuple(row) for row in gram),
        gram_inv=tuple(tuple(row) for row in ginv),
        root_pairing=pairing,
    )


def _commutator_fr(a: FCols, b: FCols) -> FCols:
    return _fc_sub(_fc_compose(a, b), _fc_compose(b, a))


def _fc_from_cols(cols: Cols) -> FCols:
    return {j: {r: Fraction(c) for r, c in col.items()} for j, col in cols.items()}


def _fc_compose(a: FCols, b: FCols) -> FCols:
    out: FCols = {}
    for j, col in b.items():
        acc: dict[int, Fraction] = {}
        for mid, c1 in col.items():
            for r, c2 in a.get(mid, {}).items():
                acc[r] = acc.get(r, Fraction(0)) + c2 * c1
        acc = {r: c for r, c in acc.items() if c}
        if acc:
            out[j] = acc
    return out


def _fc_sub(a: FCols, b: FCols) -> FCols:
    out: FCols = {j: dict(col) for j, col in a.items()}
    for j, col in b.items():
        tgt = out.setdefault(j, {})
        for r, c in col.items():
            val = tgt.get(r, Fraction(0)) - c
            if val:
                tgt[r] = val
            else:
                tgt.pop(r, None)
        if not tgt:
            out.pop(j, None)
    return out


def _fc_add_into(acc: FCols, other: FCols, scale: Fraction):
    for j, col in other.items():
        tgt = acc.setdefault(j, {})
        for r, c in col.items():
            val = tgt.get(r, Fraction(0)) + scale * c
            if val:
                tgt[r] = val
            else:
                tgt.pop(r, None)


class _LeviElement:
    """An element of the Levi algebra: module matrix plus adjoint on u_-."""

    __slots__ = ("vmat", "adjoint")

    def __init__(self, vmat: FCols, adjoint: list[dict[int, Fraction]]):
        self.vmat = vmat
        self.adjoint = adjoint


class VermaOperators:
    """Exact operators on the terms of a truncated standard complex."""

    def __init__(self, cx: FilteredComplex, form: TraceForm | None = None):
        if cx.variant != "std":
            raise ValueError("Casimir operators are built on the std variant")
        self.cx = cx
        datum = cx.pdata.datum
        self.form = form or trace_form(datum)
        self.ref = reference_module(datum)
        self.roots = cx.roots
        self.root_pos = {g: i for i, g in enumerate(self.roots)}

        self._index = [
            {ent: i for i, ent in enumerate(cx.bases[j])} for j in range(cx.length + 1)
        ]
        self._weights = [
            tuple(cx.entry_weight(j, i) for i in range(cx.term_dim(j)))
            for j in range(cx.length + 1)
        ]
        self._ref_lowerings = [root_lowering(self.ref, g) for g in self.roots]
        self._ref_flat = [
            self._flatten_ref(cols) for cols in self._ref_lowerings
        ]
        self._raise_memo: list[dict] = [dict() for _ in range(cx.length + 1)]
        self._levi_cache: dict = {}

    def _flatten_ref(self, cols: Cols) -> list:
        n = self.ref.dim
        flat = [Fraction(0)] * (n * n)
        for j, col in cols.items():
            for r, c in col.items():
                flat[r * n + j] = Fraction(c)
        return flat

    def _expand_in_lowerings(self, cols: FCols) -> list[Fraction]:
        """Coefficients of a u_- element given by its reference matrix."""
        n = self.ref.dim
        flat = [Fraction(0)] * (n * n)
        for j, col in cols.items():
            for r, c in col.items():
                flat[r * n + j] = c
        coeffs = linalg.express_in_rows(self._ref_flat, flat, QQ)
        if coeffs is None:
            raise ValueError("matrix does not lie in the span of the lowerings")
        return coeffs

    def levi_element(self, vmat_int: Cols, ref_mat: Cols) -> _LeviElement:
        """Build a Levi element from its module matrix and reference matrix."""
        ref_fc = _fc_from_cols(ref_mat)
        adjoint = []
        for g in self.roots:
            bracket = _commutator_fr(ref_fc, _fc_from_cols(self._ref_lowerings[self.root_pos[g]]))
            adjoint.append({
                e: c for e, c in enumerate(self._expand_in_lowerings(bracket)) if c
            })
        return _LeviElement(vmat=_fc_from_cols(vmat_int), adjoint=adjoint)

    def _levi_pair(self, beta: Vec) -> tuple[_LeviElement, _LeviElement]:
        if beta not in self._levi_cache:
            x_v = root_raising(self.cx.module, beta)
            y_v = root_lowering(self.cx.module, beta)
            x_r = root_raising(self.ref, beta)
            y_r = root_lowering(self.ref, beta)
            self._levi_cache[beta] = (
                self.levi_element(x_v, x_r),
                self.levi_element(y_v, y_r),
            )
        return self._levi_cache[beta]

    def _bracket_element(self, beta: Vec, gamma_idx: int) -> _LeviElement:
        key = ("bracket", beta, gamma_idx)
        if key not in self._levi_cache:
            x_v = _fc_from_cols(root_raising(self.cx.module, beta))
            y_v = _fc_from_cols(root_lowering(self.cx.module, self.roots[gamma_idx]))
            vmat = _commutator_fr(x_v, y_v)
            x_r = _fc_from_cols(root_raising(self.ref, beta))
            y_r = _fc_from_cols(self._ref_lowerings[gamma_idx])
            ref_fc = _commutator_fr(x_r, y_r)
            adjoint = []
            for g in self.roots:
                br = _commutator_fr(ref_fc, _fc_from_cols(self._ref_lowerings[self.root_pos[g]]))
                adjoint.append({
                    e: c for e, c in enumerate(self._expand_in_lowerings(br)) if c
                })
            self._levi_cache[key] = _LeviElement(vmat=vmat, adjoint=adjoint)
        return self._levi_cache[key]

    def _apply_levi_entry(self, elt: _LeviElement, entry) -> dict:
        """Leibniz action of a Levi element on a basis triple, keyed by triples."""
        e, S, v = entry
        out: dict = {}

        def add(trip, c: Fraction):
            if not c:
                return
            out[trip] = out.get(trip, Fraction(0)) + c

        for gi, mult in enumerate(e):
            if not mult:
                continue
            e_less = e[:gi] + (e[gi] - 1,) + e[gi + 1 :]
            for eps, c in elt.adjoint[gi].items():
                e_new = e_less[:eps] + (e_less[eps] + 1,) + e_less[eps + 1 :]
                add((e_new, S, v), Fraction(mult) * c)
        for pos in range(len(S)):
            gi = S[pos]
            rest = S[:pos] + S[pos + 1 :]
            for eps, c in elt.adjoint[gi].items():
                if eps in rest:
                    continue
                slot = sum(1 for t in rest if t < eps)
                s_new = rest[:slot] + (eps,) + rest[slot:]
                sign = 1 if (pos - slot) % 2 == 0 else -1
                add((e, s_new, v), c * sign)
        for r, c in elt.vmat.get(v, {}).items():
            add((e, S, r), c)
        return {t: c for t, c in out.items() if c}

    def raise_unipotent_entry(self, j: int, beta_idx: int, entry) -> dict:
        """Action of a raising generator on a basis triple, keyed by triples."""
        memo = self._raise_memo[j]
        key = (beta_idx, entry)
        if key in memo:
            return memo[key]
        e, S, v = entry
        beta = self.roots[beta_idx]
        out: dict = {}
        if sum(e) == 0:
            for r, c in root_raising(self.cx.module, beta).get(v, {}).items():
                out[(e, S, r)] = out.get((e, S, r), Fraction(0)) + Fraction(c)
        else:
            gi = next(i for i, m in enumerate(e) if m)
            e_less = e[:gi] + (e[gi] - 1,) + e[gi + 1 :]
            inner = self.raise_unipotent_entry(j, beta_idx, (e_less, S, v))
            for (ie, iS, iv), c in inner.items():
                te = ie[:gi] + (ie[gi] + 1,) + ie[gi + 1 :]
                out[(te, iS, iv)] = out.get((te, iS, iv), Fraction(0)) + c
            elt = self._bracket_element(beta, gi)
            for trip, c in self._apply_levi_entry(elt, (e_less, S, v)).items():
                out[trip] = out.get(trip, Fraction(0)) + c
        out = {t: c for t, c in out.items() if c}
        memo[key] = out
        return out

    def _levi_operator(self, j: int, elt: _LeviElement) -> FCols:
        idx = self._index[j]
        cols: FCols = {}
        for ci, entry in enumerate(self.cx.bases[j]):
            col: dict[int, Fraction] = {}
            for trip, c in self._apply_levi_entry(elt, entry).items():
                col[idx[trip]] = col.get(idx[trip], Fraction(0)) + c
            col = {r: c for r, c in col.items() if c}
            if col:
                cols[ci] = col
        return cols

    def _unipotent_pair_operator(self, j: int, beta_idx: int) -> FCols:
        """Matrix of x y + y x for a unipotent root on degree j.

        Both composites are evaluated on the untruncated model and only the
        final image is projected back below the degree cap; dropping the
        intermediate instead would spoil commutation with the differential
        in the top polynomial degree.
        """
        idx = self._index[j]
        dmax = self.cx.dmax
        cols: FCols = {}
        for ci, entry in enumerate(self.cx.bases[j]):
            e, S, v = entry
            acc: dict[int, Fraction] = {}
            lifted = (e[:beta_idx] + (e[beta_idx] + 1,) + e[beta_idx + 1 :], S, v)
            for (ie, iS, iv), c in self.raise_unipotent_entry(j, beta_idx, lifted).items():
                if sum(ie) > dmax:
                    continue
                r = idx[(ie, iS, iv)]
                acc[r] = acc.get(r, Fraction(0)) + c
            for (ie, iS, iv), c in self.raise_unipotent_entry(j, beta_idx, entry).items():
                te = ie[:beta_idx] + (ie[beta_idx] + 1,) + ie[beta_idx + 1 :]
                if sum(te) > dmax:
                    continue
                r = idx[(te, iS, iv)]
                acc[r] = acc.get(r, Fraction(0)) + c
            acc = {r: c for r, c in acc.items() if c}
            if acc:
                cols[ci] = acc
        return cols

    def casimir(self, j: int) -> FCols:
        """Matrix of the Casimir on homological degree j."""
        cols: FCols = {}
        for ci, wt in enumerate(self._weights[j]):
            val = self.form.dual_norm(wt, wt)
            if val:
                cols[ci] = {ci: val}
        uni = set(self.roots)
        for beta, _ in self.cx.pdata.datum.positive_roots:
            t = self.form.root_pairing[beta]
            if beta in uni:
                pair = self._unipotent_pair_operator(j, self.root_pos[beta])
            else:
                x_elt, y_elt = self._levi_pair(beta)
                xy = _fc_compose(self._levi_operator(j, x_elt), self._levi_operator(j, y_elt))
                yx = _fc_compose(self._levi_operator(j, y_elt), self._levi_operator(j, x_elt))
                pair = xy
                _fc_add_into(pair, yx, Fraction(1))
            _fc_add_into(cols, pair, Fraction(1) / t)
        return cols

    def commutes_with_differential(self) -> bool:
        """Exact check that the Casimir commutes with every differential."""
        omegas = [self.casimir(j) for j in range(self.cx.length + 1)]
        for j in range(1, self.cx.length + 1):
            d = _fc_from_cols(
                {
                    c: dict(self.cx.diffs[j - 1].col(c))
                    for c in range(self.cx.term_dim(j))
                    if self.cx.diffs[j - 1].col(c)
                }
            )
            left = _fc_compose(omegas[j - 1], d)
            right = _fc_compose(d, omegas[j])
            if _fc_sub(left, right):
                return False
        return True


@dataclass(frozen=True)
class IsotypicSlice:
    """Generalized eigenspace data of the Casimir on a truncated complex."""

    lam: Vec
    eigenvalue: Fraction
    mode: str
    strata: dict
    commutes: bool
    gram: tuple[tuple[Fraction, ...], ...]

    def stratum_dim(self, j: int, s: int) -> int:
        return sum(self.strata.get((j, s), {}).values())

    def to_json(self) -> dict:
        strata = []
        for (j, s) in sorted(self.strata):
            char = self.strata[(j, s)]
            strata.append(
                {
                    "degree": j,
                    "sym_degree": s,
                    "dim": sum(char.values()),
                    "character": [
                        {"weight": weight_to_json(w), "mult": m}
                        for w, m in sorted(char.items())
                    ],
                }
            )
        return {
            "schema": "casimir/1",
            "weight": weight_to_json(self.lam),
            "eigenvalue": str(self.eigenvalue),
            "mode": self.mode,
            "commutes": self.commutes,
            "trace_form_gram": [[str(v) for v in row] for row in self.gram],
            "strata": strata,
        }


def _levi_constituents(pdata, char: dict[Vec, int]) -> dict[Vec, int]:
    """Decompose a character into Levi highest weights by peeling maxima."""
    levi = pdata.levi_datum
    coroot_sum = None
    for _, cv in pdata.levi_roots:
        coroot_sum = cv if coroot_sum is None else coroot_sum + cv
    remaining = {w: m for w, m in char.items() if m}
    out: dict[Vec, int] = {}
    while remaining:
        if coroot_sum is None:
            for w, m in remaining.items():
                out[w] = out.get(w, 0) + m
            break
        top = max(remaining, key=lambda w: (w.pair(coroot_sum), tuple(w)))
        mult = remaining[top]
        if mult < 0:
            raise ValueError(f"character is not a sum of Levi characters at {top}")
        out[top] = out.get(top, 0) + mult
        for w, m in freudenthal_weights(levi, top).items():
            val = remaining.get(w, 0) - mult * m
            if val:
                remaining[w] = val
            else:
                remaining.pop(w, None)
    return out


def _wedge_characters(cx: FilteredComplex) -> list[dict[Vec, int]]:
    import itertools as _it

    chars = []
    for j in range(cx.length + 1):
        char: dict[Vec, int] = {}
        for S in _it.combinations(range(len(cx.roots)), j):
            wt = None
            for gi in S:
                wt = -cx.roots[gi] if wt is None else wt - cx.roots[gi]
            for wv, mult in cx.module.character().items():
                total = wv if wt is None else wv + wt
                char[total] = char.get(total, 0) + mult
        chars.append(char)
    return chars


def collision_scan(cx: FilteredComplex, lam: Vec, form: TraceForm, p: int | None) -> list[dict]:
    """Unlinked Levi constituents sharing the target Casimir eigenvalue."""
    lam = Vec(lam)
    target = form.eigenvalue(lam)
    linked = {w.dot(lam) for w in cx.pdata.coset_reps}
    hits: list[dict] = []
    for j, char in enumerate(_wedge_characters(cx)):
        for eta in _levi_constituents(cx.pdata, char):
            if eta in linked:
                continue
            val = form.eigenvalue(eta)
            if p is None:
                same = val == target
            else:
                diff = val - target
                if diff.denominator % p == 0:
                    same = True
                else:
                    same = diff.numerator % p == 0
            if same:
                hits.append(
                    {
                        "degree": j,
                        "weight": weight_to_json(eta),
                        "eigenvalue": str(val),
                        "target": str(target),
                    }
                )
    return hits


def casimir_isotypic(cx: FilteredComplex, lam, p: int | None = None) -> IsotypicSlice:
    """Per-stratum generalized eigenspace of the Casimir at the weight's eigenvalue.

    Exact mode (p None) works over the rationals; flagged mode reduces the
    blocks mod p.  Either way a collision among unlinked constituents raises
    CasimirCollisionError rather than returning an overcount.
    """
    lam = Vec(lam)
    datum = cx.pdata.datum
    if cx.module.dim != weyl_dimension(datum, lam):
        raise ValueError("module does not match the requested highest weight")
    if lam not in cx.module.character():
        raise ValueError("requested weight is not a weight of the module")

    ops = VermaOperators(cx)
    form = ops.form
    hits = collision_scan(cx, lam, form, p)
    if hits:
        mode = "exact" if p is None else f"mod {p}"
        raise CasimirCollisionError(
            f"Casimir does not separate the weight {weight_to_json(lam)} ({mode}); "
            "extraction would overcount",
            hits,
        )
    if not ops.commutes_with_differential():
        raise AssertionError("Casimir does not commute with the differential")

    target = form.eigenvalue(lam)
    field = QQ if p is None else GF(p)

    strata: dict = {}
    for j in range(cx.length + 1):
        omega = ops.casimir(j)
        groups: dict[tuple[int, Vec], list[int]] = {}
        for i in range(cx.term_dim(j)):
            s = sum(cx.bases[j][i][0])
            groups.setdefault((s, ops._weights[j][i]), []).append(i)
        for (s, xi), idxs in sorted(groups.items(), key=lambda kv: (kv[0][0], tuple(kv[0][1]))):
            block = _dense_block(omega, idxs, target, field, p)
            gen_dim = _generalized_nullity(block, field)
            if gen_dim:
                char = strata.setdefault((j, s), {})
                char[xi] = char.get(xi, 0) + gen_dim

    return IsotypicSlice(
        lam=lam,
        eigenvalue=target,
        mode="exact" if p is None else f"mod-{p}",
        strata=strata,
        commutes=True,
        gram=form.gram,
    )


def _dense_block(omega: FCols, idxs: list[int], shift: Fraction, field, p: int | None):
    pos = {g: i for i, g in enumerate(idxs)}
    n = len(idxs)
    block = [[field.zero()] * n for _ in range(n)]
    for bj, c in enumerate(idxs):
        for r, val in omega.get(c, {}).items():
            if r in pos:
                block[pos[r]][bj] = _to_field(val, field, p)
    sh = _to_field(shift, field, p)
    for i in range(n):
        block[i][i] = field.sub(block[i][i], sh)
    return block


def _to_field(val: Fraction, field, p: int | None):
    if p is None:
        return val
    if val.denominator % p == 0:
        raise ValueError(f"denominator of {val} is divisible by {p}")
    return field.mul(field.from_int(val.numerator), field.inv(field.from_int(val.denominator)))


def _generalized_nullity(block, field) -> int:
    n = len(block)
    if n == 0:
        return 0
    power = [row[:] for row in block]
    rank = linalg.rank([row[:] for row in power], field)
    for _ in range(n):
        nxt = linalg.matmul(power, block, field)
        r2 = linalg.rank([row[:] for row in nxt], field)
        if r2 == rank:
            break
        power, rank = nxt, r2
    return n - rank


def isotypic_page_check(slice_: IsotypicSlice, page, cx: FilteredComplex) -> dict:
    """Compare extracted strata against the page's polynomial-times-Levi terms.

    For each homological degree j and polynomial degree s the extracted
    character must equal the sum over length-j page entries of the character
    of Sym^s(u_-) tensored with the Levi module of highest weight w.lam.
    """
    import itertools as _it

    levi = page.pdata.levi_datum
    sym_chars: list[dict[Vec, int]] = []
    for s in range(cx.dmax + 1):
        char: dict[Vec, int] = {}
        for combo in _it.combinations_with_replacement(cx.roots, s):
            wt = None
            for g in combo:
                wt = -g if wt is None else wt - g
            key = wt if wt is not None else zero_vec(cx.pdata.datum.rank)
            char[key] = char.get(key, 0) + 1
        sym_chars.append(char)

    expected: dict = {}
    for entry in page.all_entries():
        j = entry.length
        wchar = freudenthal_weights(levi, entry.dot_weight)
        for s in range(cx.dmax + 1):
            tgt = expected.setdefault((j, s), {})
            for ws, ms in sym_chars[s].items():
                for ww, mw in wchar.items():
                    key = ws + ww
                    tgt[key] = tgt.get(key, 0) + ms * mw

    mismatches = []
    for key in sorted(set(expected) | set(slice_.strata)):
        exp = expected.get(key, {})
        got = slice_.strata.get(key, {})
        for wt in sorted(set(exp) | set(got), key=tuple):
            if exp.get(wt, 0) != got.get(wt, 0):
                j, s = key
                mismatches.append(
                    {
                        "degree": j,
                        "sym_degree": s,
                        "weight": weight_to_json(wt),
                        "expected": exp.get(wt, 0),
                        "extracted": got.get(wt, 0),
                    }
                )

    return {
        "schema": "casimircheck/1",
        "mismatches": mismatches,
        "ok": not mismatches,
    }
