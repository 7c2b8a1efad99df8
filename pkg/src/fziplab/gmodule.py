"""Finite-dimensional modules with exact integer action matrices.

A module stores, per simple root, the raising and lowering operators as
sparse column maps with integer entries, plus a torus weight for every
basis vector.  Tensor, wedge, symmetric and dual constructions stay
integral, and highest-weight submodules are carved out on the smallest
operator-stable sublattice so that restricted matrices stay integral too.

Root vectors for non-simple roots come from iterated brackets with a
deterministic choice of decomposition, the same recipe on every module,
so they are compatible with every equivariant construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .linalg import IntLattice
from .rootdata import RootDatum, Vec, is_dominant, weyl_dimension, zero_vec
from .parabolic import ParabolicData

__all__ = [
    "GModule",
    "standard_module",
    "character_module",
    "trivial_module",
    "tensor_module",
    "wedge_power",
    "sym_power",
    "dual_module",
    "direct_sum_module",
    "weyl_module",
    "root_raising",
    "root_lowering",
    "kostant_check",
]

Cols = dict[int, dict[int, int]]


@dataclass(frozen=True)
class GModule:
    """Module with integer matrices for the simple raising/lowering operators."""

    datum: RootDatum
    labels: tuple[str, ...]
    weights: tuple[Vec, ...]
    e_cols: tuple[Cols, ...]
    f_cols: tuple[Cols, ...]

    @property
    def dim(self) -> int:
        return len(self.labels)

    def character(self) -> dict[Vec, int]:
        out: dict[Vec, int] = {}
        for w in self.weights:
            out[w] = out.get(w, 0) + 1
        return out

    def weight_spaces(self) -> dict[Vec, tuple[int, ...]]:
        out: dict[Vec, list[int]] = {}
        for i, w in enumerate(self.weights):
            out.setdefault(w, []).append(i)
        return {w: tuple(ix) for w, ix in out.items()}

    def mu_levels(self, mu: Vec) -> tuple[Fraction, ...]:
        return tuple(w.pair(mu) for w in self.weights)

    def __repr__(self):
        return f"GModule(dim={self.dim}, datum={self.datum.label or 'datum'})"


def _apply_cols(cols: Cols, vec: dict[int, int]) -> dict[int, int]:
    """Image of a sparse vector under a sparse column map."""
    out: dict[int, int] = {}
    for j, c in vec.items():
        col = cols.get(j)
        if not col:
            continue
        for r, a in col.items():
            v = out.get(r, 0) + c * a
            if v:
                out[r] = v
            else:
                out.pop(r, None)
    return out


def _col_add(cols: Cols, j: int, r: int, c: int):
    if not c:
        return
    col = cols.setdefault(j, {})
    v = col.get(r, 0) + c
    if v:
        col[r] = v
    else:
        del col[r]
        if not col:
            del cols[j]


def _check_weight_shifts(m: GModule):
    for i in range(m.datum.nsimple):
        alpha = m.datum.simple_roots[i]
        for j, col in m.e_cols[i].items():
            for r in col:
                if m.weights[r] != m.weights[j] + alpha:
                    raise ValueError("raising operator does not shift weights by the root")
        for j, col in m.f_cols[i].items():
            for r in col:
                if m.weights[r] != m.weights[j] - alpha:
                    raise ValueError("lowering operator does not shift weights by the root")


def standard_module(datum: RootDatum, factor: int = 0) -> GModule:
    """Defining module of one constructed block, other blocks acting trivially."""
    if datum.factors is None:
        raise ValueError("standard module needs a datum built from type shorthands")
    fac = datum.factors[factor]
    if fac.kind == "torus":
        raise ValueError("a torus block has no standard module")
    rank = datum.rank
    off = fac.offset
    n = fac.n
    ns = datum.nsimple
    e_cols: list[Cols] = [dict() for _ in range(ns)]
    f_cols: list[Cols] = [dict() for _ in range(ns)]
    if fac.kind == "A":
        size = n + 1
        labels = tuple(f"v{k + 1}" for k in range(size))
        if fac.reductive:
            weights = [Vec([1 if c == off + k else 0 for c in range(rank)]) for k in range(size)]
        else:
            # weight-lattice coordinates: wt(v_k) = varpi_1 - alpha_1 - .. - alpha_{k}
            weights = []
            for k in range(size):
                w = [0] * rank
                if k < n:
                    w[off + k] += 1
                if k > 0:
                    w[off + k - 1] -= 1
                weights.append(Vec(w))
        for i in range(n):
            gi = fac.root_offset + i
            e_cols[gi][i + 1] = {i: 1}
            f_cols[gi][i] = {i + 1: 1}
        return GModule(datum, labels, tuple(weights), tuple(e_cols), tuple(f_cols))
    if fac.kind == "C":
        size = 2 * n
        labels = tuple(
            [f"v{k + 1}" for k in range(n)] + [f"v{n - k}'" for k in range(n)]
        )
        # basis order: v_1 .. v_n, v_n' .. v_1'; index of v_k' is 2n-k
        weights = []
        for k in range(n):
            weights.append(Vec([1 if c == off + k else 0 for c in range(rank)]))
        for k in range(n, 0, -1):
            if fac.reductive:
                w = [0] * rank
                w[off + n] = 1  # similitude coordinate f_0
                w[off + k - 1] -= 1
                weights.append(Vec(w))
            else:
                weights.append(Vec([-1 if c == off + k - 1 else 0 for c in range(rank)]))
        for i in range(n - 1):
            gi = fac.root_offset + i
            # short root f_i - f_{i+1}: unprimed chain and negated primed chain
            e_cols[gi][i + 1] = {i: 1}
            f_cols[gi][i] = {i + 1: 1}
            prim = lambda k: 2 * n - 1 - k  # index of v_{k+1}'
            e_cols[gi][prim(i)] = {prim(i + 1): -1}
            f_cols[gi][prim(i + 1)] = {prim(i): -1}
        gl = fac.root_offset + n - 1
        e_cols[gl][n] = {n - 1: 1}  # v_n' -> v_n
        f_cols[gl][n - 1] = {n: 1}  # v_n -> v_n'
        return GModule(datum, labels, tuple(weights), tuple(e_cols), tuple(f_cols))
    raise ValueError(f"unsupported block kind: {fac.kind!r}")


def character_module(datum: RootDatum, weight) -> GModule:
    """One-dimensional module for a Weyl-invariant character."""
    w = Vec(weight)
    if any(w.pair(cv) != 0 for cv in datum.simple_coroots):
        raise ValueError(f"{w} is not Weyl-invariant, cannot act on a line")
    ns = datum.nsimple
    return GModule(
        datum,
        (f"chi{w}",),
        (w,),
        tuple({} for _ in range(ns)),
        tuple({} for _ in range(ns)),
    )


def trivial_module(datum: RootDatum) -> GModule:
    return character_module(datum, zero_vec(datum.rank))


def tensor_module(m1: GModule, m2: GModule) -> GModule:
    if m1.datum is not m2.datum and m1.datum.to_json() != m2.datum.to_json():
        raise ValueError("tensor factors live over different data")
    n2 = m2.dim
    labels = tuple(f"{a}*{b}" for a in m1.labels for b in m2.labels)
    weights = tuple(w1 + w2 for w1 in m1.weights for w2 in m2.weights)
    ns = m1.datum.nsimple
    e_cols: list[Cols] = [dict() for _ in range(ns)]
    f_cols: list[Cols] = [dict() for _ in range(ns)]
    for i in range(ns):
        for ops, out in ((m1.e_cols[i], e_cols[i]), (m1.f_cols[i], f_cols[i])):
            for j, col in ops.items():
                for r, c in col.items():
                    for b in range(n2):
                        _col_add(out, j * n2 + b, r * n2 + b, c)
        for ops, out in ((m2.e_cols[i], e_cols[i]), (m2.f_cols[i], f_cols[i])):
            for j, col in ops.items():
                for r, c in col.items():
                    for a in range(m1.dim):
                        _col_add(out, a * n2 + j, a * n2 + r, c)
    return GModule(m1.datum, labels, weights, tuple(e_cols), tuple(f_cols))


def _insert_sorted(tup: tuple[int, ...], pos: int, new: int):
    """Replace tup[pos] by new and sort; return (sorted tuple, sign) or None."""
    rest = tup[:pos] + tup[pos + 1 :]
    if new in rest:
        return None
    smaller = sum(1 for x in rest if x < new)
    out = rest[:smaller] + (new,) + rest[smaller:]
    # moving the changed slot from position pos to position `smaller`
    sign = -1 if (pos - smaller) % 2 else 1
    return out, sign


def wedge_power(m: GModule, k: int) -> GModule:
    from itertools import combinations

    basis = list(combinations(range(m.dim), k))
    index = {t: i for i, t in enumerate(basis)}
    labels = tuple("^".join(m.labels[i] for i in t) if t else "1" for t in basis)
    weights = tuple(
        sum((m.weights[i] for i in t), zero_vec(m.datum.rank)) for t in basis
    )
    ns = m.datum.nsimple
    e_cols: list[Cols] = [dict() for _ in range(ns)]
    f_cols: list[Cols] = [dict() for _ in range(ns)]
    for i in range(ns):
        for ops, out in ((m.e_cols[i], e_cols[i]), (m.f_cols[i], f_cols[i])):
            for jt, t in enumerate(basis):
                for pos, b in enumerate(t):
                    col = ops.get(b)
                    if not col:
                        continue
                    for r, c in col.items():
                        ins = _insert_sorted(t, pos, r)
                        if ins is None:
                            continue
                        new_t, sign = ins
                        _col_add(out, jt, index[new_t], sign * c)
    return GModule(m.datum, labels, weights, tuple(e_cols), tuple(f_cols))


def sym_power(m: GModule, k: int) -> GModule:
    from itertools import combinations_with_replacement

    basis = list(combinations_with_replacement(range(m.dim), k))
    index = {t: i for i, t in enumerate(basis)}
    labels = tuple(".".join(m.labels[i] for i in t) if t else "1" for t in basis)
    weights = tuple(
        sum((m.weights[i] for i in t), zero_vec(m.datum.rank)) for t in basis
    )
    ns = m.datum.nsimple
    e_cols: list[Cols] = [dict() for _ in range(ns)]
    f_cols: list[Cols] = [dict() for _ in range(ns)]
    for i in range(ns):
        for ops, out in ((m.e_cols[i], e_cols[i]), (m.f_cols[i], f_cols[i])):
            for jt, t in enumerate(basis):
                seen = set()
                for pos, b in enumerate(t):
                    if b in seen:
                        continue
                    seen.add(b)
                    mult = t.count(b)
                    col = ops.get(b)
                    if not col:
                        continue
                    for r, c in col.items():
                        new_t = tuple(sorted(t[:pos] + t[pos + 1 :] + (r,)))
                        _col_add(out, jt, index[new_t], mult * c)
    return GModule(m.datum, labels, weights, tuple(e_cols), tuple(f_cols))


def dual_module(m: GModule) -> GModule:
    labels = tuple(f"{l}^" for l in m.labels)
    weights = tuple(-w for w in m.weights)
    ns = m.datum.nsimple
    e_cols: list[Cols] = [dict() for _ in range(ns)]
    f_cols: list[Cols] = [dict() for _ in range(ns)]
    for i in range(ns):
        for ops, out in ((m.e_cols[i], e_cols[i]), (m.f_cols[i], f_cols[i])):
            for j, col in ops.items():
                for r, c in col.items():
                    _col_add(out, r, j, -c)
    return GModule(m.datum, labels, weights, tuple(e_cols), tuple(f_cols))


def direct_sum_module(m1: GModule, m2: GModule) -> GModule:
    d1 = m1.dim
    labels = m1.labels + m2.labels
    weights = m1.weights + m2.weights
    ns = m1.datum.nsimple
    e_cols: list[Cols] = [dict() for _ in range(ns)]
    f_cols: list[Cols] = [dict() for _ in range(ns)]
    for i in range(ns):
        for src, out in ((m1.e_cols[i], e_cols[i]), (m1.f_cols[i], f_cols[i])):
            for j, col in src.items():
                out[j] = dict(col)
        for src, out in ((m2.e_cols[i], e_cols[i]), (m2.f_cols[i], f_cols[i])):
            for j, col in src.items():
                out[j + d1] = {r + d1: c for r, c in col.items()}
    return GModule(m1.datum, labels, weights, tuple(e_cols), tuple(f_cols))


def _seed_module(datum: RootDatum, lam: Vec) -> GModule:
    """Ambient module whose top weight is lam, built from standard tensors."""
    if datum.factors is None:
        raise ValueError("highest-weight modules need a datum built from type shorthands")
    parts: list[GModule] = []
    for fi, fac in enumerate(datum.factors):
        block = lam[fac.offset : fac.offset + fac.width]
        if fac.kind == "torus":
            if any(b != 0 for b in block):
                coords = [0] * datum.rank
                for k, b in enumerate(block):
                    coords[fac.offset + k] = b
                parts.append(character_module(datum, coords))
            continue
        entries = [int(b) for b in block]
        std = standard_module(datum, fi)
        if fac.kind == "A" and fac.reductive:
            shift = entries[-1]
            ent = [e - shift for e in entries]
            for r in range(len(ent) - 1):
                deg = ent[r] - ent[r + 1]
                if deg:
                    parts.append(sym_power(wedge_power(std, r + 1), deg))
            if shift:
                det = [0] * datum.rank
                for k in range(fac.width):
                    det[fac.offset + k] = shift
                parts.append(character_module(datum, det))
        elif fac.kind == "A":
            # weight-lattice coordinates: entries are fundamental multiplicities
            for r, deg in enumerate(entries):
                if deg:
                    parts.append(sym_power(wedge_power(std, r + 1), deg))
        elif fac.kind == "C":
            n = fac.n
            sym_part = entries[:n]
            for r in range(n):
                deg = sym_part[r] - (sym_part[r + 1] if r + 1 < n else 0)
                if deg:
                    parts.append(sym_power(wedge_power(std, r + 1), deg))
            if fac.reductive and entries[n]:
                coords = [0] * datum.rank
                coords[fac.offset + n] = entries[n]
                parts.append(character_module(datum, coords))
        else:
            raise ValueError(f"unsupported block kind: {fac.kind!r}")
    if not parts:
        return trivial_module(datum)
    out = parts[0]
    for p in parts[1:]:
        out = tensor_module(out, p)
    return out


def weyl_module(datum: RootDatum, lam) -> GModule:
    """Irreducible with highest weight lam over the rationals, integer matrices.

    Finds the highest-weight line in a standard tensor seed, then closes the
    smallest lattice stable under all raising and lowering operators; the
    result has the predicted Weyl dimension or construction fails loudly.
    """
    lam = Vec(lam)
    if not lam.is_integral:
        raise ValueError("highest weight must be integral")
    if not is_dominant(datum, lam):
        raise ValueError(f"{lam} is not dominant")
    target_dim = weyl_dimension(datum, lam)
    seed = _seed_module(datum, lam)
    hw = _highest_weight_vector(seed, lam)
    lattices: dict[Vec, IntLattice] = {lam: IntLattice(seed.dim)}
    lattices[lam].add(hw)
    ops = list(seed.f_cols) + list(seed.e_cols)
    shifts = [-a for a in datum.simple_roots] + list(datum.simple_roots)
    changed = True
    while changed:
        changed = False
        for w in list(lattices):
            lat = lattices[w]
            for op, shift in zip(ops, shifts):
                tgt_w = w + shift
                for row in list(lat.rows):
                    img = _apply_cols(op, {j: c for j, c in enumerate(row) if c})
                    if not img:
                        continue
                    tgt = lattices.get(tgt_w)
                    if tgt is None:
                        tgt = IntLattice(seed.dim)
                        lattices[tgt_w] = tgt
                    vec = [0] * seed.dim
                    for r, c in img.items():
                        vec[r] = c
                    if tgt.add(vec):
                        changed = True
    order = sorted(lattices, key=tuple)
    basis_rows: list[tuple[Vec, int]] = []
    weights: list[Vec] = []
    labels: list[str] = []
    for w in order:
        for k in range(lattices[w].dim):
            basis_rows.append((w, k))
            weights.append(w)
            labels.append(f"x{len(labels)}@{w}")
    if len(weights) != target_dim:
        raise ArithmeticError(
            f"highest-weight closure has dimension {len(weights)}, expected {target_dim}"
        )
    pos = {bw: i for i, bw in enumerate(basis_rows)}
    ns = datum.nsimple
    e_cols: list[Cols] = [dict() for _ in range(ns)]
    f_cols: list[Cols] = [dict() for _ in range(ns)]
    for w in order:
        lat = lattices[w]
        for k, row in enumerate(lat.rows):
            j = pos[(w, k)]
            vec = {i: c for i, c in enumerate(row) if c}
            for i in range(ns):
                for op, out, shift in (
                    (seed.e_cols[i], e_cols[i], datum.simple_roots[i]),
                    (seed.f_cols[i], f_cols[i], -datum.simple_roots[i]),
                ):
                    img = _apply_cols(op, vec)
                    if not img:
                        continue
                    tgt_w = w + shift
                    tgt = lattices.get(tgt_w)
                    assert tgt is not None and tgt.dim > 0
                    dense = [0] * seed.dim
                    for r, c in img.items():
                        dense[r] = c
                    coords = tgt.coords(dense)
                    for t, c in enumerate(coords):
                        _col_add(out, j, pos[(tgt_w, t)], c)
    mod = GModule(datum, tuple(labels), tuple(weights), tuple(e_cols), tuple(f_cols))
    _check_weight_shifts(mod)
    return mod


def _highest_weight_vector(seed: GModule, lam: Vec) -> list[int]:
    """Primitive integer vector of weight lam killed by every raising operator."""
    from . import linalg
    from .fields import QQ

    space = [i for i, w in enumerate(seed.weights) if w == lam]
    if not space:
        raise ArithmeticError(f"seed module has no weight-{lam} vectors")
    # rows of the stacked raising operators restricted to the weight space
    rows = []
    for i in range(seed.datum.nsimple):
        img_rows: dict[int, dict[int, int]] = {}
        for cix, j in enumerate(space):
            for r, c in seed.e_cols[i].get(j, {}).items():
                img_rows.setdefault(r, {})[cix] = c
        for r, row in sorted(img_rows.items()):
            rows.append([Fraction(row.get(cix, 0)) for cix in range(len(space))])
    if rows:
        kernel = linalg.nullspace(rows, QQ, ncols=len(space))
    else:
        kernel = linalg.identity(len(space), QQ)
    if len(kernel) != 1:
        raise ArithmeticError(
            f"highest-weight space at {lam} has dimension {len(kernel)}, expected 1"
        )
    vec = kernel[0]
    den = 1
    for x in vec:
        den = den * x.denominator // _gcd(den, x.denominator)
    ints = [int(x * den) for x in vec]
    g = 0
    for x in ints:
        g = _gcd(g, abs(x))
    ints = [x // g for x in ints]
    out = [0] * seed.dim
    for cix, j in enumerate(space):
        out[j] = ints[cix]
    return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _bracket_path(datum: RootDatum, beta: Vec) -> tuple[int, Vec] | None:
    """First simple index i with beta - alpha_i a positive root, with the rest."""
    pos = {r for r, _ in datum.positive_roots}
    for i, a in enumerate(datum.simple_roots):
        rest = beta - a
        if rest in pos:
            return i, rest
    return None


def root_raising(m: GModule, beta: Vec) -> Cols:
    """Action of the raising vector for the positive root beta (bracket recipe)."""
    return _root_op(m, Vec(beta), raising=True)


def root_lowering(m: GModule, beta: Vec) -> Cols:
    """Action of the lowering vector for the positive root beta."""
    return _root_op(m, Vec(beta), raising=False)


def _root_op(m: GModule, beta: Vec, raising: bool) -> Cols:
    datum = m.datum
    for i, a in enumerate(datum.simple_roots):
        if a == beta:
            return m.e_cols[i] if raising else m.f_cols[i]
    path = _bracket_path(datum, beta)
    if path is None:
        raise ValueError(f"{beta} is not a positive root")
    i, rest = path
    inner = _root_op(m, rest, raising)
    outer = m.e_cols[i] if raising else m.f_cols[i]
    return _commutator(outer, inner)


def _commutator(a: Cols, b: Cols) -> Cols:
    out: Cols = {}
    for j in set(a) | set(b):
        col: dict[int, int] = {}
        for r, c in _apply_cols(a, b.get(j, {})).items():
            col[r] = col.get(r, 0) + c
        for r, c in _apply_cols(b, a.get(j, {})).items():
            col[r] = col.get(r, 0) - c
        col = {r: c for r, c in col.items() if c}
        if col:
            out[j] = col
    return out


def kostant_check(pdata: ParabolicData) -> tuple[bool, dict[int, dict]]:
    """Compare wedge powers of the opposite unipotent with coset-rep characters.

    For each degree a, the weight multiset of the a-th wedge of the negative
    unipotent roots must match the sum of Levi characters with dot-shifted
    zero highest weight over the length-a coset representatives.
    """
    from itertools import combinations

    from .rootdata import freudenthal_weights

    levi = pdata.levi_datum
    neg = [-r for r, _ in pdata.unipotent_roots]
    details: dict[int, dict] = {}
    ok = True
    for a in range(len(neg) + 1):
        lhs: dict[Vec, int] = {}
        for combo in combinations(neg, a):
            w = sum(combo, zero_vec(pdata.datum.rank))
            lhs[w] = lhs.get(w, 0) + 1
        rhs: dict[Vec, int] = {}
        for rep in pdata.reps_of_length(a):
            hw = rep.dot(zero_vec(pdata.datum.rank))
            for w, mult in freudenthal_weights(levi, hw).items():
                rhs[w] = rhs.get(w, 0) + mult
        match = lhs == rhs
        ok = ok and match
        details[a] = {
            "wedge_dim": sum(lhs.values()),
            "rep_sum": sum(rhs.values()),
            "reps": len(pdata.reps_of_length(a)),
            "match": match,
        }
    return ok, details
