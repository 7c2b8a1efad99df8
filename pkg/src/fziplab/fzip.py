"""Filtered vector spaces over a finite field with semilinear graded glue.

An object here is a space with a descending filtration C, an ascending
filtration D, and for each index an invertible map from the Frobenius
twist of the C-graded piece to the D-graded piece of the same index.
Semilinear maps are stored as matrices in canonical graded bases, where
"apply" means: raise coordinates to the p-th power, then multiply.

Filtration steps are kept as reduced row spans, so equality of objects is
literal equality of the stored data.
"""

from __future__ import annotations

import random
from functools import cached_property

from . import linalg
from .fields import Field, field_from_json

__all__ = [
    "FZip",
    "fzip_from_graded_data",
    "point_fzip",
    "tensor_fzip",
    "dual_fzip",
    "direct_sum_fzip",
    "random_fzip",
    "is_isomorphic",
    "SearchBudgetError",
]

SCHEMA = "fzip/1"


class SearchBudgetError(RuntimeError):
    """Raised when an isomorphism search would exceed the enumeration budget."""


class FZip:
    """Space with C and D filtrations and invertible semilinear graded maps."""

    def __init__(self, field: Field, dim: int, c_filt: dict, d_filt: dict, phi: dict):
        if field.char == 0:
            raise ValueError("zip objects need a field of positive characteristic")
        self.field = field
        self.dim = dim
        self._c = {int(i): _normalize_rows(rows, field) for i, rows in c_filt.items()}
        self._d = {int(i): _normalize_rows(rows, field) for i, rows in d_filt.items()}
        self.phi = {int(a): [list(row) for row in m] for a, m in phi.items()}

    # filtration accessors: C descending, D ascending, total outside stored range
    def c_space(self, i: int):
        keys = sorted(self._c)
        if not keys:
            return _full_rows(self.dim, self.field)
        if i < keys[0]:
            return _full_rows(self.dim, self.field)
        if i > keys[-1]:
            return ()
        return self._c[i]

    def d_space(self, i: int):
        keys = sorted(self._d)
        if not keys:
            return _full_rows(self.dim, self.field)
        if i < keys[0]:
            return ()
        if i > keys[-1]:
            return _full_rows(self.dim, self.field)
        return self._d[i]

    @cached_property
    def support(self) -> tuple[int, ...]:
        out = []
        for a in self._index_window():
            if len(self.c_space(a)) > len(self.c_space(a + 1)):
                out.append(a)
        return tuple(out)

    def _index_window(self):
        keys = sorted(set(self._c) | set(self._d))
        if not keys:
            return range(0, 1)
        return range(keys[0] - 1, keys[-1] + 2)

    def zip_type(self) -> dict[int, int]:
        """Index -> jump size of the C filtration."""
        return {
            a: len(self.c_space(a)) - len(self.c_space(a + 1)) for a in self.support
        }

    def d_type(self) -> dict[int, int]:
        out = {}
        for a in self._index_window():
            jump = len(self.d_space(a)) - len(self.d_space(a - 1))
            if jump:
                out[a] = jump
        return out

    @cached_property
    def graded_c_bases(self) -> dict[int, tuple]:
        """Canonical lift of a basis of each nonzero C-graded piece."""
        return {
            a: linalg.complement_in(self.c_space(a + 1), self.c_space(a), self.field)
            for a in self.support
        }

    @cached_property
    def graded_d_bases(self) -> dict[int, tuple]:
        out = {}
        for a in self._index_window():
            if len(self.d_space(a)) > len(self.d_space(a - 1)):
                out[a] = linalg.complement_in(
                    self.d_space(a - 1), self.d_space(a), self.field
                )
        return out

    def validate(self) -> list[str]:
        """All structural problems, empty when the object is a genuine zip."""
        F = self.field
        problems = []
        window = list(self._index_window())
        for a in window:
            sub, sup = self.c_space(a + 1), self.c_space(a)
            if not _contained(sub, sup, F):
                problems.append(f"C^{a + 1} is not contained in C^{a}")
        for a in window:
            sub, sup = self.d_space(a - 1), self.d_space(a)
            if not _contained(sub, sup, F):
                problems.append(f"D_{a - 1} is not contained in D_{a}")
        if self._c and len(self._c[min(self._c)]) != self.dim:
            problems.append("C filtration does not start at the full space")
        if self._c and len(self._c[max(self._c)]) != 0:
            problems.append("C filtration does not end at zero")
        if self._d and len(self._d[max(self._d)]) != self.dim:
            problems.append("D filtration does not end at the full space")
        if self._d and len(self._d[min(self._d)]) != 0:
            problems.append("D filtration does not start at zero")
        ctype = self.zip_type()
        dtype = self.d_type()
        if ctype != dtype:
            problems.append(f"graded dimensions differ: C {ctype} versus D {dtype}")
        for a, r in ctype.items():
            m = self.phi.get(a)
            if m is None:
                problems.append(f"missing graded map at index {a}")
                continue
            if len(m) != r or any(len(row) != r for row in m):
                problems.append(f"graded map at {a} is not {r} by {r}")
            elif linalg.invert(m, F) is None:
                problems.append(f"graded map at {a} is not invertible")
        for a in self.phi:
            if a not in ctype:
                problems.append(f"graded map at {a} has no graded piece")
        return problems

    def to_json(self) -> dict:
        F = self.field
        enc = F.element_to_json
        return {
            "schema": SCHEMA,
            "base": F.to_json(),
            "dim": self.dim,
            "C": [{"i": i, "rows": [[enc(x) for x in row] for row in rows]}
                  for i, rows in sorted(self._c.items())],
            "D": [{"i": i, "rows": [[enc(x) for x in row] for row in rows]}
                  for i, rows in sorted(self._d.items())],
            "phi": [{"i": a, "matrix": [[enc(x) for x in row] for row in m]}
                    for a, m in sorted(self.phi.items())],
        }

    @classmethod
    def from_json(cls, data: dict) -> "FZip":
        if data.get("schema") != SCHEMA:
            raise ValueError(f"unsupported schema: {data.get('schema')!r}")
        F = field_from_json(data["base"])
        de = F.element_from_json
        return cls(
            F,
            int(data["dim"]),
            {int(b["i"]): [[de(x) for x in row] for row in b["rows"]] for b in data["C"]},
            {int(b["i"]): [[de(x) for x in row] for row in b["rows"]] for b in data["D"]},
            {int(b["i"]): [[de(x) for x in row] for row in b["matrix"]] for b in data["phi"]},
        )

    def __eq__(self, other):
        if not isinstance(other, FZip):
            return NotImplemented
        if self.field != other.field or self.dim != other.dim:
            return False
        window = sorted(set(self._index_window()) | set(other._index_window()))
        return (
            all(self.c_space(a) == other.c_space(a) for a in window)
            and all(self.d_space(a) == other.d_space(a) for a in window)
            and self.phi == other.phi
        )

    def __repr__(self):
        return f"FZip(dim={self.dim}, type={self.zip_type()}, field={self.field})"


def _normalize_rows(rows, field):
    return tuple(tuple(row) for row in linalg.rref([list(r) for r in rows], field)[0])


def _full_rows(dim, field):
    return tuple(tuple(row) for row in linalg.identity(dim, field))


def _contained(sub, sup, field) -> bool:
    sup_r = linalg.rref([list(r) for r in sup], field)[0]
    return all(linalg.in_span(sup_r, list(v), field) for v in sub)


def _frob_matrix(m, field):
    return [[field.frobenius(x) for x in row] for row in m]


def fzip_from_graded_data(field, dim, c_filt, d_filt, graded) -> FZip:
    """Build a zip from filtrations plus graded maps in caller-chosen bases.

    graded[a] = (c_rows, d_rows, matrix): c_rows lift a basis of the a-th
    C-graded piece, d_rows one of the D-graded piece, and matrix is the
    semilinear map between those bases.  Everything is converted to the
    canonical bases derived from the filtrations.
    """
    z = FZip(field, dim, c_filt, d_filt, {})
    phi = {}
    for a, (c_rows, d_rows, mat) in graded.items():
        A = _express_block(z.c_space(a + 1), c_rows, z.graded_c_bases[a], field)
        B = _express_block(z.d_space(a - 1), z.graded_d_bases[a], d_rows, field)
        # canonical coords -> caller C-basis (A), apply, then to canonical D (B)
        m1 = linalg.matmul(mat, _frob_matrix(A, field), field)
        phi[a] = linalg.matmul(B, m1, field)
    return FZip(field, dim, c_filt, d_filt, phi)


def _express_block(mod_rows, target_rows, source_rows, field):
    """Matrix expressing source vectors in target basis, modulo mod_rows.

    Column j holds the target-coordinates of source_rows[j].
    """
    stack = [list(r) for r in mod_rows] + [list(r) for r in target_rows]
    k = len(target_rows)
    cols = []
    for v in source_rows:
        coeffs = linalg.express_in_rows(stack, list(v), field)
        if coeffs is None:
            raise ValueError("graded basis does not lie in the expected step")
        cols.append(coeffs[len(mod_rows) :])
    return [[cols[j][i] for j in range(len(cols))] for i in range(k)]


def point_fzip(module, mu, field) -> FZip:
    """Zip of a cocharacter-graded module: weight levels set both filtrations.

    The a-th C-step is spanned by basis vectors of weight pairing >= a with
    mu, the a-th D-step by those <= a, and the graded maps are identities
    on the weight spaces.
    """
    from .rootdata import Vec

    levels = list(module.mu_levels(Vec(mu)))
    if any(lv.denominator != 1 for lv in levels):
        raise ValueError("cocharacter pairings must be integers")
    levels = [int(lv) for lv in levels]
    n = module.dim
    one, zero = field.one(), field.zero()
    lo, hi = min(levels), max(levels)
    c_filt, d_filt, phi = {}, {}, {}
    for a in range(lo, hi + 2):
        c_filt[a] = [
            [one if j == i else zero for j in range(n)]
            for i in range(n)
            if levels[i] >= a
        ]
    for a in range(lo - 1, hi + 1):
        d_filt[a] = [
            [one if j == i else zero for j in range(n)]
            for i in range(n)
            if levels[i] <= a
        ]
    for a in range(lo, hi + 1):
        r = levels.count(a)
        if r:
            phi[a] = [[one if i == j else zero for j in range(r)] for i in range(r)]
    return FZip(field, n, c_filt, d_filt, phi)


def tensor_fzip(z1: FZip, z2: FZip) -> FZip:
    """Tensor product: convolved filtrations, graded maps on matching pieces."""
    if z1.field != z2.field:
        raise ValueError("tensor factors live over different fields")
    F = z1.field
    n1, n2 = z1.dim, z2.dim
    dim = n1 * n2
    s1, s2 = z1.support, z2.support
    window = range(min(s1) + min(s2), max(s1) + max(s2) + 2)
    c_filt = {}
    for a in window:
        rows = []
        for i in s1:
            sub2 = z2.c_space(a - i)
            rows.extend(_tensor_rows(z1.graded_c_bases[i], sub2, n2))
        c_filt[a] = linalg.rref(rows, F)[0] if rows else []
    d_filt = {}
    for a in range(min(s1) + min(s2) - 1, max(s1) + max(s2) + 1):
        rows = []
        for i in s1:
            sub2 = z2.d_space(a - i)
            rows.extend(_tensor_rows(z1.graded_d_bases[i], sub2, n2))
        d_filt[a] = linalg.rref(rows, F)[0] if rows else []
    graded = {}
    for a in range(min(s1) + min(s2), max(s1) + max(s2) + 1):
        c_rows, d_rows, blocks = [], [], []
        for i in s1:
            j = a - i
            if j not in s2:
                continue
            c_rows.extend(_tensor_rows(z1.graded_c_bases[i], z2.graded_c_bases[j], n2))
            d_rows.extend(_tensor_rows(z1.graded_d_bases[i], z2.graded_d_bases[j], n2))
            blocks.append(_kron(z1.phi[i], z2.phi[j], F))
        if c_rows:
            graded[a] = (c_rows, d_rows, _block_diag(blocks, F))
    return fzip_from_graded_data(F, dim, c_filt, d_filt, graded)


def _tensor_rows(rows1, rows2, n2):
    out = []
    for u in rows1:
        for v in rows2:
            row = [None] * (len(u) * n2)
            for i, a in enumerate(u):
                for j, b in enumerate(v):
                    row[i * n2 + j] = a * b
            out.append(row)
    return out


def _kron(m1, m2, field):
    r1, r2 = len(m1), len(m2)
    out = [[field.zero()] * (r1 * r2) for _ in range(r1 * r2)]
    for i1 in range(r1):
        for j1 in range(r1):
            for i2 in range(r2):
                for j2 in range(r2):
                    out[i1 * r2 + i2][j1 * r2 + j2] = field.mul(m1[i1][j1], m2[i2][j2])
    return out


def _block_diag(blocks, field):
    total = sum(len(b) for b in blocks)
    out = [[field.zero()] * total for _ in range(total)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[off + i][off + j] = x
        off += len(b)
    return out


def dual_fzip(z: FZip) -> FZip:
    """Dual object: annihilator filtrations with indices negated and shifted."""
    F = z.field
    n = z.dim
    window = list(z._index_window())
    c_filt = {}
    d_filt = {}
    for a in range(-max(window) - 1, -min(window) + 2):
        c_filt[a] = _annihilator(z.c_space(1 - a), n, F)
        d_filt[a] = _annihilator(z.d_space(-a - 1), n, F)
    graded = {}
    zc = FZip(F, n, c_filt, d_filt, {})
    for a in [-b for b in z.support]:
        cb = zc.graded_c_bases[a]
        db = zc.graded_d_bases[a]
        # pairing matrices against the primal graded bases at index -a
        P_C = _pairing(cb, z.graded_c_bases[-a], F)
        P_D = _pairing(db, z.graded_d_bases[-a], F)
        M = z.phi[-a]
        Minv = linalg.invert(M, F)
        PDinv = linalg.invert(P_D, F)
        PCp = _frob_matrix(P_C, F)
        mat = linalg.matmul(linalg.matmul(PCp, Minv, F), PDinv, F)
        mat_t = [[mat[j][i] for j in range(len(mat))] for i in range(len(mat))]
        graded[a] = (cb, db, mat_t)
    return fzip_from_graded_data(F, n, c_filt, d_filt, graded)


def _annihilator(rows, n, field):
    if not rows:
        return [list(r) for r in linalg.identity(n, field)]
    return [list(r) for r in linalg.nullspace([list(r) for r in rows], field, ncols=n)]


def _pairing(rows_a, rows_b, field):
    return [
        [
            _dot(u, v, field)
            for v in rows_b
        ]
        for u in rows_a
    ]


def _dot(u, v, field):
    s = field.zero()
    for a, b in zip(u, v):
        s = field.add(s, field.mul(a, b))
    return s


def direct_sum_fzip(z1: FZip, z2: FZip) -> FZip:
    if z1.field != z2.field:
        raise ValueError("summands live over different fields")
    F = z1.field
    n1, n2 = z1.dim, z2.dim
    dim = n1 + n2

    def pad1(rows):
        return [list(r) + [F.zero()] * n2 for r in rows]

    def pad2(rows):
        return [[F.zero()] * n1 + list(r) for r in rows]

    window = sorted(set(z1._index_window()) | set(z2._index_window()))
    c_filt = {a: pad1(z1.c_space(a)) + pad2(z2.c_space(a)) for a in window}
    d_filt = {a: pad1(z1.d_space(a)) + pad2(z2.d_space(a)) for a in window}
    graded = {}
    for a in sorted(set(z1.support) | set(z2.support)):
        c_rows, d_rows, blocks = [], [], []
        if a in z1.support:
            c_rows.extend(pad1(z1.graded_c_bases[a]))
            d_rows.extend(pad1(z1.graded_d_bases[a]))
            blocks.append(z1.phi[a])
        if a in z2.support:
            c_rows.extend(pad2(z2.graded_c_bases[a]))
            d_rows.extend(pad2(z2.graded_d_bases[a]))
            blocks.append(z2.phi[a])
        graded[a] = (c_rows, d_rows, _block_diag(blocks, F))
    return fzip_from_graded_data(F, dim, c_filt, d_filt, graded)


def random_fzip(field, type_dict: dict[int, int], rng: random.Random) -> FZip:
    """Random zip of the given type: transport a split one by a random basis."""
    dim = sum(type_dict.values())
    levels = []
    for a in sorted(type_dict):
        levels.extend([a] * type_dict[a])
    g = _random_invertible(field, dim, rng)
    lo, hi = min(levels), max(levels)
    # images of the split filtration under g: row i of g is the image of e_i
    c_filt = {
        a: [g[i] for i in range(dim) if levels[i] >= a] for a in range(lo, hi + 2)
    }
    d_filt = {
        a: [g[i] for i in range(dim) if levels[i] <= a] for a in range(lo - 1, hi + 1)
    }
    graded = {}
    for a in sorted(type_dict):
        r = type_dict[a]
        if not r:
            continue
        rows = [g[i] for i in range(dim) if levels[i] == a]
        mat = _random_invertible(field, r, rng)
        graded[a] = (rows, rows, mat)
    return fzip_from_graded_data(field, dim, c_filt, d_filt, graded)


def _random_invertible(field, n, rng: random.Random):
    elems = list(field.elements())
    while True:
        m = [[elems[rng.randrange(len(elems))] for _ in range(n)] for _ in range(n)]
        if linalg.invert(m, field) is not None:
            return m


def is_isomorphic(z1: FZip, z2: FZip, budget: int = 2_000_000) -> bool:
    """Decide isomorphism by enumerating filtration-compatible maps.

    Candidate maps send each canonical C-graded basis vector of the source
    into the matching intersection step of the target, which is exactly the
    set of maps transporting both filtrations when restricted to invertible
    ones.  Raises SearchBudgetError when that enumeration would exceed
    `budget` candidates; small dimensions and fields stay well inside it.
    """
    if z1.field != z2.field or z1.dim != z2.dim:
        return False
    if z1.zip_type() != z2.zip_type():
        return False
    F = z1.field
    n = z1.dim
    q = len(list(F.elements()))
    # source basis vectors adapted to both filtrations: C-level and D-level
    vectors = []
    for a in z1.support:
        for row in z1.graded_c_bases[a]:
            vectors.append((a, list(row)))
    count = 1
    spaces = []
    for a, v in vectors:
        # D-level of v: smallest b with v in D_b
        b = _d_level(z1, v, F)
        target = _intersect(z2.c_space(a), z2.d_space(b), F)
        spaces.append(target)
        count *= q ** len(target)
        if count > budget:
            raise SearchBudgetError(
                f"isomorphism search needs {count} candidates, budget is {budget}"
            )
    basis_change = linalg.invert([v for _, v in vectors], F)
    if basis_change is None:
        raise AssertionError("graded bases failed to span")
    for choice in _product_vectors(spaces, F):
        g_adapted = choice  # rows: images of the adapted basis vectors
        g = linalg.matmul(basis_change, g_adapted, F)
        if linalg.invert(g, F) is None:
            continue
        if _is_zip_morphism(z1, z2, g):
            return True
    return False


def _d_level(z: FZip, v, F) -> int:
    window = list(z._index_window())
    for b in window:
        rows = linalg.rref([list(r) for r in z.d_space(b)], F)[0]
        if linalg.in_span(rows, v, F):
            return b
    raise AssertionError("vector escapes the ascending filtration")


def _intersect(rows_a, rows_b, F):
    if not rows_a or not rows_b:
        return []
    n = len(rows_a[0])
    # kernel of the stacked annihilators
    ann = _annihilator(rows_a, n, F) + _annihilator(rows_b, n, F)
    if not ann:
        return [list(r) for r in linalg.identity(n, F)]
    return [list(r) for r in linalg.nullspace(ann, F, ncols=n)]


def _product_vectors(spaces, F):
    """All tuples of vectors, one from the span of each listed row set."""
    elems = list(F.elements())

    def vectors_of(rows):
        if not rows:
            yield None
            return
        k = len(rows)
        n = len(rows[0])
        idx = [0] * k
        total = len(elems) ** k
        for _ in range(total):
            v = [F.zero()] * n
            for i in range(k):
                c = elems[idx[i]]
                if not F.is_zero(c):
                    for j in range(n):
                        v[j] = F.add(v[j], F.mul(c, rows[i][j]))
            yield v
            for i in range(k):
                idx[i] += 1
                if idx[i] < len(elems):
                    break
                idx[i] = 0

    def rec(i, acc):
        if i == len(spaces):
            yield [list(v) for v in acc]
            return
        for v in vectors_of(spaces[i]):
            if v is None:
                return
            yield from rec(i + 1, acc + [v])

    yield from rec(0, [])


def _is_zip_morphism(z1: FZip, z2: FZip, g) -> bool:
    """Whether the invertible map g intertwines filtrations and graded maps."""
    F = z1.field
    window = list(z1._index_window())
    for a in window:
        img = linalg.matmul([list(r) for r in z1.c_space(a)], g, F)
        if len(linalg.rref(img, F)[0]) != len(z1.c_space(a)):
            return False
        sup = linalg.rref([list(r) for r in z2.c_space(a)], F)[0]
        if not all(linalg.in_span(sup, row, F) for row in img):
            return False
        img = linalg.matmul([list(r) for r in z1.d_space(a)], g, F)
        sup = linalg.rref([list(r) for r in z2.d_space(a)], F)[0]
        if not all(linalg.in_span(sup, row, F) for row in img):
            return False
    for a in z1.support:
        A = _express_block(
            z2.c_space(a + 1),
            z2.graded_c_bases[a],
            linalg.matmul([list(r) for r in z1.graded_c_bases[a]], g, F),
            F,
        )
        B = _express_block(
            z2.d_space(a - 1),
            z2.graded_d_bases[a],
            linalg.matmul([list(r) for r in z1.graded_d_bases[a]], g, F),
            F,
        )
        lhs = linalg.matmul(B, z1.phi[a], F)
        rhs = linalg.matmul(z2.phi[a], _frob_matrix(A, F), F)
        if lhs != rhs:
            return False
    return True
