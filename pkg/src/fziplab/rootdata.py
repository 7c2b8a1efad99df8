"""Root data on an explicit character lattice, with exact arithmetic.

A datum is a pair of tuples of simple roots and simple coroots inside
Z^rank, paired by the dot product.  Weights may be half-integral (the Weyl
vector rho often is); everything downstream stores Fractions with
denominator at most 2 and refuses anything finer.

Positive roots are generated by reflection closure with coroots carried
along, frozen in (height, coordinates) order so that every enumeration in
the package is reproducible byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .fields import _is_prime

__all__ = [
    "Vec",
    "Weight",
    "Coweight",
    "RootDatum",
    "WeylElement",
    "root_datum",
    "type_A",
    "type_C",
    "product_datum",
    "act",
    "dot_act",
    "is_dominant",
    "is_p_small",
    "weyl_dimension",
    "freudenthal_weights",
    "lambda_norm",
    "weight_from_json",
    "weight_to_json",
]


class Vec(tuple):
    """Element of X*(T) or X_*(T): coordinates with denominator 1 or 2."""

    def __new__(cls, coords: Iterable):
        vals = []
        for c in coords:
            f = Fraction(c)
            if f.denominator not in (1, 2):
                raise ValueError(f"coordinate {f} has denominator > 2")
            vals.append(f)
        return super().__new__(cls, vals)

    def __add__(self, other):
        return Vec(a + b for a, b in zip(self, other, strict=True))

    def __sub__(self, other):
        return Vec(a - b for a, b in zip(self, other, strict=True))

    def __neg__(self):
        return Vec(-a for a in self)

    def scale(self, c) -> "Vec":
        return Vec(Fraction(c) * a for a in self)

    def pair(self, other: "Vec") -> Fraction:
        """Natural pairing of a weight with a coweight (dot product)."""
        return sum((a * b for a, b in zip(self, other, strict=True)), Fraction(0))

    @property
    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self)

    @property
    def is_zero(self) -> bool:
        return all(a == 0 for a in self)

    def __repr__(self):
        return "(" + ", ".join(str(a) for a in self) + ")"


Weight = Vec
Coweight = Vec


def zero_vec(rank: int) -> Vec:
    return Vec([0] * rank)


def weight_to_json(v: Vec):
    if v.is_integral:
        return [int(a) for a in v]
    return {"coords": [int(2 * a) for a in v], "half": True}


def weight_from_json(data) -> Vec:
    if isinstance(data, dict):
        coords = data["coords"]
        if data.get("half"):
            return Vec(Fraction(c, 2) for c in coords)
        return Vec(coords)
    return Vec(data)


@dataclass(frozen=True)
class _Factor:
    """Recipe metadata for one constructed block of a datum."""

    kind: str  # "A" | "C" | "torus"
    n: int
    reductive: bool
    offset: int  # first coordinate of the block
    width: int  # number of coordinates
    root_offset: int  # index of the block's first simple root


class RootDatum:
    """Explicit root datum; validates a finite-type Cartan matrix on creation."""

    def __init__(
        self,
        simple_roots: Sequence,
        simple_coroots: Sequence,
        rank: int,
        label: str = "",
        factors: tuple[_Factor, ...] | None = None,
    ):
        self.rank = rank
        self.simple_roots = tuple(Vec(r) for r in simple_roots)
        self.simple_coroots = tuple(Vec(c) for c in simple_coroots)
        self.label = label
        self.factors = factors
        if len(self.simple_roots) != len(self.simple_coroots):
            raise ValueError("simple roots and coroots must match in number")
        for v in self.simple_roots + self.simple_coroots:
            if len(v) != rank:
                raise ValueError("root coordinate length does not match rank")
            if not v.is_integral:
                raise ValueError("simple roots and coroots must be integral")
        self._validate_cartan()

    @property
    def nsimple(self) -> int:
        return len(self.simple_roots)

    @cached_property
    def cartan_matrix(self) -> tuple[tuple[int, ...], ...]:
        """C[i][j] = <alpha_i, alpha_j^vee>."""
        return tuple(
            tuple(int(a.pair(cv)) for cv in self.simple_coroots) for a in self.simple_roots
        )

    def _validate_cartan(self):
        C = self.cartan_matrix
        n = len(C)
        for i in range(n):
            if C[i][i] != 2:
                raise ValueError("Cartan matrix must have 2 on the diagonal")
            for j in range(n):
                if i != j:
                    if C[i][j] > 0:
                        raise ValueError("off-diagonal Cartan entries must be <= 0")
                    if (C[i][j] == 0) != (C[j][i] == 0):
                        raise ValueError("Cartan matrix zero pattern must be symmetric")
        if n == 0:
            return
        # symmetrize and require positive definiteness (finite type)
        d = self._symmetrizer()
        S = [[C[i][j] * d[j] for j in range(n)] for i in range(n)]
        for i in range(n):
            for j in range(n):
                if S[i][j] != S[j][i]:
                    raise ValueError("Cartan matrix is not symmetrizable")
        if not _positive_definite(S):
            raise ValueError("Cartan matrix is not of finite type")

    def _symmetrizer(self) -> list[Fraction]:
        """Half squared lengths d_j, making B[i][j] = C[i][j] * d_j symmetric."""
        C = self.cartan_matrix
        n = len(C)
        d: list[Fraction | None] = [None] * n
        for start in range(n):
            if d[start] is not None:
                continue
            d[start] = Fraction(1)
            stack = [start]
            while stack:
                i = stack.pop()
                for j in range(n):
                    if C[i][j] and i != j and d[j] is None:
                        # want C[i][j] d_j == C[j][i] d_i
                        d[j] = d[i] * Fraction(C[j][i], C[i][j])
                        stack.append(j)
        return [x if x > 0 else -x for x in d]  # type: ignore[union-attr]

    @cached_property
    def positive_roots(self) -> tuple[tuple[Vec, Vec], ...]:
        """All positive (root, coroot) pairs, sorted by (height, coordinates)."""
        simple = self.simple_roots
        known: dict[Vec, Vec] = {}
        queue = list(zip(simple, self.simple_coroots))
        for r, cv in queue:
            known[r] = cv
        guard = 0
        while queue:
            guard += 1
            if guard > 20000:
                raise ValueError("root closure did not terminate")
            root, coroot = queue.pop()
            for i in range(self.nsimple):
                m = int(root.pair(self.simple_coroots[i]))
                new_root = root - simple[i].scale(m)
                if new_root in known or new_root == root:
                    continue
                coeffs = self._root_coefficients(new_root)
                if coeffs is None or any(c < 0 for c in coeffs):
                    continue
                k = int(self.simple_roots[i].pair(coroot))
                new_coroot = coroot - self.simple_coroots[i].scale(k)
                known[new_root] = new_coroot
                queue.append((new_root, new_coroot))
        items = [(r, known[r]) for r in known]
        items.sort(key=lambda rc: (self._height(rc[0]), tuple(rc[0])))
        return tuple(items)

    def _root_coefficients(self, v: Vec) -> list[Fraction] | None:
        """Coordinates of v in the simple-root basis, or None if outside the span."""
        coeffs = _solve_in_span(self.simple_roots, self.simple_coroots, v)
        return coeffs

    def _height(self, root: Vec) -> Fraction:
        coeffs = self._root_coefficients(root)
        assert coeffs is not None
        return sum(coeffs, Fraction(0))

    @cached_property
    def rho(self) -> Vec:
        """Half the sum of the positive roots (often half-integral)."""
        total = zero_vec(self.rank)
        for r, _ in self.positive_roots:
            total = total + r
        return total.scale(Fraction(1, 2))

    def coxeter_number(self) -> int:
        """1 + max over positive roots of <rho, beta^vee>."""
        if not self.positive_roots:
            raise ValueError("coxeter number undefined: datum has no roots")
        return 1 + max(int(self.rho.pair(cv)) for _, cv in self.positive_roots)

    def reflection_matrix(self, i: int) -> tuple[tuple[int, ...], ...]:
        """Matrix of s_i on X*(T), acting on column coordinate vectors."""
        a, av = self.simple_roots[i], self.simple_coroots[i]
        n = self.rank
        return tuple(
            tuple(int((1 if r == c else 0) - a[r] * av[c]) for c in range(n)) for r in range(n)
        )

    @cached_property
    def weyl_elements(self) -> tuple["WeylElement", ...]:
        """The full Weyl group, sorted by (length, word), words lex-minimal reduced."""
        ident = tuple(tuple(1 if i == j else 0 for j in range(self.rank)) for i in range(self.rank))
        elements = {ident: ()}
        frontier = [(ident, ())]
        refl = [self.reflection_matrix(i) for i in range(self.nsimple)]
        pos_set = {r for r, _ in self.positive_roots}
        guard = 0
        while frontier:
            frontier.sort(key=lambda mw: mw[1])
            next_frontier = []
            for mat, word in frontier:
                for i in range(self.nsimple):
                    img = _mat_vec(mat, self.simple_roots[i])
                    if img not in pos_set:
                        continue  # length would drop
                    new_mat = _mat_mul(mat, refl[i])
                    if new_mat in elements:
                        continue
                    guard += 1
                    if guard > 100000:
                        raise ValueError("Weyl group too large to enumerate")
                    elements[new_mat] = word + (i,)
                    next_frontier.append((new_mat, word + (i,)))
            frontier = next_frontier
        out = [WeylElement(self, w, m) for m, w in elements.items()]
        out.sort(key=lambda e: (e.length, e.word))
        return tuple(out)

    def weyl_lookup(self, matrix) -> "WeylElement":
        table = self._weyl_table
        return table[tuple(tuple(row) for row in matrix)]

    @cached_property
    def _weyl_table(self):
        return {e.matrix: e for e in self.weyl_elements}

    @property
    def identity_element(self) -> "WeylElement":
        return self.weyl_elements[0]

    def longest_element(self) -> "WeylElement":
        return self.weyl_elements[-1]

    def fundamental_weights(self) -> tuple[Vec, ...]:
        """One representative per simple root (central part normalized to zero).

        Requires construction metadata; explicitly given data have no
        preferred representatives.
        """
        if self.factors is None:
            raise ValueError("fundamental weights need a datum built from type shorthands")
        out = []
        for f in self.factors:
            if f.kind == "torus":
                continue
            for i in range(f.n):
                coords = [0] * self.rank
                if f.kind == "A" and not f.reductive:
                    coords[f.offset + i] = 1  # coroots are standard basis vectors
                else:
                    for j in range(i + 1):
                        coords[f.offset + j] = 1
                out.append(Vec(coords))
        return tuple(out)

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "label": self.label,
            "simple_roots": [weight_to_json(r) for r in self.simple_roots],
            "simple_coroots": [weight_to_json(c) for c in self.simple_coroots],
        }

    def __repr__(self):
        name = self.label or "datum"
        return f"RootDatum({name}, rank={self.rank}, nsimple={self.nsimple})"


def _positive_definite(S) -> bool:
    n = len(S)
    for k in range(1, n + 1):
        minor = [row[:k] for row in S[:k]]
        if _det(minor) <= 0:
            return False
    return True


def _det(m) -> Fraction:
    m = [list(map(Fraction, row)) for row in m]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        pivot = next((r for r in range(c, n) if m[r][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for r in range(c + 1, n):
            if m[r][c]:
                f = m[r][c] * inv
                for j in range(c, n):
                    m[r][j] -= f * m[c][j]
    return det


def _solve_in_span(basis: Sequence[Vec], duals: Sequence[Vec], v: Vec):
    """Solve v = sum a_i basis[i] using the dual pairing grid; None if no solution."""
    n = len(basis)
    if n == 0:
        return [] if v.is_zero else None
    # Gram system: sum_i a_i <basis_i, dual_j> = <v, dual_j>
    G = [[basis[i].pair(duals[j]) for i in range(n)] + [v.pair(duals[j])] for j in range(n)]
    coeffs = _solve_square(G)
    if coeffs is None:
        return None
    residual = v
    for a, b in zip(coeffs, basis):
        residual = residual - b.scale(a)
    if not residual.is_zero:
        return None
    return coeffs


def _solve_square(aug):
    n = len(aug)
    m = [list(map(Fraction, row)) for row in aug]
    for c in range(n):
        pivot = next((r for r in range(c, n) if m[r][c] != 0), None)
        if pivot is None:
            return None
        m[c], m[pivot] = m[pivot], m[c]
        inv = 1 / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [m[r][n] for r in range(n)]


def _mat_vec(mat, v: Vec) -> Vec:
    return Vec(sum((row[j] * v[j] for j in range(len(v))), Fraction(0)) for row in mat)


def _mat_mul(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )


@dataclass(frozen=True)
class WeylElement:
    """Weyl group element: lex-minimal reduced word plus its matrix on X*(T)."""

    datum: RootDatum
    word: tuple[int, ...]
    matrix: tuple[tuple[int, ...], ...]

    @property
    def length(self) -> int:
        return len(self.word)

    def act(self, v: Vec) -> Vec:
        return _mat_vec(self.matrix, v)

    def act_coweight(self, c: Vec) -> Vec:
        # coweight action: fold the word with coweight reflections
        out = c
        for i in reversed(self.word):
            m = self.datum.simple_roots[i].pair(out)
            out = out - self.datum.simple_coroots[i].scale(m)
        return out

    def dot(self, lam: Vec) -> Vec:
        rho = self.datum.rho
        return self.act(lam + rho) - rho

    def inverse(self) -> "WeylElement":
        mat = self.matrix
        # fold the reversed word to obtain the inverse matrix
        out = tuple(tuple(1 if i == j else 0 for j in range(len(mat))) for i in range(len(mat)))
        for i in self.word:
            out = _mat_mul(self.datum.reflection_matrix(i), out)
        return self.datum.weyl_lookup(out)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return self.datum.weyl_lookup(_mat_mul(self.matrix, other.matrix))

    def __repr__(self):
        if not self.word:
            return "e"
        return "s" + ".s".join(str(i) for i in self.word)


def act(w: WeylElement, v: Vec) -> Vec:
    """Linear action of w on a weight."""
    return w.act(v)


def dot_act(w: WeylElement, lam: Vec) -> Vec:
    """Dot action w(lam + rho) - rho."""
    return w.dot(lam)


def is_dominant(rd: RootDatum, lam: Vec) -> bool:
    return all(lam.pair(cv) >= 0 for cv in rd.simple_coroots)


def is_p_small(rd: RootDatum, lam: Vec, p: int) -> bool:
    """Whether <lam + rho, beta^vee> <= p for every positive root beta.

    Requires lam dominant and p prime; dominant weights exist in this range
    exactly when p >= coxeter_number - 1.
    """
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not is_dominant(rd, lam):
        raise ValueError(f"{lam} is not dominant")
    shifted = lam + rd.rho
    return all(shifted.pair(cv) <= p for _, cv in rd.positive_roots)


def weyl_dimension(rd: RootDatum, lam: Vec) -> int:
    """Dimension of the irreducible with highest weight lam (Weyl's formula)."""
    if not is_dominant(rd, lam):
        raise ValueError(f"{lam} is not dominant")
    num = Fraction(1)
    rho = rd.rho
    for _, cv in rd.positive_roots:
        num *= (lam + rho).pair(cv) / rho.pair(cv)
    if num.denominator != 1:
        raise ArithmeticError("Weyl dimension did not come out integral")
    return int(num)


def freudenthal_weights(rd: RootDatum, lam: Vec) -> dict[Vec, int]:
    """Weight multiplicities of the highest-weight-lam irreducible.

    Freudenthal's recursion, run in simple-root coordinates below lam with
    an invariant form from the symmetrized Cartan matrix.  Exact.
    """
    if not is_dominant(rd, lam):
        raise ValueError(f"{lam} is not dominant")
    ns = rd.nsimple
    if ns == 0:
        return {lam: 1}
    C = rd.cartan_matrix
    d = rd._symmetrizer()
    B = [[C[i][j] * d[j] for j in range(ns)] for i in range(ns)]  # B(alpha_i, alpha_j)
    lam_pair = [int(lam.pair(cv)) for cv in rd.simple_coroots]
    # root-span components of lam and rho in simple-root coordinates
    lam_span = _solve_square(
        [[Fraction(C[i][j]) for i in range(ns)] + [Fraction(lam_pair[j])] for j in range(ns)]
    )
    rho_span = _solve_square(
        [[Fraction(C[i][j]) for i in range(ns)] + [Fraction(1)] for j in range(ns)]
    )
    assert lam_span is not None and rho_span is not None
    pos_coeffs = []
    for r, _ in rd.positive_roots:
        pc = rd._root_coefficients(r)
        assert pc is not None
        pos_coeffs.append(tuple(int(x) for x in pc))

    def bform(x, y) -> Fraction:
        return sum(
            (x[i] * B[i][j] * y[j] for i in range(ns) for j in range(ns) if x[i] and y[j]),
            Fraction(0),
        )

    def pairing(c, j) -> int:
        # <lam - sum c_i alpha_i, alpha_j^vee>
        return lam_pair[j] - sum(c[i] * C[i][j] for i in range(ns))

    def dominant_rep(c):
        cur = list(c)
        while True:
            for j in range(ns):
                m = pairing(cur, j)
                if m < 0:
                    cur[j] += m  # reflect: mu - m*alpha_j shifts c_j by m
                    break
            else:
                return tuple(cur)

    def is_weight_candidate(c) -> bool:
        rep = dominant_rep(c)
        return all(x >= 0 for x in rep)

    # shifted-norm difference: |lam+rho|^2 - |mu+rho|^2 with mu = lam - c.alpha
    top = [a + b for a, b in zip(lam_span, rho_span)]

    def norm_gap(c) -> Fraction:
        shifted = [t - ci for t, ci in zip(top, c)]
        return bform(top, top) - bform(shifted, shifted)

    mults: dict[tuple[int, ...], int] = {(0,) * ns: 1}
    current = [(0,) * ns]
    while current:
        children = set()
        for c in current:
            for j in range(ns):
                child = tuple(ci + (1 if i == j else 0) for i, ci in enumerate(c))
                if child not in mults and is_weight_candidate(child):
                    children.add(child)
        layer = []
        for c in sorted(children):
            gap = norm_gap(c)
            if gap == 0:
                continue  # strictly below lam with equal shifted norm: not a weight
            total = Fraction(0)
            for pc in pos_coeffs:
                k = 1
                while True:
                    above = tuple(ci - k * pi for ci, pi in zip(c, pc))
                    if any(x < 0 for x in above):
                        break
                    m = mults.get(above, 0)
                    if m:
                        mu_plus = [
                            ls - ci + k * pi for ls, ci, pi in zip(lam_span, c, pc)
                        ]
                        total += 2 * m * bform(mu_plus, pc)
                    k += 1
            val = total / gap
            if val.denominator != 1:
                raise ArithmeticError("Freudenthal recursion produced a non-integer")
            if val > 0:
                mults[c] = int(val)
                layer.append(c)
        current = layer
    out: dict[Vec, int] = {}
    for c, m in mults.items():
        w = lam
        for i, ci in enumerate(c):
            if ci:
                w = w - rd.simple_roots[i].scale(ci)
        out[w] = m
    return out


def lambda_norm(blocks) -> int:
    """Norm of a PEL-style dominant weight given per-block entry lists.

    Blocks are ("sp", entries) or ("gl", entries).  Symplectic blocks must
    be non-increasing with last entry >= 0 and contribute their sum; general
    linear blocks are shifted by the unique even integer within distance one
    below their last entry, then summed.
    """
    total = 0
    for kind, entries in blocks:
        entries = [int(x) for x in entries]
        if any(a < b for a, b in zip(entries, entries[1:])):
            raise ValueError(f"block entries must be non-increasing: {entries}")
        if kind == "sp":
            if entries and entries[-1] < 0:
                raise ValueError("symplectic block entries must end >= 0")
            total += sum(entries)
        elif kind == "gl":
            if not entries:
                continue
            last = entries[-1]
            shift = last if last % 2 == 0 else last - 1
            total += sum(e - shift for e in entries)
        else:
            raise ValueError(f"unknown block kind: {kind!r}")
    return total


def type_A(n: int, reductive: bool = False, label: str = "") -> RootDatum:
    """Type A_n: the weight-lattice form, or GL_{n+1} when reductive."""
    if n < 1:
        raise ValueError("type A needs n >= 1")
    if reductive:
        rank = n + 1
        roots = []
        for i in range(n):
            v = [0] * rank
            v[i], v[i + 1] = 1, -1
            roots.append(v)
        fac = (_Factor("A", n, True, 0, rank, 0),)
        return RootDatum(roots, [r[:] for r in roots], rank, label or f"GL{n + 1}", fac)
    C = [[0] * n for _ in range(n)]
    for i in range(n):
        C[i][i] = 2
        if i + 1 < n:
            C[i][i + 1] = C[i + 1][i] = -1
    roots = [list(C[i]) for i in range(n)]
    coroots = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    fac = (_Factor("A", n, False, 0, n, 0),)
    return RootDatum(roots, coroots, n, label or f"SL{n + 1}", fac)


def type_C(n: int, reductive: bool = False, label: str = "") -> RootDatum:
    """Type C_n: symplectic in epsilon coordinates, or the similitude form."""
    if n < 1:
        raise ValueError("type C needs n >= 1")
    if reductive:
        rank = n + 1  # coordinates (f_1 .. f_n, f_0) with f_0 the similitude
        roots, coroots = [], []
        for i in range(n - 1):
            v = [0] * rank
            v[i], v[i + 1] = 1, -1
            roots.append(v)
            coroots.append(v[:])
        last = [0] * rank
        last[n - 1], last[n] = 2, -1
        roots.append(last)
        cv = [0] * rank
        cv[n - 1] = 1
        coroots.append(cv)
        fac = (_Factor("C", n, True, 0, rank, 0),)
        return RootDatum(roots, coroots, rank, label or f"GSp{2 * n}", fac)
    roots, coroots = [], []
    for i in range(n - 1):
        v = [0] * n
        v[i], v[i + 1] = 1, -1
        roots.append(v)
        coroots.append(v[:])
    last = [0] * n
    last[n - 1] = 2
    roots.append(last)
    cv = [0] * n
    cv[n - 1] = 1
    coroots.append(cv)
    fac = (_Factor("C", n, False, 0, n, 0),)
    return RootDatum(roots, coroots, n, label or f"Sp{2 * n}", fac)


def product_datum(parts: Sequence[RootDatum], torus: int = 0, label: str = "") -> RootDatum:
    """Direct product with an optional central torus block appended."""
    rank = sum(p.rank for p in parts) + torus
    roots, coroots = [], []
    factors: list[_Factor] = []
    offset = 0
    root_offset = 0
    for part in parts:
        for r in part.simple_roots:
            roots.append([0] * offset + [int(x) for x in r] + [0] * (rank - offset - part.rank))
        for c in part.simple_coroots:
            coroots.append([0] * offset + [int(x) for x in c] + [0] * (rank - offset - part.rank))
        if part.factors is None or len(part.factors) != 1:
            raise ValueError("product parts must be single-block type shorthands")
        f = part.factors[0]
        factors.append(_Factor(f.kind, f.n, f.reductive, offset, part.rank, root_offset))
        offset += part.rank
        root_offset += part.nsimple
    if torus:
        factors.append(_Factor("torus", torus, True, offset, torus, root_offset))
    name = label or " x ".join(p.label for p in parts)
    return RootDatum(roots, coroots, rank, name, tuple(factors))


def root_datum(data) -> RootDatum:
    """Build a datum from JSON-style input: shorthand, product, or explicit."""
    if isinstance(data, RootDatum):
        return data
    if "product" in data:
        parts = [root_datum(p) for p in data["product"]]
        return product_datum(parts, torus=int(data.get("torus", 0)), label=data.get("label", ""))
    if "type" in data:
        kind = data["type"]
        n = int(data["n"])
        reductive = bool(data.get("reductive", False))
        label = data.get("label", "")
        if kind == "A":
            return type_A(n, reductive, label)
        if kind == "C":
            return type_C(n, reductive, label)
        raise ValueError(f"unsupported type: {kind!r}")
    return RootDatum(
        [weight_from_json(r) for r in data["simple_roots"]],
        [weight_from_json(c) for c in data["simple_coroots"]],
        int(data["rank"]),
        data.get("label", ""),
    )
