"""Hand-rolled reference implementations used to cross-check the package.

Everything here recomputes results from the defining formulas with its own
arithmetic on plain tuples of Fractions.  Nothing imports the package, so a
bug in the library cannot hide in its own oracle.  Slow is fine: these only
ever run on small inputs.
"""

from fractions import Fraction
from functools import lru_cache
from math import lcm


def dot(u, v):
    return sum((Fraction(a) * Fraction(b) for a, b in zip(u, v)), Fraction(0))


def _frac_tuple(v):
    return tuple(Fraction(x) for x in v)


def reflect_weight(v, root, coroot):
    m = dot(v, coroot)
    return tuple(Fraction(a) - m * Fraction(r) for a, r in zip(v, root))


def reflect_coweight(c, root, coroot):
    m = dot(root, c)
    return tuple(Fraction(a) - m * Fraction(cv) for a, cv in zip(c, coroot))


def solve_linear(rows, rhs):
    """One exact solution of rows . x = rhs, free variables zero, or None."""
    m = len(rows)
    n = len(rows[0]) if rows else 0
    aug = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if aug[i][c]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = Fraction(1) / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if aug[i][n]:
            return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = aug[i][n]
    return x


def determinant(mat):
    n = len(mat)
    a = [[Fraction(x) for x in row] for row in mat]
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        inv = Fraction(1) / a[c][c]
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


@lru_cache(maxsize=None)
def root_closure(simples, cosimples):
    """All (root, coroot) pairs as the reflection orbit of the simple ones."""
    pairs = {(_frac_tuple(r), _frac_tuple(c)) for r, c in zip(simples, cosimples)}
    frontier = list(pairs)
    while frontier:
        root, coroot = frontier.pop()
        for s_r, s_c in zip(simples, cosimples):
            new = (
                reflect_weight(root, s_r, s_c),
                reflect_coweight(coroot, s_r, s_c),
            )
            if new not in pairs:
                pairs.add(new)
                frontier.append(new)
    return frozenset(pairs)


def simple_coordinates(vec, simples):
    cols = [[Fraction(s[k]) for s in simples] for k in range(len(vec))]
    return solve_linear(cols, list(vec))


@lru_cache(maxsize=None)
def positive_pairs(simples, cosimples):
    out = []
    for root, coroot in root_closure(simples, cosimples):
        coeffs = simple_coordinates(root, simples)
        if coeffs is not None and all(c >= 0 for c in coeffs):
            out.append((root, coroot))
    out.sort()
    return tuple(out)


@lru_cache(maxsize=None)
def half_sum_positive(simples, cosimples):
    rank = len(simples[0])
    total = [Fraction(0)] * rank
    for root, _ in positive_pairs(simples, cosimples):
        total = [a + b for a, b in zip(total, root)]
    return tuple(a / 2 for a in total)


def brute_p_small(simples, cosimples, lam, p):
    """Direct quantifier: <lam + rho, beta_vee> <= p over all positive beta."""
    rho = half_sum_positive(simples, cosimples)
    shifted = [Fraction(a) + b for a, b in zip(lam, rho)]
    return all(dot(shifted, cv) <= p for _, cv in positive_pairs(simples, cosimples))


def brute_coxeter_number(simples, cosimples):
    rho = half_sum_positive(simples, cosimples)
    return 1 + max(int(dot(rho, cv)) for _, cv in positive_pairs(simples, cosimples))


def reflection_matrix(root, coroot, rank):
    return tuple(
        tuple(
            (Fraction(1) if i == j else Fraction(0)) - Fraction(root[i]) * Fraction(coroot[j])
            for j in range(rank)
        )
        for i in range(rank)
    )


def matmul(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )


def matrix_group(generators, rank):
    """Closure of the generated matrix group, plain breadth-first search."""
    ident = tuple(
        tuple(Fraction(1) if i == j else Fraction(0) for j in range(rank)) for i in range(rank)
    )
    seen = {ident}
    frontier = [ident]
    while frontier:
        m = frontier.pop()
        for g in generators:
            new = matmul(m, g)
            if new not in seen:
                seen.add(new)
                frontier.append(new)
    return seen


@lru_cache(maxsize=None)
def weyl_matrices(simples, cosimples):
    rank = len(simples[0]) if simples else 0
    gens = [reflection_matrix(r, c, rank) for r, c in zip(simples, cosimples)]
    return frozenset(matrix_group(gens, rank))


def coset_partition(group, subgroup):
    """Right cosets H\\G as frozensets of matrices."""
    seen = set()
    cosets = []
    for g in group:
        if g in seen:
            continue
        coset = frozenset(matmul(h, g) for h in subgroup)
        cosets.append(coset)
        seen |= coset
    return cosets


def cocharacter_for_levi(simples, levi_indices):
    """Integral cocharacter pairing to zero on the chosen simples, positively
    on the rest.  Solves the rational system, then clears denominators; only
    the sign pattern matters to coset counting."""
    rows = [list(map(Fraction, s)) for s in simples]
    rhs = [Fraction(0) if i in levi_indices else Fraction(1) for i in range(len(simples))]
    x = solve_linear(rows, rhs)
    assert x is not None, "simple roots are linearly independent, so this solves"
    scale = lcm(*(f.denominator for f in x)) if x else 1
    return tuple(int(f * scale) for f in x)


def kostant_multiplicity(simples, cosimples, lam, target):
    """Weight multiplicity via the alternating partition-function formula.

    A genuinely different route from the recursion the library uses: sum
    sign(w) P(w(lam + rho) - (target + rho)) over the full reflection group,
    with P counting expressions as nonnegative sums of positive roots.
    """
    simples = tuple(_frac_tuple(s) for s in simples)
    cosimples = tuple(_frac_tuple(c) for c in cosimples)
    pos = tuple(r for r, _ in positive_pairs(simples, cosimples))
    rho = half_sum_positive(simples, cosimples)

    @lru_cache(maxsize=None)
    def expressible(vec):
        coeffs = simple_coordinates(vec, simples)
        return coeffs is not None and all(c >= 0 for c in coeffs)

    @lru_cache(maxsize=None)
    def partitions(vec, idx):
        if all(x == 0 for x in vec):
            return 1
        if idx == len(pos) or not expressible(vec):
            return 0
        total = 0
        cur = vec
        while expressible(cur):
            total += partitions(cur, idx + 1)
            cur = tuple(a - b for a, b in zip(cur, pos[idx]))
        return total

    lam_rho = tuple(Fraction(a) + b for a, b in zip(lam, rho))
    tgt_rho = tuple(Fraction(a) + b for a, b in zip(target, rho))
    total = 0
    for w in weyl_matrices(simples, cosimples):
        moved = tuple(dot(row, lam_rho) for row in w)
        diff = tuple(a - b for a, b in zip(moved, tgt_rho))
        total += int(determinant(w)) * partitions(diff, 0)
    return total
