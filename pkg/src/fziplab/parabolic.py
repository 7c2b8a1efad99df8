"""Parabolic subgroup data cut out by a dominant cocharacter.

The cocharacter mu splits the simple roots into those it kills (the Levi
set J) and those it pairs positively with.  Everything here is Weyl-group
combinatorics for that splitting: the unipotent radical's roots, minimal
coset representatives, their length fibers, and Bruhat order.

Coset representatives follow the convention that w belongs to the minimal
set when w^{-1} maps every Levi simple root to a positive root; these are
the minimal-length representatives of the cosets W_J \\ W, and the dot
action of such a w sends dominant weights to Levi-dominant weights.
"""

from __future__ import annotations

from functools import cached_property

from .rootdata import RootDatum, Vec, WeylElement, _mat_vec

__all__ = ["ParabolicData"]


class ParabolicData:
    """A root datum together with a dominant cocharacter selecting a parabolic."""

    def __init__(self, datum: RootDatum, cocharacter):
        self.datum = datum
        self.mu = Vec(cocharacter)
        if len(self.mu) != datum.rank:
            raise ValueError("cocharacter length does not match rank")
        pairings = [a.pair(self.mu) for a in datum.simple_roots]
        if any(m < 0 for m in pairings):
            raise ValueError("cocharacter must pair >= 0 with every simple root")
        self.levi_simples = tuple(i for i, m in enumerate(pairings) if m == 0)

    @cached_property
    def levi_datum(self) -> RootDatum:
        """Sub-datum spanned by the Levi simple roots, on the same lattice."""
        rd = self.datum
        return RootDatum(
            [rd.simple_roots[i] for i in self.levi_simples],
            [rd.simple_coroots[i] for i in self.levi_simples],
            rd.rank,
            label=(rd.label + "-levi") if rd.label else "levi",
        )

    @cached_property
    def unipotent_roots(self) -> tuple[tuple[Vec, Vec], ...]:
        """Positive (root, coroot) pairs with positive mu-pairing.

        The opposite unipotent radical is spanned by their negatives.
        """
        return tuple(
            (r, cv) for r, cv in self.datum.positive_roots if r.pair(self.mu) > 0
        )

    @cached_property
    def levi_roots(self) -> tuple[tuple[Vec, Vec], ...]:
        return tuple(
            (r, cv) for r, cv in self.datum.positive_roots if r.pair(self.mu) == 0
        )

    def mu_weights(self) -> tuple[int, ...]:
        """mu-pairings of the unipotent roots, in root order."""
        return tuple(int(r.pair(self.mu)) for r, _ in self.unipotent_roots)

    def is_abelian_unipotent(self) -> bool:
        """Whether no two unipotent roots sum to a root."""
        all_roots = {r for r, _ in self.datum.positive_roots}
        uni = [r for r, _ in self.unipotent_roots]
        for i, a in enumerate(uni):
            for b in uni[i:]:
                if (a + b) in all_roots:
                    return False
        return True

    @cached_property
    def coset_reps(self) -> tuple[WeylElement, ...]:
        """Minimal-length coset representatives, sorted by (length, word)."""
        J = self.levi_simples
        rd = self.datum
        pos_set = {r for r, _ in rd.positive_roots}
        out = []
        for w in rd.weyl_elements:
            inv = w.inverse()
            if all(_mat_vec(inv.matrix, rd.simple_roots[j]) in pos_set for j in J):
                out.append(w)
        return tuple(out)

    def reps_of_length(self, a: int) -> tuple[WeylElement, ...]:
        return tuple(w for w in self.coset_reps if w.length == a)

    def max_rep_length(self) -> int:
        return self.coset_reps[-1].length

    @cached_property
    def levi_weyl_order(self) -> int:
        return len(self.levi_datum.weyl_elements)

    def poincare_polynomial(self) -> list[int]:
        """Coefficients of sum over coset reps of t^length, low degree first."""
        top = self.max_rep_length()
        coeffs = [0] * (top + 1)
        for w in self.coset_reps:
            coeffs[w.length] += 1
        return coeffs

    def bruhat_leq(self, x: WeylElement, y: WeylElement) -> bool:
        """Bruhat order via the subword recursion on a reduced word of y."""
        if x.length > y.length:
            return False
        if x.matrix == y.matrix:
            return True
        if not y.word:
            return False
        rd = self.datum
        i = y.word[-1]
        refl = rd.reflection_matrix(i)
        y_short = rd.weyl_lookup(_matmul(y.matrix, refl))
        x_img = _mat_vec(x.matrix, rd.simple_roots[i])
        pos_set = {r for r, _ in rd.positive_roots}
        if x_img in pos_set:
            return self.bruhat_leq(x, y_short)
        x_short = rd.weyl_lookup(_matmul(x.matrix, refl))
        return self.bruhat_leq(x_short, y_short)

    def __repr__(self):
        return (
            f"ParabolicData({self.datum.label or 'datum'}, mu={self.mu}, "
            f"levi={list(self.levi_simples)})"
        )


def _matmul(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )
