"""Generators of the variety swept out by critical points.

Working on phase space C^n x C^n with coordinates z_1..z_n, p_1..p_n,
the critical set of the master function sum_j a_j log f_j(z, t) lands at
p_j = a_j / f_j.  Eliminating t leaves explicit Laurent-polynomial
equations, and this module builds them:

  first kind, one per (k-1)-subset I:
      F_I = sum_j d_{j,I} p_j                      (linear in p)

  second kind, one per (k+1)-subset J = (j_1 < .. < j_{k+1}):
      F_J = f_J(z) p_{j_1}..p_{j_{k+1}}
            + sum_m (-1)^m a_{j_m} d_{J minus j_m} prod_{l != m} p_{j_l}

  single G_j = z_j - a_j / p_j, and the combination over a (k+1)-subset
      G_J = sum_m (-1)^(m-1) d_{J minus j_m} G_{j_m},

with the factorization F_J = p_{j_1}..p_{j_{k+1}} G_J, so the two kinds
of degree-(k+1) generators cut out the same set away from p = 0.

The first-kind family and the G_J family are in involution for the
canonical Poisson bracket, and the brackets vanish as polynomials, not
merely on the common zero set; the cross brackets {G_J, F_I} unwind to
exactly the quadratic minor relations.  involution_suite checks every
pair and reports the offenders, if any.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arrangement import k_subsets
from .errors import UsageError
from .laurent import LaurentPoly, poisson

__all__ = [
    "first_kind",
    "second_kind",
    "g_single",
    "g_comb",
    "euler_relation",
    "RelationSet",
    "build_relations",
    "BracketReport",
    "involution_suite",
]


def first_kind(spec, iset):
    """F_I for a (k-1)-subset I; terms with j in I drop out on their own."""
    iset = _inc_tuple(spec, iset, spec.k - 1)
    poly = LaurentPoly.zero(spec.n)
    for j in range(1, spec.n + 1):
        if j in iset:
            continue
        poly = poly + spec.plucker((j,) + iset) * LaurentPoly.pvar(spec.n, j)
    return poly


def second_kind(spec, jset):
    """F_J for a (k+1)-subset J."""
    spec.require_rational_weights()
    jset = _inc_tuple(spec, jset, spec.k + 1)
    n = spec.n
    poly = spec.discriminant_form(jset)
    for j in jset:
        poly = poly * LaurentPoly.pvar(n, j)
    for m, j in enumerate(jset):
        rest = jset[:m] + jset[m + 1 :]
        mono = LaurentPoly.const(n, -((-1) ** m) * spec.a[j - 1] * spec.plucker(rest))
        for l in rest:
            mono = mono * LaurentPoly.pvar(n, l)
        poly = poly + mono
    return poly


def g_single(spec, j):
    """G_j = z_j - a_j / p_j."""
    spec.require_rational_weights()
    if not 1 <= j <= spec.n:
        raise UsageError(f"hyperplane index {j} out of range 1..{spec.n}")
    n = spec.n
    return LaurentPoly.zvar(n, j) - spec.a[j - 1] * LaurentPoly.pvar(n, j, exp=-1)


def g_comb(spec, jset):
    """G_J = sum_m (-1)^(m-1) d_{J minus j_m} G_{j_m} over a (k+1)-subset."""
    jset = _inc_tuple(spec, jset, spec.k + 1)
    poly = LaurentPoly.zero(spec.n)
    for m, j in enumerate(jset):
        rest = jset[:m] + jset[m + 1 :]
        poly = poly + (-1) ** m * spec.plucker(rest) * g_single(spec, j)
    return poly


def euler_relation(spec):
    """sum_j z_j p_j - sum_j a_j, which vanishes on the critical set."""
    spec.require_rational_weights()
    n = spec.n
    poly = LaurentPoly.const(n, -spec.weight_total)
    for j in range(1, n + 1):
        poly = poly + LaurentPoly.zvar(n, j) * LaurentPoly.pvar(n, j)
    return poly


def _inc_tuple(spec, seq, size):
    seq = tuple(seq)
    if len(seq) != size or list(seq) != sorted(set(seq)):
        raise UsageError(f"expected {size} strictly increasing indices, got {seq}")
    if seq and (seq[0] < 1 or seq[-1] > spec.n):
        raise UsageError(f"indices {seq} out of range 1..{spec.n}")
    return seq


@dataclass(frozen=True)
class RelationSet:
    """Every generator of one instance, keyed by its subset."""

    spec: object
    first: dict  # (k-1)-subset -> F_I
    second: dict  # (k+1)-subset -> F_J
    g: dict  # (k+1)-subset -> G_J

    def all_vanish_at(self, z, p):
        """Exact membership test for a rational phase-space point."""
        for poly in list(self.first.values()) + list(self.second.values()):
            if poly.evaluate(z, p) != 0:
                return False
        return True


def build_relations(spec):
    first = {iset: first_kind(spec, iset) for iset in k_subsets(spec.n, spec.k - 1)}
    second = {}
    g = {}
    for jset in k_subsets(spec.n, spec.k + 1):
        second[jset] = second_kind(spec, jset)
        g[jset] = g_comb(spec, jset)
    return RelationSet(spec=spec, first=first, second=second, g=g)


@dataclass(frozen=True)
class BracketReport:
    pair_class: str  # "FF", "GF" or "GG"
    left: tuple
    right: tuple
    residual: object  # LaurentPoly

    @property
    def ok(self):
        return self.residual.is_zero


def involution_suite(spec, relations=None):
    """Poisson brackets of all pairs from the first-kind and G families.

    Returns one BracketReport per unordered pair (and per GF cross pair);
    every residual should be the zero polynomial.
    """
    rel = relations or build_relations(spec)
    firsts = sorted(rel.first.items())
    gs = sorted(rel.g.items())
    out = []
    for idx, (iset, fi) in enumerate(firsts):
        for jset, fj in firsts[idx:]:
            out.append(BracketReport("FF", iset, jset, poisson(fi, fj)))
    for iset, gi in gs:
        for jset, fj in firsts:
            out.append(BracketReport("GF", iset, jset, poisson(gi, fj)))
    for idx, (iset, gi) in enumerate(gs):
        for jset, gj in gs[idx:]:
            out.append(BracketReport("GG", iset, jset, poisson(gi, gj)))
    return out
