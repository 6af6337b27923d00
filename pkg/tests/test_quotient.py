import math
import random
from fractions import Fraction

import pytest

from critvar import ratmat
from critvar.arrangement import ArrangementSpec, k_subsets, random_generic, sample_z
from critvar.errors import DomainError, UsageError
from critvar.laurent import LaurentPoly
from critvar.quotient import (
    QuotientAlgebra,
    commutator_residual,
    eliminate_first_kind,
    euler_operator_residual,
    first_kind_operator_residual,
    second_kind_operator_residual,
    weighted_sum_operator_residual,
)
from critvar.relations import build_relations, euler_relation, g_comb


def line_algebra():
    spec = ArrangementSpec(n=2, k=1, b=((1,), (1,)), a=(1, 1))
    return QuotientAlgebra(spec, [Fraction(0), Fraction(1)])


def plane_algebra():
    spec = ArrangementSpec(n=3, k=2, b=((1, 0), (0, 1), (1, 1)), a=(1, 1, 1))
    return QuotientAlgebra(spec, [Fraction(0), Fraction(0), Fraction(1)])


def random_algebra(n, k, seed, j1=1):
    rng = random.Random(seed)
    spec = random_generic(n, k, rng, coeff_bound=4)
    z = sample_z(spec, rng, bound=6)
    return QuotientAlgebra(spec, z, j1=j1)


def test_two_point_operators_in_closed_form():
    alg = line_algebra()
    assert alg.dim == 1 and alg.basis == ((2,),)
    assert alg.bethe_operator(1) == [[Fraction(-2)]]
    assert alg.bethe_operator(2) == [[Fraction(2)]]
    assert alg.element_one() == [Fraction(1, 2)]
    # p2^2 = 2 p2 and p1 p2 = -2 p2 in the fiber algebra
    assert alg.reduce_monomial((2, 2)) == [Fraction(2)]
    assert alg.reduce_monomial((1, 2)) == [Fraction(-2)]


def test_three_line_operators_match_momenta():
    # one critical point only, so each operator is the scalar p_j at it
    alg = plane_algebra()
    assert alg.dim == 1
    p = alg.spec.momenta(alg.z, [Fraction(-1, 3), Fraction(-1, 3)])
    for j in range(1, 4):
        assert alg.bethe_operator(j) == [[p[j - 1]]]


def test_dimension_formula():
    for n, k, seed in [(4, 2, 0), (5, 2, 1), (5, 3, 2), (6, 3, 3)]:
        alg = random_algebra(n, k, seed)
        assert alg.dim == math.comb(n - 1, k)
        assert all(alg.j1 not in mono for mono in alg.basis)


def test_basis_classes_reduce_to_unit_vectors():
    alg = random_algebra(4, 2, 11)
    for r, mono in enumerate(alg.basis):
        coords = alg.reduce_monomial(mono)
        assert coords == [Fraction(1) if i == r else Fraction(0) for i in range(alg.dim)]


def test_eliminate_first_kind():
    alg = plane_algebra()
    spec = alg.spec
    # p_1 expressed away from {3} goes through I' = {3}: p_1 = p_2 here
    assert eliminate_first_kind(spec, 1, [3]) == {2: Fraction(1)}
    with pytest.raises(UsageError):
        eliminate_first_kind(spec, 1, [1])
    with pytest.raises(UsageError):
        eliminate_first_kind(spec, 1, [2, 3])
    # substitution respects the defining relation coefficient by coefficient
    rng = random.Random(4)
    sp = random_generic(5, 2, rng)
    repl = eliminate_first_kind(sp, 2, [4])
    assert set(repl) == {1, 3, 5}
    iprime = (4,)
    for l, c in repl.items():
        assert c == -sp.plucker((l,) + iprime) / sp.plucker((2,) + iprime)


def test_operator_identities():
    for n, k, seed in [(3, 1, 1), (4, 2, 2), (5, 3, 3), (5, 2, 4)]:
        alg = random_algebra(n, k, seed + 40)
        zero = ratmat.zeros(alg.dim, alg.dim)
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                assert commutator_residual(alg, i, j) == zero
        for iset in k_subsets(n, k - 1):
            assert first_kind_operator_residual(alg, iset) == zero
        for jset in k_subsets(n, k + 1):
            assert second_kind_operator_residual(alg, jset) == zero
        assert euler_operator_residual(alg) == zero
        for iset in k_subsets(n, k):
            assert weighted_sum_operator_residual(alg, iset) == zero


def test_unit_element_two_routes():
    # the solve route against degree raising from the empty product
    for n, k, seed in [(3, 1, 1), (4, 2, 2), (5, 3, 3)]:
        alg = random_algebra(n, k, seed + 60)
        assert alg.element_one() == alg.reduce_monomial(())
        # and the unit actually multiplies like a unit
        for j in range(1, n + 1):
            lhs = ratmat.mat_vec(alg.bethe_operator(j), alg.element_one())
            assert lhs == alg.reduce_monomial((j,))


def test_relations_die_in_the_quotient():
    for n, k, seed in [(4, 2, 5), (5, 3, 6)]:
        alg = random_algebra(n, k, seed)
        rel = build_relations(alg.spec)
        for poly in rel.first.values():
            assert alg.is_zero_class(poly)
        for poly in rel.second.values():
            assert alg.is_zero_class(poly)
        assert alg.is_zero_class(euler_relation(alg.spec))


def test_normal_form_with_negative_exponents():
    alg = line_algebra()
    # coordinates, not values: at the single critical point p_2 = 2, so the
    # class of 1/p_2 is (1/2) / 2 times the basis class p_2
    inv = LaurentPoly.pvar(2, 2, exp=-1)
    assert alg.normal_form(inv) == [Fraction(1, 4)]
    # the antisymmetrized G over {1,2} vanishes on the fiber, inverse powers and all
    assert alg.is_zero_class(g_comb(alg.spec, (1, 2)))
    # a single G_j does not: it is a coordinate on the fiber, not a relation
    g2 = LaurentPoly.zvar(2, 2) - LaurentPoly.pvar(2, 2, exp=-1)
    assert not alg.is_zero_class(g2)


def test_charpoly_ignores_excluded_index():
    for n, k, seed in [(4, 2, 21), (5, 2, 22)]:
        rng = random.Random(seed)
        spec = random_generic(n, k, rng, coeff_bound=4)
        z = sample_z(spec, rng, bound=6)
        algs = [QuotientAlgebra(spec, z, j1=j1) for j1 in (1, 2, n)]
        for j in range(1, n + 1):
            polys = {tuple(ratmat.charpoly(alg.bethe_operator(j))) for alg in algs}
            assert len(polys) == 1


def test_singular_subspace_and_mu():
    for n, k, seed, j1 in [(4, 2, 31, 1), (4, 2, 31, 3), (5, 2, 32, 1), (5, 3, 33, 2)]:
        alg = random_algebra(n, k, seed, j1=j1)
        assert len(alg.sing_basis()) == alg.dim
        # projection is S-orthogonal: residual vector is killed by every row
        e = [Fraction(0)] * len(alg.all_subsets)
        e[0] = Fraction(1)
        proj = alg.s_perp(e)
        sdiag = alg.s_diagonal()
        resid = [x - y for x, y in zip(e, proj)]
        for bvec in alg.sing_basis():
            assert sum(b * s * r for b, s, r in zip(bvec, sdiag, resid)) == 0
        assert alg.mu_consistency() == []
        assert alg.mu_is_isomorphism()


def test_constructor_validation():
    spec = ArrangementSpec(n=3, k=2, b=((1, 0), (0, 1), (1, 1)), a=(1, 1, 1))
    with pytest.raises(DomainError):
        QuotientAlgebra(spec, [1, 1, 2])  # on the discriminant
    with pytest.raises(UsageError):
        QuotientAlgebra(spec, [0, 0])
    with pytest.raises(UsageError):
        QuotientAlgebra(spec, [0, 0, 1], j1=4)
    cspec = ArrangementSpec(n=2, k=1, b=((1,), (1,)), a=(1 + 0j, 1 + 0j))
    with pytest.raises(UsageError):
        QuotientAlgebra(cspec, [0, 1])


def test_describe_round_trip_shape():
    alg = plane_algebra()
    d = alg.describe()
    assert d["dim"] == 1 and d["basis"] == [[2, 3]]
    assert d["operators"]["3"] == [["3"]]
