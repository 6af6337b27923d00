import random
from fractions import Fraction

import pytest

from critvar.arrangement import ArrangementSpec, k_subsets, random_generic
from critvar.errors import UsageError
from critvar.laurent import LaurentPoly, poisson
from critvar.relations import (
    build_relations,
    euler_relation,
    first_kind,
    g_comb,
    g_single,
    involution_suite,
    second_kind,
)


def line_spec():
    return ArrangementSpec(n=2, k=1, b=((1,), (1,)), a=(1, 1))


def plane_spec():
    return ArrangementSpec(n=3, k=2, b=((1, 0), (0, 1), (1, 1)), a=(1, 1, 1))


def test_small_generators_in_closed_form():
    spec = line_spec()
    assert first_kind(spec, ()).to_text() == "1/1*p1 + 1/1*p2"
    f12 = second_kind(spec, (1, 2))
    expect = (
        (LaurentPoly.zvar(2, 1) - LaurentPoly.zvar(2, 2))
        * LaurentPoly.pvar(2, 1)
        * LaurentPoly.pvar(2, 2)
        + LaurentPoly.pvar(2, 1)
        - LaurentPoly.pvar(2, 2)
    )
    assert f12 == expect
    g12 = g_comb(spec, (1, 2))
    assert g12 == g_single(spec, 1) - g_single(spec, 2)


def test_vanishing_at_known_critical_points():
    # two points on a line: critical point of log f1 + log f2 sits midway
    spec = line_spec()
    z = [Fraction(0), Fraction(1)]
    p = spec.momenta(z, [Fraction(-1, 2)])
    assert p == [-2, 2]
    rel = build_relations(spec)
    assert rel.all_vanish_at(z, p)
    assert euler_relation(spec).evaluate(z, p) == 0
    assert rel.g[(1, 2)].evaluate(z, p) == 0

    spec = plane_spec()
    z = [Fraction(0), Fraction(0), Fraction(1)]
    p = spec.momenta(z, [Fraction(-1, 3), Fraction(-1, 3)])
    rel = build_relations(spec)
    assert rel.all_vanish_at(z, p)
    assert euler_relation(spec).evaluate(z, p) == 0
    for jset, g in rel.g.items():
        assert g.evaluate(z, p) == 0


def test_vanishing_along_random_two_point_families():
    # with n=2, k=1 the critical point is rational, so membership is exact
    rng = random.Random(19)
    for _ in range(20):
        spec = random_generic(2, 1, rng)
        z = [Fraction(rng.randint(-9, 9)), Fraction(rng.randint(-9, 9))]
        if not spec.is_off_discriminant(z):
            continue
        a1, a2 = spec.a
        b1, b2 = spec.b[0][0], spec.b[1][0]
        t = -(a1 * b1 * z[1] + a2 * b2 * z[0]) / (b1 * b2 * (a1 + a2))
        if any(f == 0 for f in spec.hyperplane_values(z, [t])):
            continue
        assert spec.master_gradient(z, [t]) == [0]
        p = spec.momenta(z, [t])
        assert build_relations(spec).all_vanish_at(z, p)


def test_homogeneity():
    # grading: deg p_j = 1, deg z_j = -1
    rng = random.Random(29)
    for n, k in [(3, 1), (4, 2), (5, 2), (5, 3)]:
        spec = random_generic(n, k, rng)
        for iset in k_subsets(n, k - 1):
            assert first_kind(spec, iset).weighted_degrees() == [1]
        for jset in k_subsets(n, k + 1):
            assert second_kind(spec, jset).weighted_degrees() == [k]
            assert g_comb(spec, jset).weighted_degrees() == [-1]
        for j in range(1, n + 1):
            assert g_single(spec, j).weighted_degrees() == [-1]
        assert euler_relation(spec).weighted_degrees() == [0]


def test_factorization():
    rng = random.Random(37)
    for n, k in [(3, 1), (4, 2), (5, 3)]:
        spec = random_generic(n, k, rng)
        for jset in k_subsets(n, k + 1):
            prod = LaurentPoly.one(n)
            for j in jset:
                prod = prod * LaurentPoly.pvar(n, j)
            assert second_kind(spec, jset) == prod * g_comb(spec, jset)


def test_involution_suite_counts_and_zeros():
    rng = random.Random(47)
    for n, k in [(3, 1), (4, 2), (5, 3)]:
        spec = random_generic(n, k, rng)
        reports = involution_suite(spec)
        nf = len(list(k_subsets(n, k - 1)))
        ng = len(list(k_subsets(n, k + 1)))
        expected = nf * (nf + 1) // 2 + ng * nf + ng * (ng + 1) // 2
        assert len(reports) == expected
        assert {r.pair_class for r in reports} == {"FF", "GF", "GG"}
        assert all(r.ok for r in reports)


def test_bracket_machinery_detects_nonzero():
    # a single G_j against a first-kind generator has bracket d_{j,I}: the
    # suite's exact zeros are cancellations, not an artifact of the bracket
    spec = plane_spec()
    br = poisson(g_single(spec, 1), first_kind(spec, (2,)))
    assert br == LaurentPoly.const(3, spec.plucker((1, 2)))
    assert not br.is_zero


def test_index_validation():
    spec = plane_spec()
    with pytest.raises(UsageError):
        first_kind(spec, (1, 2))
    with pytest.raises(UsageError):
        second_kind(spec, (1, 2))
    with pytest.raises(UsageError):
        g_comb(spec, (2, 1, 3))
    with pytest.raises(UsageError):
        g_single(spec, 4)


def test_complex_weights_blocked_on_exact_paths():
    spec = ArrangementSpec(n=2, k=1, b=((1,), (1,)), a=(1 + 0j, 1 + 0j))
    with pytest.raises(UsageError):
        second_kind(spec, (1, 2))
    with pytest.raises(UsageError):
        g_single(spec, 1)
    # first kind needs no weights at all
    assert first_kind(spec, ()).to_text() == "1/1*p1 + 1/1*p2"
