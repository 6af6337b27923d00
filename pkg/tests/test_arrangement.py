import random
from fractions import Fraction

import pytest

from critvar.arrangement import (
    ArrangementSpec,
    k_subsets,
    parse_rat,
    random_generic,
    rat_str,
    sample_z,
)
from critvar.errors import DomainError, GenerationError, UsageError


def plane_spec():
    # three lines in C^2, the standard small worked case
    return ArrangementSpec(n=3, k=2, b=((1, 0), (0, 1), (1, 1)), a=(1, 1, 1))


def test_validation():
    with pytest.raises(UsageError):
        ArrangementSpec(n=2, k=2, b=((1, 0), (0, 1)), a=(1, 1))
    with pytest.raises(UsageError):
        ArrangementSpec(n=2, k=1, b=((1,), (0,)), a=(1, 1))  # zero minor
    with pytest.raises(UsageError):
        ArrangementSpec(n=3, k=2, b=((1, 0), (0, 1), (2, 0)), a=(1, 1, 1))  # rows 1,3
    with pytest.raises(UsageError):
        ArrangementSpec(n=2, k=1, b=((1,), (1,)), a=(0, 1))
    with pytest.raises(UsageError):
        ArrangementSpec(n=2, k=1, b=((1,), (1,)), a=(1, -1))  # weights sum to zero


def test_parse_rat():
    assert parse_rat("2/3") == Fraction(2, 3)
    assert parse_rat(-4) == Fraction(-4)
    assert rat_str(Fraction(2, 3)) == "2/3"
    assert rat_str(Fraction(5)) == "5"
    with pytest.raises(UsageError):
        parse_rat("x")
    with pytest.raises(UsageError):
        parse_rat(0.5)


def test_plucker_signs_and_cache():
    spec = plane_spec()
    assert spec.plucker((1, 2)) == 1
    assert spec.plucker((2, 1)) == -1
    assert spec.plucker((2, 3)) == -1
    assert spec.plucker((1, 1)) == 0
    rng = random.Random(2)
    for _ in range(10):
        sp = random_generic(4, 2, rng)
        for i, j in k_subsets(4, 2):
            assert sp.plucker((i, j)) == -sp.plucker((j, i))
            direct = sp.b[i - 1][0] * sp.b[j - 1][1] - sp.b[i - 1][1] * sp.b[j - 1][0]
            assert sp.plucker((i, j)) == direct


def test_discriminant_form_small_case():
    spec = plane_spec()
    form = spec.discriminant_form((1, 2, 3))
    # d_23 z1 - d_13 z2 + d_12 z3 with d_12 = 1, d_13 = 1, d_23 = -1
    assert form.to_text() == "-1/1*z1 + -1/1*z2 + 1/1*z3"
    assert spec.discriminant_value((1, 2, 3), [0, 0, 1]) == 1
    with pytest.raises(UsageError):
        spec.discriminant_form((1, 2))
    with pytest.raises(UsageError):
        spec.discriminant_form((3, 2, 1))


def test_discriminant_form_vs_hyperplanes():
    # sum_m (-1)^(m-1) d_{I minus i_m} f_{i_m}(z,t) equals the form at z alone:
    # the t-dependent parts cancel, which is what makes the form well defined.
    rng = random.Random(31)
    for _ in range(12):
        n, k = rng.choice([(3, 1), (4, 2), (5, 2), (5, 3)])
        spec = random_generic(n, k, rng)
        z = [Fraction(rng.randint(-6, 6)) for _ in range(n)]
        t = [Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(k)]
        fs = spec.hyperplane_values(z, t)
        for iseq in k_subsets(n, k + 1):
            acc = Fraction(0)
            for m, i in enumerate(iseq):
                rest = iseq[:m] + iseq[m + 1 :]
                acc += (-1) ** m * spec.plucker(rest) * fs[i - 1]
            assert acc == spec.discriminant_value(iseq, z)


def test_span_rank():
    rng = random.Random(41)
    for n, k in [(3, 1), (4, 2), (5, 2), (6, 3), (6, 5)]:
        spec = random_generic(n, k, rng)
        assert spec.span_rank() == n - k


def test_plucker_relation():
    rng = random.Random(43)
    for _ in range(8):
        n, k = rng.choice([(4, 2), (5, 2), (5, 3), (6, 3)])
        spec = random_generic(n, k, rng)
        for _ in range(30):
            jseq = tuple(rng.randint(1, n) for _ in range(k + 1))
            iseq = tuple(rng.randint(1, n) for _ in range(k - 1))
            assert spec.plucker_relation_residual(jseq, iseq) == 0


def test_off_discriminant():
    spec = plane_spec()
    assert spec.is_off_discriminant([0, 0, 1])
    assert not spec.is_off_discriminant([1, 1, 2])  # triple point: z3 = z1 + z2
    assert not spec.is_off_discriminant([1.0, 1.0, 2.0 + 1e-15])
    assert spec.is_off_discriminant([1.0, 1.0, 2.5])


def test_momenta_and_gradient_at_known_critical_point():
    spec = plane_spec()
    z = [Fraction(0), Fraction(0), Fraction(1)]
    t = [Fraction(-1, 3), Fraction(-1, 3)]
    assert spec.hyperplane_values(z, t) == [Fraction(-1, 3), Fraction(-1, 3), Fraction(1, 3)]
    assert spec.momenta(z, t) == [-3, -3, 3]
    assert spec.master_gradient(z, t) == [0, 0]
    with pytest.raises(DomainError):
        spec.momenta([Fraction(0)] * 3, [Fraction(0), Fraction(0)])


def test_config_round_trip():
    spec = ArrangementSpec(
        n=3, k=1, b=((1,), (2,), (Fraction(1, 3),)), a=(1, Fraction(-1, 2), 2)
    )
    again = ArrangementSpec.from_config(spec.to_config())
    assert again == spec
    with pytest.raises(UsageError):
        ArrangementSpec.from_config({"n": 3, "k": 1})


def test_sampling_determinism():
    s1 = random_generic(5, 2, random.Random(77))
    s2 = random_generic(5, 2, random.Random(77))
    assert s1 == s2
    z1 = sample_z(s1, random.Random(5))
    z2 = sample_z(s2, random.Random(5))
    assert z1 == z2 and s1.is_off_discriminant(z1)


def test_generation_budget():
    with pytest.raises(GenerationError):
        random_generic(4, 2, random.Random(1), coeff_bound=9, tries=0)
