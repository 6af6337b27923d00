import random
from fractions import Fraction

import pytest

from critvar import ratmat
from critvar.errors import DomainError, UsageError


def rand_mat(rng, r, c, lo=-6, hi=6):
    return [[Fraction(rng.randint(lo, hi), rng.randint(1, 3)) for _ in range(c)] for _ in range(r)]


def test_identity_mul():
    rng = random.Random(3)
    a = rand_mat(rng, 4, 4)
    assert ratmat.mat_mul(ratmat.identity(4), a) == a
    assert ratmat.mat_mul(a, ratmat.identity(4)) == a


def test_solve_and_residual():
    rng = random.Random(5)
    for _ in range(25):
        a = rand_mat(rng, 4, 4)
        if ratmat.det(a) == 0:
            continue
        b = [Fraction(rng.randint(-5, 5)) for _ in range(4)]
        x = ratmat.solve(a, b)
        assert ratmat.mat_vec(a, x) == b


def test_solve_inconsistent():
    a = [[Fraction(1), Fraction(1)], [Fraction(2), Fraction(2)]]
    with pytest.raises(DomainError):
        ratmat.solve(a, [Fraction(1), Fraction(3)])
    # consistent singular system still yields a solution
    x = ratmat.solve(a, [Fraction(1), Fraction(2)])
    assert ratmat.mat_vec(a, x) == [Fraction(1), Fraction(2)]


def test_nullspace():
    rng = random.Random(9)
    for _ in range(20):
        a = rand_mat(rng, 3, 5)
        basis = ratmat.nullspace(a)
        assert len(basis) == 5 - ratmat.rank(a)
        for v in basis:
            assert ratmat.mat_vec(a, v) == [Fraction(0)] * 3


def test_det_multiplicative():
    rng = random.Random(13)
    for _ in range(20):
        a = rand_mat(rng, 3, 3)
        b = rand_mat(rng, 3, 3)
        assert ratmat.det(ratmat.mat_mul(a, b)) == ratmat.det(a) * ratmat.det(b)


def test_det_known():
    assert ratmat.det([[Fraction(2)]]) == 2
    a = [[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]]
    assert ratmat.det(a) == -1
    assert ratmat.det([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]) == 0


def _charpoly_cofactor(a):
    """Reference: expand det(tI - A) with Laurent machinery in one variable."""
    from critvar.laurent import LaurentPoly

    m = len(a)
    t = LaurentPoly.zvar(1, 1)

    def minor_det(rows, cols):
        if not rows:
            return LaurentPoly.one(1)
        r, rest = rows[0], rows[1:]
        out = LaurentPoly.zero(1)
        for s, c in enumerate(cols):
            entry = (t if r == c else LaurentPoly.zero(1)) - LaurentPoly.const(1, a[r][c])
            sub = minor_det(rest, cols[:s] + cols[s + 1 :])
            out = out + (-1) ** s * entry * sub
        return out

    poly = minor_det(list(range(m)), list(range(m)))
    coeffs = []
    for k in range(m, -1, -1):
        key = ((0, k),) if k else ()
        coeffs.append(poly.terms.get(key, Fraction(0)))
    return coeffs


def test_charpoly_against_cofactor_expansion():
    rng = random.Random(17)
    for _ in range(10):
        a = rand_mat(rng, 4, 4, lo=-4, hi=4)
        assert ratmat.charpoly(a) == _charpoly_cofactor(a)


def test_charpoly_small():
    a = [[Fraction(2), Fraction(0)], [Fraction(0), Fraction(3)]]
    assert ratmat.charpoly(a) == [Fraction(1), Fraction(-5), Fraction(6)]
    with pytest.raises(UsageError):
        ratmat.charpoly([[Fraction(1), Fraction(2)]])


def test_rref_idempotent():
    rng = random.Random(21)
    a = rand_mat(rng, 4, 6)
    red, piv = ratmat.rref(a)
    red2, piv2 = ratmat.rref(red)
    assert red == red2 and piv == piv2
