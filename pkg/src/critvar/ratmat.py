"""Dense exact linear algebra over Fraction.

Matrices are plain lists of row lists; nothing here ever touches floats.
This is deliberately small: elimination with exact pivots is all the
package needs, and on the matrix sizes that occur (at most a few hundred
rows) quadratic-to-cubic costs with big rationals stay comfortable.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DomainError, UsageError

__all__ = [
    "identity",
    "zeros",
    "transpose",
    "mat_mul",
    "mat_vec",
    "mat_add",
    "mat_scale",
    "rref",
    "rank",
    "solve",
    "nullspace",
    "inverse",
    "det",
    "charpoly",
]


def _copy(mat):
    return [[Fraction(x) for x in row] for row in mat]


def identity(m):
    return [[Fraction(1) if i == j else Fraction(0) for j in range(m)] for i in range(m)]


def zeros(r, c):
    return [[Fraction(0)] * c for _ in range(r)]


def transpose(mat):
    return [list(col) for col in zip(*mat)]


def mat_mul(a, b):
    if len(a[0]) != len(b):
        raise UsageError(f"shape mismatch: {len(a)}x{len(a[0])} times {len(b)}x{len(b[0])}")
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(a, v):
    if len(a[0]) != len(v):
        raise UsageError(f"shape mismatch: {len(a)}x{len(a[0])} times vector of length {len(v)}")
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c, a):
    return [[c * x for x in row] for row in a]


def rref(mat):
    """Reduced row echelon form; returns (new matrix, pivot column list)."""
    m = _copy(mat)
    if not m:
        return m, []
    rows, cols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(mat):
    return len(rref(mat)[1]) if mat else 0


def solve(a, b):
    """One exact solution of A x = b, free coordinates set to zero.

    Raises DomainError when the system is inconsistent.
    """
    if len(a) != len(b):
        raise UsageError("right hand side length does not match row count")
    aug = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(a, b)]
    red, pivots = rref(aug)
    cols = len(a[0])
    if cols in pivots:
        raise DomainError("inconsistent linear system")
    x = [Fraction(0)] * cols
    for r, c in enumerate(pivots):
        x[c] = red[r][-1]
    return x


def nullspace(a):
    """Basis of the exact kernel, one vector per free column."""
    red, pivots = rref(a)
    cols = len(a[0]) if a else 0
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def inverse(a):
    m = len(a)
    if any(len(row) != m for row in a):
        raise UsageError("inverse of a non-square matrix")
    aug = [[Fraction(x) for x in row] + ident_row for row, ident_row in zip(a, identity(m))]
    red, pivots = rref(aug)
    if pivots != list(range(m)):
        raise DomainError("matrix is singular")
    return [row[m:] for row in red]


def det(mat):
    m = _copy(mat)
    size = len(m)
    if any(len(row) != size for row in m):
        raise UsageError("determinant of a non-square matrix")
    d = Fraction(1)
    for c in range(size):
        pivot = next((i for i in range(c, size) if m[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            d = -d
        d *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, size):
            if m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return d


def charpoly(a):
    """Exact characteristic polynomial of a square matrix, descending coefficients.

    Faddeev-LeVerrier recursion: returns [1, c1, .., cm] with
    det(tI - A) = t^m + c1 t^(m-1) + .. + cm.
    """
    m = len(a)
    if any(len(row) != m for row in a):
        raise UsageError("characteristic polynomial of a non-square matrix")
    a = _copy(a)
    coeffs = [Fraction(1)]
    work = identity(m)
    for k in range(1, m + 1):
        work = mat_mul(a, work)
        ck = -Fraction(sum(work[i][i] for i in range(m)), k)
        coeffs.append(ck)
        for i in range(m):
            work[i][i] += ck
    return coeffs
