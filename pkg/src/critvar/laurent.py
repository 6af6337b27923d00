"""Exact Laurent-polynomial arithmetic on phase space.

Polynomials live in the 2n variables z_1..z_n, p_1..p_n with rational
coefficients and integer (possibly negative) exponents, so 1/p_j is an
ordinary monomial and no rational-function engine is needed.  Internally a
variable is an id in 0..2n-1: id j-1 is z_j, id n+j-1 is p_j.  A term is a
sorted tuple of (id, exponent) pairs with nonzero exponents; the term map
never stores a zero coefficient, which makes equality a plain dict compare.

Values are immutable; every operation returns a new polynomial.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DomainError, UsageError

__all__ = ["LaurentPoly", "poisson"]


def _as_fraction(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise UsageError(f"coefficients must be exact rationals, got {type(c).__name__}")


class LaurentPoly:
    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        """`terms` maps sorted ((var_id, exp), ...) tuples to rational coefficients."""
        if n < 1:
            raise UsageError("need at least one hyperplane variable pair")
        self.n = n
        clean = {}
        for key, coeff in (terms or {}).items():
            coeff = _as_fraction(coeff)
            if coeff == 0:
                continue
            key = tuple(sorted((v, e) for v, e in key if e != 0))
            for v, _ in key:
                if not 0 <= v < 2 * n:
                    raise UsageError(f"variable id {v} out of range for n={n}")
            clean[key] = clean.get(key, Fraction(0)) + coeff
        self.terms = {k: c for k, c in clean.items() if c != 0}

    # -- constructors ------------------------------------------------------

    @classmethod
    def const(cls, n, c):
        c = _as_fraction(c)
        return cls(n, {(): c} if c != 0 else {})

    @classmethod
    def zero(cls, n):
        return cls(n, {})

    @classmethod
    def one(cls, n):
        return cls.const(n, 1)

    @classmethod
    def zvar(cls, n, j, exp=1):
        """The monomial z_j^exp, j in 1..n."""
        cls._check_index(n, j)
        return cls(n, {((j - 1, exp),): Fraction(1)})

    @classmethod
    def pvar(cls, n, j, exp=1):
        """The monomial p_j^exp, j in 1..n."""
        cls._check_index(n, j)
        return cls(n, {((n + j - 1, exp),): Fraction(1)})

    @classmethod
    def monomial(cls, n, coeff, zexps=(), pexps=()):
        """coeff * prod z_j^zexps[j-1] * prod p_j^pexps[j-1] (short vectors ok)."""
        key = [(j, e) for j, e in enumerate(zexps) if e != 0]
        key += [(n + j, e) for j, e in enumerate(pexps) if e != 0]
        return cls(n, {tuple(key): _as_fraction(coeff)})

    @staticmethod
    def _check_index(n, j):
        if not 1 <= j <= n:
            raise UsageError(f"variable index {j} out of range 1..{n}")

    # -- ring structure ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            if other.n != self.n:
                raise UsageError(f"variable counts differ: n={self.n} vs n={other.n}")
            return other
        return LaurentPoly.const(self.n, other)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for key, c in other.terms.items():
            s = terms.get(key, Fraction(0)) + c
            if s == 0:
                terms.pop(key, None)
            else:
                terms[key] = s
        return self._raw(terms)

    __radd__ = __add__

    def __neg__(self):
        return self._raw({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + self._coerce(other)

    def __mul__(self, other):
        other = self._coerce(other)
        terms = {}
        for k1, c1 in self.terms.items():
            e1 = dict(k1)
            for k2, c2 in other.terms.items():
                merged = dict(e1)
                for v, e in k2:
                    s = merged.get(v, 0) + e
                    if s == 0:
                        merged.pop(v)
                    else:
                        merged[v] = s
                key = tuple(sorted(merged.items()))
                s = terms.get(key, Fraction(0)) + c1 * c2
                if s == 0:
                    terms.pop(key, None)
                else:
                    terms[key] = s
        return self._raw(terms)

    __rmul__ = __mul__

    def __pow__(self, exp):
        if not isinstance(exp, int) or exp < 0:
            raise UsageError("only nonnegative integer powers of polynomials")
        out = LaurentPoly.one(self.n)
        base = self
        while exp:
            if exp & 1:
                out = out * base
            base = base * base if exp > 1 else base
            exp >>= 1
        return out

    def _raw(self, terms):
        p = object.__new__(LaurentPoly)
        p.n = self.n
        p.terms = terms
        return p

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.n == other.n and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == LaurentPoly.const(self.n, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    @property
    def is_zero(self):
        return not self.terms

    # -- calculus ----------------------------------------------------------

    def _diff(self, var):
        terms = {}
        for key, c in self.terms.items():
            e = dict(key)
            m = e.get(var, 0)
            if m == 0:
                continue
            if m == 1:
                e.pop(var)
            else:
                e[var] = m - 1
            terms[tuple(sorted(e.items()))] = c * m
        return self._raw(terms)

    def diff_z(self, j):
        """Exact partial derivative in z_j; d/dx x^m = m x^(m-1) for all integer m."""
        self._check_index(self.n, j)
        return self._diff(j - 1)

    def diff_p(self, j):
        self._check_index(self.n, j)
        return self._diff(self.n + j - 1)

    # -- evaluation and grading --------------------------------------------

    def evaluate(self, zvals, pvals):
        """Evaluate at a point; exact when the inputs are Fractions.

        Raises DomainError when a negative exponent meets a zero coordinate.
        """
        if len(zvals) != self.n or len(pvals) != self.n:
            raise UsageError("point dimension does not match variable count")
        vals = tuple(zvals) + tuple(pvals)
        total = None
        for key, c in self.terms.items():
            factor = c
            for v, e in key:
                base = vals[v]
                if base == 0:
                    if e < 0:
                        raise DomainError(f"pole: variable id {v} is 0 with exponent {e}")
                    factor = 0 * factor
                    break
                factor = factor * base ** e
            total = factor if total is None else total + factor
        if total is None:
            return Fraction(0) if all(isinstance(v, (int, Fraction)) for v in vals) else 0j
        return total

    def substitute_z(self, zvals):
        """Freeze the z variables at exact rational values, leaving a poly in p."""
        if len(zvals) != self.n:
            raise UsageError("z vector has wrong length")
        zvals = [_as_fraction(v) for v in zvals]
        terms = {}
        for key, c in self.terms.items():
            rest = []
            for v, e in key:
                if v < self.n:
                    base = zvals[v]
                    if base == 0:
                        if e < 0:
                            raise DomainError(f"pole: z_{v + 1} is 0 with exponent {e}")
                        c = Fraction(0)
                        break
                    c = c * base ** e
                else:
                    rest.append((v, e))
            if c == 0:
                continue
            key = tuple(rest)
            terms[key] = terms.get(key, Fraction(0)) + c
        return LaurentPoly(self.n, terms)

    def weighted_degrees(self):
        """Distinct degrees under the grading deg p_j = 1, deg z_j = -1."""
        degs = set()
        for key in self.terms:
            degs.add(sum(e if v >= self.n else -e for v, e in key))
        return sorted(degs)

    def scale_degree(self, lam):
        """Substitute p_j -> lam*p_j and z_j -> z_j/lam, exactly."""
        lam = _as_fraction(lam)
        if lam == 0:
            raise UsageError("scale factor must be nonzero")
        terms = {}
        for key, c in self.terms.items():
            w = sum(e if v >= self.n else -e for v, e in key)
            terms[key] = c * lam ** w
        return self._raw(terms)

    # -- canonical text ----------------------------------------------------

    def _dense(self, key):
        vec = [0] * (2 * self.n)
        for v, e in key:
            vec[v] = e
        return tuple(vec)

    def sorted_terms(self):
        """Terms in canonical order: graded lexicographic, z_1<..<z_n<p_1<..<p_n, leading first."""
        return sorted(
            self.terms.items(),
            key=lambda item: (sum(e for _, e in item[0]), self._dense(item[0])),
            reverse=True,
        )

    def to_text(self):
        """Canonical serialization used in reports and golden files."""
        if not self.terms:
            return "0"
        parts = []
        for key, c in self.sorted_terms():
            tokens = [f"{c.numerator}/{c.denominator}"]
            for v, e in key:
                name = f"z{v + 1}" if v < self.n else f"p{v - self.n + 1}"
                tokens.append(name if e == 1 else f"{name}^{e}")
            parts.append("*".join(tokens))
        return " + ".join(parts)

    def __repr__(self):
        return f"LaurentPoly(n={self.n}, {self.to_text()})"

    def _used_vars(self):
        used = set()
        for key in self.terms:
            used.update(v for v, _ in key)
        return used


def poisson(m, other):
    """Canonical Poisson bracket {M,N} = sum_j (dM/dz_j dN/dp_j - dM/dp_j dN/dz_j)."""
    if not isinstance(m, LaurentPoly) or not isinstance(other, LaurentPoly):
        raise UsageError("poisson bracket needs two Laurent polynomials")
    if m.n != other.n:
        raise UsageError(f"variable counts differ: n={m.n} vs n={other.n}")
    n = m.n
    um, un = m._used_vars(), other._used_vars()
    out = LaurentPoly.zero(n)
    for j in range(1, n + 1):
        zid, pid = j - 1, n + j - 1
        if zid in um and pid in un:
            out = out + m.diff_z(j) * other.diff_p(j)
        if pid in um and zid in un:
            out = out - m.diff_p(j) * other.diff_z(j)
    return out
