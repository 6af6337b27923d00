"""Generic parallelly translated hyperplane arrangements.

An instance is n hyperplanes in C^k, the j-th cut out by

    f_j(z, t) = z_j + b^1_j t_1 + .. + b^k_j t_k,

where the rational n x k matrix b is fixed and the translation vector
z in C^n moves the planes in parallel.  Genericity means every k x k
minor of b is nonzero; the constructor enforces this eagerly, so any
ArrangementSpec in hand is safe to feed to the rest of the package.

Index convention: hyperplanes are numbered 1..n in every public
signature, matching the way the objects are usually written down.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import ratmat
from .errors import DomainError, GenerationError, UsageError
from .laurent import LaurentPoly

__all__ = [
    "ArrangementSpec",
    "k_subsets",
    "parse_rat",
    "rat_str",
    "random_generic",
    "sample_z",
]


def parse_rat(x):
    """Exact rational from an int or a 'p/q' / 'p' string."""
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"cannot parse rational {x!r}") from exc
    raise UsageError(f"cannot parse rational from {type(x).__name__} (floats are not exact)")


def rat_str(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def k_subsets(n, k):
    """All k-element subsets of 1..n as increasing tuples, in lex order."""
    return itertools.combinations(range(1, n + 1), k)


def _perm_sign(seq):
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


@dataclass(frozen=True)
class ArrangementSpec:
    """Matrix b, weights a, and the cached minor table of a generic instance."""

    n: int
    k: int
    b: tuple  # n rows, each a k-tuple of Fraction
    a: tuple  # n weights: Fraction throughout the exact layer, complex allowed numerically

    def __post_init__(self):
        if not 1 <= self.k < self.n:
            raise UsageError(f"need 1 <= k < n, got n={self.n}, k={self.k}")
        if len(self.b) != self.n or any(len(row) != self.k for row in self.b):
            raise UsageError(f"b must be {self.n}x{self.k}")
        if len(self.a) != self.n:
            raise UsageError(f"need {self.n} weights, got {len(self.a)}")
        b = tuple(tuple(parse_rat(x) for x in row) for row in self.b)
        object.__setattr__(self, "b", b)
        if self.rational_weights:
            object.__setattr__(self, "a", tuple(Fraction(x) for x in self.a))
        if any(x == 0 for x in self.a):
            raise UsageError("every weight must be nonzero")
        if self.weight_total == 0:
            raise UsageError("the weights must not sum to zero")
        minors = {}
        for key in k_subsets(self.n, self.k):
            d = ratmat.det([list(b[i - 1]) for i in key])
            if d == 0:
                raise UsageError(f"degenerate instance: minor on rows {key} vanishes")
            minors[key] = d
        object.__setattr__(self, "_minors", minors)

    @property
    def rational_weights(self):
        return all(isinstance(x, (int, Fraction)) for x in self.a)

    @property
    def weight_total(self):
        return sum(self.a)

    def require_rational_weights(self):
        if not self.rational_weights:
            raise UsageError("this operation runs exactly and needs rational weights")

    # -- minors and discriminant forms --------------------------------------

    def plucker(self, seq):
        """Signed minor d_{i_1..i_k}: det of rows i_1..i_k of b, in that order.

        Repeated indices give 0; otherwise the cached sorted minor carries
        the sign of the sorting permutation.
        """
        seq = tuple(seq)
        if len(seq) != self.k:
            raise UsageError(f"minor wants {self.k} indices, got {len(seq)}")
        for i in seq:
            if not 1 <= i <= self.n:
                raise UsageError(f"hyperplane index {i} out of range 1..{self.n}")
        if len(set(seq)) < self.k:
            return Fraction(0)
        return _perm_sign(seq) * self._minors[tuple(sorted(seq))]

    def discriminant_form(self, iseq):
        """The z-linear form attached to k+1 hyperplanes i_1 < .. < i_{k+1}.

        Its coefficient on z_{i_m} is (-1)^(m-1) times the minor on the other
        k indices; the arrangement has a nonempty intersection of the k+1
        planes exactly on the zero set of this form.
        """
        iseq = self._check_subset(iseq, self.k + 1)
        poly = LaurentPoly.zero(self.n)
        for m, i in enumerate(iseq):
            rest = iseq[:m] + iseq[m + 1 :]
            poly = poly + (-1) ** m * self.plucker(rest) * LaurentPoly.zvar(self.n, i)
        return poly

    def discriminant_value(self, iseq, z):
        """discriminant_form evaluated at z, without building a polynomial."""
        iseq = self._check_subset(iseq, self.k + 1)
        total = 0
        for m, i in enumerate(iseq):
            rest = iseq[:m] + iseq[m + 1 :]
            total += (-1) ** m * self.plucker(rest) * z[i - 1]
        return total

    def _check_subset(self, seq, size):
        seq = tuple(seq)
        if len(seq) != size or list(seq) != sorted(set(seq)):
            raise UsageError(f"expected {size} strictly increasing indices, got {seq}")
        if seq[-1] > self.n or seq[0] < 1:
            raise UsageError(f"indices {seq} out of range 1..{self.n}")
        return seq

    def is_off_discriminant(self, z, tol=1e-12):
        """True when every (k+1)-fold intersection is empty at this z.

        Exact for rational z; within |.| > tol for floating point z.
        """
        if len(z) != self.n:
            raise UsageError("z has wrong length")
        exact = all(isinstance(v, (int, Fraction)) for v in z)
        for iseq in k_subsets(self.n, self.k + 1):
            v = self.discriminant_value(iseq, z)
            if (v == 0) if exact else (abs(v) <= tol):
                return False
        return True

    def span_rank(self):
        """Exact rank of the span of all discriminant forms (equals n - k)."""
        rows = []
        for iseq in k_subsets(self.n, self.k + 1):
            row = [Fraction(0)] * self.n
            for m, i in enumerate(iseq):
                rest = iseq[:m] + iseq[m + 1 :]
                row[i - 1] = (-1) ** m * self.plucker(rest)
            rows.append(row)
        return ratmat.rank(rows)

    def plucker_relation_residual(self, jseq, iseq):
        """sum_m (-1)^(m-1) d_{jseq minus j_m} d_{j_m, iseq}; zero for all sequences."""
        jseq, iseq = tuple(jseq), tuple(iseq)
        if len(jseq) != self.k + 1 or len(iseq) != self.k - 1:
            raise UsageError("sequence lengths must be k+1 and k-1")
        total = Fraction(0)
        for m, j in enumerate(jseq):
            rest = jseq[:m] + jseq[m + 1 :]
            total += (-1) ** m * self.plucker(rest) * self.plucker((j,) + iseq)
        return total

    # -- the hyperplanes and the master function ----------------------------

    def hyperplane_values(self, z, t):
        """All f_j(z, t) = z_j + sum_m b^m_j t_m."""
        if len(z) != self.n or len(t) != self.k:
            raise UsageError("point dimensions do not match n, k")
        return [z[j] + sum(bm * tm for bm, tm in zip(self.b[j], t)) for j in range(self.n)]

    def momenta(self, z, t):
        """p_j = a_j / f_j(z, t); these are the natural coordinates on fibers."""
        fs = self.hyperplane_values(z, t)
        if any(f == 0 for f in fs):
            raise DomainError("point lies on a hyperplane")
        return [aj / fj for aj, fj in zip(self.a, fs)]

    def master_gradient(self, z, t):
        """Gradient in t of sum_j a_j log f_j; zero exactly at critical points."""
        ps = self.momenta(z, t)
        return [sum(self.b[j][m] * ps[j] for j in range(self.n)) for m in range(self.k)]

    # -- config round trip ---------------------------------------------------

    @classmethod
    def from_config(cls, cfg):
        try:
            n, k = int(cfg["n"]), int(cfg["k"])
            b = tuple(tuple(parse_rat(x) for x in row) for row in cfg["b"])
            a = tuple(parse_rat(x) for x in cfg["a"])
        except (KeyError, TypeError) as exc:
            raise UsageError(f"config needs n, k, b, a: {exc}") from exc
        return cls(n=n, k=k, b=b, a=a)

    def to_config(self):
        return {
            "n": self.n,
            "k": self.k,
            "b": [[rat_str(x) for x in row] for row in self.b],
            "a": [rat_str(x) for x in self.a],
        }


def random_generic(n, k, rng, coeff_bound=9, tries=500):
    """Sample a generic instance with small integer data, retrying on collisions."""
    if not 1 <= k < n:
        raise UsageError(f"need 1 <= k < n, got n={n}, k={k}")
    for _ in range(tries):
        b = tuple(
            tuple(Fraction(rng.randint(-coeff_bound, coeff_bound)) for _ in range(k))
            for _ in range(n)
        )
        if any(
            ratmat.det([list(b[i - 1]) for i in key]) == 0 for key in k_subsets(n, k)
        ):
            continue
        a = tuple(Fraction(_nonzero_int(rng, coeff_bound)) for _ in range(n))
        if sum(a) == 0:
            continue
        return ArrangementSpec(n=n, k=k, b=b, a=a)
    raise GenerationError(f"no generic instance found in {tries} draws (n={n}, k={k})")


def sample_z(spec, rng, bound=9, tries=500):
    """Rational translation vector off the discriminant."""
    for _ in range(tries):
        z = [Fraction(rng.randint(-bound, bound)) for _ in range(spec.n)]
        if spec.is_off_discriminant(z):
            return z
    raise GenerationError(f"no off-discriminant z found in {tries} draws")


def _nonzero_int(rng, bound):
    while True:
        v = rng.randint(-bound, bound)
        if v:
            return v
