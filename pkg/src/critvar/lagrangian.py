"""Charts, flows and Jacobians on the variety swept out by critical points.

Over the k-subsets I of {1..n} the variety carries an atlas: in chart I
the free coordinates are (z_i for i in I, p_j for j outside I) and the
remaining 2(n-k) + 2k - n = n coordinates are explicit functions of them:

    p_{i_m} = (-1)^m (1/d_I) sum_{j not in I} d_{(j, I minus i_m)} p_j
    z_j     = a_j/p_j
              + (1/d_I) sum_m (-1)^(m-1) d_{(j, I minus i_m)} G_{i_m},

with G_i = z_i - a_i/p_i and minors taken on the index sequences shown,
extra index in front.  Completion is exact over rationals and works just
as well on floats.  A point's chart vector lists, slot j, whichever of
z_j / p_j is free in the chart; this index-interleaved ordering is what
makes the transition determinant between charts I and I' come out as
(d_{I'} / d_I)^2 rather than that value up to sign.

The same data has a generating function Psi = sum_j a_j ln p_j
- sum_{i in I} z_i p_i with dPsi = sum_{j not in I} z_j dp_j
- sum_{i in I} p_i dz_i on the variety, checked here by central
differences, and the flows of the defining Hamiltonians integrate in
closed form:

    first kind F_I:  z_j -> z_j + d_{(j,I)} s, momenta fixed;
    G_J:             p_{j_m} -> p_{j_m} + (-1)^m d_{J minus j_m} s,
                     z_{j_m} -> z_{j_m} - a_{j_m}/p_{j_m} + a_{j_m}/p'_{j_m};
    scaling:         (z, p) -> (z / lam, lam p).

Each flow maps the variety to itself, exactly; the tests drive points
along them and re-evaluate every relation.
"""

from __future__ import annotations

from fractions import Fraction

from .arrangement import k_subsets
from .errors import DomainError, GenerationError, UsageError

__all__ = [
    "chart_complete",
    "chart_coords",
    "chart_vector",
    "generating_map",
    "psi_value",
    "generating_fd_residual",
    "transition_expected",
    "transition_jacobian_fd",
    "projection_jacobian",
    "projection_jacobian_fd",
    "flow_f",
    "flow_g",
    "scale_action",
    "sample_chart_point",
]


def _front_minor(spec, j, rest):
    """Minor on the sequence (j, rest...) with rest an increasing tuple."""
    return spec.plucker((j,) + tuple(rest))


def _check_chart(spec, iset):
    iset = tuple(iset)
    if len(iset) != spec.k or list(iset) != sorted(set(iset)):
        raise UsageError(f"a chart is a k-subset, got {iset}")
    if iset[0] < 1 or iset[-1] > spec.n:
        raise UsageError(f"indices {iset} out of range 1..{spec.n}")
    return iset


def chart_complete(spec, iset, z_part, p_part):
    """Full (z, p) from chart-I data (z_i for i in I, p_j for j outside I).

    Exact on rational input; any numeric type flows through untouched.
    """
    spec.require_rational_weights()
    iset = _check_chart(spec, iset)
    comp = [j for j in range(1, spec.n + 1) if j not in iset]
    if len(z_part) != len(iset) or len(p_part) != len(comp):
        raise UsageError("chart data has wrong lengths")
    d_full = spec.plucker(iset)
    p = [None] * spec.n
    for j, val in zip(comp, p_part):
        p[j - 1] = val
    for m, i in enumerate(iset):
        rest = iset[:m] + iset[m + 1 :]
        acc = sum(_front_minor(spec, j, rest) * p[j - 1] for j in comp)
        p[i - 1] = (-1) ** (m + 1) * acc / d_full
    z = [None] * spec.n
    for i, val in zip(iset, z_part):
        z[i - 1] = val
    gvals = []
    for i in iset:
        if p[i - 1] == 0:
            raise DomainError(f"chart degenerates: completed p_{i} vanishes")
        gvals.append(z[i - 1] - spec.a[i - 1] / p[i - 1])
    for j in comp:
        if p[j - 1] == 0:
            raise DomainError(f"momentum p_{j} must be nonzero in this chart")
        acc = spec.a[j - 1] / p[j - 1]
        for m, i in enumerate(iset):
            rest = iset[:m] + iset[m + 1 :]
            acc = acc + (-1) ** m * _front_minor(spec, j, rest) * gvals[m] / d_full
        z[j - 1] = acc
    return tuple(z), tuple(p)


def chart_coords(spec, iset, z, p):
    """The free coordinates of a full point in chart I."""
    iset = _check_chart(spec, iset)
    comp = [j for j in range(1, spec.n + 1) if j not in iset]
    return [z[i - 1] for i in iset], [p[j - 1] for j in comp]


def chart_vector(spec, iset, z, p):
    """Length-n chart coordinates in index order: slot j holds z_j or p_j."""
    iset = _check_chart(spec, iset)
    return [z[j - 1] if j in iset else p[j - 1] for j in range(1, spec.n + 1)]


def generating_map(spec, iset, z_part, p_part):
    """The dependent z_j (j outside I) straight from the generating function.

    z_j = a_j/p_j + sum_m (a_{i_m}/p_{i_m} - z_{i_m}) dp_{i_m}/dp_j with
    dp_{i_m}/dp_j = (-1)^m d_{(j, I minus i_m)} / d_I; unwinding the signs
    this is the same expression completion uses, so exact agreement is a
    guard on both derivations rather than news.
    """
    iset = _check_chart(spec, iset)
    comp = [j for j in range(1, spec.n + 1) if j not in iset]
    z, p = chart_complete(spec, iset, z_part, p_part)
    out = []
    for j in comp:
        val = spec.a[j - 1] / p[j - 1]
        for m, i in enumerate(iset):
            rest = iset[:m] + iset[m + 1 :]
            dpdp = (-1) ** (m + 1) * _front_minor(spec, j, rest) / spec.plucker(iset)
            val = val + (spec.a[i - 1] / p[i - 1] - z[i - 1]) * dpdp
        out.append(val)
    return out


def psi_value(spec, iset, z, p):
    """Psi = sum_j a_j ln p_j - sum_{i in I} z_i p_i at a full point (numeric)."""
    import cmath

    iset = _check_chart(spec, iset)
    total = 0j
    for j in range(1, spec.n + 1):
        total += complex(spec.a[j - 1]) * cmath.log(complex(p[j - 1]))
    for i in iset:
        total -= complex(z[i - 1]) * complex(p[i - 1])
    return total


def generating_fd_residual(spec, iset, z, p, h=1e-6):
    """Worst central-difference error of dPsi against its closed form.

    Checks dPsi/dp_j = z_j over j outside I and dPsi/dz_i = -p_i over
    i in I.  Log differences are taken as ln(p+/p-), which keeps tiny
    steps away from branch-cut jumps.
    """
    import cmath

    iset = _check_chart(spec, iset)
    comp = [j for j in range(1, spec.n + 1) if j not in iset]
    z_part, p_part = chart_coords(spec, iset, z, p)
    z_part = [complex(v) for v in z_part]
    p_part = [complex(v) for v in p_part]
    worst = 0.0

    def psi_delta(zp_plus, pp_plus, zp_minus, pp_minus):
        zp1, pf1 = chart_complete(spec, iset, zp_plus, pp_plus)
        zp2, pf2 = chart_complete(spec, iset, zp_minus, pp_minus)
        total = 0j
        for j in range(1, spec.n + 1):
            total += complex(spec.a[j - 1]) * cmath.log(
                complex(pf1[j - 1]) / complex(pf2[j - 1])
            )
        for idx, i in enumerate(iset):
            total -= zp_plus[idx] * complex(pf1[i - 1])
            total += zp_minus[idx] * complex(pf2[i - 1])
        return total

    for r, j in enumerate(comp):
        bump = [x + (h if s == r else 0) for s, x in enumerate(p_part)]
        dip = [x - (h if s == r else 0) for s, x in enumerate(p_part)]
        fd = psi_delta(z_part, bump, z_part, dip) / (2 * h)
        worst = max(worst, abs(fd - complex(z[j - 1])))
    for r, i in enumerate(iset):
        bump = [x + (h if s == r else 0) for s, x in enumerate(z_part)]
        dip = [x - (h if s == r else 0) for s, x in enumerate(z_part)]
        fd = psi_delta(bump, p_part, dip, p_part) / (2 * h)
        worst = max(worst, abs(fd + complex(p[i - 1])))
    return worst


# -- Jacobians ------------------------------------------------------------------


def transition_expected(spec, iset_from, iset_to):
    """The exact transition determinant (d_{I'} / d_I)^2."""
    return (spec.plucker(tuple(iset_to)) / spec.plucker(tuple(iset_from))) ** 2


def transition_jacobian_fd(spec, iset_from, iset_to, z, p, h=1e-6):
    """Central-difference determinant of the chart-I to chart-I' change."""
    import numpy as np

    iset_from = _check_chart(spec, iset_from)
    iset_to = _check_chart(spec, iset_to)
    z_part, p_part = chart_coords(spec, iset_from, z, p)
    base = [complex(v) for v in z_part] + [complex(v) for v in p_part]
    kk = len(z_part)

    def to_vector(coords):
        zf, pf = chart_complete(spec, iset_from, coords[:kk], coords[kk:])
        return np.array(chart_vector(spec, iset_to, zf, pf), dtype=complex)

    cols = []
    order = []
    for j in range(1, spec.n + 1):
        if j in iset_from:
            order.append(("z", iset_from.index(j)))
        else:
            comp = [x for x in range(1, spec.n + 1) if x not in iset_from]
            order.append(("p", kk + comp.index(j)))
    for _, pos in order:
        bump = list(base)
        bump[pos] += h
        dip = list(base)
        dip[pos] -= h
        cols.append((to_vector(bump) - to_vector(dip)) / (2 * h))
    return complex(np.linalg.det(np.array(cols).T))


def projection_jacobian(spec, iset, z, p):
    """det of dz_j/dp_l over j, l outside I: the chart-I projection Jacobian.

    Entries come from differentiating the completion formulas, so this is
    analytic, and d_I^2 times it is the same number in every chart.
    """
    iset = _check_chart(spec, iset)
    spec.require_rational_weights()
    comp = [j for j in range(1, spec.n + 1) if j not in iset]
    d_full = spec.plucker(iset)
    rows = []
    for j in comp:
        row = []
        for l in comp:
            val = -spec.a[j - 1] / (p[j - 1] * p[j - 1]) if j == l else 0
            for m, i in enumerate(iset):
                rest = iset[:m] + iset[m + 1 :]
                val = val - (
                    _front_minor(spec, j, rest)
                    * _front_minor(spec, l, rest)
                    * spec.a[i - 1]
                    / (p[i - 1] * p[i - 1])
                ) / (d_full * d_full)
            row.append(val)
        rows.append(row)
    if all(isinstance(x, (int, Fraction)) for row in rows for x in row):
        from . import ratmat

        return ratmat.det(rows)
    import numpy as np

    return complex(np.linalg.det(np.array(rows, dtype=complex)))


def projection_jacobian_fd(spec, iset, z, p, h=1e-6):
    """The same determinant by central differences of the completion."""
    import numpy as np

    iset = _check_chart(spec, iset)
    comp = [j for j in range(1, spec.n + 1) if j not in iset]
    z_part, p_part = chart_coords(spec, iset, z, p)
    z_part = [complex(v) for v in z_part]
    p_part = [complex(v) for v in p_part]
    cols = []
    for r in range(len(comp)):
        bump = [x + (h if s == r else 0) for s, x in enumerate(p_part)]
        dip = [x - (h if s == r else 0) for s, x in enumerate(p_part)]
        zb, _ = chart_complete(spec, iset, z_part, bump)
        zd, _ = chart_complete(spec, iset, z_part, dip)
        cols.append([(zb[j - 1] - zd[j - 1]) / (2 * h) for j in comp])
    return complex(np.linalg.det(np.array(cols, dtype=complex).T))


# -- flows ----------------------------------------------------------------------


def flow_f(spec, iset, s, z, p):
    """Time-s flow of the first-kind Hamiltonian over a (k-1)-subset."""
    iset = tuple(iset)
    if len(iset) != spec.k - 1 or list(iset) != sorted(set(iset)):
        raise UsageError(f"need a (k-1)-subset, got {iset}")
    z_new = [
        z[j - 1] + _front_minor(spec, j, iset) * s for j in range(1, spec.n + 1)
    ]
    return tuple(z_new), tuple(p)


def flow_g(spec, jset, s, z, p):
    """Time-s flow of the antisymmetrized G over a (k+1)-subset.

    Momenta inside the subset move linearly; their z partners move so that
    each single G_j = z_j - a_j/p_j stays put.  Everything else is fixed.
    """
    spec.require_rational_weights()
    jset = tuple(jset)
    if len(jset) != spec.k + 1 or list(jset) != sorted(set(jset)):
        raise UsageError(f"need a (k+1)-subset, got {jset}")
    z_new, p_new = list(z), list(p)
    for m, j in enumerate(jset):
        rest = jset[:m] + jset[m + 1 :]
        if p[j - 1] == 0:
            raise DomainError(f"flow undefined where p_{j} = 0")
        shifted = p[j - 1] + (-1) ** (m + 1) * spec.plucker(rest) * s
        if shifted == 0:
            raise DomainError(f"flow runs into p_{j} = 0 at this time")
        p_new[j - 1] = shifted
        z_new[j - 1] = (
            z[j - 1] - spec.a[j - 1] / p[j - 1] + spec.a[j - 1] / shifted
        )
    return tuple(z_new), tuple(p_new)


def scale_action(lam, z, p):
    """The scaling (z, p) -> (z / lam, lam p) that preserves every relation."""
    if lam == 0:
        raise UsageError("scale factor must be nonzero")
    return tuple(v / lam for v in z), tuple(lam * v for v in p)


# -- sampling -------------------------------------------------------------------


def sample_chart_point(spec, iset, rng, bound=7, tries=300):
    """A random rational point of the variety with every momentum nonzero."""
    iset = _check_chart(spec, tuple(iset))
    comp = [j for j in range(1, spec.n + 1) if j not in iset]
    for _ in range(tries):
        z_part = [Fraction(rng.randint(-bound, bound)) for _ in iset]
        p_part = []
        while len(p_part) < len(comp):
            v = rng.randint(-bound, bound)
            if v:
                p_part.append(Fraction(v))
        try:
            z, p = chart_complete(spec, iset, z_part, p_part)
        except DomainError:
            continue
        if all(v != 0 for v in p):
            return z, p
    raise GenerationError(f"no nondegenerate chart point found in {tries} draws")
