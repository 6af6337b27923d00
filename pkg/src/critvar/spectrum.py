"""Numeric access to the critical points, by two independent routes.

Route one goes through the algebra: a random integer combination of the
multiplication operators has an exact characteristic polynomial; its roots
(all of them at once, by Aberth's simultaneous iteration) are the values
of that combination at the critical points, and the joint eigenvectors
hand back every coordinate p_j through Rayleigh quotients.

Route two never sees the algebra: plain Newton iteration on the critical
equations sum_j a_j b^m_j / f_j = 0 from many random starts in a disk,
with the analytic Jacobian, then deduplication.

Both routes should produce the same C(n-1, k) points; the test suite and
the verify command insist on it.  The closed forms for the Hessian and
for the Jacobian of the coordinate projection live here too, next to the
direct determinants they are checked against.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import ratmat
from .arrangement import k_subsets
from .errors import NumericError, UsageError

__all__ = [
    "CriticalPoint",
    "SpectrumResult",
    "poly_roots",
    "joint_spectrum",
    "newton_multistart",
    "match_point_sets",
    "hessian_matrix",
    "hessian_direct",
    "hessian_formula",
    "jacobian_formula",
    "smoothness_witness",
]


@dataclass(frozen=True)
class CriticalPoint:
    t: tuple  # position in C^k
    p: tuple  # momenta a_j / f_j, length n
    grad_norm: float  # sup norm of the critical equations at (z, t)


@dataclass(frozen=True)
class SpectrumResult:
    points: tuple  # CriticalPoint, sorted by momenta
    combination: tuple  # the integer coefficients c_j that were diagonalized
    eigenvalues: tuple  # roots of the exact characteristic polynomial
    attempts: int  # how many draws until the spectrum separated
    min_gap: float  # smallest eigenvalue spacing of the accepted draw


# -- polynomial roots ---------------------------------------------------------


def poly_roots(coeffs, max_sweeps=200, tol=1e-13):
    """All complex roots of a polynomial, leading coefficient first.

    Aberth's method: every approximation repels the others, so the whole
    root set converges together.  Starts sit on a circle just outside
    Fujiwara's root bound 2 max_i |c_i|^(1/i); a bound linear in the
    coefficients would park the starts so far out that the inward march
    alone could eat the whole sweep budget.  A root counts as placed
    when its step is tiny or when the polynomial value sits below the
    roundoff of its own Horner evaluation — ill-conditioned coefficients
    make approximations chatter at that floor forever, which is
    convergence in every sense that matters.
    """
    cs = [complex(c) for c in coeffs]
    while cs and cs[0] == 0:
        cs.pop(0)
    if not cs:
        raise UsageError("the zero polynomial has no defined root set")
    deg = len(cs) - 1
    if deg == 0:
        return []
    lead = cs[0]
    cs = [c / lead for c in cs]
    radius = 2.0 * max(abs(c) ** (1.0 / i) for i, c in enumerate(cs[1:], start=1))
    radius = max(radius, 1e-12)
    roots = [
        radius * cmath.exp(2j * cmath.pi * (i + 0.3) / deg + 0.41j) for i in range(deg)
    ]
    eval_eps = (4 * deg + 8) * 2.220446049250313e-16
    for _ in range(max_sweeps):
        moved = 0.0
        done = True
        new_roots = list(roots)
        for i, x in enumerate(roots):
            val = 0j
            der = 0j
            mag = 0.0
            for c in cs:
                der = der * x + val
                val = val * x + c
                mag = mag * abs(x) + abs(c)
            if abs(val) <= eval_eps * mag:
                continue
            w = val / der if der != 0 else val
            rep = sum(1.0 / (x - r) for j, r in enumerate(roots) if j != i)
            denom = 1.0 - w * rep
            step = w / denom if denom != 0 else w
            new_roots[i] = x - step
            rel = abs(step) / max(1.0, abs(x))
            moved = max(moved, rel)
            if rel >= tol:
                done = False
        roots = new_roots
        if done or moved < tol:
            break
    else:
        raise NumericError(f"root iteration still moving after {max_sweeps} sweeps")
    return sorted(roots, key=lambda r: (r.real, r.imag))


# -- the operator route -------------------------------------------------------


def joint_spectrum(alg, seed=0, cluster_tol=1e-6, redraws=5):
    """Critical points as the joint spectrum of the multiplication operators.

    Draws an integer combination c, computes the exact characteristic
    polynomial of sum_j c_j K_j, takes its roots, and reads every p_j off
    the eigenvectors.  A draw whose eigenvalues sit closer than cluster_tol
    is discarded; after `redraws` such draws a NumericError reports the
    clustering, rather than silently splitting a true multiple point.
    """
    rng = np.random.default_rng(seed)
    n = alg.spec.n
    dim = alg.dim
    kmats = [np.array(_to_complex(alg.bethe_operator(j))) for j in range(1, n + 1)]
    tried_gaps = []
    for attempt in range(1, redraws + 1):
        c = [int(x) for x in rng.integers(1, 10, size=n) * rng.choice([-1, 1], size=n)]
        comb = ratmat.zeros(dim, dim)
        for j, cj in enumerate(c, start=1):
            comb = ratmat.mat_add(comb, ratmat.mat_scale(Fraction(cj), alg.bethe_operator(j)))
        eigvals = poly_roots(ratmat.charpoly(comb))
        gap = _min_gap(eigvals)
        if dim > 1 and gap <= cluster_tol:
            tried_gaps.append(gap)
            continue
        cmat = np.array(_to_complex(comb))
        points = []
        for lam in eigvals:
            vec = _null_vector(cmat - lam * np.eye(dim))
            if vec is None:
                tried_gaps.append(gap)
                break
            p = tuple(complex(vec.conj() @ (km @ vec)) / complex(vec.conj() @ vec) for km in kmats)
            points.append(_point_from_momenta(alg.spec, alg.z, p))
        else:
            points.sort(key=_momenta_key)
            return SpectrumResult(
                points=tuple(points),
                combination=tuple(c),
                eigenvalues=tuple(eigvals),
                attempts=attempt,
                min_gap=gap,
            )
    raise NumericError(
        f"eigenvalues stayed within {cluster_tol} after {redraws} draws "
        f"(gaps seen: {sorted(tried_gaps)}); the fiber looks degenerate"
    )


def _to_complex(mat):
    return [[complex(x) for x in row] for row in mat]


def _min_gap(values):
    if len(values) < 2:
        return math.inf
    return min(
        abs(x - y) for i, x in enumerate(values) for y in values[i + 1 :]
    )


def _null_vector(mat, rel_tol=1e-8):
    """One unit kernel vector by elimination with a relative pivot threshold."""
    a = np.array(mat, dtype=complex)
    rows, cols = a.shape
    scale = max(1.0, float(np.abs(a).max()))
    piv_cols = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        i = r + int(np.argmax(np.abs(a[r:, c])))
        if abs(a[i, c]) <= rel_tol * scale:
            continue
        a[[r, i]] = a[[i, r]]
        a[r] = a[r] / a[r, c]
        for i2 in range(rows):
            if i2 != r and a[i2, c] != 0:
                a[i2] = a[i2] - a[i2, c] * a[r]
        piv_cols.append(c)
        r += 1
    free = [c for c in range(cols) if c not in piv_cols]
    if not free:
        return None
    fc = free[0]
    v = np.zeros(cols, dtype=complex)
    v[fc] = 1.0
    for rr, pc in enumerate(piv_cols):
        v[pc] = -a[rr, fc]
    return v / np.linalg.norm(v)


def _point_from_momenta(spec, z, p):
    """Rebuild t from momenta by least squares on f_j = a_j / p_j = z_j + (b t)_j."""
    b = np.array([[complex(x) for x in row] for row in spec.b])
    f = np.array([complex(spec.a[j]) / p[j] for j in range(spec.n)])
    zc = np.array([complex(v) for v in z])
    t, *_ = np.linalg.lstsq(b, f - zc, rcond=None)
    grad = _gradient(spec, zc, t)
    return CriticalPoint(
        t=tuple(complex(x) for x in t),
        p=tuple(complex(x) for x in p),
        grad_norm=float(np.abs(grad).max()),
    )


def _momenta_key(pt):
    return tuple(coord for x in pt.p for coord in (x.real, x.imag))


# -- the direct route ---------------------------------------------------------


def _gradient(spec, zc, t):
    b = np.array([[complex(x) for x in row] for row in spec.b])
    a = np.array([complex(x) for x in spec.a])
    f = zc + b @ t
    return b.T @ (a / f)


def _bilinear_attempt(b, a, zc, kernel, scale, t, s, max_iter, tol, repel=()):
    """One start of the bilinear solve plus rational polish; limit t or None.

    With repel nonempty the residual is multiplied by the deflation factor
    prod_r (1 + 1 / |t - r|^2), which turns every known root into a pole
    of the iteration so fresh starts get pushed toward the roots not yet
    seen.  Convergence is still judged on the bare residual, and the
    polish below never sees the deflation, so repelling cannot invent a
    solution that was not already there.
    """
    k = t.shape[0]
    solved = False
    for _ in range(max_iter):
        f = zc + b @ t
        w = kernel @ s
        base = f * w - a
        if np.abs(base).max() < 1e-13 * scale:
            solved = True
            break
        jac = np.hstack([b * w[:, None], kernel * f[:, None]])
        resid = base
        if repel:
            factor = 1.0
            grad_log = np.zeros(k, dtype=complex)
            for r in repel:
                d = t - r
                q = float(np.real(np.vdot(d, d)))
                if q == 0.0:
                    return None
                factor *= 1.0 + 1.0 / q
                grad_log += -(1.0 / (q * (q + 1.0))) * np.conj(d)
            resid = base * factor
            jac = jac * factor
            jac[:, :k] += np.outer(resid, grad_log)
        try:
            step = np.linalg.solve(jac, -resid)
        except np.linalg.LinAlgError:
            return None
        t = t + step[:k]
        s = s + step[k:]
        if not (np.isfinite(t).all() and np.isfinite(s).all()):
            return None
    if not solved:
        return None
    for _ in range(20):
        f = zc + b @ t
        if not np.isfinite(f).all() or np.abs(f).min() == 0.0:
            return None
        g = b.T @ (a / f)
        if (np.abs(g) <= tol * _gradient_floor(b, a, f)).all():
            return t
        jacr = -(b.T * (a / f**2)) @ b
        try:
            step = np.linalg.solve(jacr, -g)
        except np.linalg.LinAlgError:
            return None
        t = t + step
        if not np.isfinite(t).all():
            return None
    return None


def _gradient_floor(b, a, f):
    """Componentwise size of the gradient's terms, the scale roundoff sees.

    A root pressed against several hyperplanes has gradient terms of size
    a/|f| that must cancel; no iteration can push the residual below the
    rounding of those terms, so convergence tests are taken relative to
    this scale (which is O(1) at comfortable roots).
    """
    return 1.0 + np.abs(b).T @ (np.abs(a) / np.abs(f))


def _correct_at(b, a, zt, t, sweeps=15, gtol=1e-10):
    """Newton on the bare critical equations at fixed z; corrected t or None."""
    for _ in range(sweeps):
        f = zt + b @ t
        if not np.isfinite(f).all() or np.abs(f).min() == 0.0:
            return None
        g = b.T @ (a / f)
        if (np.abs(g) <= gtol * _gradient_floor(b, a, f)).all():
            return t
        jac = -(b.T * (a / f**2)) @ b
        try:
            step = np.linalg.solve(jac, -g)
        except np.linalg.LinAlgError:
            return None
        t = t + step
        if not np.isfinite(t).all():
            return None
    return None


def _track_paths(b, a, z_from, z_to, roots):
    """Follow critical points along the segment z_from -> z_to.

    Euler predictor from the in-path derivative, a short Newton corrector
    at each step, step size halved on trouble and grown back on success.
    A corrected point that lands far from where the predictor aimed has
    likely hopped onto a neighboring path, so the step is rejected the
    same way; a path that cannot be continued is dropped, never guessed.
    """
    dz = z_to - z_from
    survivors = []
    for start in roots:
        tau, dtau = 0.0, 0.1
        cur = np.array(start)
        while True:
            if tau >= 1.0:
                survivors.append(cur)
                break
            ahead = min(1.0, tau + dtau)
            f = z_from + tau * dz + b @ cur
            jac = -(b.T * (a / f**2)) @ b
            rhs = b.T @ ((a / f**2) * dz)
            try:
                velocity = np.linalg.solve(jac, rhs)
            except np.linalg.LinAlgError:
                velocity = None
            corrected = None
            if velocity is not None and np.isfinite(velocity).all():
                predicted_move = velocity * (ahead - tau)
                guess = cur + predicted_move
                corrected = _correct_at(
                    b, a, z_from + ahead * dz, guess, sweeps=6
                )
                if corrected is not None:
                    drift = float(np.abs(corrected - guess).max())
                    allowance = 0.5 * float(np.abs(predicted_move).max()) + 1e-8
                    if drift > allowance:
                        corrected = None
            if corrected is None:
                dtau *= 0.5
                if dtau < 1e-4:
                    break
                continue
            cur, tau = corrected, ahead
            dtau = min(0.25, dtau * 1.4)
    return survivors


def newton_multistart(
    spec,
    z,
    seed=0,
    n_starts=None,
    tol=1e-12,
    dedup_tol=1e-7,
    max_iter=80,
    target_count=None,
    homotopy=True,
):
    """All critical points of the master function at fixed z, by multistart.

    Starts are uniform in the polydisk of radius 2 (max_j |z_j| + 1).  Raw
    Newton on the rational equations sum_j a_j b^m_j / f_j = 0 has two
    failure modes: points sitting close to a hyperplane get minuscule
    basins, and runs drifting to t = infinity watch the equations flatten
    to zero.  So each start first solves the equivalent bilinear system

        f_j(z, t) (N s)_j = a_j,   j = 1..n,

    where the columns of N span the exact kernel of b^T: the momentum
    vector p = N s satisfies the critical linear relations by construction,
    no denominators appear, and f_j = 0 is impossible at a solution because
    no a_j vanishes.  The initial s is the least-squares fit of a / f at
    the start.  Solutions are then polished on the rational form with its
    analytic Jacobian -sum_j a_j b^i_j b^l_j / f_j^2 down to tol relative
    to the componentwise term scale (see _gradient_floor), cross-checked
    against the unit relation sum_j z_j p_j = |a|, and deduplicated at
    dedup_tol; survivors come back sorted by momenta.

    When the caller knows how many points exist, target_count arms three
    escalations, each skipped once the count is reached: extra rounds of
    starts with s drawn at random instead of by least squares (basins
    seen from random s are markedly wider); rounds that deflate the
    residual by every point already found, which digs out roots hiding
    next to hyperplane intersections where uniform starts essentially
    never land; and finally continuation, which solves the same family
    at a fresh random base point, carries that root set through the
    exact scaling equivariance (critical points at g z are g times those
    at z), and tracks it along a complex segment to the requested z.
    Candidates from every tier pass the same polish and filters at the
    target, so none of this can invent a point.  Runs that never needed
    help are unchanged, and a short result after all rounds is returned
    as-is for the caller to judge.
    """
    n, k = spec.n, spec.k
    if len(z) != n:
        raise UsageError("z has wrong length")
    if n_starts is None:
        n_starts = 50 * math.comb(n - 1, k)
    rng = np.random.default_rng(seed)
    b = np.array([[complex(x) for x in row] for row in spec.b])
    a = np.array([complex(x) for x in spec.a])
    zc = np.array([complex(v) for v in z])
    bt_exact = [[Fraction(spec.b[j][m]) for j in range(n)] for m in range(k)]
    kernel = np.array(
        [[complex(v[j]) for v in ratmat.nullspace(bt_exact)] for j in range(n)]
    )
    radius = 2.0 * (float(np.abs(zc).max()) + 1.0)
    scale = 1.0 + float(np.abs(a).max())
    found = []

    def absorb(limit):
        limit = np.asarray(limit)
        f = zc + b @ limit
        euler = abs(np.sum(zc * (a / f)) - np.sum(a))
        if euler > 1e-6 * (1.0 + abs(np.sum(a))):
            return
        if any(np.abs(limit - np.array(q)).max() < dedup_tol for q in found):
            return
        found.append(tuple(complex(x) for x in limit))

    def harvest(count, random_s=False, deflate=False):
        iters = max_iter + 40 if deflate else max_iter
        for _ in range(count):
            repel = [np.array(q) for q in found] if deflate else ()
            mag = radius * np.sqrt(rng.uniform(0.0, 1.0, size=k))
            ang = rng.uniform(0.0, 2.0 * np.pi, size=k)
            t = mag * np.exp(1j * ang)
            f = zc + b @ t
            if np.abs(f).min() < 1e-9:
                continue
            if random_s:
                s = rng.normal(size=kernel.shape[1]) + 1j * rng.normal(
                    size=kernel.shape[1]
                )
            else:
                s, *_ = np.linalg.lstsq(kernel, a / f, rcond=None)
            limit = _bilinear_attempt(
                b, a, zc, kernel, scale, t, s, iters, tol, repel
            )
            if limit is not None:
                absorb(limit)

    def continuation_round():
        for _ in range(200):
            z0 = tuple(Fraction(int(v)) for v in rng.integers(-9, 10, size=n))
            if spec.is_off_discriminant(z0):
                break
        else:
            return
        base = newton_multistart(
            spec,
            z0,
            seed=int(rng.integers(0, 2**31)),
            n_starts=n_starts,
            tol=tol,
            dedup_tol=dedup_tol,
            max_iter=max_iter,
            target_count=target_count,
            homotopy=False,
        )
        gamma = complex(np.exp(1j * rng.uniform(0.0, 2.0 * np.pi)))
        z0c = np.array([complex(v) for v in z0])
        starts = [gamma * np.array(pt.t) for pt in base]
        for limit in _track_paths(b, a, gamma * z0c, zc, starts):
            polished = _correct_at(b, a, zc, limit, sweeps=25, gtol=tol)
            if polished is not None:
                absorb(polished)

    harvest(n_starts)
    if target_count is not None:
        rounds = 0
        while len(found) < target_count and rounds < 2:
            harvest(n_starts, random_s=True)
            rounds += 1
        rounds = 0
        while len(found) < target_count and rounds < 3:
            harvest(n_starts, deflate=True)
            rounds += 1
        rounds = 0
        while homotopy and len(found) < target_count and rounds < 3:
            continuation_round()
            rounds += 1
    points = []
    for t in found:
        f = zc + b @ np.array(t)
        p = tuple(complex(x) for x in a / f)
        g = float(np.abs(b.T @ (a / f)).max())
        points.append(CriticalPoint(t=t, p=p, grad_norm=g))
    points.sort(key=_momenta_key)
    return tuple(points)


def match_point_sets(pa, pb, tol):
    """Greedy matching of two momenta lists; (matched fully, worst distance)."""
    if len(pa) != len(pb):
        return False, math.inf
    unused = list(range(len(pb)))
    worst = 0.0
    for x in pa:
        best, best_d = None, math.inf
        for idx in unused:
            d = max(abs(u - v) for u, v in zip(x, pb[idx]))
            if d < best_d:
                best, best_d = idx, d
        if best is None or best_d > tol:
            return False, best_d
        unused.remove(best)
        worst = max(worst, best_d)
    return True, worst


# -- second-order data --------------------------------------------------------


def hessian_matrix(spec, z, t):
    """The k x k matrix of second t-derivatives of the master function."""
    fs = spec.hyperplane_values(z, t)
    rows = []
    for m in range(spec.k):
        row = []
        for l in range(spec.k):
            row.append(-sum(
                spec.a[j] * spec.b[j][m] * spec.b[j][l] / (fs[j] * fs[j])
                for j in range(spec.n)
            ))
        rows.append(row)
    return rows


def _det(rows):
    if all(isinstance(x, (int, Fraction)) for row in rows for x in row):
        return ratmat.det(rows)
    return complex(np.linalg.det(np.array(rows, dtype=complex)))


def hessian_direct(spec, z, t):
    return _det(hessian_matrix(spec, z, t))


def hessian_formula(spec, p):
    """(-1)^k sum over k-subsets of d_I^2 prod_{i in I} p_i^2 / a_i.

    Agrees with the direct determinant exactly on the critical set; the sum
    runs over momenta alone, which is what makes it a function on the fiber.
    """
    total = 0
    for iset in k_subsets(spec.n, spec.k):
        term = spec.plucker(iset) ** 2
        for i in iset:
            term = term * p[i - 1] * p[i - 1] / spec.a[i - 1]
        total = total + term
    return (-1) ** spec.k * total


def jacobian_formula(spec, p):
    """d_M^2 times the Jacobian of the chart projection, as a sum over momenta.

    (-1)^(n-k) sum over (n-k)-subsets L of d_{L complement}^2
    prod_{j in L} a_j / p_j^2; independent of which chart M is projected.
    """
    total = 0
    universe = set(range(1, spec.n + 1))
    for lset in k_subsets(spec.n, spec.n - spec.k):
        comp = tuple(sorted(universe - set(lset)))
        term = spec.plucker(comp) ** 2
        for j in lset:
            term = term * spec.a[j - 1] / (p[j - 1] * p[j - 1])
        total = total + term
    return (-1) ** (spec.n - spec.k) * total


def smoothness_witness(spec, z, t, iset):
    """The mixed second-derivative determinant over a k-subset, both ways.

    Returns (direct determinant, closed form (-1)^k d_I prod a_j / f_j^2);
    the closed form never vanishes off the hyperplanes, which is the local
    smoothness certificate for the critical-point equations.
    """
    iset = tuple(sorted(iset))
    if len(iset) != spec.k:
        raise UsageError(f"need a k-subset, got {iset}")
    fs = spec.hyperplane_values(z, t)
    rows = []
    for l in range(spec.k):
        rows.append([
            -spec.a[j - 1] * spec.b[j - 1][l] / (fs[j - 1] * fs[j - 1]) for j in iset
        ])
    direct = _det(rows)
    closed = (-1) ** spec.k * spec.plucker(iset)
    for j in iset:
        closed = closed * spec.a[j - 1] / (fs[j - 1] * fs[j - 1])
    return direct, closed
