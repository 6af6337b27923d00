"""Command-line front end: verify identities, solve instances, drive flows.

Subcommands
-----------
verify   algebraic identity battery for one instance (minor relations,
         rank of the discriminant span, brackets of the generators, and,
         when a base point is supplied, the full operator algebra).
solve    critical points of one instance two ways (commuting-operator
         spectra and multistart root finding), cross-checked against each
         other and the determinant identities.
flows    chart completion, transitions, generating-function derivatives,
         projection Jacobians and the closed-form flows on sampled points.
gen      draw a fresh generic instance and write it as a config file.

Configs are JSON: {"n", "k", "b" (n rows of k rationals), "a" (n
rationals), optional "z" (n rationals, or "sample"), "seed",
"coeff_bound"}.  Rationals may be written 3, "3", or "-2/5".

Every run emits a report_v1 JSON document: command, the resolved config,
one entry per check (name, status pass/fail/skipped, residual, count,
expected), and timing.  Complex numbers are [re, im] pairs.  Exit status:
0 all checks passed, 1 at least one failed, 2 bad usage or bad input
data, 3 a numeric procedure gave up.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
import time
from fractions import Fraction

from . import lagrangian as lag
from . import quotient as qt
from .arrangement import (
    ArrangementSpec,
    k_subsets,
    parse_rat,
    random_generic,
    rat_str,
    sample_z,
)
from .errors import DomainError, NumericError, UsageError
from .relations import euler_relation, g_single, involution_suite
from .spectrum import (
    hessian_direct,
    hessian_formula,
    jacobian_formula,
    joint_spectrum,
    match_point_sets,
    newton_multistart,
)

__all__ = ["main"]

_TOL_DEFAULTS = {
    "newton": 1e-12,
    "spectral": 1e-9,
    "hessian": 1e-8,
    "fd": 1e-6,
    "dedup": 1e-7,
}


# -- config and report plumbing ---------------------------------------------------


def _load_config(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise UsageError("config must be a JSON object")
    return raw


def _spec_from_config(raw):
    for key in ("n", "k", "b", "a"):
        if key not in raw:
            raise UsageError(f"config is missing required key {key!r}")
    n, k = raw["n"], raw["k"]
    if not isinstance(n, int) or not isinstance(k, int):
        raise UsageError("n and k must be integers")
    try:
        b = tuple(tuple(parse_rat(x) for x in row) for row in raw["b"])
        a = tuple(parse_rat(x) for x in raw["a"])
    except TypeError as exc:
        raise UsageError(f"malformed coefficient table: {exc}") from exc
    return ArrangementSpec(n, k, b, a)


def _resolve_z(raw, spec, seed):
    z = raw.get("z")
    if z is None:
        return None
    if z == "sample":
        return sample_z(spec, random.Random(seed))
    if not isinstance(z, list) or len(z) != spec.n:
        raise UsageError('"z" must be a list of n rationals or "sample"')
    return tuple(parse_rat(x) for x in z)


def _config_echo(raw, spec, z, seed):
    echo = {
        "n": spec.n,
        "k": spec.k,
        "b": [[rat_str(x) for x in row] for row in spec.b],
        "a": [rat_str(x) for x in spec.a],
        "seed": seed,
    }
    if z is not None:
        echo["z"] = [rat_str(x) for x in z]
    elif "z" in raw:
        echo["z"] = raw["z"]
    return echo


def _check(name, ok, residual=None, count=None, expected=None):
    return {
        "name": name,
        "status": "pass" if ok else "fail",
        "residual": residual,
        "count": count,
        "expected": expected,
    }


def _skip(name, reason):
    return {
        "name": name,
        "status": "skipped",
        "residual": None,
        "count": None,
        "expected": reason,
    }


def _mat_residual(mat):
    return float(max((abs(x) for row in mat for x in row), default=0))


def _c_pair(x):
    x = complex(x)
    return [x.real, x.imag]


def _emit(report, out_path):
    text = json.dumps(report, indent=2, sort_keys=False)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        passed = sum(1 for c in report["checks"] if c["status"] == "pass")
        total = len(report["checks"])
        print(f"wrote {out_path}: {passed}/{total} checks passed")
    else:
        print(text)


def _finish(command, raw, spec, z, seed, checks, started, out_path, extra=None):
    report = {
        "report": "report_v1",
        "command": command,
        "config": _config_echo(raw, spec, z, seed),
        "checks": checks,
        "timing": {"seconds": round(time.perf_counter() - started, 6)},
    }
    if extra:
        report.update(extra)
    _emit(report, out_path)
    return 0 if all(c["status"] != "fail" for c in checks) else 1


# -- verify -----------------------------------------------------------------------


def _cmd_verify(args):
    started = time.perf_counter()
    raw = _load_config(args.config)
    spec = _spec_from_config(raw)
    seed = args.seed if args.seed is not None else raw.get("seed", 0)
    z = _resolve_z(raw, spec, seed)
    checks = []

    pairs = 0
    worst = Fraction(0)
    for jseq in k_subsets(spec.n, spec.k + 1):
        for iseq in k_subsets(spec.n, spec.k - 1):
            worst = max(worst, abs(spec.plucker_relation_residual(jseq, iseq)))
            pairs += 1
            if pairs >= 400:
                break
        if pairs >= 400:
            break
    checks.append(_check("minor_relations", worst == 0, float(worst), pairs, 0))

    rank = spec.span_rank()
    checks.append(_check("discriminant_span_rank", rank == spec.n - spec.k,
                         None, rank, spec.n - spec.k))

    reports = involution_suite(spec)
    bad = [r for r in reports if not r.ok]
    checks.append(_check("generator_brackets", not bad, None, len(reports), 0))

    if z is None:
        for name in ("quotient_dimension", "operator_commutators",
                     "first_kind_operators", "second_kind_operators",
                     "euler_operator", "weighted_sum_operators",
                     "special_vector_map"):
            checks.append(_skip(name, 'needs "z" in the config'))
        return _finish("verify", raw, spec, z, seed, checks, started, args.out)

    alg = qt.QuotientAlgebra(spec, z)
    dim = alg.dim
    checks.append(_check("quotient_dimension", dim == math.comb(spec.n - 1, spec.k),
                         None, dim, math.comb(spec.n - 1, spec.k)))

    worst, pairs = 0.0, 0
    for i in range(1, spec.n + 1):
        for j in range(i + 1, spec.n + 1):
            worst = max(worst, _mat_residual(qt.commutator_residual(alg, i, j)))
            pairs += 1
    checks.append(_check("operator_commutators", worst == 0, worst, pairs, 0))

    worst, count = 0.0, 0
    for iset in k_subsets(spec.n, spec.k - 1):
        worst = max(worst, _mat_residual(qt.first_kind_operator_residual(alg, iset)))
        count += 1
    checks.append(_check("first_kind_operators", worst == 0, worst, count, 0))

    worst, count = 0.0, 0
    for jset in k_subsets(spec.n, spec.k + 1):
        worst = max(worst, _mat_residual(qt.second_kind_operator_residual(alg, jset)))
        count += 1
    checks.append(_check("second_kind_operators", worst == 0, worst, count, 0))

    worst = _mat_residual(qt.euler_operator_residual(alg))
    checks.append(_check("euler_operator", worst == 0, worst, 1, 0))

    worst, count = 0.0, 0
    for iset in k_subsets(spec.n, spec.k):
        worst = max(worst, _mat_residual(qt.weighted_sum_operator_residual(alg, iset)))
        count += 1
    checks.append(_check("weighted_sum_operators", worst == 0, worst, count, 0))

    bad_subsets = alg.mu_consistency()
    ok = not bad_subsets and alg.mu_is_isomorphism()
    checks.append(_check("special_vector_map", ok, None,
                         len(alg.all_subsets) - len(bad_subsets),
                         len(alg.all_subsets)))

    return _finish("verify", raw, spec, z, seed, checks, started, args.out)


# -- solve ------------------------------------------------------------------------


def _cmd_solve(args):
    started = time.perf_counter()
    raw = _load_config(args.config)
    spec = _spec_from_config(raw)
    spec.require_rational_weights()
    seed = args.seed if args.seed is not None else raw.get("seed", 0)
    z = _resolve_z(raw, spec, seed)
    if z is None:
        raise UsageError('solve needs "z" in the config (a vector or "sample")')
    if not spec.is_off_discriminant(z):
        raise DomainError("the base point lies on the discriminant")
    checks = []
    expected = math.comb(spec.n - 1, spec.k)

    spectral = joint_spectrum(qt.QuotientAlgebra(spec, z), seed=seed)
    newton = newton_multistart(spec, z, seed=seed, tol=args.tol_newton,
                               dedup_tol=args.tol_dedup, target_count=expected)
    checks.append(_check("critical_count_spectral", len(spectral.points) == expected,
                         None, len(spectral.points), expected))
    checks.append(_check("critical_count_newton", len(newton) == expected,
                         None, len(newton), expected))

    ok, worst = match_point_sets(
        [pt.p for pt in spectral.points], [pt.p for pt in newton], args.tol_spectral
    )
    checks.append(_check("spectral_newton_match", ok, worst,
                         min(len(spectral.points), len(newton)), 0))

    worst = 0.0
    for pt in newton:
        h_direct = hessian_direct(spec, z, pt.t)
        h_formula = hessian_formula(spec, pt.p)
        scale = 1 + abs(complex(h_direct))
        worst = max(worst, abs(complex(h_direct) - complex(h_formula)) / scale)
    checks.append(_check("hessian_identity", worst <= args.tol_hessian,
                         worst, len(newton), args.tol_hessian))

    worst = 0.0
    for pt in newton:
        jac = complex(jacobian_formula(spec, pt.p))
        hess = complex(hessian_formula(spec, pt.p))
        pref = (-1) ** spec.n
        for aj, pj in zip(spec.a, pt.p):
            hess *= complex(aj) / (pj * pj)
        worst = max(worst, abs(jac - pref * hess) / (1 + abs(jac)))
    checks.append(_check("jacobian_from_hessian", worst <= args.tol_hessian,
                         worst, len(newton), args.tol_hessian))

    points = [
        {
            "t": [_c_pair(v) for v in pt.t],
            "p": [_c_pair(v) for v in pt.p],
            "gradient_norm": pt.grad_norm,
        }
        for pt in newton
    ]
    extra = {
        "points": points,
        "eigenvalue_combination": [int(c) for c in spectral.combination],
        "eigenvalues": [_c_pair(v) for v in spectral.eigenvalues],
    }
    return _finish("solve", raw, spec, z, seed, checks, started, args.out, extra)


# -- flows ------------------------------------------------------------------------


def _cmd_flows(args):
    started = time.perf_counter()
    raw = _load_config(args.config)
    spec = _spec_from_config(raw)
    spec.require_rational_weights()
    seed = args.seed if args.seed is not None else raw.get("seed", 0)
    rng = random.Random(seed)
    checks = []

    charts = list(k_subsets(spec.n, spec.k))[:4]
    samples = []
    for iset in charts:
        for _ in range(3):
            samples.append((iset, lag.sample_chart_point(spec, iset, rng)))

    from .relations import build_relations

    rels = build_relations(spec)

    def member(z, p):
        if not rels.all_vanish_at(z, p):
            return False
        for jset in k_subsets(spec.n, spec.k + 1):
            if rels.g[jset].evaluate(z, p) != 0:
                return False
        return euler_relation(spec).evaluate(z, p) == 0

    good = sum(1 for _, (zz, pp) in samples if member(zz, pp))
    checks.append(_check("chart_membership", good == len(samples),
                         None, good, len(samples)))

    ok_trans, count = True, 0
    for iset, (zz, pp) in samples[: 2 * len(charts)]:
        for target in charts:
            if target == iset:
                continue
            z_part, p_part = lag.chart_coords(spec, target, zz, pp)
            try:
                redone = lag.chart_complete(spec, target, z_part, p_part)
            except DomainError:
                continue
            ok_trans = ok_trans and redone == (zz, pp)
            count += 1
    checks.append(_check("chart_transitions_exact", ok_trans, None, count, 0))

    worst, count = 0.0, 0
    src, (zz, pp) = samples[0]
    for target in charts:
        if target == src:
            continue
        want = complex(lag.transition_expected(spec, src, target))
        got = lag.transition_jacobian_fd(spec, src, target, zz, pp)
        worst = max(worst, abs(got - want) / (1 + abs(want)))
        count += 1
    checks.append(_check("transition_jacobian_fd", worst <= args.tol_fd,
                         worst, count, args.tol_fd))

    worst = 0.0
    for iset, (zz, pp) in samples[: len(charts)]:
        worst = max(worst, lag.generating_fd_residual(spec, iset, zz, pp))
    checks.append(_check("generating_function_fd", worst <= args.tol_fd,
                         worst, len(charts), args.tol_fd))

    _, (zz, pp) = samples[0]
    values = []
    for iset in k_subsets(spec.n, spec.k):
        d = spec.plucker(iset)
        values.append(d * d * lag.projection_jacobian(spec, iset, zz, pp))
    spread = all(v == values[0] for v in values)
    agrees = values[0] == jacobian_formula(spec, pp)
    checks.append(_check("projection_chart_independence", spread and agrees,
                         0.0 if spread and agrees else 1.0, len(values), 0))

    src = charts[0]
    want = complex(lag.projection_jacobian(spec, src, zz, pp))
    got = lag.projection_jacobian_fd(spec, src, zz, pp)
    worst = abs(got - want) / (1 + abs(want))
    checks.append(_check("projection_jacobian_fd", worst <= args.tol_fd,
                         worst, 1, args.tol_fd))

    ok_flow, count = True, 0
    s = Fraction(3, 7)
    for iset, (zz, pp) in samples[: len(charts)]:
        for sub in list(k_subsets(spec.n, spec.k - 1))[:3]:
            z2, p2 = lag.flow_f(spec, sub, s, zz, pp)
            ok_flow = ok_flow and member(z2, p2)
            count += 1
        for sub in list(k_subsets(spec.n, spec.k + 1))[:3]:
            try:
                z2, p2 = lag.flow_g(spec, sub, Fraction(1, 5), zz, pp)
            except DomainError:
                continue
            ok_flow = ok_flow and member(z2, p2)
            for j in range(1, spec.n + 1):
                ok_flow = ok_flow and (
                    g_single(spec, j).evaluate(z2, p2)
                    == g_single(spec, j).evaluate(zz, pp)
                )
            count += 1
        z2, p2 = lag.scale_action(Fraction(-5, 3), zz, pp)
        ok_flow = ok_flow and member(z2, p2)
        count += 1
    checks.append(_check("flow_invariance", ok_flow, None, count, 0))

    return _finish("flows", raw, spec, None, seed, checks, started, args.out)


# -- gen --------------------------------------------------------------------------


def _cmd_gen(args):
    started = time.perf_counter()
    if args.n is None or args.k is None:
        raise UsageError("gen needs --n and --k")
    seed = args.seed if args.seed is not None else 0
    rng = random.Random(seed)
    spec = random_generic(args.n, args.k, rng, coeff_bound=args.coeff_bound)
    z = sample_z(spec, rng)
    config = {
        "n": spec.n,
        "k": spec.k,
        "b": [[rat_str(x) for x in row] for row in spec.b],
        "a": [rat_str(x) for x in spec.a],
        "z": [rat_str(x) for x in z],
        "seed": seed,
    }
    checks = [
        _check("generic_minors", True, None, len(list(k_subsets(spec.n, spec.k))), 0),
        _check("base_point_off_discriminant", spec.is_off_discriminant(z), None, 1, 0),
    ]
    report = {
        "report": "report_v1",
        "command": "gen",
        "config": config,
        "checks": checks,
        "timing": {"seconds": round(time.perf_counter() - started, 6)},
    }
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(config, indent=2) + "\n")
        print(f"wrote {args.out}")
    else:
        print(json.dumps(report, indent=2))
    return 0 if all(c["status"] == "pass" for c in checks) else 1


# -- entry point ------------------------------------------------------------------


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="critvar",
        description="critical-set varieties of translated hyperplane families",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, help="instance JSON file")
    common.add_argument("--seed", type=int, default=None,
                        help="seed overriding the config")
    common.add_argument("--out", default=None, help="write the report here")
    for name, default in _TOL_DEFAULTS.items():
        common.add_argument(f"--tol-{name}", dest=f"tol_{name}",
                            type=float, default=default)

    p = sub.add_parser("verify", parents=[common],
                       help="run the identity battery for one instance")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("solve", parents=[common],
                       help="find and cross-check the critical points")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("flows", parents=[common],
                       help="exercise charts, Jacobians and flows")
    p.set_defaults(func=_cmd_flows)

    p = sub.add_parser("gen", help="draw a random generic instance")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--coeff-bound", type=int, default=9)
    p.add_argument("--out", default=None, help="write the config here")
    p.set_defaults(func=_cmd_gen)

    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
