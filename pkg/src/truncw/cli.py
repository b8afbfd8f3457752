"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
All numbers are printed as exact fraction strings; JSON output carries
``"schema": "truncw/1"``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from .exact import Poly, fraction_str

SCHEMA = "truncw/1"
DEFAULT_MAX_DIM = 12
DEFAULT_BOUNDS = {"cob_j": 2, "deform_n": 2, "trials": 3, "qdet_terms": 6}
SUITES = ("rtt", "soldering", "dirac", "identify", "center", "cohomology", "all")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--N", type=int, default=d(1), help="rank of gl(N)")
    parser.add_argument("--p", type=int, default=d(2), help="truncation level")
    parser.add_argument("--format", choices=("json", "csv", "text"), default=d("json"))
    parser.add_argument("--seed", type=int, default=d(0))
    parser.add_argument("--bounds", default=d(""), help="key=value list, e.g. cob_j=2,deform_n=2")
    parser.add_argument("--factors", default=d(None), help='evaluation weights, e.g. "1,0;1,0"')


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="truncw", description=__doc__.splitlines()[0])
    _common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def add(name, help_):
        sp = sub.add_parser(name, help=help_)
        _common(sp, suppress=True)
        return sp

    add("cg-table", "Clebsch-Gordan coefficients and eta values of the principal basis")
    add("yangian-table", "generator brackets of the truncated Poisson Yangian")
    sp = add("w-table", "W-algebra bracket table (soldering normalization)")
    sp.add_argument("--delta", action="store_true", help="also emit the constraint matrix and its inverse")
    sp = add("wbar", "the W-bar generator families as polynomials")
    sp.add_argument("--sign", choices=("+", "-", "both"), default="both")
    sp.add_argument("--report", action="store_true", help="add the per-pair identification report")
    sp = add("classify", "accept or reject Drinfeld data and emit a factor plan")
    sp.add_argument("input", nargs="?", default="-", help="JSON file with P and rho ('-' for stdin)")
    sp.add_argument("--criterion", choices=("degree", "strings"), default="degree")
    add("rtt-verify", "RTT relations on a tensor product of evaluation modules")
    add("qdet", "center series coefficients d_n of a tensor product of evaluation modules")
    sp = add("center", "Casimir polynomials C_n and the center-tower summary")
    sp.add_argument("--yangian", action="store_true", help="also express C_n in the T generators")
    sp = add("verify", "run a verification suite")
    sp.add_argument("--suite", choices=SUITES, default="all")
    return parser


# parsing helpers ----------------------------------------------------------------


def _max_dim() -> int:
    raw = os.environ.get("TRUNCW_MAX_DIM")
    if raw is None:
        return DEFAULT_MAX_DIM
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"TRUNCW_MAX_DIM must be an integer, got {raw!r}")


def _validate(args) -> None:
    if args.N < 1 or args.p < 1:
        raise UsageError(f"N and p must be positive integers (got N={args.N}, p={args.p})")
    bound = _max_dim()
    if args.N * args.p > bound:
        raise UsageError(f"N*p = {args.N * args.p} exceeds the safety bound {bound} (set TRUNCW_MAX_DIM)")


def parse_bounds(text: str) -> dict:
    out = dict(DEFAULT_BOUNDS)
    for item in filter(None, (s.strip() for s in (text or "").split(","))):
        key, sep, val = item.partition("=")
        if not sep or key not in DEFAULT_BOUNDS:
            raise UsageError(f"bad bound {item!r}; known keys: {', '.join(sorted(DEFAULT_BOUNDS))}")
        try:
            out[key] = int(val)
        except ValueError:
            raise UsageError(f"bound {key} needs an integer, got {val!r}")
        if out[key] < 0:
            raise UsageError(f"bound {key} must be nonnegative")
    return out


def parse_factors(text: str | None, N: int) -> list:
    if text is None:
        return [[1] + [0] * (N - 1)]
    if not text.strip():
        return []
    out = []
    for chunk in text.split(";"):
        try:
            w = [Fraction(x.strip()) for x in chunk.split(",")]
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"bad weight {chunk!r}")
        if len(w) != N:
            raise UsageError(f"weight {chunk!r} has {len(w)} entries, expected N={N}")
        out.append(w)
    return out


def _key_str(g: tuple, family: str) -> str:
    return f"{family}[{','.join(str(x) for x in g)}]"


def _pstr(x) -> str:
    return x.to_string() if isinstance(x, Poly) else fraction_str(Fraction(x))


# output -----------------------------------------------------------------------


def emit(payload: dict, fmt: str, out, rows: list | None = None, header: list | None = None) -> None:
    if fmt == "csv" and rows is not None:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        out.write(buf.getvalue())
    elif fmt == "text":
        out.write(_text(payload))
    else:
        out.write(json.dumps({"schema": SCHEMA, **payload}, indent=2, sort_keys=True) + "\n")


def _text(payload, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(payload, dict):
        for k in sorted(payload):
            v = payload[k]
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1).rstrip("\n"))
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(payload, list):
        for v in payload:
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}-")
                lines.append(_text(v, indent + 1).rstrip("\n"))
            else:
                lines.append(f"{pad}- {v}")
    else:
        lines.append(f"{pad}{payload}")
    return "\n".join(lines) + "\n"


# commands ---------------------------------------------------------------------


def cmd_cg_table(args, out) -> int:
    from .glnp import PContext, cg_table, eta

    ctx = PContext(args.p, args.N)
    table = cg_table(ctx)
    keys = sorted(table)
    rows = [list(k) + [fraction_str(table[k])] for k in keys]
    payload = {
        "p": ctx.p,
        "eta": {str(j): fraction_str(eta(ctx, j)) for j in range(ctx.p)},
        "cg": [dict(zip("j m l n r s".split(), k), value=fraction_str(table[k])) for k in keys],
    }
    emit(payload, args.format, out, rows, ["j", "m", "l", "n", "r", "s", "value"])
    return 0


def cmd_yangian_table(args, out) -> int:
    from .yangian import YangianContext, bracket_table

    rows = [
        [_key_str(g, "T"), _key_str(h, "T"), v.to_string()]
        for g, h, v in bracket_table(YangianContext(args.N, args.p))
    ]
    payload = {"N": args.N, "p": args.p, "brackets": [dict(zip(("lhs", "rhs", "value"), r)) for r in rows]}
    emit(payload, args.format, out, rows, ["lhs", "rhs", "value"])
    return 0


def _matrix_rows(m) -> list:
    return [[_pstr(x) for x in row] for row in m.data] if m is not None else []


def cmd_w_table(args, out) -> int:
    from .glnp import PContext
    from .reduction import build_delta, soldering_table

    ctx = PContext(args.p, args.N)
    table = soldering_table(ctx)
    rows = [[_key_str(g, "W"), _key_str(h, "W"), v.to_string()] for (g, h), v in table.items()]
    payload = {"N": args.N, "p": args.p, "brackets": [dict(zip(("lhs", "rhs", "value"), r)) for r in rows]}
    if args.delta:
        dm = build_delta(ctx)
        payload["constraints"] = [
            f"J[{a},{b},{j},{m}]" for (j, m, a, b) in dm.labels
        ]
        payload["delta"] = _matrix_rows(dm.delta)
        payload["delta_inverse"] = _matrix_rows(dm.bar)
    emit(payload, args.format, out, rows, ["lhs", "rhs", "value"])
    return 0


def cmd_wbar(args, out) -> int:
    from .glnp import PContext
    from .wbar import wbar_build

    ctx = PContext(args.p, args.N)
    signs = ("+", "-") if args.sign == "both" else (args.sign,)
    payload = {"N": args.N, "p": args.p, "families": {}}
    for s in signs:
        fam = wbar_build(ctx, s, ctx.p)
        payload["families"][s] = fam.to_strings()
    code = 0
    if args.report:
        rep = _identify_pairs(ctx)
        payload["identification"] = rep
        code = 0 if all(r["pass"] for r in rep) else 1
    emit(payload, args.format, out)
    return code


def _identify_pairs(ctx) -> list:
    from .wbar import identify_with_yangian

    out = []
    for j in range(ctx.p):
        for l in range(ctx.p):
            rep = identify_with_yangian(ctx, [(j, l)])
            out.append({"pair": f"Wbar_{j} x Wbar_{l} -> T_{j + 1} x T_{l + 1}", **rep.to_dict()})
    return out


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot read JSON input: {e}")


def cmd_classify(args, out) -> int:
    from .reps import DrinfeldData, classify

    data = _read_json(args.input)
    if not isinstance(data, dict) or "P" not in data or not isinstance(data["P"], list):
        raise UsageError('input must be a JSON object with a list "P" of coefficient lists')
    try:
        P = [[Fraction(str(c)) for c in poly] for poly in data["P"]]
        rho = [Fraction(str(c)) for c in data.get("rho", [1])]
        result = classify(DrinfeldData(P, rho), args.N, args.p, args.criterion)
    except (ValueError, TypeError, ZeroDivisionError) as e:
        raise UsageError(f"malformed Drinfeld data: {e}")
    emit(result, args.format, out)
    return 0


def _rep_from_args(args):
    from .reps import from_weights, trivial_rep

    weights = parse_factors(args.factors, args.N)
    try:
        return (from_weights(args.N, weights) if weights else trivial_rep(args.N)), weights
    except ValueError as e:
        raise UsageError(f"bad --factors: {e}")


def cmd_rtt_verify(args, out) -> int:
    reports = _rtt_reports(args)
    return _emit_reports(args, out, "rtt", reports)


def cmd_qdet(args, out) -> int:
    from .reps import qdet

    rep, weights = _rep_from_args(args)
    q = qdet(rep)
    terms = max(parse_bounds(args.bounds)["qdet_terms"], args.N * len(weights) + 1)
    payload = {
        "N": args.N,
        "factors": [[fraction_str(x) for x in w] for w in weights],
        "scalar": q.scalar,
        "central": q.central,
        "d": [fraction_str(x) for x in q.coefficients(terms)],
    }
    emit(payload, args.format, out)
    return 0 if q.scalar and q.central else 1


def cmd_center(args, out) -> int:
    from .center import casimirs_from_det, casimirs_in_yangian, center_tower
    from .glnp import PContext

    ctx = PContext(args.p, args.N)
    cs = casimirs_from_det(ctx)
    payload = {
        "N": args.N,
        "p": args.p,
        "casimirs": cs.to_strings(),
        "tower": [center_tower(ctx, r) for r in range(args.N * args.p + 1)],
    }
    if args.yangian:
        payload["casimirs_T"] = {f"C{n}": c.to_string() for n, c in enumerate(casimirs_in_yangian(cs), start=1)}
    emit(payload, args.format, out)
    return 0


# verification suites ----------------------------------------------------------------


def _rtt_reports(args) -> list:
    from .glnp import Report
    from .reps import qdet, rtt_check, support_check, truncation_support

    rep, _ = _rep_from_args(args)
    q = qdet(rep)
    central = Report(f"qdet central factors={len(rep.factors)}")
    central.check(q.scalar and q.central, "qdet is not a central scalar")
    # the module must factor through Y_p(N): no nonzero modes above p
    descends = Report(f"descends to Y_p p={args.p}")
    descends.check(truncation_support(rep, args.p), f"modes up to {rep.nmodes} act nontrivially, p={args.p}")
    return [rtt_check(rep), support_check(rep), central, descends]


def _suite_soldering(args, ctx, bounds) -> list:
    from .glnp import Report, identity_suite
    from .reduction import solder_solve, soldering_closed_form_check

    res = Report(f"soldering residual N={ctx.N} p={ctx.p}")
    r = solder_solve(ctx).residual()
    res.check(r.is_zero(), "residual")
    return identity_suite(ctx) + [res, soldering_closed_form_check(ctx)]


def _suite_dirac(args, ctx, bounds) -> list:
    from .reduction import delta_checks, dirac_compatibility, dirac_soldering_check

    return list(delta_checks(ctx)) + [dirac_compatibility(ctx), dirac_soldering_check(ctx)]


def _suite_identify(args, ctx, bounds) -> list:
    from .wbar import change_of_basis_check, endpoint_check, identify_with_yangian, truncation_check, wbar_build
    from .yangian import YangianContext, antisymmetry_check, jacobi_check, quotient_check

    yctx = YangianContext(ctx.N, ctx.p)
    fam = wbar_build(ctx, "-", ctx.p)
    return [
        antisymmetry_check(yctx),
        jacobi_check(yctx),
        quotient_check(yctx),
        identify_with_yangian(ctx),
        truncation_check(ctx),
        endpoint_check(fam),
        change_of_basis_check(ctx, min(bounds["cob_j"], ctx.p)),
    ]


def _suite_center(args, ctx, bounds) -> list:
    from .center import casimirs_from_det, centrality_check, independence_check, triangularity_check

    cs = casimirs_from_det(ctx)
    return [centrality_check(cs), independence_check(cs, args.seed), triangularity_check(cs)]


def _suite_cohomology(args, ctx, bounds) -> list:
    from .cohomology import delta_squared_check, deformation_check, lemma_check, phi_cochains, phi1_nontrivial_check
    from .yangian import YangianContext

    yctx = YangianContext(ctx.N, ctx.p)
    reps = [
        delta_squared_check(yctx, args.seed, bounds["trials"]),
        deformation_check(yctx, bounds["deform_n"]),
        lemma_check(yctx, phi_cochains(yctx, 1)[1]),
    ]
    if ctx.N >= 2:
        reps.append(phi1_nontrivial_check(yctx))
    return reps


def _suite_rtt(args, ctx, bounds) -> list:
    return _rtt_reports(args)


SUITE_FUNCS = {
    "rtt": _suite_rtt,
    "soldering": _suite_soldering,
    "dirac": _suite_dirac,
    "identify": _suite_identify,
    "center": _suite_center,
    "cohomology": _suite_cohomology,
}


def _emit_reports(args, out, suite: str, reports: list) -> int:
    ok = all(r.ok for r in reports)
    payload = {
        "N": args.N,
        "p": args.p,
        "suite": suite,
        "pass": ok,
        "reports": [r.to_dict() for r in reports],
    }
    if not ok:
        first = next(r for r in reports if not r.ok)
        payload["first_counterexample"] = {"check": first.name, "detail": str(first.failures[0])}
    if args.format == "text":
        lines = [f"{'PASS' if r.ok else 'FAIL'} {r.name} ({r.checked} checks)" for r in reports]
        if not ok:
            fc = payload["first_counterexample"]
            lines.append(f"first counterexample [{fc['check']}]: {fc['detail']}")
        out.write("\n".join(lines) + "\n")
    else:
        emit(payload, "json", out)
    return 0 if ok else 1


def cmd_verify(args, out) -> int:
    from .glnp import PContext

    bounds = parse_bounds(args.bounds)
    ctx = PContext(args.p, args.N)
    names = [s for s in SUITES if s != "all"] if args.suite == "all" else [args.suite]
    reports = []
    for name in names:
        reports.extend(SUITE_FUNCS[name](args, ctx, bounds))
    return _emit_reports(args, out, args.suite, reports)


COMMANDS = {
    "cg-table": cmd_cg_table,
    "yangian-table": cmd_yangian_table,
    "w-table": cmd_w_table,
    "wbar": cmd_wbar,
    "classify": cmd_classify,
    "rtt-verify": cmd_rtt_verify,
    "qdet": cmd_qdet,
    "center": cmd_center,
    "verify": cmd_verify,
}


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
        _validate(args)
        parse_bounds(args.bounds)
        return COMMANDS[args.command](args, out)
    except UsageError as e:
        sys.stderr.write(f"truncw: error: {e}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
