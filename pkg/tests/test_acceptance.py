"""One test per acceptance criterion; exact arithmetic, tolerance zero."""

import json
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from truncw.center import casimirs_from_det, center_tower, centrality_check, independence_check
from truncw.cohomology import deformation_check, delta_squared_check, phi1_nontrivial_check
from truncw.exact import w_key
from truncw.glnp import PContext, identity_suite
from truncw.reduction import delta_checks, dirac_compatibility, pb_w1, solder_solve, soldering_closed_form_check
from truncw.reps import (
    build_irrep,
    classify,
    coproduct_defect_report,
    drinfeld_polynomials,
    evaluation_rep,
    from_weights,
    highest_weight,
    qdet,
    rtt_check,
    support_check,
    trivial_rep,
)
from truncw.wbar import (
    change_of_basis_check,
    endpoint_check,
    identify_with_yangian,
    truncation_check,
    wbar_build,
)
from truncw.yangian import YangianContext, antisymmetry_check, jacobi_check, quotient_check

F = Fraction


def _report(n, failures, elapsed, budget):
    ok = not failures and elapsed < budget
    status = "PASS" if ok else "FAIL"
    print(f"criterion {n}: {status} ({elapsed:.1f}s, budget {budget}s){'' if ok else ' ' + repr(failures[:3])}")
    return ok


def _collect(reports):
    return [(r.name, r.failures[:1]) for r in reports if not r.ok]


@pytest.mark.criterion(1)
def test_criterion_1_glnp_identities(criterion):
    t = time.perf_counter()
    failures = []
    for p in range(1, 6):
        failures += _collect(identity_suite(PContext(p)))
    assert criterion(_report(1, failures, time.perf_counter() - t, 10))


@pytest.mark.criterion(2)
def test_criterion_2_poisson_yangian(criterion):
    t = time.perf_counter()
    failures = []
    for N, p in [(1, 3), (2, 2), (2, 3)]:
        ctx = YangianContext(N, p)
        failures += _collect([antisymmetry_check(ctx), jacobi_check(ctx), quotient_check(ctx)])
    assert criterion(_report(2, failures, time.perf_counter() - t, 30))


@pytest.mark.criterion(3)
def test_criterion_3_dirac(criterion):
    t = time.perf_counter()
    failures = []
    for N, p in [(1, 2), (2, 2)]:
        ctx = PContext(p, N)
        failures += _collect(delta_checks(ctx) + [dirac_compatibility(ctx)])
    assert criterion(_report(3, failures, time.perf_counter() - t, 60))


@pytest.mark.criterion(4)
def test_criterion_4_soldering(criterion):
    t = time.perf_counter()
    failures = []
    for N, p in [(1, 2), (1, 3), (2, 2), (1, 4)]:
        ctx = PContext(p, N)
        if not solder_solve(ctx).residual().is_zero():
            failures.append(("residual", N, p))
        failures += _collect([soldering_closed_form_check(ctx)])
    # leading coefficient 3(j+1)(p^2-(j+1)^2)/(p(p^2-1)(2j+3)) of W_{j+1} in {W_1, W_j}
    for p in (2, 3, 4):
        ctx = PContext(p, 2)
        for j in range(p - 1):
            got = pb_w1(ctx, 1, 2, j, 2, 1).coeff((w_key(1, 1, j + 1),))
            want = F(3 * (j + 1) * (p * p - (j + 1) ** 2), p * (p * p - 1) * (2 * j + 3))
            if got != want:
                failures.append(("PB1j", p, j, got, want))
    assert criterion(_report(4, failures, time.perf_counter() - t, 60))


@pytest.mark.criterion(5)
def test_criterion_5_identification(criterion):
    t = time.perf_counter()
    failures = []
    for N, p in [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (2, 3)]:
        ctx = PContext(p, N)
        reps = [identify_with_yangian(ctx), truncation_check(ctx), change_of_basis_check(ctx, min(2, p))]
        reps += [endpoint_check(wbar_build(ctx, s, p - 1)) for s in "+-"]
        failures += _collect(reps)
    assert criterion(_report(5, failures, time.perf_counter() - t, 120))


@pytest.mark.criterion(6)
def test_criterion_6_representations(criterion):
    t = time.perf_counter()
    failures = []
    reps = [
        trivial_rep(2),
        trivial_rep(3),
        evaluation_rep(build_irrep(2, [1, 0])),
        evaluation_rep(build_irrep(3, [1, 0, 0])),
        from_weights(2, [[1, 0], [F(1, 2), F(-1, 2)]]),
        from_weights(2, [[1, 0], [F(2, 3), F(-1, 3)], [F(-3, 4), F(-7, 4)]]),
        from_weights(3, [[1, 0, 0], [F(1, 3), F(1, 3), F(-2, 3)]]),
        from_weights(3, [[1, 0, 0], [F(1, 2), F(-1, 2), F(-1, 2)], [F(5, 3), F(2, 3), F(2, 3)]]),
    ]
    for rep in reps:
        if rep.dim > 27:
            failures.append(("dim", rep.dim))
        failures += _collect([rtt_check(rep), support_check(rep)])
        q = qdet(rep)
        if not (q.scalar and q.central):
            failures.append(("qdet", rep.dim))
    for weights in ([[1, 0]], [[1, 0], [F(1, 2), F(-1, 2)]], [[2, 0], [F(1, 3), F(-2, 3)]], [[1, 0], [F(5, 2), F(1, 2)]]):
        data = drinfeld_polynomials(highest_weight(from_weights(2, weights)))
        degree = sum(int(w[0] - w[1]) for w in weights)
        res = classify(data, 2, degree)
        if not (res["accepted"] and res["factors_needed"] == degree):
            failures.append(("round trip", weights, res))
        strings = classify(data, 2, len(weights), criterion="strings")
        if not (strings["accepted"] and strings["factors_needed"] == len(weights)):
            failures.append(("strings", weights, strings))
    assert criterion(_report(6, failures, time.perf_counter() - t, 60))


@pytest.mark.criterion(7)
def test_criterion_7_coproduct_defect(criterion):
    # two defining gl(2) evaluation legs at p = 2: truncated defect must be nonzero,
    # untruncated defect zero
    t = time.perf_counter()
    leg = from_weights(2, [[1, 0]])
    cut = coproduct_defect_report(leg, leg, 2)
    full = coproduct_defect_report(leg, leg, 2, truncated=False)
    failures = []
    if cut["nonzero_defects"] == 0:
        failures.append(("truncated defect vanishes", cut))
    if full["nonzero_defects"] != 0:
        failures.append(("untruncated defect nonzero", full))
    assert criterion(_report(7, failures, time.perf_counter() - t, 10))


@pytest.mark.criterion(8)
def test_criterion_8_center(criterion):
    t = time.perf_counter()
    failures = []
    for N, p in [(1, 2), (2, 1), (2, 2)]:
        ctx = PContext(p, N)
        cs = casimirs_from_det(ctx)
        failures += _collect([centrality_check(cs), independence_check(cs)])
        for r in range(N * p + 1):
            if center_tower(ctx, r)["count"] != N * p - r:
                failures.append(("tower", N, p, r))
    assert criterion(_report(8, failures, time.perf_counter() - t, 60))


@pytest.mark.criterion(9)
def test_criterion_9_cohomology(criterion):
    t = time.perf_counter()
    ctx = YangianContext(2, 2)
    failures = _collect([
        delta_squared_check(ctx, seed=0, trials=3),
        deformation_check(ctx, 2),
        phi1_nontrivial_check(ctx),
    ])
    assert criterion(_report(9, failures, time.perf_counter() - t, 60))


def _cli(*argv, stdin=None):
    return subprocess.run([sys.executable, "-m", "truncw.cli", *argv], input=stdin, capture_output=True, text=True)


@pytest.mark.criterion(10)
def test_criterion_10_cli_contract(criterion):
    t = time.perf_counter()
    failures = []
    first = _cli("verify", "--suite", "all", "--N", "2", "--p", "2", "--seed", "1")
    elapsed_all = time.perf_counter() - t
    second = _cli("verify", "--suite", "all", "--N", "2", "--p", "2", "--seed", "1")
    if first.returncode != 0 or not json.loads(first.stdout)["pass"]:
        failures.append(("verify all", first.returncode, first.stderr[-300:]))
    if first.stdout != second.stdout:
        failures.append("verify output not byte-stable")
    if elapsed_all > 300:
        failures.append(("verify all too slow", elapsed_all))
    a, b = _cli("--N", "2", "--p", "3", "cg-table"), _cli("--N", "2", "--p", "3", "cg-table")
    if a.stdout != b.stdout or a.returncode != 0:
        failures.append("cg-table not byte-stable")
    if _cli("--p", "0", "cg-table").returncode != 2:
        failures.append("usage error exit code")
    if _cli("classify", "--N", "2", "--p", "1", stdin="not json").returncode != 2:
        failures.append("malformed input exit code")
    if _cli("qdet", "--N", "2", "--factors", "1,0").returncode != 0:
        failures.append("qdet exit code")
    # exit 1: a well-formed verification that fails (truncation level below the factor count)
    bad = _cli("verify", "--suite", "rtt", "--N", "2", "--p", "1", "--factors", "1,0;1,0")
    if bad.returncode != 1 or "first_counterexample" not in json.loads(bad.stdout):
        failures.append(("failure exit code", bad.returncode))
    assert criterion(_report(10, failures, time.perf_counter() - t, 300))
