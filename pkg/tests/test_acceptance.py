"""Acceptance gate: one test per criterion, each printing a single PASS/FAIL line.

Runtime limits are pinned below; every other comparison is exact.
"""

import time

import pytest

from kummer_cy.report import Status, emit_report
from kummer_cy.suites import Options, run_suite

LIMITS = {1: 10.0, 2: 5.0, 3: 5.0, 4: 30.0, 5: 10.0, 6: 300.0, "6-parallel": 60.0}


@pytest.fixture
def verdict(capsys):
    def emit(label, title, checks: dict, elapsed, limit):
        checks = dict(checks)
        if limit is not None:
            checks[f"runtime {elapsed:.2f}s < {limit:.0f}s"] = elapsed < limit
        failed = [k for k, ok in checks.items() if not ok]
        with capsys.disabled():
            line = f"criterion {label}: {'PASS' if not failed else 'FAIL'} - {title} ({elapsed:.2f}s)"
            print("\n" + line + ("" if not failed else " failed: " + "; ".join(failed)))
        assert not failed

    return emit


def timed(name, opts=None):
    start = time.perf_counter()
    rep = run_suite(name, opts or Options())
    return rep, time.perf_counter() - start


def passed(rep, *ids):
    return {i: rep.get(i).status is Status.PASS for i in ids}


def test_criterion_1_group(verdict):
    rep, dt = timed("group")
    relations = [c.id for c in rep.claims if c.id.startswith("group.relation.")]
    checks = {"six relations": len(relations) == 6}
    checks |= passed(rep, *relations, "group.order.gh", "group.order.ghr", "group.phi4_invariant")
    checks["orders 21, 168"] = (rep.get("group.order.gh").payload, rep.get("group.order.ghr").payload) == (21, 168)
    verdict(1, "group presentation, closure orders, quartic invariance", checks, dt, LIMITS[1])


def test_criterion_2_torus(verdict):
    rep, dt = timed("torus")
    checks = passed(
        rep,
        "torus.mu_matrix",
        "torus.h_matrix",
        "torus.g_eta_order",
        "torus.h_tilde_order",
        "torus.conjugation",
        "torus.eigenvalues",
        "torus.lattice.g",
        "torus.lattice.h",
        "torus.lattice.r",
        "torus.fixed.g_eta",
        "torus.fixed.h_tilde",
    )
    alpha = rep.get("torus.alpha_claims")
    checks["alpha truth table reported"] = alpha.status is Status.REPORTED and isinstance(alpha.payload, dict)
    verdict(2, "torus matrices, relations, integrality, fixed sets", checks, dt, LIMITS[2])


def test_criterion_3_cohomology(verdict):
    rep, dt = timed("cohomology")
    ids = ["cohomology.volume_form"]
    for tag in ("omega", "eta"):
        ids += [f"cohomology.{tag}.{k}" for k in ("specialization", "invariant_rank", "AB_basis", "intermediate_jacobian")]
    checks = passed(rep, *ids)
    for tag in ("omega", "eta"):
        checks[f"{tag} rank exactly 2"] = len(rep.get(f"cohomology.{tag}.invariant_rank").payload) == 2
        checks[f"{tag} det +-1"] = abs(rep.get(f"cohomology.{tag}.AB_basis").payload["determinant"]) == 1
    verdict(3, "volume form, invariant lattice, intermediate Jacobian (exact)", checks, dt, LIMITS[3])


def test_criterion_4_quotients(verdict):
    rep, dt = timed("quotients")
    checks = passed(
        rep,
        "quotients.z3.index_set",
        "quotients.z3.relations",
        "quotients.z3.charts",
        "quotients.z3.birational_model",
        "quotients.z7.box_count",
        "quotients.z3.generation",
    )
    checks["|I| = 10"] = len(rep.get("quotients.z3.index_set").payload) == 10
    checks["box count 49"] = rep.get("quotients.z7.box_count").payload == 49
    checks["D = 12 oracle"] = rep.get("quotients.z3.generation").payload.degree_bound == 12
    z7 = rep.get("quotients.z7.generation")
    checks["D = 14 verdict reported"] = z7.status is Status.REPORTED and z7.payload.degree_bound == 14
    verdict(4, "quotient presentations, toric charts, generation oracle", checks, dt, LIMITS[4])


def test_criterion_5_klein(verdict):
    rep, dt = timed("klein")
    checks = passed(
        rep, "klein.tangent.q0", "klein.tangent.q1", "klein.tangent.qinf", "klein.phiq", "klein.pullback.g", "klein.pullback.h"
    )
    verdict(5, "tangent divisors, fixed-point relations, differential pullbacks", checks, dt, LIMITS[5])


def _modularity_checks(rep):
    ids = []
    for tag in ("omega", "eta"):
        ids += [f"modularity.{tag}.{k}" for k in ("hasse", "inert_zero", "calibration", "cube_field_count")]
    checks = passed(rep, *ids)
    for tag in ("omega", "eta"):
        cal = rep.get(f"modularity.{tag}.calibration").payload
        checks[f"{tag} held-out set is 50 < p <= 200"] = min(cal.test_primes) > 50 and max(cal.test_primes) <= 200
        checks[f"{tag} zero held-out mismatches"] = cal.mismatches == []
        checks[f"{tag} single rule"] = cal.rule is not None
        cubes = rep.get(f"modularity.{tag}.cube_field_count").payload
        checks[f"{tag} cube counts at good p in 2,3,5"] = {c["p"] for c in cubes} == {2, 3, 5} - ({3} if tag == "omega" else {2})
    klein = rep.get("modularity.klein_trace")
    primes = {r["p"] for r in klein.payload["rows"]}
    checks["klein comparison reported at all good p <= 100"] = klein.status is Status.REPORTED and primes == {
        p for p in range(2, 101) if all(p % d for d in range(2, p)) and p != 7
    }
    return checks


def test_criterion_6_modularity(verdict):
    rep, dt = timed("modularity", Options(jobs=1))
    verdict(6, "Frobenius traces, calibration, H^3 factor, Klein comparison (1 job)", _modularity_checks(rep), dt, LIMITS[6])


def test_criterion_6_modularity_parallel(verdict):
    rep, dt = timed("modularity", Options(jobs=8))
    serial = run_suite("modularity", Options(jobs=1))
    checks = _modularity_checks(rep)
    checks["same report as serial"] = emit_report(rep) == emit_report(serial)
    verdict("6-parallel", "modularity suite with 8 workers", checks, dt, LIMITS["6-parallel"])


def test_criterion_7_determinism(verdict):
    start = time.perf_counter()
    first = emit_report(run_suite("all"), "json")
    second = emit_report(run_suite("all"), "json")
    dt = time.perf_counter() - start
    verdict(7, "run_suite(all) twice gives byte-identical JSON", {"identical": first == second}, dt, None)
