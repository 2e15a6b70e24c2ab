"""Acceptance criteria, one test per criterion.

Each test prints one [PASS]/[FAIL] line (run with -s to see them live).
Criteria 4 and 8 assert statements that the source material itself breaks
for specific configurations; those tests fail with a full account of the
offending cases.  Everything else must be green.
"""

import json
import time
from fractions import Fraction as F

import pytest

from xcdof import errors
from xcdof.bounds import (
    spot_check_random,
    spot_check_scheme,
    verify_lemma2,
    verify_rank_inequalities,
)
from xcdof.cli import main as cli_main
from xcdof.config import AntennaConfig
from xcdof.fieldmath import DEFAULT_PRIME
from xcdof.loss import classify_loss
from xcdof.params import (
    Case,
    case_of,
    gamma,
    scheme_params,
    sum_dof,
    symmetric_closed_forms,
)
from xcdof.region import corner_points, achieve_corner, verify_region
from xcdof.scheme import (
    achieved_tuple,
    check_decodability,
    execute_plan,
    rank_ratio_of,
    simulate,
    single_round_extractable,
    transcript_to_json,
    weighted_sum_ok,
)

C = AntennaConfig
SPOTS = [(4, 1, 2, 1), (2, 2, 3, 1), (3, 3, 2, 2)]


def all_normalized(limit):
    return [
        (m1, m2, n1, n2)
        for m1 in range(1, limit + 1)
        for m2 in range(1, m1 + 1)
        for n1 in range(1, limit + 1)
        for n2 in range(1, limit + 1)
    ]


def report(num, ok, detail=""):
    tag = "PASS" if ok else "FAIL"
    print(f"[{tag}] criterion {num}: {detail}")
    return ok


def test_criterion_01_single_antenna_rank_ratio():
    g = gamma(C(1, 1, 1, 1), 1)  # warm
    t0 = time.perf_counter()
    for _ in range(10):
        g = gamma(C(1, 1, 1, 1), 1)
    per_call = (time.perf_counter() - t0) / 10
    ok = g == F(3, 2) and per_call < 1e-3
    assert report(1, ok, f"gamma(1,1,1,1) = {g}, {per_call*1e6:.0f} us/call")


def test_criterion_02_symmetric_closed_forms():
    t0 = time.perf_counter()
    bad = []
    for m in range(1, 9):
        for n in range(1, 9):
            if sum_dof(C(m, m, n, n)) != symmetric_closed_forms(m, n)["dof"]:
                bad.append((m, n))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 1.0
    assert report(2, ok, f"all 64 symmetric pairs exact in {elapsed*1e3:.0f} ms")


def test_criterion_03_scheme_constants_and_alignment_gain():
    sp = scheme_params(C(3, 3, 2, 2))
    vals_ok = (
        sp.gamma == (F(9, 5), F(9, 5))
        and all(
            (p.s, p.xi, p.lambda_cap, p.lambda_buf, p.kappa) == (5, 1, 18, 8, 1)
            for p in sp.phases
        )
        and sp.t_total == 14
        and sp.achieved_dof == F(18, 7)
    )
    aligned = single_round_extractable(C(3, 3, 2, 2), 5, DEFAULT_PRIME, "aligned")
    verbatim = single_round_extractable(C(3, 3, 2, 2), 5, DEFAULT_PRIME, "verbatim")
    ok = vals_ok and aligned == 8 and verbatim == 7
    assert report(3, ok, f"constants exact; extractable aligned={aligned} verbatim={verbatim}")


def test_criterion_04_end_to_end_simulation():
    t0 = time.perf_counter()
    configs = sorted(set(all_normalized(4)) | set(SPOTS))
    failures = {}
    for cfg_t in configs:
        cfg = C(*cfg_t)
        expected = sum_dof(cfg)
        for s in range(20):
            try:
                t = simulate(cfg, seed=s)
            except (errors.CapacityViolation, errors.BufferDeficit) as exc:
                failures[cfg_t] = f"{type(exc).__name__} (deterministic, seed {s})"
                break  # the failure class is structural, not seed-dependent
            rep = check_decodability(t)
            if not rep.all_pass or t.achieved_dof() != expected:
                failures[cfg_t] = f"undecodable or wrong DoF at seed {s}"
                break
    elapsed = time.perf_counter() - t0
    ok = not failures and elapsed < 120
    detail = (
        f"{len(configs) - len(failures)}/{len(configs)} configs pass 20 seeds "
        f"in {elapsed:.1f}s"
    )
    if failures:
        detail += "; published blocklength unrealizable for: " + ", ".join(
            f"{k}={v}" for k, v in sorted(failures.items())
        )
    assert report(4, ok, detail)


def test_criterion_05_rank_ratio_tightness():
    case3_feasible = [(3, 3, 2, 2), (1, 1, 1, 1), (2, 2, 2, 2), (3, 2, 2, 2), (4, 4, 3, 3)]
    bad = []
    for cfg_t in case3_feasible:
        cfg = C(*cfg_t)
        assert case_of(cfg) is Case.CASE3
        for s in range(3):
            t = simulate(cfg, seed=s)
            for i in (1, 2):
                if rank_ratio_of(t, i) != gamma(cfg, i):
                    bad.append((cfg_t, s, i))
    t = simulate(C(3, 3, 2, 2), seed=0)
    exact = rank_ratio_of(t, 1) == F(18, 10) == F(9, 5)
    ok = not bad and exact
    assert report(5, ok, f"ratio == max rank-ratio on {len(case3_feasible)} configs x 3 seeds")


def test_criterion_06_lemma_monte_carlo():
    t0 = time.perf_counter()
    violations = 0
    trials_per_mode = 100  # both modes per config: >= 200 trials per config
    for cfg_t in all_normalized(4):
        cfg = C(*cfg_t)
        for mode in ("oblivious_random", "delayed_adaptive_random"):
            r1, r3 = verify_rank_inequalities(cfg, 6, trials_per_mode, mode, seed=0)
            violations += r1.violations + r3.violations
    for m in range(1, 5):
        for n1 in range(1, 5):
            for n2 in range(1, n1 + 1):
                for mode in ("oblivious_random", "delayed_adaptive_random"):
                    r2 = verify_lemma2(m, n1, n2, 6, trials_per_mode, mode, seed=0)
                    violations += r2.violations
    elapsed = time.perf_counter() - t0
    ok = violations == 0 and elapsed < 300
    assert report(6, ok, f"0 violations required, got {violations}, in {elapsed:.0f}s")


def test_criterion_07_weighted_sum_converse():
    bad = []
    for cfg_t in all_normalized(4):
        cfg = C(*cfg_t)
        for s in range(3):
            try:
                t = simulate(cfg, seed=s)
            except (errors.CapacityViolation, errors.BufferDeficit):
                break  # no transcript exists; nothing to check
            if not weighted_sum_ok(t):
                bad.append((cfg_t, s))
    assert report(7, not bad, f"bound holds on every simulated transcript ({len(bad)} violations)")


def test_criterion_08_region():
    t0 = time.perf_counter()
    expected_counts = {1: 8, 2: 12, 3: 12, 4: 13, 5: 4}
    count_mismatch, infeasible, non_vertex, extra_vertices, sum_bad = [], [], [], [], []
    for m in range(1, 7):
        for n in range(1, 7):
            rep = verify_region(m, n)
            if rep.corner_count != expected_counts[rep.regime]:
                count_mismatch.append(((m, n), rep.regime, rep.corner_count))
            if rep.infeasible:
                infeasible.append((m, n))
            if rep.non_vertex:
                non_vertex.append((m, n))
            if rep.missing:
                extra_vertices.append(((m, n), len(rep.missing)))
            if rep.max_corner_sum != rep.sum_dof_value:
                sum_bad.append((m, n))
    member = tuple(F(x) for x in (F(15, 14), F(3, 14), F(15, 14), F(3, 14)))
    member_ok = member in corner_points(3, 2)
    elapsed = time.perf_counter() - t0
    ok = (
        not count_mismatch
        and not infeasible
        and not non_vertex
        and not extra_vertices
        and not sum_bad
        and member_ok
        and elapsed < 60
    )
    detail = (
        f"feasible+vertex: {'all' if not (infeasible or non_vertex) else 'NOT all'}; "
        f"max corner sum == closed form: {'yes' if not sum_bad else 'no'}; "
        f"(3,2) contains (15/14,3/14,15/14,3/14): {member_ok}; {elapsed:.1f}s"
    )
    if count_mismatch:
        detail += f"; corner-count mismatches {count_mismatch}"
    if extra_vertices:
        detail += f"; enumeration finds unpublished vertices at {extra_vertices}"
    assert report(8, ok, detail)


def test_criterion_09_corner_achievability():
    representatives = {1: (3, 1), 2: (3, 2), 3: (3, 4), 4: (2, 3), 5: (1, 3)}
    kinds_seen = set()
    bad = []
    for reg, (m, n) in representatives.items():
        for corner in corner_points(m, n):
            plan = achieve_corner(m, n, corner)
            kinds_seen.add(plan.kind)
            t = execute_plan(m, n, plan, seed=13)
            if achieved_tuple(t) != tuple(corner) or not check_decodability(t).all_pass:
                bad.append((reg, corner, plan.kind))
    ok = not bad and {"p2p", "mac", "zero_csit", "bc", "full_scheme"} <= kinds_seen
    assert report(9, ok, f"all corners of 5 representative regimes hit exactly ({sorted(kinds_seen)})")


def test_criterion_10_loss_classification():
    bad = []
    for m1 in range(1, 9):
        for m2 in range(1, m1 + 1):
            for n1 in range(1, 9):
                for n2 in range(1, 9):
                    cls = classify_loss(C(m1, m2, n1, n2))
                    if not cls.consistent:
                        bad.append((m1, m2, n1, n2))
    window_bad = []
    for m in range(1, 9):
        for n in range(1, 9):
            expect = F(1, 2) < F(n, m) < F(4, 3)
            if classify_loss(C(m, m, n, n)).loss != expect:
                window_bad.append((m, n))
    ok = not bad and not window_bad
    assert report(10, ok, "table-driven == formula-driven on all 2304 configs; symmetric window exact")


def test_criterion_11_structural_spot_check():
    # oblivious and scheme transcripts: the modes whose message sizes keep
    # the short-increment event about hiding rather than column saturation
    counterexamples = 0
    in_scope = 0
    for cfg_t in all_normalized(4):
        cfg = C(*cfg_t)
        rep = spot_check_random(cfg, 6, seeds=100, mode="oblivious_random", seed=0)
        counterexamples += len(rep.counterexamples)
        in_scope += rep.slots_in_scope
    for cfg_t in [(3, 3, 2, 2), (4, 1, 2, 1)]:
        rep = spot_check_scheme(C(*cfg_t), seeds=100)
        counterexamples += len(rep.counterexamples)
        in_scope += rep.slots_in_scope
    ok = counterexamples == 0 and in_scope > 0
    assert report(
        11,
        ok,
        f"{counterexamples} counterexamples over 100 transcripts/config "
        f"({in_scope} slots in scope)",
    )


def test_criterion_12_determinism(capsys, tmp_path):
    a = transcript_to_json(simulate(C(3, 3, 2, 2), seed=7))
    b = transcript_to_json(simulate(C(3, 3, 2, 2), seed=7))
    seq, par = verify_rank_inequalities(
        C(2, 2, 2, 2), 5, 24, "oblivious_random", seed=3, jobs=1
    ), verify_rank_inequalities(C(2, 2, 2, 2), 5, 24, "oblivious_random", seed=3, jobs=2)
    reports_equal = [x.to_dict() for x in seq] == [x.to_dict() for x in par]

    outs = []
    for _ in range(2):
        cli_main(["region", "3", "2", "--format", "json"])
        outs.append(capsys.readouterr().out)
        cli_main(["lossmap", "--mode", "symmetric", "--limit", "4"])
        outs.append(capsys.readouterr().out)
    cli_equal = outs[0] == outs[2] and outs[1] == outs[3]
    ok = a == b and reports_equal and cli_equal
    assert report(12, ok, "byte-identical transcripts, reports (serial == parallel), CLI outputs")
