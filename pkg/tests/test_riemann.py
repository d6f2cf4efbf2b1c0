import dataclasses
import math

import numpy as np
import pytest

from eulerfan import (
    BracketError,
    CaseId,
    DomainError,
    GasLaw,
    RiemannProblem,
    State,
    classify,
    near_boundaries,
    rarefaction_integral,
    rotate_180,
    shock_bracket,
    solve_standard,
    verify_standard,
)
from generators import problem_for_case

LAW_LOG = GasLaw(1.0, 1.0)
LAW_SQ = GasLaw(0.5, 2.0)

TWO_WAVE_CASES = (CaseId.R1R3, CaseId.R1S3, CaseId.S1R3, CaseId.S1S3)
ALL_CASES = (
    CaseId.R1R3_VACUUM,
    CaseId.R1R3,
    CaseId.SINGLE_R,
    CaseId.R1S3,
    CaseId.S1R3,
    CaseId.SINGLE_S,
    CaseId.S1S3,
)


def make(law, rl, vl2, rr, vr2, v1=0.0):
    return RiemannProblem(law, State(rl, v1, vl2), State(rr, v1, vr2))


class TestClassify:
    def test_examples(self):
        assert classify(make(LAW_LOG, 1, 0, 4, -1.5)) is CaseId.SINGLE_S
        assert classify(make(LAW_SQ, 2, 3, 2, 3, v1=1.0)) is CaseId.CONSTANT
        assert classify(make(LAW_SQ, 1, -2, 1, 2)) is CaseId.R1R3_VACUUM
        assert classify(make(LAW_LOG, 1, 0, 4, -1)) is CaseId.S1R3

    def test_single_rarefaction_boundary_both_orders(self):
        for rl, rr in ((4.0, 1.0), (1.0, 4.0)):
            dv = abs(rarefaction_integral(LAW_SQ, rl, rr))
            p = make(LAW_SQ, rl, 0.0, rr, dv)
            assert classify(p) is CaseId.SINGLE_R
            fam = solve_standard(p).waves[0].family
            assert fam == (1 if rl > rr else 3)

    def test_single_shock_family(self):
        for rl, rr in ((1.0, 4.0), (4.0, 1.0)):
            dv = -shock_bracket(LAW_LOG, rl, rr)
            p = make(LAW_LOG, rl, 0.0, rr, dv)
            assert classify(p) is CaseId.SINGLE_S
            fam = solve_standard(p).waves[0].family
            assert fam == (1 if rl < rr else 3)

    def test_vacuum_boundary_uses_nonstrict_sign(self):
        threshold = rarefaction_integral(LAW_SQ, 0.0, 1.0) * 2.0
        p = make(LAW_SQ, 1.0, -0.5 * threshold, 1.0, 0.5 * threshold)
        assert classify(p) is CaseId.R1R3_VACUUM

    def test_no_vacuum_case_for_isothermal_law(self):
        p = make(LAW_LOG, 1.0, 0.0, 4.0, 50.0)
        assert classify(p) is CaseId.R1R3

    def test_generated_cases_recovered(self):
        rng = np.random.default_rng(41)
        for case in ALL_CASES:
            for _ in range(20):
                p, _ = problem_for_case(case, rng)
                assert classify(p) is case, (case, p)

    def test_near_boundary_reported(self):
        p = make(LAW_LOG, 1.0, 0.0, 4.0, -1.5 + 1e-13)
        assert classify(p) is CaseId.SINGLE_S
        assert near_boundaries(p) == ("single-shock",)

    def test_mismatched_tangential_velocity_rejected(self):
        with pytest.raises(DomainError):
            RiemannProblem(LAW_SQ, State(1, 0.0, 0), State(1, 0.1, 0))


class TestRotation:
    def test_involution(self):
        p = make(LAW_SQ, 1.0, 0.3, 2.0, -0.7, v1=0.4)
        assert rotate_180(rotate_180(p)) == p

    def test_case_mapping(self):
        rng = np.random.default_rng(17)
        swaps = {CaseId.R1S3: CaseId.S1R3, CaseId.S1R3: CaseId.R1S3}
        for case in ALL_CASES:
            for _ in range(10):
                p, _ = problem_for_case(case, rng)
                rotated_case = classify(rotate_180(p))
                assert rotated_case is swaps.get(case, case)

    def test_single_wave_families_swap(self):
        shock = make(LAW_LOG, 1.0, 0.0, 4.0, -1.5)
        rare = make(LAW_SQ, 4.0, 0.0, 1.0, abs(rarefaction_integral(LAW_SQ, 4.0, 1.0)))
        for p in (shock, rare):
            fam = solve_standard(p).waves[0].family
            fam_rot = solve_standard(rotate_180(p)).waves[0].family
            assert {fam, fam_rot} == {1, 3}

    def test_constant_rotation_negates_velocities(self):
        p = make(LAW_SQ, 2.0, 0.7, 2.0, 0.7, v1=-0.2)
        q = rotate_180(p)
        assert classify(q) is CaseId.CONSTANT
        assert q.left == State(2.0, 0.2, -0.7) and q.right == q.left


class TestSolveStandard:
    def test_single_shock_speed_example(self):
        s = solve_standard(make(LAW_LOG, 1, 0, 4, -1.5))
        assert s.middle is None
        assert s.waves[0].speeds[0] == pytest.approx(-2.0, rel=1e-14)

    def test_constant_solution_is_empty(self):
        s = solve_standard(make(LAW_SQ, 2, 3, 2, 3))
        assert s.case is CaseId.CONSTANT
        assert s.middle is None and s.waves == ()

    def test_two_rarefactions_closed_form_middle(self):
        s = solve_standard(make(LAW_SQ, 1, -1, 1, 1))
        assert s.case is CaseId.R1R3
        assert s.middle.rho == pytest.approx(0.25, rel=1e-12)

    def test_vacuum_middle(self):
        s = solve_standard(make(LAW_SQ, 1, -2, 1, 2))
        assert s.case is CaseId.R1R3_VACUUM
        assert s.middle.rho == 0.0
        assert math.isnan(s.middle.v2)
        w1, w3 = s.waves
        assert w1.speeds[1] <= w3.speeds[0]

    def test_generated_middle_state_recovered(self):
        rng = np.random.default_rng(42)
        for case in TWO_WAVE_CASES:
            for _ in range(25):
                p, rho_m = problem_for_case(case, rng)
                s = solve_standard(p)
                assert s.middle.rho == pytest.approx(rho_m, rel=1e-9)

    def test_middle_density_monotonicity(self):
        rng = np.random.default_rng(43)
        for case in TWO_WAVE_CASES:
            for _ in range(25):
                p, _ = problem_for_case(case, rng)
                rho_m = solve_standard(p).middle.rho
                rl, rr = p.left.rho, p.right.rho
                if case is CaseId.R1R3:
                    assert rho_m < min(rl, rr)
                elif case is CaseId.S1S3:
                    assert rho_m > max(rl, rr)
                else:
                    assert min(rl, rr) < rho_m < max(rl, rr)

    def test_wave_speeds_nondecreasing(self):
        rng = np.random.default_rng(44)
        for case in ALL_CASES:
            for _ in range(15):
                p, _ = problem_for_case(case, rng)
                s = solve_standard(p)
                speeds = [v for w in s.waves for v in (w.leftmost, w.rightmost)]
                assert speeds == sorted(speeds), (case, speeds)

    def test_isothermal_huge_jump_reports_bracket(self):
        with pytest.raises(BracketError) as err:
            solve_standard(make(LAW_LOG, 1.0, 0.0, 1.0, 150.0))
        assert err.value.lo < err.value.hi


class TestVerifyStandard:
    def test_generated_solutions_pass(self):
        rng = np.random.default_rng(45)
        for case in ALL_CASES:
            for _ in range(10):
                p, _ = problem_for_case(case, rng)
                s = solve_standard(p)
                c = verify_standard(p, s)
                assert c.overall, (case, c.failed())

    def test_single_shock_entropy_strictly_dissipative(self):
        p = make(LAW_LOG, 1, 0, 4, -1.5)
        c = verify_standard(p, solve_standard(p))
        assert c.entry("shock1.entropy-production").value > 0.0

    def test_constant_certificate_vacuous(self):
        p = make(LAW_SQ, 2, 3, 2, 3)
        c = verify_standard(p, solve_standard(p))
        assert c.overall

    def test_corrupted_middle_density_fails(self):
        rng = np.random.default_rng(46)
        p, _ = problem_for_case(CaseId.S1R3, rng)
        s = solve_standard(p)
        bad = dataclasses.replace(
            s, middle=dataclasses.replace(s.middle, rho=1.01 * s.middle.rho)
        )
        c = verify_standard(p, bad)
        assert not c.overall
        rh_fail = [
            e
            for e in c.failed()
            if ".mass" in e.label or ".momentum" in e.label
        ]
        assert rh_fail

    def test_near_boundary_is_informational(self):
        p = make(LAW_LOG, 1.0, 0.0, 4.0, -1.5 + 1e-13)
        c = verify_standard(p, solve_standard(p))
        assert c.overall
        assert any(e.label.startswith("near-boundary") for e in c.entries)
