import math

import numpy as np
import pytest

import eulerfan.wedge
from eulerfan import (
    CaseId,
    ConstructionError,
    DomainError,
    GasLaw,
    RiemannProblem,
    State,
    build_s,
    build_sr,
    classify,
    fan_geometry,
    rotate_180,
    search_feasible,
    solve_standard,
    verify_construction,
    verify_full,
    verify_standard,
)
from generators import random_case5, random_case6_one_shock

LAW_LOG = GasLaw(1.0, 1.0)

CASE5 = RiemannProblem(LAW_LOG, State(1, 0, 0), State(4, 0, -1))
CASE6 = RiemannProblem(LAW_LOG, State(1, 0, 0), State(4, 0, -1.5))
NO_SUBSOLUTION = RiemannProblem(LAW_LOG, State(1.0, 0.0, 0.0), State(4.0, 0.0, 1.0))


class TestBuildSR:
    def test_hand_example_regression(self):
        w = build_sr(CASE5)
        assert w.perturbation == 0.5
        assert w.u2.rho == pytest.approx(3.5950798960185324, rel=1e-12)
        assert w.u2.v2 == pytest.approx(-1.1067281459884015, rel=1e-12)
        assert w.sub.rho1 == pytest.approx(2.9163898180324868, rel=1e-12)
        assert w.sub.mu0 == pytest.approx(-1.8833188924898632, rel=1e-12)
        assert w.sub.mu1 == pytest.approx(-0.5445828225774819, rel=1e-12)
        assert w.mu2 == pytest.approx(-0.10672814598840152, rel=1e-12)
        assert w.glue_margin == pytest.approx(0.4378546765890804, rel=1e-12)

    def test_bundle_verifies(self):
        w = build_sr(CASE5)
        assert verify_full(w.problem_tilde, w.sub).overall
        assert verify_standard(w.problem_wedge, w.right_wave).overall
        cert = verify_construction(CASE5, w)
        assert cert.overall, cert.failed()

    def test_rho1_below_middle_density(self):
        w = build_sr(CASE5)
        assert w.sub.rho1 < solve_standard(CASE5).middle.rho

    def test_aux_state_on_rarefaction_curve(self):
        w = build_sr(CASE5)
        cert = verify_construction(CASE5, w)
        entry = cert.entry("aux-on-rarefaction-curve")
        assert abs(entry.value) <= entry.tolerance

    def test_rotated_case4_builds_mirrored(self):
        p4 = rotate_180(CASE5)
        assert classify(p4) is CaseId.R1S3
        w = build_sr(rotate_180(p4))
        assert w.glue_margin == pytest.approx(build_sr(CASE5).glue_margin, rel=1e-12)

    def test_two_rarefaction_input_rejected(self):
        p = RiemannProblem(GasLaw(0.5, 2.0), State(1, 0, -1), State(1, 0, 1))
        with pytest.raises(DomainError):
            build_sr(p)

    def test_succeeds_where_direct_search_is_empty(self):
        assert search_feasible(NO_SUBSOLUTION) is None
        w = build_sr(NO_SUBSOLUTION)
        assert w.glue_margin > 0.0
        assert verify_construction(NO_SUBSOLUTION, w).overall

    def test_search_failure_exhausts_schedule(self, monkeypatch):
        monkeypatch.setattr(eulerfan.wedge, "search_feasible", lambda p, **kw: None)
        with pytest.raises(ConstructionError) as err:
            build_sr(CASE5, max_halvings=12)
        attempts = err.value.attempts
        assert len(attempts) == 13
        s_values = [a["s"] for a in attempts]
        assert s_values == [0.5 * 0.5**k for k in range(13)]
        assert all(a["failure"] == "no-feasible-pair" for a in attempts)

    def test_random_batch(self):
        rng = np.random.default_rng(77)
        for _ in range(25):
            p, rho_m = random_case5(rng)
            w = build_sr(p)
            assert w.glue_margin > 0.0
            assert w.sub.rho1 < solve_standard(p).middle.rho
            assert verify_construction(p, w).overall


class TestBuildS:
    def test_hand_example_regression(self):
        w = build_s(CASE6)
        assert w.perturbation == 0.5
        assert w.u2.rho == pytest.approx(6.0, rel=1e-12)
        assert w.u2.v2 == pytest.approx(-1.0917517095361369, rel=1e-12)
        assert w.sub.rho1 == pytest.approx(3.6206728361217024, rel=1e-12)
        assert w.mu2 == pytest.approx(-0.2752551286084106, rel=1e-12)
        assert w.glue_margin == pytest.approx(0.14807934645869036, rel=1e-12)

    def test_bundle_verifies(self):
        w = build_s(CASE6)
        assert verify_full(w.problem_tilde, w.sub).overall
        assert verify_standard(w.problem_wedge, w.right_wave).overall
        cert = verify_construction(CASE6, w)
        assert cert.overall, cert.failed()
        assert w.sub.rho1 < CASE6.right.rho

    def test_mu2_is_mass_jump_speed(self):
        from eulerfan import pure_shock_speed

        w = build_s(CASE6)
        assert w.mu2 == pure_shock_speed(w.u2, CASE6.right)

    def test_side_condition_forces_shrink(self):
        # nearly equal densities: the rarefaction cap is tiny, so the first
        # attempts violate the weaker-shock side condition and s must shrink
        law = GasLaw(1.0, 1.4)
        rl, rr = 3.9, 4.0
        from eulerfan import shock_bracket

        p = RiemannProblem(
            law, State(rl, 0, 0), State(rr, 0, -shock_bracket(law, rl, rr))
        )
        w = build_s(p)
        assert w.perturbation < 0.5
        cert = verify_construction(p, w)
        assert cert.entry("aux-shock-weaker-than-rarefaction").passed

    def test_three_shock_input_rejected(self):
        p = rotate_180(CASE6)
        assert classify(p) is CaseId.SINGLE_S
        with pytest.raises(DomainError):
            build_s(p)
        w = build_s(rotate_180(p))
        assert w.glue_margin > 0.0

    def test_two_shock_input_rejected(self):
        p = RiemannProblem(LAW_LOG, State(1, 0, 0), State(4, 0, -2.5))
        assert classify(p) is CaseId.S1S3
        with pytest.raises(DomainError):
            build_s(p)

    def test_random_batch(self):
        rng = np.random.default_rng(78)
        for _ in range(25):
            p = random_case6_one_shock(rng)
            w = build_s(p)
            assert w.glue_margin > 0.0
            assert verify_construction(p, w).overall


class TestFanGeometry:
    def test_shock_branch_regions(self):
        w = build_s(CASE6)
        regions = fan_geometry(w, 1.0)
        assert [r[0] for r in regions] == ["left", "wedge", "aux", "shock-3", "right"]
        breakpoints = [regions[0][2], regions[1][2], regions[2][2]]
        assert breakpoints == sorted(breakpoints)
        assert breakpoints[0] < breakpoints[1] < breakpoints[2]
        assert regions[3][1] == regions[3][2] == w.mu2

    def test_rarefaction_branch_regions(self):
        w = build_sr(CASE5)
        regions = fan_geometry(w, 1.0)
        assert [r[0] for r in regions] == ["left", "wedge", "aux", "fan-3", "right"]
        interior = [regions[0][2], regions[1][2], regions[2][2], regions[3][2]]
        assert all(a < b for a, b in zip(interior, interior[1:]))

    def test_self_similarity(self):
        w = build_s(CASE6)
        one = fan_geometry(w, 1.0)
        two = fan_geometry(w, 2.0)
        for (_, lo1, hi1), (_, lo2, hi2) in zip(one, two):
            if math.isfinite(lo1):
                assert lo2 == pytest.approx(2.0 * lo1, rel=1e-15)
            if math.isfinite(hi1):
                assert hi2 == pytest.approx(2.0 * hi1, rel=1e-15)

    def test_time_collapses_to_origin(self):
        w = build_s(CASE6)
        tiny = fan_geometry(w, 1e-12)
        for _, lo, hi in tiny[1:-1]:
            assert abs(lo) < 1e-10 and abs(hi) < 1e-10

    def test_nonpositive_time_rejected(self):
        w = build_s(CASE6)
        with pytest.raises(DomainError):
            fan_geometry(w, 0.0)
