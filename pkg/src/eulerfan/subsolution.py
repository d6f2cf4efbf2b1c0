"""Fan-subsolution algebra: closed-form interface speeds and wedge-state
quantities, the reduced feasibility conditions in (rho1, delta2), the
deterministic feasibility search, the lift from reduced to full unknowns, and
the verifier of the full condition system."""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import certificate as cert
from .certificate import Certificate
from .eos import GasLaw, internal_energy, pressure
from .errors import CriterionError, DomainError, InvariantError
from .riemann import CaseId, RiemannProblem, classify, solve_standard
from .wavecurves import shock_bracket

EQUATION_TOL = 1e-9
STRICT_TOL = 1e-12

# delta2 is scanned over at most this magnitude; the admissibility conditions
# are affine in delta2, so a one-dimensional bracket below the cap is exact.
DELTA2_CAP = 1e8

# The search only returns points whose deltas clear this absolute floor:
# the full system needs the product delta1 * delta2 strictly positive at
# tolerance, so points hugging the 1e-12 margin line are too fragile to lift.
SEARCH_DELTA_FLOOR = 2e-6


@dataclass(frozen=True)
class ReducedSubsolution:
    """Reduced wedge unknowns.

    Invariants (checked by certificates, not the constructor): mu0 < mu1 and
    both delta1, delta2 positive.
    """

    rho1: float
    v12: float
    mu0: float
    mu1: float
    delta1: float
    delta2: float


@dataclass(frozen=True)
class FanSubsolution:
    """Full wedge unknowns: density, velocity (v11, v12), the two independent
    entries (u11, u12) of the traceless symmetric stress deviator, the kinetic
    bound C1, and the fan speeds."""

    rho1: float
    v11: float
    v12: float
    u11: float
    u12: float
    c1: float
    mu0: float
    mu1: float


def discriminant(p: RiemannProblem) -> float:
    """(rho- - rho+)(p(rho-) - p(rho+)) - rho+ rho- (v-2 - v+2)^2.

    Positive exactly when the data's velocity jump is smaller in magnitude
    than the shock bracket of its densities; the square roots of the interface
    speed formulas need it nonnegative.
    """
    rl, rr = p.left.rho, p.right.rho
    dp = pressure(p.law, rl) - pressure(p.law, rr)
    return (rl - rr) * dp - rr * rl * (p.left.v2 - p.right.v2) ** 2


def _disc_clamped(p: RiemannProblem) -> float:
    """Discriminant clamped to zero inside its roundoff band.

    Single-shock data sits exactly on the zero of the discriminant, and the
    auxiliary-state constructions evaluate arbitrarily close to it, so small
    negative roundoff must not kill the square roots.
    """
    rl, rr = p.left.rho, p.right.rho
    dp = pressure(p.law, rl) - pressure(p.law, rr)
    t1 = (rl - rr) * dp
    t2 = rr * rl * (p.left.v2 - p.right.v2) ** 2
    d = t1 - t2
    if d < -STRICT_TOL * cert.scale_of(t1, t2):
        raise CriterionError(
            f"negative discriminant {d!r}: no fan subsolution can exist"
        )
    return max(d, 0.0)


def _require_window(p: RiemannProblem, rho1: float) -> None:
    if not (p.left.rho < rho1 < p.right.rho):
        raise DomainError(
            f"rho1 must lie strictly between the data densities, got {rho1!r}"
        )


def fan_speeds(p: RiemannProblem, rho1: float) -> tuple[float, float]:
    """Closed-form interface speeds (mu0, mu1) of the wedge with density rho1.

    The square-root signs are the unique choice with mu0 < mu1.
    """
    _require_window(p, rho1)
    d = _disc_clamped(p)
    rl, rr = p.left.rho, p.right.rho
    base = (rl * p.left.v2 - rr * p.right.v2) / (rl - rr)
    mu0 = base + math.sqrt(d * (rr - rho1) / (rho1 - rl)) / (rl - rr)
    mu1 = base - math.sqrt(d * (rho1 - rl) / (rr - rho1)) / (rl - rr)
    return mu0, mu1


def v12_star(p: RiemannProblem, rho1: float) -> float:
    """Wedge normal velocity forced by the mass jump at the left interface."""
    _require_window(p, rho1)
    d = _disc_clamped(p)
    rl, rr = p.left.rho, p.right.rho
    root = math.sqrt(d * (rho1 - rl) * (rr - rho1))
    return (
        -rl * p.left.v2 * (rr - rho1) - rr * p.right.v2 * (rho1 - rl) + root
    ) / (rho1 * (rl - rr))


def delta1_star(p: RiemannProblem, rho1: float) -> float:
    """Wedge normal-stress excess forced by the momentum jump on the left."""
    _require_window(p, rho1)
    d = _disc_clamped(p)
    rl, rr = p.left.rho, p.right.rho
    term = rr * (p.left.v2 - p.right.v2) + math.sqrt(d * (rr - rho1) / (rho1 - rl))
    return (
        -(pressure(p.law, rho1) - pressure(p.law, rl)) / rho1
        + rl * (rho1 - rl) / (rho1**2 * (rl - rr) ** 2) * term**2
    )


def reduced_from(p: RiemannProblem, rho1: float, delta2: float) -> ReducedSubsolution:
    """Assemble the reduced unknowns determined by the pair (rho1, delta2)."""
    mu0, mu1 = fan_speeds(p, rho1)
    return ReducedSubsolution(
        rho1=rho1,
        v12=v12_star(p, rho1),
        mu0=mu0,
        mu1=mu1,
        delta1=delta1_star(p, rho1),
        delta2=delta2,
    )


def reduced_residuals(
    p: RiemannProblem, r: ReducedSubsolution
) -> tuple[tuple[str, float, float], ...]:
    """(label, lhs, rhs) for the four jump equations of the reduced system."""
    law = p.law
    rl, vl2 = p.left.rho, p.left.v2
    rr, vr2 = p.right.rho, p.right.v2
    pl, p1, pr = pressure(law, rl), pressure(law, r.rho1), pressure(law, rr)
    flux1 = r.rho1 * (r.v12**2 + r.delta1)
    return (
        ("mass-left", r.mu0 * (rl - r.rho1), rl * vl2 - r.rho1 * r.v12),
        (
            "momentum-left",
            r.mu0 * (rl * vl2 - r.rho1 * r.v12),
            rl * vl2**2 - flux1 + pl - p1,
        ),
        ("mass-right", r.mu1 * (r.rho1 - rr), r.rho1 * r.v12 - rr * vr2),
        (
            "momentum-right",
            r.mu1 * (r.rho1 * r.v12 - rr * vr2),
            flux1 - rr * vr2**2 + p1 - pr,
        ),
    )


def admissibility_bracket(law: GasLaw, rho_a: float, rho_b: float) -> float:
    """p(a) + p(b) - 2ab (eps(a) - eps(b))/(a - b); strictly positive for any
    two distinct densities."""
    if rho_a == rho_b:
        raise DomainError("needs two distinct densities")
    return (
        pressure(law, rho_a)
        + pressure(law, rho_b)
        - 2.0
        * rho_a
        * rho_b
        * (internal_energy(law, rho_a) - internal_energy(law, rho_b))
        / (rho_a - rho_b)
    )


class _ReducedEvaluator:
    """Per-rho1 cache of the star functions and of the affine-in-delta2
    structure of the two entropy margins, so scanning many delta2 values for
    one rho1 costs a handful of flops each."""

    __slots__ = (
        "rho1",
        "window_ok",
        "m_above",
        "s_above",
        "m_below",
        "s_below",
        "d1",
        "lhs_l",
        "rhs_l0",
        "slope_l",
        "lhs_r",
        "rhs_r0",
        "slope_r",
    )

    def __init__(self, p: RiemannProblem, rho1: float):
        rl, vl2 = p.left.rho, p.left.v2
        rr, vr2 = p.right.rho, p.right.v2
        self.rho1 = rho1
        self.m_above = rho1 - rl
        self.s_above = cert.scale_of(rl, rho1)
        self.m_below = rr - rho1
        self.s_below = cert.scale_of(rr, rho1)
        self.window_ok = rl < rho1 < rr
        if not self.window_ok:
            return
        law = p.law
        v12 = v12_star(p, rho1)
        d1 = delta1_star(p, rho1)
        self.d1 = d1
        coupling_l = rl * rho1 * (v12 - vl2) / (rl - rho1)
        coupling_r = rho1 * rr * (vr2 - v12) / (rho1 - rr)
        self.lhs_l = (v12 - vl2) * admissibility_bracket(law, rl, rho1)
        self.rhs_l0 = d1 * rho1 * (v12 + vl2) - d1 * coupling_l
        self.slope_l = -coupling_l
        self.lhs_r = (vr2 - v12) * admissibility_bracket(law, rho1, rr)
        self.rhs_r0 = -d1 * rho1 * (vr2 + v12) + d1 * coupling_r
        self.slope_r = coupling_r

    def rows(self, delta2: float):
        rows = [
            ("rho1-above-left", self.m_above, self.s_above),
            ("rho1-below-right", self.m_below, self.s_below),
            ("delta2-positive", delta2, cert.scale_of(delta2)),
        ]
        if self.window_ok:
            rows.append(("delta1-positive", self.d1, cert.scale_of(self.d1)))
            rhs_l = self.rhs_l0 + delta2 * self.slope_l
            rows.append(("entropy-left", rhs_l - self.lhs_l, cert.scale_of(self.lhs_l, rhs_l)))
            rhs_r = self.rhs_r0 + delta2 * self.slope_r
            rows.append(("entropy-right", rhs_r - self.lhs_r, cert.scale_of(self.lhs_r, rhs_r)))
        return rows

    def strictly_feasible(self, delta2: float, tol: float) -> bool:
        if not self.window_ok:
            return False
        return all(margin > tol * scale for _, margin, scale in self.rows(delta2))

    def robustly_feasible(self, delta2: float, tol: float) -> bool:
        # identical arithmetic to rows(), inlined: this is the search's inner
        # loop over thousands of grid points
        if delta2 < SEARCH_DELTA_FLOOR or not self.window_ok:
            return False
        d1 = self.d1
        if d1 < SEARCH_DELTA_FLOOR:
            return False
        if not (
            self.m_above > tol * self.s_above
            and self.m_below > tol * self.s_below
            and delta2 > tol * (delta2 if delta2 > 1.0 else 1.0)
            and d1 > tol * (d1 if d1 > 1.0 else 1.0)
        ):
            return False
        rhs_l = self.rhs_l0 + delta2 * self.slope_l
        scale_l = max(1.0, abs(self.lhs_l), abs(rhs_l))
        if not rhs_l - self.lhs_l > tol * scale_l:
            return False
        rhs_r = self.rhs_r0 + delta2 * self.slope_r
        scale_r = max(1.0, abs(self.lhs_r), abs(rhs_r))
        return rhs_r - self.lhs_r > tol * scale_r


def _margin_rows(p, rho1, delta2):
    """(label, margin, scale) for every reduced condition at (rho1, delta2).

    The window and positivity margins come first; the star-function margins
    are only defined (and only appended) when rho1 lies inside the open
    density window.
    """
    return _ReducedEvaluator(p, rho1).rows(delta2)


def check_reduced(
    p: RiemannProblem,
    rho1: float,
    delta2: float,
    *,
    tol_strict: float = STRICT_TOL,
) -> Certificate:
    """Certificate of the reduced feasibility conditions at (rho1, delta2).

    The density window, delta positivity, and the two entropy inequalities,
    the latter evaluated with the closed-form wedge quantities.  When rho1
    sits outside the open window the star functions are undefined and only
    the (failing) window margins are reported.
    """
    if not p.left.rho < p.right.rho:
        raise DomainError("the reduced conditions need rho- < rho+")
    entries = []
    for label, margin, scale in _margin_rows(p, rho1, delta2):
        kind = cert.NONSTRICT if label.startswith("entropy") else cert.STRICT
        entries.append(cert.make_entry(label, kind, margin, tol_strict * scale))
    return Certificate(tuple(entries))


def _feasible_delta2(ev: _ReducedEvaluator, tol, cap, max_halvings):
    """Largest delta2 on a halving schedule that keeps every margin strict.

    Both entropy margins are affine in delta2, so the feasible set in delta2
    is an interval touching 0; the upper start point is a crude positive-root
    bound from the base values and slopes.
    """
    if not ev.window_ok:
        return None
    if ev.d1 < SEARCH_DELTA_FLOOR or not ev.d1 > tol * cert.scale_of(ev.d1):
        return None
    a0 = ev.rhs_l0 - ev.lhs_l
    b0 = ev.rhs_r0 - ev.lhs_r
    if not (
        a0 > tol * cert.scale_of(ev.lhs_l, ev.rhs_l0)
        and b0 > tol * cert.scale_of(ev.lhs_r, ev.rhs_r0)
    ):
        return None
    denom = max(abs(ev.slope_l), abs(ev.slope_r), 1e-300)
    delta2 = min(10.0 * (abs(a0) + abs(b0)) / denom, cap)
    for _ in range(max_halvings):
        if delta2 < SEARCH_DELTA_FLOOR:
            return None
        if ev.robustly_feasible(delta2, tol):
            return delta2
        delta2 *= 0.5
    return None


def _guided_candidates(p, scan_points):
    """rho1 candidates mirroring the perturbation argument: approach either
    the left density or the middle density of the standard solution,
    whichever end the left normal velocity selects."""
    if classify(p) is not CaseId.S1R3:
        return []
    rho_m = solve_standard(p).middle.rho
    jump = shock_bracket(p.law, p.left.rho, rho_m)
    threshold = rho_m * jump / (2.0 * (rho_m - p.left.rho))
    gap = rho_m - p.left.rho
    if p.left.v2 > threshold:
        return [p.left.rho + gap * 0.5**k for k in range(1, scan_points + 1)]
    return [rho_m - gap * 0.5**k for k in range(1, scan_points + 1)]


def search_feasible(
    p: RiemannProblem,
    *,
    scan_points: int = 64,
    grid: int = 128,
    tol_strict: float = STRICT_TOL,
    delta2_cap: float = DELTA2_CAP,
    max_halvings: int = 200,
) -> tuple[float, float] | None:
    """Deterministic search for a strictly feasible pair (rho1, delta2).

    Two stages, both with fixed scan orders so results are reproducible
    byte for byte.  First a guided scan walks rho1 geometrically toward the
    end of the (rho-, rho_m) interval suggested by the left velocity, and for
    each candidate halves delta2 downward from an affine upper bound.  If
    that fails, a full log-spaced grid over (rho1, delta2) is tried.  The
    first feasible point in scan order wins.  Returned points additionally
    keep both deltas above SEARCH_DELTA_FLOOR so that the lifted full
    solution is strict at tolerance, not just the reduced one.

    Returns None when nothing feasible is found; an empty result is a
    certified outcome of this search, not an error.
    """
    if discriminant(p) <= 0.0:
        raise CriterionError("the search requires a positive discriminant")
    rl, rr = p.left.rho, p.right.rho
    if not rl < rr:
        return None
    for rho1 in _guided_candidates(p, scan_points):
        found = _feasible_delta2(
            _ReducedEvaluator(p, rho1), tol_strict, delta2_cap, max_halvings
        )
        if found is not None:
            return rho1, found
    lo_exp = math.log10(SEARCH_DELTA_FLOOR)
    hi_exp = math.log10(delta2_cap)
    delta2_grid = [
        10.0 ** (lo_exp + (hi_exp - lo_exp) * (j + 0.5) / grid) for j in range(grid)
    ]
    for i in range(grid):
        rho1 = rl * (rr / rl) ** ((i + 0.5) / grid)
        if not (rl < rho1 < rr):
            continue
        ev = _ReducedEvaluator(p, rho1)
        if not ev.window_ok or ev.d1 < SEARCH_DELTA_FLOOR:
            continue
        for delta2 in delta2_grid:
            if ev.robustly_feasible(delta2, tol_strict):
                return rho1, delta2
    return None


def lift_to_full(p: RiemannProblem, r: ReducedSubsolution) -> FanSubsolution:
    """Reconstruct the full wedge unknowns from a reduced solution.

    The tangential velocity is inherited from the data, the off-diagonal
    stress entry pairs it with the normal velocity, and C1 and u11 place the
    two positivity gaps at exactly delta1 and delta2.  The reconstruction is
    validated operationally: every lifted solution must pass verify_full.
    """
    if not (r.delta1 > 0.0 and r.delta2 > 0.0):
        raise InvariantError("the lift needs positive delta1 and delta2")
    w1 = p.left.v1
    c1 = w1**2 + r.v12**2 + r.delta1 + r.delta2
    u11 = 0.5 * c1 - r.v12**2 - r.delta1
    u12 = w1 * r.v12
    return FanSubsolution(
        rho1=r.rho1,
        v11=w1,
        v12=r.v12,
        u11=u11,
        u12=u12,
        c1=c1,
        mu0=r.mu0,
        mu1=r.mu1,
    )


def extract_deltas(f: FanSubsolution) -> tuple[float, float]:
    """Recover (delta1, delta2) from the full unknowns; inverse of the lift."""
    d1 = 0.5 * f.c1 - f.v12**2 - f.u11
    d2 = f.c1 - f.v11**2 - f.v12**2 - d1
    return d1, d2


def verify_full(
    p: RiemannProblem,
    f: FanSubsolution,
    *,
    tol_eq: float = EQUATION_TOL,
    tol_strict: float = STRICT_TOL,
) -> Certificate:
    """Certificate of the full condition system: speed ordering, the six jump
    equations of both interfaces, the two pointwise subsolution inequalities,
    and the two interface entropy inequalities.  Never raises; every
    violation is reported as a failing entry."""
    law = p.law
    rl, vl1, vl2 = p.left.rho, p.left.v1, p.left.v2
    rr, vr1, vr2 = p.right.rho, p.right.v1, p.right.v2
    r1, w1, w2 = f.rho1, f.v11, f.v12
    pl, p1, pr = pressure(law, rl), pressure(law, r1), pressure(law, rr)
    el, e1, er = (
        internal_energy(law, rl),
        internal_energy(law, r1),
        internal_energy(law, rr),
    )
    half_c = 0.5 * f.c1
    entries = [
        cert.strict("speed-order", f.mu1 - f.mu0, tol_strict, f.mu0, f.mu1),
        cert.equation("mass-left", f.mu0 * (rl - r1), rl * vl2 - r1 * w2, tol_eq),
        cert.equation(
            "momentum-tangential-left",
            f.mu0 * (rl * vl1 - r1 * w1),
            rl * vl1 * vl2 - r1 * f.u12,
            tol_eq,
        ),
        cert.equation(
            "momentum-normal-left",
            f.mu0 * (rl * vl2 - r1 * w2),
            rl * vl2**2 + r1 * f.u11 + pl - p1 - r1 * half_c,
            tol_eq,
        ),
        cert.equation("mass-right", f.mu1 * (r1 - rr), r1 * w2 - rr * vr2, tol_eq),
        cert.equation(
            "momentum-tangential-right",
            f.mu1 * (r1 * w1 - rr * vr1),
            r1 * f.u12 - rr * vr1 * vr2,
            tol_eq,
        ),
        cert.equation(
            "momentum-normal-right",
            f.mu1 * (r1 * w2 - rr * vr2),
            -r1 * f.u11 - rr * vr2**2 + p1 - pr + r1 * half_c,
            tol_eq,
        ),
        cert.strict(
            "kinetic-energy-bound",
            f.c1 - w1**2 - w2**2,
            tol_strict,
            f.c1,
            w1**2 + w2**2,
        ),
        cert.strict(
            "subsolution-definiteness",
            (half_c - w1**2 + f.u11) * (half_c - w2**2 - f.u11)
            - (f.u12 - w1 * w2) ** 2,
            tol_strict,
            half_c - w1**2 + f.u11,
            half_c - w2**2 - f.u11,
            (f.u12 - w1 * w2) ** 2,
        ),
    ]
    kl = 0.5 * (vl1**2 + vl2**2)
    kr = 0.5 * (vr1**2 + vr2**2)
    lhs_al = f.mu0 * (rl * el + rl * kl - r1 * e1 - r1 * half_c)
    rhs_al = (rl * el + pl) * vl2 - (r1 * e1 + p1) * w2 + rl * vl2 * kl - r1 * w2 * half_c
    entries.append(cert.nonstrict("entropy-left", rhs_al - lhs_al, tol_strict, lhs_al, rhs_al))
    lhs_ar = f.mu1 * (r1 * e1 + r1 * half_c - rr * er - rr * kr)
    rhs_ar = (r1 * e1 + p1) * w2 - (rr * er + pr) * vr2 + r1 * w2 * half_c - rr * vr2 * kr
    entries.append(cert.nonstrict("entropy-right", rhs_ar - lhs_ar, tol_strict, lhs_ar, rhs_ar))
    return Certificate(tuple(entries))
