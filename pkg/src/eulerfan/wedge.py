"""Auxiliary-state constructions: split a shock-bearing problem at a state on
the right wave curve, carry a fan subsolution on the left piece, solve the
right piece classically, and certify that the two glue (mu1 < mu2)."""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import certificate as cert
from .certificate import Certificate
from .eos import pressure
from .errors import ConstructionError, DomainError
from .riemann import (
    RAREFACTION,
    SHOCK,
    CaseId,
    RiemannProblem,
    StandardSolution,
    classify,
    solve_standard,
    verify_standard,
)
from .subsolution import (
    EQUATION_TOL,
    STRICT_TOL,
    FanSubsolution,
    lift_to_full,
    reduced_from,
    search_feasible,
    verify_full,
)
from .wavecurves import (
    State,
    lambda3,
    pure_shock_speed,
    rarefaction_integral,
    shock_bracket,
)

# Relative tolerance for the wave-curve membership of the auxiliary state.
CURVE_TOL = 1e-11


@dataclass(frozen=True)
class WedgeConstruction:
    """A successful auxiliary-state split.

    ``problem_tilde`` (left data to u2) carries the fan subsolution ``sub``;
    ``problem_wedge`` (u2 to right data) is solved classically by
    ``right_wave``.  ``mu2`` is the left edge of the classical wave,
    ``glue_margin`` = mu2 - mu1 > 0, and ``perturbation`` is the final
    fraction of the available density gap used to place u2.
    """

    u2: State
    problem_tilde: RiemannProblem
    problem_wedge: RiemannProblem
    sub: FanSubsolution
    right_wave: StandardSolution
    mu2: float
    glue_margin: float
    perturbation: float


def _attempt_subsolution(tilde, rho_ref, search_opts):
    """Subsolution for a perturbed problem, or a failure reason string."""
    if classify(tilde) is not CaseId.S1R3:
        return "perturbed-problem-not-shock-rarefaction"
    found = search_feasible(tilde, **search_opts)
    if found is None:
        return "no-feasible-pair"
    rho1, delta2 = found
    if not rho1 < rho_ref:
        return "rho1-not-below-reference"
    sub = lift_to_full(tilde, reduced_from(tilde, rho1, delta2))
    if not verify_full(tilde, sub).overall:
        return "full-verification-failed"
    return sub


def _classical_right(problem, want_case, want_kind):
    """Single classical 3-wave for the right piece, or a failure reason."""
    if classify(problem) is not want_case:
        return None, "right-problem-misclassified"
    wave_solution = solve_standard(problem)
    waves = wave_solution.waves
    if len(waves) != 1 or waves[0].family != 3 or waves[0].kind != want_kind:
        return None, "right-problem-not-a-single-3-wave"
    if not verify_standard(problem, wave_solution).overall:
        return None, "right-wave-verification-failed"
    return wave_solution, None


def build_sr(
    p: RiemannProblem,
    *,
    initial_fraction: float = 0.5,
    max_halvings: int = 40,
    **search_opts,
) -> WedgeConstruction:
    """Auxiliary-state construction for 1-shock / 3-rarefaction data.

    The auxiliary state u2 sits on the 3-rarefaction curve through the right
    state, at density rho2 = rho_m + s * (rho+ - rho_m).  The fraction s
    starts at ``initial_fraction`` and halves (at most ``max_halvings``
    times) until the left piece admits a fan subsolution with rho1 below the
    middle density; existence for small enough s is guaranteed, but no usable
    radius is, so the schedule shrinks geometrically to machine scale.
    Attempts at successive s values are strictly sequential.

    Rotated input: for 1-rarefaction / 3-shock data the caller applies
    rotate_180 first.
    """
    if classify(p) is not CaseId.S1R3:
        raise DomainError(
            "the construction needs 1-shock/3-rarefaction data; "
            "rotate 1-rarefaction/3-shock data first"
        )
    law = p.law
    middle = solve_standard(p).middle
    rho_m = middle.rho
    rr, vr2 = p.right.rho, p.right.v2
    attempts = []
    s = initial_fraction
    for _ in range(max_halvings + 1):
        rho2 = rho_m + s * (rr - rho_m)
        v22 = vr2 - rarefaction_integral(law, rho2, rr)
        u2 = State(rho2, p.left.v1, v22)
        tilde = RiemannProblem(law, p.left, u2)
        outcome = _attempt_subsolution(tilde, rho_m, search_opts)
        if isinstance(outcome, str):
            attempts.append({"s": s, "rho2": rho2, "failure": outcome})
            s *= 0.5
            continue
        sub = outcome
        wedge_problem = RiemannProblem(law, u2, p.right)
        right_wave, failure = _classical_right(wedge_problem, CaseId.SINGLE_R, RAREFACTION)
        if failure is not None:
            attempts.append({"s": s, "rho2": rho2, "failure": failure})
            s *= 0.5
            continue
        mu2 = lambda3(law, u2)
        glue = mu2 - sub.mu1
        if not glue > 0.0:
            attempts.append({"s": s, "rho2": rho2, "failure": "nonpositive-glue-margin"})
            s *= 0.5
            continue
        return WedgeConstruction(
            u2=u2,
            problem_tilde=tilde,
            problem_wedge=wedge_problem,
            sub=sub,
            right_wave=right_wave,
            mu2=mu2,
            glue_margin=glue,
            perturbation=s,
        )
    raise ConstructionError(attempts)


def build_s(
    p: RiemannProblem,
    *,
    initial_fraction: float = 0.5,
    max_halvings: int = 40,
    **search_opts,
) -> WedgeConstruction:
    """Auxiliary-state construction for single 1-shock data.

    Here u2 sits on the 3-shock curve through the right state at density
    rho2 = (1 + s) * rho+, subject to the side condition that the auxiliary
    shock is weaker than the rarefaction integral between the data densities;
    s halves whenever that condition or the subsolution search fails.  The
    shrink is observable in the returned ``perturbation``.

    Rotated input: 3-shock data (rho- > rho+) is the caller's job to rotate.
    """
    if classify(p) is not CaseId.SINGLE_S:
        raise DomainError("the construction needs single-shock data")
    if not p.left.rho < p.right.rho:
        raise DomainError("3-shock data; rotate it to a 1-shock first")
    law = p.law
    rl, rr, vr2 = p.left.rho, p.right.rho, p.right.v2
    cap = rarefaction_integral(law, rl, rr)
    attempts = []
    s = initial_fraction
    for _ in range(max_halvings + 1):
        rho2 = rr * (1.0 + s)
        jump = shock_bracket(law, rho2, rr)
        if not jump < cap:
            attempts.append({"s": s, "rho2": rho2, "failure": "aux-shock-not-weaker"})
            s *= 0.5
            continue
        u2 = State(rho2, p.left.v1, vr2 + jump)
        tilde = RiemannProblem(law, p.left, u2)
        outcome = _attempt_subsolution(tilde, rr, search_opts)
        if isinstance(outcome, str):
            attempts.append({"s": s, "rho2": rho2, "failure": outcome})
            s *= 0.5
            continue
        sub = outcome
        wedge_problem = RiemannProblem(law, u2, p.right)
        right_wave, failure = _classical_right(wedge_problem, CaseId.SINGLE_S, SHOCK)
        if failure is not None:
            attempts.append({"s": s, "rho2": rho2, "failure": failure})
            s *= 0.5
            continue
        mu2 = pure_shock_speed(u2, p.right)
        glue = mu2 - sub.mu1
        if not glue > 0.0:
            attempts.append({"s": s, "rho2": rho2, "failure": "nonpositive-glue-margin"})
            s *= 0.5
            continue
        return WedgeConstruction(
            u2=u2,
            problem_tilde=tilde,
            problem_wedge=wedge_problem,
            sub=sub,
            right_wave=right_wave,
            mu2=mu2,
            glue_margin=glue,
            perturbation=s,
        )
    raise ConstructionError(attempts)


def verify_construction(
    p: RiemannProblem,
    w: WedgeConstruction,
    *,
    tol_eq: float = EQUATION_TOL,
    tol_strict: float = STRICT_TOL,
) -> Certificate:
    """Glue-level certificate for a construction built from problem ``p``:
    speed ordering mu0 < mu1 < mu2, the wedge density below its reference,
    wave-curve membership of the auxiliary state, and the chain bounding mu1
    from above through the wedge's positive normal-stress excess."""
    law = w.problem_tilde.law
    is_rarefaction = w.right_wave.waves[0].kind == RAREFACTION
    entries = [
        cert.strict("speeds.mu0-before-mu1", w.sub.mu1 - w.sub.mu0, tol_strict, w.sub.mu0, w.sub.mu1),
        cert.strict("speeds.mu1-before-mu2", w.mu2 - w.sub.mu1, tol_strict, w.sub.mu1, w.mu2),
    ]
    if is_rarefaction:
        rho_ref = solve_standard(p).middle.rho
    else:
        rho_ref = p.right.rho
    entries.append(
        cert.strict(
            "wedge-density-below-reference", rho_ref - w.sub.rho1, tol_strict, rho_ref, w.sub.rho1
        )
    )
    rho2 = w.u2.rho
    if is_rarefaction:
        entries.append(cert.strict("aux-density-above-middle", rho2 - rho_ref, tol_strict, rho2, rho_ref))
        entries.append(cert.strict("aux-density-below-right", p.right.rho - rho2, tol_strict, p.right.rho, rho2))
        entries.append(
            cert.equation(
                "aux-on-rarefaction-curve",
                p.right.v2 - w.u2.v2,
                rarefaction_integral(law, rho2, p.right.rho),
                CURVE_TOL,
            )
        )
    else:
        entries.append(cert.strict("aux-density-above-right", rho2 - p.right.rho, tol_strict, rho2, p.right.rho))
        entries.append(
            cert.equation(
                "aux-on-shock-curve",
                w.u2.v2 - p.right.v2,
                shock_bracket(law, rho2, p.right.rho),
                CURVE_TOL,
            )
        )
        entries.append(
            cert.strict(
                "aux-shock-weaker-than-rarefaction",
                rarefaction_integral(law, p.left.rho, p.right.rho)
                - shock_bracket(law, rho2, p.right.rho),
                tol_strict,
                rarefaction_integral(law, p.left.rho, p.right.rho),
                shock_bracket(law, rho2, p.right.rho),
            )
        )
    # positive delta1 forces (mu1 - v22)^2 below the chord slope ratio
    bound = w.u2.v2 + math.sqrt(
        (w.sub.rho1 / rho2)
        * (pressure(law, w.sub.rho1) - pressure(law, rho2))
        / (w.sub.rho1 - rho2)
    )
    entries.append(cert.strict("mu1-upper-bound", bound - w.sub.mu1, tol_strict, bound, w.sub.mu1))
    entries.append(cert.nonstrict("mu1-bound-below-mu2", w.mu2 - bound, tol_strict, w.mu2, bound))
    return Certificate(tuple(entries))


def fan_geometry(w: WedgeConstruction, t: float) -> list[tuple[str, float, float]]:
    """Labeled x2-intervals of the glued solution at time t > 0.

    Five regions left to right: the left data state, the wedge carrying the
    relaxed data, the auxiliary state, the classical 3-wave (a band for a
    rarefaction, a zero-width line for a shock), and the right data state.
    Nondegenerate breakpoints are strictly increasing and scale linearly
    with t.
    """
    if not (isinstance(t, (int, float)) and t > 0.0):
        raise DomainError("time must be positive")
    x0 = w.sub.mu0 * t
    x1 = w.sub.mu1 * t
    wave = w.right_wave.waves[0]
    inf = math.inf
    if wave.kind == RAREFACTION:
        head, tail = wave.speeds
        return [
            ("left", -inf, x0),
            ("wedge", x0, x1),
            ("aux", x1, head * t),
            ("fan-3", head * t, tail * t),
            ("right", tail * t, inf),
        ]
    x2 = wave.speeds[0] * t
    return [
        ("left", -inf, x0),
        ("wedge", x0, x1),
        ("aux", x1, x2),
        ("shock-3", x2, x2),
        ("right", x2, inf),
    ]
