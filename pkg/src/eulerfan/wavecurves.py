"""Scalar wave-curve building blocks: the rarefaction integral in closed form,
the shock velocity-jump bracket, characteristic speeds, and the mass-jump
speed of a single shock."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .eos import GasLaw, pressure, sound_speed
from .errors import DegenerateShockError, DivergenceError, DomainError


@dataclass(frozen=True)
class State:
    """One constant gas state: density plus tangential (v1) and normal (v2)
    velocity components.  rho == 0 only ever appears as the vacuum edge
    produced by the solver itself."""

    rho: float
    v1: float
    v2: float

    def __post_init__(self):
        if not (math.isfinite(self.rho) and self.rho >= 0.0):
            raise DomainError(f"density must be nonnegative, got {self.rho!r}")


def _sqrt_pd(law: GasLaw, rho: float) -> float:
    # finite vacuum limit; valid for gamma > 1 only, callers guard gamma = 1
    if rho == 0.0:
        return 0.0
    return sound_speed(law, rho)


def rarefaction_integral(law: GasLaw, rho_a: float, rho_b: float) -> float:
    """Integral of sqrt(p'(r))/r for r from rho_a to rho_b, in closed form.

    Antisymmetric under swapping the endpoints.  For gamma > 1 the integrand
    is integrable down to the vacuum, so zero endpoints are allowed; for
    gamma = 1 the integral diverges there.
    """
    if rho_a < 0.0 or rho_b < 0.0:
        raise DomainError("densities must be nonnegative")
    if rho_a == rho_b:
        return 0.0
    if law.isothermal:
        if rho_a == 0.0 or rho_b == 0.0:
            raise DivergenceError("integral diverges at the vacuum for gamma = 1")
        return math.sqrt(law.K) * math.log(rho_b / rho_a)
    return 2.0 / (law.gamma - 1.0) * (_sqrt_pd(law, rho_b) - _sqrt_pd(law, rho_a))


def shock_bracket(law: GasLaw, rho_a: float, rho_b: float) -> float:
    """sqrt((rho_a - rho_b)(p(rho_a) - p(rho_b)) / (rho_a * rho_b)).

    The magnitude of the normal-velocity jump across a shock joining the two
    densities; symmetric in its arguments and zero iff they coincide.
    """
    if rho_a <= 0.0 or rho_b <= 0.0:
        raise DomainError("densities must be positive")
    num = (rho_a - rho_b) * (pressure(law, rho_a) - pressure(law, rho_b))
    return math.sqrt(max(num, 0.0) / (rho_a * rho_b))


def lambda1(law: GasLaw, s: State) -> float:
    """First characteristic speed v2 - sqrt(p'(rho))."""
    if s.rho <= 0.0:
        raise DomainError("characteristic speed needs positive density")
    return s.v2 - sound_speed(law, s.rho)


def lambda3(law: GasLaw, s: State) -> float:
    """Third characteristic speed v2 + sqrt(p'(rho))."""
    if s.rho <= 0.0:
        raise DomainError("characteristic speed needs positive density")
    return s.v2 + sound_speed(law, s.rho)


def pure_shock_speed(left: State, right: State) -> float:
    """Interface speed forced by conservation of mass across a single jump."""
    if left.rho == right.rho:
        raise DegenerateShockError("equal densities leave the shock speed undetermined")
    return (left.rho * left.v2 - right.rho * right.v2) / (left.rho - right.rho)
