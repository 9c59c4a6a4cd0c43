"""Statistical power for two-group binary-outcome studies.

Two estimators for the probability of a positive result when the effect is
real: a closed-form normal approximation and a Monte Carlo simulation of the
same unpooled two-proportion z-test.  The simulation doubles as an
independent oracle for the formula, so the two are kept deliberately aligned
on the test statistic and its variance.

Prospective power only: these functions describe a design, never observed
data (retrospective power has a 1:1 mapping with the p-value and adds
nothing).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import norm

from .core import Probability, check_probability
from .errors import InvalidCountsError, InvalidDesignError


class Sides(enum.Enum):
    ONE_SIDED = "one_sided"
    TWO_SIDED = "two_sided"


class PowerMethod(enum.Enum):
    NORMAL_APPROXIMATION = "normal_approximation"
    MONTE_CARLO = "monte_carlo"


NULL_DESIGN_WARNING = "null design: event rates are equal, power equals alpha"


@dataclass(frozen=True)
class TwoGroupBinaryDesign:
    """A two-group comparison of binary event rates.

    ``p1`` and ``p2`` are the event rates under the alternative; ``alpha``
    is the nominal significance level of the z-test.
    """

    n1: int
    n2: int
    p1: Probability
    p2: Probability
    alpha: Probability
    sides: Sides = Sides.TWO_SIDED

    def __post_init__(self):
        if self.n1 < 1 or self.n2 < 1:
            raise InvalidDesignError(
                f"group sizes must be >= 1, got n1={self.n1}, n2={self.n2}"
            )
        for name in ("p1", "p2", "alpha"):
            value = getattr(self, name)
            check_probability(value, name)
            if not 0.0 < value < 1.0:
                raise InvalidDesignError(f"{name} must be in (0, 1), got {value}")


@dataclass(frozen=True)
class PowerEstimate:
    """A power value plus how it was obtained.

    Monte Carlo estimates carry the iteration count, the seed, and the
    binomial standard error of the rejection fraction.
    """

    power: Probability
    method: PowerMethod
    iterations: int | None = None
    seed: int | None = None
    mc_standard_error: float | None = None
    warnings: tuple[str, ...] = ()


def _critical_z(alpha: float, sides: Sides) -> float:
    if sides is Sides.TWO_SIDED:
        return float(norm.ppf(1.0 - alpha / 2.0))
    return float(norm.ppf(1.0 - alpha))


def two_proportion_power(d: TwoGroupBinaryDesign) -> PowerEstimate:
    """Normal-approximation power of the unpooled two-proportion z-test.

    The rejection probability under the alternative is

        Phi(effect / se - z_crit) [+ Phi(-effect / se - z_crit) two-sided]

    with effect = |p1 - p2| and se the unpooled standard error of the rate
    difference.  A null design (p1 == p2) has power equal to alpha by
    construction and is returned with a warning flag rather than an error.
    """
    if d.p1 == d.p2:
        return PowerEstimate(
            power=d.alpha,
            method=PowerMethod.NORMAL_APPROXIMATION,
            warnings=(NULL_DESIGN_WARNING,),
        )
    se = math.sqrt(d.p1 * (1.0 - d.p1) / d.n1 + d.p2 * (1.0 - d.p2) / d.n2)
    shift = abs(d.p1 - d.p2) / se
    z_crit = _critical_z(d.alpha, d.sides)
    power = float(norm.cdf(shift - z_crit))
    if d.sides is Sides.TWO_SIDED:
        # Rejections in the wrong direction still reject; usually negligible.
        power += float(norm.cdf(-shift - z_crit))
    return PowerEstimate(power=power, method=PowerMethod.NORMAL_APPROXIMATION)


def simulate_two_group_power(
    d: TwoGroupBinaryDesign, iterations: int, seed: int
) -> PowerEstimate:
    """Monte Carlo power: rejection fraction of the unpooled z-test.

    Draws binomial counts per group under (p1, p2), applies the same
    two-proportion z-test the analytic formula approximates, and returns
    the rejection fraction with its binomial standard error.  Deterministic
    for a fixed seed.
    """
    if iterations < 1000:
        raise InvalidDesignError(
            f"at least 1000 iterations required for a usable estimate, got {iterations}"
        )
    rng = np.random.default_rng(seed)
    x1 = rng.binomial(d.n1, d.p1, size=iterations)
    x2 = rng.binomial(d.n2, d.p2, size=iterations)
    phat1 = x1 / d.n1
    phat2 = x2 / d.n2
    var = phat1 * (1.0 - phat1) / d.n1 + phat2 * (1.0 - phat2) / d.n2
    diff = phat1 - phat2
    z_crit = _critical_z(d.alpha, d.sides)
    with np.errstate(divide="ignore", invalid="ignore"):
        z = np.where(var > 0.0, diff / np.sqrt(var), 0.0)
    if d.sides is Sides.TWO_SIDED:
        reject = np.abs(z) > z_crit
    elif d.p1 >= d.p2:
        reject = z > z_crit
    else:
        reject = z < -z_crit
    power = float(np.mean(reject))
    mc_se = math.sqrt(power * (1.0 - power) / iterations)
    warnings = (NULL_DESIGN_WARNING,) if d.p1 == d.p2 else ()
    return PowerEstimate(
        power=power,
        method=PowerMethod.MONTE_CARLO,
        iterations=iterations,
        seed=seed,
        mc_standard_error=mc_se,
        warnings=warnings,
    )


def rates_from_case_split(
    total_n: int, total_cases: int, case_difference: int
) -> tuple[Probability, Probability]:
    """Event rates implied by a case split between two equal-sized groups.

    With ``total_n`` participants split evenly, ``total_cases`` events in
    all, and ``case_difference`` more events in the first group than the
    second, the per-group rates are

        p1 = (total_cases + case_difference) / 2 / (total_n / 2)
        p2 = (total_cases - case_difference) / 2 / (total_n / 2)

    Expected counts may be fractional; they are used as rates directly,
    not rounded.
    """
    if total_n < 2:
        raise InvalidCountsError(f"total_n must be at least 2, got {total_n}")
    if not 0 <= case_difference <= total_cases:
        raise InvalidCountsError(
            f"need total_cases >= case_difference >= 0, got "
            f"total_cases={total_cases}, case_difference={case_difference}"
        )
    group_n = total_n / 2.0
    p1 = (total_cases + case_difference) / 2.0 / group_n
    p2 = (total_cases - case_difference) / 2.0 / group_n
    for name, p in (("p1", p1), ("p2", p2)):
        if not 0.0 < p < 1.0:
            raise InvalidCountsError(
                f"derived rate {name}={p} falls outside (0, 1); "
                "counts are inconsistent with the group size"
            )
    return p1, p2
