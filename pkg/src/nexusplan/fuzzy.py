"""Trapezoidal fuzzy numbers and the possibility / necessity / credibility calculus.

A trapezoidal fuzzy number ``(nu1, nu2, nu3, nu4)`` has membership ramping
0 -> 1 over ``[nu1, nu2]``, a plateau at 1 on ``[nu2, nu3]`` and a ramp
1 -> 0 over ``[nu3, nu4]``.  The measures implemented here score the two
threshold events ``{value <= gamma}`` and ``{value >= gamma}``:

* possibility -- optimistic (sup of the membership over the event),
* necessity   -- pessimistic (1 minus the possibility of the complement),
* credibility -- the average of the two.

``crisp_bound`` inverts the measures: it returns the threshold at which a
chance constraint at confidence ``alpha`` becomes a crisp inequality, and
``defuzzify`` uses the same inversion to map a fuzzy quantity to a single
nominal value.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass


class MeasureKind(enum.Enum):
    """Which fuzzy measure scores a threshold event."""

    POSSIBILITY = "possibility"
    NECESSITY = "necessity"
    CREDIBILITY = "credibility"


class ConstraintSense(enum.Enum):
    """Direction of a fuzzy threshold event."""

    FUZZY_LE = "le"  # event {value <= gamma}
    FUZZY_GE = "ge"  # event {value >= gamma}


@dataclass(frozen=True, slots=True)
class TrapezoidalFuzzyNumber:
    """Four-point fuzzy quantity with nondecreasing knots.

    Equal knots are allowed so triangular and crisp numbers are expressible
    as degenerate trapezoids; the measure functions resolve the resulting
    zero-width ramps with a right-continuous step convention.
    """

    nu1: float
    nu2: float
    nu3: float
    nu4: float

    def __post_init__(self) -> None:
        points = (self.nu1, self.nu2, self.nu3, self.nu4)
        if not all(math.isfinite(p) for p in points):
            raise ValueError(f"fuzzy number points must be finite, got {points}")
        if not (self.nu1 <= self.nu2 <= self.nu3 <= self.nu4):
            raise ValueError(f"fuzzy number points must be nondecreasing, got {points}")

    @classmethod
    def crisp(cls, value: float) -> "TrapezoidalFuzzyNumber":
        """A degenerate trapezoid concentrated on a single value."""
        return cls(value, value, value, value)

    @property
    def is_crisp(self) -> bool:
        return self.nu1 == self.nu4

    @property
    def midpoint(self) -> float:
        """Center of the plateau, the deterministic collapse of the number."""
        return 0.5 * (self.nu2 + self.nu3)

    def membership(self, x: float) -> float:
        """Membership degree of ``x``; zero-width ramps become steps."""
        if x < self.nu1 or x > self.nu4:
            return 0.0
        if x < self.nu2:
            return (x - self.nu1) / (self.nu2 - self.nu1)
        if x <= self.nu3:
            return 1.0
        # nu3 < x <= nu4 here, so the ramp is non-degenerate
        return (self.nu4 - x) / (self.nu4 - self.nu3)

    def scaled(self, factor: float) -> "TrapezoidalFuzzyNumber":
        """Pointwise positive rescaling (used for proportional weights)."""
        if factor < 0:
            raise ValueError("scaling factor must be nonnegative")
        return TrapezoidalFuzzyNumber(
            self.nu1 * factor, self.nu2 * factor, self.nu3 * factor, self.nu4 * factor
        )


def _check_alpha(alpha: float) -> float:
    if not (0.0 <= alpha <= 1.0):
        raise ValueError(f"confidence level must lie in [0, 1], got {alpha}")
    return alpha


def possibility_le(nu: TrapezoidalFuzzyNumber, gamma: float) -> float:
    """Possibility of ``{nu <= gamma}``: sup of the membership on (-inf, gamma]."""
    if gamma < nu.nu1:
        return 0.0
    if gamma < nu.nu2:
        return (gamma - nu.nu1) / (nu.nu2 - nu.nu1)
    return 1.0


def possibility_ge(nu: TrapezoidalFuzzyNumber, gamma: float) -> float:
    """Possibility of ``{nu >= gamma}``: sup of the membership on [gamma, inf)."""
    if gamma > nu.nu4:
        return 0.0
    if gamma > nu.nu3:
        return (nu.nu4 - gamma) / (nu.nu4 - nu.nu3)
    return 1.0


def necessity_le(nu: TrapezoidalFuzzyNumber, gamma: float) -> float:
    """Necessity of ``{nu <= gamma}``: complement of the possibility of exceeding."""
    if gamma < nu.nu3:
        return 0.0
    if gamma < nu.nu4:
        return (gamma - nu.nu3) / (nu.nu4 - nu.nu3)
    return 1.0


def necessity_ge(nu: TrapezoidalFuzzyNumber, gamma: float) -> float:
    """Necessity of ``{nu >= gamma}``: complement of the possibility of undershooting."""
    if gamma > nu.nu2:
        return 0.0
    if gamma > nu.nu1:
        return (nu.nu2 - gamma) / (nu.nu2 - nu.nu1)
    return 1.0


def credibility_le(nu: TrapezoidalFuzzyNumber, gamma: float) -> float:
    """Credibility of ``{nu <= gamma}``.

    Piecewise over the four knots: 0 below the support, a half-height ramp
    over ``[nu1, nu2]``, exactly 1/2 on the plateau, a ramp to 1 over
    ``[nu3, nu4]`` and 1 beyond.  Strict comparisons on the left of each
    branch make degenerate intervals jump right-continuously (a crisp number
    scores 1 at its own value).
    """
    if gamma < nu.nu1:
        return 0.0
    if gamma < nu.nu2:
        return (gamma - nu.nu1) / (2.0 * (nu.nu2 - nu.nu1))
    if gamma < nu.nu3:
        return 0.5
    if gamma < nu.nu4:
        return (gamma - 2.0 * nu.nu3 + nu.nu4) / (2.0 * (nu.nu4 - nu.nu3))
    return 1.0


def credibility_ge(nu: TrapezoidalFuzzyNumber, gamma: float) -> float:
    """Credibility of ``{nu >= gamma}``; mirror image of :func:`credibility_le`.

    Non-strict comparisons on the left make this the exact complement of
    ``credibility_le`` at every point where both ramps are non-degenerate.
    """
    if gamma <= nu.nu1:
        return 1.0
    if gamma <= nu.nu2:
        return (2.0 * nu.nu2 - nu.nu1 - gamma) / (2.0 * (nu.nu2 - nu.nu1))
    if gamma <= nu.nu3:
        return 0.5
    if gamma <= nu.nu4:
        return (nu.nu4 - gamma) / (2.0 * (nu.nu4 - nu.nu3))
    return 0.0


def possibility(nu: TrapezoidalFuzzyNumber, gamma: float, sense: ConstraintSense) -> float:
    if sense is ConstraintSense.FUZZY_LE:
        return possibility_le(nu, gamma)
    return possibility_ge(nu, gamma)


def necessity(nu: TrapezoidalFuzzyNumber, gamma: float, sense: ConstraintSense) -> float:
    if sense is ConstraintSense.FUZZY_LE:
        return necessity_le(nu, gamma)
    return necessity_ge(nu, gamma)


def credibility(nu: TrapezoidalFuzzyNumber, gamma: float, sense: ConstraintSense) -> float:
    if sense is ConstraintSense.FUZZY_LE:
        return credibility_le(nu, gamma)
    return credibility_ge(nu, gamma)


def measure_value(
    nu: TrapezoidalFuzzyNumber,
    gamma: float,
    sense: ConstraintSense,
    measure: MeasureKind = MeasureKind.CREDIBILITY,
) -> float:
    """Score the threshold event under the chosen measure."""
    if measure is MeasureKind.POSSIBILITY:
        return possibility(nu, gamma, sense)
    if measure is MeasureKind.NECESSITY:
        return necessity(nu, gamma, sense)
    return credibility(nu, gamma, sense)


def crisp_bound(
    nu: TrapezoidalFuzzyNumber,
    alpha: float,
    sense: ConstraintSense,
    measure: MeasureKind = MeasureKind.CREDIBILITY,
) -> float:
    """Crisp threshold equivalent to a fuzzy chance constraint.

    For ``FUZZY_LE`` returns the bound B with
    ``Measure{nu <= gamma} >= alpha  <=>  gamma >= B``; for ``FUZZY_GE``
    returns B with ``Measure{nu >= gamma} >= alpha  <=>  gamma <= B``.
    The credibility forms are two-branch in alpha with the branch switch
    at 1/2 taken inclusively on the low side; alpha = 0 is evaluated by the
    same formulas (the constraint is then vacuous and the bound sits at the
    optimistic end of the support).
    """
    _check_alpha(alpha)
    n1, n2, n3, n4 = nu.nu1, nu.nu2, nu.nu3, nu.nu4
    if measure is MeasureKind.CREDIBILITY:
        if sense is ConstraintSense.FUZZY_LE:
            if alpha > 0.5:
                return (2.0 - 2.0 * alpha) * n3 + (2.0 * alpha - 1.0) * n4
            return (1.0 - 2.0 * alpha) * n1 + 2.0 * alpha * n2
        if alpha > 0.5:
            return (2.0 * alpha - 1.0) * n1 + (2.0 - 2.0 * alpha) * n2
        return 2.0 * alpha * n3 + (1.0 - 2.0 * alpha) * n4
    if measure is MeasureKind.POSSIBILITY:
        if sense is ConstraintSense.FUZZY_LE:
            return (1.0 - alpha) * n1 + alpha * n2
        return alpha * n3 + (1.0 - alpha) * n4
    # necessity
    if sense is ConstraintSense.FUZZY_LE:
        return (1.0 - alpha) * n3 + alpha * n4
    return alpha * n1 + (1.0 - alpha) * n2


def defuzzify(
    nu: TrapezoidalFuzzyNumber,
    alpha: float,
    measure: MeasureKind = MeasureKind.CREDIBILITY,
    pessimistic: bool = False,
) -> float:
    """Nominal value of a fuzzy quantity at confidence ``alpha``.

    The default is the alpha-optimistic value: the largest threshold the
    quantity still meets or exceeds with measure at least ``alpha``.  With
    ``pessimistic=True`` the dual convention is used (the smallest threshold
    the quantity stays below with measure at least ``alpha``).  Either way
    the result lies inside the support ``[nu1, nu4]``.
    """
    sense = ConstraintSense.FUZZY_LE if pessimistic else ConstraintSense.FUZZY_GE
    return crisp_bound(nu, alpha, sense, measure)
