"""The prey-axis map f(x) = x(a - 1 - b x), its affine conjugacy to the quadratic
family F_mu(x) = mu x (1 - x) with mu = 3 - a, fixed points, 2-cycles and regimes.
"""
import math
from typing import Iterable, List, Literal, Optional

from pydantic import BaseModel, ConfigDict

from core.errors import DegenerateConjugacy, InvalidParameters, NoPreimage

RegimeLabel = Literal[
    "extinction",
    "fixed-point",
    "period-2",
    "period-4",
    "period-8",
    "undetermined-gap",
    "chaotic",
]

PERIOD_TWO_END = 2.0 + math.sqrt(6.0)
PERIOD_FOUR_END = 4.543
PERIOD_EIGHT_START = 4.544
PERIOD_EIGHT_END = 4.564
CHAOS_START = 3.0 + math.sqrt(5.0)


def f1d(a: float, b: float, x: float) -> float:
    return x * (a - 1.0 - b * x)


def f1d_derivative(a: float, b: float, x: float) -> float:
    return a - 1.0 - 2.0 * b * x


def logistic(mu: float, x: float) -> float:
    return mu * x * (1.0 - x)


class ConjugacyMap(BaseModel):
    """h(x) = p x + q with h(F_mu(x)) = f(h(x))."""
    model_config = ConfigDict(frozen=True)

    p: float
    q: float
    mu: float

    def h(self, x: float) -> float:
        return self.p * x + self.q

    def h_inverse(self, x: float) -> float:
        return (x - self.q) / self.p

    def residual(self, a: float, b: float, x: float) -> float:
        return abs(self.h(logistic(self.mu, x)) - f1d(a, b, self.h(x)))


def conjugacy(a: float, b: float) -> ConjugacyMap:
    mu = 3.0 - a
    if mu == 0.0:
        raise DegenerateConjugacy("h is constant at a = 3; no homeomorphism exists")
    return ConjugacyMap(p=mu / b, q=(a - 2.0) / b, mu=mu)


def conjugacy_residual_max(a_values: Iterable[float], b_values: Iterable[float],
                           xs: Iterable[float]) -> float:
    """Largest |h(F_mu(x)) - f(h(x))| over a grid, skipping the degenerate a = 3."""
    xs = list(xs)
    b_values = list(b_values)
    worst = 0.0
    for a in a_values:
        if a == 3.0:
            continue
        for b in b_values:
            h = conjugacy(a, b)
            worst = max(worst, max(h.residual(a, b, x) for x in xs))
    return worst


class AxisFixedPoint(BaseModel):
    model_config = ConfigDict(frozen=True)

    point: float
    derivative: float
    attracting: bool


def axis_fixed_points(a: float, b: float) -> List[AxisFixedPoint]:
    """Fixed points 0 and p0 = (a-2)/b of f; p0 is listed only when positive."""
    points = [AxisFixedPoint(point=0.0, derivative=a - 1.0, attracting=abs(a - 1.0) < 1.0)]
    if a > 2.0:
        points.append(AxisFixedPoint(point=(a - 2.0) / b, derivative=3.0 - a,
                                     attracting=abs(3.0 - a) < 1.0))
    return points


class Cycle2Report(BaseModel):
    model_config = ConfigDict(frozen=True)

    p1: float
    p2: float
    multiplier: float
    numeric_multiplier: float
    attracting: bool


def cycle2(a: float, b: float) -> Optional[Cycle2Report]:
    """The 2-cycle {p1, p2} of f for a > 4; None otherwise (a = 4 is the degenerate p1 = p2)."""
    if not a > 4.0:
        return None
    root = math.sqrt(a * (a - 4.0))
    p1 = (a - root) / (2.0 * b)
    p2 = (a + root) / (2.0 * b)
    multiplier = -a * a + 4.0 * a + 1.0
    return Cycle2Report(
        p1=p1,
        p2=p2,
        multiplier=multiplier,
        numeric_multiplier=f1d_derivative(a, b, p1) * f1d_derivative(a, b, p2),
        attracting=abs(multiplier) < 1.0,
    )


def p0_preimage(a: float, b: float) -> float:
    """Smaller root of x(a - 1 - b x) = (a - 2)/b, the point of (0, (a-1)/(2b)] mapped onto p0."""
    if not a > 2.0:
        raise NoPreimage(f"p0 = (a-2)/b is not positive for a={a!r}")
    disc = (a - 1.0) ** 2 - 4.0 * (a - 2.0)
    if disc < 0.0:
        raise NoPreimage(f"p0 exceeds the maximum (a-1)^2/(4b) of f for a={a!r}, b={b!r}")
    return ((a - 1.0) - math.sqrt(disc)) / (2.0 * b)


def regime_1d(a: float) -> RegimeLabel:
    if not a > 1.0:
        raise InvalidParameters(f"regime_1d needs a > 1, got {a!r}")
    if a <= 2.0:
        return "extinction"
    if a < 4.0:
        return "fixed-point"
    if 4.0 < a < PERIOD_TWO_END:
        return "period-2"
    if PERIOD_TWO_END < a < PERIOD_FOUR_END:
        return "period-4"
    if PERIOD_EIGHT_START < a < PERIOD_EIGHT_END:
        return "period-8"
    if a > CHAOS_START:
        return "chaotic"
    return "undetermined-gap"
