"""Parameters, phase states, the one-step evolution operator and its Jacobian.

The operator acts on the open quadrant x > 0, y >= 0:

    x' = x (a - 1 - b x - c y)
    y' = y (d - 1 - alpha y / x)

All arithmetic is plain 64-bit floating point.
"""
import math
from typing import Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

# Prey densities below this are treated as extinction (y/x would blow up).
UNDERFLOW = 1e-300

Violation = Literal["x<=0", "y<0", "x-underflow", "non-finite"]
PARAMETER_NAMES = ("a", "b", "c", "d", "alpha")


class ModelParams(BaseModel):
    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    a: float = Field(..., gt=1, description="Prey growth parameter")
    b: float = Field(..., gt=0, description="Prey self-limitation")
    c: float = Field(..., gt=0, description="Predation coefficient")
    d: float = Field(..., gt=1, description="Predator growth parameter")
    alpha: float = Field(..., gt=0, description="Predator crowding coefficient")

    @property
    def K(self) -> float:
        """Denominator of the coexistence fixed point, b*alpha + c*(d - 2)."""
        return self.b * self.alpha + self.c * (self.d - 2.0)

    def as_tuple(self) -> Tuple[float, float, float, float, float]:
        return (self.a, self.b, self.c, self.d, self.alpha)

    def with_value(self, name: str, value: float) -> "ModelParams":
        """Copy with one parameter replaced; the copy is validated."""
        if name not in PARAMETER_NAMES:
            raise ValueError(f"Unknown parameter: {name}")
        return ModelParams(**{**self.model_dump(), name: value})


class State(BaseModel):
    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    x: float = Field(..., gt=0, description="Prey density")
    y: float = Field(..., ge=0, description="Predator density")


class DomainExit(BaseModel):
    """The raw image of a state that left the phase domain."""
    model_config = ConfigDict(frozen=True)

    x: float
    y: float
    violated: Violation


StepResult = Union[State, DomainExit]


class JacobianMatrix(BaseModel):
    model_config = ConfigDict(frozen=True)

    j11: float
    j12: float
    j21: float
    j22: float

    @property
    def trace(self) -> float:
        return self.j11 + self.j22

    @property
    def det(self) -> float:
        return self.j11 * self.j22 - self.j12 * self.j21

    def as_array(self) -> np.ndarray:
        return np.array([[self.j11, self.j12], [self.j21, self.j22]], dtype=np.float64)


def step_xy(p: ModelParams, x: float, y: float) -> Tuple[float, float]:
    """Raw image of (x, y) with no domain checks."""
    return (
        x * (p.a - 1.0 - p.b * x - p.c * y),
        y * (p.d - 1.0 - p.alpha * y / x),
    )


def check_domain(x: float, y: float) -> Optional[Violation]:
    """Name the violated domain constraint of a raw pair, or None if it is a valid state."""
    if not (math.isfinite(x) and math.isfinite(y)):
        return "non-finite"
    if x <= 0.0:
        return "x<=0"
    if x < UNDERFLOW:
        return "x-underflow"
    if y < 0.0:
        return "y<0"
    return None


def step(p: ModelParams, s: State) -> StepResult:
    """Apply the evolution operator once."""
    x1, y1 = step_xy(p, s.x, s.y)
    violated = check_domain(x1, y1)
    if violated is not None:
        return DomainExit(x=x1, y=y1, violated=violated)
    return State(x=x1, y=y1)


def jacobian_entries(p: ModelParams, x: float, y: float) -> Tuple[float, float, float, float]:
    ratio = y / x
    return (
        p.a - 1.0 - 2.0 * p.b * x - p.c * y,
        -p.c * x,
        p.alpha * ratio * ratio,
        p.d - 1.0 - 2.0 * p.alpha * ratio,
    )


def jacobian(p: ModelParams, s: State) -> JacobianMatrix:
    """Jacobian of the operator at a valid state."""
    j11, j12, j21, j22 = jacobian_entries(p, s.x, s.y)
    return JacobianMatrix(j11=j11, j12=j12, j21=j21, j22=j22)
