"""Closed-form fixed points of the operator and their stability.

lambda1 = ((a-2)/b, 0) is the prey-only point, lambda2 = ((a-2) alpha/K, (a-2)(d-2)/K)
with K = b alpha + c (d-2) the coexistence point. Both are classified by the moduli
of the Jacobian eigenvalues.
"""
import cmath
import math
from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict

from core.errors import NotAFixedPoint
from core.logger import logger
from core.model import ModelParams, State

Classification = Literal["nonhyperbolic", "attractive", "repeller", "saddle"]
FixedPointId = Literal["lambda1", "lambda2"]

HYPERBOLIC_TOL = 1e-9


class Eigenvalue(BaseModel):
    model_config = ConfigDict(frozen=True)

    real: float
    imag: float = 0.0

    @property
    def value(self) -> complex:
        return complex(self.real, self.imag)

    @property
    def modulus(self) -> float:
        return abs(self.value)

    @classmethod
    def of(cls, z: complex) -> "Eigenvalue":
        return cls(real=z.real, imag=z.imag)


class FixedPointReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: FixedPointId
    location: State
    exists: bool = True
    reason: str
    eigenvalues: Tuple[Eigenvalue, Eigenvalue]
    trace: float
    det: float
    discriminant_D: Optional[float] = None
    closed_form_eigenvalues: Optional[Tuple[float, float]] = None
    classification: Classification


def classify_moduli(m1: float, m2: float, tol: float = HYPERBOLIC_TOL) -> Classification:
    if abs(m1 - 1.0) < tol or abs(m2 - 1.0) < tol:
        return "nonhyperbolic"
    if m1 < 1.0 and m2 < 1.0:
        return "attractive"
    if m1 > 1.0 and m2 > 1.0:
        return "repeller"
    return "saddle"


def quadratic_roots(trace: float, det: float) -> Tuple[complex, complex]:
    """Roots of mu^2 - trace*mu + det = 0."""
    disc = trace * trace - 4.0 * det
    if disc >= 0.0:
        s = math.sqrt(disc)
        r1 = 0.5 * (trace + math.copysign(s, trace))
        r2 = det / r1 if r1 != 0.0 else 0.0
        return complex(r1), complex(r2)
    half = 0.5 * cmath.sqrt(disc).imag
    return complex(0.5 * trace, half), complex(0.5 * trace, -half)


def lambda1_exists(p: ModelParams) -> bool:
    return p.a > 2.0


def lambda2_existence(p: ModelParams) -> Tuple[bool, str]:
    if not p.a > 2.0:
        return False, "a <= 2: no positive fixed point"
    if p.d == 2.0:
        return False, "d = 2: lambda2 collapses onto lambda1"
    if p.d < 2.0:
        return False, "d < 2: predator coordinate would be negative"
    if not p.K > 0.0:
        return False, "b*alpha + c*(d-2) <= 0"
    return True, "a > 2, d > 2, b*alpha + c*(d-2) > 0"


def lambda1(p: ModelParams) -> State:
    if not lambda1_exists(p):
        raise NotAFixedPoint(f"lambda1 needs a > 2, got a={p.a!r}")
    return State(x=(p.a - 2.0) / p.b, y=0.0)


def lambda2(p: ModelParams) -> State:
    exists, reason = lambda2_existence(p)
    if not exists:
        raise NotAFixedPoint(f"lambda2 does not exist: {reason}")
    K = p.K
    return State(x=(p.a - 2.0) * p.alpha / K, y=(p.a - 2.0) * (p.d - 2.0) / K)


def lambda2_trace_det(p: ModelParams) -> Tuple[float, float]:
    """Trace T and determinant Delta of the Jacobian at lambda2."""
    a, b, c, d, alpha = p.as_tuple()
    K = p.K
    shrink = (a - 2.0) * b * alpha / K
    trace = 4.0 - d - shrink
    det = (3.0 - d) * (1.0 - shrink) + c * (a - 2.0) * (d - 2.0) ** 2 / K
    return trace, det


def closed_form_B(p: ModelParams) -> float:
    a, b, c, d, alpha = p.as_tuple()
    return a * b * alpha + b * d * alpha + c * d * d - 6.0 * b * alpha - 6.0 * c * d + 8.0 * c


def expanded_discriminant(p: ModelParams) -> float:
    """D of K mu^2 + B mu + K Delta = 0 expanded in (a, b, c, d, alpha); equals B^2 - 4 K^2 Delta."""
    a, b, c, d, al = p.as_tuple()
    return (
        a * a * b * b * al * al
        - 2.0 * a * b * b * d * al * al
        - 6.0 * a * b * c * d * d * al
        - 4.0 * a * c * c * d ** 3
        + b * b * d * d * al * al
        + 2.0 * b * c * d ** 3 * al
        + c * c * d ** 4
        + 24.0 * a * b * c * d * al
        + 24.0 * a * c * c * d * d
        - 24.0 * a * b * c * al
        - 48.0 * a * c * c * d
        - 24.0 * b * c * d * al
        - 24.0 * c * c * d * d
        + 32.0 * a * c * c
        + 32.0 * b * c * al
        + 64.0 * c * c * d
        - 48.0 * c * c
    )


def closed_form_eigenvalues(p: ModelParams) -> Optional[Tuple[float, float]]:
    """mu_{1,2} = -(B +- sqrt(D)) / (2K) when D >= 0, else None."""
    D = expanded_discriminant(p)
    if D < 0.0:
        return None
    B = closed_form_B(p)
    K = p.K
    root = math.sqrt(D)
    return -(B + root) / (2.0 * K), -(B - root) / (2.0 * K)


def classify_lambda1(p: ModelParams) -> FixedPointReport:
    location = lambda1(p)
    nu1 = 3.0 - p.a
    nu2 = p.d - 1.0
    return FixedPointReport(
        id="lambda1",
        location=location,
        reason="a > 2",
        eigenvalues=(Eigenvalue(real=nu1), Eigenvalue(real=nu2)),
        trace=nu1 + nu2,
        det=nu1 * nu2,
        classification=classify_moduli(abs(nu1), abs(nu2)),
    )


def classify_lambda2(p: ModelParams) -> FixedPointReport:
    location = lambda2(p)
    _, reason = lambda2_existence(p)
    trace, det = lambda2_trace_det(p)
    mu1, mu2 = quadratic_roots(trace, det)

    closed = closed_form_eigenvalues(p)
    if closed is not None and mu1.imag == 0.0:
        for got, want in zip(sorted(closed), sorted((mu1.real, mu2.real))):
            if abs(got - want) > 1e-9 * max(1.0, abs(want)):
                logger.warning(
                    f"Closed-form eigenvalue {got!r} disagrees with quadratic root {want!r} at {p}"
                )

    return FixedPointReport(
        id="lambda2",
        location=location,
        reason=reason,
        eigenvalues=(Eigenvalue.of(mu1), Eigenvalue.of(mu2)),
        trace=trace,
        det=det,
        discriminant_D=expanded_discriminant(p),
        closed_form_eigenvalues=closed,
        classification=classify_moduli(abs(mu1), abs(mu2)),
    )


def fixed_points(p: ModelParams) -> List[FixedPointReport]:
    """Reports for every fixed point that exists in the phase domain."""
    reports = []
    if lambda1_exists(p):
        reports.append(classify_lambda1(p))
    if lambda2_existence(p)[0]:
        reports.append(classify_lambda2(p))
    return reports
