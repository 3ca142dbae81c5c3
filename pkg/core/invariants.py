"""Membership in the invariant sets M1 and M2 and Monte-Carlo checks of their invariance.

M1 is the prey-axis segment 0 < x < (a-1)/b, y = 0.
M2 is the wedge alpha*y/(d-1) <= x < (a-1-c*y)/b.
"""
import math
from typing import Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from core.errors import HypothesisViolation, InvalidParameters
from core.logger import logger
from core.model import ModelParams, State

SetId = Literal["M1", "M2"]
ConditionBranch = Literal["case-1", "case-2", "none"]


class InvarianceVerdict(BaseModel):
    model_config = ConfigDict(frozen=True)

    set_id: SetId
    condition_branch: ConditionBranch
    holds: bool
    witness: Optional[State] = None
    witness_image: Optional[Tuple[float, float]] = None
    n_samples: int
    n_violations: int
    x_bound: Optional[float] = None
    seed: int


def _m1_mask(p: ModelParams, x, y):
    return (x > 0) & (x < (p.a - 1.0) / p.b) & (y == 0)


def _m2_mask(p: ModelParams, x, y):
    return (p.alpha * y / (p.d - 1.0) <= x) & (x < (p.a - 1.0 - p.c * y) / p.b)


def in_M1(p: ModelParams, s: State) -> bool:
    return bool(_m1_mask(p, s.x, s.y))


def in_M2(p: ModelParams, s: State) -> bool:
    return bool(_m2_mask(p, s.x, s.y))


def m2_condition2_xbound(p: ModelParams) -> Optional[float]:
    """Positive root of the discriminant condition in x, defined when d < 4a - 3."""
    a, b, c, d, alpha = p.as_tuple()
    if not d < 4.0 * a - 3.0:
        return None
    root = math.sqrt(b * c * alpha * (d - 1.0) + b * b * alpha * alpha + c * c * (a - 1.0) * (d - 1.0))
    return (2.0 * alpha * root - alpha * (c * (d - 1.0) + 2.0 * b * alpha)) / (c * c * (d - 1.0))


def discriminant_expression(p: ModelParams, x: float) -> float:
    """c^2 x^2 + (2 c alpha + 4 b alpha^2/(d-1)) x + alpha^2 (d - 4a + 3)/(d-1).

    Non-positive exactly on [0, m2_condition2_xbound(p)].
    """
    a, b, c, d, alpha = p.as_tuple()
    return (
        c * c * x * x
        + (2.0 * c * alpha + 4.0 * b * alpha * alpha / (d - 1.0)) * x
        + alpha * alpha * (d - 4.0 * a + 3.0) / (d - 1.0)
    )


def condition_branch(p: ModelParams) -> ConditionBranch:
    """Which sufficient condition for M2 applies; raises when neither does."""
    if not 1.0 < p.a <= 2.0:
        raise HypothesisViolation(f"M2 invariance needs 1 < a <= 2, got a={p.a!r}")
    if p.d <= 2.0:
        return "case-1"
    if p.d < 4.0 * p.a - 3.0:
        return "case-2"
    raise HypothesisViolation(
        f"M2 invariance needs 1 < d <= 2 or d < 4a-3, got a={p.a!r}, d={p.d!r}"
    )


def sample_set(p: ModelParams, set_id: SetId, n_samples: int, seed: int,
               x_bound: Optional[float] = None) -> np.ndarray:
    """Draw states from M1 or M2, returned as an (m, 2) array of members.

    x is uniform on the set's x-interval (cut at x_bound when given), then y is
    uniform on the admissible range for that x. Row i depends only on (seed, i).
    """
    if n_samples < 1:
        raise InvalidParameters(f"n_samples must be >= 1, got {n_samples}")

    rng = np.random.default_rng(seed)
    u = rng.random((n_samples, 2))

    x_hi = (p.a - 1.0) / p.b
    if x_bound is not None:
        x_hi = min(x_hi, x_bound)
    x = u[:, 0] * x_hi

    if set_id == "M1":
        y = np.zeros_like(x)
        mask = _m1_mask(p, x, y)
    else:
        y_hi = np.minimum((p.d - 1.0) * x / p.alpha, (p.a - 1.0 - p.b * x) / p.c)
        y = u[:, 1] * y_hi
        mask = _m2_mask(p, x, y) & (x > 0)

    return np.column_stack([x[mask], y[mask]])


def verify_invariance(p: ModelParams, set_id: SetId, n_samples: int, seed: int,
                      restrict_to_xbound: bool = False) -> InvarianceVerdict:
    """Monte-Carlo check that one step maps sampled members of the set back into it.

    For M2 the parameters must satisfy 1 < a <= 2 together with case-1 (1 < d <= 2)
    or case-2 (d < 4a - 3). Case-2 always samples below the x-bound; case-1 does so
    when ``restrict_to_xbound`` is set.
    """
    branch: ConditionBranch = "none"
    x_bound = None
    if set_id == "M2":
        branch = condition_branch(p)
        if branch == "case-2" or restrict_to_xbound:
            x_bound = m2_condition2_xbound(p)
            if x_bound is None:
                raise HypothesisViolation(
                    f"x-bound undefined: needs d < 4a-3, got a={p.a!r}, d={p.d!r}"
                )
    elif set_id != "M1":
        raise InvalidParameters(f"Unknown set: {set_id}")

    points = sample_set(p, set_id, n_samples, seed, x_bound=x_bound)
    x, y = points[:, 0], points[:, 1]

    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        x1 = x * (p.a - 1.0 - p.b * x - p.c * y)
        y1 = y * (p.d - 1.0 - p.alpha * y / x)
        in_domain = np.isfinite(x1) & np.isfinite(y1) & (x1 > 0) & (y1 >= 0)
        member = _m1_mask(p, x1, y1) if set_id == "M1" else _m2_mask(p, x1, y1)

    violations = np.flatnonzero(~(in_domain & member))
    witness = None
    witness_image = None
    if violations.size:
        i = int(violations[0])
        witness = State(x=float(x[i]), y=float(y[i]))
        witness_image = (float(x1[i]), float(y1[i]))

    verdict = InvarianceVerdict(
        set_id=set_id,
        condition_branch=branch,
        holds=violations.size == 0,
        witness=witness,
        witness_image=witness_image,
        n_samples=len(points),
        n_violations=int(violations.size),
        x_bound=x_bound,
        seed=seed,
    )
    logger.info(
        f"Invariance {set_id} ({branch}): {verdict.n_violations} violations "
        f"in {verdict.n_samples} samples"
    )
    return verdict
