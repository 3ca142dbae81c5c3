"""Lyapunov exponents of the planar operator and of the prey-axis map.

The largest exponent is the average log growth of a tangent vector pushed through
the Jacobian along the orbit and renormalized every ``renorm_interval`` steps, the
dominant-direction limit of (J_0 J_1 ... J_n)^(1/n) with the product never formed.
"""
import math
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from config import settings
from core.conjugacy import f1d, f1d_derivative
from core.errors import InvalidParameters, OrbitEscaped
from core.logger import logger
from core.model import UNDERFLOW, ModelParams, State, check_domain, jacobian_entries, step_xy

# Per-step log floor; superstable points have zero derivative.
LOG_FLOOR = math.log(1e-300)
MIN_AVERAGED = 100

_INV_SQRT2 = 1.0 / math.sqrt(2.0)


class LyapunovEstimate(BaseModel):
    model_config = ConfigDict(frozen=True)

    lambda_max: float
    n_steps: int
    transient: int
    renorm_interval: int
    terminated_early: bool
    exit_step: Optional[int] = None


class LyapunovSpectrum(BaseModel):
    model_config = ConfigDict(frozen=True)

    exponents: Tuple[float, float]
    mean_log_det: float
    n_steps: int
    transient: int
    terminated_early: bool
    exit_step: Optional[int] = None


def _safe_log(value: float) -> float:
    return math.log(value) if value > 0.0 else LOG_FLOOR


def _mean_log(terms: List[float], counted: int) -> float:
    """Exactly rounded mean of floored log terms; never below the floor."""
    if not counted:
        return float("nan")
    return max(math.fsum(terms) / counted, LOG_FLOOR)


def _check_counts(n: int, transient: int) -> None:
    if transient < 0:
        raise InvalidParameters(f"transient must be >= 0, got {transient}")
    if n < transient + MIN_AVERAGED:
        raise InvalidParameters(f"n must be >= transient + {MIN_AVERAGED}, got n={n}, transient={transient}")


def _finish(estimate, exit_step: Optional[int], transient: int):
    if exit_step is not None and exit_step < transient + MIN_AVERAGED:
        raise OrbitEscaped(
            f"Orbit left the domain at step {exit_step}, before transient + {MIN_AVERAGED}",
            estimate=estimate,
        )
    if exit_step is not None:
        logger.warning(f"Orbit left the domain at step {exit_step}; averaged the surviving steps")
    return estimate


def lyapunov_max(p: ModelParams, s0: State, n: int, transient: Optional[int] = None,
                 renorm_interval: Optional[int] = None) -> LyapunovEstimate:
    """Largest Lyapunov exponent (natural log, per step) over steps transient..n-1."""
    transient = settings.lyapunov_transient if transient is None else transient
    renorm_interval = settings.renorm_interval if renorm_interval is None else renorm_interval
    _check_counts(n, transient)
    if renorm_interval < 1:
        raise InvalidParameters(f"renorm_interval must be >= 1, got {renorm_interval}")

    x, y = s0.x, s0.y
    v1, v2 = _INV_SQRT2, _INV_SQRT2
    terms: List[float] = []
    counted = 0
    pending = 0
    exit_step = None

    for k in range(n):
        j11, j12, j21, j22 = jacobian_entries(p, x, y)
        v1, v2 = j11 * v1 + j12 * v2, j21 * v1 + j22 * v2
        pending += 1

        last = k == n - 1
        x1, y1 = (x, y) if last else step_xy(p, x, y)
        escaped = not last and check_domain(x1, y1) is not None

        # blocks never straddle the end of the transient
        if pending == renorm_interval or k == transient - 1 or last or escaped:
            norm = math.hypot(v1, v2)
            if k >= transient:
                terms.append(max(_safe_log(norm), LOG_FLOOR))
                counted += pending
            if norm > 0.0 and math.isfinite(norm):
                v1, v2 = v1 / norm, v2 / norm
            else:
                v1, v2 = _INV_SQRT2, _INV_SQRT2
            pending = 0

        if escaped:
            exit_step = k + 1
            break
        x, y = x1, y1

    estimate = LyapunovEstimate(
        lambda_max=_mean_log(terms, counted),
        n_steps=counted,
        transient=transient,
        renorm_interval=renorm_interval,
        terminated_early=exit_step is not None,
        exit_step=exit_step,
    )
    return _finish(estimate, exit_step, transient)


def lyapunov_1d(a: float, b: float, x0: float, n: int,
                transient: Optional[int] = None) -> LyapunovEstimate:
    """Average of ln|a - 1 - 2 b x_k| along the prey-axis orbit while it stays in (0, (a-1)/b)."""
    transient = settings.lyapunov_transient if transient is None else transient
    _check_counts(n, transient)
    upper = (a - 1.0) / b
    if not 0.0 < x0 < upper:
        raise InvalidParameters(f"x0 must lie in (0, {upper!r}), got {x0!r}")

    x = x0
    terms: List[float] = []
    counted = 0
    exit_step = None
    for k in range(n):
        if k >= transient:
            terms.append(max(_safe_log(abs(f1d_derivative(a, b, x))), LOG_FLOOR))
            counted += 1
        if k == n - 1:
            break
        x = f1d(a, b, x)
        if not UNDERFLOW <= x < upper:
            exit_step = k + 1
            break

    estimate = LyapunovEstimate(
        lambda_max=_mean_log(terms, counted),
        n_steps=counted,
        transient=transient,
        renorm_interval=1,
        terminated_early=exit_step is not None,
        exit_step=exit_step,
    )
    return _finish(estimate, exit_step, transient)


def lyapunov_spectrum(p: ModelParams, s0: State, n: int,
                      transient: Optional[int] = None) -> LyapunovSpectrum:
    """Both exponents from QR re-orthonormalization of a tangent frame at every step."""
    transient = settings.lyapunov_transient if transient is None else transient
    _check_counts(n, transient)

    x, y = s0.x, s0.y
    frame = np.eye(2)
    sums = np.zeros(2)
    log_det = 0.0
    counted = 0
    exit_step = None

    for k in range(n):
        j11, j12, j21, j22 = jacobian_entries(p, x, y)
        jac = np.array([[j11, j12], [j21, j22]])
        frame, r = np.linalg.qr(jac @ frame)
        if k >= transient:
            sums += [max(_safe_log(abs(r[0, 0])), LOG_FLOOR), max(_safe_log(abs(r[1, 1])), LOG_FLOOR)]
            log_det += max(_safe_log(abs(j11 * j22 - j12 * j21)), LOG_FLOOR)
            counted += 1
        if k == n - 1:
            break
        x1, y1 = step_xy(p, x, y)
        if check_domain(x1, y1) is not None:
            exit_step = k + 1
            break
        x, y = x1, y1

    if counted:
        first, second = sorted((sums / counted).tolist(), reverse=True)
        mean_log_det = log_det / counted
    else:
        first = second = mean_log_det = float("nan")

    spectrum = LyapunovSpectrum(
        exponents=(first, second),
        mean_log_det=mean_log_det,
        n_steps=counted,
        transient=transient,
        terminated_early=exit_step is not None,
        exit_step=exit_step,
    )
    return _finish(spectrum, exit_step, transient)
