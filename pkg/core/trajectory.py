"""Orbit iteration, limit-cycle detection and one-parameter bifurcation sweeps."""
from concurrent.futures import ThreadPoolExecutor
from typing import List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from config import settings
from core.errors import InsufficientData, InvalidParameters
from core.logger import logger
from core.model import DomainExit, ModelParams, State, check_domain, step_xy

TerminationReason = Literal["max-steps", "converged", "cycle", "domain-exit"]
SweepParameter = Literal["a", "b", "c", "d", "alpha"]


class Termination(BaseModel):
    model_config = ConfigDict(frozen=True)

    reason: TerminationReason
    step: Optional[int] = None
    period: Optional[int] = None
    exit: Optional[DomainExit] = None


class Trajectory(BaseModel):
    """An orbit s_0, s_1, ... stored as an (m, 2) array of (x, y) rows."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    params: ModelParams
    initial: State
    points: np.ndarray
    termination: Termination

    @property
    def states(self) -> List[State]:
        return [State(x=float(x), y=float(y)) for x, y in self.points]

    @property
    def final(self) -> State:
        x, y = self.points[-1]
        return State(x=float(x), y=float(y))

    def __len__(self) -> int:
        return len(self.points)


class CycleDetection(BaseModel):
    model_config = ConfigDict(frozen=True)

    period: int
    points: List[State]
    residual: float
    tolerance: float


def effective_tolerance(tol: float, scale: float) -> float:
    """Tolerance relative to the state magnitude, floored by ``settings.tol_floor``."""
    return max(tol * scale, settings.tol_floor)


def iterate(p: ModelParams, s0: State, n: int, stop_tol: Optional[float] = None) -> Trajectory:
    """Apply the operator up to n times, recording every state.

    Stops early on domain exit, or on convergence when ``stop_tol`` is given.
    """
    if n < 1:
        raise InvalidParameters(f"n must be >= 1, got {n}")

    xs = [s0.x]
    ys = [s0.y]
    x, y = s0.x, s0.y
    termination = Termination(reason="max-steps", step=n)

    for k in range(1, n + 1):
        x1, y1 = step_xy(p, x, y)
        violated = check_domain(x1, y1)
        if violated is not None:
            termination = Termination(
                reason="domain-exit",
                step=k,
                exit=DomainExit(x=x1, y=y1, violated=violated),
            )
            break
        xs.append(x1)
        ys.append(y1)
        if stop_tol is not None:
            delta = max(abs(x1 - x), abs(y1 - y))
            if delta < effective_tolerance(stop_tol, max(abs(x1), abs(y1))):
                termination = Termination(reason="converged", step=k, period=1)
                break
        x, y = x1, y1

    points = np.column_stack([np.asarray(xs), np.asarray(ys)])
    points.setflags(write=False)
    return Trajectory(params=p, initial=s0, points=points, termination=termination)


def iterate_axis(a: float, b: float, x0: float, n: int) -> Trajectory:
    """Orbit of the prey-axis map, run through the planar operator with y = 0.

    The predator parameters do not act on the axis; fixed placeholders are used.
    """
    p = ModelParams(a=a, b=b, c=1.0, d=2.0, alpha=1.0)
    return iterate(p, State(x=x0, y=0.0), n)


def detect_limit(t: Trajectory, tol: Optional[float] = None, max_period: Optional[int] = None,
                 transient: Optional[int] = None) -> Optional[CycleDetection]:
    """Smallest period p <= max_period with |s_{k+p} - s_k| under tolerance on a tail window.

    The window holds the indices k in [max(transient, L - 3M), L - 1 - M], so every
    candidate period is tested against the same k values.
    """
    tol = settings.cycle_tol if tol is None else tol
    max_period = settings.max_period if max_period is None else max_period
    transient = settings.transient if transient is None else transient

    pts = t.points
    length = len(pts)
    if length <= transient + 2 * max_period:
        raise InsufficientData(
            f"Trajectory of {length} states is too short for transient={transient} "
            f"and max_period={max_period}"
        )

    lo = max(transient, length - 3 * max_period)
    hi = length - 1 - max_period
    window = pts[lo:hi + 1]
    eff = effective_tolerance(tol, float(np.abs(pts[lo:]).max()))

    for period in range(1, max_period + 1):
        residual = float(np.abs(pts[lo + period:hi + 1 + period] - window).max())
        if residual < eff:
            return CycleDetection(
                period=period,
                points=[State(x=float(x), y=float(y)) for x, y in pts[length - period:]],
                residual=residual,
                tolerance=eff,
            )
    return None


def run_to_limit(p: ModelParams, s0: State, n: int, tol: Optional[float] = None,
                 max_period: Optional[int] = None,
                 transient: Optional[int] = None) -> Tuple[Trajectory, Optional[CycleDetection]]:
    """Iterate, then label the termination with the detected limit when one is found.

    Returns (trajectory, detection); detection is None after a domain exit, when the
    orbit is too short for the window, or when no period qualifies.
    """
    max_period = settings.max_period if max_period is None else max_period
    transient = settings.transient if transient is None else transient

    t = iterate(p, s0, n)
    if t.termination.reason == "domain-exit" or len(t) <= transient + 2 * max_period:
        return t, None

    detection = detect_limit(t, tol=tol, max_period=max_period, transient=transient)
    if detection is not None:
        reason = "converged" if detection.period == 1 else "cycle"
        t = t.model_copy(update={"termination": Termination(
            reason=reason, step=t.termination.step, period=detection.period
        )})
    logger.info(f"Orbit of {len(t)} states ended with {t.termination.reason}")
    return t, detection


class SweepSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    base: ModelParams
    parameter: SweepParameter
    start: float
    stop: float
    num: int = Field(..., ge=1)
    initial: State

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.num)

    def params_at(self, value: float) -> ModelParams:
        return self.base.with_value(self.parameter, float(value))


class SweepRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    value: float
    samples: List[State]
    exit: Optional[DomainExit] = None
    exit_step: Optional[int] = None

    def distinct_points(self, tol: float) -> List[State]:
        """Greedy clustering of the samples in the max norm."""
        centers: List[State] = []
        for s in self.samples:
            if all(max(abs(s.x - c.x), abs(s.y - c.y)) > tol for c in centers):
                centers.append(s)
        return centers


def _sweep_row(p: ModelParams, value: float, s0: State, transient: int, samples: int) -> SweepRow:
    t = iterate(p, s0, transient + samples)
    tail = t.points[transient:transient + samples]
    exit_ = t.termination.exit
    return SweepRow(
        value=value,
        samples=[State(x=float(x), y=float(y)) for x, y in tail],
        exit=exit_,
        exit_step=t.termination.step if exit_ is not None else None,
    )


def bifurcation_sweep(spec: SweepSpec, transient: Optional[int] = None, samples: int = 64,
                      threads: Optional[int] = None) -> List[SweepRow]:
    """Attractor samples for each grid value of one parameter, in parameter order.

    Each row iterates from ``spec.initial``, drops ``transient`` states and keeps the
    next ``samples`` states. Rows run concurrently on up to ``settings.threads`` threads.
    """
    transient = settings.transient if transient is None else transient
    threads = settings.threads if threads is None else threads
    if transient < 1 or samples < 1:
        raise InvalidParameters(f"transient and samples must be >= 1, got {transient}, {samples}")

    values = [float(v) for v in spec.values()]
    params = [spec.params_at(v) for v in values]

    with ThreadPoolExecutor(max_workers=max(1, min(threads, len(values)))) as executor:
        rows = list(executor.map(
            lambda pv: _sweep_row(pv[0], pv[1], spec.initial, transient, samples),
            zip(params, values),
        ))

    exits = sum(1 for row in rows if row.exit is not None)
    if exits:
        logger.warning(f"Sweep over {spec.parameter}: {exits} of {len(rows)} rows left the domain")
    logger.info(f"Sweep over {spec.parameter} finished: {len(rows)} rows")
    return rows
