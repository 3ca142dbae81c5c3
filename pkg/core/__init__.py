from .logger import logger
from .errors import (
    LeslieError,
    InvalidParameters,
    HypothesisViolation,
    DegenerateConjugacy,
    NoPreimage,
    NotAFixedPoint,
    InsufficientData,
    OrbitEscaped,
)
from .model import ModelParams, State, DomainExit, JacobianMatrix, step, step_xy, jacobian
from .invariants import InvarianceVerdict, in_M1, in_M2, m2_condition2_xbound, verify_invariance
from .conjugacy import ConjugacyMap, Cycle2Report, conjugacy, cycle2, f1d, p0_preimage, regime_1d
from .fixed_points import FixedPointReport, classify_lambda1, classify_lambda2, fixed_points, lambda1, lambda2
from .trajectory import (
    CycleDetection,
    SweepRow,
    SweepSpec,
    Termination,
    Trajectory,
    bifurcation_sweep,
    detect_limit,
    iterate,
    run_to_limit,
)
from .lyapunov import LyapunovEstimate, LyapunovSpectrum, lyapunov_1d, lyapunov_max, lyapunov_spectrum
from .scenarios import Scenario, ScenarioRegistry, run_scenario, scenario_registry

__all__ = [
    "logger",
    "LeslieError",
    "InvalidParameters",
    "HypothesisViolation",
    "DegenerateConjugacy",
    "NoPreimage",
    "NotAFixedPoint",
    "InsufficientData",
    "OrbitEscaped",
    "ModelParams",
    "State",
    "DomainExit",
    "JacobianMatrix",
    "step",
    "step_xy",
    "jacobian",
    "InvarianceVerdict",
    "in_M1",
    "in_M2",
    "m2_condition2_xbound",
    "verify_invariance",
    "ConjugacyMap",
    "Cycle2Report",
    "conjugacy",
    "cycle2",
    "f1d",
    "p0_preimage",
    "regime_1d",
    "FixedPointReport",
    "classify_lambda1",
    "classify_lambda2",
    "fixed_points",
    "lambda1",
    "lambda2",
    "CycleDetection",
    "SweepRow",
    "SweepSpec",
    "Termination",
    "Trajectory",
    "bifurcation_sweep",
    "detect_limit",
    "iterate",
    "run_to_limit",
    "LyapunovEstimate",
    "LyapunovSpectrum",
    "lyapunov_1d",
    "lyapunov_max",
    "lyapunov_spectrum",
    "Scenario",
    "ScenarioRegistry",
    "run_scenario",
    "scenario_registry",
]
