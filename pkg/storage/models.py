from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from core.errors import InvalidParameters
from core.model import ModelParams, State

Command = Literal[
    "simulate",
    "fixed-points",
    "cycles",
    "bifurcate",
    "lyapunov",
    "conjugacy",
    "invariant-check",
    "scenario",
]
OutputFormat = Literal["text", "csv", "json"]


class RunConfig(BaseModel):
    """Everything needed to repeat one CLI invocation.

    Parameters and the initial point are stored field by field: the prey-axis
    commands only use a and b.
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    command: Command

    a: Optional[float] = None
    b: Optional[float] = None
    c: Optional[float] = None
    d: Optional[float] = None
    alpha: Optional[float] = None
    x0: Optional[float] = None
    y0: Optional[float] = None

    steps: Optional[int] = None
    transient: Optional[int] = None
    tol: Optional[float] = None
    max_period: Optional[int] = None
    seed: Optional[int] = None

    # command specific
    dim: int = Field(default=2, ge=1, le=2)
    renorm_interval: Optional[int] = None
    spectrum: bool = False
    parameter: Optional[str] = None
    start: Optional[float] = None
    stop: Optional[float] = None
    num: Optional[int] = None
    samples: Optional[int] = None
    set_id: Optional[str] = None
    n_samples: Optional[int] = None
    restrict_to_xbound: bool = False
    scenario: Optional[str] = None
    list_scenarios: bool = False

    output: Optional[str] = None
    format: OutputFormat = "text"

    def require(self, *names: str) -> None:
        missing = [name for name in names if getattr(self, name) is None]
        if missing:
            raise InvalidParameters(f"{self.command} needs --{', --'.join(missing)}")

    def params(self) -> ModelParams:
        self.require("a", "b", "c", "d", "alpha")
        return ModelParams(a=self.a, b=self.b, c=self.c, d=self.d, alpha=self.alpha)

    def initial(self) -> State:
        self.require("x0", "y0")
        return State(x=self.x0, y=self.y0)
