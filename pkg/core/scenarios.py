"""Named parameter sets and initial points whose orbits are worth regenerating on demand."""
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field

from core.errors import InvalidParameters
from core.model import ModelParams, State
from core.trajectory import Trajectory, iterate


class Scenario(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    description: str
    params: ModelParams
    initial: State
    steps: int = Field(..., ge=1)
    expectation: Optional[str] = None


class ScenarioRegistry:
    def __init__(self):
        self.scenarios: List[Scenario] = []

    def register(self, scenario: Scenario) -> Scenario:
        if self.get_scenario_by_name(scenario.name) is not None:
            raise InvalidParameters(f"Scenario already registered: {scenario.name}")
        self.scenarios.append(scenario)
        return scenario

    def add(self, name: str, description: str, params: tuple, initial: tuple, steps: int,
            expectation: Optional[str] = None) -> Scenario:
        a, b, c, d, alpha = params
        return self.register(Scenario(
            name=name,
            description=description,
            params=ModelParams(a=a, b=b, c=c, d=d, alpha=alpha),
            initial=State(x=initial[0], y=initial[1]),
            steps=steps,
            expectation=expectation,
        ))

    def get_scenarios(self) -> List[Scenario]:
        return self.scenarios

    def get_scenario_by_name(self, name: str) -> Optional[Scenario]:
        for scenario in self.scenarios:
            if scenario.name == name:
                return scenario
        return None


def run_scenario(name: str, steps: Optional[int] = None) -> Trajectory:
    scenario = scenario_registry.get_scenario_by_name(name)
    if scenario is None:
        raise InvalidParameters(f"Unknown scenario: {name}")
    return iterate(scenario.params, scenario.initial, scenario.steps if steps is None else steps)


scenario_registry = ScenarioRegistry()

_add = scenario_registry.add

_add("prey-axis-attraction", "Predators die out and prey settle at lambda1 = (1.8, 0)",
     (3.8, 1, 2, 2, 4), (1.2, 0.2), 10_000, "fixed-point")
_add("axis-period-2", "Prey-axis 2-cycle near (1.58211, 0) and (2.71789, 0)",
     (4.3, 1, 2, 2, 4), (1.2, 0.2), 100_000, "period-2")
_add("axis-period-4", "Prey-axis 4-cycle after the second doubling",
     (4.5, 1, 2, 2, 4), (1.2, 0.2), 100_000, "period-4")
_add("axis-period-8", "Prey-axis 8-cycle just before the end of the 8-cycle window",
     (4.564, 1, 2, 2, 4), (1.2, 0.2), 100_000, "period-8")
_add("axis-period-16", "Prey-axis 16-cycle under strong predator crowding",
     (4.569, 1, 5, 2, 42), (1.2, 0.2), 100_000, "period-16")
_add("axis-chaos-4.6", "Chaotic prey-axis orbit below the chaos onset",
     (4.6, 1, 2, 2, 4), (1.0, 0.2), 100_000, "chaotic")
_add("axis-chaos-4.8", "Chaotic prey-axis orbit past the chaos onset",
     (4.8, 1, 2, 2, 4), (1.0, 0.2), 100_000, "chaotic")
_add("coexistence-1", "Convergence to lambda2 = (1/12, 1/6)",
     (3, 2, 5, 4, 1), (0.1, 0.2), 2000, "fixed-point")
_add("coexistence-1-near", "Start next to lambda2 = (1/12, 1/6)",
     (3, 2, 5, 4, 1), (0.09514, 0.1919), 2000, "fixed-point")
_add("coexistence-2", "Spiral into lambda2 = (2/7, 5/14)",
     (3, 1, 2, 4.5, 2), (0.25, 0.3), 2000, "fixed-point")
_add("coexistence-2-near", "Start next to lambda2 = (2/7, 5/14)",
     (3, 1, 2, 4.5, 2), (0.2967, 0.364), 2000, "fixed-point")
_add("repelling-coexistence-d3.9", "Orbit around a repelling lambda2",
     (3.7, 2, 1, 3.9, 3), (0.5, 0.3), 100_000, "invariant-curve")
_add("repelling-coexistence-d3.6", "Orbit started on the closed curve around lambda2",
     (3.7, 2, 1, 3.6, 3), (0.6431, 0.3857), 100_000, "invariant-curve")
_add("strong-predation-d3.6", "Orbit around lambda2 with c = 2",
     (3.7, 2, 2, 3.6, 3), (0.5, 0.3), 100_000, "invariant-curve")
_add("strong-predation-d3.6-inner", "Second initial point for c = 2",
     (3.7, 2, 2, 3.6, 3), (0.512, 0.3168), 100_000, "invariant-curve")
_add("strong-predation-d3.6-outer", "Third initial point for c = 2",
     (3.7, 2, 2, 3.6, 3), (0.5559, 0.2901), 100_000, "invariant-curve")
_add("predator-d3.1-a3.9", "Coexistence orbit with d = 3.1",
     (3.9, 1, 1, 3.1, 1), (0.1, 0.01), 10_000)
_add("predator-d3.1-a4.4-b1.3", "Coexistence orbit with d = 3.1, b = 1.3, c = 1.1",
     (4.4, 1.3, 1.1, 3.1, 1), (0.1, 0.01), 10_000)
_add("predator-d3.1-a4.3", "Coexistence orbit with d = 3.1, a = 4.3",
     (4.3, 1, 1, 3.1, 1), (0.1, 0.01), 10_000)
_add("predator-d3.1-a4.4", "Coexistence orbit with d = 3.1, a = 4.4",
     (4.4, 1, 1, 3.1, 1), (0.1, 0.01), 10_000)
_add("transient-chaos", "Chaotic for about 5000 steps, then locked onto an attracting 23-cycle",
     (3.9, 2, 2, 3.6, 3), (0.5, 0.4), 10_000, "period-23")
_add("transient-chaos-near", "Second initial point for a = 3.9, d = 3.6",
     (3.9, 2, 2, 3.6, 3), (0.5857, 0.319), 10_000)
_add("predation-c30", "Strong predation c = 30 at a = 4.8",
     (4.8, 1, 30, 2, 1), (0.1, 0.01), 10_000)
_add("predation-c70", "Stronger predation c = 70 at a = 4.8",
     (4.8, 1, 70, 2, 1), (0.1, 0.01), 100_000)
_add("predator-crowding-short", "a = 4.8 with crowding alpha = 14, short horizon",
     (4.8, 1.9, 3, 2.6, 14), (0.1, 0.01), 10_000)
_add("predator-crowding-long", "a = 4.8 with crowding alpha = 14, long horizon",
     (4.8, 1.9, 3, 2.6, 14), (0.1, 0.01), 100_000)
