#!/usr/bin/env python3
import argparse
import csv
import io
import sys
from typing import Any, Callable, Dict, Iterator, List, Optional, Tuple, Union

import numpy as np
from pydantic import ValidationError
from rich.console import Console

from config import settings
from core.conjugacy import (
    axis_fixed_points,
    conjugacy,
    conjugacy_residual_max,
    cycle2,
    p0_preimage,
    regime_1d,
)
from core.errors import InvalidParameters, LeslieError, NoPreimage
from core.fixed_points import fixed_points, lambda2_existence
from core.invariants import verify_invariance
from core.lyapunov import lyapunov_1d, lyapunov_max, lyapunov_spectrum
from core.scenarios import scenario_registry
from core.trajectory import SweepRow, SweepSpec, Trajectory, bifurcation_sweep, detect_limit, iterate_axis, run_to_limit
from storage.models import RunConfig
from storage.repository import RunRepository, report_to_json, run_repository, sweep_to_csv, trajectory_to_csv

Report = Dict[str, Any]
Data = Union[Trajectory, List[SweepRow]]

def command_defaults(command: str) -> Dict[str, Any]:
    """Values filled in before flags and --config, so saved configs are complete."""
    orbit = {"transient": settings.transient, "tol": settings.cycle_tol, "max_period": settings.max_period}
    if command in ("simulate", "scenario"):
        return orbit
    if command == "cycles":
        return {**orbit, "steps": 10_000}
    if command == "bifurcate":
        return {**orbit, "num": 100, "samples": 64}
    if command == "lyapunov":
        return {"transient": settings.lyapunov_transient, "renorm_interval": settings.renorm_interval}
    if command == "invariant-check":
        return {"n_samples": 10_000}
    return {}


def flatten(value: Any, prefix: str = "") -> Iterator[Tuple[str, Any]]:
    if isinstance(value, dict):
        for key, item in value.items():
            yield from flatten(item, f"{prefix}.{key}" if prefix else str(key))
    elif isinstance(value, (list, tuple)):
        for i, item in enumerate(value):
            yield from flatten(item, f"{prefix}.{i}" if prefix else str(i))
    else:
        yield prefix, value


def format_scalar(value: Any) -> str:
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def encode_report(report: Report, fmt: str) -> str:
    if fmt == "json":
        return report_to_json(report)
    pairs = [(key, format_scalar(value)) for key, value in flatten(report)]
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["key", "value"])
        writer.writerows(pairs)
        return buffer.getvalue()
    return "".join(f"{key}={value}\n" for key, value in pairs)


def build_parser() -> argparse.ArgumentParser:
    suppress = argparse.SUPPRESS

    common = argparse.ArgumentParser(add_help=False, argument_default=suppress)
    common.add_argument("--config", help="Read a saved run configuration; explicit flags override it")
    common.add_argument("--save-config", help="Write the merged run configuration as JSON")
    common.add_argument("--output", help="Write the result to this file instead of stdout")
    common.add_argument("--format", choices=["text", "csv", "json"], help="Report encoding")

    params = argparse.ArgumentParser(add_help=False, argument_default=suppress)
    for name in ("a", "b", "c", "d", "alpha"):
        params.add_argument(f"--{name}", type=float)

    initial = argparse.ArgumentParser(add_help=False, argument_default=suppress)
    initial.add_argument("--x0", type=float, help="Initial prey density")
    initial.add_argument("--y0", type=float, help="Initial predator density")

    orbit = argparse.ArgumentParser(add_help=False, argument_default=suppress)
    orbit.add_argument("--steps", type=int, help="Number of steps")
    orbit.add_argument("--transient", type=int, help="Leading states to discard")
    orbit.add_argument("--tol", type=float, help="Relative cycle tolerance")
    orbit.add_argument("--max-period", type=int, help="Largest period searched")

    parser = argparse.ArgumentParser(
        prog="leslie",
        description="Discrete-time Leslie prey-predator model: orbits, fixed points, cycles and chaos",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str, *parents: argparse.ArgumentParser) -> argparse.ArgumentParser:
        return sub.add_parser(name, help=help_text, parents=[common, *parents], argument_default=suppress)

    add("simulate", "Iterate the operator and write the orbit as n,x,y", params, initial, orbit)
    add("fixed-points", "Locate and classify lambda1 and lambda2", params)

    cycles = add("cycles", "Detect the limit period of an orbit", params, initial, orbit)
    cycles.add_argument("--dim", type=int, choices=[1, 2], help="1 for the prey-axis map")

    bifurcate = add("bifurcate", "Sweep one parameter and sample the attractor", params, initial, orbit)
    bifurcate.add_argument("--parameter", choices=["a", "b", "c", "d", "alpha"])
    bifurcate.add_argument("--start", type=float)
    bifurcate.add_argument("--stop", type=float)
    bifurcate.add_argument("--num", type=int)
    bifurcate.add_argument("--samples", type=int, help="Attractor samples kept per parameter value")

    lyap = add("lyapunov", "Estimate the largest Lyapunov exponent", params, initial, orbit)
    lyap.add_argument("--dim", type=int, choices=[1, 2], help="1 for the prey-axis map")
    lyap.add_argument("--renorm-interval", type=int)
    lyap.add_argument("--spectrum", action="store_true", help="Also estimate both exponents by QR")

    add("conjugacy", "Report the conjugacy to the quadratic family and prey-axis regime", params)

    inv = add("invariant-check", "Monte-Carlo check that M1 or M2 is invariant", params)
    inv.add_argument("--set", dest="set_id", choices=["M1", "M2"])
    inv.add_argument("--seed", type=int, help="Sampling seed (required)")
    inv.add_argument("--n-samples", type=int)
    inv.add_argument("--restrict-to-xbound", action="store_true")

    scen = add("scenario", "List the scenario catalog or replay one scenario", orbit)
    scen.add_argument("scenario", nargs="?", default=None, help="Scenario name")
    scen.add_argument("--list", dest="list_scenarios", action="store_true")

    return parser


class LeslieCLI:
    def __init__(self, repository: Optional[RunRepository] = None):
        self.repository = repository or run_repository
        self.console = Console(highlight=False)
        self.err_console = Console(stderr=True, highlight=False)
        self.parser = build_parser()
        self.handlers: Dict[str, Callable[[RunConfig], Tuple[Report, Optional[Data]]]] = {
            "simulate": self.cmd_simulate,
            "fixed-points": self.cmd_fixed_points,
            "cycles": self.cmd_cycles,
            "bifurcate": self.cmd_bifurcate,
            "lyapunov": self.cmd_lyapunov,
            "conjugacy": self.cmd_conjugacy,
            "invariant-check": self.cmd_invariant_check,
            "scenario": self.cmd_scenario,
        }

    def error(self, message: str):
        self.err_console.print(f"✗ {message}", style="red", markup=False)

    def merge_config(self, namespace: argparse.Namespace) -> Tuple[RunConfig, Optional[str]]:
        given = {key: value for key, value in vars(namespace).items() if value is not None}
        command = given.pop("command")
        config_path = given.pop("config", None)
        save_path = given.pop("save_config", None)

        seeded: Dict[str, Any] = {}
        if config_path:
            loaded = self.repository.load_config(config_path)
            if loaded.command != command:
                raise InvalidParameters(f"{config_path} holds a {loaded.command} run, not {command}")
            seeded = loaded.model_dump(exclude_none=True)

        config = RunConfig(**{**command_defaults(command), **seeded, **given, "command": command})
        return config, save_path

    def run(self, argv: Optional[List[str]] = None) -> int:
        try:
            namespace = self.parser.parse_args(argv)
        except SystemExit as e:
            return e.code if isinstance(e.code, int) else 2

        try:
            config, save_path = self.merge_config(namespace)
            report, data = self.handlers[config.command](config)
            self.emit(config, report, data)
            if save_path:
                self.repository.save_config(save_path, config)
        except (ValidationError, InvalidParameters) as e:
            self.error(f"Invalid parameters: {e}")
            return 2
        except LeslieError as e:
            self.error(f"{type(e).__name__}: {e}")
            return 3
        except (OSError, ValueError) as e:
            self.error(f"{type(e).__name__}: {e}")
            return 2
        return 0

    def emit(self, config: RunConfig, report: Report, data: Optional[Data]):
        summary = encode_report(report, config.format)
        if data is None:
            if config.output:
                self.repository.save_text(config.output, summary)
            else:
                self.console.file.write(summary)
            return

        if config.output:
            if isinstance(data, Trajectory):
                self.repository.save_trajectory(config.output, data)
            else:
                self.repository.save_sweep(config.output, data)
            self.console.file.write(summary)
        else:
            self.console.file.write(trajectory_to_csv(data) if isinstance(data, Trajectory) else sweep_to_csv(data))
            self.err_console.file.write(summary)

    def _limit_report(self, t: Trajectory, detection) -> Report:
        return {
            "length": len(t),
            "termination": t.termination.model_dump(mode="json"),
            "final": t.final.model_dump(mode="json"),
            "limit": detection.model_dump(mode="json") if detection is not None else None,
        }

    def cmd_simulate(self, config: RunConfig) -> Tuple[Report, Optional[Data]]:
        config.require("steps")
        p, s0 = config.params(), config.initial()
        t, detection = run_to_limit(p, s0, config.steps, tol=config.tol,
                                    max_period=config.max_period, transient=config.transient)
        report = {
            "command": "simulate",
            "params": p.model_dump(mode="json"),
            "initial": s0.model_dump(mode="json"),
            "steps": config.steps,
            **self._limit_report(t, detection),
        }
        return report, t

    def cmd_fixed_points(self, config: RunConfig) -> Tuple[Report, Optional[Data]]:
        p = config.params()
        _, reason = lambda2_existence(p)
        return {
            "command": "fixed-points",
            "params": p.model_dump(mode="json"),
            "K": p.K,
            "lambda2_existence": reason,
            "fixed_points": [r.model_dump(mode="json") for r in fixed_points(p)],
        }, None

    def cmd_cycles(self, config: RunConfig) -> Tuple[Report, Optional[Data]]:
        config.require("steps")
        if config.dim == 2:
            p, s0 = config.params(), config.initial()
            t, detection = run_to_limit(p, s0, config.steps, tol=config.tol,
                                        max_period=config.max_period, transient=config.transient)
            return {"command": "cycles", "dim": 2, "params": p.model_dump(mode="json"),
                    **self._limit_report(t, detection)}, None

        config.require("a", "b")
        a, b = config.a, config.b
        x0 = config.x0 if config.x0 is not None else 0.5 * (a - 1.0) / b
        t = iterate_axis(a, b, x0, config.steps)
        detection = None
        if t.termination.reason != "domain-exit":
            detection = detect_limit(t, tol=config.tol, max_period=config.max_period,
                                     transient=config.transient)
        closed = cycle2(a, b)
        return {
            "command": "cycles",
            "dim": 1,
            "a": a,
            "b": b,
            "x0": x0,
            "regime": regime_1d(a),
            "termination": t.termination.model_dump(mode="json"),
            "period": detection.period if detection is not None else None,
            "points": sorted(s.x for s in detection.points) if detection is not None else [],
            "cycle2": closed.model_dump(mode="json") if closed is not None else None,
        }, None

    def cmd_bifurcate(self, config: RunConfig) -> Tuple[Report, Optional[Data]]:
        config.require("parameter", "start", "stop")
        spec = SweepSpec(base=config.params(), parameter=config.parameter, start=config.start,
                         stop=config.stop, num=config.num, initial=config.initial())
        rows = bifurcation_sweep(spec, transient=config.transient, samples=config.samples)
        report = {
            "command": "bifurcate",
            "parameter": spec.parameter,
            "start": spec.start,
            "stop": spec.stop,
            "num": spec.num,
            "rows": [
                {
                    "value": row.value,
                    "distinct": len(row.distinct_points(config.tol)),
                    "exit_step": row.exit_step,
                }
                for row in rows
            ],
        }
        return report, rows

    def cmd_lyapunov(self, config: RunConfig) -> Tuple[Report, Optional[Data]]:
        config.require("steps")
        if config.dim == 1:
            config.require("a", "b", "x0")
            estimate = lyapunov_1d(config.a, config.b, config.x0, config.steps, transient=config.transient)
            return {"command": "lyapunov", "dim": 1, "a": config.a, "b": config.b,
                    "estimate": estimate.model_dump(mode="json")}, None

        p, s0 = config.params(), config.initial()
        estimate = lyapunov_max(p, s0, config.steps, transient=config.transient,
                                renorm_interval=config.renorm_interval)
        report = {
            "command": "lyapunov",
            "dim": 2,
            "params": p.model_dump(mode="json"),
            "initial": s0.model_dump(mode="json"),
            "estimate": estimate.model_dump(mode="json"),
        }
        if config.spectrum:
            report["spectrum"] = lyapunov_spectrum(p, s0, config.steps, transient=config.transient).model_dump(mode="json")
        return report, None

    def cmd_conjugacy(self, config: RunConfig) -> Tuple[Report, Optional[Data]]:
        config.require("a", "b")
        a, b = config.a, config.b
        h = conjugacy(a, b)
        try:
            preimage: Optional[float] = p0_preimage(a, b)
        except NoPreimage:
            preimage = None
        closed = cycle2(a, b)
        return {
            "command": "conjugacy",
            "a": a,
            "b": b,
            "conjugacy": h.model_dump(mode="json"),
            "residual_max": conjugacy_residual_max([a], [b], np.linspace(0.0, 1.0, 101).tolist()),
            "regime": regime_1d(a),
            "axis_fixed_points": [fp.model_dump(mode="json") for fp in axis_fixed_points(a, b)],
            "p0_preimage": preimage,
            "cycle2": closed.model_dump(mode="json") if closed is not None else None,
        }, None

    def cmd_invariant_check(self, config: RunConfig) -> Tuple[Report, Optional[Data]]:
        config.require("set_id", "seed")
        verdict = verify_invariance(config.params(), config.set_id, config.n_samples, config.seed,
                                    restrict_to_xbound=config.restrict_to_xbound)
        return {"command": "invariant-check", **verdict.model_dump(mode="json")}, None

    def cmd_scenario(self, config: RunConfig) -> Tuple[Report, Optional[Data]]:
        if config.list_scenarios or config.scenario is None:
            return {
                "command": "scenario",
                "scenarios": [
                    {"name": s.name, "description": s.description, "steps": s.steps,
                     "expectation": s.expectation}
                    for s in scenario_registry.get_scenarios()
                ],
            }, None

        scenario = scenario_registry.get_scenario_by_name(config.scenario)
        if scenario is None:
            raise InvalidParameters(f"Unknown scenario: {config.scenario}")
        steps = config.steps if config.steps is not None else scenario.steps
        t, detection = run_to_limit(scenario.params, scenario.initial, steps, tol=config.tol,
                                    max_period=config.max_period, transient=config.transient)
        report = {
            "command": "scenario",
            "name": scenario.name,
            "description": scenario.description,
            "expectation": scenario.expectation,
            "params": scenario.params.model_dump(mode="json"),
            "initial": scenario.initial.model_dump(mode="json"),
            "steps": steps,
            **self._limit_report(t, detection),
        }
        return report, t


def main(argv: Optional[List[str]] = None) -> int:
    cli = LeslieCLI()
    return cli.run(argv)


if __name__ == "__main__":
    sys.exit(main())
