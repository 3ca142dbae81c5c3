import csv
import io
import json
import os
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np

from core.logger import logger
from core.model import ModelParams, State
from core.trajectory import SweepRow, Termination, Trajectory
from storage.models import RunConfig

PathLike = Union[str, Path]

TRAJECTORY_HEADER = ["n", "x", "y"]
SWEEP_HEADER = ["param", "x", "y"]


def atomic_write(path: PathLike, text: str) -> Path:
    """Write text to a temp file next to path, then rename it over path."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    with open(tmp, "w", encoding="utf-8", newline="") as f:
        f.write(text)
        f.flush()
        os.fsync(f.fileno())
    os.replace(tmp, path)
    return path


def _write_rows(header: List[str], rows) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def _read_rows(text: str, header: List[str]) -> List[List[str]]:
    reader = csv.reader(io.StringIO(text))
    first = next(reader, None)
    if first != header:
        raise ValueError(f"Expected CSV header {','.join(header)}, got {first}")
    return [row for row in reader if row]


def trajectory_to_csv(t: Trajectory) -> str:
    """`n,x,y` rows; floats use repr, the shortest decimal that round-trips."""
    return _write_rows(
        TRAJECTORY_HEADER,
        ((n, repr(float(x)), repr(float(y))) for n, (x, y) in enumerate(t.points)),
    )


def trajectory_from_csv(text: str, params: ModelParams,
                        termination: Optional[Termination] = None) -> Trajectory:
    rows = _read_rows(text, TRAJECTORY_HEADER)
    if not rows:
        raise ValueError("Trajectory CSV has no rows")
    for expected, row in enumerate(rows):
        if int(row[0]) != expected:
            raise ValueError(f"Row {expected} is numbered {row[0]}")
    points = np.array([[float(row[1]), float(row[2])] for row in rows], dtype=np.float64)
    points.setflags(write=False)
    return Trajectory(
        params=params,
        initial=State(x=points[0, 0], y=points[0, 1]),
        points=points,
        termination=termination or Termination(reason="max-steps", step=len(points) - 1),
    )


def sweep_to_csv(rows: List[SweepRow]) -> str:
    """One `param,x,y` line per attractor sample; rows without samples write nothing."""
    return _write_rows(
        SWEEP_HEADER,
        ((repr(row.value), repr(s.x), repr(s.y)) for row in rows for s in row.samples),
    )


def sweep_from_csv(text: str) -> List[SweepRow]:
    """Group consecutive lines sharing a parameter value back into rows."""
    grouped: List[SweepRow] = []
    value: Optional[float] = None
    samples: List[State] = []
    for row in _read_rows(text, SWEEP_HEADER):
        v = float(row[0])
        if value is not None and v != value:
            grouped.append(SweepRow(value=value, samples=samples))
            samples = []
        value = v
        samples.append(State(x=float(row[1]), y=float(row[2])))
    if value is not None:
        grouped.append(SweepRow(value=value, samples=samples))
    return grouped


def report_to_json(report: Dict[str, Any]) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


class RunRepository:
    """Writes run artifacts to disk and reads configurations back."""

    def save_text(self, path: PathLike, text: str) -> Path:
        try:
            written = atomic_write(path, text)
            logger.info(f"Wrote {written}")
            return written
        except OSError as e:
            logger.error(f"Failed to write {path}: {e}")
            raise

    def save_trajectory(self, path: PathLike, t: Trajectory) -> Path:
        return self.save_text(path, trajectory_to_csv(t))

    def save_sweep(self, path: PathLike, rows: List[SweepRow]) -> Path:
        return self.save_text(path, sweep_to_csv(rows))

    def save_config(self, path: PathLike, config: RunConfig) -> Path:
        return self.save_text(path, report_to_json(config.model_dump(mode="json")))

    def load_config(self, path: PathLike) -> RunConfig:
        try:
            with open(path, "r", encoding="utf-8") as f:
                return RunConfig.model_validate_json(f.read())
        except OSError as e:
            logger.error(f"Failed to read config {path}: {e}")
            raise


run_repository = RunRepository()
