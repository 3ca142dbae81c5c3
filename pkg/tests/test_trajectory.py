import numpy as np
import pytest

from core.errors import InsufficientData, InvalidParameters
from core.fixed_points import fixed_points
from core.model import ModelParams, State, step_xy
from core.trajectory import (
    SweepSpec,
    bifurcation_sweep,
    detect_limit,
    effective_tolerance,
    iterate,
    iterate_axis,
    run_to_limit,
)

CASE_TWO = ModelParams(a=3, b=1, c=2, d=4.5, alpha=2)
LADDER_START = State(x=1.2, y=0.2)
# d = 1.5 keeps y/x below 0.5, so the predator never goes negative while both die out.
EXTINCTION = ModelParams(a=1.5, b=1, c=1, d=1.5, alpha=1)
EXTINCTION_START = State(x=0.05, y=0.01)


def ladder(a: float) -> ModelParams:
    return ModelParams(a=a, b=1, c=2, d=2, alpha=4)


def test_trajectory_records_every_state():
    """states[0] is the initial state and consecutive states are related by one step."""
    t = iterate(CASE_TWO, State(x=0.25, y=0.3), 50)
    assert len(t) == 51
    assert t.states[0] == State(x=0.25, y=0.3)
    for (x, y), (x1, y1) in zip(t.points[:-1], t.points[1:]):
        assert (x1, y1) == step_xy(CASE_TWO, x, y)
    assert t.termination.reason == "max-steps"


def test_points_are_read_only():
    """Stored orbits cannot be modified in place."""
    t = iterate(CASE_TWO, State(x=0.25, y=0.3), 5)
    with pytest.raises(ValueError):
        t.points[0, 0] = 1.0


def test_convergence_to_coexistence_point():
    """After 20000 steps from (0.25, 0.3) the state is within 1e-5 of (2/7, 5/14)."""
    t = iterate(CASE_TWO, State(x=0.25, y=0.3), 20_000)
    assert t.final.x == pytest.approx(0.285714, abs=1e-5)
    assert t.final.y == pytest.approx(0.357143, abs=1e-5)


def test_attraction_to_prey_fixed_point():
    """a = 3.8, d = 2 from (1.2, 0.2) reaches (1.8, 0) within 1e-4 by 10^4 steps."""
    t = iterate(ladder(3.8), LADDER_START, 10_000)
    assert t.final.x == pytest.approx(1.8, abs=1e-4)
    assert t.final.y == pytest.approx(0.0, abs=1e-4)


@pytest.mark.parametrize("params,s0", [
    (ModelParams(a=1.5, b=1, c=1, d=2, alpha=1), State(x=0.05, y=0.01)),
    (ModelParams(a=1.8, b=1, c=1, d=2, alpha=1), State(x=0.3, y=0.1)),
    (ModelParams(a=2.0, b=1000, c=1, d=2, alpha=1), State(x=5e-4, y=2e-4)),
])
def test_extinction(params, s0):
    """For a <= 2 the orbit enters the 1e-6 ball around the origin within 5000 steps."""
    t = iterate(params, s0, 5000)
    assert float(np.abs(t.points).max(axis=1).min()) < 1e-6
    if t.termination.reason == "domain-exit":
        assert t.termination.exit.violated == "x-underflow"


def test_predator_decays_when_d_at_most_two():
    """y never increases along an orbit in M2 with 1 < d <= 2."""
    t = iterate(ModelParams(a=1.8, b=1, c=1, d=2, alpha=1), State(x=0.3, y=0.1), 2000)
    assert np.all(np.diff(t.points[:, 1]) <= 0)


def test_domain_exit_keeps_prefix():
    """The orbit stops at the exit; the raw pair is carried in the termination."""
    p = ModelParams(a=5.5, b=1, c=1, d=2, alpha=1)
    t = iterate(p, State(x=2.0, y=0.0), 100)
    assert t.termination.reason == "domain-exit"
    assert len(t) == t.termination.step
    assert t.termination.exit.x <= 0


def test_iterate_precondition():
    """n must be positive."""
    with pytest.raises(InvalidParameters):
        iterate(CASE_TWO, State(x=0.25, y=0.3), 0)


def test_stop_tolerance():
    """Stops early once successive states agree."""
    t = iterate(CASE_TWO, State(x=0.25, y=0.3), 20_000, stop_tol=1e-12)
    assert t.termination.reason == "converged"
    assert len(t) < 20_001


def test_determinism():
    """Identical inputs give bit-identical orbits."""
    first = iterate(ladder(4.8), State(x=1.0, y=0.2), 5000)
    second = iterate(ladder(4.8), State(x=1.0, y=0.2), 5000)
    assert np.array_equal(first.points, second.points)


def test_effective_tolerance_floor():
    """Relative to scale with an absolute floor."""
    assert effective_tolerance(1e-6, 2.0) == pytest.approx(2e-6)
    assert effective_tolerance(1e-6, 0.0) == pytest.approx(1e-9)


def test_period_two():
    """a = 4.3 settles on the prey-axis 2-cycle (1.58211, 0), (2.71789, 0)."""
    t, detection = run_to_limit(ladder(4.3), LADDER_START, 20_000)
    assert detection.period == 2
    assert t.termination.reason == "cycle"
    xs = sorted(s.x for s in detection.points)
    assert xs == pytest.approx([1.58211, 2.71789], abs=1e-3)
    assert all(s.y < 1e-3 for s in detection.points)


@pytest.mark.slow
@pytest.mark.parametrize("a,period", [(4.5, 4), (4.564, 8)])
def test_period_doubling_ladder(a, period):
    """a = 4.5 gives period 4 and a = 4.564 gives period 8."""
    t = iterate(ladder(a), LADDER_START, 100_000)
    detection = detect_limit(t)
    assert detection is not None
    assert detection.period == period


def test_detected_period_is_minimal():
    """No proper divisor of the reported period passes the same window."""
    t = iterate(ladder(4.5), LADDER_START, 30_000)
    detection = detect_limit(t)
    assert detection.period == 4
    assert detect_limit(t, max_period=3) is None


def test_period_one_matches_fixed_point():
    """A detected period-1 limit is the coexistence fixed point."""
    t, detection = run_to_limit(CASE_TWO, State(x=0.25, y=0.3), 20_000)
    assert detection.period == 1
    assert t.termination.reason == "converged"
    lam2 = [r for r in fixed_points(CASE_TWO) if r.id == "lambda2"][0].location
    s = detection.points[0]
    assert abs(s.x - lam2.x) < 10 * 1e-6
    assert abs(s.y - lam2.y) < 10 * 1e-6


def test_chaotic_orbit_has_no_period():
    """The a = 4.8 prey-axis orbit is aperiodic."""
    t = iterate(ladder(4.8), State(x=1.0, y=0.2), 5000)
    assert detect_limit(t) is None


def test_insufficient_data():
    """Too short for transient + 2 * max_period."""
    t = iterate(CASE_TWO, State(x=0.25, y=0.3), 100)
    with pytest.raises(InsufficientData):
        detect_limit(t, transient=50, max_period=64)


def test_axis_iteration():
    """Prey-axis orbits keep y = 0."""
    t = iterate_axis(4.3, 1, 1.65, 200)
    assert np.all(t.points[:, 1] == 0)


def test_sweep_resolves_doubling():
    """Distinct attractor points: 2 near a = 4.3 and 4 near a = 4.5."""
    spec = SweepSpec(base=ladder(4.0), parameter="a", start=4.3, stop=4.5, num=2, initial=LADDER_START)
    rows = bifurcation_sweep(spec, transient=20_000, samples=64)
    assert [row.value for row in rows] == [4.3, 4.5]
    assert len(rows[0].distinct_points(1e-4)) == 2
    assert len(rows[1].distinct_points(1e-4)) == 4


def test_sweep_single_point_matches_iterate():
    """A one-point sweep is iterate plus tail sampling."""
    spec = SweepSpec(base=CASE_TWO, parameter="d", start=4.5, stop=4.5, num=1, initial=State(x=0.25, y=0.3))
    (row,) = bifurcation_sweep(spec, transient=100, samples=10)
    t = iterate(CASE_TWO, State(x=0.25, y=0.3), 110)
    assert [(s.x, s.y) for s in row.samples] == [tuple(pt) for pt in t.points[100:110].tolist()]


def test_sweep_rows_in_parameter_order():
    """Rows come back in grid order whatever the thread count."""
    spec = SweepSpec(base=ladder(4.0), parameter="a", start=4.0, stop=4.6, num=13, initial=LADDER_START)
    rows = bifurcation_sweep(spec, transient=200, samples=8, threads=4)
    assert [row.value for row in rows] == pytest.approx(np.linspace(4.0, 4.6, 13).tolist())
    serial = bifurcation_sweep(spec, transient=200, samples=8, threads=1)
    assert rows == serial


def test_sweep_extinction():
    """Across a in [1.2, 1.8] with d = 1.5 every row samples an orbit inside the 1e-6 ball."""
    spec = SweepSpec(base=EXTINCTION, parameter="a", start=1.2, stop=1.8, num=7, initial=EXTINCTION_START)
    for row in bifurcation_sweep(spec, transient=200, samples=16):
        assert row.exit is None
        assert len(row.samples) == 16
        assert all(max(s.x, s.y) < 1e-6 for s in row.samples)


@pytest.mark.parametrize("a", [1.2, 1.5, 1.8])
def test_extinction_entry_step(a):
    """The orbit enters the 1e-6 ball, stays there and can only leave through prey underflow."""
    t = iterate(EXTINCTION.with_value("a", a), EXTINCTION_START, 5000)
    inside = np.abs(t.points).max(axis=1) < 1e-6
    assert inside.any()
    entry = int(np.argmax(inside))
    assert entry < 200
    assert inside[entry:].all()
    if t.termination.reason == "domain-exit":
        assert t.termination.exit.violated == "x-underflow"


def test_sweep_records_exit():
    """A row that leaves the domain is recorded, not raised."""
    spec = SweepSpec(base=ladder(4.0), parameter="a", start=5.5, stop=5.5, num=1, initial=State(x=2.0, y=0.0))
    (row,) = bifurcation_sweep(spec, transient=10, samples=10)
    assert row.exit is not None
    assert row.exit_step is not None


def test_sweep_precondition():
    """transient and samples must be positive."""
    spec = SweepSpec(base=CASE_TWO, parameter="a", start=3, stop=3.5, num=2, initial=State(x=0.25, y=0.3))
    with pytest.raises(InvalidParameters):
        bifurcation_sweep(spec, transient=0, samples=5)
