import math

import numpy as np
import pytest

from core.errors import NotAFixedPoint
from core.fixed_points import (
    classify_lambda1,
    classify_lambda2,
    classify_moduli,
    closed_form_B,
    closed_form_eigenvalues,
    expanded_discriminant,
    fixed_points,
    lambda1,
    lambda2,
    lambda2_existence,
    lambda2_trace_det,
    quadratic_roots,
)
from core.model import ModelParams, jacobian, step_xy

CASE_ONE = ModelParams(a=3, b=2, c=5, d=4, alpha=1)
CASE_TWO = ModelParams(a=3, b=1, c=2, d=4.5, alpha=2)


@pytest.fixture(scope="module")
def random_params():
    rng = np.random.default_rng(2024)
    draws = []
    for _ in range(500):
        a, d = rng.uniform(2.0, 6.0, size=2)
        b, c, alpha = rng.uniform(0.1, 5.0, size=3)
        draws.append(ModelParams(a=a, b=b, c=c, d=d, alpha=alpha))
    return draws


@pytest.mark.parametrize("params,expected", [
    (CASE_ONE, (1 / 12, 1 / 6)),
    (CASE_TWO, (2 / 7, 5 / 14)),
])
def test_lambda2_location(params, expected):
    """Closed-form coexistence points are fixed to 1e-12."""
    s = lambda2(params)
    assert (s.x, s.y) == pytest.approx(expected, abs=1e-15)
    x1, y1 = step_xy(params, s.x, s.y)
    assert max(abs(x1 - s.x), abs(y1 - s.y)) < 1e-12


def test_no_fixed_points_at_a_two():
    """a = 2 leaves no fixed point in the open quadrant."""
    assert fixed_points(ModelParams(a=2, b=1, c=1, d=3, alpha=1)) == []
    with pytest.raises(NotAFixedPoint):
        lambda1(ModelParams(a=2, b=1, c=1, d=3, alpha=1))


def test_lambda2_existence_reasons():
    """d = 2 collapses onto lambda1; d < 2 gives a negative predator."""
    exists, reason = lambda2_existence(ModelParams(a=3, b=1, c=1, d=2, alpha=1))
    assert not exists and "collapses" in reason
    exists, reason = lambda2_existence(ModelParams(a=3, b=1, c=1, d=1.5, alpha=1))
    assert not exists and "d < 2" in reason
    with pytest.raises(NotAFixedPoint):
        lambda2(ModelParams(a=3, b=1, c=1, d=1.5, alpha=1))
    assert [r.id for r in fixed_points(ModelParams(a=3, b=1, c=1, d=2, alpha=1))] == ["lambda1"]


@pytest.mark.parametrize("a,d,expected", [
    (3, 1.5, "attractive"),
    (5, 3, "repeller"),
    (3, 3, "saddle"),
    (4, 1.5, "nonhyperbolic"),
    (3, 2, "nonhyperbolic"),
])
def test_lambda1_classification_table(a, d, expected):
    """Moduli |3 - a| and |d - 1| decide the type of lambda1."""
    report = classify_lambda1(ModelParams(a=a, b=1, c=1, d=d, alpha=1))
    assert report.classification == expected
    assert report.location.y == 0.0


def test_lambda1_eigenvalues_match_jacobian():
    """The Jacobian at lambda1 has eigenvalues 3 - a and d - 1."""
    p = ModelParams(a=3.4, b=1.5, c=2, d=1.8, alpha=1)
    report = classify_lambda1(p)
    j = jacobian(p, report.location)
    assert j.trace == pytest.approx(report.trace, abs=1e-12)
    assert j.det == pytest.approx(report.det, abs=1e-12)


def test_lambda2_complex_attractive():
    """alpha = 0.5: complex pair of modulus sqrt(Delta) ~ 0.9535."""
    report = classify_lambda2(ModelParams(a=3, b=1, c=2, d=4.5, alpha=0.5))
    assert report.trace == pytest.approx(-0.5909090909, abs=1e-9)
    assert report.det == pytest.approx(0.9090909090, abs=1e-9)
    assert report.eigenvalues[0].imag != 0.0
    assert report.eigenvalues[0].modulus == pytest.approx(math.sqrt(report.det), abs=1e-12)
    assert report.eigenvalues[0].modulus == pytest.approx(0.9535, abs=1e-4)
    assert report.classification == "attractive"
    assert report.closed_form_eigenvalues is None


def test_lambda2_convergent_case():
    """T = -0.785714..., Delta = 5/7, modulus ~ 0.845."""
    report = classify_lambda2(CASE_TWO)
    assert report.trace == pytest.approx(5 / 7 - 1.5, abs=1e-12)
    assert report.det == pytest.approx(5 / 7, abs=1e-12)
    assert report.eigenvalues[1].modulus == pytest.approx(math.sqrt(5 / 7), abs=1e-12)
    assert report.classification == "attractive"


def test_lambda2_case_one_attractive():
    """The coexistence point of case 1 attracts."""
    assert classify_lambda2(CASE_ONE).classification == "attractive"


def test_lambda2_approaches_lambda1_spectrum():
    """As d -> 2+ the eigenvalues at lambda2 approach {3 - a, d - 1}."""
    p = ModelParams(a=3.5, b=1, c=1, d=2 + 1e-6, alpha=1)
    near = sorted(e.real for e in classify_lambda2(p).eigenvalues)
    limit = sorted(e.real for e in classify_lambda1(p).eigenvalues)
    assert near == pytest.approx(limit, abs=1e-3)


def test_jacobian_at_lambda2_matches_report(random_params):
    """Trace and determinant of the Jacobian at lambda2 equal the closed forms."""
    for p in random_params[:50]:
        report = classify_lambda2(p)
        j = jacobian(p, report.location)
        scale = max(1.0, abs(report.trace), abs(report.det))
        assert abs(j.trace - report.trace) < 1e-12 * scale * 10
        assert abs(j.det - report.det) < 1e-12 * scale * 10


def test_vieta(random_params):
    """mu1 + mu2 = T and mu1 * mu2 = Delta to 1e-10."""
    for p in random_params:
        report = classify_lambda2(p)
        mu1, mu2 = (e.value for e in report.eigenvalues)
        assert abs((mu1 + mu2) - report.trace) <= 1e-10 * max(1.0, abs(report.trace))
        assert abs(mu1 * mu2 - report.det) <= 1e-10 * max(1.0, abs(report.det))


def test_expanded_discriminant(random_params):
    """D = B^2 - 4 K^2 Delta to 1e-9 relative error."""
    for p in random_params:
        B = closed_form_B(p)
        _, delta = lambda2_trace_det(p)
        reference = B * B - 4 * p.K ** 2 * delta
        scale = B * B + 4 * p.K ** 2 * abs(delta)
        assert abs(expanded_discriminant(p) - reference) <= 1e-9 * scale


def test_closed_form_roots(random_params):
    """When D >= 0 the closed form reproduces the quadratic roots to 1e-9."""
    checked = 0
    for p in random_params:
        B = closed_form_B(p)
        D = expanded_discriminant(p)
        if D < 1e-6 * (B * B):
            continue
        trace, det = lambda2_trace_det(p)
        expected = sorted(r.real for r in quadratic_roots(trace, det))
        got = sorted(closed_form_eigenvalues(p))
        assert got == pytest.approx(expected, rel=1e-9, abs=1e-9)
        checked += 1
    assert checked > 10


def test_classification_ignores_order():
    """The rule depends only on the pair of moduli."""
    for m1, m2 in [(0.5, 0.7), (1.5, 0.2), (2.0, 3.0), (1.0, 0.3)]:
        assert classify_moduli(m1, m2) == classify_moduli(m2, m1)


def test_quadratic_roots_stable():
    """Real roots use the cancellation-free form."""
    r1, r2 = quadratic_roots(1e8 + 1e-8, 1.0)
    assert sorted([r1.real, r2.real]) == pytest.approx([1e-8, 1e8], rel=1e-12)


def test_fixed_point_residual_random_draws(random_params):
    """lambda1 and lambda2 map to themselves for random a > 2, d > 2."""
    for p in random_params:
        for s in (lambda1(p), lambda2(p)):
            x1, y1 = step_xy(p, s.x, s.y)
            assert max(abs(x1 - s.x), abs(y1 - s.y)) < 1e-12 * max(1.0, s.x, s.y)
