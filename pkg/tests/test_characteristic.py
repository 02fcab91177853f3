import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from expcensus.characteristic import (
    admissibility_probe,
    characteristic_direct,
    characteristic_ee,
    characteristic_split,
    ee_prediction,
    log_abs_integrand,
    probe_points,
)
from expcensus.errors import TowerOverflow
from expcensus.golden import EE_RATIO, T_F3
from expcensus.iterates import eval_F
from expcensus.quadrature import find_kinks, integrate_positive_part
from expcensus.results import INCONCLUSIVE

import oracles


def test_positive_part_of_cosine():
    # max(c, 0) = (|c| + c)/2; over [0, pi] |cos 5x| integrates to 2 and cos 5x to 0
    q = integrate_positive_part(lambda x: np.cos(5 * x), 0.0, math.pi, frequency=5.0,
                                tol_abs=1e-13, tol_rel=1e-13)
    assert q.value == pytest.approx(1.0, abs=1e-12)
    assert q.abs_error <= 1e-12
    assert np.allclose(q.kinks, (np.arange(5) + 0.5) * math.pi / 5, atol=1e-11)


def test_kinks_are_sign_changes():
    kinks = find_kinks(lambda x: np.cos(3 * x), 0.0, math.pi, 4096)
    assert np.allclose(kinks, [math.pi / 6, math.pi / 2, 5 * math.pi / 6], atol=1e-11)


def test_characteristic_of_identity():
    assert characteristic_direct(1, 7.0).value == pytest.approx(math.log(7.0), rel=1e-14)


def test_characteristic_m2_closed_form():
    r = 10.0
    t0 = math.acos(-math.log(r) / r)
    exact = (t0 * math.log(r) + r * math.sin(t0)) / math.pi
    rep = characteristic_direct(2, r)
    assert rep.value == pytest.approx(exact, rel=1e-6)
    assert rep.value == pytest.approx(exact, rel=1e-12)


@pytest.mark.parametrize("r", sorted(T_F3))
def test_characteristic_f3_against_scipy(r):
    ref = oracles.characteristic_quad(3, r)
    assert characteristic_direct(3, r).value == pytest.approx(ref, rel=1e-9)
    assert T_F3[r] == pytest.approx(ref, rel=1e-8)


@pytest.mark.parametrize("r", [4.0, 5.0, 6.0, 8.0, 10.0])
def test_split_agrees_with_direct(r):
    d = characteristic_direct(3, r)
    s = characteristic_split(3, r)
    assert s.value == pytest.approx(d.value, rel=1e-6)
    assert s.delta_r == pytest.approx(float(eval_F(1, r)) ** -0.4, rel=1e-14)
    assert s.outer_bound_ok


@pytest.mark.parametrize("r", sorted(EE_RATIO))
def test_double_exponential_ratio(r):
    rep = characteristic_ee(r)
    t = np.linspace(0.0, math.pi, 400_001)
    v = np.maximum(np.exp(r * np.cos(t)) * np.cos(r * np.sin(t)), 0.0)
    from scipy.integrate import simpson
    ref = simpson(v, x=t) / math.pi
    assert rep.value == pytest.approx(ref, rel=1e-9)
    assert rep.value / ee_prediction(r) == pytest.approx(EE_RATIO[r], abs=1e-6)


def test_integrand_overflow_is_reported():
    with pytest.raises(TowerOverflow):
        characteristic_direct(4, 6.0)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.floats(0.5, 2.5), st.floats(0.0, math.pi))
def test_integrand_conjugation_symmetry(m, r, theta):
    v = log_abs_integrand(m, r)
    a, b = v(np.array([theta])), v(np.array([-theta]))
    assert abs(a[0] - b[0]) <= 1e-14 * max(1.0, abs(a[0]))


@settings(max_examples=20, deadline=None)
@given(st.floats(1.0, 6.0), st.floats(0.05, 1.0))
def test_characteristic_increases_with_radius(r, dr):
    assert characteristic_direct(3, r + dr).value >= characteristic_direct(3, r).value


def test_cubic_tower_ratio_improves():
    from expcensus.iterates import AsymptoticModel, eval_asymptotic
    devs = []
    for r in (4.0, 6.0, 8.0, 10.0):
        g = float(eval_asymptotic(AsymptoticModel(2, 1, "prop2_rhs"), r))
        devs.append(abs(characteristic_direct(3, r).value / g - 1.0))
    assert all(y < x for x, y in zip(devs, devs[1:]))


def test_gaussian_model_near_the_axis():
    r = 40.0
    delta = float(eval_F(1, r)) ** -0.4
    half, far = probe_points(2, r, [0.5 * delta, math.pi])
    assert half.inner_deviation <= 0.05
    assert far.log_outer_ratio <= -0.5 * math.log(r)


def test_admissibility_probe_statuses():
    res = admissibility_probe(3, 6.0)
    # the inner tolerance is vacuous at this radius, so the probe cannot be conclusive
    assert res.status == INCONCLUSIVE
