import math

import numpy as np
import pytest
from scipy import integrate

from expcensus.results import FAIL, INCONCLUSIVE, PASS
from expcensus.verify import (
    CSV_HEADER,
    SUITES,
    VerifyConfig,
    all_passed,
    growth_log_ratio,
    cubic_remainder_bound,
    cubic_remainder_radius,
    cubic_remainder,
    tail_precondition,
    gaussian_cosine_integral,
    m2_closed_form,
    results_csv,
    run_all,
    trend_rows,
)

import oracles


@pytest.mark.parametrize("t", [0.0, 10.0, 100.0])
def test_gaussian_cosine_integral_against_scipy(t):
    f = lambda x: math.exp(-x * x) * max(math.cos(t * x), 0.0)
    if t == 0.0:
        ref = math.sqrt(math.pi)
    else:
        cuts = [0.0] + [(n + 0.5) * math.pi / t for n in range(int(8 * t / math.pi + 0.5))] + [8.0]
        cuts = sorted(c for c in cuts if c <= 8.0)
        ref = 2 * math.fsum(integrate.quad(f, a, b, epsabs=1e-14, epsrel=1e-13)[0]
                            for a, b in zip(cuts, cuts[1:]))
    val, err = gaussian_cosine_integral(t)
    assert val == pytest.approx(ref, abs=1e-12)
    assert err < 1e-12


def test_m2_closed_form_small_radius():
    # at r = 1 the kink sits at pi/2 and only the sine term survives
    assert m2_closed_form(1.0) == pytest.approx(1.0 / math.pi * math.sin(math.pi / 2))


@pytest.mark.parametrize("k,r,scale", [(2, 3.0, 0.9), (2, 7.5, -0.6), (3, 2.0, 0.8), (3, 4.0, 0.3)])
def test_cubic_remainder_against_mpmath(k, r, scale):
    for direction in (1.0, 1j):
        tau = scale * cubic_remainder_radius(k, r) * direction
        ours = cubic_remainder(k, r, tau)
        ref = oracles.cubic_remainder_mp(k, r, tau)
        assert abs(ours - ref) <= 1e-9 * abs(ref) + 1e-300
        assert abs(ours) <= cubic_remainder_bound(k, r, tau)


def test_growth_log_ratio_against_mpmath():
    for j, r, t in ((1, 2.0, 0.1), (2, 3.0, 1e-3), (3, 2.5, 1e-4)):
        ref = oracles.log_f_real(j, r * math.exp(t)) - oracles.log_f_real(j, r)
        assert growth_log_ratio(j, r, t) == pytest.approx(ref, rel=1e-9)


def test_tail_precondition_is_unmet_at_desk_radii():
    for r in (8.0, 10.0, 12.0):
        ok, why = tail_precondition(2, r)
        assert not ok
        assert "tail chain" in why


def test_trend_rows_statuses():
    rows = trend_rows("s", "x", [(1.0, 1.5, 0.0), (2.0, 1.2, 0.0), (3.0, 1.3, 0.0)])
    assert [r.status for r in rows] == [PASS, PASS, FAIL]
    rows = trend_rows("s", "x", [(1.0, 1.5, 0.0), (2.0, 1.49, 0.1)])
    assert rows[1].status == INCONCLUSIVE
    rows = trend_rows("s", "x", [(1.0, 1.05, 0.0)], reference={1.0: 1.2})
    assert rows[0].status == FAIL


def test_suite_selection():
    cfg = VerifyConfig(suites=["regularity", "exact_11"])
    assert cfg.selected() == ["exact_11", "regularity"]
    with pytest.raises(ValueError):
        VerifyConfig(suites=["nope"]).selected()


@pytest.fixture(scope="module")
def full_run():
    return run_all(VerifyConfig())


def test_every_suite_reports(full_run):
    assert {r.suite for r in full_run} == set(SUITES)
    assert all(r.status in (PASS, FAIL, INCONCLUSIVE) for r in full_run)


def test_hard_inequalities_have_no_violations(full_run):
    for r in full_run:
        if r.suite in ("cubic_remainder", "growth_bound", "tail_bound"):
            assert r.status != FAIL, r.name


def test_csv_is_deterministic(full_run):
    text = results_csv(full_run)
    assert text.splitlines()[0] == ",".join(CSV_HEADER)
    again = results_csv(run_all(VerifyConfig()))
    assert text == again


def test_all_passed_ignores_inconclusive():
    from expcensus.results import CheckResult
    rows = [CheckResult("a", "b", {}, 1.0, 1.0, "=", INCONCLUSIVE)]
    assert all_passed(rows)
    rows.append(CheckResult("a", "c", {}, 1.0, 1.0, "=", FAIL))
    assert not all_passed(rows)
