import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from expcensus.census import family_census, reduce_equation
from expcensus.counting import (
    SWEEP_HEADER,
    count_parameters,
    count_sweep,
    log_sum,
    sweep_csv,
    winding_count,
)
from expcensus.golden import COUNTS_3, N_T_RATIO, RATIO_TOL

import oracles


@pytest.mark.parametrize("r,n", [(7.0, 2), (13.0, 4), (20.0, 6), (50.0, 14)])
def test_lattice_family_counts(r, n):
    rep = count_parameters(1, 1, r)
    assert rep.n == n == 2 * math.floor(r / (2 * math.pi))
    assert rep.n_B == 0


def test_lattice_family_log_sum():
    rep = count_parameters(1, 1, 7.0)
    assert rep.N == pytest.approx(2 * math.log(7.0 / (2 * math.pi)), rel=1e-14)
    assert rep.N == pytest.approx(0.21606616529, abs=1e-10)


def test_winding_count_includes_origin():
    assert winding_count(reduce_equation("A", 2, 1), 0, 7.0) == 4
    assert winding_count(reduce_equation("A", 1, 1), 1, 7.0) == 1


@pytest.mark.parametrize("k,l", [(1, 2), (2, 1)])
def test_depth_three_counts(k, l):
    rows = count_sweep(k, l, [3.0, 4.0, 5.0, 6.0])
    assert [row.report.n for row in rows] == [COUNTS_3[r] for r in (3.0, 4.0, 5.0, 6.0)]
    for row in rows:
        assert row.ratio_N_T == pytest.approx(N_T_RATIO[(k, l)][row.report.r], abs=RATIO_TOL)
    devs = [abs(row.ratio_N_T - 1.0) for row in rows]
    assert all(y < x for x, y in zip(devs, devs[1:]))


def test_lambert_log_sum():
    r = 5.0
    ref = math.fsum(math.log(r / abs(z)) for z in oracles.lambert_roots(r))
    assert count_parameters(1, 2, r).N == pytest.approx(ref, rel=1e-12)


def test_pair_roots_removed_from_count():
    rep = count_parameters(2, 1, 7.0)
    assert (rep.n_A, rep.n_B, rep.n) == (2808, 2, 2806)
    assert rep.n_paper_formula == rep.n_A - rep.n_B
    assert rep.N < rep.N_A_bar


def test_counts_are_even():
    for k, l, r in ((1, 2, 5.5), (2, 1, 7.0), (1, 1, 30.0)):
        rep = count_parameters(k, l, r)
        assert rep.n % 2 == 0 and rep.n_A % 2 == 0 and rep.n_B % 2 == 0


def test_sweep_csv_shape():
    rows = count_sweep(1, 2, [3.0, 4.0])
    text = sweep_csv(rows)
    lines = text.splitlines()
    assert lines[0] == ",".join(SWEEP_HEADER)
    assert len(lines) == 3
    assert lines[1].split(",")[:6] == ["3.0", "1", "2", "14", "0", "14"]


def test_sweep_rejects_unsorted_grid():
    with pytest.raises(ValueError):
        count_sweep(1, 2, [4.0, 3.0], with_companions=False)


_CENSUS = {}


def _fc():
    if "fc" not in _CENSUS:
        _CENSUS["fc"] = family_census(2, 1, 6.0)
    return _CENSUS["fc"]


@settings(max_examples=40, deadline=None)
@given(st.floats(1.0, 5.9), st.floats(0.01, 1.0))
def test_log_sum_additivity(r1, dr):
    from expcensus.counting import report_from_census
    r2 = min(r1 + dr, 6.0)
    fc = _fc()
    lo, hi = report_from_census(fc, r1), report_from_census(fc, r2)
    between = [rec for rec in fc.a.roots if r1 < rec.modulus <= r2]
    expected = lo.N + log_sum(r2, between) + lo.n * math.log(r2 / r1)
    assert hi.N == pytest.approx(expected, abs=1e-12 * max(1.0, hi.N))
