"""Parameter counts ``n(r)`` and the integrated counting function ``N(r)``.

``n(r)`` is the number of distinct ``0 < |lam| <= r`` with ``f_{k+l}(lam) =
f_k(lam)`` and no earlier coincidence ``f_i(lam) = f_j(lam)``, ``0 < i < j <
k+l``.  Counts come from the certified census; winding numbers on the
circle ``|lam| = r (1 + 1e-9)`` certify them radius by radius.
``N(r) = sum ln(r/|lam|)`` over the counted parameters, which is the exact
value of ``integral_0^r n(t)/t dt`` for a step function.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

from .census import (
    BranchEquation,
    Census,
    FamilyCensus,
    RootRecord,
    family_census,
    filter_b2,
    nudged_windings,
    union_roots,
)
from .characteristic import characteristic_direct
from .errors import ConsistencyError, IncompleteCensus
from .iterates import AsymptoticModel, eval_asymptotic

SWEEP_HEADER = ["r", "k", "l", "n_A", "n_B", "n", "n_paper_formula", "N", "T",
                "theorem_rhs", "ratio_N_T", "ratio_n_thm"]


@dataclass(frozen=True)
class CountReport:
    r: float
    k: int
    l: int
    n_A: int
    n_B: int
    n: int
    n_paper_formula: int
    N: float
    N_A_bar: float
    method: str
    contour_radius_used: float


def winding_count(eq: BranchEquation, branch_m: int, r: float) -> int:
    """Zeros of ``h - 2 pi i m`` in ``|lam| <= r`` with multiplicity, origin included."""
    windings, _ = nudged_windings(eq, r, [branch_m])
    return windings[branch_m]


def log_sum(r: float, roots: list[RootRecord]) -> float:
    """``sum ln(r/|lam|)``; roots flagged on the boundary contribute zero."""
    return math.fsum(max(0.0, math.log(r / rec.modulus)) for rec in roots)


def _certify(census: Census, r: float) -> tuple[list[RootRecord], float]:
    """Roots of ``census`` inside radius ``r``, checked branch by branch."""
    eq = census.equation
    ms = sorted(census.windings)
    windings, contour = nudged_windings(eq, r, ms)
    counts = census.branch_counts(contour)
    for m in ms:
        if windings[m] - eq.origin_multiplicity(m) != counts[m]:
            raise IncompleteCensus(
                f"{eq.describe()} r={r} m={m}: winding {windings[m]} vs census {counts[m]}")
    return census.within(contour), contour


def report_from_census(fc: FamilyCensus, r: float) -> CountReport:
    a_roots, contour = _certify(fc.a, r)
    pair_roots = []
    for pc in fc.pairs:
        pair_roots.extend(_certify(pc, r)[0])
    b_roots = union_roots(pair_roots)
    kept, _ = filter_b2(a_roots, b_roots, fc.k, fc.l)
    return CountReport(
        r=r, k=fc.k, l=fc.l,
        n_A=len(a_roots),
        n_B=len(b_roots),
        n=len(kept),
        n_paper_formula=len(a_roots) - len(b_roots),
        N=log_sum(r, kept),
        N_A_bar=log_sum(r, a_roots),
        method="both",
        contour_radius_used=contour,
    )


def count_parameters(k: int, l: int, r: float) -> CountReport:
    return report_from_census(family_census(k, l, r), r)


@dataclass(frozen=True)
class SweepRow:
    report: CountReport
    T: float
    theorem_rhs: float
    e4_rhs: float | None
    r_gprime: float | None

    @property
    def ratio_N_T(self) -> float:
        return self.report.N / self.T if self.T > 0 else math.nan

    @property
    def ratio_n_thm(self) -> float:
        return self.report.n / self.theorem_rhs

    def csv_fields(self) -> list[str]:
        rep = self.report
        vals = [rep.r, rep.k, rep.l, rep.n_A, rep.n_B, rep.n, rep.n_paper_formula, rep.N,
                self.T, self.theorem_rhs, self.ratio_N_T, self.ratio_n_thm]
        return [repr(v) if isinstance(v, float) else str(v) for v in vals]


def companion_values(k: int, l: int, r: float) -> tuple[float, float, float | None, float | None]:
    """``T(r, f_{k+l})``, theorem rate, ``g(r)`` and ``r g'(r)`` at one radius."""
    T = characteristic_direct(k + l, r).value
    thm = float(eval_asymptotic(AsymptoticModel(k, l, "theorem_rhs"), r))
    if k + l >= 3:
        e4 = float(eval_asymptotic(AsymptoticModel(k, l, "e4_rhs"), r))
        rg = float(eval_asymptotic(AsymptoticModel(k, l, "r_gprime"), r))
    else:
        e4 = rg = None
    return T, thm, e4, rg


def count_sweep(k: int, l: int, r_grid, with_companions: bool = True,
                census: FamilyCensus | None = None) -> list[SweepRow]:
    """Reports along an ascending grid from one census at the largest radius
    (``census`` may supply it, provided it covers the grid)."""
    grid = [float(r) for r in r_grid]
    if not grid:
        return []
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("radius grid must be strictly ascending")
    fc = census if census is not None else family_census(k, l, grid[-1])
    if (fc.k, fc.l) != (k, l) or fc.radius < grid[-1]:
        raise ValueError("supplied census does not cover the grid")
    rows = []
    for r in grid:
        rep = report_from_census(fc, r)
        if with_companions:
            T, thm, e4, rg = companion_values(k, l, r)
        else:
            T = thm = math.nan
            e4 = rg = None
        rows.append(SweepRow(rep, T, thm, e4, rg))
    ns = [row.report.n for row in rows]
    if any(b < a for a, b in zip(ns, ns[1:])):
        raise ConsistencyError(f"n(r) decreased along the grid: {ns}")
    return rows


def sweep_csv(rows: list[SweepRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SWEEP_HEADER)
    for row in rows:
        w.writerow(row.csv_fields())
    return buf.getvalue()
