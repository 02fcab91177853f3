"""Verification harness: bound checks, closed forms and asymptotic trends.

Proven inequalities are checked as hard bounds.  Asymptotic statements are
checked as trends: along the grid ``|ratio - 1|`` must shrink strictly at
every step, and each ratio must sit inside the golden envelope.  A step
whose change is smaller than the combined numerical error of its two ends is
reported ``inconclusive`` instead of being decided on rounding noise.
"""

from __future__ import annotations

import csv
import io
import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import golden
from .census import conjugation_symmetric, family_census, residual_tol
from .characteristic import (
    admissibility_probe,
    characteristic_direct,
    characteristic_ee,
    characteristic_split,
    ee_prediction,
    probe_points,
)
from .counting import count_sweep
from .iterates import (
    AsymptoticModel,
    eval_a,
    eval_asymptotic,
    eval_b,
    eval_F,
    log_derivative_g,
    re_f,
    real_iterates,
)
from .quadrature import integrate_positive_part
from .results import FAIL, INCONCLUSIVE, PASS, CheckResult, status_of
from .tower import li_pow

CSV_HEADER = ["suite", "name", "params", "observed", "target", "relation", "pass", "runtime_ms"]
INV_SQRT_PI = 1.0 / math.sqrt(math.pi)
EPS = np.finfo(float).eps

SUITES = (
    "exact_11",
    "gaussian_cosine",
    "closed_form_T",
    "ee_trend",
    "cubic_tower_trend",
    "split_agreement",
    "closed_forms",
    "cubic_remainder",
    "growth_bound",
    "tail_bound",
    "regularity",
    "admissibility",
    "census",
    "log_count_trend",
    "count_rate_trend",
    "r_gprime",
)


@dataclass
class VerifyConfig:
    suites: list[str] | None = None          # None: every suite
    count_grid: tuple[float, ...] = (3.0, 4.0, 5.0, 6.0)
    char_grid: tuple[float, ...] = (4.0, 6.0, 8.0, 10.0)
    ee_grid: tuple[float, ...] = (6.0, 9.0, 12.0)
    t_grid: tuple[float, ...] = (10.0, 100.0, 1000.0)
    exact_grid: tuple[float, ...] = (7.0, 13.0, 20.0, 50.0)
    split_grid: tuple[float, ...] = (4.0, 5.0, 6.0, 8.0, 10.0)
    tail_grid: tuple[float, ...] = (8.0, 10.0, 12.0)
    remainder_samples: int = 200
    i1_samples: int = 100
    tail_samples: int = 100
    seed: int = 20241016
    families: tuple[tuple[int, int], ...] = ((1, 2), (2, 1))
    _cache: dict = field(default_factory=dict, repr=False)

    def selected(self) -> list[str]:
        if self.suites is None:
            return list(SUITES)
        unknown = [s for s in self.suites if s not in SUITES]
        if unknown:
            raise ValueError(f"unknown suite(s): {', '.join(unknown)}")
        return [s for s in SUITES if s in self.suites]

    def family(self, k: int, l: int):
        key = ("census", k, l)
        if key not in self._cache:
            self._cache[key] = family_census(k, l, max(self.count_grid))
        return self._cache[key]

    def sweep(self, k: int, l: int):
        key = ("sweep", k, l)
        if key not in self._cache:
            self._cache[key] = count_sweep(k, l, self.count_grid, census=self.family(k, l))
        return self._cache[key]


def _row(suite, name, params, observed, target, relation, status, notes="", **extra):
    return CheckResult(suite, name, dict(params), observed, target, relation, status,
                       notes=notes, extra=extra)


def trend_rows(suite: str, label: str, points, reference: dict | None = None,
               envelope: tuple[float, float] | None = None, params: dict | None = None):
    """Rows for a ratio trend.

    ``points`` is a list of ``(r, ratio, err)``; each row checks the strict
    decrease of ``|ratio - 1|`` from the previous point (the first row has
    no predecessor) and the envelope for that point.
    """
    rows = []
    prev = None
    for r, ratio, err in points:
        dev = abs(ratio - 1.0)
        in_env = True
        if reference is not None and r in reference:
            in_env = golden.within(ratio, reference[r])
        if envelope is not None:
            in_env = in_env and envelope[0] <= ratio <= envelope[1]
        notes = []
        conclusive = True
        ok = in_env
        if prev is not None:
            p_dev, p_err = prev
            if abs(dev - p_dev) <= err + p_err:
                conclusive = False
                notes.append(f"step {p_dev:.3g} -> {dev:.3g} below resolution {err + p_err:.3g}")
            else:
                ok = ok and dev < p_dev
                if dev >= p_dev:
                    notes.append(f"|ratio-1| grew {p_dev:.6g} -> {dev:.6g}")
        if not in_env:
            notes.append("outside golden envelope")
        status = status_of(ok, conclusive) if in_env else FAIL
        rows.append(_row(suite, f"{label} r={r:g}", {**(params or {}), "r": r}, ratio, 1.0,
                         "ratio->1", status, "; ".join(notes), abs_dev=dev))
        prev = (dev, err)
    return rows


# -- individual suites ------------------------------------------------------

def check_exact_11(cfg: VerifyConfig):
    rows = count_sweep(1, 1, cfg.exact_grid, with_companions=False)
    out = []
    for row in rows:
        r = row.report.r
        expect = 2 * math.floor(r / (2 * math.pi))
        out.append(_row("exact_11", f"n r={r:g}", {"k": 1, "l": 1, "r": r}, row.report.n, expect,
                        "=", status_of(row.report.n == expect)))
    return out


def gaussian_cosine_integral(t: float):
    """``integral_{-8}^{8} e^{-x^2} cos+(t x) dx`` (even integrand, so twice ``[0, 8]``)."""
    q = integrate_positive_part(lambda x: np.exp(-x * x) * np.cos(t * x), 0.0, 8.0,
                                frequency=max(t, 1.0), tol_abs=1e-15, tol_rel=1e-15)
    # error: estimate plus rounding of the final sum
    return 2.0 * q.value, 2.0 * q.abs_error + 8 * EPS


def check_gaussian_cosine(cfg: VerifyConfig, t_grid=None):
    t_grid = list(t_grid or cfg.t_grid)
    rows = []
    # t = 0 anchors the trend: the integral is then sqrt(pi) exactly
    prev_dev, prev_err = math.sqrt(math.pi) - INV_SQRT_PI, 0.0
    for t in t_grid:
        val, err = gaussian_cosine_integral(t)
        dev = abs(val - INV_SQRT_PI)
        notes = [f"quadrature error {err:.2g}"]
        conclusive = abs(dev - prev_dev) > err + prev_err
        ok = dev < prev_dev
        if t >= 1000:
            ok = ok and dev <= 5e-3
            conclusive = conclusive or dev > 5e-3
        if not conclusive:
            notes.append(f"change of |I - 1/sqrt(pi)| ({prev_dev:.2g} -> {dev:.2g}) is below resolution")
        rows.append(_row("gaussian_cosine", f"I(t) t={t:g}", {"t": t}, val, INV_SQRT_PI, "ratio->1",
                         status_of(ok, conclusive), "; ".join(notes), abs_dev=dev, err=err))
        prev_dev, prev_err = dev, err
    return rows


def m2_closed_form(r: float) -> float:
    """``T(r, f_2)`` in closed form (``log|f_2| = ln r + r cos t``)."""
    lnr = math.log(r)
    x = -lnr / r
    if x >= 1.0:
        return 0.0
    theta0 = math.acos(x)
    return (theta0 * lnr + r * math.sin(theta0)) / math.pi


def check_closed_form_T(cfg: VerifyConfig):
    rows = []
    rep = characteristic_direct(2, 10.0)
    exact = m2_closed_form(10.0)
    rel = abs(rep.value / exact - 1.0)
    rows.append(_row("closed_form_T", "T(r,f_2) r=10", {"m": 2, "r": 10.0}, rep.value, exact,
                     "=within(1e-6)", status_of(rel <= 1e-6), rel_err=rel))
    rep = characteristic_direct(1, 7.0)
    rel = abs(rep.value / math.log(7.0) - 1.0)
    rows.append(_row("closed_form_T", "T(r,z) r=7", {"m": 1, "r": 7.0}, rep.value, math.log(7.0),
                     "=within(1e-6)", status_of(rel <= 1e-6), rel_err=rel))
    return rows


def check_ee_trend(cfg: VerifyConfig):
    pts = []
    for r in cfg.ee_grid:
        rep = characteristic_ee(r)
        pred = ee_prediction(r)
        pts.append((r, rep.value / pred, rep.abs_error_estimate / pred))
    return trend_rows("ee_trend", "T(r,exp exp z)/prediction", pts, golden.EE_RATIO,
                      golden.EE_ENVELOPE)


def check_cubic_tower_trend(cfg: VerifyConfig):
    pts = []
    for r in cfg.char_grid:
        rep = characteristic_direct(3, r)
        g = float(eval_asymptotic(AsymptoticModel(2, 1, "prop2_rhs"), r))
        pts.append((r, rep.value / g, rep.abs_error_estimate / g))
    return trend_rows("cubic_tower_trend", "T(r,f_3)/g", pts, golden.T_F3_RATIO, params={"m": 3})


def check_split_agreement(cfg: VerifyConfig):
    rows = []
    for r in cfg.split_grid:
        d = characteristic_direct(3, r)
        s = characteristic_split(3, r)
        rel = abs(s.value / d.value - 1.0)
        rows.append(_row("split_agreement", f"direct vs split r={r:g}", {"m": 3, "r": r},
                         rel, 1e-6, "<=", status_of(rel <= 1e-6)))
        rows.append(_row("split_agreement", f"outer bound r={r:g}", {"m": 3, "r": r},
                         s.outer, s.outer_bound, "<=", status_of(bool(s.outer_bound_ok)),
                         delta=s.delta_r))
    return rows


def _fd_log_derivatives(m: int, r: float, h: float = 1e-3) -> tuple[float, float]:
    """First and second derivatives of ``ln f_m(e^s)`` at ``s = ln r`` by
    five-point central differences."""
    s = math.log(r)

    def L(x):
        return real_iterates(m, math.exp(x))[-1].ln()

    v = [L(s + j * h) for j in (-2, -1, 0, 1, 2)]
    d1 = (v[0] - 8 * v[1] + 8 * v[3] - v[4]) / (12 * h)
    d2 = (-v[0] + 16 * v[1] - 30 * v[2] + 16 * v[3] - v[4]) / (12 * h * h)
    return d1, d2


def check_closed_forms(cfg: VerifyConfig):
    rs = np.linspace(1.0, 10.0, 100)
    err = {"a_2": 0.0, "b_2": 0.0, "a_3": 0.0, "b_3": 0.0}
    for r in rs:
        r = float(r)
        err["a_2"] = max(err["a_2"], abs(float(eval_a(2, r)) / (1.0 + r) - 1.0))
        err["b_2"] = max(err["b_2"], abs(float(eval_b(2, r)) / r - 1.0))
        d1, d2 = _fd_log_derivatives(3, r)
        err["a_3"] = max(err["a_3"], abs(float(eval_a(3, r)) / d1 - 1.0))
        err["b_3"] = max(err["b_3"], abs(float(eval_b(3, r)) / d2 - 1.0))
    rows = []
    for name, tol, what in (("a_2", 1e-12, "1+r"), ("b_2", 1e-12, "r"),
                            ("a_3", 1e-6, "finite differences"), ("b_3", 1e-6, "finite differences")):
        rows.append(_row("closed_forms", f"{name} vs {what}", {"r": "[1,10]", "points": 100},
                         err[name], tol, "<=", status_of(err[name] <= tol)))
    return rows


# cubic remainder of log f_k(r e^tau)

def _shifted_series(k: int, r: float, order: int = 48) -> np.ndarray:
    """Taylor coefficients in ``tau`` of ``f_{k-1}(r e^tau) - f_{k-1}(r)``."""
    n = np.arange(order + 1)
    g = np.array([0.0] + [r / math.factorial(i) for i in range(1, order + 1)])
    vals = real_iterates(k - 1, r) if k > 1 else []
    for j in range(1, k - 1):
        w = g.copy()
        w[1] += 1.0
        e = np.zeros(order + 1)
        e[0] = 1.0
        for i in range(1, order + 1):
            e[i] = np.dot(n[1:i + 1] * w[1:i + 1], e[i - 1::-1][:i]) / i
        e[0] = 0.0
        g = float(vals[j]) * e  # vals[j] is f_{j+1}(r)
    return g


def cubic_remainder(k: int, r: float, tau: complex) -> complex:
    """``R(tau) = log f_k(r e^tau) - (log f_k(r) + a_k tau + b_k tau^2 / 2)``
    summed from the Taylor series, free of cancellation."""
    c = _shifted_series(k, r)
    acc = 0j
    for coef in c[:2:-1]:
        acc = acc * tau + coef
    return acc * tau**3


def cubic_remainder_bound(k: int, r: float, tau: complex) -> float:
    return 6.0 * 3.0 ** (3 * (k - 1)) * float(eval_F(k - 1, r)) * float(eval_F(k - 2, r)) ** 2 * abs(tau) ** 3


def cubic_remainder_radius(k: int, r: float) -> float:
    return 1.0 / (2.0 * 3.0 ** (k - 1) * float(eval_F(k - 2, r)))


def check_cubic_remainder(cfg: VerifyConfig):
    rng = np.random.default_rng(cfg.seed)
    worst: dict[tuple[int, str], list] = {}
    for s in range(cfg.remainder_samples):
        k = 2 + s % 2
        direction = "real" if (s // 2) % 2 == 0 else "imag"
        r = float(rng.uniform(1.0, 10.0 if k == 2 else 6.0))
        x = float(rng.uniform(-1.0, 1.0)) * cubic_remainder_radius(k, r)
        tau = complex(x, 0.0) if direction == "real" else complex(0.0, x)
        if x == 0.0:
            continue
        ratio = abs(cubic_remainder(k, r, tau)) / cubic_remainder_bound(k, r, tau)
        entry = worst.setdefault((k, direction), [0.0, 0, None])
        entry[1] += 1
        if ratio > entry[0]:
            entry[0], entry[2] = ratio, (r, tau)
    rows = []
    for (k, direction), (ratio, n, arg) in sorted(worst.items()):
        rows.append(_row("cubic_remainder", f"|R|/bound k={k} {direction} tau",
                         {"k": k, "tau": direction, "samples": n}, ratio, 1.0, "<=",
                         status_of(ratio <= 1.0), f"worst at r={arg[0]:.6g} tau={arg[1]:.6g}"))
    return rows


# growth of f_j along the positive axis

def growth_log_ratio(j: int, r: float, t: float) -> float:
    """``ln f_j(r e^t) - ln f_j(r)`` via ``D_j = t + f_{j-1}(r) expm1(D_{j-1})``."""
    vals = real_iterates(j, r)
    d = t
    for i in range(1, j):
        d = t + float(vals[i - 1]) * math.expm1(d)
    return d


def check_growth_bound(cfg: VerifyConfig):
    rng = np.random.default_rng(cfg.seed + 1)
    worst: dict[int, list] = {}
    for s in range(cfg.i1_samples):
        j = 1 + s % 3
        r = float(rng.uniform(1.0, 6.0))
        c = 3.0 ** j * float(eval_F(j - 1, r))
        t = float(rng.uniform(0.0, 1.0)) / c
        lhs = growth_log_ratio(j, r, t)
        rhs = math.log1p(c * t)
        excess = lhs - rhs
        entry = worst.setdefault(j, [-math.inf, 0, None, 0])
        entry[1] += 1
        if lhs > rhs * (1 + 1e-12):
            entry[3] += 1
        if excess > entry[0]:
            entry[0], entry[2] = excess, (r, t)
    rows = []
    for j, (excess, n, arg, bad) in sorted(worst.items()):
        rows.append(_row("growth_bound", f"ln f_j(re^t) - ln((1+3^j F t) f_j) j={j}", {"j": j, "samples": n},
                         excess, 0.0, "<=", status_of(bad == 0),
                         f"{bad} violations; worst at r={arg[0]:.6g} t={arg[1]:.6g}"))
    return rows


# tail bound away from the axis and its envelope chain

def envelope_g(j: int, r: float, theta: np.ndarray) -> np.ndarray:
    """``g_1 = r cos t``, ``g_j = r exp(g_{j-1})``."""
    g = r * np.cos(theta)
    for _ in range(j - 1):
        g = r * np.exp(g)
    return g


def tail_precondition(k: int, r: float) -> tuple[bool, str]:
    """Explicit form of "r sufficiently large" used by the tail estimate."""
    delta = float(li_pow(eval_F(k - 1, r), -0.4))
    c1 = delta <= 1.0 / math.sqrt(float(eval_F(k - 2, r)))
    vals = real_iterates(k, r)
    fk, fk1 = float(vals[k - 1]), float(vals[k - 2])
    chain = fk * math.exp(-float(li_pow(eval_F(k - 1, r), 0.2)) / 2**k) + math.log(r)
    c2 = chain <= fk / fk1
    return c1 and c2, f"delta<=1/sqrt(F_(k-2)): {c1}; tail chain {chain:.6g} <= {fk / fk1:.6g}: {c2}"


def check_tail_bound(cfg: VerifyConfig, k: int = 2):
    rng = np.random.default_rng(cfg.seed + 2)
    rows = []
    for r in cfg.tail_grid:
        delta = float(li_pow(eval_F(k - 1, r), -0.4))
        theta = np.sort(rng.uniform(delta, math.pi, cfg.tail_samples))
        z = r * np.exp(1j * theta)
        log_abs = math.log(r) + re_f(k, z)               # log|f_{k+1}|
        vals = real_iterates(k, r)
        bound = math.exp(vals[k - 1].ln() - vals[k - 2].ln())
        ok_pre, why = tail_precondition(k, r)
        worst = float(np.max(log_abs))
        held = worst <= bound
        status = status_of(held, conclusive=ok_pre or held)
        note = why if ok_pre else f"precondition unmet ({why})"
        if not held:
            note += f"; bound exceeded at theta={float(theta[np.argmax(log_abs)]):.6g}"
        rows.append(_row("tail_bound", f"max log|f_{k + 1}| r={r:g}", {"k": k, "r": r,
                         "samples": theta.size}, worst, bound, "<=", status, note))

        # |f_j| <= g_j for 2 <= j <= k+1, at the sampled angles
        excess = -math.inf
        for j in range(2, k + 2):
            lhs = re_f(j - 1, z)                          # log|f_j| - ln r
            rhs = envelope_g(j - 1, r, theta)             # log g_j - ln r
            excess = max(excess, float(np.max((lhs - rhs) / np.maximum(1.0, np.abs(rhs)))))
        rows.append(_row("tail_bound", f"|f_j| <= g_j r={r:g}", {"k": k, "r": r}, excess, 0.0, "<=",
                         status_of(excess <= 1e-12)))

        # g_j(theta) <= f_j(r) exp(-F_{j-1} theta^2 / 2^j) for 2 <= j <= k
        excess = -math.inf
        for j in range(2, k + 1):
            lim = 1.0 / math.sqrt(float(eval_F(j - 2, r)))
            th = np.concatenate([[delta], theta[theta <= lim]])
            th = th[th <= lim]
            lhs = math.log(r) + envelope_g(j - 1, r, th)
            rhs = real_iterates(j, r)[-1].ln() - float(eval_F(j - 1, r)) * th**2 / 2**j
            excess = max(excess, float(np.max((lhs - rhs) / np.maximum(1.0, np.abs(rhs)))))
        rows.append(_row("tail_bound", f"envelope g_j r={r:g}", {"k": k, "r": r}, excess, 0.0, "<=",
                         status_of(excess <= 1e-12)))
    return rows


def check_regularity(cfg: VerifyConfig, k: int = 2, l: int = 1):
    n = k + l
    model = AsymptoticModel(k, l, "g_of_r")
    pts, rows = [], []
    prev = None
    for r in cfg.char_grid:
        phi = float(eval_asymptotic(model, r))
        ratio = float(eval_asymptotic(model, r + 1.0 / phi)) / phi
        ok = 1.0 <= ratio <= 2.0 and (prev is None or ratio < prev)
        rows.append(_row("regularity", f"phi(r+1/phi)/phi r={r:g}", {"k": k, "l": l, "r": r}, ratio,
                         2.0, "<=", status_of(ok),
                         "increment r+1/phi(r) as in the proof; statement prints phi(1+1/phi(r))"))
        prev = ratio
        dphi = phi * log_derivative_g(n, r)
        rows.append(_row("regularity", f"phi' <= phi^1.5 r={r:g}", {"k": k, "l": l, "r": r}, dphi,
                         phi**1.5, "<=", status_of(dphi <= phi**1.5)))
    return rows


def check_admissibility(cfg: VerifyConfig):
    rows = [admissibility_probe(3, r) for r in cfg.char_grid]
    r = 40.0
    delta = float(li_pow(eval_F(1, r), -0.4))
    p_half, p_pi = probe_points(2, r, [0.5 * delta, math.pi])
    rows.append(_row("admissibility", "inner deviation m=2 r=40 theta=delta/2",
                     {"m": 2, "r": r, "theta": 0.5 * delta}, p_half.inner_deviation, 0.05, "<=",
                     status_of(p_half.inner_deviation <= 0.05)))
    b = float(eval_b(2, r))
    eps_out = -0.5 * real_iterates(1, r)[-1].ln()
    rows.append(_row("admissibility", "outer ratio m=2 r=40 theta=pi",
                     {"m": 2, "r": r, "theta": math.pi}, p_pi.log_outer_ratio, eps_out,
                     "<=", status_of(p_pi.log_outer_ratio <= eps_out), f"b_2={b:g}; log form"))
    return rows


def check_census(cfg: VerifyConfig):
    rows = []
    for k, l in cfg.families:
        sweep = cfg.sweep(k, l)
        for row in sweep:
            rep = row.report
            rows.append(_row("census", f"A({k},{l}) count r={rep.r:g}", {"k": k, "l": l, "r": rep.r},
                             rep.n_A, golden.COUNTS_3.get(rep.r, rep.n_A), "=",
                             status_of(rep.n_A == golden.COUNTS_3.get(rep.r, rep.n_A)),
                             "census cardinality equals winding count on every branch"))
    for k, l in cfg.families:
        roots = cfg.family(k, l).a.roots
        simple = sum(1 for rec in roots if rec.simple)
        rows.append(_row("census", f"A({k},{l}) simple roots", {"k": k, "l": l}, simple, len(roots),
                         "=", status_of(simple == len(roots))))
        worst = max((rec.residual / float(residual_tol(rec.m)) for rec in roots), default=0.0)
        rows.append(_row("census", f"A({k},{l}) residual/tol", {"k": k, "l": l}, worst, 1.0, "<=",
                         status_of(worst <= 1.0)))
        sym = conjugation_symmetric(roots)
        rows.append(_row("census", f"A({k},{l}) conjugation symmetric", {"k": k, "l": l},
                         int(sym), 1, "=", status_of(sym)))
    return rows


def check_log_count_trend(cfg: VerifyConfig):
    rows = []
    for k, l in cfg.families:
        pts = [(row.report.r, row.ratio_N_T, 1e-8) for row in cfg.sweep(k, l)]
        rows += trend_rows("log_count_trend", f"N/T ({k},{l})", pts, golden.N_T_RATIO[(k, l)],
                           params={"k": k, "l": l})
    return rows


def check_count_rate_trend(cfg: VerifyConfig):
    rows = []
    for k, l in cfg.families:
        pts = [(row.report.r, row.ratio_n_thm, 0.0) for row in cfg.sweep(k, l)]
        rows += trend_rows("count_rate_trend", f"n/rate ({k},{l})", pts, golden.COUNT_RATE_RATIO,
                           params={"k": k, "l": l})
    return rows


def check_r_gprime(cfg: VerifyConfig):
    rows = []
    for k, l in cfg.families:
        for row in cfg.sweep(k, l):
            r = row.report.r
            ratio = row.report.n / row.r_gprime
            ref = golden.RGPRIME_RATIO.get(r)
            ok = ref is None or golden.within(ratio, ref)
            rows.append(_row("r_gprime", f"n/(r g') ({k},{l}) r={r:g}", {"k": k, "l": l, "r": r},
                             ratio, ref if ref is not None else 1.0, "=within(0.01)",
                             status_of(ok)))
    return rows


CHECKS = {
    "exact_11": check_exact_11,
    "gaussian_cosine": check_gaussian_cosine,
    "closed_form_T": check_closed_form_T,
    "ee_trend": check_ee_trend,
    "cubic_tower_trend": check_cubic_tower_trend,
    "split_agreement": check_split_agreement,
    "closed_forms": check_closed_forms,
    "cubic_remainder": check_cubic_remainder,
    "growth_bound": check_growth_bound,
    "tail_bound": check_tail_bound,
    "regularity": check_regularity,
    "admissibility": check_admissibility,
    "census": check_census,
    "log_count_trend": check_log_count_trend,
    "count_rate_trend": check_count_rate_trend,
    "r_gprime": check_r_gprime,
}


def run_all(config: VerifyConfig | None = None) -> list[CheckResult]:
    cfg = config or VerifyConfig()
    results = []
    for suite in cfg.selected():
        t0 = time.perf_counter()
        rows = CHECKS[suite](cfg)
        ms = int(round(1000 * (time.perf_counter() - t0)))
        for row in rows:
            row.runtime_ms = ms
        results.extend(rows)
    return results


def all_passed(results: list[CheckResult]) -> bool:
    """No hard failure (inconclusive rows do not count as failures)."""
    return not any(r.status == FAIL for r in results)


def _fmt(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def results_csv(results: list[CheckResult], timings: bool = False) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in results:
        params = ";".join(f"{k}={_fmt(v)}" for k, v in r.params.items())
        w.writerow([r.suite, r.name, params, _fmt(r.observed), _fmt(r.target), r.relation,
                    r.status, r.runtime_ms if timings else 0])
    return buf.getvalue()


__all__ = [
    "CSV_HEADER", "SUITES", "VerifyConfig", "run_all", "all_passed", "results_csv",
    "trend_rows", "gaussian_cosine_integral", "cubic_remainder", "cubic_remainder_bound",
    "cubic_remainder_radius", "growth_log_ratio", "envelope_g", "tail_precondition",
    "m2_closed_form", "PASS", "FAIL", "INCONCLUSIVE",
]
