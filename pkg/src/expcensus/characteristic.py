"""Nevanlinna characteristic ``T(r, f)`` of entire functions by circle quadrature.

For entire ``f``, ``T(r, f) = (1/2pi) * integral_{-pi}^{pi} log+ |f(r e^{it})| dt``.
For ``f = f_m`` (m >= 2) the integrand is ``log|f_m| = ln r + Re f_{m-1}``,
which is evaluated directly, never forming ``f_m`` itself.  All integrands
here are symmetric under ``t -> -t`` (real Taylor coefficients), so only
``[0, pi]`` is integrated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import TowerOverflow
from .iterates import eval_a, eval_b, eval_F, re_f, real_iterates
from .quadrature import DEFAULT_NODE_BUDGET, integrate_positive_part
from .results import FAIL, INCONCLUSIVE, PASS, CheckResult
from .tower import LN_OVERFLOW, li_pow

T_ABS_TOL = 1e-8
T_REL_TOL = 1e-10


@dataclass(frozen=True)
class QuadratureReport:
    r: float
    m: int
    method: str
    value: float
    abs_error_estimate: float
    nodes_used: int
    delta_r: float | None = None
    inner: float | None = None
    outer: float | None = None
    outer_bound: float | None = None

    @property
    def outer_bound_ok(self) -> bool | None:
        if self.outer is None or self.outer_bound is None:
            return None
        return self.outer <= self.outer_bound


def log_abs_integrand(m: int, r: float):
    """``theta -> ln|f_m(r e^{i theta})|`` as a vectorized callable."""
    if m < 1:
        raise ValueError("m must be >= 1")
    lnr = math.log(r)
    if m == 1:
        return lambda th: np.full(np.shape(th), lnr)
    # |f_{m-1}(r e^{it})| <= f_{m-1}(r): the whole circle is safe iff the axis is
    top = real_iterates(m - 1, r)[-1]
    if top.ln() > math.log(1e300):
        raise TowerOverflow(f"f_{m - 1}({r}) = {top} does not fit a double")

    def v(th):
        return lnr + re_f(m - 1, r * np.exp(1j * np.asarray(th)))

    return v


def _frequency(m: int, r: float) -> float:
    return float(eval_a(m - 1, r)) if m >= 2 else 1.0


def _integrate(v, a, b, freq, node_budget):
    return integrate_positive_part(
        v, a, b,
        frequency=freq,
        tol_abs=math.pi * T_ABS_TOL,
        tol_rel=T_REL_TOL,
        node_budget=node_budget,
    )


def characteristic_direct(m: int, r: float, node_budget: int = DEFAULT_NODE_BUDGET) -> QuadratureReport:
    """``T(r, f_m)`` over the whole circle with kink-aware adaptive quadrature."""
    q = _integrate(log_abs_integrand(m, r), 0.0, math.pi, _frequency(m, r), node_budget)
    return QuadratureReport(r, m, "direct", q.value / math.pi, q.abs_error / math.pi, q.nodes_used)


def characteristic_split(m: int, r: float, node_budget: int = DEFAULT_NODE_BUDGET) -> QuadratureReport:
    """``T(r, f_m)`` split at ``delta(r) = F_{m-2}(r)^(-2/5)``.

    Reports the inner (``|t| <= delta``) and outer contributions separately,
    together with the integrated tail bound ``f_{m-1}(r)/f_{m-2}(r)``.
    """
    if m < 3:
        raise ValueError("split method needs m >= 3")
    k = m - 1
    delta = float(li_pow(eval_F(k - 1, r), -0.4))
    v = log_abs_integrand(m, r)
    freq = _frequency(m, r)
    cut = min(delta, math.pi)
    qi = _integrate(v, 0.0, cut, freq, node_budget)
    qo = _integrate(v, cut, math.pi, freq, node_budget)
    vals = real_iterates(k, r)
    ratio = math.exp(vals[k - 1].ln() - vals[k - 2].ln())
    return QuadratureReport(
        r, m, "split",
        value=math.fsum([qi.value, qo.value]) / math.pi,
        abs_error_estimate=(qi.abs_error + qo.abs_error) / math.pi,
        nodes_used=qi.nodes_used + qo.nodes_used,
        delta_r=delta,
        inner=qi.value / math.pi,
        outer=qo.value / math.pi,
        outer_bound=ratio,
    )


def characteristic_ee(r: float, node_budget: int = DEFAULT_NODE_BUDGET) -> QuadratureReport:
    """``T(r, exp(exp(z)))``: the integrand is ``(e^{r cos t} cos(r sin t))+``."""
    if r * 1.0 > LN_OVERFLOW:
        raise TowerOverflow(f"e^r overflows for r = {r}")

    def v(th):
        th = np.asarray(th)
        return np.exp(r * np.cos(th)) * np.cos(r * np.sin(th))

    q = _integrate(v, 0.0, math.pi, max(r, 1.0), node_budget)
    return QuadratureReport(r, 0, "ee", q.value / math.pi, q.abs_error / math.pi, q.nodes_used)


def ee_prediction(r: float) -> float:
    """``e^r / sqrt(2 pi^3 r)``, the asymptotic value of ``T(r, exp(exp(z)))``."""
    return math.exp(r) / math.sqrt(2.0 * math.pi**3 * r)


# -- admissibility probe ----------------------------------------------------

@dataclass(frozen=True)
class ProbePoint:
    theta: float
    inner_deviation: float   # |f_m(re^{it}) / model - 1|
    log_outer_ratio: float   # ln(|f_m(re^{it})| sqrt(b) / f_m(r))


def _probe_data(m: int, r: float):
    vals = real_iterates(m, r)
    ln_fm = vals[-1].ln()
    a = float(eval_a(m, r))
    b = float(eval_b(m, r))
    if not (math.isfinite(ln_fm) and math.isfinite(b)):
        raise TowerOverflow(f"probe for m={m} at r={r} is out of range")
    return ln_fm, a, b


def _log_fm(m: int, r: float, theta: np.ndarray) -> np.ndarray:
    """Continuous-branch ``log f_m(r e^{i theta})`` (complex array)."""
    theta = np.asarray(theta, dtype=float)
    z = r * np.exp(1j * theta)
    base = math.log(r) + 1j * theta
    if m == 1:
        return base
    f = z
    for _ in range(m - 2):
        if np.any(f.real > LN_OVERFLOW):
            raise TowerOverflow("iterate overflows on the probe circle")
        f = z * np.exp(f)
    return base + f


def probe_points(m: int, r: float, theta) -> list[ProbePoint]:
    ln_fm, a, b = _probe_data(m, r)
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    lf = _log_fm(m, r, theta)
    model = ln_fm + 1j * a * theta - 0.5 * b * theta**2
    with np.errstate(over="ignore"):
        dev = np.abs(np.expm1(lf - model))
    outer = lf.real + 0.5 * math.log(b) - ln_fm
    return [ProbePoint(float(t), float(d), float(o)) for t, d, o in zip(theta, dev, outer)]


def admissibility_probe(m: int, r: float) -> CheckResult:
    """Gaussian behaviour of ``f_m`` near ``theta = 0`` and smallness elsewhere.

    Inner range: 16 Chebyshev points on ``[-delta, delta]`` with
    ``delta = F_{m-1}(r)^(-2/5)`` must satisfy ``|f_m / model - 1| <= eps_in``,
    ``eps_in = 10 * 6 * 3^(3(m-1)) F_{m-1} F_{m-2}^2 delta^3``.  Outer range: 64
    uniform points on ``[delta, pi]`` must satisfy ``|f_m| sqrt(b_m) / f_m(r)
    <= f_{m-1}(r)^(-1/2)``.  An inner envelope >= 1 says nothing, so the probe
    is then inconclusive unless the outer test fails.
    """
    if m < 2:
        raise ValueError("probe needs m >= 2")
    F1 = eval_F(m - 1, r)
    delta = min(float(li_pow(F1, -0.4)), math.pi)
    eps_in = 60.0 * 3.0 ** (3 * (m - 1)) * float(F1) * float(eval_F(m - 2, r)) ** 2 * delta**3
    ln_eps_out = -0.5 * real_iterates(m - 1, r)[-1].ln()

    cheb = delta * np.cos((2 * np.arange(1, 17) - 1) * math.pi / 32)
    inner = probe_points(m, r, cheb)
    outer = probe_points(m, r, np.linspace(delta, math.pi, 64))
    worst_in = max(p.inner_deviation for p in inner)
    worst_out = max(p.log_outer_ratio for p in outer)

    outer_ok = worst_out <= ln_eps_out
    inner_ok = worst_in <= eps_in
    if not outer_ok or not inner_ok:
        status = FAIL
    elif eps_in >= 1.0:
        status = INCONCLUSIVE
    else:
        status = PASS
    notes = f"inner max dev {worst_in:.3e} vs eps_in {eps_in:.3e}"
    if eps_in >= 1.0:
        notes += " (envelope vacuous)"
    return CheckResult(
        suite="admissibility",
        name=f"probe m={m} r={r:g}",
        params={"m": m, "r": r, "delta": delta},
        observed=worst_out,
        target=ln_eps_out,
        relation="log outer ratio <=",
        status=status,
        notes=notes,
        extra={"inner_max": worst_in, "eps_in": eps_in},
    )
