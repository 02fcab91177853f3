"""The tower iterates f_m(z) = E_z^m(0) and their growth indicators.

``f_1(z) = z`` and ``f_{m+1}(z) = z * exp(f_m(z))``.  On the positive axis all
values are returned as :class:`LevelIndexReal`; off the axis as
:class:`ComplexIterateValue` with a continuous argument.

The scalar API here is exact-as-possible and used for reporting and checks.
The vectorized kernels at the bottom (``f_and_df``, ``re_f``) are what the
quadrature and the Newton census call in their inner loops.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import InvalidModel, TowerOverflow, ZeroParameter
from .tower import (
    LN_OVERFLOW,
    ONE,
    ComplexIterateValue,
    LevelIndexReal,
    _add_float,
    li_add,
    li_div,
    li_exp,
    li_log,
    li_mul,
    li_pow,
    li_scale,
    li_sub,
)

SQRT_2PI3 = math.sqrt(2.0 * math.pi**3)
MAX_DEPTH = 6


@dataclass(frozen=True)
class FamilyPoint:
    """A point ``r * exp(i*theta)`` of the parameter plane, ``r > 0``."""

    r: float
    theta: float = 0.0

    def __post_init__(self):
        if not self.r > 0.0:
            raise ZeroParameter(f"radius must be positive, got {self.r}")

    @classmethod
    def from_lambda(cls, lam: complex) -> FamilyPoint:
        lam = complex(lam)
        if lam == 0:
            raise ZeroParameter("lambda = 0")
        return cls(abs(lam), cmath.phase(lam))

    @property
    def lam(self) -> complex:
        return cmath.rect(self.r, self.theta)

    @property
    def is_real_positive(self) -> bool:
        return self.theta == 0.0


@dataclass(frozen=True)
class IterateProfile:
    m: int
    point: FamilyPoint
    value: LevelIndexReal | ComplexIterateValue
    derivative: LevelIndexReal | ComplexIterateValue
    # li_log(value) for real values >= 1; None otherwise
    log_value: LevelIndexReal | None


def _check_depth(m: int) -> None:
    if m < 1:
        raise ValueError(f"depth must be >= 1, got {m}")
    if m > MAX_DEPTH:
        raise TowerOverflow(f"depth {m} > {MAX_DEPTH} is outside the supported range")


def real_iterates(m: int, r: float) -> list[LevelIndexReal]:
    """``[f_1(r), ..., f_m(r)]`` for real ``r > 0``."""
    _check_depth(m)
    if not r > 0.0:
        raise ZeroParameter(f"radius must be positive, got {r}")
    lnr = math.log(r)
    vals = [LevelIndexReal.from_float(r)]
    for _ in range(m - 1):
        f = vals[-1]
        if f.level == 0:
            vals.append(LevelIndexReal.from_log(lnr + f.residual))
        else:
            vals.append(li_exp(_add_float(f, lnr)))
    return vals


def eval_f(m: int, z: FamilyPoint | float | complex) -> IterateProfile:
    """Value and derivative of ``f_m`` at ``z``.

    The derivative follows ``f_{m+1}' = f_{m+1} * (1/z + f_m')``.
    """
    _check_depth(m)
    if not isinstance(z, FamilyPoint):
        z = FamilyPoint(float(z)) if isinstance(z, (int, float)) else FamilyPoint.from_lambda(z)
    if z.is_real_positive:
        return _eval_real(m, z)
    return _eval_complex(m, z)


def _eval_real(m: int, z: FamilyPoint) -> IterateProfile:
    vals = real_iterates(m, z.r)
    inv_r = LevelIndexReal.from_float(1.0 / z.r)
    deriv = ONE
    for f in vals[1:]:
        deriv = li_mul(f, li_add(inv_r, deriv))
    value = vals[-1]
    log_value = li_log(value) if value >= ONE else None
    return IterateProfile(m, z, value, deriv, log_value)


def _eval_complex(m: int, z: FamilyPoint) -> IterateProfile:
    lam = z.lam
    lnr = math.log(z.r)
    value = ComplexIterateValue(lnr, z.theta)
    deriv = ComplexIterateValue(0.0, 0.0)
    for _ in range(m - 1):
        if value.form != "exact":
            raise TowerOverflow("exp of a log-polar iterate is not representable")
        f = value.to_complex()
        value = ComplexIterateValue(lnr + f.real, z.theta + f.imag)
        # log f' = log f + log(1/z + f'_prev)
        if deriv.form == "exact":
            s = 1.0 / lam + deriv.to_complex()
            ls = complex(math.log(abs(s)), cmath.phase(s)) if s != 0 else complex(-math.inf, 0.0)
        else:
            ls = deriv.log()
        deriv = ComplexIterateValue(value.log_modulus + ls.real, value.argument + ls.imag)
    return IterateProfile(m, z, value, deriv, None)


def eval_F(k: int, r: float) -> LevelIndexReal:
    """``F_k(r) = f_1(r) * ... * f_k(r)``, with ``F_0 = 1``."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return ONE
    prod = ONE
    for f in real_iterates(k, r):
        prod = li_mul(prod, f)
    return prod


def _tail_products(k: int, vals: list[LevelIndexReal]) -> list[LevelIndexReal]:
    """``P_j = f_{j+1} ... f_{k-1} = F_{k-1}/F_j`` for ``j = 0..k-1``."""
    prods = [ONE] * k
    acc = ONE
    for j in range(k - 2, -1, -1):
        acc = li_mul(acc, vals[j])  # vals[j] is f_{j+1}
        prods[j] = acc
    return prods


def eval_a(k: int, r: float) -> LevelIndexReal:
    """``a_k(r) = r f_k'(r) / f_k(r) = F_{k-1}(r) * sum_{j<k} 1/F_j(r)``.

    Evaluated as the sum of the positive products ``F_{k-1}/F_j`` so that no
    division or cancellation occurs.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if k == 1:
        return ONE
    vals = real_iterates(k - 1, r)
    total = LevelIndexReal.from_float(0.0)
    for p in _tail_products(k, vals):
        total = li_add(total, p)
    return total


def eval_b(k: int, r: float) -> LevelIndexReal:
    """``b_k(r) = r a_k'(r)`` from the analytic derivative of ``eval_a``.

    With ``P_j = F_{k-1}/F_j`` one has ``d ln P_j / d ln r = a_{j+1} + ... +
    a_{k-1}``, hence ``b_k = sum_j P_j * (a_{j+1} + ... + a_{k-1})``.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if k == 1:
        return LevelIndexReal.from_float(0.0)
    vals = real_iterates(k - 1, r)
    a = [None] + [eval_a(i, r) for i in range(1, k)]  # a[i] = a_i
    total = LevelIndexReal.from_float(0.0)
    for j, p in enumerate(_tail_products(k, vals)):
        s = LevelIndexReal.from_float(0.0)
        for i in range(j + 1, k):
            s = li_add(s, a[i])
        if not s.is_zero:
            total = li_add(total, li_mul(p, s))
    return total


def delta_r(k: int, r: float) -> float:
    """Split angle ``F_{k-1}(r)^(-2/5)`` used for ``T(r, f_{k+1})``."""
    return float(li_pow(eval_F(k - 1, r), -0.4))


# -- asymptotic right-hand sides ------------------------------------------

ASYMPTOTIC_KINDS = ("theorem_rhs", "prop2_rhs", "e4_rhs", "g_of_r", "r_gprime")


@dataclass(frozen=True)
class AsymptoticModel:
    k: int
    l: int
    kind: str

    def __post_init__(self):
        if self.k < 1 or self.l < 1:
            raise InvalidModel("k and l must be >= 1")
        if self.kind not in ASYMPTOTIC_KINDS:
            raise InvalidModel(f"unknown kind {self.kind!r}")
        if self.kind != "theorem_rhs" and self.k + self.l < 3:
            raise InvalidModel(f"{self.kind} needs k + l >= 3")

    @property
    def depth(self) -> int:
        return self.k + self.l


def _g(n: int, r: float) -> LevelIndexReal:
    vals = real_iterates(n - 1, r)
    den = li_mul(li_pow(vals[n - 3], 0.5), eval_F(n - 3, r))
    return li_scale(li_div(vals[n - 2], den), 1.0 / SQRT_2PI3)


def eval_asymptotic(model: AsymptoticModel, r: float) -> LevelIndexReal:
    """Right-hand sides of the counting asymptotics at radius ``r``.

    ``theorem_rhs``: ``f_{n-1} sqrt(f_{n-2}) / sqrt(2 pi^3)`` with ``n = k+l``
    (``r/pi`` when ``n = 2``, the exact rate of the ``k = l = 1`` family).
    ``prop2_rhs`` / ``e4_rhs`` / ``g_of_r``: ``f_{n-1} / (sqrt(2 pi^3)
    sqrt(f_{n-2}) F_{n-3})``.  ``r_gprime``: ``r g'(r) = g(r) * (a_{n-1} -
    a_{n-2}/2 - sum_{j<=n-3} a_j)``.
    """
    n = model.depth
    if model.kind == "theorem_rhs":
        if n == 2:
            return LevelIndexReal.from_float(r / math.pi)
        vals = real_iterates(n - 1, r)
        prod = li_mul(vals[n - 2], li_pow(vals[n - 3], 0.5))
        return li_scale(prod, 1.0 / SQRT_2PI3)
    g = _g(n, r)
    if model.kind in ("prop2_rhs", "e4_rhs", "g_of_r"):
        return g
    minus = li_scale(eval_a(n - 2, r), 0.5)
    for j in range(1, n - 2):
        minus = li_add(minus, eval_a(j, r))
    return li_mul(g, li_sub(eval_a(n - 1, r), minus))


def log_derivative_g(n: int, r: float) -> float:
    """``g'(r)/g(r)`` as a float (for the regularity check)."""
    bracket = float(eval_a(n - 1, r)) - 0.5 * float(eval_a(n - 2, r))
    bracket -= sum(float(eval_a(j, r)) for j in range(1, n - 2))
    return bracket / r


# -- Taylor data at the origin ---------------------------------------------

def origin_series(m: int, order: int) -> list[Fraction]:
    """Exact Taylor coefficients ``[c_0..c_order]`` of ``f_m`` at ``z = 0``."""
    f = [Fraction(0)] * (order + 1)
    if order >= 1:
        f[1] = Fraction(1)
    for _ in range(m - 1):
        # exp of a series with zero constant term
        e = [Fraction(0)] * (order + 1)
        e[0] = Fraction(1)
        for n in range(1, order + 1):
            e[n] = sum(j * f[j] * e[n - j] for j in range(1, n + 1)) / n
        f = [Fraction(0)] + e[:order]  # multiply by z
    return f


def origin_multiplicity(upper: int, lower: int) -> int:
    """Order of the zero of ``f_upper - f_lower`` at the origin."""
    if upper == lower:
        raise ValueError("identical iterates")
    order = max(upper, lower) + 2
    while True:
        a = origin_series(upper, order)
        b = origin_series(lower, order) if lower > 0 else [Fraction(0)] * (order + 1)
        for n, (x, y) in enumerate(zip(a, b)):
            if x != y:
                return n
        order *= 2


# -- vectorized kernels -----------------------------------------------------

def f_and_df(m: int, lam: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Arrays ``f_m(lam)`` and ``f_m'(lam)``; overflow shows up as inf/nan."""
    lam = np.asarray(lam, dtype=complex)
    f = lam.copy()
    d = np.ones_like(lam)
    with np.errstate(all="ignore"):
        inv = 1.0 / lam
        for _ in range(m - 1):
            f = lam * np.exp(f)
            d = f * (inv + d)
    return f, d


def re_f(m: int, z: np.ndarray) -> np.ndarray:
    """``Re f_m(z)`` evaluated as modulus times cosine, avoiding complex overflow."""
    z = np.asarray(z, dtype=complex)
    if m == 1:
        return z.real
    f = z
    for _ in range(m - 2):
        if np.any(f.real > LN_OVERFLOW):
            raise TowerOverflow(f"f_{m} overflows on this circle")
        f = z * np.exp(f)
    if np.any(f.real > LN_OVERFLOW):
        raise TowerOverflow(f"f_{m} overflows on this circle")
    # f_m = z exp(f_{m-1}) = |z| e^{Re f} e^{i(arg z + Im f)}
    return np.abs(z) * np.exp(f.real) * np.cos(np.angle(z) + f.imag)
