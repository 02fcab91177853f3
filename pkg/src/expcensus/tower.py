"""Overflow-safe arithmetic for tower-growth reals and log-polar complex values.

A :class:`LevelIndexReal` stores a positive real ``x`` as ``(level, residual)``
with ``x = exp(exp(...exp(residual)))`` (``level`` applications of exp).  The
canonical form keeps ``residual`` in ``[0, E0)`` at level 0 and in
``[ln E0, E0)`` above, with ``E0 = e**30``.  That leaves one full exp of
headroom below double overflow, so ``f_3(10) = 10*exp(10*e**10)`` is simply
``E^1(220266.6...)`` and ``f_4(10)`` is ``E^2(...)``.

Subtraction of nearly equal values at level >= 2 is deliberately not
supported; callers restructure such formulas in log space.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import total_ordering

from .errors import NonPositive, PrecisionLoss, TowerOverflow

LOG_E0 = 30.0
E0 = math.exp(LOG_E0)
# ln(DBL_MAX): exact complex values are only formed below this log-modulus.
LN_OVERFLOW = math.log(1.7976931348623157e308)

_TEXT_RE = re.compile(r"^\s*E\^(\d+)\((.+)\)\s*$")


@total_ordering
@dataclass(frozen=True, eq=False)
class LevelIndexReal:
    """Non-negative real in level-index form; always canonical once built."""

    level: int
    residual: float

    def __post_init__(self):
        lvl, res = _canonical(self.level, self.residual)
        object.__setattr__(self, "level", lvl)
        object.__setattr__(self, "residual", res)

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_float(cls, x: float) -> LevelIndexReal:
        return cls(0, float(x))

    @classmethod
    def from_log(cls, y: float) -> LevelIndexReal:
        """The value ``exp(y)`` for any real ``y`` (negative allowed)."""
        if math.isnan(y):
            raise ValueError("log value is NaN")
        if y == math.inf:
            raise TowerOverflow("exp(inf)")
        if y < LOG_E0:
            return cls(0, math.exp(y))
        return cls(1, y)

    @classmethod
    def parse(cls, text: str) -> LevelIndexReal:
        """Inverse of ``str()``: accepts ``"E^n(x)"``."""
        match = _TEXT_RE.match(text)
        if match is None:
            raise ValueError(f"not a level-index literal: {text!r}")
        return cls(int(match.group(1)), float(match.group(2)))

    # -- views ------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.level == 0 and self.residual == 0.0

    def ln(self) -> float:
        """Natural log as a float; may be negative, ``-inf`` or ``inf``."""
        if self.level == 0:
            return math.log(self.residual) if self.residual > 0 else -math.inf
        value = self.residual
        for _ in range(self.level - 1):
            if value > LN_OVERFLOW:
                return math.inf
            value = math.exp(value)
        return value

    def __float__(self) -> float:
        if self.level == 0:
            return self.residual
        y = self.ln()
        return math.inf if y > LN_OVERFLOW else math.exp(y)

    def __str__(self) -> str:
        return f"E^{self.level}({self.residual:.17g})"

    def __repr__(self) -> str:
        return f"LevelIndexReal({self.level}, {self.residual!r})"

    def __hash__(self):
        return hash((self.level, self.residual))

    # -- operators --------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, LevelIndexReal):
            return NotImplemented
        return self.level == other.level and self.residual == other.residual

    def __lt__(self, other):
        if not isinstance(other, LevelIndexReal):
            return NotImplemented
        return li_compare(self, other) < 0

    def __mul__(self, other):
        return li_mul(self, _coerce(other))

    __rmul__ = __mul__

    def __add__(self, other):
        return li_add(self, _coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return li_sub(self, _coerce(other))

    def __truediv__(self, other):
        return li_div(self, _coerce(other))

    def __rtruediv__(self, other):
        return li_div(_coerce(other), self)

    def __pow__(self, p):
        return li_pow(self, float(p))

    def log(self) -> LevelIndexReal:
        return li_log(self)

    def exp(self) -> LevelIndexReal:
        return li_exp(self)


def _coerce(x) -> LevelIndexReal:
    if isinstance(x, LevelIndexReal):
        return x
    return LevelIndexReal.from_float(float(x))


def _canonical(level: int, residual: float) -> tuple[int, float]:
    level = int(level)
    residual = float(residual)
    if level < 0:
        raise ValueError("level must be non-negative")
    if math.isnan(residual) or residual < 0.0:
        raise NonPositive(f"residual must be >= 0, got {residual}")
    if math.isinf(residual):
        raise TowerOverflow("infinite residual")
    while residual >= E0:
        residual = math.log(residual)
        level += 1
    while level > 0 and residual < LOG_E0:
        residual = math.exp(residual)
        level -= 1
    return level, residual


ZERO = LevelIndexReal(0, 0.0)
ONE = LevelIndexReal(0, 1.0)


def li_normalize(x: LevelIndexReal) -> LevelIndexReal:
    """Canonical form of ``x``; construction already normalizes."""
    return LevelIndexReal(x.level, x.residual)


def li_exp(x: LevelIndexReal) -> LevelIndexReal:
    return LevelIndexReal(x.level + 1, x.residual)


def li_log(x: LevelIndexReal) -> LevelIndexReal:
    """Natural logarithm; needs ``x >= 1`` so that the result is non-negative."""
    if x.level >= 1:
        return LevelIndexReal(x.level - 1, x.residual)
    if x.residual == 0.0:
        raise NonPositive("log of zero")
    if x.residual < 1.0:
        raise NonPositive(f"log of {x.residual} < 1 is negative; use .ln()")
    return LevelIndexReal(0, math.log(x.residual))


def _ulp_close(a: float, b: float) -> bool:
    return a != b and abs(a - b) <= math.ulp(max(a, b))


def li_compare(a: LevelIndexReal, b: LevelIndexReal) -> int:
    """-1, 0 or 1.  Exact on canonical forms.

    Raises :class:`PrecisionLoss` for equal levels >= 2 whose residuals are one
    ulp apart: the stored residuals cannot separate such values.
    """
    if a.level != b.level:
        return -1 if a.level < b.level else 1
    if a.level >= 2 and _ulp_close(a.residual, b.residual):
        raise PrecisionLoss(f"{a} and {b} differ by one residual ulp")
    if a.residual == b.residual:
        return 0
    return -1 if a.residual < b.residual else 1


def _add_float(x: LevelIndexReal, d: float) -> LevelIndexReal:
    """``x + d`` for a plain float ``d`` (either sign)."""
    if x.level == 0:
        total = x.residual + d
        if total < 0.0:
            raise NonPositive("sum is negative")
        return LevelIndexReal(0, total)
    if x.level == 1:
        frac = d * math.exp(-x.residual)
        if frac <= -1.0:
            raise NonPositive("sum is negative")
        return LevelIndexReal(1, x.residual + math.log1p(frac))
    return x


def _log_ratio(a: LevelIndexReal, b: LevelIndexReal) -> float:
    """``ln a - ln b`` as a float (may be infinite)."""
    if a == b:
        return 0.0
    if a.is_zero:
        return -math.inf
    if b.is_zero:
        return math.inf
    la, lb = a.ln(), b.ln()
    if math.isfinite(la) and math.isfinite(lb):
        return la - lb
    if math.isfinite(lb):
        return math.inf
    if math.isfinite(la):
        return -math.inf
    # both at level >= 2: ln a - ln b = ln b * expm1(ln ln a - ln ln b)
    inner = _log_ratio(li_log(a), li_log(b))
    if inner == 0.0:
        return 0.0
    return math.copysign(math.inf, inner)


def li_add(a: LevelIndexReal, b: LevelIndexReal) -> LevelIndexReal:
    try:
        if a < b:
            a, b = b, a
    except PrecisionLoss:
        pass  # one ulp apart at level >= 2: either order is the same sum
    if b.is_zero:
        return a
    if a.level == 0:
        return LevelIndexReal(0, a.residual + b.residual)
    d = min(_log_ratio(b, a), 0.0)
    inc = math.log1p(math.exp(d)) if d > -745.0 else 0.0
    return li_exp(_add_float(li_log(a), inc))


def li_sub(a: LevelIndexReal, b: LevelIndexReal) -> LevelIndexReal:
    """``a - b`` for ``a >= b``; refuses close operands at level >= 2."""
    if b.is_zero:
        return a
    if a.level == 0 and b.level == 0:
        diff = a.residual - b.residual
        if diff < 0.0:
            raise NonPositive("difference is negative")
        return LevelIndexReal(0, diff)
    d = _log_ratio(b, a)
    if d > 0.0:
        raise NonPositive("difference is negative")
    if d == 0.0:
        return ZERO
    if a.level >= 2 and d > -math.log(2.0):
        raise PrecisionLoss("subtraction of close tower values at level >= 2")
    inc = math.log1p(-math.exp(d))
    la = li_log(a)
    if la.level == 0:
        return LevelIndexReal.from_log(la.residual + inc)
    return li_exp(_add_float(la, inc))


def li_mul(a: LevelIndexReal, b: LevelIndexReal) -> LevelIndexReal:
    if a.is_zero or b.is_zero:
        return ZERO
    if a.level == 0 and b.level == 0:
        return LevelIndexReal(0, a.residual * b.residual)
    if a.level == 0:
        a, b = b, a
    la = li_log(a)
    if b.level == 0:
        lb = math.log(b.residual)
        if la.level == 0:
            return LevelIndexReal.from_log(la.residual + lb)
        return li_exp(_add_float(la, lb))
    return li_exp(li_add(la, li_log(b)))


def li_div(a: LevelIndexReal, b: LevelIndexReal) -> LevelIndexReal:
    if b.is_zero:
        raise ZeroDivisionError("division by a zero tower value")
    if a.is_zero:
        return ZERO
    if a.level == 0 and b.level == 0:
        q = a.residual / b.residual
        if math.isfinite(q):
            return LevelIndexReal(0, q)
    la, lb = a.ln(), b.ln()
    if math.isfinite(la) and math.isfinite(lb):
        return LevelIndexReal.from_log(la - lb)
    if math.isfinite(lb):
        return li_exp(_add_float(li_log(a), -lb))
    if math.isfinite(la):
        return ZERO
    num, den = li_log(a), li_log(b)
    if num < den:
        return ZERO
    return li_exp(li_sub(num, den))


def li_scale(x: LevelIndexReal, c: float) -> LevelIndexReal:
    """``c * x`` for a positive float ``c``."""
    if c <= 0.0:
        raise NonPositive("scale factor must be positive")
    if x.level == 0:
        return LevelIndexReal(0, c * x.residual)
    lx = li_log(x)
    if lx.level == 0:
        return LevelIndexReal.from_log(lx.residual + math.log(c))
    return li_exp(_add_float(lx, math.log(c)))


def li_pow(a: LevelIndexReal, p: float) -> LevelIndexReal:
    """``a ** p`` for real ``p``."""
    if p == 1.0:
        return a
    if p == 0.0:
        return ONE
    if a.is_zero:
        if p < 0.0:
            raise ZeroDivisionError("negative power of zero")
        return ZERO
    if a.level == 0:
        return LevelIndexReal.from_log(p * math.log(a.residual))
    la = li_log(a)
    if p > 0.0:
        return li_exp(li_scale(la, p))
    if la.level == 0:
        return LevelIndexReal.from_log(p * la.residual)
    return ZERO


def li_rel_gap(a: LevelIndexReal, b: LevelIndexReal) -> float:
    """``a/b - 1``, computed from the log difference at a shared level."""
    if b.is_zero:
        raise NonPositive("relative gap against zero")
    if a.level == 0 and b.level == 0:
        return (a.residual - b.residual) / b.residual
    if a.level == b.level and a.level >= 2 and _ulp_close(a.residual, b.residual):
        raise PrecisionLoss(f"{a} and {b} differ by one residual ulp")
    d = _log_ratio(a, b)
    if d > LN_OVERFLOW:
        return math.inf
    return math.expm1(d)


@dataclass(frozen=True)
class ComplexIterateValue:
    """Complex value kept as ``(log_modulus, argument)``.

    The argument is never reduced modulo 2*pi: iterates built through
    ``log f_{m+1} = log z + f_m`` carry a continuous branch, which the winding
    and Taylor-remainder checks rely on.  ``form`` is ``"exact"`` while the
    modulus fits a double and ``"logpolar"`` beyond.
    """

    log_modulus: float
    argument: float

    @classmethod
    def from_complex(cls, z: complex, argument: float | None = None) -> ComplexIterateValue:
        z = complex(z)
        if z == 0:
            return cls(-math.inf, 0.0 if argument is None else argument)
        arg = math.atan2(z.imag, z.real) if argument is None else argument
        return cls(math.log(abs(z)), arg)

    @property
    def form(self) -> str:
        return "exact" if self.log_modulus < LN_OVERFLOW else "logpolar"

    def to_complex(self) -> complex:
        if self.form != "exact":
            raise TowerOverflow(f"|value| = exp({self.log_modulus:.6g}) overflows")
        mod = math.exp(self.log_modulus)
        return complex(mod * math.cos(self.argument), mod * math.sin(self.argument))

    @property
    def re(self) -> float:
        return self.to_complex().real

    @property
    def im(self) -> float:
        return self.to_complex().imag

    def log(self) -> complex:
        """Continuous-branch complex logarithm."""
        return complex(self.log_modulus, self.argument)
