"""Reference computations that share no code with the package.

They use mpmath, scipy and brute-force numpy so that a bug in the library
cannot be mirrored here.
"""

from __future__ import annotations

import math

import mpmath as mp
import numpy as np
from scipy import integrate, optimize, special

mp.mp.dps = 50


def f_mp(m: int, lam) -> mp.mpc:
    """``f_m(lam)`` at 50 significant digits."""
    lam = mp.mpmathify(lam)
    f = lam
    for _ in range(m - 1):
        f = lam * mp.exp(f)
    return f


def log_f_real(m: int, r: float) -> float:
    """``ln f_m(r)`` for real ``r > 0`` (exact recursion in log space)."""
    r = mp.mpf(r)
    if m == 1:
        return float(mp.log(r))
    return float(mp.log(r) + f_mp(m - 1, r))


def a_fd(m: int, r: float, h: float = 1e-6) -> float:
    """``r f_m'/f_m`` by a centred difference of ``ln f_m`` in ``ln r``."""
    up = mp.mpf(log_f_real(m, r * (1 + h)))
    dn = mp.mpf(log_f_real(m, r * (1 - h)))
    return float((up - dn) / (mp.log(1 + h) - mp.log(1 - h)))


def log_abs_f(m: int, r: float, t: np.ndarray) -> np.ndarray:
    """``ln|f_m(r e^{it})|`` with plain numpy complex arithmetic (m <= 3)."""
    z = r * np.exp(1j * t)
    if m == 1:
        return np.full_like(t, math.log(r))
    g = z
    for _ in range(m - 2):
        g = z * np.exp(g)
    return math.log(r) + g.real


def characteristic_quad(m: int, r: float, grid: int = 200_001) -> float:
    """``(1/pi) int_0^pi max(ln|f_m|, 0)`` with scipy quad between sign changes."""
    t = np.linspace(0.0, math.pi, grid)
    v = log_abs_f(m, r, t)
    idx = np.nonzero(np.sign(v[:-1]) * np.sign(v[1:]) < 0)[0]
    g = lambda x: float(log_abs_f(m, r, np.array([x]))[0])
    cuts = [0.0] + [optimize.brentq(g, t[i], t[i + 1], xtol=1e-15) for i in idx] + [math.pi]
    total = 0.0
    for lo, hi in zip(cuts, cuts[1:]):
        mid = 0.5 * (lo + hi)
        if g(mid) > 0:
            val, _ = integrate.quad(g, lo, hi, limit=500, epsabs=1e-13, epsrel=1e-13)
            total += val
    return total / math.pi


def lambert_roots(r: float, nmax: int = 60) -> list[complex]:
    """Nonzero ``lam`` with ``lam e^lam = 2 pi i m``, ``m != 0``, ``|lam| <= r``."""
    mmax = int(r * math.exp(r) / (2 * math.pi)) + 1
    out = []
    for m in range(-mmax, mmax + 1):
        if m == 0:
            continue
        w = 2j * math.pi * m
        for n in range(-nmax, nmax + 1):
            lam = complex(special.lambertw(w, n))
            if abs(lam) <= r:
                out.append(lam)
    return out


def brute_windings(h, r: float, ms, points: int = 2**18) -> dict[int, int]:
    """Winding of ``h - 2 pi i m`` around 0 on ``|lam| = r`` by phase unwrapping."""
    t = np.linspace(0.0, 2 * math.pi, points + 1)
    vals = h(r * np.exp(1j * t))
    res = {}
    for m in ms:
        ph = np.unwrap(np.angle(vals - 2j * math.pi * m))
        res[m] = int(round((ph[-1] - ph[0]) / (2 * math.pi)))
    return res


def cubic_remainder_mp(k: int, r: float, tau: complex) -> complex:
    """``log f_k(r e^tau) - log f_k(r) - a tau - b tau^2/2`` at 50 digits.

    ``a`` and ``b`` are the first two derivatives in ``tau``, taken by
    mpmath's numerical differentiation of the same analytic function.
    """
    r = mp.mpf(r)
    tau = mp.mpc(tau)

    def L(s):
        lam = r * mp.exp(s)
        return mp.log(lam) + (f_mp(k - 1, lam) if k > 1 else 0)

    a = mp.diff(L, 0, 1)
    b = mp.diff(L, 0, 2)
    return complex(L(tau) - L(0) - a * tau - b * tau**2 / 2)
