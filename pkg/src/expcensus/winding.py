"""Argument-principle zero counts by continuous phase tracking on circles.

The winding number of ``h - c`` along a circle is accumulated from the
principal phase increments between consecutive contour nodes.  Nodes are
inserted locally until every increment is safely below ``pi/2``; the total
phase divided by ``2 pi`` must then be an integer to within ``1e-3``.

For the branch equations ``h(lam) = 2 pi i m`` all targets lie on the lattice
``2 pi i Z``, so a single refined contour serves every branch at once: a
segment is split until its chord is shorter than the distance from its end
points to the nearest lattice target, which bounds every branch's phase
increment by ``pi/3``.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .errors import ContourZero, NonInteger, TowerOverflow

TWO_PI = 2.0 * math.pi
START_NODES = 1024
NODE_CAP = 2**24
INTEGER_TOL = 1e-3
MAX_LEVELS = 48


def _values(h: Callable[[np.ndarray], np.ndarray], pts: np.ndarray) -> np.ndarray:
    with np.errstate(all="ignore"):
        v = np.asarray(h(pts), dtype=complex)
    if not np.all(np.isfinite(v)):
        raise TowerOverflow("function is not finite on the contour")
    return v


def _lattice_distance(v: np.ndarray, m_lo: int, m_hi: int) -> np.ndarray:
    m = np.clip(np.rint(v.imag / TWO_PI), m_lo, m_hi)
    return np.abs(v - 1j * TWO_PI * m)


def refine_contour(
    h: Callable[[np.ndarray], np.ndarray],
    center: complex,
    radius: float,
    m_lo: int,
    m_hi: int,
    *,
    start: int = START_NODES,
    cap: int = NODE_CAP,
) -> np.ndarray:
    """Closed list of ``h`` values (first value repeated at the end) on a
    contour fine enough for every target ``2 pi i m``, ``m_lo <= m <= m_hi``."""
    theta = np.linspace(0.0, TWO_PI, start + 1)
    vals = _values(h, center + radius * np.exp(1j * theta[:-1]))
    vals = np.append(vals, vals[0])
    for _ in range(MAX_LEVELS):
        dist = _lattice_distance(vals, m_lo, m_hi)
        chord = np.abs(np.diff(vals))
        bad = np.nonzero(chord >= np.minimum(dist[:-1], dist[1:]))[0]
        if bad.size == 0:
            return vals
        if theta.size + bad.size > cap:
            break
        mid = 0.5 * (theta[bad] + theta[bad + 1])
        mv = _values(h, center + radius * np.exp(1j * mid))
        theta = np.insert(theta, bad + 1, mid)
        vals = np.insert(vals, bad + 1, mv)
    raise ContourZero(f"phase steps stay large near |lam - {center}| = {radius}")


def lattice_windings(vals: np.ndarray, ms: np.ndarray, chunk_cells: int = 4_000_000) -> np.ndarray:
    """Winding numbers of the closed polyline ``vals`` around ``2 pi i m``."""
    ms = np.asarray(ms, dtype=int)
    out = np.empty(ms.size, dtype=int)
    a, b = vals[:-1], vals[1:]
    step = max(1, chunk_cells // max(1, a.size))
    for s in range(0, ms.size, step):
        c = 1j * TWO_PI * ms[s:s + step]
        with np.errstate(all="ignore"):
            inc = np.angle((b[:, None] - c[None, :]) / (a[:, None] - c[None, :]))
        if np.any(np.abs(inc) >= 0.5 * math.pi) or not np.all(np.isfinite(inc)):
            raise ContourZero("phase step >= pi/2 after refinement")
        turns = np.sum(inc, axis=0) / TWO_PI
        near = np.rint(turns)
        if np.any(np.abs(turns - near) > INTEGER_TOL):
            worst = float(np.max(np.abs(turns - near)))
            raise NonInteger(f"accumulated winding misses an integer by {worst:.3g}")
        out[s:s + step] = near.astype(int)
    return out


def circle_windings(
    h: Callable[[np.ndarray], np.ndarray],
    radius: float,
    ms,
    *,
    center: complex = 0.0,
    cap: int = NODE_CAP,
) -> dict[int, int]:
    """``{m: winding of h - 2 pi i m along |lam - center| = radius}``."""
    ms = np.asarray(sorted(set(int(m) for m in ms)), dtype=int)
    if ms.size == 0:
        return {}
    vals = refine_contour(h, center, radius, int(ms[0]), int(ms[-1]), cap=cap)
    return dict(zip(ms.tolist(), lattice_windings(vals, ms).tolist()))


def winding_number(h: Callable[[np.ndarray], np.ndarray], radius: float, m: int = 0,
                   center: complex = 0.0) -> int:
    """Winding of ``h - 2 pi i m`` along one circle."""
    return circle_windings(h, radius, [m], center=center)[m]


def small_circle_windings(
    h: Callable[[np.ndarray], np.ndarray],
    centers: np.ndarray,
    targets: np.ndarray,
    radii: np.ndarray,
    nodes: int = 64,
) -> np.ndarray:
    """Windings of ``h - target_j`` on small circles around many centres.

    All circles are walked together with ``nodes`` points each; circles whose
    coarse walk is not clearly resolved are redone with the adaptive walker.
    """
    centers = np.asarray(centers, dtype=complex)
    if centers.size == 0:
        return np.empty(0, dtype=int)
    targets = np.asarray(targets, dtype=complex)
    radii = np.asarray(radii, dtype=float)
    theta = np.linspace(0.0, TWO_PI, nodes + 1)
    pts = centers[:, None] + radii[:, None] * np.exp(1j * theta[None, :])
    v = _values(h, pts.ravel()).reshape(pts.shape) - targets[:, None]
    v[:, -1] = v[:, 0]
    with np.errstate(all="ignore"):
        inc = np.angle(v[:, 1:] / v[:, :-1])
    ok = np.all(np.abs(inc) < 0.25 * math.pi, axis=1) & np.all(np.isfinite(inc), axis=1)
    out = np.rint(np.sum(np.where(np.isfinite(inc), inc, 0.0), axis=1) / TWO_PI).astype(int)
    for idx in np.nonzero(~ok)[0]:
        t = targets[idx]

        def shifted(lam, t=t):
            return h(lam) - t

        out[idx] = circle_windings(shifted, float(radii[idx]), [0], center=complex(centers[idx]))[0]
    return out
