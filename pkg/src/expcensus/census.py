"""Newton census of parameters with coinciding orbit points.

``f_{k+l}(lam) = f_k(lam)`` reduces, after cancelling ``lam e^{f_{k-1}}``, to
``h(lam) = 2 pi i m`` for an integer branch index ``m``:

* ``k >= 2``: ``h = f_{k+l-1} - f_{k-1}``, every ``m`` (``m = 0`` also has the
  spurious root ``lam = 0``, which is discarded);
* ``k = 1``:  ``h = f_l`` and ``m != 0``.

A pair condition ``f_i = f_j`` (``i < j``) is the same equation with
``(k, l) = (i, j - i)``.  Roots are found by vectorized Newton iteration seeded
on a square grid and by continuation in ``m``, then certified by comparing
per-branch counts with winding numbers.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CensusTooLarge, ConsistencyError, ContourZero, IncompleteCensus
from .iterates import origin_multiplicity
from .winding import TWO_PI, circle_windings, small_circle_windings

MAX_DEPTH_SUM = 4
MAX_BRANCHES = 50_000
NEWTON_ITERS = 60
DEDUP_TOL = 1e-8
BOUNDARY_TOL = 1e-9
ORIGIN_RADIUS = 1e-3
SIMPLE_RADIUS = 1e-5
SEED_DENSITIES = (64, 128, 256)
PAIR_PROXIMITY = 1e-7
PAIR_DIRECT = 1e-9


@dataclass(frozen=True)
class BranchEquation:
    """``h(lam) = f_upper(lam) - f_lower(lam)`` (``f_0 = 0``) against ``2 pi i m``."""

    kind: str           # "A" or "pair"
    k: int
    l: int
    i: int | None = None
    j: int | None = None

    def __post_init__(self):
        if self.k < 1 or self.l < 1:
            raise ValueError("k and l must be >= 1")
        if self.k + self.l > MAX_DEPTH_SUM:
            raise ValueError(f"k + l <= {MAX_DEPTH_SUM} required")

    @property
    def upper(self) -> int:
        return self.k + self.l - 1

    @property
    def lower(self) -> int:
        return self.k - 1

    def allows(self, m: int) -> bool:
        return self.lower > 0 or m != 0

    def origin_multiplicity(self, m: int) -> int:
        """Order of the spurious zero at ``lam = 0`` on branch ``m``."""
        if m != 0 or self.lower == 0:
            return 0
        return origin_multiplicity(self.upper, self.lower)

    def h_and_dh(self, lam) -> tuple[np.ndarray, np.ndarray]:
        lam = np.asarray(lam, dtype=complex)
        f = lam.copy()
        d = np.ones_like(lam)
        fl = np.zeros_like(lam)
        dl = np.zeros_like(lam)
        with np.errstate(all="ignore"):
            inv = 1.0 / lam
            for n in range(1, self.upper + 1):
                if n > 1:
                    f = lam * np.exp(f)
                    d = f * (inv + d)
                if n == self.lower:
                    fl, dl = f, d
        return f - fl, d - dl

    def h(self, lam) -> np.ndarray:
        return self.h_and_dh(lam)[0]

    def m_range(self, r: float) -> list[int]:
        """Branches that can have roots in ``|lam| <= r``: ``2 pi |m| <= max|h| + 2`` margin."""
        circle = r * np.exp(1j * np.linspace(0.0, TWO_PI, 1024, endpoint=False))
        with np.errstate(all="ignore"):
            top = float(np.max(np.abs(self.h(circle))))
        if not math.isfinite(top) or top / TWO_PI > MAX_BRANCHES:
            raise CensusTooLarge(f"{self.describe()} needs more than {MAX_BRANCHES} branches at r={r}")
        mmax = int(math.floor(top / TWO_PI)) + 2
        return [m for m in range(-mmax, mmax + 1) if self.allows(m)]

    def describe(self) -> str:
        if self.kind == "A":
            return f"A({self.k},{self.l})"
        return f"Pair({self.i},{self.j})"


def reduce_equation(kind: str, a: int, b: int) -> BranchEquation:
    """``reduce_equation("A", k, l)`` or ``reduce_equation("pair", i, j)``."""
    if kind == "A":
        return BranchEquation("A", a, b)
    if kind == "pair":
        if not 0 < a < b:
            raise ValueError("pair needs 0 < i < j")
        return BranchEquation("pair", a, b - a, i=a, j=b)
    raise ValueError(f"unknown equation kind {kind!r}")


def pair_equations(k: int, l: int) -> list[BranchEquation]:
    n = k + l
    return [reduce_equation("pair", i, j) for i in range(1, n) for j in range(i + 1, n)]


@dataclass(frozen=True)
class RootRecord:
    kind: str
    k: int
    l: int
    i: int | None
    j: int | None
    m: int
    lam: complex
    residual: float
    iters: int
    seed: str
    simple: bool
    boundary_ambiguous: bool = False

    @property
    def modulus(self) -> float:
        return abs(self.lam)

    def to_json(self) -> str:
        return json.dumps({
            "kind": self.kind, "k": self.k, "l": self.l, "i": self.i, "j": self.j,
            "m": self.m, "re": self.lam.real, "im": self.lam.imag, "abs": abs(self.lam),
            "residual": self.residual, "iters": self.iters, "seed": self.seed,
            "simple": self.simple,
        })


def _sort_key(rec: RootRecord):
    return (abs(rec.lam), math.atan2(rec.lam.imag, rec.lam.real), rec.m)


def residual_tol(m) -> np.ndarray:
    return 1e-10 * np.maximum(1.0, TWO_PI * np.abs(np.asarray(m, dtype=float)))


def _newton(eq: BranchEquation, lam: np.ndarray, m: np.ndarray, cap: float):
    """Vectorized Newton on ``h - 2 pi i m``; returns (lam, residual, iters, ok)."""
    target = 1j * TWO_PI * m
    tol = residual_tol(m)
    iters = np.zeros(lam.size, dtype=int)
    done = np.zeros(lam.size, dtype=bool)
    alive = np.ones(lam.size, dtype=bool)
    res = np.full(lam.size, np.inf)
    lam = lam.copy()
    for it in range(NEWTON_ITERS + 1):
        act = np.nonzero(alive & ~done)[0]
        if act.size == 0:
            break
        h, dh = eq.h_and_dh(lam[act])
        g = h - target[act]
        r_act = np.abs(g)
        res[act] = r_act
        conv = r_act <= tol[act]
        done[act[conv]] = True
        iters[act] = it
        bad = ~np.isfinite(r_act) | (dh == 0) | (np.abs(lam[act]) > cap)
        alive[act[bad & ~conv]] = False
        step_idx = act[~conv & ~bad]
        if it == NEWTON_ITERS or step_idx.size == 0:
            continue
        sel = ~conv & ~bad
        with np.errstate(all="ignore"):
            step = g[sel] / dh[sel]
        big = np.abs(step) > 0.5 * np.maximum(1.0, np.abs(lam[step_idx]))
        step[big] *= 0.5 * np.maximum(1.0, np.abs(lam[step_idx][big])) / np.abs(step[big])
        lam[step_idx] = lam[step_idx] - step
    ok = done & alive
    # two plain polishing steps, kept only where they lower the residual
    idx = np.nonzero(ok)[0]
    for _ in range(2):
        if idx.size == 0:
            break
        h, dh = eq.h_and_dh(lam[idx])
        with np.errstate(all="ignore"):
            cand = lam[idx] - (h - target[idx]) / dh
            r_new = np.abs(eq.h(cand) - target[idx])
        better = np.isfinite(r_new) & (r_new < res[idx])
        lam[idx[better]] = cand[better]
        res[idx[better]] = r_new[better]
    return lam, res, iters, ok


class _RootSet:
    """Roots keyed by branch, deduplicated at ``DEDUP_TOL * max(1, |lam|)``."""

    def __init__(self):
        self.by_m: dict[int, list[tuple[complex, float, int, str]]] = {}

    def add(self, lam: complex, m: int, res: float, iters: int, seed: str) -> bool:
        bucket = self.by_m.setdefault(m, [])
        tol = DEDUP_TOL * max(1.0, abs(lam))
        for other, *_ in bucket:
            if abs(other - lam) <= tol:
                return False
        bucket.append((lam, res, iters, seed))
        return True

    def __len__(self):
        return sum(len(b) for b in self.by_m.values())

    def items(self):
        for m in sorted(self.by_m):
            for lam, res, iters, seed in self.by_m[m]:
                yield m, lam, res, iters, seed


def _nearest_branch(eq: BranchEquation, values: np.ndarray, ms: list[int]) -> np.ndarray:
    m = np.clip(np.rint(values.imag / TWO_PI), ms[0], ms[-1]).astype(int)
    if not eq.allows(0):
        m[m == 0] = np.where(values.imag[m == 0] >= 0.0, 1, -1)
    return m


@dataclass
class Census:
    """Certified roots of one branch equation in ``|lam| <= radius``."""

    equation: BranchEquation
    radius: float
    roots: list[RootRecord]
    windings: dict[int, int]
    density: int
    contour_radius: float
    extra: dict = field(default_factory=dict)

    def within(self, contour: float) -> list[RootRecord]:
        return [rec for rec in self.roots if rec.modulus <= contour]

    def branch_counts(self, contour: float) -> dict[int, int]:
        counts = {m: 0 for m in self.windings}
        for rec in self.within(contour):
            counts[rec.m] = counts.get(rec.m, 0) + 1
        return counts


def _solve(eq: BranchEquation, r: float, ms: list[int], density: int,
           only: set[int] | None, found: _RootSet) -> None:
    cap = 1.5 * r + 1.0
    reach = 1.25 * r
    xs = np.linspace(-r, r, density)
    seeds = (xs[None, :] + 1j * xs[:, None]).ravel()
    seeds = seeds[seeds != 0]
    if only is None:
        m_seed = _nearest_branch(eq, eq.h(seeds), ms)
        lam0 = seeds
    else:
        targets = sorted(only)
        lam0 = np.tile(seeds, len(targets))
        m_seed = np.repeat(np.asarray(targets, dtype=int), seeds.size)

    frontier = _accept(eq, lam0, m_seed, "grid", found, cap, reach)
    m_lo, m_hi = ms[0], ms[-1]
    while frontier:
        lam = np.array([f[0] for f in frontier], dtype=complex)
        m = np.array([f[1] for f in frontier], dtype=int)
        _, dh = eq.h_and_dh(lam)
        pl, pm = [], []
        for sgn in (1, -1):
            nm = m + sgn
            keep = (nm >= m_lo) & (nm <= m_hi) & (dh != 0)
            if not eq.allows(0):
                keep &= nm != 0
            with np.errstate(all="ignore"):
                pl.append(lam[keep] + sgn * 1j * TWO_PI / dh[keep])
            pm.append(nm[keep])
        frontier = _accept(eq, np.concatenate(pl), np.concatenate(pm), "continuation", found, cap, reach)


def _accept(eq, lam0, m0, seed, found: _RootSet, cap, reach):
    if lam0.size == 0:
        return []
    lam, res, iters, ok = _newton(eq, lam0, m0, cap)
    fresh = []
    for idx in np.nonzero(ok)[0]:
        z, m = complex(lam[idx]), int(m0[idx])
        if abs(z) > reach:
            continue
        if m == 0 and eq.lower > 0 and abs(z) < ORIGIN_RADIUS:
            continue
        if found.add(z, m, float(res[idx]), int(iters[idx]), seed):
            fresh.append((z, m))
    return fresh


def nudged_windings(eq: BranchEquation, r: float, ms) -> tuple[dict[int, int], float]:
    """Branch windings on ``|lam| = r (1 + 1e-9)``, pushed further out if a
    zero sits on the contour.  Returns the windings and the radius used."""
    for step in range(4):
        contour = r * (1.0 + BOUNDARY_TOL * 10**step)
        try:
            return circle_windings(eq.h, contour, ms), contour
        except ContourZero:
            continue
    raise ContourZero(f"{eq.describe()}: zeros on every nudged contour near r={r}")


def newton_census(eq: BranchEquation, r: float, family: tuple[int, int] | None = None,
                  densities=SEED_DENSITIES) -> Census:
    """All roots of ``h = 2 pi i m`` with ``0 < |lam| <= r``, certified by winding.

    ``family`` is the ``(k, l)`` recorded on pair roots (defaults to the
    equation's own indices).
    """
    family = family or (eq.k, eq.l)
    ms = eq.m_range(r)
    windings, contour = nudged_windings(eq, r, ms)
    expected = {m: w - eq.origin_multiplicity(m) for m, w in windings.items()}
    found = _RootSet()
    only = None
    for density in densities:
        _solve(eq, r, ms, density, only, found)
        counts = {m: 0 for m in ms}
        for m, lam, *_ in found.items():
            if abs(lam) <= contour:
                counts[m] += 1
        bad = {m for m in ms if counts[m] != expected[m]}
        if not bad:
            break
        only = bad
    else:
        raise IncompleteCensus(
            f"{eq.describe()} r={r}: branches {sorted(bad)[:8]} disagree with winding counts")

    items = [(m, lam, res, it, seed) for m, lam, res, it, seed in found.items() if abs(lam) <= contour]
    lams = np.array([x[1] for x in items], dtype=complex)
    ms_arr = np.array([x[0] for x in items], dtype=int)
    simple = small_circle_windings(eq.h, lams, 1j * TWO_PI * ms_arr,
                                   SIMPLE_RADIUS * np.maximum(1.0, np.abs(lams)))
    k, l = family
    i, j = (eq.i, eq.j) if eq.kind == "pair" else (None, None)
    recs = [
        RootRecord(eq.kind, k, l, i, j, m, lam, res, it, seed, bool(s == 1),
                   abs(abs(lam) - r) <= BOUNDARY_TOL * r)
        for (m, lam, res, it, seed), s in zip(items, simple)
    ]
    recs.sort(key=_sort_key)
    return Census(eq, r, recs, expected, density, contour)


# -- the pair filter --------------------------------------------------------

def conjugation_symmetric(roots: list[RootRecord]) -> bool:
    """Whether the root set is closed under ``lam -> conj(lam)``, ``m -> -m``."""
    by_m: dict[int, list[complex]] = {}
    for rec in roots:
        by_m.setdefault(rec.m, []).append(rec.lam)
    for rec in roots:
        mirror = by_m.get(-rec.m, [])
        tol = DEDUP_TOL * max(1.0, rec.modulus)
        if not any(abs(z - rec.lam.conjugate()) <= tol for z in mirror):
            return False
    return True


def union_roots(pair_records: list[RootRecord]) -> list[RootRecord]:
    """Pair roots deduplicated across pairs (distinct parameters only)."""
    out: list[RootRecord] = []
    for rec in sorted(pair_records, key=_sort_key):
        tol = DEDUP_TOL * max(1.0, rec.modulus)
        if not any(abs(rec.lam - o.lam) <= tol for o in out[-64:]):
            out.append(rec)
    return out


def _pair_coincidence(lam: complex, k: int, l: int) -> bool:
    n = k + l
    vals = [None]
    z = complex(lam)
    f = z
    vals.append(f)
    for _ in range(2, n):
        f = z * np.exp(f)
        vals.append(complex(f))
    for i in range(1, n):
        for j in range(i + 1, n):
            if abs(vals[i] - vals[j]) <= PAIR_DIRECT * max(1.0, abs(vals[j])):
                return True
    return False


def filter_b2(records: list[RootRecord], pair_records: list[RootRecord], k: int, l: int):
    """Drop A-roots where two earlier orbit points already coincide.

    Two independent tests are applied (proximity to a pair root, and direct
    evaluation of ``|f_i - f_j|``); they must agree on every root.
    """
    pairs = np.array([p.lam for p in pair_records], dtype=complex)
    kept, removed = [], []
    for rec in records:
        near = bool(pairs.size) and bool(
            np.any(np.abs(pairs - rec.lam) <= PAIR_PROXIMITY * max(1.0, rec.modulus)))
        direct = _pair_coincidence(rec.lam, k, l)
        if near != direct:
            raise ConsistencyError(
                f"pair filters disagree at lambda={rec.lam!r} (proximity={near}, direct={direct})")
        (removed if near else kept).append(rec)
    return kept, removed


@dataclass
class FamilyCensus:
    k: int
    l: int
    radius: float
    a: Census
    pairs: list[Census]

    @property
    def pair_roots(self) -> list[RootRecord]:
        return union_roots([rec for c in self.pairs for rec in c.roots])

    def records(self) -> list[RootRecord]:
        return list(self.a.roots) + [rec for c in self.pairs for rec in c.roots]


def family_census(k: int, l: int, r: float, densities=SEED_DENSITIES) -> FamilyCensus:
    if k + l > MAX_DEPTH_SUM:
        raise ValueError(f"k + l <= {MAX_DEPTH_SUM} required")
    a = newton_census(reduce_equation("A", k, l), r, densities=densities)
    pairs = [newton_census(eq, r, family=(k, l), densities=densities) for eq in pair_equations(k, l)]
    return FamilyCensus(k, l, r, a, pairs)
