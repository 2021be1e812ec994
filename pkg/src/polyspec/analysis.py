"""Normalization, extrapolation, eigenvalue counting, and classification.

The counting function N(t) of a sorted eigenvalue series is compared against
the affine prediction slope * t + c, with slope = area / (4 pi) and the
additive constant c particular to each surface.  D is the raw remainder, A its
running average (computed exactly, since N is a step function), and
g(t) = sqrt(t) * A(t^2) the rescaled average.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .analytic import (SQUARE_NORMALIZER, TRIANGLE_NORMALIZER, exact_spectrum)
from .errors import InsufficientSpectrumError
from .net import SQRT3, PolyhedronKind

# counting constants: area/(4 pi) slope and the additive constant c
WEYL_SLOPE = {
    PolyhedronKind.TETRAHEDRON: SQRT3 / (4 * math.pi),
    PolyhedronKind.OCTAHEDRON: SQRT3 / (2 * math.pi),
    PolyhedronKind.ICOSAHEDRON: 5 * SQRT3 / (4 * math.pi),
    PolyhedronKind.CUBE: 3 / (2 * math.pi),
}

COUNTING_CONSTANT = {
    PolyhedronKind.TETRAHEDRON: Fraction(1, 2),
    PolyhedronKind.OCTAHEDRON: Fraction(5, 12),
    PolyhedronKind.ICOSAHEDRON: Fraction(11, 30),
    PolyhedronKind.CUBE: Fraction(7, 18),
}


def normalizer(kind: PolyhedronKind) -> float:
    """Division constant turning raw eigenvalues into lattice-integer scale."""
    if kind is PolyhedronKind.CUBE:
        return SQUARE_NORMALIZER
    return TRIANGLE_NORMALIZER


def normalize(lam: float, kind: PolyhedronKind) -> float:
    """Normalized eigenvalue: lambda / (4 pi^2 / 3), or lambda / pi^2 (cube)."""
    if lam < 0:
        raise ValueError("eigenvalue must be >= 0")
    return lam / normalizer(kind)


def aitken_extrapolate(l_r: float, l_2r: float, l_4r: float) -> float:
    """Limit of the exponential fit through three successive refinements.

    Fits l(k) = l_inf + A * theta^k and returns l_inf; if the three values
    have (numerically) converged already, returns the finest one.
    """
    d1 = l_2r - l_r
    d2 = l_4r - l_2r
    den = d2 - d1
    if abs(den) < 1e-14 * max(1.0, abs(l_4r)):
        return l_4r
    return l_4r - d2 * d2 / den


@dataclass(frozen=True)
class CountingSeries:
    """Sorted raw eigenvalues with the surface's counting constants."""

    eigenvalues: np.ndarray
    weyl_slope: float
    c: float

    def __post_init__(self):
        ev = np.asarray(self.eigenvalues, dtype=np.float64)
        if ev.ndim != 1 or len(ev) == 0:
            raise ValueError("eigenvalues must be a nonempty 1-D array")
        if np.any(np.diff(ev) < 0):
            raise ValueError("eigenvalues must be nondecreasing")
        if ev[0] > 1e-6:
            raise ValueError("series must start at the zero eigenvalue")
        object.__setattr__(self, "eigenvalues", ev)

    @property
    def coverage(self) -> float:
        return float(self.eigenvalues[-1])


def make_counting_series(kind: PolyhedronKind, eigenvalues) -> CountingSeries:
    """CountingSeries with the slope and constant belonging to the kind."""
    return CountingSeries(eigenvalues=np.sort(np.asarray(eigenvalues, float)),
                          weyl_slope=WEYL_SLOPE[kind],
                          c=float(COUNTING_CONSTANT[kind]))


def counting(series: CountingSeries, t: float) -> int:
    """N(t): number of eigenvalues <= t, including the zero eigenvalue."""
    if t < 0:
        raise ValueError("t must be >= 0")
    return int(np.searchsorted(series.eigenvalues, t, side="right"))


def _integral_n(series: CountingSeries, t):
    """Exact integral of N over [0, t]: sum of (t - lambda_j)+ terms."""
    ev = series.eigenvalues
    prefix = np.concatenate([[0.0], np.cumsum(ev)])
    t = np.asarray(t, dtype=np.float64)
    k = np.searchsorted(ev, t, side="right")
    return k * t - prefix[k]


def remainder(series: CountingSeries, t) -> np.ndarray:
    """D(t) = N(t) - (slope * t + c)."""
    t = np.asarray(t, dtype=np.float64)
    n = np.searchsorted(series.eigenvalues, t, side="right")
    return n - (series.weyl_slope * t + series.c)


def averaged_remainder(series: CountingSeries, t) -> np.ndarray:
    """A(t) = (1/t) * integral of D over [0, t], exact piecewise form.

    The t -> 0 limit 1 - c is used at t = 0.
    """
    t = np.asarray(t, dtype=np.float64)
    out = np.empty(t.shape)
    pos = t > 0
    tp = t[pos]
    out[pos] = (_integral_n(series, tp)
                - 0.5 * series.weyl_slope * tp * tp - series.c * tp) / tp
    out[~pos] = 1.0 - series.c
    return out


@dataclass(frozen=True)
class RemainderTable:
    """Sampled counting diagnostics; g is NaN where the series is uncovered."""

    t: np.ndarray
    n: np.ndarray
    d: np.ndarray
    a: np.ndarray
    g: np.ndarray


def remainder_series(series: CountingSeries, tmax: float,
                     samples: int) -> RemainderTable:
    """Tabulate (t, N, D, A, g) on an even grid over [0, tmax].

    D and A require the series to cover [0, tmax]; g(t) = sqrt(t) * A(t^2)
    additionally needs coverage up to t^2 and is emitted only where covered.
    """
    if tmax <= 0:
        raise ValueError("tmax must be > 0")
    if samples < 2:
        raise ValueError("samples must be >= 2")
    if tmax > series.coverage:
        raise InsufficientSpectrumError(
            f"series covers eigenvalues up to {series.coverage:.6g}, "
            f"cannot tabulate D/A up to {tmax:.6g}")
    t = np.linspace(0.0, tmax, samples)
    n = np.searchsorted(series.eigenvalues, t, side="right").astype(float)
    d = n - (series.weyl_slope * t + series.c)
    a = averaged_remainder(series, t)
    g = np.full(t.shape, np.nan)
    ok = t * t <= series.coverage
    g[ok] = np.sqrt(t[ok]) * averaged_remainder(series, t[ok] ** 2)
    return RemainderTable(t=t, n=n, d=d, a=a, g=g)


@dataclass(frozen=True)
class Classification:
    """Result of the nonsingular/singular identification heuristic."""

    label: str               # "nonsingular" | "singular"
    value: Fraction | None   # matched exact normalized eigenvalue
    witness: tuple | None    # lattice orbit (k, j) producing the value
    tag: str | None          # hexLattice | squareLattice | third


def classify(normalized_lambda: float, kind: PolyhedronKind,
             tol: float = 0.02) -> Classification:
    """Match a normalized eigenvalue against the exact admissible set.

    Nonsingular if within tol of a member (with the matching orbit as
    witness); singular otherwise.  A numerical-identification heuristic, not
    a proof.
    """
    if normalized_lambda < 0:
        raise ValueError("normalized eigenvalue must be >= 0")
    if tol <= 0:
        raise ValueError("tol must be > 0")
    lines = exact_spectrum(kind, normalized_lambda + tol + 1.0)
    best = None
    for line in lines:
        dist = abs(float(line.value) - normalized_lambda)
        if best is None or dist < best[0]:
            best = (dist, line)
    if best is not None and best[0] <= tol:
        line = best[1]
        return Classification(label="nonsingular", value=line.value,
                              witness=line.witness, tag=line.tag)
    return Classification(label="singular", value=None, witness=None, tag=None)


def group_clusters(values, rel_tol: float = 0.005):
    """Group sorted values into clusters split at relative gaps > rel_tol.

    Returns a list of (mean value, multiplicity) pairs.
    """
    vals = np.sort(np.asarray(values, dtype=np.float64))
    groups = []
    start = 0
    for i in range(1, len(vals) + 1):
        if i == len(vals) or \
                vals[i] - vals[i - 1] > rel_tol * max(1.0, abs(vals[i])):
            groups.append((float(vals[start:i].mean()), i - start))
            start = i
    return groups
