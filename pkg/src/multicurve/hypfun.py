"""Scalar special functions: collar width w, weights R and H, thin cuffs.

w(x) = arcsinh(1/sinh(x/2))   half-width of the embedded collar of a
                              geodesic of length x; sinh(w)·sinh(x/2) = 1
R(x) = 1/(x·|log x|)          weight of a short geodesic in the bound layer
H(x) = 1/(x·w(x))             combined weight; blows up at both ends
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.optimize import minimize_scalar


def collar_width(x: float) -> float:
    if x <= 0:
        raise ValueError("length must be positive, got %r" % (x,))
    s = math.sinh(x / 2)
    if s == math.inf:
        return 0.0
    return math.asinh(1.0 / s)


def r_weight(x: float) -> float:
    if x <= 0:
        raise ValueError("length must be positive, got %r" % (x,))
    if x == 1.0:
        raise ValueError("R has a singularity at x = 1")
    return 1.0 / (x * abs(math.log(x)))


def h_weight(x: float) -> float:
    if x <= 0:
        raise ValueError("length must be positive, got %r" % (x,))
    return 1.0 / (x * collar_width(x))


def h_max(lo: float, hi: float) -> float:
    """Maximum of H on [lo, hi] to relative tolerance 1e-9.

    H is strictly convex-looking on its domain with a single interior
    minimum, so the maximum sits at an endpoint; the scan below does not
    assume that and also probes the interior.
    """
    if not (0 < lo < hi):
        raise ValueError("need 0 < lo < hi, got [%r, %r]" % (lo, hi))
    best = max(h_weight(lo), h_weight(hi))
    # guard against an interior max: coarse grid + bounded local polish
    step = (hi - lo) / 64
    grid = [lo + step * k for k in range(1, 64)]
    xs = max(grid, key=h_weight)
    res = minimize_scalar(
        lambda x: -h_weight(x),
        bounds=(max(lo, xs - step), min(hi, xs + step)),
        method="bounded",
        options={"xatol": 1e-12},
    )
    if res.success:
        best = max(best, -res.fun)
    return best


@dataclass(frozen=True)
class FNPoint:
    """Fenchel-Nielsen coordinates: cuff lengths and twists along a fixed
    pants decomposition."""

    lengths: tuple
    twists: tuple

    def __post_init__(self):
        object.__setattr__(self, "lengths", tuple(float(v) for v in self.lengths))
        object.__setattr__(self, "twists", tuple(float(v) for v in self.twists))
        if len(self.lengths) != len(self.twists):
            raise ValueError("need one twist per cuff")
        ok = all(0 < v < math.inf for v in self.lengths)
        if not ok:
            raise ValueError("cuff lengths must be strictly positive and finite")


def thin_cuffs(fn, eps: float) -> set[int]:
    """Indices (1-based) of cuffs with length <= eps; closed inequality."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    lengths = fn.lengths if isinstance(fn, FNPoint) else fn
    return {i + 1 for i, ell in enumerate(lengths) if ell <= eps}


@dataclass(frozen=True)
class Constants:
    """Numeric constants the bound layer depends on.

    Everything here is configuration: epsilon is the thin threshold, bers_bound
    the per-surface cuff-length bound, comparison_c the calibrated constant
    comparing combinatorial to hyperbolic length, (c1, c2) the calibrated
    sandwich constants for the unit-ball function.
    """

    epsilon: float = 0.1
    bers_bound: float = 2 * math.acosh(1.5)  # sharp for the once-punctured torus
    comparison_c: float = 4.0  # calibrated; see config provenance
    c1: float = 0.25  # calibrated sandwich lower constant
    c2: float = 2.25  # calibrated sandwich upper constant

    def __post_init__(self):
        if not (0 < self.epsilon < 1):
            raise ValueError("epsilon must lie in (0, 1)")
        if self.bers_bound <= 1:
            raise ValueError("bers_bound must exceed 1")
        if self.comparison_c < 1:
            raise ValueError("comparison_c must be >= 1")
