"""Spectral distribution functions and metrics between them.

Empirical spectral distributions are step CDFs; the semicircle law is the
reference limit.  Levy and Kolmogorov distances are computed against the
closed-form semicircle CDF

    F(x) = 1/2 + x sqrt(4 - x^2) / (4 pi) + arcsin(x/2) / pi   on [-2, 2],

and ramp test functions give exact weak-convergence integrals on both sides.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "StepDistribution",
    "SemicircleLaw",
    "RampFunction",
    "esd",
    "expected_esd",
    "levy_distance",
    "kolmogorov_distance",
    "semicircle_moment",
    "weak_convergence_report",
]

# weights must sum to 1 within this slack
WEIGHT_TOL = 1e-12
# grid sizes backing the sup-scans where a CDF is not a step function
LEVY_GRID = 4096
KOLMOGOROV_GRID = 10_000


@dataclass(frozen=True)
class StepDistribution:
    """Purely atomic probability distribution with sorted distinct atoms."""

    atoms: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)
    _cum: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        a = np.asarray(self.atoms, dtype=np.float64).ravel()
        w = np.asarray(self.weights, dtype=np.float64).ravel()
        if a.size == 0:
            raise ValueError("distribution needs at least one atom")
        if a.size != w.size:
            raise ValueError("atoms and weights must have equal length")
        if np.any(w <= 0):
            raise ValueError("weights must be positive")
        order = np.argsort(a, kind="stable")
        a, w = a[order], w[order]
        # merge exactly equal positions
        keep = np.concatenate([[True], np.diff(a) != 0])
        idx = np.cumsum(keep) - 1
        merged_a = a[keep]
        merged_w = np.zeros(merged_a.size)
        np.add.at(merged_w, idx, w)
        if abs(merged_w.sum() - 1.0) > WEIGHT_TOL:
            raise ValueError("weights must sum to 1")
        for name, val in (("atoms", merged_a), ("weights", merged_w)):
            val.setflags(write=False)
            object.__setattr__(self, name, val)
        cum = np.concatenate([[0.0], np.cumsum(merged_w)])
        cum.setflags(write=False)
        object.__setattr__(self, "_cum", cum)

    def cdf(self, x):
        """Right-continuous CDF, vectorized."""
        idx = np.searchsorted(self.atoms, np.asarray(x, dtype=np.float64), side="right")
        out = self._cum[idx]
        return float(out) if np.isscalar(x) else out

    def critical_points(self) -> np.ndarray:
        return self.atoms

    def support(self) -> tuple[float, float]:
        return float(self.atoms[0]), float(self.atoms[-1])

    def mean_of(self, f) -> float:
        """integral of f against the distribution; exact for atomic measures."""
        return float(np.sum(self.weights * np.asarray(f(self.atoms), dtype=np.float64)))


@dataclass(frozen=True)
class SemicircleLaw:
    """Standard semicircle distribution on [-2, 2], density sqrt(4-x^2)/(2 pi)."""

    def density(self, x):
        x = np.asarray(x, dtype=np.float64)
        out = np.sqrt(np.clip(4.0 - x * x, 0.0, None)) / (2.0 * np.pi)
        return float(out) if out.ndim == 0 else out

    def cdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        xm = np.clip(x, -2.0, 2.0)
        out = 0.5 + xm * np.sqrt(4.0 - xm * xm) / (4.0 * np.pi) + np.arcsin(xm / 2.0) / np.pi
        out = np.clip(out, 0.0, 1.0)
        return float(out) if out.ndim == 0 else out

    def critical_points(self) -> np.ndarray:
        return np.linspace(-2.0, 2.0, KOLMOGOROV_GRID + 1)

    def support(self) -> tuple[float, float]:
        return (-2.0, 2.0)

    def partial_first_moment(self, a: float, b: float) -> float:
        """integral of x over [a, b] against the law, exact antiderivative."""
        def anti(x: float) -> float:
            x = min(max(x, -2.0), 2.0)
            return -((4.0 - x * x) ** 1.5) / (6.0 * np.pi)
        return anti(b) - anti(a)


def semicircle_moment(k: int) -> int:
    """Exact k-th semicircle moment: 0 for odd k, Catalan(k/2) for even k."""
    if k < 0:
        raise ValueError("moment order must be nonnegative")
    if k % 2 == 1:
        return 0
    m = k // 2
    return math.comb(2 * m, m) // (m + 1)


def esd(eigenvalues: Sequence[float] | np.ndarray) -> StepDistribution:
    """Empirical spectral distribution: weight 1/n at each eigenvalue."""
    ev = np.asarray(eigenvalues, dtype=np.float64).ravel()
    if ev.size == 0:
        raise ValueError("esd needs at least one eigenvalue")
    return StepDistribution(ev, np.full(ev.size, 1.0 / ev.size))


def expected_esd(samples: Iterable[StepDistribution]) -> StepDistribution:
    """Equal-weight mixture of step distributions (CDF = average of CDFs)."""
    samples = list(samples)
    if not samples:
        raise ValueError("expected_esd needs at least one sample")
    atoms = np.concatenate([s.atoms for s in samples])
    weights = np.concatenate([s.weights for s in samples]) / len(samples)
    return StepDistribution(atoms, weights)


def _scan_points(f, g, eps: float = 0.0) -> np.ndarray:
    pts = np.concatenate([f.critical_points(), g.critical_points()])
    lo = min(f.support()[0], g.support()[0]) - 1.0
    hi = max(f.support()[1], g.support()[1]) + 1.0
    base = np.concatenate([pts, np.linspace(lo, hi, LEVY_GRID)])
    if eps != 0.0:
        base = np.concatenate([base, base - eps, base + eps])
    xs = np.unique(base)
    # left limits pick up the step-function sups exactly
    return np.concatenate([xs, np.nextafter(xs, -np.inf)])


def kolmogorov_distance(f, g) -> float:
    """sup_x |F(x) - G(x)|; exact for step CDFs, grid-backed otherwise."""
    xs = _scan_points(f, g)
    return float(np.max(np.abs(np.asarray(f.cdf(xs)) - np.asarray(g.cdf(xs)))))


def levy_distance(f, g, tol: float = 1e-9) -> float:
    """Levy metric: inf of eps with F(x-eps)-eps <= G(x) <= F(x+eps)+eps for all x.

    Feasibility of a candidate eps is decided on the union of both CDFs'
    breakpoints shifted by 0 and +-eps, their left limits, and a uniform
    grid over the joint support hull; bisection then brackets the infimum.
    The returned value is an upper bound within 1e-6 of the true infimum.
    """
    def feasible(eps: float) -> bool:
        xs = _scan_points(f, g, eps)
        gap1 = np.max(np.asarray(g.cdf(xs)) - np.asarray(f.cdf(xs + eps)))
        gap2 = np.max(np.asarray(f.cdf(xs)) - np.asarray(g.cdf(xs + eps)))
        return max(gap1, gap2) <= eps + 1e-12

    hi = kolmogorov_distance(f, g) + 1e-12  # L <= K always
    if feasible(0.0):
        return 0.0
    lo = 0.0
    for _ in range(80):
        if hi - lo < tol:
            break
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            hi = mid
        else:
            lo = mid
    return float(hi)


@dataclass(frozen=True)
class RampFunction:
    """Continuous ramp: 1 on (-inf, p], 0 on [q, inf), linear in between.

    Total variation is exactly 1, which makes ramps the test functions for
    both the weak-convergence criterion and the bounded-variation rank bound.
    """

    p: float
    q: float

    def __post_init__(self) -> None:
        if not (self.p < self.q):
            raise ValueError("ramp requires p < q")

    def value(self, x):
        x = np.asarray(x, dtype=np.float64)
        out = np.clip((self.q - x) / (self.q - self.p), 0.0, 1.0)
        return float(out) if out.ndim == 0 else out

    def integrate_step(self, dist: StepDistribution) -> float:
        return dist.mean_of(self.value)

    def integrate_semicircle(self, law: SemicircleLaw | None = None) -> float:
        """Exact integral against the semicircle via the first-moment antiderivative."""
        law = law or SemicircleLaw()
        fp, fq = law.cdf(self.p), law.cdf(self.q)
        m1 = law.partial_first_moment(self.p, self.q)
        return float(fp + (self.q * (fq - fp) - m1) / (self.q - self.p))


def weak_convergence_report(
    dist: StepDistribution,
    ramps: Sequence[RampFunction],
    law: SemicircleLaw | None = None,
) -> list[tuple[float, float, float]]:
    """Per-ramp absolute gap |int f d(dist) - int f d(semicircle)|.

    Returns (p, q, gap) triples; small uniformly over a ramp grid certifies
    weak convergence against the semicircle.
    """
    law = law or SemicircleLaw()
    report = []
    for ramp in ramps:
        gap = abs(ramp.integrate_step(dist) - ramp.integrate_semicircle(law))
        report.append((ramp.p, ramp.q, float(gap)))
    return report
