"""Configurable Hermitian random-matrix ensembles.

An ensemble is an entry law plus a variance profile.  Entry laws are mean
zero and symmetric by construction; finite-variance kinds are standardized
to unit variance so the profile entry sigma^2_ij is the exact entry
variance.  Infinite-variance kinds (pareto_symmetric with alpha <= 2) treat
the profile value as a squared scale instead.

Closed-form truncated moments for every kind drive the hypothesis checkers:
the row-variance / row-bound / Lindeberg sums behind the semicircle theorem
and the three row conditions behind the gaussian-convergence theorem.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .hermitian_core import HermitianMatrix
from .streams import DOMAIN_SAMPLE, derive_rng

__all__ = [
    "EntryLaw",
    "VarianceProfile",
    "EnsembleSpec",
    "GaussConditions",
    "ConditionReport",
    "sample",
    "sample_trial",
    "condition_sums",
    "gaussian_row_check",
    "monte_carlo_lindeberg_term",
    "wigner_unit_spec",
    "heavy_tail_spec",
]

_SQRT3 = math.sqrt(3.0)

LAW_KINDS = (
    "rademacher_scaled",
    "gaussian_real",
    "gaussian_complex",
    "uniform_bounded",
    "pareto_symmetric",
    "constant_zero",
)


def _phi(t: float) -> float:
    return math.exp(-0.5 * t * t) / math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class EntryLaw:
    """Distribution of a single (pre-profile) matrix entry.

    The standard draw has unit variance for finite-variance kinds; for
    pareto_symmetric with alpha <= 2 it is sign * T with T Pareto(alpha,
    scale), and the profile supplies the squared scale multiplier.
    """

    kind: str
    alpha: float = 0.0
    scale: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in LAW_KINDS:
            raise ValueError(f"unknown entry law kind: {self.kind!r}")
        if self.kind == "pareto_symmetric":
            if self.alpha <= 0 or self.scale <= 0:
                raise ValueError("pareto_symmetric requires alpha > 0 and scale > 0")

    # -- constructors ------------------------------------------------------
    @classmethod
    def rademacher(cls) -> "EntryLaw":
        return cls("rademacher_scaled")

    @classmethod
    def gaussian_real(cls) -> "EntryLaw":
        return cls("gaussian_real")

    @classmethod
    def gaussian_complex(cls) -> "EntryLaw":
        return cls("gaussian_complex")

    @classmethod
    def uniform_bounded(cls) -> "EntryLaw":
        return cls("uniform_bounded")

    @classmethod
    def pareto_symmetric(cls, alpha: float, scale: float) -> "EntryLaw":
        return cls("pareto_symmetric", alpha=alpha, scale=scale)

    @classmethod
    def constant_zero(cls) -> "EntryLaw":
        return cls("constant_zero")

    # -- structure ---------------------------------------------------------
    @property
    def is_complex(self) -> bool:
        return self.kind == "gaussian_complex"

    @property
    def is_symmetric(self) -> bool:
        # every bundled kind is symmetric about 0
        return True

    @property
    def has_finite_variance(self) -> bool:
        if self.kind == "pareto_symmetric":
            return self.alpha > 2.0
        return True

    @property
    def standard_variance(self) -> float:
        """Variance of the standard draw: 1, 0 for constant_zero, inf for heavy tails."""
        if self.kind == "constant_zero":
            return 0.0
        return 1.0 if self.has_finite_variance else math.inf

    @property
    def abs_bound(self) -> float:
        """sup |X| of the standard draw, inf when unbounded."""
        if self.kind == "rademacher_scaled":
            return 1.0
        if self.kind == "uniform_bounded":
            return _SQRT3
        if self.kind == "constant_zero":
            return 0.0
        return math.inf

    def _pareto_norm(self) -> float:
        # unit-variance normalizer for alpha > 2: Var(T) scaled out
        return self.scale * math.sqrt(self.alpha / (self.alpha - 2.0))

    def _pareto_m2_below(self, u: float) -> float:
        """E[T^2; T <= u] for T Pareto(alpha, scale)."""
        a, s = self.alpha, self.scale
        if u <= s:
            return 0.0
        if a == 2.0:
            return 2.0 * s * s * math.log(u / s)
        return a * s**a * (u ** (2.0 - a) - s ** (2.0 - a)) / (2.0 - a)

    # -- closed-form moments -----------------------------------------------
    def m2_below(self, t: float) -> float:
        """E[|X|^2; |X| <= t] for the standard draw; finite for every kind."""
        if t < 0:
            raise ValueError("threshold must be nonnegative")
        k = self.kind
        if k == "constant_zero":
            return 0.0
        if k == "rademacher_scaled":
            return 1.0 if t >= 1.0 else 0.0
        if k == "gaussian_real":
            return 1.0 - (2.0 * t * _phi(t) + math.erfc(t / math.sqrt(2.0)))
        if k == "gaussian_complex":
            # |X|^2 ~ Exp(1)
            return 1.0 - (t * t + 1.0) * math.exp(-t * t)
        if k == "uniform_bounded":
            u = min(t, _SQRT3)
            return u**3 / (3.0 * _SQRT3)
        # pareto
        if self.has_finite_variance:
            c = self._pareto_norm()
            return self._pareto_m2_below(c * t) / (c * c)
        return self._pareto_m2_below(t)

    def m2_tail(self, t: float) -> float:
        """E[|X|^2; |X| > t]; inf for infinite-variance kinds."""
        v = self.standard_variance
        if math.isinf(v):
            return math.inf
        return max(v - self.m2_below(t), 0.0)

    def tail_prob(self, t: float) -> float:
        """P(|X| > t) for the standard draw."""
        if t < 0:
            raise ValueError("threshold must be nonnegative")
        k = self.kind
        if k == "constant_zero":
            return 0.0
        if k == "rademacher_scaled":
            return 1.0 if t < 1.0 else 0.0
        if k == "gaussian_real":
            return math.erfc(t / math.sqrt(2.0))
        if k == "gaussian_complex":
            return math.exp(-t * t)
        if k == "uniform_bounded":
            return max(0.0, 1.0 - t / _SQRT3)
        u = (self._pareto_norm() if self.has_finite_variance else 1.0) * t
        if u < self.scale:
            return 1.0
        return (self.scale / u) ** self.alpha

    def truncated_mean(self, t: float) -> float:
        """E[X; |X| <= t]; identically 0 since every kind is symmetric."""
        return 0.0

    def has_moments_to(self, k: int) -> bool:
        if self.kind == "pareto_symmetric":
            return self.alpha > k
        return True

    def moment(self, m: int) -> float:
        """E[X^m] for real kinds (odd moments vanish by symmetry)."""
        if m < 0:
            raise ValueError("moment order must be nonnegative")
        if m == 0:
            return 1.0
        if self.is_complex:
            raise ValueError("use pair_moment for complex laws")
        if m % 2 == 1:
            return 0.0
        k = self.kind
        if k == "constant_zero":
            return 0.0
        if k == "rademacher_scaled":
            return 1.0
        if k == "gaussian_real":
            return float(math.prod(range(m - 1, 0, -2)))  # (m-1)!!
        if k == "uniform_bounded":
            return _SQRT3**m / (m + 1)
        if not self.has_moments_to(m):
            raise ValueError(f"pareto_symmetric(alpha={self.alpha}) lacks moments of order {m}")
        raw = self.alpha * self.scale**m / (self.alpha - m)  # E[T^m]
        if self.has_finite_variance:
            return raw / self._pareto_norm() ** m
        return raw

    def pair_moment(self, fwd: int, bwd: int) -> float:
        """E[X^fwd * conj(X)^bwd]; for real kinds this is moment(fwd + bwd)."""
        if not self.is_complex:
            return self.moment(fwd + bwd)
        # standard complex gaussian, E|X|^2 = 1: nonzero only on balanced powers
        return float(math.factorial(fwd)) if fwd == bwd else 0.0

    # -- sampling ------------------------------------------------------------
    def standard_sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        k = self.kind
        if k == "constant_zero":
            return np.zeros(size)
        if k == "rademacher_scaled":
            return rng.integers(0, 2, size).astype(np.float64) * 2.0 - 1.0
        if k == "gaussian_real":
            return rng.standard_normal(size)
        if k == "gaussian_complex":
            return (rng.standard_normal(size) + 1j * rng.standard_normal(size)) / math.sqrt(2.0)
        if k == "uniform_bounded":
            return rng.uniform(-_SQRT3, _SQRT3, size)
        t = self.scale * (1.0 - rng.random(size)) ** (-1.0 / self.alpha)
        sign = rng.integers(0, 2, size).astype(np.float64) * 2.0 - 1.0
        x = sign * t
        if self.has_finite_variance:
            x /= self._pareto_norm()
        return x


@dataclass(frozen=True)
class VarianceProfile:
    """Symmetric nonnegative matrix of per-entry variances (or squared scales).

    Kinds: uniform (one value), banded (inside/outside a |i-j| <= width
    band), explicit (full matrix, validated symmetric).
    """

    kind: str
    v: float = 0.0
    width: int = 0
    inside: float = 0.0
    outside: float = 0.0
    values: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        if self.kind not in ("uniform", "banded", "explicit"):
            raise ValueError(f"unknown profile kind: {self.kind!r}")
        if self.kind == "uniform" and self.v < 0:
            raise ValueError("uniform variance must be nonnegative")
        if self.kind == "banded":
            if self.width < 0 or self.inside < 0 or self.outside < 0:
                raise ValueError("banded profile values must be nonnegative")
        if self.kind == "explicit":
            m = np.asarray(self.values, dtype=np.float64)
            if m.ndim != 2 or m.shape[0] != m.shape[1]:
                raise ValueError("explicit profile must be square")
            if not np.array_equal(m, m.T):
                raise ValueError("explicit profile must be symmetric")
            if np.any(m < 0):
                raise ValueError("explicit profile must be nonnegative")
            m = m.copy()
            m.setflags(write=False)
            object.__setattr__(self, "values", m)

    @classmethod
    def uniform(cls, v: float) -> "VarianceProfile":
        return cls("uniform", v=float(v))

    @classmethod
    def banded(cls, width: int, inside: float, outside: float = 0.0) -> "VarianceProfile":
        return cls("banded", width=int(width), inside=float(inside), outside=float(outside))

    @classmethod
    def explicit(cls, values: np.ndarray) -> "VarianceProfile":
        return cls("explicit", values=values)

    def check_dimension(self, n: int) -> None:
        if self.kind == "explicit" and self.values.shape[0] != n:
            raise ValueError("explicit profile dimension does not match n")

    def matrix(self, n: int) -> np.ndarray:
        self.check_dimension(n)
        if self.kind == "uniform":
            return np.full((n, n), self.v)
        if self.kind == "banded":
            d = np.abs(np.subtract.outer(np.arange(n), np.arange(n)))
            return np.where(d <= self.width, self.inside, self.outside)
        return self.values.copy()

    def row_tail(self, i: int, n: int) -> np.ndarray:
        """Profile values sigma^2_ij for j = i..n-1."""
        self.check_dimension(n)
        if self.kind == "uniform":
            return np.full(n - i, self.v)
        if self.kind == "banded":
            d = np.arange(i, n) - i
            return np.where(d <= self.width, self.inside, self.outside)
        return self.values[i, i:].copy()

    def row_sums(self, n: int) -> np.ndarray:
        self.check_dimension(n)
        if self.kind == "uniform":
            return np.full(n, n * self.v)
        if self.kind == "banded":
            i = np.arange(n)
            inside_count = np.minimum(i, self.width) + np.minimum(n - 1 - i, self.width) + 1
            return inside_count * self.inside + (n - inside_count) * self.outside
        return self.values.sum(axis=1)

    def unique_values(self, n: int) -> tuple[np.ndarray, np.ndarray]:
        """Distinct profile values with ordered-pair counts over the n x n grid."""
        self.check_dimension(n)
        if self.kind == "uniform":
            return np.array([self.v]), np.array([n * n], dtype=np.int64)
        if self.kind == "banded":
            inside_count = n + 2 * (self.width * n - self.width * (self.width + 1) // 2)
            inside_count = min(inside_count, n * n)
            vals, counts = [self.inside], [inside_count]
            if n * n - inside_count > 0:
                vals.append(self.outside)
                counts.append(n * n - inside_count)
            return np.array(vals), np.array(counts, dtype=np.int64)
        vals, counts = np.unique(self.values, return_counts=True)
        return vals, counts.astype(np.int64)


@dataclass(frozen=True)
class EnsembleSpec:
    """Everything needed to reproduce an ensemble draw: n, law, profile, seed."""

    n: int
    law: EntryLaw
    profile: VarianceProfile
    diagonal_law: EntryLaw | None = None
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be positive")
        self.profile.check_dimension(self.n)
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in uint64")
        if self.diagonal_law is not None and self.diagonal_law.is_complex:
            raise ValueError("diagonal law must be real-valued")

    @property
    def effective_diagonal_law(self) -> EntryLaw:
        if self.diagonal_law is not None:
            return self.diagonal_law
        # Hermitian diagonals are real; complex laws fall back to the real gaussian
        return EntryLaw.gaussian_real() if self.law.is_complex else self.law


def sample(spec: EnsembleSpec, rng: np.random.Generator) -> HermitianMatrix:
    """One matrix draw; upper triangle independent, lower mirrored by conjugation.

    Per row i the stream is consumed in a fixed order (diagonal draw, then
    the off-diagonal tail), so a given generator state always yields the
    same matrix.
    """
    n = spec.n
    law, dlaw = spec.law, spec.effective_diagonal_law
    w = np.zeros((n, n), dtype=np.complex128 if law.is_complex else np.float64)
    for i in range(n):
        sd = np.sqrt(spec.profile.row_tail(i, n))
        w[i, i] = float(np.real(dlaw.standard_sample(rng, 1)[0])) * sd[0]
        if i + 1 < n:
            off = law.standard_sample(rng, n - i - 1) * sd[1:]
            w[i, i + 1 :] = off
            w[i + 1 :, i] = np.conj(off)
    return HermitianMatrix(w)


def sample_trial(spec: EnsembleSpec, trial: int) -> HermitianMatrix:
    """Trial r of the ensemble; independent of how trials are scheduled."""
    if trial < 0:
        raise ValueError("trial index must be nonnegative")
    return sample(spec, derive_rng(spec.seed, DOMAIN_SAMPLE, trial))


@dataclass(frozen=True)
class GaussConditions:
    """Worst-row sums for the three triangular-array conditions.

    tail_prob_sums: per epsilon, max_i sum_j P(|w_ij| > eps)   (condition i)
    truncated_mean_sum: max_i |sum_j E[w_ij; |w_ij| <= 1]|      (condition ii)
    truncated_variance_sum: the row sum_j Var[w_ij 1(|w_ij|<=1)] farthest
    from 1                                                      (condition iii)
    """

    tail_prob_sums: tuple[tuple[float, float], ...]
    truncated_mean_sum: float
    truncated_variance_sum: float


@dataclass(frozen=True)
class ConditionReport:
    """Raw hypothesis sums for the semicircle theorem (no 1/n normalization).

    The theorem's conditions ask each raw sum, divided by n, to vanish as n
    grows; the *_normalized properties expose that scaling.
    """

    n: int
    C: float
    var_row_sum_stat: float
    row_excess_stat: float
    lindeberg: tuple[tuple[float, float], ...]
    gauss_conditions: GaussConditions | None = None
    finite_variance: bool = True

    @property
    def var_row_sum_normalized(self) -> float:
        return self.var_row_sum_stat / self.n

    @property
    def row_excess_normalized(self) -> float:
        return self.row_excess_stat / self.n

    @property
    def lindeberg_normalized(self) -> tuple[tuple[float, float], ...]:
        return tuple((eps, val / self.n) for eps, val in self.lindeberg)


def _per_value_sum(vals: np.ndarray, counts: np.ndarray, term) -> float:
    total = 0.0
    for v, c in zip(vals, counts):
        if v == 0.0:
            continue
        t = term(float(v))
        if math.isinf(t):
            return math.inf
        total += float(c) * t
    return total


def condition_sums(
    spec: EnsembleSpec,
    C: float,
    epsilons: Sequence[float],
) -> ConditionReport:
    """Exact hypothesis sums from closed-form law moments.

    var_row_sum_stat = sum_i |sum_j (Var w_ij - 1/n)|
    row_excess_stat  = sum_i (sum_j Var w_ij - C)_+
    lindeberg(eps)   = sum_ij E[|w_ij|^2; |w_ij| > eps]

    Infinite-variance laws report inf for all three (flagged via
    finite_variance); their truncated statistics live in gaussian_row_check.
    """
    if C <= 0:
        raise ValueError("row bound C must be positive")
    eps_list = [float(e) for e in epsilons]
    if any(e <= 0 for e in eps_list):
        raise ValueError("epsilons must be positive")
    n, law = spec.n, spec.law
    if not law.has_finite_variance:
        lind = tuple((e, math.inf) for e in eps_list)
        return ConditionReport(n, C, math.inf, math.inf, lind, None, False)

    unit = law.standard_variance  # 1.0, or 0.0 for constant_zero
    rows = spec.profile.row_sums(n) * unit
    var_row = float(np.sum(np.abs(rows - 1.0)))
    excess = float(np.sum(np.clip(rows - C, 0.0, None)))
    vals, counts = spec.profile.unique_values(n)
    lind = []
    for eps in eps_list:
        if unit == 0.0:
            lind.append((eps, 0.0))
            continue
        s = _per_value_sum(vals, counts, lambda v: v * law.m2_tail(eps / math.sqrt(v)))
        lind.append((eps, s))
    return ConditionReport(n, C, var_row, excess, tuple(lind), None, True)


def _row_value_sums(spec: EnsembleSpec, term) -> np.ndarray:
    """Per-row sums of term(sigma^2_ij) over j, exploiting profile structure."""
    n, prof = spec.n, spec.profile
    if prof.kind == "uniform":
        val = term(prof.v) if prof.v > 0 else 0.0
        return np.full(n, n * val)
    if prof.kind == "banded":
        i = np.arange(n)
        inside_count = np.minimum(i, prof.width) + np.minimum(n - 1 - i, prof.width) + 1
        t_in = term(prof.inside) if prof.inside > 0 else 0.0
        t_out = term(prof.outside) if prof.outside > 0 else 0.0
        return inside_count * t_in + (n - inside_count) * t_out
    m = prof.values
    out = np.zeros(n)
    for i in range(n):
        row = m[i]
        nz = row[row > 0]
        out[i] = float(np.sum([term(float(v)) for v in nz])) if nz.size else 0.0
    return out


def gaussian_row_check(spec: EnsembleSpec, epsilons: Sequence[float]) -> ConditionReport:
    """Worst-row triangular-array conditions at truncation level 1.

    Requires a symmetric entry law (condition (ii) is then exactly 0).  The
    worst row is taken per condition: the largest tail-probability sum for
    (i), and the truncated-variance sum farthest from 1 for (iii).
    """
    if not spec.law.is_symmetric:
        raise ValueError("gaussian_row_check requires a symmetric entry law")
    eps_list = [float(e) for e in epsilons]
    if any(e <= 0 for e in eps_list):
        raise ValueError("epsilons must be positive")
    law = spec.law
    tail_sums = []
    for eps in eps_list:
        per_row = _row_value_sums(spec, lambda v: law.tail_prob(eps / math.sqrt(v)))
        tail_sums.append((eps, float(per_row.max())))
    trunc_var = _row_value_sums(spec, lambda v: v * law.m2_below(1.0 / math.sqrt(v)))
    worst = float(trunc_var[np.argmax(np.abs(trunc_var - 1.0))])
    gauss = GaussConditions(tuple(tail_sums), 0.0, worst)
    base = condition_sums(spec, C=1.0, epsilons=eps_list)
    return ConditionReport(
        spec.n,
        base.C,
        base.var_row_sum_stat,
        base.row_excess_stat,
        base.lindeberg,
        gauss,
        base.finite_variance,
    )


def monte_carlo_lindeberg_term(
    law: EntryLaw,
    sigma2: float,
    eps: float,
    samples: int,
    rng: np.random.Generator,
) -> tuple[float, float]:
    """Monte Carlo E[|w|^2; |w| > eps] for one (law, sigma^2) cell, with s.e.

    The closed forms in condition_sums cover every bundled kind; this is the
    independent estimator used to cross-check them.
    """
    if sigma2 < 0 or eps <= 0 or samples < 1:
        raise ValueError("need sigma2 >= 0, eps > 0, samples >= 1")
    w = math.sqrt(sigma2) * law.standard_sample(rng, samples)
    contrib = np.where(np.abs(w) > eps, np.abs(w) ** 2, 0.0)
    est = float(contrib.mean())
    se = float(contrib.std(ddof=1) / math.sqrt(samples)) if samples > 1 else math.inf
    return est, se


def wigner_unit_spec(n: int, law: EntryLaw | None = None, seed: int = 0) -> EnsembleSpec:
    """Unit Wigner ensemble: chosen law at uniform variance 1/n."""
    return EnsembleSpec(n, law or EntryLaw.gaussian_real(), VarianceProfile.uniform(1.0 / n), seed=seed)


def _heavy_tail_squared_scale(n: int) -> float:
    # root of n * x * ln(1/x) = 1 on (0, 1/e); left side increases in x there
    lo, hi = 1e-300, 1.0 / math.e
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if n * mid * math.log(1.0 / mid) < 1.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def heavy_tail_spec(n: int, seed: int = 0) -> EnsembleSpec:
    """Infinite-variance ensemble that still obeys the semicircle law.

    Entries are sign * T * scale with T Pareto(2, 1), so the per-entry
    variance is infinite.  The squared scale x_n solves n x ln(1/x) = 1,
    which makes the truncated-variance row sum sum_j Var[w 1(|w|<=1)]
    exactly 1 and the tail-probability row sum at eps=1 equal to n x_n
    (vanishing as 1/ln n).
    """
    if n < 8:
        raise ValueError("heavy_tail_spec needs n >= 8")
    x = _heavy_tail_squared_scale(n)
    return EnsembleSpec(
        n,
        EntryLaw.pareto_symmetric(2.0, 1.0),
        VarianceProfile.uniform(x),
        seed=seed,
    )
