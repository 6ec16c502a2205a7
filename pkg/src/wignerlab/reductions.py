"""The reduction pipeline: truncate, centralize, rescale, replace.

Each stage transforms a Hermitian matrix toward the normalized form the
semicircle theorem is proved for (bounded entries, zero conditional mean,
row variance sums below a bound C, unit off-diagonal variances), and each
records the exact Frobenius cost (1/n)||before - after||_F^2 so the
distance to the original spectrum stays accountable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .hermitian_core import HermitianMatrix
from .ensembles import EnsembleSpec, VarianceProfile

__all__ = [
    "ReductionTrace",
    "ReplacePlan",
    "truncate",
    "centralize",
    "rescale_to_row_bound",
    "unit_variance_replace",
    "unit_variance_plan",
    "truncated_profile",
    "pipeline",
    "auto_eta",
]


@dataclass(frozen=True)
class ReductionTrace:
    """Accounting for a pipeline run.

    frobenius_delta_sq_per_stage holds (1/n)||before - after||_F^2 per
    applied stage, in order (truncate, centralize, rescale).
    """

    eta: float
    truncated_count: int
    centering_norm_sq: float
    rescale_coeffs: np.ndarray | None = field(default=None, repr=False)
    frobenius_delta_sq_per_stage: tuple[float, ...] = ()


def truncate(w: HermitianMatrix, eta: float) -> tuple[HermitianMatrix, ReductionTrace]:
    """Zero every entry with modulus above eta.

    ||W - W'||_F^2 is exactly the sum of squared moduli of removed entries;
    Hermitian symmetry survives because |w_ij| = |w_ji|.
    """
    if eta <= 0:
        raise ValueError("truncation level eta must be positive")
    a = w.entries
    mask = np.abs(a) > eta
    removed = int(mask.sum())
    out = np.where(mask, 0.0, a)
    delta_sq = float(np.sum(np.abs(a[mask]) ** 2))
    trace = ReductionTrace(eta, removed, 0.0, None, (delta_sq / w.n,))
    return HermitianMatrix(out), trace


def centralize(w: HermitianMatrix, conditional_means) -> HermitianMatrix:
    """Subtract the matrix of conditional means E[w_ij; |w_ij| <= eta].

    The means must themselves form a Hermitian matrix, otherwise the result
    would not be.
    """
    if not isinstance(conditional_means, HermitianMatrix):
        try:
            conditional_means = HermitianMatrix(conditional_means)
        except ValueError as e:
            raise ValueError(f"conditional means must be Hermitian: {e}") from e
    if conditional_means.n != w.n:
        raise ValueError("conditional means dimension mismatch")
    return HermitianMatrix(w.entries - conditional_means.entries)


def rescale_to_row_bound(profile: VarianceProfile, n: int, C: float) -> np.ndarray:
    """Symmetric coefficients c in [0, 1] with sum_j c_ij^2 sigma^2_ij <= C per row.

    Greedy row sweep: row k keeps the coefficients already fixed by earlier
    rows and lowers its free coefficients (j >= k) by one uniform multiplier
    until the row sum is exactly C, then mirrors.  When the fixed part alone
    already exceeds C (possible when variance concentrates in late columns)
    the whole row is lowered uniformly instead, which only shrinks earlier
    rows' sums.  Either way the total variance removed obeys
    sum_ij (1 - c_ij^2) sigma^2_ij <= 2 sum_i (sum_j sigma^2_ij - C)_+.
    """
    if C <= 0:
        raise ValueError("row bound C must be positive")
    sig = profile.matrix(n)
    c = np.ones((n, n))
    for k in range(n):
        weighted = c[k] ** 2 * sig[k]
        total = float(weighted.sum())
        if total <= C:
            continue
        fixed = float(weighted[:k].sum())
        if fixed <= C:
            free = total - fixed
            mult = math.sqrt((C - fixed) / free)
            c[k, k:] *= mult
        else:
            c[k, :] *= math.sqrt(C / total)
        c[:, k] = c[k, :]
    return c


@dataclass(frozen=True)
class ReplacePlan:
    """Which entries unit_variance_replace rewrites and how.

    replace_mask marks off-diagonal entries with sigma^2 <= 1/(2n), to be
    replaced by fresh Rademacher +-1/sqrt(n); scale multiplies the rest;
    zero-variance diagonal entries stay 0 and are only counted.
    """

    replace_mask: np.ndarray = field(repr=False)
    scale: np.ndarray = field(repr=False)
    zero_diagonal_count: int


def unit_variance_plan(profile: VarianceProfile, n: int) -> ReplacePlan:
    sig = profile.matrix(n)
    off = ~np.eye(n, dtype=bool)
    replace = off & (sig <= 1.0 / (2.0 * n))
    scale = np.zeros_like(sig)
    pos = sig > 0
    scale[pos] = 1.0 / np.sqrt(n * sig[pos])
    zero_diag = int(np.count_nonzero(np.diag(sig) == 0.0))
    replace.setflags(write=False)
    scale.setflags(write=False)
    return ReplacePlan(replace, scale, zero_diag)


def unit_variance_replace(
    w: HermitianMatrix,
    profile: VarianceProfile,
    rng: np.random.Generator,
) -> HermitianMatrix:
    """Force every off-diagonal entry variance to exactly 1/n at the law level.

    Off-diagonal entries whose profile variance is at most 1/(2n) are
    replaced by fresh symmetric signs +-1/sqrt(n); every other entry with
    positive variance is multiplied by 1/sqrt(n sigma^2).  Zero-variance
    diagonal entries stay 0.  The expected squared change on the replaced
    set E is at most (3/(2n)) |E| since Var(w) + 1/n <= 3/(2n) there.
    """
    n = w.n
    plan = unit_variance_plan(profile, n)
    out = np.array(w.entries * plan.scale)
    iu, ju = np.where(np.triu(plan.replace_mask, 1))
    if iu.size:
        signs = rng.integers(0, 2, iu.size).astype(np.float64) * 2.0 - 1.0
        vals = signs / math.sqrt(n)
        out[iu, ju] = vals
        out[ju, iu] = vals  # real, so the conjugate mirror is the value itself
    return HermitianMatrix(out)


def truncated_profile(spec: EnsembleSpec, eta: float) -> VarianceProfile:
    """Variance profile of the truncated (and centralized) entries.

    Var[w 1(|w| <= eta)] = sigma^2 E[X^2; |X| <= eta/sigma] for symmetric
    laws; finite even when the raw variance is infinite.
    """
    if eta <= 0:
        raise ValueError("eta must be positive")
    law = spec.law

    def shrink(v: float) -> float:
        return v * law.m2_below(eta / math.sqrt(v)) if v > 0 else 0.0

    prof = spec.profile
    if prof.kind == "uniform":
        return VarianceProfile.uniform(shrink(prof.v))
    if prof.kind == "banded":
        return VarianceProfile.banded(prof.width, shrink(prof.inside), shrink(prof.outside))
    vec = np.vectorize(shrink, otypes=[np.float64])
    return VarianceProfile.explicit(vec(prof.values))


def pipeline(
    w: HermitianMatrix,
    spec: EnsembleSpec,
    eta: float,
    C: float,
) -> tuple[HermitianMatrix, ReductionTrace]:
    """Truncate at eta, centralize, then rescale rows to the bound C.

    Conditional means are computed in closed form from the spec's law; all
    bundled laws are symmetric so the centering stage is exact zero (the
    hook stays in place for the accounting).  Rescaling uses the truncated
    variance profile, since those are the variances the row bound applies to
    after the first two stages.
    """
    spec.profile.check_dimension(w.n)
    if w.n != spec.n:
        raise ValueError("matrix dimension does not match spec")
    w1, t1 = truncate(w, eta)
    # symmetric laws: E[w; |w| <= eta] = 0 entrywise
    assert spec.law.truncated_mean(eta) == 0.0
    means = np.zeros((w.n, w.n))
    w2 = centralize(w1, means)
    centering_norm_sq = 0.0
    coeffs = rescale_to_row_bound(truncated_profile(spec, eta), w.n, C)
    w3 = HermitianMatrix(coeffs * w2.entries)
    n = w.n
    deltas = (
        t1.frobenius_delta_sq_per_stage[0],
        float(np.sum(np.abs(w1.entries - w2.entries) ** 2)) / n,
        float(np.sum(np.abs(w2.entries - w3.entries) ** 2)) / n,
    )
    trace = ReductionTrace(eta, t1.truncated_count, centering_norm_sq, coeffs, deltas)
    return w3, trace


def auto_eta(spec: EnsembleSpec, grid: tuple[float, ...] = (0.0625, 0.125, 0.25, 0.5, 1.0, 2.0, 4.0)) -> float:
    """Truncation level max(n^(-1/4), smallest grid eps with normalized Lindeberg <= eps).

    The normalized Lindeberg sum is (1/n) sum_ij E[|w|^2; |w| > eps]; when no
    grid point satisfies the bound the largest one is used.
    """
    from .ensembles import condition_sums

    eps_sorted = sorted(float(e) for e in grid)
    if not eps_sorted or eps_sorted[0] <= 0:
        raise ValueError("grid must contain positive thresholds")
    rep = condition_sums(spec, C=1.0, epsilons=eps_sorted)
    chosen = eps_sorted[-1]
    for eps, val in rep.lindeberg_normalized:
        if val <= eps:
            chosen = eps
            break
    return max(spec.n ** -0.25, chosen)
