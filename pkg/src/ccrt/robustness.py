"""Executable robustness theory for the fast estimator.

Subset condition on the remainder errors, the robust interior region,
the predicted common-remainder shift with its ±M corrections, the
closed-form RMSE, and a seeded Monte-Carlo estimate of the probability
that errors are preserved through reconstruction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cmod import mod_real
from .crt import ModulusSystem
from .mle import compute_weights

SUBSET_LIMIT = 24


@dataclass(frozen=True)
class ErrorVector:
    deltas: tuple[complex, ...]
    weights: tuple[float, ...]

    def __post_init__(self):
        if len(self.deltas) != len(self.weights):
            raise ValueError("delta and weight counts differ")

    @classmethod
    def from_sigmas(cls, deltas, sigmas) -> "ErrorVector":
        return cls(tuple(map(complex, deltas)), tuple(float(x) for x in compute_weights(sigmas)))

    @property
    def L(self) -> int:
        return len(self.deltas)


@dataclass(frozen=True)
class SubsetConditionReport:
    condition_holds: bool
    first_violating_subset: tuple[int, ...] | None


def weighted_mean_error(ev: ErrorVector) -> complex:
    return sum(w * d for w, d in zip(ev.weights, ev.deltas))


def _axis_subset_ok(values: np.ndarray, weights: np.ndarray, M: float) -> int | None:
    """First violating subset mask along one axis, or None.

    Checks every nonempty proper subset V: the difference between the
    conditional weighted means of V and its complement must lie in
    [-M/2, M/2).
    """
    L = values.size
    wsum = weights.sum()
    half = M / 2.0
    for mask in range(1, (1 << L) - 1):
        wv = xv = 0.0
        for i in range(L):
            if mask >> i & 1:
                wv += weights[i]
                xv += weights[i] * values[i]
        xc = float(np.dot(weights, values)) - xv
        wc = wsum - wv
        diff = xv / wv - xc / wc
        if not (-half <= diff < half):
            return mask
    return None


def subset_condition(ev: ErrorVector, M: float) -> SubsetConditionReport:
    """Per-axis subset sweep of the error-preserving condition."""
    if ev.L > SUBSET_LIMIT:
        raise ValueError(f"subset sweep limited to L <= {SUBSET_LIMIT}, got {ev.L}")
    w = np.asarray(ev.weights, dtype=float)
    for values in (
        np.asarray([d.real for d in ev.deltas]),
        np.asarray([d.imag for d in ev.deltas]),
    ):
        mask = _axis_subset_ok(values, w, float(M))
        if mask is not None:
            subset = tuple(i for i in range(ev.L) if mask >> i & 1)
            return SubsetConditionReport(condition_holds=False, first_violating_subset=subset)
    return SubsetConditionReport(condition_holds=True, first_violating_subset=None)


def in_robust_region(n: complex, sys: ModulusSystem) -> bool:
    """True iff both components of n lie in [M, M*(Γ-1))."""
    lo = float(sys.M)
    hi = float(sys.M) * (sys.gamma - 1)
    return lo <= n.real < hi and lo <= n.imag < hi


@dataclass(frozen=True)
class CommonShift:
    shift: complex  # predicted change of the common remainder per axis
    corrections: tuple[float, float]  # the ±M/0 terms (re, im)
    r_c_predicted: complex


def predicted_common_shift(r_c: complex, mean_err: complex, M: float) -> CommonShift:
    """Predicted estimated common remainder <r_c + mean_err> mod M with the
    explicit per-axis wrap corrections."""
    if abs(mean_err.real) >= M / 2 or abs(mean_err.imag) >= M / 2:
        raise ValueError("mean error components must satisfy |.| < M/2")
    corrections = []
    parts = []
    for rc, de in ((r_c.real, mean_err.real), (r_c.imag, mean_err.imag)):
        raw = rc + de
        if raw < 0:
            corr = M
        elif raw < M:
            corr = 0.0
        else:
            corr = -M
        corrections.append(corr)
        parts.append(de + corr)
    shift = complex(parts[0], parts[1])
    predicted = complex(mod_real(r_c.real + mean_err.real, M), mod_real(r_c.imag + mean_err.imag, M))
    return CommonShift(shift=shift, corrections=(corrections[0], corrections[1]), r_c_predicted=predicted)


def theoretical_rmse(sigmas) -> float:
    """Closed-form RMSE sqrt(2 * sum w_i^2 sigma_i^2) of the preserved error."""
    w = compute_weights(sigmas)
    s = np.asarray(sigmas, dtype=float)
    return float(math.sqrt(2.0 * np.sum(w * w * s * s)))


@dataclass(frozen=True)
class PreservingProbability:
    p_axis: float
    p_joint_predicted: float  # p_axis squared (axes are independent)
    p_joint_empirical: float
    ci_low: float
    ci_high: float
    trials: int


def _axis_ok_batch(draws: np.ndarray, weights: np.ndarray, M: float) -> np.ndarray:
    """Vectorized per-axis subset condition over a (trials, L) sample block."""
    trials, L = draws.shape
    wsum_total = weights.sum()
    totals = draws @ weights
    ok = np.ones(trials, dtype=bool)
    half = M / 2.0
    seen = set()
    for mask in range(1, (1 << L) - 1):
        comp = ((1 << L) - 1) ^ mask
        if comp in seen:
            continue  # the complement gives the negated statistic; test both signs at once
        seen.add(mask)
        sel = np.array([(mask >> i) & 1 for i in range(L)], dtype=bool)
        wv = weights[sel].sum()
        xv = draws[:, sel] @ weights[sel]
        diff = xv / wv - (totals - xv) / (wsum_total - wv)
        ok &= (-half <= diff) & (diff < half) & (-half <= -diff) & (-diff < half)
    return ok


def error_preserving_probability(
    sigmas, M: float, trials: int, seed: int
) -> PreservingProbability:
    """Monte-Carlo probability that the subset condition holds.

    Per-axis Gaussian errors are drawn with the given sigmas; the per-axis
    acceptance rate is squared for the joint prediction, and the joint
    empirical rate is reported as an independence cross-check, with a 95%
    binomial interval on the empirical rate.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    s = np.asarray(sigmas, dtype=float)
    w = compute_weights(s)
    rng = np.random.default_rng([int(seed), 0x5EED])
    re_draws = rng.standard_normal((trials, s.size)) * s
    im_draws = rng.standard_normal((trials, s.size)) * s
    ok_re = _axis_ok_batch(re_draws, w, float(M))
    ok_im = _axis_ok_batch(im_draws, w, float(M))
    p_axis = float(np.concatenate([ok_re, ok_im]).mean())
    joint = float((ok_re & ok_im).mean())
    se = math.sqrt(max(joint * (1 - joint), 1e-300) / trials)
    return PreservingProbability(
        p_axis=p_axis,
        p_joint_predicted=p_axis * p_axis,
        p_joint_empirical=joint,
        ci_low=max(0.0, joint - 1.96 * se),
        ci_high=min(1.0, joint + 1.96 * se),
        trials=trials,
    )
