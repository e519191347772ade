"""Acceptance suite: one criterion per test, one pass/fail line each.

Run with `pytest -v -s tests/test_acceptance.py` to see the per-criterion
lines.  Tolerances are pinned in the assertions.
"""

import math
import time

import numpy as np

from ccrt.adc import gen_signal, run_recovery
from ccrt.cmod import circ_dist, mod_c
from ccrt.config import load_campaign
from ccrt.crt import build_system, solve_common
from ccrt.experiments import count_ops, run_campaign
from ccrt.gaussian import GaussianInt, extended_gcd
from ccrt.mle import NoisyRemainders, estimate, oracle_grid_mle
from ccrt.noise import three_sigma_check, u_from_snr
from ccrt.robustness import ErrorVector, subset_condition, weighted_mean_error


def check(num: int, description: str, condition: bool, detail: str = ""):
    status = "PASS" if condition else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"[criterion {num:02d}] {description}: {status}{suffix}")
    assert condition, f"criterion {num} failed: {description}{suffix}"


SYSTEM_2CH = build_system(10, [GaussianInt(3, 4), GaussianInt(3, -4)])
SYSTEM_8CH = {
    "M": 10,
    "cofactors": ["1+4i", "1-4i", "3+4i", "3-4i", "2+7i", "2-7i", "3", "7"],
}


def test_criterion_01_worked_example_exactness():
    sys = build_system(2, [GaussianInt(1, 4), GaussianInt(-3, -4), GaussianInt(13, 16)])
    sol = solve_common([-3 + 6j, -1 - 6j, -15 + 44j], sys)
    ok = (
        sol.n == 17 + 18j
        and sol.r_common == 1 + 0j
        and sol.n0 == GaussianInt(8, 9)
    )
    check(1, "exact reconstruction of the worked three-modulus example", ok, f"n={sol.n}")


def test_criterion_02_bezout_identity():
    n, m = GaussianInt(19, 8), GaussianInt(3, 4)
    g, u, v = extended_gcd(n, m)
    ok = g == GaussianInt(1, 0) and u * n + v * m == GaussianInt(1, 0)
    check(2, "extended gcd Bezout identity for (19+8i, 3+4i)", ok, f"1 = ({u})n + ({v})m")


def test_criterion_03_modulo_fixtures():
    a = mod_c(2 + 5j, GaussianInt(3, 4))
    b = mod_c(2 + 5j, GaussianInt(4, 0))
    d = circ_dist(3 + 3j, 1 - 2j, GaussianInt(4, 0))
    ok = (
        abs(a - (-1 + 1j)) < 1e-12
        and abs(b - (2 + 1j)) < 1e-12
        and abs(d - (-2 + 1j)) < 1e-12
    )
    check(3, "modulo and circular-distance fixtures exact to 1e-12", ok)


def test_criterion_04_fast_estimator_matches_grid_oracle():
    rng = np.random.default_rng(20240)
    start = time.monotonic()
    worst_gap = -math.inf
    evals_ok = True
    for _ in range(200):
        sigmas = tuple(rng.uniform(0.1, 1.0, size=2))
        n = complex(*rng.uniform(0, SYSTEM_2CH.range, 2))
        values = tuple(
            mod_c(n + s * complex(*rng.standard_normal(2)), m)
            for s, m in zip(sigmas, SYSTEM_2CH.moduli)
        )
        obs = NoisyRemainders(values, sigmas)
        est = estimate(obs, SYSTEM_2CH)
        _, oracle_val = oracle_grid_mle(obs, SYSTEM_2CH, step=0.05)
        worst_gap = max(worst_gap, est.objective - oracle_val)
        evals_ok = evals_ok and est.evaluations == 2 * SYSTEM_2CH.L
    elapsed = time.monotonic() - start
    ok = worst_gap <= 1e-9 and evals_ok and elapsed < 120
    check(
        4,
        "fast estimate at or below the 0.05-step grid-oracle minimum on 200 instances with exactly 2L evaluations",
        ok,
        f"worst objective gap {worst_gap:.3e}, {elapsed:.1f}s",
    )


def test_criterion_05_error_preserving_iff():
    rng = np.random.default_rng(777)
    M = float(SYSTEM_2CH.M)
    tol_band = 1e-6 * M
    sigmas = (3.0, 3.5)
    checked = n_true = n_false = mismatches = 0
    target = 1000
    while checked < target:
        n = complex(*rng.uniform(M, M * (SYSTEM_2CH.gamma - 1), 2))
        deltas = [s * complex(*rng.standard_normal(2)) for s in sigmas]
        ev = ErrorVector.from_sigmas(deltas, sigmas)
        mean = weighted_mean_error(ev)
        if abs(mean.real) >= M / 2 - tol_band or abs(mean.imag) >= M / 2 - tol_band:
            continue
        # exclude instances whose subset statistic sits on the +-M/2 edge
        near_edge = False
        for axis in (0, 1):
            vals = [d.real if axis == 0 else d.imag for d in deltas]
            stat = vals[0] - vals[1]
            if abs(abs(stat) - M / 2) <= tol_band:
                near_edge = True
        if near_edge:
            continue
        values = tuple(
            mod_c(n + d, m) for d, m in zip(deltas, SYSTEM_2CH.moduli)
        )
        est = estimate(NoisyRemainders(values, sigmas), SYSTEM_2CH)
        preserved = abs((est.n_hat - n) - mean) < 1e-9 * M
        holds = subset_condition(ev, M).condition_holds
        if preserved != holds:
            mismatches += 1
        n_true += holds
        n_false += not holds
        checked += 1
    ok = mismatches == 0 and n_true > 0 and n_false > 0
    check(
        5,
        "error preserved iff the subset condition holds (1000 instances, boundary band excluded)",
        ok,
        f"{n_true} hold / {n_false} fail / {mismatches} mismatches",
    )


def test_criterion_06_quarter_modulus_error_bound():
    rng = np.random.default_rng(606)
    M = float(SYSTEM_2CH.M)
    bound = M / 4
    sigmas = (1.0, 1.3)  # weights only; errors are drawn uniformly below
    violations = 0
    for _ in range(1000):
        n = complex(*rng.uniform(M, M * (SYSTEM_2CH.gamma - 1), 2))
        deltas = [
            complex(*rng.uniform(-(bound - 1e-6 * M), bound - 1e-6 * M, 2))
            for _ in range(2)
        ]
        values = tuple(mod_c(n + d, m) for d, m in zip(deltas, SYSTEM_2CH.moduli))
        est = estimate(NoisyRemainders(values, sigmas), SYSTEM_2CH)
        err = est.n_hat - n
        if abs(err.real) >= bound or abs(err.imag) >= bound:
            violations += 1
    check(
        6,
        "componentwise errors below M/4 keep the reconstruction error below M/4 (1000 instances)",
        violations == 0,
        f"{violations} violations",
    )


def test_criterion_07_rmse_matches_closed_form_at_high_snr():
    cfg = load_campaign(
        {
            "campaign": "rmse",
            "system": SYSTEM_8CH,
            "snr_db": [38.0],
            "trials": 10000,
            "seed": 7,
        }
    )
    (row,) = run_campaign(cfg).rows
    rmse, theory = row[2], row[3]
    rel = abs(rmse - theory) / theory
    check(
        7,
        "empirical RMSE within 5% of sqrt(2 sum w_i^2 sigma_i^2) at 38 dB, 10000 trials",
        rel <= 0.05,
        f"rmse={rmse:.4f} theory={theory:.4f} rel={rel:.3%}",
    )


def test_criterion_08_threshold_behavior_over_snr_grid():
    cfg = load_campaign(
        {
            "campaign": "rmse",
            "system": SYSTEM_8CH,
            "snr_db": [26, 28, 30, 32, 34, 36, 38, 40],
            "trials": 2000,
            "seed": 8,
        }
    )
    rows = run_campaign(cfg).rows
    ratio = {row[0]: row[2] / row[3] for row in rows}
    low_ok = all(ratio[s] > 2.0 for s in (26, 28))
    high_ok = all(ratio[s] <= 2.0 for s in (36, 38, 40))
    check(
        8,
        "RMSE exceeds 2x theory below 30 dB and stays within 2x at >= 36 dB",
        low_ok and high_ok,
        "ratios " + ", ".join(f"{s}dB:{ratio[s]:.2f}" for s in sorted(ratio)),
    )


def test_criterion_09_preserving_probability_consistency():
    cfg = load_campaign(
        {
            "campaign": "prob",
            "M": 10,
            "sigmas": [2.4, 2.5],
            "k_grid": [0.0, 0.2, 0.4, 0.6, 0.8, 1.0],
            "trials": 100000,
            "seed": 9,
        }
    )
    rows = run_campaign(cfg).rows
    agree = True
    for row in rows:
        pred, emp = row[4], row[5]
        se = math.sqrt(emp * (1 - emp) / 100000)
        agree = agree and abs(pred - emp) <= 3 * se
    emps = [row[5] for row in rows]
    monotone = all(a > b for a, b in zip(emps, emps[1:]))
    check(
        9,
        "axis-squared prediction within 3 binomial SE of the joint rate and monotone in k",
        agree and monotone,
        "p " + ", ".join(f"{p:.4f}" for p in emps),
    )


def test_criterion_10_concentration_bounds():
    at_6 = three_sigma_check(GaussianInt(6, 6), 1.0)
    at_20 = three_sigma_check(GaussianInt(20, 20), 1.0)
    ok = at_6 > 0.9946 and at_20 > 1 - 1e-6
    check(
        10,
        "square mass > 0.9946 at |M| = 6*sqrt(2)*sigma and > 1-1e-6 at 20*sqrt(2)*sigma",
        ok,
        f"{at_6:.6f}, {at_20:.9f}",
    )


def test_criterion_11_dynamic_ranges():
    complex7 = build_system(1, [GaussianInt(4, 5), GaussianInt(4, -5), GaussianInt(7)])
    complex9 = build_system(1, [GaussianInt(7, 4), GaussianInt(7, -4), GaussianInt(9)])
    real7 = build_system(1, [GaussianInt(5), GaussianInt(6), GaussianInt(7)])
    real9 = build_system(1, [GaussianInt(7), GaussianInt(8), GaussianInt(9)])
    got = (complex7.gamma, complex9.gamma, real7.gamma, real9.gamma)
    ok = got == (287, 585, 210, 504)
    check(11, "dynamic ranges 287/585 (complex banks) vs 210/504 (real banks)", ok, str(got))


def test_criterion_12_adc_suite():
    complex_bank = build_system(1, [GaussianInt(4, 5), GaussianInt(4, -5), GaussianInt(7)])
    real_bank = build_system(1, [GaussianInt(5), GaussianInt(6), GaussianInt(7)])
    random_sig = gen_signal("random", 16.0, seed=12)
    exact = run_recovery(random_sig, complex_bank, "mle_ccrt", u=0.0, seed=0, tau=0.25)
    noisy = run_recovery(random_sig, complex_bank, "mle_ccrt", u=1e-3, seed=1, tau=0.25)
    wide_sig = gen_signal("constant", 145.0, a=-0.9, b=0.98)
    mle = run_recovery(wide_sig, complex_bank, "mle_ccrt", u=1e-3, seed=2, tau=0.25)
    dual = run_recovery(wide_sig, real_bank, "dual_real", u=1e-3, seed=2, tau=0.25)
    ok = (
        exact.rrse < 1e-9  # noise-free recovery exact up to float rounding
        and noisy.rrse < 1e-2
        and mle.tfr == 0.0
        and dual.tfr > 0.0
    )
    check(
        12,
        "ADC: exact zero-noise recovery, small-noise RRSE < 1e-2, real-bank aliasing floor",
        ok,
        f"rrse0={exact.rrse:.2e} rrse={noisy.rrse:.2e} tfr_mle={mle.tfr} tfr_dual={dual.tfr}",
    )


def test_criterion_13_multiplication_budget():
    counts = [count_ops(L) for L in (2, 4, 8)]
    ok = all(c.real_mults <= 8 * c.L**2 for c in counts)
    check(
        13,
        "common-remainder search uses at most 8 L^2 real multiplications for L in {2,4,8}",
        ok,
        ", ".join(f"L={c.L}:{c.real_mults}/{c.bound}" for c in counts),
    )
