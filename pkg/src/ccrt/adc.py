"""Multi-channel self-reset ADC simulation.

Bandlimited complex test signals sampled on the Nyquist grid, per-channel
rotated folding, recovery through the fast MLE reconstruction or the
dual real-axis baseline, and the RRSE/TFR metrics.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .cmod import mod_c, mod_real
from .crt import ModulusSystem
from .gaussian import GaussianInt
from .mle import Estimate, NoisyRemainders, estimate, estimate_dual_real

COEFF_COUNT = 61  # index range -30..30


@dataclass(frozen=True)
class BandlimitedSignal:
    """Sinc-interpolated signal; at integer sample times the value is
    amplitude * (a_k + i b_k)."""

    amplitude: float
    coefficients: tuple[complex, ...]

    def __post_init__(self):
        if len(self.coefficients) != COEFF_COUNT:
            raise ValueError(f"expected {COEFF_COUNT} coefficient pairs")

    def samples(self) -> np.ndarray:
        return self.amplitude * np.asarray(self.coefficients, dtype=complex)

    def value(self, t: float) -> complex:
        ks = np.arange(COEFF_COUNT) - 30
        return complex(np.sum(self.samples() * np.sinc(t - ks)))


def gen_signal(
    mode: str,
    amplitude: float,
    a: float | None = None,
    b: float | None = None,
    seed: int | None = None,
) -> BandlimitedSignal:
    """Coefficient table for a test signal.

    mode "random" draws a_k, b_k uniform in [-1, 1] from the seed; mode
    "constant" repeats the given (a, b) pair.
    """
    if mode == "constant":
        if a is None or b is None:
            raise ValueError("constant mode requires a and b")
        coeffs = (complex(a, b),) * COEFF_COUNT
    elif mode == "random":
        rng = np.random.default_rng([0 if seed is None else int(seed), 0xADC])
        ab = rng.uniform(-1.0, 1.0, size=(COEFF_COUNT, 2))
        coeffs = tuple(complex(x, y) for x, y in ab)
    else:
        raise ValueError(f"unknown signal mode {mode!r}")
    return BandlimitedSignal(amplitude=float(amplitude), coefficients=coeffs)


@dataclass(frozen=True)
class Channel:
    modulus: GaussianInt

    @property
    def rho(self) -> float:
        return abs(self.modulus)

    @property
    def theta(self) -> float:
        return cmath.phase(complex(self.modulus))


def channel_fold(sample: complex, channel: Channel) -> tuple[complex, complex]:
    """(folded output y, remainder r) of one modulo sampler.

    y folds the rotated sample componentwise at the dynamic range rho; the
    remainder r = y * e^{i theta} equals the sample modulo the channel
    modulus.
    """
    rot = complex(sample) * cmath.exp(-1j * channel.theta)
    y = complex(mod_real(rot.real, channel.rho), mod_real(rot.imag, channel.rho))
    r = y * cmath.exp(1j * channel.theta)
    return y, r


@dataclass(frozen=True)
class TrialReport:
    rrse: float
    tfr: float
    tau: float
    successes: tuple[bool, ...]
    n_samples: int


def tfr_metric(errors, tau: float) -> float:
    """Fraction of errors violating the componentwise |.| < tau bound."""
    if tau <= 0:
        raise ValueError("tau must be positive")
    errors = [complex(e) for e in errors]
    if not errors:
        return 0.0
    fails = sum(1 for e in errors if not (abs(e.real) < tau and abs(e.imag) < tau))
    return fails / len(errors)


def center_signed(z: complex, side: float) -> complex:
    """Map a fundamental-square representative into [-side/2, side/2)^2."""
    re, im = z.real, z.imag
    if re >= side / 2:
        re -= side
    if im >= side / 2:
        im -= side
    return complex(re, im)


def run_recovery(
    signal: BandlimitedSignal,
    sys: ModulusSystem,
    method: str,
    u: float,
    seed: int,
    tau: float,
    centering: str = "signed",
) -> TrialReport:
    """Fold every sample through all channels with per-channel noise of
    std u*|modulus|, recover, and score RRSE/TFR.

    method "mle_ccrt" uses the fast complex reconstruction; "dual_real"
    requires real moduli and solves the two axes independently.
    """
    if method not in ("mle_ccrt", "dual_real"):
        raise ValueError(f"unknown method {method!r}")
    if centering not in ("none", "signed"):
        raise ValueError(f"unknown centering {centering!r}")
    if method == "dual_real" and any(g.im != 0 for g in sys.cofactors):
        raise ValueError("dual_real method requires a real-moduli system")
    if u < 0:
        raise ValueError("u must be nonnegative")
    moduli = sys.moduli
    noise_sigmas = tuple(u * abs(m) for m in moduli)
    # u = 0 means a noise-free run; weights fall back to the same shape
    weight_sigmas = noise_sigmas if u > 0 else tuple(abs(m) for m in moduli)
    side = float(sys.range)
    rng = np.random.default_rng([int(seed), 0xF01D])
    samples = signal.samples()
    errors = []
    num = 0.0
    den = 0.0
    for sample in samples:
        sample = complex(sample)
        noisy = [
            mod_c(sample + sigma * complex(*rng.standard_normal(2)), m)
            for sigma, m in zip(noise_sigmas, moduli)
        ]
        obs = NoisyRemainders(tuple(noisy), weight_sigmas)
        est: Estimate
        if method == "mle_ccrt":
            est = estimate(obs, sys)
        else:
            est = estimate_dual_real(obs, sys)
        recovered = est.n_hat
        if centering == "signed":
            recovered = center_signed(recovered, side)
        err = recovered - sample
        errors.append(err)
        num += err.real * err.real + err.imag * err.imag
        den += sample.real * sample.real + sample.imag * sample.imag
    rrse = math.sqrt(num / den) if den > 0 else math.sqrt(num)
    tfr = tfr_metric(errors, tau)
    successes = tuple(abs(e.real) < tau and abs(e.imag) < tau for e in errors)
    return TrialReport(rrse=rrse, tfr=tfr, tau=tau, successes=successes, n_samples=len(samples))
