"""Wrapped complex Gaussian noise: sampling, truncated pdf, concentration
check, and the SNR <-> sigma conversions.

All interfaces parameterize noise by the per-axis standard deviation of
the real and imaginary parts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cmod import circ_dist, in_fundamental, mod_c
from .gaussian import GaussianInt


@dataclass(frozen=True)
class WrappedGaussianSpec:
    center: complex
    modulus: GaussianInt
    sigma: float
    truncation: int = 3  # lattice shells for pdf sums; sampling never truncates

    def __post_init__(self):
        if self.sigma <= 0:
            raise ValueError("sigma must be positive")
        if self.modulus.is_zero():
            raise ValueError("modulus must be nonzero")
        if self.truncation < 0:
            raise ValueError("truncation must be nonnegative")


def sample_wrapped(spec: WrappedGaussianSpec, rng: np.random.Generator) -> complex:
    """One draw of (center + complex Gaussian noise) mod modulus. Exact."""
    w = complex(*(spec.sigma * rng.standard_normal(2)))
    return mod_c(spec.center + w, spec.modulus)


def sample_wrapped_batch(spec: WrappedGaussianSpec, rng: np.random.Generator, n: int) -> np.ndarray:
    noise = spec.sigma * (rng.standard_normal(n) + 1j * rng.standard_normal(n))
    return np.array([mod_c(spec.center + v, spec.modulus) for v in noise])


def wrapped_pdf(r: complex, spec: WrappedGaussianSpec) -> float:
    """Truncated lattice-sum density at r, using the recentered form.

    The sum runs over wrap indices with components in [-K, K]; recentering
    on the circular distance keeps the dominant term at the origin.
    """
    if not in_fundamental(r, spec.modulus):
        raise ValueError(f"{r} outside the fundamental square of {spec.modulus}")
    d = circ_dist(r, spec.center, spec.modulus)
    m = complex(spec.modulus)
    k = spec.truncation
    two_var = 2.0 * spec.sigma * spec.sigma
    total = 0.0
    for k1 in range(-k, k + 1):
        for k2 in range(-k, k + 1):
            z = d + complex(k1, k2) * m
            total += math.exp(-(z.real * z.real + z.imag * z.imag) / two_var)
    return total / (math.pi * two_var)


def three_sigma_check(modulus: GaussianInt, sigma: float, grid: int = 400) -> float:
    """Gaussian mass of the centered square of the modulus, by midpoint
    quadrature in the square's own coordinates.

    The integrand is radial, so the rotated square contributes exactly the
    mass of an axis-aligned square of side |modulus|.
    """
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    if grid < 400:
        grid = 400
    rho2 = float(modulus.norm())
    # midpoints of [-1/2, 1/2) in each square coordinate
    t = (np.arange(grid) + 0.5) / grid - 0.5
    c, d = np.meshgrid(t, t, sparse=True)
    r2 = rho2 * (c * c + d * d)
    two_var = 2.0 * sigma * sigma
    cell = rho2 / (grid * grid)
    return float(np.exp(-r2 / two_var).sum() * cell / (math.pi * two_var))


def snr_from_sigma(modulus_magnitude: float, sigma: float) -> float:
    """Remainder SNR in dB: 10 log10(|M|^2 / (3 sigma^2))."""
    if modulus_magnitude <= 0 or sigma <= 0:
        raise ValueError("inputs must be positive")
    return 10.0 * math.log10(modulus_magnitude**2 / (3.0 * sigma * sigma))


def sigma_from_snr(modulus_magnitude: float, snr_db: float) -> float:
    """Inverse of snr_from_sigma."""
    if modulus_magnitude <= 0:
        raise ValueError("modulus magnitude must be positive")
    return modulus_magnitude / math.sqrt(3.0 * 10.0 ** (snr_db / 10.0))


def snr_from_u(u: float) -> float:
    """SNR convention for sigma = u*|M|: -20 log10(sqrt(3) u)."""
    if u <= 0:
        raise ValueError("u must be positive")
    return -20.0 * math.log10(math.sqrt(3.0) * u)


def u_from_snr(snr_db: float) -> float:
    return 10.0 ** (-snr_db / 20.0) / math.sqrt(3.0)
