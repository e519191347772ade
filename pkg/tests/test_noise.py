"""Wrapped complex Gaussian sampling, density, concentration, and SNR."""

import math

import numpy as np
import pytest

from ccrt.cmod import in_fundamental
from ccrt.gaussian import GaussianInt
from ccrt.noise import (
    WrappedGaussianSpec,
    sample_wrapped,
    sample_wrapped_batch,
    sigma_from_snr,
    snr_from_sigma,
    snr_from_u,
    three_sigma_check,
    u_from_snr,
    wrapped_pdf,
)


def test_samples_live_in_fundamental_square():
    spec = WrappedGaussianSpec(center=1 + 2j, modulus=GaussianInt(3, 4), sigma=1.5)
    rng = np.random.default_rng(0)
    for _ in range(200):
        assert in_fundamental(sample_wrapped(spec, rng), spec.modulus)


def test_pdf_integrates_to_one():
    m = GaussianInt(4, 3)
    spec = WrappedGaussianSpec(center=1 + 1j, modulus=m, sigma=1.2)
    grid = 80
    mc = complex(m)
    total = 0.0
    for a in (np.arange(grid) + 0.5) / grid:
        for b in (np.arange(grid) + 0.5) / grid:
            z = mc * complex(a, b)
            total += wrapped_pdf(z, spec)
    cell = abs(mc) ** 2 / grid**2  # area of one grid cell of the square
    assert total * cell == pytest.approx(1.0, abs=1e-6)


def test_pdf_truncation_stable():
    m = GaussianInt(5, 0)
    r = 2.0 + 3.0j
    p3 = wrapped_pdf(r, WrappedGaussianSpec(center=1 + 1j, modulus=m, sigma=0.8, truncation=3))
    p5 = wrapped_pdf(r, WrappedGaussianSpec(center=1 + 1j, modulus=m, sigma=0.8, truncation=5))
    assert abs(p3 - p5) < 1e-12


def test_pdf_rejects_outside_square():
    spec = WrappedGaussianSpec(center=0j, modulus=GaussianInt(4, 0), sigma=1.0)
    with pytest.raises(ValueError):
        wrapped_pdf(5 + 0j, spec)


def test_sampling_matches_pdf_chi_square():
    """Goodness of fit of the exact sampler against the lattice-sum density
    on a 4x4 histogram of the square."""
    m = GaussianInt(4, 0)
    spec = WrappedGaussianSpec(center=1.0 + 2.5j, modulus=m, sigma=1.1)
    rng = np.random.default_rng(123)
    n = 40000
    draws = sample_wrapped_batch(spec, rng, n)
    bins = 4
    counts = np.zeros((bins, bins))
    for z in draws:
        counts[min(int(z.real), bins - 1), min(int(z.imag), bins - 1)] += 1
    # expected mass per cell by midpoint quadrature of the pdf
    sub = 8
    chi2 = 0.0
    for i in range(bins):
        for j in range(bins):
            mass = 0.0
            for a in (np.arange(sub) + 0.5) / sub:
                for b in (np.arange(sub) + 0.5) / sub:
                    z = complex(i + a, j + b)
                    mass += wrapped_pdf(z, spec) / (sub * sub)
            expected = n * mass
            chi2 += (counts[i, j] - expected) ** 2 / expected
    # 15 degrees of freedom; 99.9th percentile is about 37.7
    assert chi2 < 37.7


def test_three_sigma_concentration_bounds():
    # |M| = 6 sqrt(2) sigma
    assert three_sigma_check(GaussianInt(6, 6), 1.0) > 0.9946
    # |M| = 20 sqrt(2) sigma
    assert three_sigma_check(GaussianInt(20, 20), 1.0) > 1 - 1e-6


def test_snr_round_trips():
    assert sigma_from_snr(50.0, snr_from_sigma(50.0, 1.7)) == pytest.approx(1.7)
    assert u_from_snr(snr_from_u(0.004)) == pytest.approx(0.004)


def test_snr_fixture_u():
    # u = 1e-2 corresponds to about 35.23 dB
    assert snr_from_u(1e-2) == pytest.approx(40 - 10 * math.log10(3), abs=1e-6)
    assert snr_from_u(1e-2) == pytest.approx(35.2288, abs=1e-3)


def test_invalid_parameters_rejected():
    with pytest.raises(ValueError):
        WrappedGaussianSpec(center=0j, modulus=GaussianInt(3, 0), sigma=0.0)
    with pytest.raises(ValueError):
        snr_from_sigma(0.0, 1.0)
    with pytest.raises(ValueError):
        snr_from_u(-1.0)
