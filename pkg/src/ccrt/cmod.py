"""Floating-point complex modulo arithmetic.

Reduction into the fundamental square of a Gaussian-integer modulus,
circular (wrapped) distance into the centered square, and membership
tests for both regions.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

from .gaussian import GaussianInt


def _require_finite(z: complex) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"non-finite complex value {z}")
    return z


def floor_c(z: complex) -> GaussianInt:
    """Componentwise floor of a complex value."""
    z = _require_finite(z)
    return GaussianInt(int(math.floor(z.real)), int(math.floor(z.imag)))


def round_c(z: complex) -> GaussianInt:
    """Componentwise rounding [x] = floor(x + 1/2)."""
    z = _require_finite(z)
    return GaussianInt(int(math.floor(z.real + 0.5)), int(math.floor(z.imag + 0.5)))


def mod_c(n: complex, m: GaussianInt | complex) -> complex:
    """Remainder n - m*floor(n/m), in the fundamental square of m.

    n - mod_c(n, m) is m times a Gaussian integer by construction.
    """
    n = _require_finite(n)
    mc = complex(m)
    if mc == 0:
        raise ZeroDivisionError("zero modulus")
    q = floor_c(n / mc)
    return n - mc * complex(q)


def circ_dist(x: complex, y: complex, m: GaussianInt | complex) -> complex:
    """Circular distance x - y - [(x-y)/m]*m, in the centered square of m."""
    x = _require_finite(x)
    y = _require_finite(y)
    mc = complex(m)
    if mc == 0:
        raise ZeroDivisionError("zero modulus")
    diff = x - y
    q = round_c(diff / mc)
    return diff - mc * complex(q)


def mod_real(x: float, m: float) -> float:
    """Floor-modulo of a real value into [0, m)."""
    return x - m * math.floor(x / m)


def circ_dist_real(x: float, y: float, m: float) -> float:
    """Real-axis circular distance into [-m/2, m/2)."""
    diff = x - y
    return diff - m * math.floor(diff / m + 0.5)


class RegionKind(Enum):
    FUNDAMENTAL = "fundamental"  # coordinates in [0, 1)^2
    CENTERED = "centered"  # coordinates in [-1/2, 1/2)^2


@dataclass(frozen=True)
class Region:
    modulus: GaussianInt
    kind: RegionKind

    def __post_init__(self):
        if self.modulus.is_zero():
            raise ValueError("region modulus must be nonzero")


def in_region(z: complex, region: Region) -> bool:
    """Half-open membership test via the coordinates of z over the modulus."""
    z = _require_finite(z)
    w = z / complex(region.modulus)
    if region.kind is RegionKind.FUNDAMENTAL:
        return 0.0 <= w.real < 1.0 and 0.0 <= w.imag < 1.0
    return -0.5 <= w.real < 0.5 and -0.5 <= w.imag < 0.5


def in_fundamental(z: complex, m: GaussianInt) -> bool:
    return in_region(z, Region(m, RegionKind.FUNDAMENTAL))


def in_centered(z: complex, m: GaussianInt) -> bool:
    return in_region(z, Region(m, RegionKind.CENTERED))


def rotate_to_axes(z: complex, m: GaussianInt | complex) -> complex:
    """Multiply by e^{-i*angle(m)}: maps the fundamental square of m onto
    the axis-aligned square of side |m|."""
    return z * cmath.exp(-1j * cmath.phase(complex(m)))
