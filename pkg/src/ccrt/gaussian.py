"""Exact arithmetic in the ring of Gaussian integers.

Moduli, folding integers, and CRT cofactors are all Gaussian integers.
Everything here is integer-exact; floating complex values live in
:mod:`ccrt.cmod`.
"""

from __future__ import annotations

import math
import re as _re
from dataclasses import dataclass

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1


class ArithmeticOverflowError(ArithmeticError):
    """A ring operation left the declared 64-bit component range."""


class NoInverseError(ArithmeticError):
    """Modular inverse requested for non-coprime operands."""


def _check(v: int, what: str = "component") -> int:
    if not (INT64_MIN <= v <= INT64_MAX):
        raise ArithmeticOverflowError(f"{what} {v} outside 64-bit signed range")
    return v


@dataclass(frozen=True, slots=True)
class GaussianInt:
    """A Gaussian integer re + im*i with checked 64-bit components."""

    re: int
    im: int = 0

    def __post_init__(self):
        if not isinstance(self.re, int) or not isinstance(self.im, int):
            raise TypeError("GaussianInt components must be exact integers")
        _check(self.re)
        _check(self.im)

    def __add__(self, other: GaussianInt) -> GaussianInt:
        return GaussianInt(_check(self.re + other.re), _check(self.im + other.im))

    def __sub__(self, other: GaussianInt) -> GaussianInt:
        return GaussianInt(_check(self.re - other.re), _check(self.im - other.im))

    def __mul__(self, other: GaussianInt) -> GaussianInt:
        re = self.re * other.re - self.im * other.im
        im = self.re * other.im + self.im * other.re
        return GaussianInt(_check(re), _check(im))

    def __neg__(self) -> GaussianInt:
        return GaussianInt(_check(-self.re), _check(-self.im))

    def conj(self) -> GaussianInt:
        return GaussianInt(self.re, _check(-self.im))

    def norm(self) -> int:
        """re**2 + im**2, as an unbounded Python int."""
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_unit(self) -> bool:
        return self.norm() == 1

    def __complex__(self) -> complex:
        return complex(self.re, self.im)

    def __abs__(self) -> float:
        return math.sqrt(self.norm())

    def __str__(self) -> str:
        return format_gaussian(self)


ZERO = GaussianInt(0, 0)
ONE = GaussianInt(1, 0)
UNITS = (GaussianInt(1, 0), GaussianInt(0, 1), GaussianInt(-1, 0), GaussianInt(0, -1))


def _round_ratio(p: int, q: int) -> int:
    """[p/q] under the convention [x] = floor(x + 1/2), exactly. q > 0."""
    return (2 * p + q) // (2 * q)


def rounded_quotient(n, m: GaussianInt) -> GaussianInt:
    """Componentwise nearest Gaussian integer to n/m, halves rounding up.

    Exact integer arithmetic when ``n`` is a GaussianInt, so half-integer
    boundaries are deterministic; accepts a complex float otherwise.
    """
    if m.is_zero():
        raise ZeroDivisionError("rounded_quotient by zero modulus")
    if isinstance(n, GaussianInt):
        p = n * m.conj()
        q = m.norm()
        return GaussianInt(_round_ratio(p.re, q), _round_ratio(p.im, q))
    z = complex(n) / complex(m)
    return GaussianInt(int(math.floor(z.real + 0.5)), int(math.floor(z.imag + 0.5)))


def floor_quotient(n: GaussianInt, m: GaussianInt) -> GaussianInt:
    """Componentwise floor of n/m, exactly."""
    if m.is_zero():
        raise ZeroDivisionError("floor_quotient by zero modulus")
    p = n * m.conj()
    q = m.norm()
    return GaussianInt(p.re // q, p.im // q)


def mod_exact(a: GaussianInt, m: GaussianInt) -> GaussianInt:
    """Exact remainder of a modulo m in the fundamental square of m."""
    return a - m * floor_quotient(a, m)


def normalize_associate(z: GaussianInt) -> tuple[GaussianInt, GaussianInt]:
    """Return (u*z, u) for the unit u putting z in the first quadrant.

    The canonical associate has re > 0 and im >= 0; it is unique for
    nonzero z.  Used to make gcd a deterministic function.
    """
    if z.is_zero():
        return z, ONE
    for u in UNITS:
        w = u * z
        if w.re > 0 and w.im >= 0:
            return w, u
    raise AssertionError("unreachable: some associate lies in the first quadrant")


def euclid_gcd(a: GaussianInt, b: GaussianInt) -> GaussianInt:
    """Greatest common divisor, normalized to the first-quadrant associate."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    while not b.is_zero():
        a, b = b, a - b * rounded_quotient(a, b)
    return normalize_associate(a)[0]


def extended_gcd(a: GaussianInt, b: GaussianInt) -> tuple[GaussianInt, GaussianInt, GaussianInt]:
    """(g, u, v) with u*a + v*b = g = euclid_gcd(a, b), verified exactly."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    r0, r1 = a, b
    s0, s1 = ONE, ZERO
    t0, t1 = ZERO, ONE
    while not r1.is_zero():
        q = rounded_quotient(r0, r1)
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    g, unit = normalize_associate(r0)
    u, v = unit * s0, unit * t0
    assert u * a + v * b == g
    return g, u, v


def is_coprime(a: GaussianInt, b: GaussianInt) -> bool:
    """True iff the only common divisors of a and b are units."""
    return euclid_gcd(a, b).is_unit()


def mod_inverse(a: GaussianInt, m: GaussianInt) -> GaussianInt:
    """x with a*x == 1 (mod m), reduced into the fundamental square of m."""
    g, u, _ = extended_gcd(a, m)
    if not g.is_unit():
        raise NoInverseError(f"{a} has no inverse modulo {m} (gcd {g})")
    # u*a == g; divide by the unit g to land on 1.
    ginv = next(w for w in UNITS if w * g == ONE)
    return mod_exact(ginv * u, m)


_GAUSS_RE = _re.compile(
    r"""^\s*
    (?:(?P<re>[+\-]?\d+)(?!\s*i))?          # pure-real part
    \s*
    (?:(?P<im>[+\-]?\s*\d*)\s*i)?           # imaginary part ending in i
    \s*$""",
    _re.VERBOSE,
)


def parse_gaussian(text: str) -> GaussianInt:
    """Parse the text form "a+bi" (also "a", "bi", "-i"; unicode minus ok)."""
    s = text.replace("−", "-").replace(" ", " ")
    m = _GAUSS_RE.match(s)
    if not m or (m.group("re") is None and m.group("im") is None):
        raise ValueError(f"cannot parse Gaussian integer from {text!r}")
    re_part = int(m.group("re")) if m.group("re") is not None else 0
    im_txt = m.group("im")
    if im_txt is None:
        im_part = 0
    else:
        im_txt = im_txt.replace(" ", "")
        if im_txt in ("", "+"):
            im_part = 1
        elif im_txt == "-":
            im_part = -1
        else:
            im_part = int(im_txt)
    return GaussianInt(re_part, im_part)


def format_gaussian(z: GaussianInt) -> str:
    if z.im == 0:
        return str(z.re)
    if z.re == 0:
        return f"{z.im}i"
    sign = "+" if z.im >= 0 else "-"
    return f"{z.re}{sign}{abs(z.im)}i"
