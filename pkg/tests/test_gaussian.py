"""Gaussian-integer ring arithmetic, Euclidean division, and gcd/inverse."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ccrt.gaussian import (
    GaussianInt,
    NoInverseError,
    euclid_gcd,
    extended_gcd,
    floor_quotient,
    format_gaussian,
    is_coprime,
    mod_exact,
    mod_inverse,
    normalize_associate,
    parse_gaussian,
    rounded_quotient,
)

gints = st.builds(
    GaussianInt,
    st.integers(min_value=-10**6, max_value=10**6),
    st.integers(min_value=-10**6, max_value=10**6),
)
nonzero_gints = gints.filter(lambda z: not z.is_zero())


@given(gints, gints, gints)
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + GaussianInt(0, 0) == a
    assert a * GaussianInt(1, 0) == a
    assert a + (-a) == GaussianInt(0, 0)


@given(gints, nonzero_gints)
def test_rounded_division_small_remainder(a, m):
    q = rounded_quotient(a, m)
    r = a - q * m
    # Euclidean property: the rounded quotient leaves |r| <= |m|/sqrt(2) < |m|
    assert 2 * r.norm() <= m.norm()


@given(gints, nonzero_gints)
def test_floor_mod_in_fundamental_square(a, m):
    r = mod_exact(a, m)
    q = floor_quotient(a, m)
    assert q * m + r == a
    # r/m must have both components in [0, 1)
    num = r * m.conj()
    n = m.norm()
    assert 0 <= num.re < n and 0 <= num.im < n


@given(gints, gints)
def test_extended_gcd_identity(a, b):
    if a.is_zero() and b.is_zero():
        with pytest.raises(ValueError):
            extended_gcd(a, b)
        return
    g, u, v = extended_gcd(a, b)
    assert u * a + v * b == g
    if not g.is_zero():
        assert g.re > 0 and g.im >= 0  # first-quadrant associate


@given(gints, nonzero_gints)
def test_gcd_divides_both(a, m):
    g = euclid_gcd(a, m)
    assert mod_exact(a, g) == GaussianInt(0, 0)
    assert mod_exact(m, g) == GaussianInt(0, 0)


@given(nonzero_gints)
def test_normalize_associate_first_quadrant(z):
    w, u = normalize_associate(z)
    assert u.is_unit()
    assert w == u * z
    assert w.re > 0 and w.im >= 0


@settings(max_examples=200)
@given(gints, nonzero_gints)
def test_mod_inverse_round_trip(a, m):
    if m.is_unit():
        return
    try:
        inv = mod_inverse(a, m)
    except NoInverseError:
        assert not is_coprime(a, m)
        return
    assert mod_exact(a * inv, m) == mod_exact(GaussianInt(1, 0), m)


def test_bezout_fixture():
    n = GaussianInt(19, 8)
    m = GaussianInt(3, 4)
    g, u, v = extended_gcd(n, m)
    assert g == GaussianInt(1, 0)
    assert u * n + v * m == GaussianInt(1, 0)


def test_rounded_quotient_fixture():
    # (19+8i)/(3+4i) = 3.56-2.08i rounds to 4-2i
    assert rounded_quotient(GaussianInt(19, 8), GaussianInt(3, 4)) == GaussianInt(4, -2)


def test_gcd_fixture():
    g = euclid_gcd(GaussianInt(2, 0), GaussianInt(1, 1))
    assert g == GaussianInt(1, 1)


@pytest.mark.parametrize(
    "text,expected",
    [
        ("3+4i", GaussianInt(3, 4)),
        ("-3-4i", GaussianInt(-3, -4)),
        ("7", GaussianInt(7, 0)),
        ("-i", GaussianInt(0, -1)),
        ("4i", GaussianInt(0, 4)),
        ("1-4i", GaussianInt(1, -4)),
        ("−3−4i", GaussianInt(-3, -4)),  # unicode minus
    ],
)
def test_parse_gaussian(text, expected):
    assert parse_gaussian(text) == expected


@given(gints)
def test_format_parse_round_trip(z):
    assert parse_gaussian(format_gaussian(z)) == z


def test_parse_rejects_garbage():
    for bad in ("", "3+", "i4", "2.5+1i", "1+2j"):
        with pytest.raises(ValueError):
            parse_gaussian(bad)
