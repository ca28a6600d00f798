import math
import random
from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from coxlow.scalar import FieldSpec, get_field, make_field, sign_of, two_cos

mpmath.mp.dps = 40

FIELDS = [3, 4, 5, 7, 12, 15, 21, 20]


def theta_mp(N):
    return 2 * mpmath.cos(mpmath.pi / N)


def value_mp(a):
    t = theta_mp(a.field.N)
    return sum(mpmath.mpf(c) * t**i for i, c in enumerate(a.num)) / a.den


@pytest.mark.parametrize("N", FIELDS)
def test_minpoly_matches_sympy(N):
    x = sympy.Symbol("x")
    want = sympy.Poly(sympy.minimal_polynomial(2 * sympy.cos(sympy.pi / N), x), x)
    got = sympy.Poly(list(reversed(FieldSpec(N).minpoly)), x)
    assert got == want


@pytest.mark.parametrize("N", FIELDS)
def test_degree_is_half_totient(N):
    assert FieldSpec(N).degree == sympy.totient(2 * N) // 2


def test_make_field_examples():
    assert make_field({3, 2}).minpoly == (-1, 1)
    F = make_field({4})
    assert F.minpoly == (-2, 0, 1)
    assert abs(float(mpmath.mpf(2) * mpmath.cos(mpmath.pi / 4)) ** 2 - 2) < 1e-12
    assert make_field({5, 3}).N == 15 and make_field({5, 3}).degree == 4
    assert make_field({math.inf, 2}).N == 1


def test_theta_interval_encloses():
    for N in FIELDS[1:]:
        F = FieldSpec(N)
        lo, hi, p = F.theta_interval(128)
        t = theta_mp(N)
        assert mpmath.mpf(lo) / 2**p < t < mpmath.mpf(hi) / 2**p


def test_two_cos_small_cases():
    F = make_field({4})
    assert two_cos(F, 2) == 0
    assert two_cos(F, 3) == 1
    assert two_cos(F, 4) == F.theta()
    with pytest.raises(ValueError):
        two_cos(F, 5)


def chebyshev_value(F, j):
    """2cos(j*pi/N) by the recurrence p_{k+1} = theta*p_k - p_{k-1}."""
    t = F.theta()
    a, b = F(2), t
    for _ in range(j):
        a, b = b, t * b - a
    return a


@pytest.mark.parametrize("N", [4, 5, 12, 15, 21])
def test_two_cos_values_and_doubling(N):
    F = get_field(N)
    for m in [m for m in range(2, N + 1) if N % m == 0 or m in (2, 3)]:
        c = two_cos(F, m)
        assert abs(value_mp(c) - 2 * mpmath.cos(mpmath.pi / m)) < mpmath.mpf(10) ** -30
        if N % m == 0:
            # (2cos(pi/m))^2 = 2 + 2cos(2pi/m)
            assert c * c == F(2) + chebyshev_value(F, 2 * (N // m))


def test_sign_examples():
    F = make_field({4})
    t = F.theta()
    assert sign_of(F(0)) == 0
    assert sign_of(t - 1) == 1
    assert sign_of(1 - t) == -1


def scalars(N):
    F = get_field(N)
    coeff = st.fractions(min_value=-50, max_value=50, max_denominator=12)
    return st.lists(coeff, min_size=F.degree, max_size=F.degree).map(F.from_coeffs)


@settings(max_examples=60, deadline=None)
@given(scalars(15), scalars(15), scalars(15))
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    if not a.is_zero():
        assert a * a.inverse() == a.field(1)
        assert sign_of(a * a) == 1


def test_sign_agrees_with_40_digit_evaluation():
    rng = random.Random(1234)
    for N in (5, 7, 15, 21):
        F = FieldSpec(N)
        for _ in range(250):
            a = F.from_coeffs([Fraction(rng.randint(-30, 30), rng.randint(1, 5)) for _ in range(F.degree)])
            v = value_mp(a)
            want = 0 if a.is_zero() else (1 if v > 0 else -1)
            assert sign_of(a) == want


def test_sign_near_zero():
    # 2cos(pi/5) - golden ratio == 0 exactly; tiny perturbations keep exact signs
    F = FieldSpec(5)
    phi = two_cos(F, 5)
    assert (phi * phi - phi - 1).is_zero()
    eps = F(Fraction(1, 10**30))
    assert sign_of(phi - (phi - eps)) == 1
    assert sign_of((phi - eps) - phi) == -1


def test_to_str():
    F = FieldSpec(4)
    assert (F.theta() * 3 - Fraction(1, 2)).to_str() == "3*t - 1/2"
    assert F(0).to_str() == "0"
