"""Exact cyclotomic backend: field axioms, sqrt(r) bookkeeping, embedding."""

import random
from fractions import Fraction

import mpmath
import pytest

from qinv.scalars import (
    Cyc,
    CycRing,
    Cx,
    DivisionByZero,
    MixedHalfPowerAddition,
    cyc_arith,
    cyclotomic_polynomial,
    embed_complex,
    q_power,
)


def _poly_mod_oracle(coeffs, r):
    """Independent reduction oracle: long division by the r-th cyclotomic
    polynomial done directly on Fraction lists."""
    phi = [Fraction(c) for c in cyclotomic_polynomial(r)]
    a = [Fraction(c) for c in coeffs]
    deg_phi = len(phi) - 1
    while len(a) > deg_phi:
        c = a[-1]
        if c:
            for j in range(deg_phi + 1):
                a[len(a) - 1 - deg_phi + j] -= c * phi[j]
        a.pop()
    a += [Fraction(0)] * (deg_phi - len(a))
    return tuple(a)


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(3) == [1, 1, 1]
    assert cyclotomic_polynomial(5) == [1, 1, 1, 1, 1]
    assert cyclotomic_polynomial(9) == [1, 0, 0, 1, 0, 0, 1]
    assert cyclotomic_polynomial(15) == [1, -1, 0, 1, -1, 1, 0, -1, 1]


@pytest.mark.parametrize("r", [3, 5, 7, 9])
def test_root_of_unity(r):
    ring = CycRing(r)
    z = ring.zeta(1)
    assert z ** r == ring.one
    assert z ** (r - 1) == z.inverse()


def test_sqrt_r_squares():
    ring = CycRing(5)
    s = ring.sqrt_r
    assert (s * s) == ring.from_int(5)
    assert s.rhalf == 1
    assert (s * s).rhalf == 0
    assert ring.rhalf_power(3) == ring.from_int(5) * s


def test_power_basis_reduction_against_oracle():
    # q + q^(r-1) reduced in the power basis equals the oracle reduction
    for r in (3, 5, 7, 9):
        ring = CycRing(r)
        val = ring.zeta(1) + ring.zeta(r - 1)
        raw = [Fraction(0)] * r
        raw[1] = Fraction(1)
        raw[r - 1] = Fraction(1)
        assert val.ev == _poly_mod_oracle(raw, r)
        # and numerically it is 2*cos(2*pi/r)
        emb = val.embed(128)
        with mpmath.mp.workprec(160):
            ref = 2 * mpmath.cos(2 * mpmath.pi / r)
            assert abs(emb.v - ref) < mpmath.mpf(2) ** -120


def _random_cyc(ring, rng, pure=None):
    def vec():
        return tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 5))
                     for _ in range(ring.phi))

    if pure == 0:
        return Cyc(ring, vec(), None)
    if pure == 1:
        return Cyc(ring, None, vec())
    return Cyc(ring, vec(), vec())


@pytest.mark.parametrize("r", [3, 5])
def test_field_axioms_random(r):
    ring = CycRing(r)
    rng = random.Random(7 * r)
    n = 10_000 if r == 3 else 2_000
    for _ in range(n):
        a = _random_cyc(ring, rng)
        b = _random_cyc(ring, rng)
        c = _random_cyc(ring, rng)
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a


@pytest.mark.parametrize("r", [3, 5, 7])
def test_inverse_random(r):
    ring = CycRing(r)
    rng = random.Random(r)
    for _ in range(60):
        a = _random_cyc(ring, rng, pure=rng.choice([0, 1]))
        if a.is_zero:
            continue
        assert a * a.inverse() == ring.one


def test_embed_is_ring_homomorphism():
    ring = CycRing(7)
    rng = random.Random(1)
    tol = mpmath.mpf(2) ** -64
    for _ in range(40):
        a = _random_cyc(ring, rng)
        b = _random_cyc(ring, rng)
        lhs = (a * b).embed(128)
        rhs = a.embed(128) * b.embed(128)
        assert abs(lhs.v - rhs.v) < tol
        lhs = (a + b).embed(128)
        rhs = a.embed(128) + b.embed(128)
        assert abs(lhs.v - rhs.v) < tol


def test_embed_reference_values():
    ring = CycRing(3)
    one = ring.one.embed(128)
    assert one.v == 1
    z = ring.zeta(1).embed(192)
    with mpmath.mp.workprec(224):
        ref = mpmath.mpc(mpmath.mpf(-1) / 2, mpmath.sqrt(3) / 2)
        assert abs(z.v - ref) < mpmath.mpf(2) ** -180
        s = ring.sqrt_r.embed(128)
        assert abs(s.v - mpmath.sqrt(3)) < mpmath.mpf(2) ** -120
    assert abs(float(s.v.real) - 1.7320508) < 1e-6


def test_mixed_parity_rules():
    ring = CycRing(5)
    a = ring.one
    b = ring.sqrt_r
    with pytest.raises(MixedHalfPowerAddition):
        cyc_arith(a, b, "add")
    with pytest.raises(MixedHalfPowerAddition):
        cyc_arith(a, b, "sub")
    # the class-level sum is the formal pair
    pair = a + b
    assert pair.rhalf is None
    assert pair - b == a
    with pytest.raises(DivisionByZero):
        cyc_arith(a, pair, "div")
    assert cyc_arith(a, b, "mul") == b
    assert cyc_arith(b, b, "div") == ring.one
    with pytest.raises(DivisionByZero):
        cyc_arith(a, ring.zero, "div")


def test_q_power():
    ring = CycRing(5)
    assert q_power(5, 0) == ring.one
    assert q_power(5, 5) == ring.one
    assert q_power(5, Fraction(1, 2)) ** 2 == ring.zeta(1)
    # principal half power: e^(i*pi/5)
    half = q_power(5, Fraction(1, 2)).embed(128)
    with mpmath.mp.workprec(160):
        ref = mpmath.e ** (1j * mpmath.pi / 5)
        assert abs(half.v - ref) < mpmath.mpf(2) ** -100
    # numeric exponents: {z} antisymmetry q^z - q^-z = -(q^-z - q^z)
    g = Cx(mpmath.mpc(0.37, 0.21), 128)
    plus = q_power(5, g)
    minus = q_power(5, -g)
    brace = plus - minus
    brace_neg = minus - plus
    assert abs((brace + brace_neg).v) < brace.tolerance()


def test_normalization_idempotent_and_json():
    ring = CycRing(5)
    rng = random.Random(3)
    for _ in range(30):
        a = _random_cyc(ring, rng, pure=rng.choice([0, 1, None]))
        data = a.to_json()
        b = Cyc.from_json(ring, data)
        assert a == b
        assert b.to_json() == data  # normalizing twice equals normalizing once
    x = Cx(mpmath.mpc(1.25, -0.5), 128)
    assert Cx.from_json(x.to_json()).close_to(x)


def test_cx_precision_floor():
    with pytest.raises(ValueError):
        Cx(1.0, 32)
