"""Exact coefficient arithmetic: Q(w) with w^2 = -7, and its prime reductions."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fppcert.field import (
    DenominatorNotInvertible,
    MixedScalar,
    PrimeField,
    QuadExt,
    find_sqrt_minus7,
    reduce_to_prime_field,
)


def _random_quadext(rng: random.Random) -> QuadExt:
    def frac():
        return Fraction(rng.randint(-50, 50), rng.randint(1, 12))

    return QuadExt(frac(), frac())


def test_field_axioms_random_triples():
    """Associativity, commutativity, distributivity on 10^4 random triples."""
    rng = random.Random(20260825)
    zero = QuadExt(0)
    one = QuadExt(1)
    for _ in range(10_000):
        a, b, c = (_random_quadext(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a + b == b + a
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert a + zero == a
        assert a * one == a
        assert a - a == zero
        if a != zero:
            assert a * a.inverse() == one


_fraction_strategy = st.fractions(
    min_value=-(10**6), max_value=10**6, max_denominator=10**4
)
quadext_strategy = st.builds(QuadExt, _fraction_strategy, _fraction_strategy)


@settings(max_examples=200)
@given(quadext_strategy, quadext_strategy)
def test_division_inverts_multiplication(a: QuadExt, b: QuadExt):
    if b == QuadExt(0):
        with pytest.raises(ZeroDivisionError):
            a / b
    else:
        assert (a / b) * b == a


@settings(max_examples=200)
@given(quadext_strategy)
def test_conjugation_is_ring_involution(a: QuadExt):
    b = _random_quadext(random.Random(hash((a.re, a.im)) & 0xFFFF))
    assert a.conjugate().conjugate() == a
    assert (a + b).conjugate() == a.conjugate() + b.conjugate()
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    norm = a * a.conjugate()
    assert norm.im == 0
    assert norm.re == a.re * a.re + 7 * a.im * a.im


def test_norm_positive_definite():
    rng = random.Random(7)
    for _ in range(200):
        a = _random_quadext(rng)
        norm = (a * a.conjugate()).re
        assert norm >= 0
        assert (norm == 0) == (a == QuadExt(0))


def test_sqrt_minus7_residues():
    assert find_sqrt_minus7(263) == 16
    assert find_sqrt_minus7(337) == 88
    assert find_sqrt_minus7(277) == 47
    assert find_sqrt_minus7(317) == 150
    for p, r in [(263, 16), (337, 88), (277, 47), (317, 150)]:
        assert r * r % p == (p - 7) % p


def test_sqrt_minus7_rejects_bad_primes():
    with pytest.raises(ValueError):
        find_sqrt_minus7(5)
    with pytest.raises(ValueError):
        find_sqrt_minus7(263 * 3)


def test_prime_field_validates_residue():
    field = PrimeField(263, 16)
    assert field.p == 263 and field.r == 16
    assert PrimeField(263).r == 16  # auto-search picks the smallest root
    with pytest.raises(ValueError):
        PrimeField(263, 17)


def test_reduce_to_prime_field():
    field = PrimeField(263, 16)
    w = QuadExt(0, 1)
    assert reduce_to_prime_field(w, field) == 16
    assert reduce_to_prime_field(QuadExt(Fraction(1, 2)), field) == pow(2, 261, 263)
    assert reduce_to_prime_field(Fraction(3, 4), field) == 3 * pow(4, 261, 263) % 263
    # denominators divisible by p have no image
    with pytest.raises(DenominatorNotInvertible):
        reduce_to_prime_field(QuadExt(Fraction(1, 263)), field)


def test_reduction_is_ring_homomorphism():
    field = PrimeField(263, 16)
    rng = random.Random(11)
    for _ in range(300):
        a, b = _random_quadext(rng), _random_quadext(rng)
        ra, rb = reduce_to_prime_field(a, field), reduce_to_prime_field(b, field)
        assert reduce_to_prime_field(a + b, field) == (ra + rb) % 263
        assert reduce_to_prime_field(a * b, field) == ra * rb % 263


def test_mixed_scalar_collapses_to_omega_form():
    # i * s7 = w, i^2 = -1, s7^2 = 7, so a + b i + c s7 + d i s7 splits into
    # (a + d w) plus the residual (b i + c s7) which must vanish to convert.
    m = MixedScalar(3, 0, 0, Fraction(1, 2))
    k, q = m.as_omega()
    assert k == 0 and q == QuadExt(3, Fraction(1, 2))
    # a pure i-multiple converts with the twist flag set
    k, q = MixedScalar(0, 5, 0, 0).as_omega()
    assert k == 1 and q == QuadExt(5)
    # i * (i s7) = -s7: mixed residuals refuse to convert
    with pytest.raises(ValueError):
        MixedScalar(1, 1, 0, 0).as_omega()


def test_mixed_scalar_multiplication_table():
    i = MixedScalar(0, 1, 0, 0)
    s7 = MixedScalar(0, 0, 1, 0)
    w = MixedScalar(0, 0, 0, 1)
    minus_one = MixedScalar(-1, 0, 0, 0)
    assert i * i == minus_one
    assert s7 * s7 == MixedScalar(7, 0, 0, 0)
    assert i * s7 == w
    assert w * w == MixedScalar(-7, 0, 0, 0)
