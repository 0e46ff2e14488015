"""Hilbert series of monomial quotients: pivot recursion vs brute force."""

from __future__ import annotations

import random

import pytest

from fppcert.hilbert import (
    EnumerationTooLarge,
    hilbert_function_from_numerator,
    hilbert_function_oracle,
    hilbert_numerator,
    hilbert_polynomial,
    minimalize,
)


def _random_monomial_ideal(rng: random.Random, nvars: int, count: int):
    gens = set()
    for _ in range(count):
        gens.add(tuple(rng.randint(0, 4) for _ in range(nvars)))
    gens.discard((0,) * nvars)
    return minimalize(gens)


def test_minimalize_removes_multiples():
    gens = [(2, 0), (2, 1), (0, 3), (1, 3)]
    assert sorted(minimalize(gens)) == [(0, 3), (2, 0)]


def test_numerator_minimalizes_input():
    # redundant generators are dropped before the recursion
    assert list(hilbert_numerator([(1, 0), (2, 0)], 2).coeffs) == list(
        hilbert_numerator([(1, 0)], 2).coeffs
    )


def test_numerator_vs_oracle_on_50_random_ideals():
    """The pivot recursion against brute-force monomial counting.

    Fifty random monomial ideals in at most six variables, checked through
    degree 7; zero tolerance.
    """
    rng = random.Random(2026)
    for trial in range(50):
        nvars = rng.randint(1, 6)
        gens = _random_monomial_ideal(rng, nvars, rng.randint(1, 7))
        if not gens:
            continue
        num = hilbert_numerator(gens, nvars)
        for k in range(8):
            assert hilbert_function_from_numerator(
                num, k
            ) == hilbert_function_oracle(gens, nvars, k), (trial, gens, k)


def test_polynomial_ring_numerator_is_one():
    num = hilbert_numerator([], 3)
    assert list(num.coeffs) == [1]
    # dim of degree-k forms in 3 variables is the triangle number
    for k in range(6):
        assert hilbert_function_from_numerator(num, k) == (k + 1) * (k + 2) // 2


def test_hypersurface_numerator():
    # one generator of degree d gives numerator 1 - t^d
    num = hilbert_numerator([(3, 0, 0)], 3)
    assert list(num.coeffs) == [1, 0, 0, -1]


def test_hilbert_polynomial_extraction():
    # the twisted cubic staircase: quotient by three quadrics in 4 variables
    gens = [(0, 2, 0, 0), (0, 1, 1, 0), (0, 0, 2, 0)]
    num = hilbert_numerator(gens, 4)
    hp = hilbert_polynomial(num)
    coeffs = hp.as_integer_coeffs()
    for k in range(hp.k0, 9):
        want = hilbert_function_oracle(gens, 4, k)
        got = sum(c * k**i for i, c in enumerate(coeffs))
        assert got == want


def test_artinian_quotient_has_zero_polynomial():
    gens = [(2, 0), (0, 2)]
    num = hilbert_numerator(gens, 2)
    hp = hilbert_polynomial(num)
    assert hp.is_zero()
    # total dimension = 4: monomials 1, x, y, xy
    assert sum(hilbert_function_from_numerator(num, k) for k in range(5)) == 4


def test_oracle_enumeration_guard():
    with pytest.raises(EnumerationTooLarge):
        hilbert_function_oracle([(5,) * 8], 8, 40)
