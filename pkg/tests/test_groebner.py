"""Buchberger over prime fields: normal forms, idempotence, truncation."""

from __future__ import annotations

import random

import pytest

from fppcert.field import PrimeField
from fppcert.groebner import (
    BudgetExceeded,
    CoefficientFieldUnsupported,
    GroebnerBasis,
    IdealHandle,
    RingMismatch,
    buchberger,
    ideal_product,
    ideal_sum,
    normal_form,
)
from fppcert.hilbert import (
    hilbert_function_from_numerator,
    hilbert_function_oracle,
    hilbert_numerator,
    minimalize,
)
from fppcert.poly import Poly, PolyRing, PrimeDomain

FIELD = PrimeField(263, 16)
DOM = PrimeDomain(FIELD)
RING = PolyRing(("x", "y", "z"))


def _random_poly(rng: random.Random, homogeneous_degree: int | None = None):
    out = RING.constant(0, DOM)
    for _ in range(rng.randint(1, 5)):
        if homogeneous_degree is None:
            mono = tuple(rng.randint(0, 3) for _ in range(3))
        else:
            cuts = sorted(
                rng.randint(0, homogeneous_degree) for _ in range(2)
            )
            mono = (
                cuts[0],
                cuts[1] - cuts[0],
                homogeneous_degree - cuts[1],
            )
        out = out + RING.monomial(mono, rng.randint(1, 262), DOM)
    return out


def _random_ideal(rng: random.Random, size: int = 3):
    gens = [_random_poly(rng) for _ in range(size)]
    return [g for g in gens if not g.is_zero()] or [RING.constant(1, DOM)]


def _is_groebner(gb: GroebnerBasis) -> bool:
    gens = list(gb.generators)
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            fi, fj = gens[i], gens[j]
            mi, mj = fi.leading_monomial(), fj.leading_monomial()
            lcm = tuple(max(a, b) for a, b in zip(mi, mj))
            si = fi.mul_monomial(
                tuple(a - b for a, b in zip(lcm, mi))
            ).monic()
            sj = fj.mul_monomial(
                tuple(a - b for a, b in zip(lcm, mj))
            ).monic()
            if not normal_form(si - sj, gens).is_zero():
                return False
    return True


def test_buchberger_small_known_basis():
    x, y, z = RING.gens(DOM)
    gb = buchberger([x * y - z * z, x * x - y * z])
    assert _is_groebner(gb)
    # generators reduce to zero against the basis
    assert normal_form(x * y - z * z, gb).is_zero()
    assert normal_form(x * x - y * z, gb).is_zero()


def test_groebner_idempotence():
    """Running Buchberger on a reduced basis returns the same basis."""
    rng = random.Random(120)
    for _ in range(20):
        gb = buchberger(_random_ideal(rng))
        again = buchberger(list(gb.generators))
        assert sorted(g.coeffs.items() for g in gb.generators) == sorted(
            g.coeffs.items() for g in again.generators
        )


def test_basis_is_reduced():
    rng = random.Random(77)
    for _ in range(20):
        gb = buchberger(_random_ideal(rng))
        lms = [g.leading_monomial() for g in gb.generators]
        for g in gb.generators:
            assert g.leading_coeff() == 1
            for mono in g.coeffs:
                divisible = any(
                    all(a >= b for a, b in zip(mono, lm))
                    for lm in lms
                    if lm != g.leading_monomial() or mono != g.leading_monomial()
                )
                assert not divisible


def test_buchberger_s_pairs_reduce_to_zero():
    rng = random.Random(42)
    for _ in range(10):
        gb = buchberger(_random_ideal(rng))
        assert _is_groebner(gb)


def test_normal_form_is_linear_and_multiplicative_mod_ideal():
    """NF is a projection onto standard monomials: linear, and a ring
    morphism onto the quotient (NF(fg) = NF(NF(f) NF(g)))."""
    rng = random.Random(500)
    for _ in range(15):
        gb = buchberger(_random_ideal(rng))
        f, g = _random_poly(rng), _random_poly(rng)
        nf = lambda h: normal_form(h, gb)
        assert nf(f + g) == nf(f) + nf(g)
        assert nf(f.scale(7)) == nf(f).scale(7)
        assert nf(f * g) == nf(nf(f) * nf(g))
        # idempotence of the projection
        assert nf(nf(f)) == nf(f)


def test_normal_form_zero_iff_member():
    x, y, z = RING.gens(DOM)
    gb = buchberger([x * y, y * z])
    member = x * y * z + (x * y).scale(5)
    assert normal_form(member, gb).is_zero()
    assert not normal_form(x * z, gb).is_zero()


def test_truncated_vs_full_groebner():
    """Degree-capped runs agree with the full basis below the cap."""
    rng = random.Random(900)
    for _ in range(10):
        gens = [
            _random_poly(rng, homogeneous_degree=rng.randint(2, 3))
            for _ in range(3)
        ]
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            continue
        full = buchberger(gens)
        capped = buchberger(gens, degree_cap=4)
        assert capped.truncated and not full.truncated
        lead_full = minimalize(full.leading_monomials())
        lead_capped = minimalize(capped.leading_monomials())
        num_full = hilbert_numerator(lead_full, 3)
        num_capped = hilbert_numerator(lead_capped, 3)
        for k in range(5):
            assert hilbert_function_from_numerator(
                num_full, k
            ) == hilbert_function_from_numerator(num_capped, k)


def test_hilbert_data_from_groebner_matches_oracle():
    rng = random.Random(321)
    for _ in range(10):
        gens = [
            _random_poly(rng, homogeneous_degree=2),
            _random_poly(rng, homogeneous_degree=3),
        ]
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            continue
        gb = buchberger(gens)
        lead = minimalize(gb.leading_monomials())
        num = hilbert_numerator(lead, 3)
        for k in range(6):
            assert hilbert_function_from_numerator(
                num, k
            ) == hilbert_function_oracle(lead, 3, k)


def test_rational_coefficients_need_opt_in():
    ring = PolyRing(("a", "b"))
    a, b = ring.gens()
    with pytest.raises(CoefficientFieldUnsupported):
        buchberger([a * a - b])
    gb = buchberger([a * a - b], allow_rational=True)
    assert len(gb) == 1


def test_spair_budget_raises_with_partial():
    rng = random.Random(1000)
    gens = _random_ideal(rng, size=4)
    with pytest.raises(BudgetExceeded) as info:
        buchberger(gens, spair_budget=1)
    assert isinstance(info.value.partial, list)


def test_ring_mismatch_rejected():
    other = PolyRing(("u", "v"))
    with pytest.raises(RingMismatch):
        buchberger([RING.variable(0, DOM), other.variable(0, DOM)])
    with pytest.raises(RingMismatch):
        normal_form(other.variable(0, DOM), [RING.variable(0, DOM)])


def test_ideal_handles_cache_and_combine():
    x, y, z = RING.gens(DOM)
    I = IdealHandle([x * y, y * z])
    J = IdealHandle([z * z])
    assert I.groebner() is I.groebner()  # cached
    S = ideal_sum(I, J)
    assert len(S.generators) == 3
    P = ideal_product(I, J)
    assert all(g.total_degree() == 4 for g in P.generators)
    with pytest.raises(ValueError):
        IdealHandle([x + x * y])  # non-homogeneous under homogeneous flag
    IdealHandle([x + x * y], homogeneous=False)
