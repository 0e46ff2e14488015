"""Module Groebner bases over P = GF(p)[U7,U8,U9] on the 36 slot generators."""

from __future__ import annotations

import pytest

from fppcert.budget import Budget, BudgetExceeded
from fppcert.field import PrimeField
from fppcert.modgb import (
    DegreeOverflow,
    buchberger_module,
    element_degree,
    leading_term,
    minimal_leading_terms,
    quotient_hilbert,
    quotient_numerator,
    term_degree,
)
from fppcert.quotient import get_engine

P = 263
FIELD = PrimeField(P, 16)


def _eng():
    return get_engine(FIELD)


def test_term_conventions():
    # a term is (slot, mu); degree = slot degree + |mu|
    assert term_degree((0, (0, 0, 0))) == 0
    assert term_degree((0, (2, 1, 0))) == 3
    f = {(0, (1, 0, 0)): 5, (0, (0, 0, 2)): 1}
    lt = leading_term(f)
    assert lt in f


def test_single_generator_module():
    # the submodule generated by one slot-0 element mu = U7: quotient
    # numerator must be that of a principal ideal
    gens = [{(0, (1, 0, 0)): 1}]
    basis, stats = buchberger_module(gens, P)
    assert len(basis) == 1
    assert stats["pairs"] == 0
    h = quotient_hilbert(basis)
    # free module dims minus one copy of P shifted by 1
    from fppcert.quotient import hf_expected

    for k in range(1, 6):
        expect = hf_expected(k) - (k) * (k + 1) // 2
        assert h["hf_low"][k] == expect


def test_curve_module_basis_sizes():
    """The three module bases behind the curve certificate."""
    eng = _eng()
    gens_p = eng.curve_generators_prime()
    mods_a = eng.module_generators(gens_p)
    basis_a, _ = buchberger_module(mods_a, P)
    mods_u = eng.module_generators([gens_p[0]])
    basis_u, _ = buchberger_module(mods_u, P)
    assert len(basis_a) == 38
    assert len(basis_u) == 42
    # leading terms of the full curve module majorize the hyperplane ones
    ha = quotient_hilbert(basis_a)
    hu = quotient_hilbert(basis_u)
    assert ha["hp_coeffs"] == [-9, 18]
    assert hu["hp_coeffs"] == [-27, 36]


def test_quotient_hilbert_cross_checked_densely():
    eng = _eng()
    gens_p = eng.curve_generators_prime()
    mods = eng.module_generators([gens_p[0]])
    basis, _ = buchberger_module(mods, P)
    h = quotient_hilbert(basis)
    for k in range(4):
        assert h["hf_low"][k] == eng.module_dense_dimension(mods, k)


def test_minimal_leading_terms_are_incomparable():
    eng = _eng()
    mods = eng.module_generators([eng.curve_generators_prime()[0]])
    basis, _ = buchberger_module(mods, P)
    per_slot = minimal_leading_terms(basis)
    for slot, mus in per_slot.items():
        for i, a in enumerate(mus):
            for j, b in enumerate(mus):
                if i != j:
                    assert not all(x >= y for x, y in zip(b, a))


def test_degree_overflow_guard():
    eng = _eng()
    mods = eng.module_generators([eng.curve_generators_prime()[1]])
    with pytest.raises(DegreeOverflow):
        buchberger_module(mods, P, max_degree=3)


def test_budget_trips_inside_module_run():
    eng = _eng()
    mods = eng.module_generators(eng.curve_generators_prime())
    with pytest.raises(BudgetExceeded):
        # the full curve run consumes exactly two S-pairs; cap below that
        buchberger_module(mods, P, budget=Budget.start(pairs=1))
    with pytest.raises(BudgetExceeded):
        buchberger_module(mods, P, budget=Budget.start(seconds=0.0))


def test_duplicate_generators_ignored():
    gens = [{(0, (1, 0, 0)): 1}, {(0, (1, 0, 0)): 1}]
    basis, stats = buchberger_module(gens, P)
    assert len(basis) == 1


def test_quotient_numerator_matches_hilbert_module():
    gens = [{(0, (2, 0, 0)): 1}, {(0, (0, 1, 0)): 1}]
    basis, _ = buchberger_module(gens, P)
    num = quotient_numerator(basis)
    h = quotient_hilbert(basis)
    assert list(num.coeffs) == h["numerator"]
