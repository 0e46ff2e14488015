"""The packed quotient engine: free-module structure and its certificates."""

from __future__ import annotations

import random

import numpy as np
import pytest

from fppcert import dataset
from fppcert.field import PrimeField
from fppcert.modmat import mod_rank
from fppcert.quotient import (
    CertificateError,
    NSLOTS,
    NVARS,
    QuotientEngine,
    get_engine,
    hf_expected,
    monomials_desc,
    packed_len,
    packed_weights,
    pweight,
    shift_idx,
)

FIELD = PrimeField(263, 16)


def _engine() -> QuotientEngine:
    return get_engine(FIELD)


def test_engine_cached_per_field():
    assert get_engine(FIELD) is get_engine(PrimeField(263, 16))


def test_euler_identity_on_every_dataset_polynomial():
    """deg(f) * f = sum_i U_i * df/dU_i for all shipped homogeneous forms."""
    gens = list(dataset.expand_equations()) + list(dataset.curve_c_generators())
    U = dataset.RING.gens()
    for f in gens:
        d = f.total_degree()
        acc = dataset.RING.constant(0)
        for i in range(NVARS):
            acc = acc + U[i] * f.derivative(i)
        assert acc == f.scale(d)


def test_pivot_structure():
    eng = _engine()
    assert eng.pivot_count == 84
    assert NSLOTS == 36
    # the 84 cubics occupy 84 of the 220 degree-3 coefficients, leaving the
    # expected quotient dimension
    assert 220 - eng.pivot_count == hf_expected(3)


def test_cubics_reduce_to_zero():
    eng = _engine()
    for f in eng.eqs:
        vec = eng.nf_pack_cubic(f)
        assert not np.any(vec)


def test_free_module_dimension_matches_hilbert_function():
    for k in range(13):
        assert packed_len(k) == hf_expected(k)


def test_operator_commutativity_and_annihilation():
    eng = _engine()
    assert eng.commutativity_ok()
    assert eng.annihilation_ok()


def test_apply_x_commutes_on_random_vectors():
    eng = _engine()
    rng = random.Random(12)
    for _ in range(10):
        k = rng.randint(0, 3)
        vec = np.array(
            [rng.randrange(263) for _ in range(packed_len(k))], dtype=np.int64
        )
        a, b = rng.sample(range(7), 2)  # slot variables only
        ab = eng.apply_x(b, eng.apply_x(a, vec, k), k + 1)
        ba = eng.apply_x(a, eng.apply_x(b, vec, k), k + 1)
        assert np.array_equal(ab, ba)


def test_hilbert_report_frozen_values():
    rep = _engine().hilbert_report()
    assert rep["numerator"] == [1, 0, 0, -84, 378, -756, 840, -540, 189, -28]
    assert rep["numerator_ok"] and rep["hp_ok"] and rep["oracle_ok"]
    assert rep["hp_coeffs"] == [1, -9, 18]
    got_hf = [rep["oracle"][k][0] for k in range(9)]
    assert got_hf == [1, 10, 55, 136, 253, 406, 595, 820, 1081]


def test_degree_four_component_has_rank_462():
    """Dimension of the ideal in degree 4 over GF(263)."""
    eng = _engine()
    mono4 = monomials_desc(NVARS, 4)
    index = {m: i for i, m in enumerate(mono4)}
    rows = []
    for f in eng.eqs:
        for v in range(NVARS):
            row = np.zeros(len(mono4), dtype=np.int64)
            for m, c in f.coeffs.items():
                m2 = list(m)
                m2[v] += 1
                row[index[tuple(m2)]] = c.value if hasattr(c, "value") else c
            rows.append(row % 263)
    assert len(mono4) == 715
    assert mod_rank(np.stack(rows), 263) == 462
    assert 715 - 462 == hf_expected(4)


def test_invariance_rank_stays_84():
    assert _engine().invariance_rank() == 84


def test_fixed_point_report_frozen_guards():
    rep = _engine().fixed_point_report()
    assert rep["vanishing_ok"] and rep["guards_ok"]
    assert rep["guards"] == [86, 86, 43]


def test_minor_images_are_weight_homogeneous():
    eng = _engine()
    vec = eng.minor_image(*dataset.MINOR_SELECTIONS[0])
    assert eng.weight_class(vec, 14) == 0
    assert int(np.count_nonzero(vec)) == 484


def test_weight_class_rejects_mixed_vectors():
    eng = _engine()
    weights = packed_weights(2)
    a = int(np.flatnonzero(weights == 0)[0])
    b = int(np.flatnonzero(weights == 1)[0])
    vec = np.zeros(packed_len(2), dtype=np.int64)
    vec[a] = 1
    vec[b] = 1
    with pytest.raises(CertificateError):
        eng.weight_class(vec, 2)


def test_evaluate_packed_matches_direct_evaluation():
    eng = _engine()
    rng = random.Random(77)
    # a packed element of degree 2 with a known polynomial preimage
    from fppcert.quotient import SLOT_EXPS

    for _ in range(20):
        point = [rng.randrange(263) for _ in range(NVARS)]
        vec = eng.zero_packed(2)
        total = 0
        for slot, exps in enumerate(SLOT_EXPS):
            if sum(exps) > 2:
                continue
            for tau in monomials_desc(3, 2 - sum(exps)):
                c = rng.randrange(263)
                full = list(exps) + [0, 0, 0]
                for j, e in enumerate(tau):
                    full[7 + j] += e
                base = eng.slot_unit(slot)
                contrib = np.zeros_like(vec)
                eng.add_shifted(contrib, base, sum(exps), tau, c)
                vec = (vec + contrib) % 263
                term = c
                for j, e in enumerate(full):
                    term = term * pow(point[j], e, 263) % 263
                total = (total + term) % 263
        assert eng.evaluate_packed_at_point(vec, 2, point) == total


def test_module_generators_match_dense_dimensions():
    eng = _engine()
    gens = eng.module_generators(eng.curve_generators_prime())
    # low-degree quotient dimensions of the curve section
    dims = [eng.module_dense_dimension(gens, k) for k in range(4)]
    assert dims == [1, 9, 27, 45]


def test_pweight_helper():
    assert pweight((0, 0, 0)) == 0
    assert pweight((1, 0, 0)) == dataset.G7_WEIGHTS[7]
    assert pweight((0, 1, 1)) == (dataset.G7_WEIGHTS[8] + dataset.G7_WEIGHTS[9]) % 7


def test_second_engine_conjugate_shares_structure():
    eng = get_engine(FIELD, conjugate=True)
    assert eng.pivot_count == 84
    rep = eng.fixed_point_report()
    assert rep["vanishing_ok"] and rep["guards_ok"]
