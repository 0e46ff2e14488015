"""The 84-cubic dataset: expansion, group action, serialization, assets."""

from __future__ import annotations

from collections import Counter

import pytest

from fppcert import dataset
from fppcert.field import QuadExt
from fppcert.poly import parse_expr

EXPECTED_DIGEST = (
    "c16147675308038dc739992d756c46b305664f3bdd0204408984562ea8dc5428"
)


def test_expansion_count_and_degrees():
    eqs = dataset.expand_equations()
    assert len(eqs) == 84
    for f in eqs:
        assert f.is_homogeneous() and f.total_degree() == 3


def test_g3_is_an_order_three_ring_map():
    eqs = dataset.expand_equations()
    for f in eqs[:12]:
        g = dataset.apply_g3(dataset.apply_g3(dataset.apply_g3(f)))
        assert g == f


def test_printed_orbit_identities():
    eqs = dataset.expand_equations()
    # the printed redundancy inside the first 12
    assert dataset.apply_g3(eqs[3]) == eqs[4]
    assert dataset.apply_g3(eqs[6]) == eqs[7]
    assert dataset.apply_g3(eqs[9]) == eqs[10]
    # the expansion rule for the second and third blocks
    assert dataset.apply_g3(eqs[12]) == eqs[36]
    assert dataset.apply_g3(eqs[36]) == eqs[60]
    assert dataset.apply_g3(eqs[60]) == eqs[12]


def test_first_three_equations_are_g3_symmetric():
    eqs = dataset.expand_equations()
    for f in eqs[:3]:
        assert dataset.apply_g3(f) == f


def test_weight_census():
    weights = dataset.equation_weights()
    assert Counter(weights) == {w: 12 for w in range(7)}
    # blocks of twelve share a weight, and conjugation by the 3-cycle
    # doubles the character: blocks at 13, 37, 61 carry weights 1, 2, 4
    assert weights[12] == 1 and weights[36] == 2 and weights[60] == 4
    assert weights[0] == 0


def test_g7_weight_examples():
    assert dataset.g7_weight((0, 1, 1, 1, 0, 0, 0, 0, 0, 0)) == 0  # U1 U2 U3
    assert dataset.g7_weight((3, 0, 0, 0, 0, 0, 0, 0, 0, 0)) == 0  # U0^3
    assert dataset.g7_weight((0, 0, 0, 2, 1, 0, 0, 0, 0, 0)) == 0  # U3^2 U4
    assert dataset.G7_WEIGHTS == (0, 6, 5, 3, 1, 2, 4, 1, 2, 4)


def test_weight_classes_cycle_under_g3():
    # pushing a monomial through the variable 3-cycle doubles its weight
    import random

    rng = random.Random(88)
    for _ in range(200):
        mono = tuple(rng.randint(0, 2) for _ in range(10))
        moved = [0] * 10
        for i, e in enumerate(mono):
            moved[dataset.G3_IMAGES[i]] += e
        assert dataset.g7_weight(moved) == 2 * dataset.g7_weight(mono) % 7


def test_curve_generators():
    gens = dataset.curve_c_generators()
    assert len(gens) == 19
    assert [g.total_degree() for g in gens] == [1] + [2] * 18
    weights = [dataset.poly_g7_weight(g) for g in gens]
    assert weights == [0, 5, 5, 6, 0, 4, 2, 3, 3, 5, 0, 1, 4, 6, 6, 3, 0, 2, 1]


def test_minor_selections_shape():
    assert len(dataset.MINOR_SELECTIONS) == 3
    for rows, cols in dataset.MINOR_SELECTIONS:
        assert len(set(rows)) == 7 and all(1 <= r <= 84 for r in rows)
        assert len(set(cols)) == 7 and all(0 <= c <= 9 for c in cols)
    assert dataset.MINOR_SELECTIONS[0] == (
        (8, 19, 29, 43, 55, 61, 79),
        (0, 1, 2, 3, 5, 6, 7),
    )


def test_fixed_point_variables():
    assert dataset.FIXED_POINT_VARIABLES == (9, 8, 7)


def test_canonical_serialization_round_trip():
    for f in dataset.expand_equations():
        text = dataset.canonical_serialize(f)
        assert parse_expr(text, dataset.RING) == f
        assert " " not in text


def test_eq1_leading_term_is_u1u2u3():
    line = dataset.dataset_text().splitlines()[0]
    head = line.split("+(", 1)[0]
    assert head.endswith("*U1*U2*U3")


def test_dataset_digest_frozen():
    assert dataset.dataset_digest() == EXPECTED_DIGEST


def test_asset_integrity():
    rep = dataset.verify_asset_integrity()
    assert rep["digest_matches"] and rep["text_matches"] and rep["reparse_matches"]
    assert rep["line_count"] == 84
    assert rep["shipped_digest"] == EXPECTED_DIGEST


def test_conjugate_dataset_differs_but_shares_structure():
    conj = dataset.conjugate_equations()
    eqs = dataset.expand_equations()
    assert len(conj) == 84
    assert conj != eqs
    # conjugation fixes the monomial support and the weight census
    for f, g in zip(eqs, conj):
        assert set(f.coeffs) == set(g.coeffs)
        for m, c in f.coeffs.items():
            assert g.coeffs[m] == c.conjugate()
    # and is an involution
    twice = tuple(
        f.map_coeffs(lambda c: c.conjugate(), f.domain) for f in conj
    )
    assert twice == eqs


def test_write_assets_reproduces_shipped_files(tmp_path):
    dataset.write_assets(tmp_path)
    text = (tmp_path / dataset.ASSET_NAME).read_text()
    digest_line = (tmp_path / dataset.ASSET_DIGEST_NAME).read_text()
    assert text == dataset.dataset_text()
    assert digest_line.split()[0] == EXPECTED_DIGEST


def test_fixed_points_are_coordinate_points():
    pts = dataset.fixed_points()
    assert len(pts) == 3
    for var, pt in zip(dataset.FIXED_POINT_VARIABLES, pts):
        assert [x != QuadExt(0) for x in pt] == [i == var for i in range(10)]
