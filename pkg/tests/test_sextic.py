"""Sextic model: exact identities, chart tables, and sampled map checks."""

from __future__ import annotations

import io
import json
from fractions import Fraction

import pytest

from fppcert.field import QuadExt
from fppcert.sextic import (
    DEFAULT_ASSIGNMENT,
    EMBED_SCALING,
    FOUND_SCALINGS,
    SeventhRootUndefined,
    chart_tables,
    cone_factors,
    conic_h0,
    derive_integral_equations,
    export_points_jsonl,
    run_symbolic_suite,
    sample_surface_points,
    sextic_f,
    sigma_y,
    surface_chart,
    verify_automorphism_order3,
    verify_curve_incidence,
    verify_embedding_samples,
    verify_polynomial_identities,
    verify_singular_locus,
    verify_z_transport,
)

P, R = 263, 16


def test_polynomial_identities_record():
    rec = verify_polynomial_identities()
    assert rec["ok"] is True
    assert rec["involution_invariant"]
    assert rec["y1_section_scalar"] == "28"
    assert rec["y0_section_scalar"] == "14+2*w"
    assert rec["pencil_strips_square"]
    assert rec["pencil_base_points_singular"]
    assert rec["diagonal_member_splits"]
    assert rec["diagonal_split_constant"] is not None


def test_singular_locus_record():
    rec = verify_singular_locus()
    assert rec["ok"] is True
    assert rec["hessian_rank"] == 2
    assert rec["y0_partial_cofactor"] == "42+2*w"
    assert rec["double_line"] and rec["conic_divides_partials"]


def test_curve_incidence_record():
    rec = verify_curve_incidence()
    assert rec["ok"] is True
    assert len(rec["curves"]) == 26
    assert all(rec["curves"].values())
    assert rec["parametric_payloads_coprime"]
    assert rec["symmetrized_cones_invariant"]


def test_integral_equations_frozen():
    rec = derive_integral_equations()
    assert rec["ok"] is True
    y4, y5 = rec["y4"], rec["y5"]
    assert y4["a"] == "(-1/2+-11/14*w)*y0*y3+(3/4+-31/28*w)*y2*y3"
    assert y4["b_terms"] == 19
    assert y4["sigma_parity"] == "odd"
    assert y4["grading"] == 2
    assert y5["a"] == "(11/4+-1/4*w)*y1*y2"
    assert y5["b_terms"] == 9
    assert y5["sigma_parity"] == "odd"


def test_symbolic_suite_bundles_four_parts():
    rec = run_symbolic_suite()
    assert rec["ok"] is True
    assert [p["id"] for p in rec["parts"]] == [
        "sextic_polynomial_identities",
        "sextic_singular_locus",
        "sextic_curve_incidence",
        "sextic_integral_elements",
    ]


def test_sigma_is_an_involution_fixing_f():
    f, h0 = sextic_f(), conic_h0()
    assert sigma_y(f) == f
    # the conic has only even powers of the flipped variables, so it is fixed
    assert sigma_y(h0) == h0
    c1 = cone_factors()[0]
    assert sigma_y(c1) != c1
    assert sigma_y(sigma_y(c1)) == c1


def test_chart_tables_build_and_cache():
    ct = chart_tables()
    assert ct is chart_tables()
    for num, den in (ct.rho_y2, ct.rho_y3, ct.rho_inv_y2, ct.rho_inv_y3,
                     ct.w_pow7, ct.z_cofactor):
        assert not num.is_zero() and not den.is_zero()
    for num, den, zpow in (ct.embed_u1, ct.embed_a, ct.embed_b):
        assert isinstance(zpow, int)
        assert not den.is_zero()
    assert ct.base_denominators
    assert ct.F.total_degree() == 6


def test_automorphism_sampled_small():
    rec = verify_automorphism_order3(P, count=30, seed=42)
    assert rec["ok"] is True
    assert rec["samples"] == 30
    assert rec["surface_failures"] == 0
    assert rec["inverse_failures"] == 0
    assert rec["cube_failures"] == 0
    assert rec["sqrt_minus7"] == R


def test_z_transport_sampled_small():
    rec = verify_z_transport(P, count=30, seed=42)
    assert rec["ok"] is True
    assert rec["seventh_root_exponent"] == 75
    assert rec["transport_direction"] == "double_primed"
    assert rec["root_failures"] == 0
    assert rec["transport_failures"] == 0
    assert rec["sigma_failures"] == 0


def test_sample_points_deterministic_and_on_surface():
    pts = sample_surface_points(P, 12, seed=7)
    again = sample_surface_points(P, 12, seed=7)
    assert pts == again
    assert sample_surface_points(P, 12, seed=8) != pts
    chart = surface_chart(P, R)
    assert all(chart.on_surface(pt) for pt in pts)


def test_export_points_jsonl_roundtrip():
    pts = sample_surface_points(P, 5, seed=1)
    buf = io.StringIO()
    n = export_points_jsonl(P, pts, buf)
    assert n == 5
    chart = surface_chart(P, R)
    lines = buf.getvalue().splitlines()
    assert len(lines) == 5
    for line, pt in zip(lines, pts):
        obj = json.loads(line)
        assert (obj["Y0"], obj["Y2"], obj["Y3"]) == tuple(pt)
        assert pow(obj["z"], 7, P) == chart.w_value(pt)


def test_embedding_samples_with_recorded_scalings():
    assert EMBED_SCALING == QuadExt(Fraction(-3, 32), Fraction(-1, 32))
    rec = verify_embedding_samples(P, 10, seed=42, scalings=FOUND_SCALINGS)
    assert rec["ok"] is True
    assert rec["nonzero_evaluations"] == 0
    assert rec["assignment"] == list(DEFAULT_ASSIGNMENT)


def test_embedding_scaling_validation():
    with pytest.raises(ValueError):
        verify_embedding_samples(P, 2, seed=0, scalings=[1, 2, 3])
    with pytest.raises(ValueError):
        verify_embedding_samples(P, 2, seed=0, scalings=[0] * 10)


def test_seventh_root_ambiguous_when_p_splits():
    # 337 - 1 = 336 is divisible by 7, so z is not recoverable from z^7
    with pytest.raises(SeventhRootUndefined):
        verify_z_transport(337, count=1, seed=0)
