"""Certification pipeline: config validation, records, budgets, reports."""

from __future__ import annotations

import json

import numpy as np
import pytest

from fppcert import certify
from fppcert.certify import (
    CORE_CHECKS,
    EXTENDED_CHECKS,
    ConfigError,
    RunConfig,
    report_passed,
    run_all,
    run_check,
    write_report,
)

FROZEN_DIGEST = "c16147675308038dc739992d756c46b305664f3bdd0204408984562ea8dc5428"

FAST_CHECKS = ("dataset_integrity", "group_invariance", "fixed_points",
               "lattice_search")


def test_selection_constants():
    assert len(CORE_CHECKS) == 6
    assert len(EXTENDED_CHECKS) == 10
    assert EXTENDED_CHECKS[: len(CORE_CHECKS)] == CORE_CHECKS


def test_resolved_fills_smallest_residue():
    cfg = RunConfig().resolved()
    assert cfg.sqrt_minus7 == 16
    assert cfg.checks == CORE_CHECKS
    assert RunConfig(prime=337).resolved().sqrt_minus7 == 88
    # the other square root is accepted when given explicitly
    assert RunConfig(sqrt_minus7=247).resolved().sqrt_minus7 == 247


def test_config_rejections():
    with pytest.raises(ConfigError):
        RunConfig(prime=5).resolved()  # -7 is not a square mod 5
    with pytest.raises(ConfigError):
        RunConfig(samples=0).resolved()
    with pytest.raises(ConfigError):
        RunConfig(sqrt_minus7=17).resolved()
    with pytest.raises(ConfigError):
        RunConfig(checks=("hilbert_series", "bogus")).resolved()
    with pytest.raises(ConfigError):
        RunConfig(gb_seconds=-1.0).resolved()
    with pytest.raises(ConfigError):
        RunConfig(gb_pairs=-2).resolved()


def test_bad_thread_env(monkeypatch):
    monkeypatch.setenv("FPPCERT_THREADS", "zebra")
    with pytest.raises(ConfigError):
        run_all(RunConfig(checks=("lattice_search",)))


def test_record_schema_and_fast_run():
    report = run_all(RunConfig(checks=FAST_CHECKS))
    assert report_passed(report)
    meta = report["meta"]
    assert meta["prime"] == 263
    assert meta["sqrt_minus7"] == 16
    assert meta["conjugate"] is False
    assert meta["dataset_digest"] == FROZEN_DIGEST
    assert meta["checks_selected"] == list(FAST_CHECKS)
    assert meta["overall"] == "pass"
    assert [r["id"] for r in report["checks"]] == list(FAST_CHECKS)
    for rec in report["checks"]:
        assert set(rec) == {"id", "status", "observed", "expected", "ms"}
        assert rec["status"] == "pass"
        assert isinstance(rec["ms"], int)


def test_report_is_json_serializable(tmp_path):
    report = run_all(RunConfig(checks=("dataset_integrity", "lattice_search")))
    text = json.dumps(report)
    assert "dataset_integrity" in text
    path = tmp_path / "report.json"
    write_report(report, path)
    assert json.loads(path.read_text()) == report


def test_runs_are_deterministic_up_to_timing():
    cfg = RunConfig(
        checks=("group_invariance", "automorphism_order3", "z_transport"),
        samples=15,
    )

    def strip(report):
        for rec in report["checks"]:
            rec.pop("ms")
        return report

    assert strip(run_all(cfg)) == strip(run_all(cfg))


def test_budget_skip_keeps_overall_pass():
    cfg = RunConfig(checks=("dataset_integrity", "smoothness"), gb_seconds=0.0)
    report = run_all(cfg)
    by_id = {r["id"]: r for r in report["checks"]}
    assert by_id["dataset_integrity"]["status"] == "pass"
    skipped = by_id["smoothness"]
    assert skipped["status"] == "skip: budget"
    assert "reason" in skipped["observed"]
    assert isinstance(skipped["observed"]["partial"], dict)
    assert report["meta"]["overall"] == "pass"


def test_pair_budget_skips_curve_run():
    cfg = RunConfig(checks=("curve_c",), gb_pairs=0)
    report = run_all(cfg)
    rec = report["checks"][0]
    assert rec["status"] == "skip: budget"
    assert "S-pair" in rec["observed"]["reason"]


def test_failure_is_recorded_not_raised(monkeypatch):
    monkeypatch.setitem(
        certify._CHECK_FUNCTIONS,
        "lattice_search",
        lambda cfg: ({"note": "forced"}, {}, False),
    )
    report = run_all(RunConfig(checks=("dataset_integrity", "lattice_search")))
    statuses = {r["id"]: r["status"] for r in report["checks"]}
    assert statuses == {"dataset_integrity": "pass", "lattice_search": "fail"}
    assert report["meta"]["overall"] == "fail"
    assert not report_passed(report)


def test_thread_pool_preserves_selection_order(monkeypatch):
    serial = run_all(RunConfig(checks=FAST_CHECKS))
    monkeypatch.setenv("FPPCERT_THREADS", "2")
    monkeypatch.setattr(certify.os, "cpu_count", lambda: 4)
    pooled = run_all(RunConfig(checks=FAST_CHECKS))
    strip = lambda rep: [
        {k: v for k, v in rec.items() if k != "ms"} for rec in rep["checks"]
    ]
    assert strip(pooled) == strip(serial)
    assert [r["id"] for r in pooled["checks"]] == list(FAST_CHECKS)


def test_plain_converts_numpy_scalars():
    raw = {"a": np.int64(3), "b": [np.bool_(True), np.float64(1.5)], "c": (1, 2)}
    out = certify._plain(raw)
    assert out == {"a": 3, "b": [True, 1.5], "c": [1, 2]}
    json.dumps(out)


def test_single_check_record():
    cfg = RunConfig(checks=("lattice_search",)).resolved()
    rec = run_check("lattice_search", cfg)
    assert rec["id"] == "lattice_search"
    assert rec["status"] == "pass"
    assert rec["expected"]["rank"] == 19
