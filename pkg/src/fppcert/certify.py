"""Certification pipeline: run the verification checks, emit one report.

Each check produces a flat record (id, status, observed, expected,
duration); the report bundles the records with the run metadata.  The
default selection is the six core ring-side checks; the extended selection
adds the sextic-model suites and the lattice search.  A report passes
iff every non-skipped check passes.

Checks are independent and internally deterministic, so they may run on a
small thread pool (capped by the FPPCERT_THREADS environment variable);
record order always follows the selection order, never completion order.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass, replace
from importlib import metadata

import numpy as np

from . import dataset, lattice, sextic
from .budget import Budget, BudgetExceeded
from .field import PrimeField, find_sqrt_minus7
from .quotient import get_engine


class ConfigError(ValueError):
    """The run configuration is unusable; nothing was executed."""


CORE_CHECKS = (
    "dataset_integrity",
    "hilbert_series",
    "group_invariance",
    "fixed_points",
    "smoothness",
    "curve_c",
)

EXTENDED_CHECKS = CORE_CHECKS + (
    "sextic_symbolic",
    "automorphism_order3",
    "z_transport",
    "lattice_search",
)


@dataclass(frozen=True)
class RunConfig:
    """Reproducible run parameters; identical configs give identical reports
    up to the duration fields."""

    prime: int = 263
    sqrt_minus7: int | None = None
    seed: int = 42
    samples: int = 100
    gb_seconds: float | None = None
    gb_pairs: int | None = None
    report_path: str | None = None
    checks: tuple[str, ...] | None = None
    conjugate: bool = False

    def resolved(self) -> "RunConfig":
        """Validated copy with the square-root residue filled in."""
        if self.samples < 1:
            raise ConfigError(f"samples must be at least 1, got {self.samples}")
        try:
            residue = (
                self.sqrt_minus7
                if self.sqrt_minus7 is not None
                else find_sqrt_minus7(self.prime)
            )
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        if residue * residue % self.prime != (-7) % self.prime:
            raise ConfigError(
                f"{residue}^2 is not -7 mod {self.prime}"
            )
        selection = self.checks if self.checks is not None else CORE_CHECKS
        unknown = [c for c in selection if c not in EXTENDED_CHECKS]
        if unknown:
            raise ConfigError(f"unknown checks: {', '.join(unknown)}")
        if self.gb_seconds is not None and self.gb_seconds < 0:
            raise ConfigError("wall-time budget must be nonnegative")
        if self.gb_pairs is not None and self.gb_pairs < 0:
            raise ConfigError("S-pair budget must be nonnegative")
        return replace(
            self, sqrt_minus7=residue, checks=tuple(selection)
        )

    def field(self) -> PrimeField:
        return PrimeField(self.prime, self.sqrt_minus7)

    def budget(self) -> Budget | None:
        return Budget.start(self.gb_seconds, self.gb_pairs)


def _plain(x):
    """Recursively convert report values to JSON-serializable types."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.floating):
        return float(x)
    if isinstance(x, np.bool_):
        return bool(x)
    return x


def _engine(cfg: RunConfig):
    return get_engine(cfg.field(), conjugate=cfg.conjugate)


def check_dataset_integrity(cfg: RunConfig):
    rep = dataset.verify_asset_integrity()
    ok = (
        rep["digest_matches"]
        and rep["text_matches"]
        and rep["reparse_matches"]
        and rep["line_count"] == 84
    )
    expected = {
        "digest": rep["shipped_digest"],
        "line_count": 84,
        "reparse": "every line equals the in-memory cubic",
    }
    return rep, expected, ok


def check_hilbert_series(cfg: RunConfig):
    rep = _engine(cfg).hilbert_report()
    hp = rep["hp_coeffs"]
    invariants = None
    if len(hp) == 3:
        # HP(k) = (D^2/2) k^2 - (D.K/2) k + chi
        invariants = {"D2": 2 * hp[2], "DK": -2 * hp[1], "chi": hp[0]}
    observed = {
        "numerator": rep["numerator"],
        "hp_coeffs": hp,
        "invariants": invariants,
        "pivot_count": rep["pivot_count"],
        "commutativity": rep["commutativity"],
        "annihilation": rep["annihilation"],
        "oracle": {k: list(v) for k, v in rep["oracle"].items()},
    }
    expected = {
        "numerator": rep["numerator_expected"],
        "hp_coeffs": [1, -9, 18],
        "invariants": {"D2": 36, "DK": 18, "chi": 1},
        "oracle": "three-way agreement for k <= 8",
    }
    ok = (
        rep["numerator_ok"]
        and rep["hp_ok"]
        and rep["oracle_ok"]
        and rep["commutativity"]
        and rep["annihilation"]
        and invariants == expected["invariants"]
    )
    return observed, expected, ok


def check_group_invariance(cfg: RunConfig):
    weights = dataset.equation_weights()
    census = {w: weights.count(w) for w in range(7)}
    eqs = (
        dataset.conjugate_equations()
        if cfg.conjugate
        else dataset.expand_equations()
    )
    identities = {
        "g3(eq1) == eq1": dataset.apply_g3(eqs[0]) == eqs[0],
        "g3(eq4) == eq5": dataset.apply_g3(eqs[3]) == eqs[4],
        "g3(eq13) == eq37": dataset.apply_g3(eqs[12]) == eqs[36],
    }
    rank = _engine(cfg).invariance_rank()
    observed = {
        "weight_census": census,
        "weight_homogeneous": True,  # equation_weights raises otherwise
        "orbit_identities": identities,
        "stacked_rank": rank,
    }
    expected = {
        "weight_census": {w: 12 for w in range(7)},
        "orbit_identities": {k: True for k in identities},
        "stacked_rank": 84,
    }
    ok = (
        census == expected["weight_census"]
        and all(identities.values())
        and rank == 84
    )
    return observed, expected, ok


def check_fixed_points(cfg: RunConfig):
    rep = _engine(cfg).fixed_point_report()
    expected = {
        "vanishing": "all 84 cubics at the three coordinate points",
        "guards": "diagonal minor values all nonzero",
    }
    ok = rep["vanishing_ok"] and rep["guards_ok"]
    return rep, expected, ok


def check_smoothness(cfg: RunConfig):
    rep = _engine(cfg).smoothness_chain(seed=cfg.seed, budget=cfg.budget())
    observed = {
        "minors": rep["minors"],
        "stage1": rep["stage1"],
        "stage2": rep["stage2"],
        "stage3": rep["stage3"],
    }
    expected = {"hp_chain": ["504*k - 3654", "7056", "0"]}
    return observed, expected, rep["ok"]


def check_curve_c(cfg: RunConfig):
    rep = _engine(cfg).curve_chain(budget=cfg.budget())
    expected = {
        "curve_hp": "18*k - 9",
        "doubled": "same Hilbert polynomial as the hyperplane section",
    }
    return rep, expected, rep["ok"]


def check_sextic_symbolic(cfg: RunConfig):
    rep = sextic.run_symbolic_suite()
    expected = {
        "identities": "every polynomial identity exact over Q(w)",
        "scalars": ["28", "14+2*w"],
    }
    return rep, expected, rep["ok"]


def check_automorphism_order3(cfg: RunConfig):
    rep = sextic.verify_automorphism_order3(
        cfg.field(), count=cfg.samples, seed=cfg.seed
    )
    expected = {"failures": 0, "samples": cfg.samples}
    return rep, expected, rep["ok"]


def check_z_transport(cfg: RunConfig):
    rep = sextic.verify_z_transport(
        cfg.field(), count=cfg.samples, seed=cfg.seed
    )
    expected = {"failures": 0, "samples": cfg.samples}
    return rep, expected, rep["ok"]


def check_lattice_search(cfg: RunConfig):
    rep = lattice.run_search()
    expected = {
        "survivor": {"case": 2, "assignment": [0, 1, 0, 0, 1, 1]},
        "rank": 19,
    }
    return rep, expected, rep["ok"]


_CHECK_FUNCTIONS = {
    "dataset_integrity": check_dataset_integrity,
    "hilbert_series": check_hilbert_series,
    "group_invariance": check_group_invariance,
    "fixed_points": check_fixed_points,
    "smoothness": check_smoothness,
    "curve_c": check_curve_c,
    "sextic_symbolic": check_sextic_symbolic,
    "automorphism_order3": check_automorphism_order3,
    "z_transport": check_z_transport,
    "lattice_search": check_lattice_search,
}

_NEEDS_ENGINE = {
    "hilbert_series",
    "group_invariance",
    "fixed_points",
    "smoothness",
    "curve_c",
}


def run_check(check_id: str, cfg: RunConfig) -> dict:
    """One record: {id, status, observed, expected, ms}."""
    fn = _CHECK_FUNCTIONS[check_id]
    t0 = time.perf_counter()
    try:
        observed, expected, ok = fn(cfg)
        status = "pass" if ok else "fail"
    except BudgetExceeded as exc:
        observed = {"reason": exc.reason, "partial": exc.partial}
        expected = {"note": "budget exhausted before completion"}
        status = "skip: budget"
    ms = int(round((time.perf_counter() - t0) * 1000))
    return {
        "id": check_id,
        "status": status,
        "observed": _plain(observed),
        "expected": _plain(expected),
        "ms": ms,
    }


def _worker_count(n_checks: int) -> int:
    cap = os.environ.get("FPPCERT_THREADS")
    limit = min(4, os.cpu_count() or 1)
    if cap is not None:
        try:
            limit = min(limit, max(1, int(cap)))
        except ValueError:
            raise ConfigError(f"FPPCERT_THREADS is not an integer: {cap!r}")
    return max(1, min(limit, n_checks))


def toolkit_version() -> str:
    try:
        return metadata.version("fppcert")
    except metadata.PackageNotFoundError:
        return "unpackaged"


def run_all(config: RunConfig) -> dict:
    """Execute the selected checks and assemble the report.

    Failures are recorded, never raised; only an unusable configuration
    raises (ConfigError), before any check runs.
    """
    cfg = config.resolved()
    selection = cfg.checks
    if any(c in _NEEDS_ENGINE for c in selection):
        _engine(cfg)  # build once, serially, before any dispatch
    workers = _worker_count(len(selection))
    if workers > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(lambda c: run_check(c, cfg), selection))
    else:
        records = [run_check(c, cfg) for c in selection]
    overall = all(r["status"] != "fail" for r in records)
    meta = {
        "prime": cfg.prime,
        "sqrt_minus7": cfg.sqrt_minus7,
        "seed": cfg.seed,
        "samples": cfg.samples,
        "conjugate": cfg.conjugate,
        "dataset_digest": dataset.dataset_digest(),
        "version": toolkit_version(),
        "checks_selected": list(selection),
        "overall": "pass" if overall else "fail",
    }
    return {"meta": meta, "checks": records}


def write_report(report: dict, path) -> None:
    with open(path, "w", encoding="utf-8") as fp:
        json.dump(report, fp, indent=2, sort_keys=False)
        fp.write("\n")


def report_passed(report: dict) -> bool:
    return report["meta"]["overall"] == "pass"
