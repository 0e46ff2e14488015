"""Command-line front end: one subcommand per check, plus `equations`.

Exit codes: 0 when every selected check passes (skips allowed), 1 when any
check fails, 2 when the configuration is unusable before any check runs.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import certify, dataset

_COMMAND_CHECKS = {
    "hilbert": ("hilbert_series",),
    "smoothness": ("smoothness",),
    "invariance": ("group_invariance",),
    "curve-c": ("curve_c",),
    "sextic": ("sextic_symbolic",),
    "automorphism": ("automorphism_order3",),
    "ztransport": ("z_transport",),
    "lattice": ("lattice_search",),
    "all": certify.EXTENDED_CHECKS,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--prime", type=int, default=263, help="ambient prime p (default 263)"
    )
    common.add_argument(
        "--sqrt-minus7",
        type=int,
        default=None,
        metavar="R",
        help="residue with R^2 = -7 mod p (default: smallest such residue)",
    )
    common.add_argument("--seed", type=int, default=42, help="sampling seed")
    common.add_argument(
        "--samples", type=int, default=100, help="surface sample count"
    )
    common.add_argument(
        "--gb-seconds",
        type=float,
        default=None,
        metavar="S",
        help="wall-time budget per heavyweight check (skip when exceeded)",
    )
    common.add_argument(
        "--gb-pairs",
        type=int,
        default=None,
        metavar="N",
        help="S-pair budget per heavyweight check (skip when exceeded)",
    )
    common.add_argument(
        "--report",
        default=None,
        metavar="PATH",
        help="write the JSON report here instead of stdout",
    )
    common.add_argument(
        "--emit-conjugate",
        action="store_true",
        help="apply w -> -w to the dataset before running",
    )

    parser = argparse.ArgumentParser(
        prog="fppcert",
        description="Re-run the verification suite for the 84-cubic surface "
        "and its sextic double-cover model; emit machine-readable "
        "certificates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser(
        "equations",
        parents=[common],
        help="print the 84 cubics, one canonical line each",
    )
    descriptions = {
        "hilbert": "Hilbert series of the quotient ring",
        "smoothness": "Jacobian minor chain (three Hilbert drops)",
        "invariance": "group action on the span of the 84 cubics",
        "curve-c": "the degree-18 curve and its doubled structure",
        "sextic": "symbolic identities of the sextic model",
        "automorphism": "sampled order-3 automorphism checks",
        "ztransport": "sampled seventh-root transport checks",
        "lattice": "24-curve intersection lattice search",
        "all": "every check, extended selection",
    }
    for name, help_text in descriptions.items():
        sub.add_parser(name, parents=[common], help=help_text)
    return parser


def _config_from_args(args: argparse.Namespace) -> certify.RunConfig:
    checks = _COMMAND_CHECKS.get(args.command)
    return certify.RunConfig(
        prime=args.prime,
        sqrt_minus7=args.sqrt_minus7,
        seed=args.seed,
        samples=args.samples,
        gb_seconds=args.gb_seconds,
        gb_pairs=args.gb_pairs,
        report_path=args.report,
        checks=checks,
        conjugate=args.emit_conjugate,
    )


def _emit_equations(cfg: certify.RunConfig, out) -> None:
    if cfg.conjugate:
        lines = "".join(
            dataset.canonical_serialize(f) + "\n"
            for f in dataset.conjugate_equations()
        )
    else:
        lines = dataset.dataset_text()
    out.write(lines)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config_from_args(args).resolved()
    except certify.ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2

    if args.command == "equations":
        _emit_equations(cfg, sys.stdout)
        return 0

    report = certify.run_all(cfg)
    if cfg.report_path:
        certify.write_report(report, cfg.report_path)
        for rec in report["checks"]:
            print(f"{rec['id']}: {rec['status']} ({rec['ms']} ms)")
        print(f"overall: {report['meta']['overall']}")
    else:
        json.dump(report, sys.stdout, indent=2)
        sys.stdout.write("\n")
    return 0 if certify.report_passed(report) else 1
