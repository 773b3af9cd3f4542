"""Command-line entrypoints."""
from __future__ import annotations

import argparse
import logging
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from pydantic import ValidationError

from .config import RunConfig, load_env, load_run_config, resolve_config
from .curve import HermitianCurve
from .errors import HermitianError, ScaleExceeded
from .ff import field_create, is_irreducible, split_prime_power, subfield_elements
from .group import group_order_check
from .invariants import (
    degree_census,
    divisor_census,
    symbolic_consistency,
    symbolic_dm_identity,
    verify_dickson_invariance,
    verify_invariance,
    verify_pgl2_invariance,
    zero_locus,
)
from .quotient import elimination_check, plane_model_check
from .report import ReportWriter, VerificationReport, report_name, resolve_reports_dir, run_document

logging.basicConfig(level=logging.INFO,
                    format="[%(asctime)s] %(levelname)s %(name)s: %(message)s")
LOGGER = logging.getLogger(__name__)

Skipped = List[Dict[str, Any]]
Runner = Callable[[RunConfig, Skipped], List[VerificationReport]]


def run_field_info(config: RunConfig, skipped: Skipped) -> List[VerificationReport]:
    m = config.ambient_degree(1)
    spec = field_create(config.p, config.h, m)
    observed: Dict[str, Any] = {
        "order": spec.order,
        "modulus_irreducible": is_irreducible(spec.modulus, spec.p),
        "fq2_elements": len(subfield_elements(spec, 2 * spec.h)),
    }
    return [VerificationReport.compare(
        "field_info",
        spec.q,
        {"order": spec.p ** m, "modulus_irreducible": True, "fq2_elements": spec.q ** 2},
        observed,
        params={"field": spec.to_dict()},
    )]


def run_count_points(config: RunConfig, skipped: Skipped) -> List[VerificationReport]:
    curve = HermitianCurve(config.p, config.h)
    return [curve.count_check(config.k, workers=config.workers, progress=config.progress,
                              max_order=config.budgets.max_enumeration_order)]


def run_group_order(config: RunConfig, skipped: Skipped) -> List[VerificationReport]:
    return [group_order_check(config.p, config.h, max_q=config.budgets.max_group_q)]


def run_verify_invariance(config: RunConfig, skipped: Skipped) -> List[VerificationReport]:
    s = config.samples
    return [verify_invariance(
        config.p, config.h, config.ambient_degree(4),
        n_points=s.points, n_elements=s.elements, seed=config.seed, word_length=s.word_length,
        workers=config.workers, progress=config.progress, min_value_fraction=s.min_value_fraction,
    )]


def run_verify_pgl2(config: RunConfig, skipped: Skipped) -> List[VerificationReport]:
    return [verify_pgl2_invariance(config.p, config.h, config.samples.pgl2_arguments, config.seed,
                                   progress=config.progress)]


def run_verify_dickson(config: RunConfig, skipped: Skipped) -> List[VerificationReport]:
    s = config.samples
    return [verify_dickson_invariance(config.p, config.h, config.ambient_degree(4), s.points,
                                      s.dickson_matrices, config.seed, progress=config.progress)]


def run_symbolic_dm(config: RunConfig, skipped: Skipped) -> List[VerificationReport]:
    cap = config.budgets.max_symbolic_q
    return [symbolic_dm_identity(m, config.p, config.h, max_q=cap) for m in (4, 6)]


def run_symbolic_consistency(config: RunConfig, skipped: Skipped) -> List[VerificationReport]:
    return [symbolic_consistency(config.p, config.h, max_q=config.budgets.max_symbolic_q)]


def run_degree_census(config: RunConfig, skipped: Skipped) -> List[VerificationReport]:
    return [degree_census(config.p, config.h, max_q=config.budgets.max_symbolic_q)]


def run_zero_locus(config: RunConfig, skipped: Skipped) -> List[VerificationReport]:
    return [zero_locus(config.p, config.h, max_q=config.budgets.max_symbolic_q, workers=config.workers)]


def run_divisor_census(config: RunConfig, skipped: Skipped) -> List[VerificationReport]:
    return [divisor_census(config.p, config.h, max_q=config.budgets.max_group_q, workers=config.workers)]


def run_quotient(config: RunConfig, skipped: Skipped) -> List[VerificationReport]:
    budget = config.budgets.sylvester_budget
    reports = [elimination_check(config.p, config.h, budget=budget)]
    try:
        reports.append(plane_model_check(config.p, config.h, config.samples.soundness_points, config.seed,
                                         m=config.m, budget=budget))
    except ScaleExceeded as exc:
        LOGGER.warning("Plane model skipped: %s", exc)
        skipped.append({"check": "plane_model_soundness", "reason": str(exc)})
    return reports


RUNNERS: Dict[str, Runner] = {
    "field_info": run_field_info,
    "count_points": run_count_points,
    "group_order": run_group_order,
    "verify_invariance": run_verify_invariance,
    "verify_pgl2": run_verify_pgl2,
    "verify_dickson": run_verify_dickson,
    "symbolic_dm_identity": run_symbolic_dm,
    "symbolic_consistency": run_symbolic_consistency,
    "degree_census": run_degree_census,
    "zero_locus": run_zero_locus,
    "divisor_census": run_divisor_census,
    "quotient_eliminate": run_quotient,
}

COMMANDS: Dict[str, Sequence[str]] = {
    "field-info": ("field_info",),
    "count-points": ("count_points",),
    "group-order": ("group_order",),
    "verify-invariance": ("verify_invariance",),
    "verify-pgl2": ("verify_pgl2",),
    "verify-dickson": ("verify_dickson",),
    "verify-symbolic": ("symbolic_dm_identity", "symbolic_consistency"),
    "degree-census": ("degree_census",),
    "zero-locus": ("zero_locus",),
    "divisor-census": ("divisor_census",),
    "quotient-eliminate": ("quotient_eliminate",),
}


def _flag_values(args: argparse.Namespace) -> Dict[str, Any]:
    p, h = args.p, args.h
    if args.q is not None:
        p, h = split_prime_power(args.q)
    return {
        "p": p,
        "h": h,
        "m": args.m,
        "k": args.k,
        "seed": args.seed,
        "workers": args.workers,
        "progress": args.progress or None,
        "output_dir": args.output,
        "samples": {
            "points": args.points,
            "elements": args.elements,
            "word_length": args.word_length,
        },
    }


def cmd_checks(args: argparse.Namespace, config: RunConfig) -> Tuple[List[VerificationReport], Skipped]:
    """Run the checks mapped to this command; ``all`` continues past budget skips."""
    skipped: Skipped = []
    reports: List[VerificationReport] = []
    if args.command == "all":
        for name in config.checks:
            try:
                reports.extend(RUNNERS[name](config, skipped))
            except ScaleExceeded as exc:
                LOGGER.warning("%s skipped: %s", name, exc)
                skipped.append({"check": name, "reason": str(exc)})
    else:
        for name in COMMANDS[args.command]:
            reports.extend(RUNNERS[name](config, skipped))
    return reports, skipped


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--q", type=int, help="Prime power q (overrides --p/--h)")
    parser.add_argument("--p", type=int, help="Characteristic")
    parser.add_argument("--h", type=int, help="q = p^h")
    parser.add_argument("--m", type=int, help="Ambient degree of F_{p^m}")
    parser.add_argument("--k", type=int, help="Count points over F_{q^(2k)}")
    parser.add_argument("--points", type=int, help="Sampled curve points")
    parser.add_argument("--elements", type=int, help="Sampled group elements")
    parser.add_argument("--seed", type=int, help="Seed for the PCG64 generator")
    parser.add_argument("--word-length", type=int, help="Generators per random group element")
    parser.add_argument("--workers", type=int, help="Worker threads for sweeps")
    parser.add_argument("--progress", action="store_true", help="Show progress bars")
    parser.add_argument("--config", help="YAML run file")
    parser.add_argument("--output", help="Report directory (overrides $HERMITINV_REPORTS_DIR)")
    parser.add_argument("--no-timestamp", action="store_true",
                        help="Omit the timestamp so identical runs give identical reports")
    parser.add_argument("--debug", action="store_true", help="Enable DEBUG logging for hermitinv modules")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hermitinv", description="Hermitian curve invariant checks")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "field-info": "Describe the field F_{p^m} and its modulus",
        "count-points": "Enumerate H_q over F_{q^(2k)} and compare counts",
        "group-order": "Close the PGU(3,q) generators and count",
        "verify-invariance": "Sample points and group elements; t and u must agree on orbits",
        "verify-pgl2": "PGL(2,q) invariance of the one-variable invariant",
        "verify-dickson": "Dickson determinants under GL(3,q^2)",
        "verify-symbolic": "Symbolic D_m identity and t/u/t_x/t_y congruences",
        "degree-census": "Reduced degrees of t_x, t_y and the PGL(2,q) invariant",
        "zero-locus": "Roots of the reduced numerators against Delta",
        "divisor-census": "Degree bookkeeping of the Dickson divisors",
        "quotient-eliminate": "Resultant elimination and plane-model soundness",
        "all": "Run every configured check that fits the budgets",
    }
    for name, text in helps.items():
        cmd = sub.add_parser(name, help=text)
        _add_common(cmd)
        cmd.set_defaults(func=cmd_checks)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.debug:
        logging.getLogger("hermitinv").setLevel(logging.DEBUG)
        LOGGER.info("Debug logging enabled for hermitinv.*")

    try:
        load_env(args.config)
        file_config = load_run_config(args.config) if args.config else None
        config = resolve_config(file_config, _flag_values(args))
        reports, skipped = args.func(args, config)
    except (HermitianError, ValidationError, FileNotFoundError) as exc:
        LOGGER.error("%s", exc)
        return 2

    m = config.m if config.m is not None else 2 * config.h
    doc = run_document(
        args.command,
        config.seed,
        field_create(config.p, config.h, m),
        reports,
        skipped=skipped,
        timestamp=not args.no_timestamp,
    )
    writer = ReportWriter(resolve_reports_dir(config.reports_dir()))
    writer.write(report_name(args.command, config.q, config.seed), doc)
    failed = [r.check for r in reports if not r.passed]
    if failed:
        LOGGER.error("Failed checks: %s", ", ".join(failed))
        return 1
    LOGGER.info("All %d checks passed", len(reports))
    return 0


if __name__ == "__main__":
    sys.exit(main())
