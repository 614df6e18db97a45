"""Command-line interface.

Exit status: 0 when the check passes (or a rationalization was built), 1 when
it fails, 2 on unreadable or invalid input. Reports are JSON on stdout.
"""
from __future__ import annotations

import argparse
import sys

from . import serialization as ser
from .exceptions import (
    ConstructionFailedError,
    DimensionError,
    NotMLRError,
    RetryExhaustedError,
    SchemaError,
    ValidationError,
)
from .generators import KINDS, GeneratorConfig, gen_mlr_dataset, uniform_best_response_rule
from .lehmann import BOTH, FIRST, lehmann_compare, revealed_informedness_test
from .mlr import check_dataset_mlr
from .model import simulate
from .rationalizer import rationalize, scp_alone_feasible
from .verifier import verify

fmt = ser.fmt


def _mlr_json(report, d, row_labels=None, col_labels=None):
    rows = row_labels or d.states
    cols = col_labels or d.actions
    return {
        "verdict": report.verdict,
        "passed": report.passed,
        "violations": [
            {"states": [rows[r], rows[r2]], "actions": [cols[c], cols[c2]], "lhs": fmt(lhs), "rhs": fmt(rhs)}
            for r, r2, c, c2, lhs, rhs in report.violations
        ],
        "ties": len(report.ties),
    }


def _verification_json(report, d):
    opt = report.optimality
    mono = report.monotonicity
    return {
        "passed": report.passed,
        "rationalizes": report.rationalizes,
        "monotonicity": {
            "passed": mono.passed,
            "scp_violations": [
                {"actions": [d.actions[a], d.actions[b]], "states": [d.states[s], d.states[t]]}
                for a, b, s, t in mono.scp_violations
            ],
            "info_mlr": mono.mlr.verdict,
        },
        "bayes_plausibility": list(report.bayes_plausibility),
        "consistency": {
            "passed": report.consistency.passed,
            "prior_matches": report.consistency.prior_matches,
            "max_deviation": fmt(report.consistency.max_deviation),
        },
        "optimality": {
            "status": opt.status,
            "violations": [
                {"posterior": b, "chosen": d.actions[a], "better": d.actions[c]} for b, a, c in opt.violations
            ],
            "indifferent": [{"posterior": b, "chosen": d.actions[a]} for b, a in opt.weak_pairs],
        },
        "support_condition": {
            "passed": report.support_condition.passed,
            "mismatches": [
                {"posterior": b, "support": [d.actions[a] for a in sorted(s)], "best": [d.actions[a] for a in sorted(t)]}
                for b, s, t in report.support_condition.mismatches
            ],
        },
    }


def _emit(doc):
    sys.stdout.write(ser.dumps(doc))


def cmd_check_mlr(args):
    d = ser.load_dataset(args.file)
    report = check_dataset_mlr(d, strict=args.strict)
    _emit(_mlr_json(report, d))
    return 0 if report.passed else 1


def cmd_rationalize(args):
    d = ser.load_dataset(args.file)
    try:
        r = rationalize(d)
    except NotMLRError as exc:
        _emit({"rationalized": False, "reason": str(exc), "mlr": _mlr_json(exc.report, d)})
        return 1
    except ConstructionFailedError as exc:
        print(f"construction failed: {exc}", file=sys.stderr)
        _emit({"rationalized": False, "reason": str(exc)})
        return 1
    report = verify(d, r)
    if args.out:
        ser.save_rationalization(args.out, r, d)
    _emit({
        "rationalized": True,
        "rationalization": ser.rationalization_to_dict(r, d),
        "verification": _verification_json(report, d),
    })
    return 0 if report.passed else 1


def cmd_verify(args):
    d = ser.load_dataset(args.file)
    r = ser.load_rationalization(args.rationalization, prior=d.prior)
    report = verify(d, r)
    _emit(_verification_json(report, d))
    return 0 if report.passed else 1


def cmd_simulate(args):
    u, info, choice, states, actions = ser.load_dm(args.dm_file)
    if choice is None:
        choice = uniform_best_response_rule(u, info.posteriors)
    _emit(ser.dataset_to_dict(simulate(u, info, choice, states, actions)))
    return 0


def cmd_compare(args):
    d1 = ser.load_dataset(args.file1)
    d2 = ser.load_dataset(args.file2)
    try:
        report = lehmann_compare(d1, d2)
    except NotMLRError as exc:
        _emit({"direction": None, "reason": str(exc), "mlr": _mlr_json(exc.report, d1)})
        return 1
    doc = {
        "direction": report.direction,
        "transfer": None if report.transfer is None else [[fmt(x) for x in row] for row in report.transfer],
        "witnesses": [
            {"signal": d2.actions[s], "states": [d1.states[i], d1.states[k]]} for s, i, k in report.witnesses
        ],
    }
    code = 0 if report.direction in (FIRST, BOTH) else 1
    if args.samples and report.direction in (FIRST, BOTH):
        test = revealed_informedness_test(d1, d2, args.samples, args.seed)
        doc["informedness"] = {
            "samples": test.samples,
            "violations": test.violations,
            "min_margin": fmt(min(test.margins)) if test.margins else None,
        }
        code = 0 if test.passed else 1
    _emit(doc)
    return code


def cmd_gen(args):
    cfg = GeneratorConfig(args.n_states, args.m_actions, args.seed, args.denominator, args.kind)
    d = gen_mlr_dataset(cfg)
    if args.out:
        ser.save_dataset(args.out, d)
    _emit(ser.dataset_to_dict(d))
    return 0


def cmd_scp_screen(args):
    d = ser.load_dataset(args.file)
    pairs = scp_alone_feasible(d)
    doc = {
        "feasible": all(p.feasible for p in pairs),
        "pairs": [
            {
                "actions": [d.actions[p.low], d.actions[p.high]],
                "feasible": p.feasible,
                "crossings": list(p.crossings),
                "witness": None if p.witness is None else [fmt(x) for x in p.witness],
                "certificates": [] if p.feasible else [
                    {"crossing": c, "z": [fmt(x) for x in z]} for c, z in p.certificates
                ],
                "top_must_be_nonneg": p.top_must_be_nonneg,
                "bottom_must_be_nonpos": p.bottom_must_be_nonpos,
            }
            for p in pairs
        ],
    }
    _emit(doc)
    return 0 if doc["feasible"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mlrscp",
        description="Test choice data for single-crossing Bayesian rationalizability.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-mlr", help="MLR verdict for a dataset")
    p.add_argument("file")
    p.add_argument("--strict", action="store_true", help="require the strict verdict")
    p.set_defaults(func=cmd_check_mlr)

    p = sub.add_parser("rationalize", help="construct and audit a rationalization")
    p.add_argument("file")
    p.add_argument("--out", help="write the rationalization to this file")
    p.set_defaults(func=cmd_rationalize)

    p = sub.add_parser("verify", help="audit a rationalization file against a dataset")
    p.add_argument("file")
    p.add_argument("rationalization")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", help="data induced by a decision maker")
    p.add_argument("dm_file")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("compare", help="Lehmann comparison of two datasets")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--samples", type=int, default=0, help="sampled utilities for the value check")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("gen", help="random dataset")
    p.add_argument("--kind", choices=KINDS, default="mlr-strict")
    p.add_argument("--n-states", type=int, default=3)
    p.add_argument("--m-actions", type=int, default=3)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--denominator", type=int, default=12)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("scp-screen", help="single-crossing feasibility per action pair")
    p.add_argument("file")
    p.set_defaults(func=cmd_scp_screen)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SchemaError, ValidationError, DimensionError, RetryExhaustedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
