import argparse
import asyncio
import json
import logging
import sys
from pathlib import Path
from typing import Any, Optional, Sequence, Tuple

import split
import torus_data
from config import Settings
from dependencies import (
    get_class_table_dep,
    get_health_monitor_dep,
    get_root_system_dep,
    get_structure_constants_dep,
    get_tits_group_dep,
    get_weyl_group_dep,
)
from exceptions import E6Error, ResourceCapExceeded, VerificationError
from logging_setup import setup_logging
from models import jsonable
from suite import run_suite
from torusnorm import enumerate_torus, torus_order, torus_structure
from weyl import classify

logger = logging.getLogger(__name__)

Result = Tuple[Any, int]


def _odd(qs: Sequence[int]) -> list:
    return [q for q in qs if q % 2]


# --- subcommands ---

def cmd_suite(args: argparse.Namespace, settings: Settings) -> Result:
    report = asyncio.run(run_suite(settings))
    text = report.to_json()
    if settings.OUTPUT_PATH is not None:
        Path(settings.OUTPUT_PATH).write_text(text + "\n", encoding="utf-8")
        logger.info(f"[CLI] Report written to {settings.OUTPUT_PATH}")
    return text, report.exit_code


def cmd_decide_split(args: argparse.Namespace, settings: Settings) -> Result:
    mode = split.ADJOINT if args.adjoint else split.SC
    decision = split.decide_complement(get_weyl_group_dep(), get_class_table_dep(), args.class_index, args.q,
                                       mode, settings)
    return decision.model_dump(mode="json", by_alias=True), 0 if decision.matches else 1


def cmd_verify_complements(args: argparse.Namespace, settings: Settings) -> Result:
    qs = [args.q] if args.q is not None else _odd(settings.Q_VALUES)
    reports = []
    for q in qs:
        for c in settings.CLASSES:
            construction = torus_data.construction(c)
            if construction is None or not construction.applies(q) or q % 2 == 0:
                continue
            reports.append(split.verify_complement(get_weyl_group_dep(), get_class_table_dep(), c, q, settings))
    return [r.model_dump(mode="json", by_alias=True) for r in reports], 0 if all(r.ok for r in reports) else 1


def cmd_verify_lifts(args: argparse.Namespace, settings: Settings) -> Result:
    qs = [args.q] if args.q is not None else settings.Q_VALUES
    reports = [
        split.verify_lift(get_weyl_group_dep(), get_class_table_dep(), c, q, settings)
        for q in qs for c in settings.CLASSES
    ]
    return [r.model_dump(mode="json", by_alias=True) for r in reports], 0 if all(r.ok for r in reports) else 1


def cmd_obstructions(args: argparse.Namespace, settings: Settings) -> Result:
    out, code = [], 0
    for c in sorted(torus_data.OBSTRUCTIONS):
        for mode in settings.MODES:
            try:
                result = split.obstruction_check(get_weyl_group_dep(), get_class_table_dep(), c, args.q, mode,
                                                 settings)
                out.append(result.model_dump(mode="json", by_alias=True))
            except VerificationError as e:
                out.append({"class": c, "q": args.q, "mode": mode, "error": str(e)})
                code = 1
    return out, code


def cmd_torus(args: argparse.Namespace, settings: Settings) -> Result:
    table = get_class_table_dep()
    w = table.representative(args.class_index)
    row = table.rows[args.class_index - 1]
    payload: dict = {
        "class": args.class_index,
        "q": args.q,
        "order": torus_order(w, args.q),
        "expected_order": row.torus_order(args.q),
    }
    if args.structure or args.enumerate:
        ctx = split.context_at(get_weyl_group_dep(), args.q, w.order(), settings.MAX_FIELD_SIZE)
        structure = torus_structure(w, args.q, ctx)
        payload["invariant_factors"] = structure.nontrivial_factors
        payload["ambient_k"] = structure.ambient_k
        payload["generators"] = [list(g.exps) for g in structure.generators]
        if args.enumerate:
            payload["elements"] = [list(t.exps) for t in enumerate_torus(structure, settings.MAX_ENUMERATION)]
    return payload, 0 if payload["order"] == payload["expected_order"] else 1


def cmd_weyl(args: argparse.Namespace, settings: Settings) -> Result:
    group = get_weyl_group_dep()
    w = group.from_word(args.word)
    index, x = classify(group, get_class_table_dep(), w)
    return {"word": args.word, "order": w.order(), "class": index, "conjugator": x.word_str()}, 0


def cmd_tits(args: argparse.Namespace, settings: Settings) -> Result:
    tits = get_tits_group_dep()
    m = tits.word(args.word)
    return {"word": args.word, **tits.describe(m, get_weyl_group_dep())}, 0


def cmd_dump_roots(args: argparse.Namespace, settings: Settings) -> Result:
    rs = get_root_system_dep()
    return {"roots": rs.to_json(), "structure_constants": get_structure_constants_dep().to_json(rs)}, 0


def cmd_health(args: argparse.Namespace, settings: Settings) -> Result:
    return get_health_monitor_dep().get_stats(), 0


COMMANDS = {
    "suite": cmd_suite,
    "decide-split": cmd_decide_split,
    "verify-complements": cmd_verify_complements,
    "verify-lifts": cmd_verify_lifts,
    "obstructions": cmd_obstructions,
    "torus": cmd_torus,
    "weyl": cmd_weyl,
    "tits": cmd_tits,
    "dump-roots": cmd_dump_roots,
    "health": cmd_health,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Maximal tori of E6 and their normalizers")
    parser.add_argument("--config", type=Path, default=None, help="JSON config file.")
    parser.add_argument("--log-level", default=None, help="Overrides LOG_LEVEL.")
    subparsers = parser.add_subparsers(dest="command", required=True)

    suite_parser = subparsers.add_parser("suite", help="Run the reproducibility suite.")
    suite_parser.add_argument("--q", type=int, nargs="+", default=None)
    suite_parser.add_argument("--classes", type=int, nargs="*", default=None)
    suite_parser.add_argument("--modes", nargs="+", default=None)
    suite_parser.add_argument("--checks", nargs="+", default=None)
    suite_parser.add_argument("--output", type=Path, default=None)
    suite_parser.add_argument("--workers", type=int, default=None)
    suite_parser.add_argument("--timings", action="store_true", default=None)

    decide = subparsers.add_parser("decide-split", help="Decide whether T has a complement in N.")
    decide.add_argument("--class", dest="class_index", type=int, required=True)
    decide.add_argument("--q", type=int, required=True)
    decide.add_argument("--adjoint", action="store_true")

    complements = subparsers.add_parser("verify-complements", help="Check the explicit complements.")
    complements.add_argument("--q", type=int, default=None)

    lifts = subparsers.add_parser("verify-lifts", help="Check lifts of order |w|.")
    lifts.add_argument("--q", type=int, default=None)

    obstructions = subparsers.add_parser("obstructions", help="Solve the obstruction subsystems.")
    obstructions.add_argument("--q", type=int, required=True)

    torus = subparsers.add_parser("torus", help="Order and structure of a finite torus.")
    torus.add_argument("--class", dest="class_index", type=int, required=True)
    torus.add_argument("--q", type=int, required=True)
    torus.add_argument("--structure", action="store_true")
    torus.add_argument("--enumerate", action="store_true")

    weyl = subparsers.add_parser("weyl", help="Weyl group utilities.")
    weyl_sub = weyl.add_subparsers(dest="weyl_command", required=True)
    weyl_classify = weyl_sub.add_parser("classify", help="Conjugacy class of a word in w_1..w_36.")
    weyl_classify.add_argument("word")

    tits = subparsers.add_parser("tits", help="Evaluate a word in h_i and n_r.")
    tits.add_argument("word")

    subparsers.add_parser("dump-roots", help="Positive roots and structure constants.")
    subparsers.add_parser("health", help="Process stats.")
    return parser


def load_settings(args: argparse.Namespace) -> Settings:
    overrides = dict(LOG_LEVEL=args.log_level)
    if args.command == "suite":
        overrides.update(
            Q_VALUES=args.q,
            CLASSES=args.classes,
            MODES=args.modes,
            CHECKS=args.checks,
            OUTPUT_PATH=args.output,
            WORKERS=args.workers,
            INCLUDE_TIMINGS=args.timings,
        )
    return Settings.from_file(args.config, **overrides)


def _main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        settings = load_settings(args)
    except (FileNotFoundError, ValueError) as e:
        print(json.dumps({"error": str(e)}, indent=2))
        return 1
    # stdout carries the JSON payload
    setup_logging(settings.LOG_LEVEL, sys.stderr)
    logger.debug(f"[CLI] Running {args.command}")

    try:
        payload, code = COMMANDS[args.command](args, settings)
    except ResourceCapExceeded as e:
        payload, code = {"skipped": str(e), **e.context}, 2
    except E6Error as e:
        logger.error(f"[CLI] {args.command} failed: {e}", exc_info=True)
        payload, code = {"error": f"{type(e).__name__}: {e}", **e.context}, 1
    except ValueError as e:
        payload, code = {"error": str(e)}, 1

    print(payload if isinstance(payload, str) else json.dumps(jsonable(payload), indent=2))
    return code


if __name__ == "__main__":
    raise SystemExit(_main())
