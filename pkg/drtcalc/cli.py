"""
Command-line surface.

Exit codes: 0 on success (all checks pass), 1 on a failed check, 2 on errors.
"""
import argparse
import json
import logging
import sys
from typing import Any, List, Optional

from .conf import DEFAULT_HORIZON, DEFAULT_MAX_STATES, DEFAULT_PAR_PARAMS, DEFAULT_SAMPLES, DEFAULT_SEED
from .dsl import parse_file, print_model, print_term
from .errors import DrtError
from .harness import axiom_ids
from .par import ParParams
from .pipeline import PAR_CHECKS, AxiomSuite, ParPipeline
from .reporting import ReportManager, jsonable
from .rewrite import linearize, to_basic_term, to_ts_basic
from .runner import CheckRunner
from .statespace import dump, explore
from .terms import Rec
from .utils import fix_seed, setup_logging

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILED, EXIT_ERROR = 0, 1, 2


def _emit(payload: Any) -> None:
    print(json.dumps(jsonable(payload), indent=2, ensure_ascii=False))


def cmd_parse(args) -> int:
    model = parse_file(args.file)
    if args.pretty:
        print(print_model(model), end="")
    else:
        _emit(model.summary())
    return EXIT_OK


def cmd_lts(args) -> int:
    model = parse_file(args.file)
    l = explore(model.proc(args.proc), model.table, args.max_states)
    text = dump(l)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as f:
            f.write(text)
        logger.info(f"wrote {len(l)} states to {args.output}")
    else:
        print(text, end="")
    return EXIT_OK


def cmd_normalize(args) -> int:
    model = parse_file(args.file)
    t = model.proc(args.proc)
    if args.form == "basic":
        print(print_term(to_basic_term(t, model.table), model.specs))
    elif args.form == "ts-basic":
        print(print_term(to_ts_basic(t, model.table), model.specs))
    else:
        spec, root = linearize(t, model.table, args.max_states)
        print(print_term(Rec(root, spec)))
    return EXIT_OK


def cmd_check(args) -> int:
    model = parse_file(args.file)
    runner = CheckRunner(model, args.max_states)
    results = runner.run()
    _emit([r.to_dict(model.specs) for r in results])
    return EXIT_OK if runner.all_passed(results) else EXIT_FAILED


def cmd_par(args) -> int:
    params = ParParams(
        data_count=args.data, t_s=args.tS, t_r=args.tR, t_k=args.tK, t_l=args.tL,
        t_s_prime=args.tSp, t_r_prime=args.tRp,
    )
    checks = list(PAR_CHECKS) if args.check == "all" else [args.check]
    reports = ReportManager(args.output_dir) if args.output_dir else None
    pipeline = ParPipeline(params, checks, args.horizon, args.max_states, reports)
    results = pipeline.run()
    payload = {"params": params.to_dict(), "results": results, "passed": pipeline.passed()}
    if args.report:
        with open(args.report, "w", encoding="utf-8") as f:
            json.dump(jsonable(payload), f, indent=2, ensure_ascii=False)
    _emit(payload)
    if args.check == "functional":
        return EXIT_OK if results["functional"].holds else EXIT_FAILED
    return EXIT_OK if pipeline.passed() else EXIT_FAILED


def cmd_axioms(args) -> int:
    fix_seed(args.seed)
    ids = None if args.axiom == "all" else [args.axiom]
    reports = ReportManager(args.output_dir) if args.output_dir else None
    suite = AxiomSuite(args.samples, args.seed, ids, include_meta=not args.no_meta, reports=reports)
    frame = suite.run()
    print(frame.to_string(index=False))
    for tally in suite.tallies:
        for failure in tally.failures:
            print(f"{tally.id}: {json.dumps(jsonable(failure), ensure_ascii=False)}")
    return EXIT_OK if suite.passed() else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="drtcalc", description="Discrete relative time process algebra workbench")
    parser.add_argument("--log-level", default="WARNING", help="Logging level (default: WARNING)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="Parse a model file and print a summary")
    p.add_argument("file")
    p.add_argument("--pretty", action="store_true", help="Print the model back in concrete syntax")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("lts", help="Explore the state space of a proc")
    p.add_argument("file")
    p.add_argument("--proc", required=True)
    p.add_argument("--max-states", type=int, default=DEFAULT_MAX_STATES)
    p.add_argument("-o", "--output", help="Write the dump to this file")
    p.set_defaults(func=cmd_lts)

    p = sub.add_parser("normalize", help="Print a normal form of a proc")
    p.add_argument("file")
    p.add_argument("--proc", required=True)
    p.add_argument("--form", choices=["basic", "ts-basic", "linear"], required=True)
    p.add_argument("--max-states", type=int, default=DEFAULT_MAX_STATES)
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("check", help="Run the check directives of a model")
    p.add_argument("file")
    p.add_argument("--max-states", type=int, default=DEFAULT_MAX_STATES)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("par", help="PAR protocol analyses")
    p.add_argument("--data", type=int, default=DEFAULT_PAR_PARAMS["data_count"], help="Number of data |D|")
    p.add_argument("--tS", type=int, default=DEFAULT_PAR_PARAMS["t_s"])
    p.add_argument("--tR", type=int, default=DEFAULT_PAR_PARAMS["t_r"])
    p.add_argument("--tK", type=int, default=DEFAULT_PAR_PARAMS["t_k"])
    p.add_argument("--tL", type=int, default=DEFAULT_PAR_PARAMS["t_l"])
    p.add_argument("--tSp", type=int, default=DEFAULT_PAR_PARAMS["t_s_prime"], help="Sender time-out")
    p.add_argument("--tRp", type=int, default=DEFAULT_PAR_PARAMS["t_r_prime"])
    p.add_argument("--check", choices=list(PAR_CHECKS) + ["all"], default="all")
    p.add_argument("--horizon", type=int, default=DEFAULT_HORIZON)
    p.add_argument("--max-states", type=int, default=DEFAULT_MAX_STATES)
    p.add_argument("--report", help="Write the verdict report JSON to this file")
    p.add_argument("--output-dir", help="Also keep a run directory with config snapshot")
    p.set_defaults(func=cmd_par)

    p = sub.add_parser("axioms", help="Sampled axiom soundness and meta-properties")
    p.add_argument("--axiom", default="all", help=f"Axiom id or 'all' ({', '.join(axiom_ids())})")
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--no-meta", action="store_true", help="Skip the meta-properties")
    p.add_argument("--output-dir", help="Keep a run directory with JSON/CSV tallies")
    p.set_defaults(func=cmd_axioms)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.log_level)
    try:
        return args.func(args)
    except (DrtError, OSError, KeyError) as exc:
        message = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {message}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
