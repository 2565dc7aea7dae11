import argparse
import json
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))

from drtcalc.conf import DEFAULT_HORIZON, DEFAULT_MAX_STATES, DEFAULT_PAR_PARAMS, OUTPUT_DIR
from drtcalc.par import ParParams
from drtcalc.pipeline import PAR_CHECKS, ParPipeline
from drtcalc.reporting import ReportManager, jsonable
from drtcalc.utils import setup_logging


def parse_args() -> argparse.Namespace:
    """Parse command line arguments."""
    parser = argparse.ArgumentParser(description="Run the PAR protocol analyses over a sweep of time-outs")
    parser.add_argument("--data", type=int, default=DEFAULT_PAR_PARAMS["data_count"], help="Number of data (default: 1)")
    parser.add_argument("--tS", type=int, default=DEFAULT_PAR_PARAMS["t_s"])
    parser.add_argument("--tR", type=int, default=DEFAULT_PAR_PARAMS["t_r"])
    parser.add_argument("--tK", type=int, default=DEFAULT_PAR_PARAMS["t_k"])
    parser.add_argument("--tL", type=int, default=DEFAULT_PAR_PARAMS["t_l"])
    parser.add_argument("--tRp", type=int, default=DEFAULT_PAR_PARAMS["t_r_prime"])
    parser.add_argument("--timeouts", type=int, nargs="+", default=[4, 5, 6], help="Sender time-outs to sweep")
    parser.add_argument("--horizon", type=int, default=DEFAULT_HORIZON)
    parser.add_argument("--max_states", type=int, default=DEFAULT_MAX_STATES)
    parser.add_argument("--output_dir", type=str, default=OUTPUT_DIR, help="Directory for run reports")
    parser.add_argument("--log_level", type=str, default="INFO")
    return parser.parse_args()


def main() -> None:
    args = parse_args()
    setup_logging(args.log_level)

    summary = {}
    for t_s_prime in args.timeouts:
        params = ParParams(
            data_count=args.data, t_s=args.tS, t_r=args.tR, t_k=args.tK, t_l=args.tL,
            t_s_prime=t_s_prime, t_r_prime=args.tRp,
        )
        reports = ReportManager(args.output_dir, run_name=f"par_tsp{t_s_prime}_d{args.data}")
        pipeline = ParPipeline(params, PAR_CHECKS, args.horizon, args.max_states, reports)
        results = pipeline.run()
        summary[t_s_prime] = {
            "functional": results["functional"].answer,
            "passed": pipeline.passed(),
        }
        print(f"t_s_prime={t_s_prime}: functional={results['functional'].answer} passed={pipeline.passed()}")

    print(json.dumps(jsonable(summary), indent=2))


if __name__ == "__main__":
    main()
