import argparse
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))

from drtcalc.conf import DEFAULT_SAMPLES, DEFAULT_SEED, INSTANCE_STATE_BOUND, OUTPUT_DIR
from drtcalc.pipeline import AxiomSuite
from drtcalc.reporting import ReportManager
from drtcalc.utils import fix_seed, setup_logging


def parse_args() -> argparse.Namespace:
    """Parse command line arguments."""
    parser = argparse.ArgumentParser(description="Sample axiom soundness and meta-properties")
    parser.add_argument("--samples", type=int, default=DEFAULT_SAMPLES, help="Instances per axiom (default: 100)")
    parser.add_argument("--seeds", type=int, nargs="+", default=[DEFAULT_SEED], help="One suite run per seed")
    parser.add_argument("--ids", type=str, nargs="*", default=None, help="Axiom ids (default: all plus meta-properties)")
    parser.add_argument("--max_states", type=int, default=INSTANCE_STATE_BOUND)
    parser.add_argument("--output_dir", type=str, default=OUTPUT_DIR)
    parser.add_argument("--log_level", type=str, default="INFO")
    return parser.parse_args()


def main() -> None:
    args = parse_args()
    setup_logging(args.log_level)

    failed = False
    for seed in args.seeds:
        fix_seed(seed)
        reports = ReportManager(args.output_dir, run_name=f"axioms_seed{seed}")
        suite = AxiomSuite(args.samples, seed, args.ids or None, max_states=args.max_states, reports=reports)
        frame = suite.run()
        print(f"\n=== seed {seed} ===")
        print(frame.to_string(index=False))
        failed |= not suite.passed()

    sys.exit(1 if failed else 0)


if __name__ == "__main__":
    main()
