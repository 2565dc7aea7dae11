import logging
from typing import Any, Dict, Iterable, List, Optional

import pandas as pd

from .conf import DEFAULT_HORIZON, DEFAULT_MAX_STATES, DEFAULT_SAMPLES, DEFAULT_SEED, INSTANCE_STATE_BOUND
from .harness import check_meta_properties, run_axiom_suite
from .harness.tally import Tally
from .par import (
    ParParams, check_functional_correctness, check_performance_spec, check_spec_match, timing_report,
)
from .reporting import ReportManager, tally_frame

logger = logging.getLogger(__name__)

PAR_CHECKS = ("functional", "performance", "timing", "spec-match")


class ParPipeline:
    """
    Runs the PAR analyses for one parameter set:
    1. Functional correctness against the buffer
    2. Performance comparisons with the timed reference specifications
    3. Delivery timing
    4. Fidelity of the reference specifications
    Steps 2 to 4 need a time-out longer than a protocol cycle and are skipped otherwise.
    """

    def __init__(
        self,
        params: ParParams,
        checks: Iterable[str] = PAR_CHECKS,
        horizon: int = DEFAULT_HORIZON,
        max_states: int = DEFAULT_MAX_STATES,
        reports: Optional[ReportManager] = None,
    ):
        unknown = [c for c in checks if c not in PAR_CHECKS]
        if unknown:
            raise ValueError(f"unknown PAR checks {unknown}; available: {', '.join(PAR_CHECKS)}")
        self.params = params
        self.checks = list(checks)
        self.horizon = horizon
        self.max_states = max_states
        self.reports = reports
        self.results: Dict[str, Any] = {}

    def run(self) -> Dict[str, Any]:
        logger.info("=" * 50)
        logger.info(f"  PAR analysis: {self.params}")
        logger.info("=" * 50)
        steps = {
            "functional": self.step_functional,
            "performance": self.step_performance,
            "timing": self.step_timing,
            "spec-match": self.step_spec_match,
        }
        try:
            for name in self.checks:
                if name != "functional" and not self.params.cycle_ok and len(self.checks) > 1:
                    logger.warning(f"[{name}] skipped: premature time-out (t_s_prime={self.params.t_s_prime})")
                    self.results[name] = {"skipped": "t_s_prime does not exceed the protocol cycle"}
                    continue
                steps[name]()
            if self.reports is not None:
                self.reports.log_config({"par_params": self.params.to_dict(), "checks": self.checks,
                                         "horizon": self.horizon, "max_states": self.max_states})
                self.reports.save_report("par", self.results)
            logger.info("=" * 50)
            logger.info("  PAR analysis completed")
            logger.info("=" * 50)
        except Exception as e:
            logger.error(f"PAR analysis failed: {e}")
            raise
        return self.results

    def step_functional(self):
        logger.info("[functional] system vs one-place buffer")
        self.results["functional"] = check_functional_correctness(self.params, self.max_states)

    def step_performance(self):
        logger.info("[performance] system vs timed reference specifications")
        self.results["performance"] = check_performance_spec(self.params, self.max_states)

    def step_timing(self):
        logger.info(f"[timing] delivery delays and gaps up to horizon {self.horizon}")
        self.results["timing"] = timing_report(self.params, self.horizon, self.max_states)

    def step_spec_match(self):
        logger.info("[spec-match] reference specifications")
        self.results["spec-match"] = check_spec_match(self.params, self.max_states)

    def passed(self) -> bool:
        """Every verdict that ran came out as expected for these parameters."""
        ok = True
        functional = self.results.get("functional")
        if functional is not None:
            ok &= functional.holds == self.params.cycle_ok
        performance = self.results.get("performance")
        if performance is not None and not isinstance(performance, dict):
            ok &= performance.as_expected
        timing = self.results.get("timing")
        if timing is not None and "skipped" not in timing:
            ok &= timing["delivery_delays"] == timing["expected_delivery_delays"]
            ok &= timing["post_delivery_gaps"] == timing["expected_post_delivery_gaps"]
        match = self.results.get("spec-match")
        if match is not None and "skipped" not in match:
            ok &= all(v.holds for v in match.values())
        return bool(ok)


class AxiomSuite:
    """Axiom soundness and meta-property sampling with one seed."""

    def __init__(
        self,
        samples: int = DEFAULT_SAMPLES,
        seed: int = DEFAULT_SEED,
        ids: Optional[List[str]] = None,
        include_meta: bool = True,
        max_states: int = INSTANCE_STATE_BOUND,
        reports: Optional[ReportManager] = None,
    ):
        self.samples = samples
        self.seed = seed
        self.ids = ids
        self.include_meta = include_meta
        self.max_states = max_states
        self.reports = reports
        self.tallies: List[Tally] = []

    def run(self) -> pd.DataFrame:
        logger.info("=" * 50)
        logger.info(f"  Axiom suite: {self.samples} samples, seed {self.seed}")
        logger.info("=" * 50)
        try:
            self.tallies = run_axiom_suite(self.ids, self.samples, self.seed, self.max_states)
            if self.include_meta and self.ids is None:
                logger.info("[meta] sampled meta-properties")
                self.tallies += check_meta_properties(self.samples, self.seed, max_states=self.max_states)
            if self.reports is not None:
                self.reports.log_config({"samples": self.samples, "seed": self.seed, "ids": self.ids,
                                         "include_meta": self.include_meta, "max_states": self.max_states})
                self.reports.save_tallies("axioms", self.tallies)
        except Exception as e:
            logger.error(f"Axiom suite failed: {e}")
            raise
        frame = tally_frame(self.tallies)
        logger.info(f"{int(frame['failed'].sum())} failures over {len(frame)} entries")
        return frame

    def passed(self) -> bool:
        return all(t.ok for t in self.tallies)
