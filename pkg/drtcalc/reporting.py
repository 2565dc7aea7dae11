import json
import logging
import os
from datetime import datetime
from typing import Any, Dict, Iterable, Optional

import pandas as pd
import yaml

from .conf import OUTPUT_DIR
from .equiv import Verdict
from .harness.tally import Tally

logger = logging.getLogger(__name__)

TALLY_COLUMNS = ["id", "relation", "samples", "passed", "failed"]


def tally_frame(tallies: Iterable[Tally]) -> pd.DataFrame:
    """One row per axiom or property."""
    return pd.DataFrame([t.to_row() for t in tallies], columns=TALLY_COLUMNS)


def jsonable(value: Any) -> Any:
    if isinstance(value, Verdict):
        return value.to_dict()
    if isinstance(value, Tally):
        return value.to_dict()
    if hasattr(value, "to_dict"):
        return value.to_dict()
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = [jsonable(v) for v in value]
        return sorted(items) if isinstance(value, (set, frozenset)) else items
    return value


class ReportManager:
    """
    Writes reports of one run into a timestamped directory:
    JSON results plus a YAML snapshot of the run configuration.
    """

    def __init__(self, output_dir: str = OUTPUT_DIR, run_name: Optional[str] = None):
        stamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        self.run_dir = os.path.join(output_dir, run_name or f"run_{stamp}")

    def _path(self, name: str) -> str:
        os.makedirs(self.run_dir, exist_ok=True)
        return os.path.join(self.run_dir, name)

    def log_config(self, config: Dict[str, Any]) -> str:
        """Save the run configuration as readable YAML."""
        path = self._path("run_config.yaml")
        with open(path, "w", encoding="utf-8") as f:
            yaml.dump(jsonable(config), f, default_flow_style=False, allow_unicode=True)
        logger.info(f"Run config saved to: {path}")
        return path

    def save_report(self, name: str, results: Any) -> str:
        """Save verdicts, tallies or plain dictionaries as JSON."""
        path = self._path(f"{name}.json")
        with open(path, "w", encoding="utf-8") as f:
            json.dump(jsonable(results), f, indent=2, ensure_ascii=False)
        logger.info(f"Report saved to: {path}")
        return path

    def save_tallies(self, name: str, tallies: Iterable[Tally]) -> pd.DataFrame:
        """JSON with failing instances plus a CSV of the counts; returns the counts."""
        tallies = list(tallies)
        frame = tally_frame(tallies)
        self.save_report(name, tallies)
        frame.to_csv(self._path(f"{name}.csv"), index=False)
        return frame
