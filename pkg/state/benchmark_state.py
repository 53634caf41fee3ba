from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import pandas as pd

from data.models.scenario_report import ScenarioReport
from utils import format_seed

METRICS = ("wer_percent", "eer_percent")

class BenchmarkState:
    """Scenario reports accumulated across seeds and key counts."""

    def __init__(self, n_keys_grid: Optional[Sequence[int]] = None):
        self.n_keys_grid = sorted(n_keys_grid) if n_keys_grid else []
        self._reports: Dict[Tuple, ScenarioReport] = {}

    def add(self, report: ScenarioReport) -> None:
        """Store a report; a second report with the same merge key replaces the first."""
        self._reports[report.key] = report
        if report.n_keys and report.n_keys not in self.n_keys_grid and not report.is_baseline:
            self.n_keys_grid = sorted(self.n_keys_grid + [report.n_keys])

    def extend(self, reports: Iterable[ScenarioReport]) -> None:
        for report in reports:
            self.add(report)

    @property
    def reports(self) -> List[ScenarioReport]:
        """All reports in merge-key order."""
        return [self._reports[key] for key in sorted(self._reports)]

    @property
    def seeds(self) -> List[str]:
        return sorted({key[0] for key in self._reports})

    def series(self, seed: str, scenario: int, metric: str, lpf: bool = False) -> Dict[int, float]:
        """Metric by N for one seed and encrypted scenario."""
        return {
            report.n_keys: getattr(report, metric)
            for report in self.reports
            if report.key[0] == seed and report.scenario == scenario and report.lpf == lpf
            and report.encryption == "victim"
        }

    def _grid(self, grid: Optional[Sequence[int]]) -> List[int]:
        return sorted(grid) if grid else self.n_keys_grid

    def trend_seeds(self, scenario: int, metric: str, grid: Optional[Sequence[int]] = None,
                    lpf: bool = False) -> int:
        """Number of seeds whose metric is non-decreasing over the N grid."""
        grid = self._grid(grid)
        count = 0
        for seed in self.seeds:
            values = self.series(seed, scenario, metric, lpf)
            if not all(n in values for n in grid):
                continue
            if all(values[a] <= values[b] for a, b in zip(grid, grid[1:])):
                count += 1
        return count

    def ordering_seeds(self, metric: str, grid: Optional[Sequence[int]] = None) -> int:
        """Number of seeds where scenario 2 scores at most scenario 1 at every N."""
        grid = self._grid(grid)
        count = 0
        for seed in self.seeds:
            first = self.series(seed, 1, metric)
            second = self.series(seed, 2, metric)
            if not all(n in first and n in second for n in grid):
                continue
            if all(second[n] <= first[n] for n in grid):
                count += 1
        return count

    def trend_holds(self, scenario: int = 1, metric: str = "wer_percent", grid: Optional[Sequence[int]] = None,
                    min_seeds: int = 4, lpf: bool = False) -> bool:
        return self.trend_seeds(scenario, metric, grid, lpf) >= min_seeds

    def ordering_holds(self, metric: str = "wer_percent", grid: Optional[Sequence[int]] = None,
                       min_seeds: int = 4) -> bool:
        return self.ordering_seeds(metric, grid) >= min_seeds

    def to_frame(self) -> pd.DataFrame:
        """One row per report, in merge-key order."""
        columns = ["seed", "scenario", "encryption", "lpf", "n_keys", "dim", "stride",
                   "wer_percent", "eer_percent", "queries", "trials"]
        rows = [
            {
                "seed": format_seed(r.seed),
                "scenario": r.scenario,
                "encryption": r.encryption,
                "lpf": r.lpf,
                "n_keys": r.n_keys,
                "dim": r.dim,
                "stride": r.stride,
                "wer_percent": r.wer_percent,
                "eer_percent": r.eer_percent,
                "queries": r.queries,
                "trials": r.trials
            }
            for r in self.reports
        ]
        return pd.DataFrame(rows, columns=columns)

    def summary(self) -> Dict[str, object]:
        """Trend and ordering vote counts for every metric."""
        return {
            "seeds": len(self.seeds),
            "n_keys_grid": self.n_keys_grid,
            "scenario1_trend_seeds": {m: self.trend_seeds(1, m) for m in METRICS},
            "scenario2_trend_seeds": {m: self.trend_seeds(2, m) for m in METRICS},
            "ordering_seeds": {m: self.ordering_seeds(m) for m in METRICS}
        }
