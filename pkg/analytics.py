"""
Benchmark tables for analysis outside the toolkit.
"""
import logging
from pathlib import Path
from typing import Optional, Union

import pandas as pd

from state.benchmark_state import BenchmarkState

logger = logging.getLogger(__name__)

def format_number(value):
    """Round floats consistently for CSV output."""
    if isinstance(value, float):
        return round(value, 2)
    return value

def export_benchmark_table(state: BenchmarkState, path: Union[str, Path]) -> Optional[Path]:
    """
    Write every scenario report of a benchmark to CSV.

    Args:
        state: Accumulated benchmark reports
        path: Destination CSV file

    Returns:
        The path written, or None when there is nothing to export
    """
    frame = state.to_frame()
    if frame.empty:
        logger.warning("no benchmark reports to export")
        return None
    path = Path(path)
    frame[["wer_percent", "eer_percent"]] = frame[["wer_percent", "eer_percent"]].apply(
        lambda column: column.map(format_number))
    frame.to_csv(path, index=False)
    logger.info("benchmark table (%d rows) exported to %s", len(frame), path)
    return path

def trend_table(state: BenchmarkState) -> pd.DataFrame:
    """Mean WER/EER over seeds for every (scenario, encryption, lpf, N)."""
    frame = state.to_frame()
    if frame.empty:
        return frame
    return (frame.groupby(["scenario", "encryption", "lpf", "n_keys"], as_index=False)[["wer_percent", "eer_percent"]]
            .mean())
