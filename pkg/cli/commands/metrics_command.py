import argparse
import logging
from pathlib import Path

import pandas as pd

from cli.commands.base_command import BaseCommand
from data.models.metric_types import ScoreLabel, ScoreSet, TranscriptPair
from errors import InvalidInputError
from services.metrics_service import edit_counts, eer, error_rates, wer
from state.run_config import RunConfig

logger = logging.getLogger(__name__)

def read_transcripts(ref_path: Path, hyp_path: Path) -> list:
    """Reference and hypothesis files, one utterance per line, paired by line number."""
    references = ref_path.read_text(encoding="utf-8").splitlines()
    hypotheses = hyp_path.read_text(encoding="utf-8").splitlines()
    if len(references) != len(hypotheses):
        raise InvalidInputError(
            f"{ref_path.name} has {len(references)} lines but {hyp_path.name} has {len(hypotheses)}")
    return [TranscriptPair(ref, hyp) for ref, hyp in zip(references, hypotheses)]

def read_scores(path: Path) -> ScoreSet:
    """
    CSV of "score,label" rows, label target or nontarget.

    A first row whose score is not numeric is taken as a header.
    """
    frame = pd.read_csv(path, header=None, names=["score", "label"], comment="#", skipinitialspace=True,
                        dtype=str, skip_blank_lines=True)
    if frame.empty:
        raise InvalidInputError(f"{path} holds no scores")
    scores = pd.to_numeric(frame["score"], errors="coerce")
    if pd.isna(scores.iloc[0]):
        frame, scores = frame.iloc[1:], scores.iloc[1:]
    if scores.isna().any():
        raise InvalidInputError(f"{path}: non-numeric score on data row {int(scores.isna().to_numpy().argmax()) + 1}")
    labels = frame["label"].fillna("").str.strip().str.lower()
    unknown = sorted(set(labels) - {label.value for label in ScoreLabel})
    if unknown:
        raise InvalidInputError(f"{path}: unknown labels {unknown}; expected target or nontarget")
    return ScoreSet.from_records(zip(scores.to_numpy(dtype=float), labels))

class MetricsCommand(BaseCommand):
    name = "metrics"
    help = "word error rate or equal error rate from files"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("metric", choices=("wer", "eer"))
        parser.add_argument("--ref", help="reference transcripts (wer)")
        parser.add_argument("--hyp", help="hypothesis transcripts (wer)")
        parser.add_argument("--scores", help="score,label CSV (eer)")
        parser.add_argument("--out", help="write the JSON result here instead of stdout")

    def execute(self, config: RunConfig) -> int:
        if config.metric == "wer":
            pairs = read_transcripts(config.path("ref"), config.path("hyp"))
            payload = {"wer_percent": wer(pairs), "utterances": len(pairs)}
            payload.update(edit_counts(pairs).to_dict())
        else:
            scores = read_scores(config.path("scores"))
            payload = {
                "eer_percent": eer(scores),
                "targets": int(scores.targets.size),
                "nontargets": int(scores.nontargets.size),
                "operating_points": [point.to_dict() for point in error_rates(scores)]
            }
        self.emit(payload, config.paths.get("out"))
        return 0
