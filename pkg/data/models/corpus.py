from dataclasses import dataclass
from typing import Dict, List, Tuple

from data.models.waveform import Waveform
from errors import InvalidParameterError

@dataclass(frozen=True)
class SpeakerProfile:
    """Voice signature: fundamental frequency and three formants (centre, bandwidth) in Hz."""
    speaker_id: int
    f0_hz: float
    formants: Tuple[Tuple[float, float], ...]

@dataclass(frozen=True, eq=False)
class Utterance:
    """One synthetic utterance: waveform, speaker and spoken token ids."""
    utterance_id: int
    speaker_id: int
    tokens: Tuple[int, ...]
    waveform: Waveform

def token_word(token: int) -> str:
    """Word form of a token id, used in transcripts."""
    return f"tok{token}"

@dataclass(frozen=True, eq=False)
class SyntheticCorpus:
    """
    Speakers, token vocabulary and utterances generated from one seed.

    Utterances are ordered by speaker, then by index within the speaker.
    """
    utterances: Tuple[Utterance, ...]
    speakers: Tuple[SpeakerProfile, ...]
    vocabulary: Tuple[Tuple[int, int], ...]
    sample_rate: int
    token_samples: int
    seed: int
    utts_per_speaker: int = 0

    @property
    def n_speakers(self) -> int:
        return len(self.speakers)

    @property
    def n_tokens_vocab(self) -> int:
        return len(self.vocabulary)

    def by_speaker(self) -> Dict[int, List[Utterance]]:
        grouped: Dict[int, List[Utterance]] = {}
        for utterance in self.utterances:
            grouped.setdefault(utterance.speaker_id, []).append(utterance)
        return grouped

    def split(self) -> Tuple[List[Utterance], List[Utterance]]:
        """
        Per speaker, the first half of the utterances trains/enrolls and the rest are queries.

        Returns:
            (training utterances, query utterances)
        """
        grouped = self.by_speaker()
        if len(grouped) < 2 or min(len(utts) for utts in grouped.values()) < 2:
            raise InvalidParameterError("corpus needs at least 2 speakers with at least 2 utterances each")
        train: List[Utterance] = []
        queries: List[Utterance] = []
        for speaker_id in sorted(grouped):
            utts = grouped[speaker_id]
            half = len(utts) // 2
            train.extend(utts[:half])
            queries.extend(utts[half:])
        return train, queries
