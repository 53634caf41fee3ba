from data.models.keyset import KeyProvenance, KeyValidationReport, SecretKeySet
from data.models.waveform import Waveform
from data.models.framed_signal import EncryptedSignal, FramedSignal, FramingDescriptor, FramingMode
from data.models.conv_frontend import ConvFrontend, EquivalenceReport, FeatureSequence, FramingRecipe
from data.models.metric_types import EditCounts, OperatingPoint, ScoreLabel, ScoreSet, TranscriptPair
from data.models.lowpass_spec import LowPassSpec
from data.models.corpus import SpeakerProfile, SyntheticCorpus, Utterance
from data.models.surrogates import Adaptation, SurrogateASR, SurrogateASV
from data.models.scenario_report import KeyCorrectnessReport, ScenarioReport
from data.models.simulation_config import CorpusConfig, KeysetConfig

__all__ = [
    'KeyProvenance', 'KeyValidationReport', 'SecretKeySet',
    'Waveform',
    'EncryptedSignal', 'FramedSignal', 'FramingDescriptor', 'FramingMode',
    'ConvFrontend', 'EquivalenceReport', 'FeatureSequence', 'FramingRecipe',
    'EditCounts', 'OperatingPoint', 'ScoreLabel', 'ScoreSet', 'TranscriptPair',
    'LowPassSpec',
    'SpeakerProfile', 'SyntheticCorpus', 'Utterance',
    'Adaptation', 'SurrogateASR', 'SurrogateASV',
    'KeyCorrectnessReport', 'ScenarioReport',
    'CorpusConfig', 'KeysetConfig'
]
