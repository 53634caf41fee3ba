"""Error hierarchy shared by every orthokey package.

Services raise these; only the CLI turns them into exit codes.
"""


class OrthoKeyError(Exception):
    """Base class for all orthokey errors."""


class InvalidParameterError(OrthoKeyError, ValueError):
    """A numeric or configuration parameter is outside its valid range."""


class InvalidInputError(OrthoKeyError, ValueError):
    """Input data (waveform, vectors, transcripts) cannot be processed."""


class UnsupportedConfigurationError(OrthoKeyError):
    """The requested combination of settings is not supported (e.g. stride > block size)."""


class KeyMismatchError(OrthoKeyError):
    """Key material does not fit the signal or model it is applied to."""


class FileFormatError(OrthoKeyError):
    """A file is truncated, has the wrong magic/version, or an inconsistent shape."""


class IntegrityError(FileFormatError):
    """A file parsed correctly but its key material fails validation."""


class NoOpError(OrthoKeyError):
    """The requested transformation would not change anything."""


class InvalidModeError(OrthoKeyError):
    """The operation does not apply to the mode or state of its input (plain vs overlapping, plain vs encrypted)."""


class UndefinedMetricError(OrthoKeyError):
    """A metric is undefined for the given data (e.g. no reference words)."""


class UndefinedSimilarityError(UndefinedMetricError):
    """Cosine similarity is undefined (zero vector)."""


class EquivalenceError(OrthoKeyError):
    """An encrypted pipeline deviates from its plain counterpart beyond tolerance."""

    def __init__(self, message: str, max_deviation: float):
        super().__init__(message)
        self.max_deviation = max_deviation
