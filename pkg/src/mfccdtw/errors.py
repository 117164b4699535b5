"""Exception hierarchy.

Every error raised on purpose by the package derives from :class:`MfccDtwError`,
so callers (the CLI in particular) can separate expected failures from bugs.
"""


class MfccDtwError(Exception):
    """Base class for all package errors."""


# audio_io
class MissingFileError(MfccDtwError, FileNotFoundError):
    pass


class NotWavError(MfccDtwError, ValueError):
    pass


class UnsupportedFormatError(MfccDtwError, ValueError):
    pass


class TruncatedDataError(MfccDtwError, ValueError):
    pass


class IoFailureError(MfccDtwError, OSError):
    pass


class InvalidSpecError(MfccDtwError, ValueError):
    pass


# configuration / front end
class InvalidConfigError(MfccDtwError, ValueError):
    pass


class EmptySignalError(MfccDtwError, ValueError):
    pass


class SampleRateMismatchError(MfccDtwError, ValueError):
    pass


# spectral
class BadFftSizeError(MfccDtwError, ValueError):
    pass


class NegativeFrequencyError(MfccDtwError, ValueError):
    pass


class NegativeMelError(MfccDtwError, ValueError):
    pass


class TooManyFiltersError(MfccDtwError, ValueError):
    pass


class DimensionMismatchError(MfccDtwError, ValueError):
    pass


# dtw
class EmptySequenceError(MfccDtwError, ValueError):
    pass


class InfeasibleConstraintsError(MfccDtwError, ValueError):
    pass


# template store
class InvalidLabelError(MfccDtwError, ValueError):
    pass


class FingerprintMismatchError(MfccDtwError, ValueError):
    pass


class MixedFingerprintsError(MfccDtwError, ValueError):
    pass


class CorruptTemplateError(MfccDtwError, ValueError):
    def __init__(self, path, reason):
        self.path = str(path)
        self.reason = reason
        super().__init__(f"{self.path}: {reason}")


class NoTemplatesError(MfccDtwError, LookupError):
    pass
