class KGEError(Exception):
    """Base class of every error raised by the library."""


class ConfigError(KGEError):
    """Missing or invalid configuration entry."""


class ParseError(KGEError):
    """Malformed line in an input file."""

    def __init__(self, path, lineno, reason):
        """Constructor.

        :param path: The offending file
        :type path: str

        :param lineno: The 1-based line number
        :type lineno: int

        :param reason: What is wrong with the line
        :type reason: str
        """
        super(ParseError, self).__init__(
            '{}:{}: {}'.format(path, lineno, reason))
        self.path = path
        self.lineno = lineno


class VocabularyError(KGEError):
    """Name not present in a fixed vocabulary."""


class NameLookupError(VocabularyError):
    """Unknown name requested by the user, with the closest known names."""

    def __init__(self, kind, name, matches):
        msg = 'unknown {} {!r}'.format(kind, name)
        if matches:
            msg += ' (did you mean: {}?)'.format(', '.join(matches))
        super(NameLookupError, self).__init__(msg)
        self.name = name
        self.matches = matches


class DimensionError(KGEError):
    """Vector or matrix sizes do not agree."""


class UnsupportedModelError(KGEError):
    """Operation not defined for the given model kind."""


class RuleError(KGEError):
    """Invalid background rule."""


class TieConflictError(RuleError):
    """Two rules ask for contradictory parameter ties."""

    def __init__(self, first, second, reason='conflicting rules'):
        super(TieConflictError, self).__init__(
            '{}: {} / {}'.format(reason, first, second))
        self.rules = (first, second)


class CheckpointError(KGEError):
    """Unreadable, truncated or corrupted checkpoint."""


class CompatibilityError(KGEError):
    """Checkpoint and dataset (or requested model) do not match."""


class CorruptionError(KGEError):
    """Negative sampling is impossible."""


class TrainingError(KGEError):
    """Training diverged."""

    def __init__(self, epoch, batch, loss):
        super(TrainingError, self).__init__(
            'non-finite loss {} at epoch {}, batch {}'.format(loss, epoch, batch))
        self.epoch = epoch
        self.batch = batch


class GroundTruthError(KGEError):
    """Malformed ground truth description."""


class InputFileError(KGEError):
    """Input file that is missing or not UTF-8 text."""
