"""Exception hierarchy.

``ValidationError`` subclasses signal malformed inputs or configuration (CLI
exit status 1); anything else raised during a run is a runtime failure.
"""


class RustcastError(Exception):
    pass


class ValidationError(RustcastError, ValueError):
    pass


class ShapeMismatch(ValidationError):
    pass


class StaleCache(RustcastError):
    pass


class EmptyBatch(ValidationError):
    pass


class BadHeader(ValidationError):
    pass


class MissingFeature(ValidationError):
    pass


class DuplicateKey(ValidationError):
    pass


class NonFiniteValue(ValidationError):
    pass


class MalformedRow(ValidationError):
    pass


class BadLabel(ValidationError):
    pass


class EmptyTrainingSet(ValidationError):
    pass


class EmptyDataset(ValidationError):
    pass


class EmptyEvaluation(ValidationError):
    pass


class LengthMismatch(ValidationError):
    pass


class NoExamples(ValidationError):
    pass


class ConfigError(ValidationError):
    pass


class CheckpointError(ValidationError):
    pass
