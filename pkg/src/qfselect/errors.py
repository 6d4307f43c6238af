"""Exception types shared across the package."""


class QfselectError(Exception):
    """Base class for errors raised by this package."""


class InvalidGateError(QfselectError, ValueError):
    """Gate definition is inconsistent with the circuit or register size."""


class OracleLimitError(QfselectError, ValueError):
    """Dense-matrix oracle requested beyond its size guard."""


class MaskError(QfselectError, ValueError):
    """Feature mask is malformed or has the wrong width."""


class DatasetError(QfselectError):
    """CSV ingestion or train/test splitting failed."""


class DegenerateTrainingError(QfselectError):
    """Training data contains a single class; no separator can be fit."""


class EvaluatorError(QfselectError):
    """An accuracy evaluator failed (protocol violation, timeout, bad value)."""


class FitnessError(QfselectError):
    """Objective evaluation failed for a specific mask.

    The offending mask is kept on the exception so callers can report
    which feature combination broke the evaluator.
    """

    def __init__(self, message: str, mask: str):
        super().__init__(message)
        self.mask = mask


class InsufficientDataError(QfselectError):
    """A metric was requested from an empty evaluation ledger."""


class RecordError(QfselectError):
    """A run record file is corrupt, incompatible, or inconsistent."""
