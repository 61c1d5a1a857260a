"""Exception types with machine-readable codes for the CLI."""


class QCascadeError(Exception):
    """Base class; `code` is the stable machine-readable identifier."""

    code = "error"


class NormViolation(QCascadeError):
    code = "norm-violation"


class UnknownLabel(QCascadeError):
    code = "unknown-label"


class DimensionMismatch(QCascadeError):
    code = "dimension-mismatch"


class ZeroProbabilityOutcome(QCascadeError):
    code = "zero-probability-outcome"


class EntityAlreadyMeasured(QCascadeError):
    code = "entity-already-measured"


class MalformedDocument(QCascadeError):
    code = "malformed-document"


class InvalidOrder(QCascadeError):
    code = "invalid-order"


class KeySetMismatch(QCascadeError):
    code = "key-set-mismatch"
