"""Exception types shared across the engine."""


class HawkError(Exception):
    """Base class for all engine errors."""


class SchemaError(HawkError):
    """Input JSON is missing a required field or has a wrong type.

    ``path`` names the offending location, e.g. ``damages[3].tick``.
    """

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


class ConsistencyError(HawkError):
    """Structurally valid input that violates a cross-field invariant."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


class ConfigError(HawkError):
    """Invalid configuration value."""


class UnknownPlayer(HawkError):
    """Player is not part of the match."""


class DegenerateClass(HawkError):
    """An operation requiring both classes got a single-class dataset."""


class UntrainedModel(HawkError):
    """Inference was requested on a model that has not been fitted."""


class EmptySequence(HawkError):
    """A sequence encoder received a zero-length input."""


class NonFiniteLoss(HawkError):
    """Training produced a NaN/inf loss; carries the offending epoch."""

    def __init__(self, epoch: int):
        self.epoch = epoch
        super().__init__(f"non-finite loss at epoch {epoch}")


class SingularCovariance(HawkError):
    """Covariance estimate is singular and regularization is disabled."""


class MissingEmbedding(HawkError):
    """ExSPC input assembly could not find a required embedding."""


class SimplexViolation(HawkError):
    """Fusion weights do not lie on the probability simplex."""


class InfeasibleConstraint(HawkError):
    """No threshold candidate satisfies the optimizer's constraint."""


class InsufficientData(HawkError):
    """Not enough data for the requested operation (e.g. < 2 partitions)."""
