"""Exception types shared across the package."""


class DecisionError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(DecisionError):
    """An input or document state violates a contract."""


class NotFoundError(DecisionError):
    """A referenced node, alternative, or document does not exist."""


class SyncRequiredError(DecisionError):
    """The operation needs the grid to be synced with the tree first."""


class ScoreError(DecisionError):
    """A judgment cannot be scored (out of bounds, or nothing scorable)."""


class ParseError(DecisionError):
    """Stored document bytes could not be decoded."""


class SchemaVersionError(ParseError):
    """Stored document uses an unsupported schema version."""


class ProviderError(DecisionError):
    """A suggestion provider failed (network, timeout, bad response)."""


class VersionConflictError(DecisionError):
    """A mutation was submitted against a stale document version."""

    def __init__(self, current_version: int):
        super().__init__(f"version conflict: document is at version {current_version}")
        self.current_version = current_version
