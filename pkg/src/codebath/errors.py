"""Shared exception types."""


class ResourceLimitError(RuntimeError):
    """An exhaustive computation was asked to exceed its enumeration guard."""


class PhaseMismatchError(ValueError):
    """A formula valid in one coupling phase was applied to the other."""


class ConfigError(ValueError):
    """A sweep configuration failed validation.

    ``path`` locates the offending field, e.g. ``axes.L[1]``.
    """

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message
